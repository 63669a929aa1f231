"""Runtime descriptors for monads, modules and algebras, plus the
randomized harness that checks their laws on seeded samples.

A descriptor bundles the operations of an instance with a generator and
an equality predicate, so every commuting diagram in the development can
be run rather than assumed.  Reports are deterministic for a fixed seed:
each sample draws from its own sub-generator keyed by (seed, index), so
the outcome does not depend on evaluation order.

Samples that run out of fuel (possible for normalization-backed
instances) are counted as skipped rather than failed, and a sample
whose terms outgrow the interpreter's recursion limit is the same kind
of resource miss; a law with no evaluated samples at all is reported
inconclusive.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import reduce
from typing import Any, Callable, Iterable, Mapping, Optional

from .errors import ConfigError
from .fuel import FuelExhausted

# ---------- fresh markers ----------
#
# Scope extension ("adding one point" to the alphabet) is realized by a
# reserved family of names that no grammar can produce.  The k-th marker
# introduced by deriving a module is fresh_name(k).


def fresh_name(i: int) -> str:
    return f"*{i}"


def is_fresh_name(name: str) -> bool:
    return name.startswith("*")


#: Sentinel standing for the added point of a one-point alphabet extension.
FRESH_SLOT = object()


def maybe_gamma(monad: "MonadInstance", v: Any) -> Any:
    """Distribute a one-point extension over a monad value.

    The fresh marker goes to unit(fresh); an existing value is renamed
    along the alphabet inclusion, which is the identity on the chosen
    representation (old names stay themselves).
    """
    if v is FRESH_SLOT:
        return monad.unit(fresh_name(0))
    return v


# ---------- descriptors ----------


@dataclass(frozen=True)
class MonadInstance:
    """A monad given by unit and bind over finite-map substitutions.

    Substitutions are dicts from alphabet elements to values, identity
    outside their domain.  `names` is the finite alphabet pool that the
    generators draw from.
    """

    name: str
    names: tuple
    unit: Callable[[Any], Any]
    bind: Callable[[Mapping, Any], Any]
    gen_value: Callable[[random.Random], Any]
    gen_subst: Callable[[random.Random], dict]
    equal: Callable[[Any, Any], bool]
    show_value: Callable[[Any], str] = repr
    # Fibered alphabets carry structured elements; `key` projects an
    # element to the substitution-map key it is addressed by.
    key: Callable[[Any], Any] = staticmethod(lambda a: a)
    show_name: Callable[[Any], str] = str


@dataclass(frozen=True)
class ModuleInstance:
    """A left module over a monad: a carrier acted on by substitutions."""

    name: str
    monad: MonadInstance
    mbind: Callable[[Mapping, Any], Any]
    gen_value: Callable[[random.Random], Any]
    equal: Callable[[Any, Any], bool]
    show_value: Callable[[Any], str] = repr
    fresh_markers: tuple[str, ...] = ()


@dataclass(frozen=True)
class MonadMorphism:
    """A carrier map between monads, expected to commute with unit/bind."""

    name: str
    src: MonadInstance
    dst: MonadInstance
    map: Callable[[Any], Any]


@dataclass(frozen=True)
class MonoidAlgebra:
    """A monoid seen as an algebra of the lists monad.

    The action folds a list to its product; algebra_check runs the two
    algebra diagrams against it.
    """

    name: str
    unit: Any
    product: Callable[[Any, Any], Any]
    gen_element: Callable[[random.Random], Any]
    equal: Callable[[Any, Any], bool] = lambda a, b: a == b
    show_value: Callable[[Any], str] = repr

    def action(self, xs: Iterable[Any]) -> Any:
        return reduce(self.product, xs, self.unit)


def tautological_module(m: MonadInstance) -> ModuleInstance:
    """A monad acting on itself by bind."""
    return ModuleInstance(
        name=m.name,
        monad=m,
        mbind=m.bind,
        gen_value=m.gen_value,
        equal=m.equal,
        show_value=m.show_value,
    )


def subst_total(m: MonadInstance, s: Mapping, a: Any) -> Any:
    """Apply a finite-map substitution as a total function on the alphabet."""
    k = m.key(a)
    return s[k] if k in s else m.unit(a)


def compose_subst(m: MonadInstance, f: Mapping, g: Mapping) -> dict:
    """The Kleisli composite: first f, then bind g inside each image."""
    out = {k: m.bind(g, v) for k, v in f.items()}
    for k, v in g.items():
        if k not in out:
            out[k] = v
    return out


def show_subst(m: MonadInstance, s: Mapping) -> str:
    items = sorted(s.items(), key=lambda kv: str(kv[0]))
    return "{" + ", ".join(f"{k} -> {m.show_value(v)}" for k, v in items) + "}"


# ---------- reports ----------


@dataclass(frozen=True)
class Counterexample:
    where: str  # "sample 17" or "probe 0"
    inputs: tuple[tuple[str, str], ...]
    lhs: str
    rhs: str

    def format(self) -> str:
        lines = [f"  {label}: {shown}" for label, shown in self.inputs]
        lines.append(f"  lhs: {self.lhs}")
        lines.append(f"  rhs: {self.rhs}")
        return "\n".join(lines)


@dataclass(frozen=True)
class LawCheck:
    name: str
    checked: int
    skipped: int
    counterexample: Optional[Counterexample]

    @property
    def passed(self) -> bool:
        return self.counterexample is None and self.checked > 0

    @property
    def inconclusive(self) -> bool:
        return self.counterexample is None and self.checked == 0

    def format(self) -> str:
        if self.counterexample is not None:
            head = f"law {self.name}: FAIL (counterexample at {self.counterexample.where})"
            return head + "\n" + self.counterexample.format()
        tail = f"({self.checked} checked"
        if self.skipped:
            tail += f", {self.skipped} skipped"
        tail += ")"
        if self.inconclusive:
            return f"law {self.name}: INCONCLUSIVE {tail}"
        return f"law {self.name}: PASS {tail}"


@dataclass(frozen=True)
class LawReport:
    suite: str
    instance: str
    samples: int
    seed: int
    checks: tuple[LawCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> LawCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def format(self) -> str:
        lines = [
            f"suite: {self.suite}",
            f"instance: {self.instance}",
            f"samples: {self.samples}",
            f"seed: {self.seed}",
        ]
        for c in self.checks:
            lines.append(c.format())
        lines.append(f"result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def combine_reports(suite: str, instance: str, reports: Iterable[LawReport]) -> LawReport:
    reports = list(reports)
    if not reports:
        raise ConfigError("no reports to combine")
    samples = reports[0].samples
    seed = reports[0].seed
    checks: list[LawCheck] = []
    for r in reports:
        checks.extend(r.checks)
    return LawReport(suite, instance, samples, seed, tuple(checks))


# ---------- the sampling engine ----------


def _sample_rng(seed: int, index: Any) -> random.Random:
    # Sub-generator per sample: deterministic and order-independent.
    return random.Random(f"{seed}:{index}")


class _LawState:
    __slots__ = ("name", "checked", "skipped", "counterexample")

    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.skipped = 0
        self.counterexample: Optional[Counterexample] = None

    def run(self, where: str, thunk: Callable[[], Optional[Counterexample]]) -> None:
        if self.counterexample is not None:
            return
        try:
            ce = thunk()
        except (FuelExhausted, RecursionError):
            self.skipped += 1
            return
        if ce is None:
            self.checked += 1
        else:
            self.counterexample = Counterexample(
                where, ce.inputs, ce.lhs, ce.rhs
            )

    def skip(self) -> None:
        if self.counterexample is None:
            self.skipped += 1

    def done(self) -> LawCheck:
        return LawCheck(self.name, self.checked, self.skipped, self.counterexample)


def _ce(inputs: tuple[tuple[str, str], ...], lhs: str, rhs: str) -> Counterexample:
    return Counterexample("", inputs, lhs, rhs)


def counterexample(
    inputs: tuple[tuple[str, str], ...], lhs: str, rhs: str
) -> Counterexample:
    """Build a counterexample for a bespoke sampled_law property."""
    return _ce(inputs, lhs, rhs)


def sampled_law(
    name: str,
    samples: int,
    seed: int,
    gen: Callable[[random.Random], tuple],
    prop: Callable[..., Optional[Counterexample]],
    probes: tuple = (),
) -> LawCheck:
    """Run a bespoke one-off law: gen draws an input tuple, prop returns
    None on success or a counterexample.  Fuel exhaustion in either is a
    skip, as in the stock suites."""
    state = _LawState(name)
    for j, inputs in enumerate(probes):
        state.run(f"probe {j}", lambda inputs=inputs: prop(*inputs))
    for i in range(samples):
        rng = _sample_rng(seed, f"{name}:{i}")
        try:
            inputs = gen(rng)
        except (FuelExhausted, RecursionError):
            state.skip()
            continue
        state.run(f"sample {i}", lambda inputs=inputs: prop(*inputs))
    return state.done()


def check_monad_laws(m: MonadInstance, samples: int = 1000, seed: int = 0) -> LawReport:
    """Run the three monad laws on seeded samples.

    bind-bind:  bind g . bind f  =  bind (bind g . f)
    bind-unit:  bind f . unit    =  f
    unit-bind:  bind unit        =  id
    """
    bind_bind = _LawState("bind-bind")
    bind_unit = _LawState("bind-unit")
    unit_bind = _LawState("unit-bind")

    for i in range(samples):
        rng = _sample_rng(seed, f"monad:{i}")
        try:
            x = m.gen_value(rng)
            f = m.gen_subst(rng)
            g = m.gen_subst(rng)
            a = m.names[rng.randrange(len(m.names))]
        except (FuelExhausted, RecursionError):
            for state in (bind_bind, bind_unit, unit_bind):
                state.skip()
            continue
        where = f"sample {i}"

        def law_bind_bind():
            lhs = m.bind(g, m.bind(f, x))
            rhs = m.bind(compose_subst(m, f, g), x)
            if m.equal(lhs, rhs):
                return None
            return _ce(
                (
                    ("value", m.show_value(x)),
                    ("subst f", show_subst(m, f)),
                    ("subst g", show_subst(m, g)),
                ),
                m.show_value(lhs),
                m.show_value(rhs),
            )

        def law_bind_unit():
            lhs = m.bind(f, m.unit(a))
            rhs = subst_total(m, f, a)
            if m.equal(lhs, rhs):
                return None
            return _ce(
                (("name", m.show_name(a)), ("subst f", show_subst(m, f))),
                m.show_value(lhs),
                m.show_value(rhs),
            )

        def law_unit_bind():
            lhs = m.bind({}, x)
            if m.equal(lhs, x):
                return None
            return _ce((("value", m.show_value(x)),), m.show_value(lhs), m.show_value(x))

        bind_bind.run(where, law_bind_bind)
        bind_unit.run(where, law_bind_unit)
        unit_bind.run(where, law_unit_bind)

    return LawReport(
        "monad", m.name, samples, seed, (bind_bind.done(), bind_unit.done(), unit_bind.done())
    )


def check_module_laws(mod: ModuleInstance, samples: int = 1000, seed: int = 0) -> LawReport:
    """Run the two module axioms on seeded samples.

    mbind-mbind:  mbind g . mbind f  =  mbind (bind g . f)
    unit-mbind:   mbind unit         =  id
    """
    m = mod.monad
    mbind_mbind = _LawState("mbind-mbind")
    unit_mbind = _LawState("unit-mbind")

    for i in range(samples):
        rng = _sample_rng(seed, f"module:{i}")
        try:
            x = mod.gen_value(rng)
            f = m.gen_subst(rng)
            g = m.gen_subst(rng)
        except (FuelExhausted, RecursionError):
            mbind_mbind.skip()
            unit_mbind.skip()
            continue
        where = f"sample {i}"

        def law_mbind_mbind():
            lhs = mod.mbind(g, mod.mbind(f, x))
            rhs = mod.mbind(compose_subst(m, f, g), x)
            if mod.equal(lhs, rhs):
                return None
            return _ce(
                (
                    ("value", mod.show_value(x)),
                    ("subst f", show_subst(m, f)),
                    ("subst g", show_subst(m, g)),
                ),
                mod.show_value(lhs),
                mod.show_value(rhs),
            )

        def law_unit_mbind():
            lhs = mod.mbind({}, x)
            if mod.equal(lhs, x):
                return None
            return _ce(
                (("value", mod.show_value(x)),), mod.show_value(lhs), mod.show_value(x)
            )

        mbind_mbind.run(where, law_mbind_mbind)
        unit_mbind.run(where, law_unit_mbind)

    return LawReport(
        "module", mod.name, samples, seed, (mbind_mbind.done(), unit_mbind.done())
    )


def check_linearity(
    src: ModuleInstance,
    dst: ModuleInstance,
    tau: Callable[[Any], Any],
    samples: int = 1000,
    seed: int = 0,
    probes: tuple = (),
    name: str = "linearity",
) -> LawReport:
    """Check that tau commutes with the module actions:

        tau (mbind_src s x)  =  mbind_dst s (tau x)

    Probes are (subst, value) pairs checked before any random samples, so
    a known witness appears first in the report.
    """
    if src.monad.name != dst.monad.name:
        raise ConfigError(
            f"linearity needs a shared base monad, got {src.monad.name} and {dst.monad.name}"
        )
    m = src.monad
    state = _LawState(name)

    def square(s, x):
        lhs = tau(src.mbind(s, x))
        rhs = dst.mbind(s, tau(x))
        if dst.equal(lhs, rhs):
            return None
        return _ce(
            (("value", src.show_value(x)), ("substitution", show_subst(m, s))),
            dst.show_value(lhs),
            dst.show_value(rhs),
        )

    for j, (s, x) in enumerate(probes):
        state.run(f"probe {j}", lambda s=s, x=x: square(s, x))
    for i in range(samples):
        rng = _sample_rng(seed, f"linearity:{name}:{i}")
        try:
            s = m.gen_subst(rng)
            x = src.gen_value(rng)
        except (FuelExhausted, RecursionError):
            state.skip()
            continue
        state.run(f"sample {i}", lambda s=s, x=x: square(s, x))

    return LawReport("linearity", f"{src.name} -> {dst.name}", samples, seed, (state.done(),))


def check_monad_morphism(
    f: MonadMorphism, samples: int = 1000, seed: int = 0
) -> LawReport:
    """Check the two monad morphism squares on seeded samples.

    morphism-unit:  f . unit_src       =  unit_dst
    morphism-bind:  f (bind_src s x)   =  bind_dst (f . s) (f x)
    """
    src, dst = f.src, f.dst
    unit_sq = _LawState("morphism-unit")
    bind_sq = _LawState("morphism-bind")

    for i in range(samples):
        rng = _sample_rng(seed, f"morphism:{f.name}:{i}")
        try:
            x = src.gen_value(rng)
            s = src.gen_subst(rng)
            a = src.names[rng.randrange(len(src.names))]
        except (FuelExhausted, RecursionError):
            unit_sq.skip()
            bind_sq.skip()
            continue
        where = f"sample {i}"

        def law_unit():
            lhs = f.map(src.unit(a))
            rhs = dst.unit(a)
            if dst.equal(lhs, rhs):
                return None
            return _ce((("name", src.show_name(a)),), dst.show_value(lhs), dst.show_value(rhs))

        def law_bind():
            lhs = f.map(src.bind(s, x))
            rhs = dst.bind({k: f.map(v) for k, v in s.items()}, f.map(x))
            if dst.equal(lhs, rhs):
                return None
            return _ce(
                (("value", src.show_value(x)), ("substitution", show_subst(src, s))),
                dst.show_value(lhs),
                dst.show_value(rhs),
            )

        unit_sq.run(where, law_unit)
        bind_sq.run(where, law_bind)

    return LawReport("morphism", f.name, samples, seed, (unit_sq.done(), bind_sq.done()))


def algebra_check(alg: MonoidAlgebra, samples: int = 1000, seed: int = 0) -> LawReport:
    """Run the two algebra diagrams for a monoid under the lists monad.

    algebra-unit:    action [x]            =  x
    algebra-square:  action (concat xss)   =  action (map action xss)
    """
    unit_law = _LawState("algebra-unit")
    square_law = _LawState("algebra-square")

    def show_list(xs):
        return "[" + ", ".join(alg.show_value(x) for x in xs) + "]"

    for i in range(samples):
        rng = _sample_rng(seed, f"algebra:{i}")
        x = alg.gen_element(rng)
        xss = [
            [alg.gen_element(rng) for _ in range(rng.randrange(4))]
            for _ in range(rng.randrange(4))
        ]
        where = f"sample {i}"

        def law_unit():
            lhs = alg.action([x])
            if alg.equal(lhs, x):
                return None
            return _ce((("element", alg.show_value(x)),), alg.show_value(lhs), alg.show_value(x))

        def law_square():
            flat = [y for xs in xss for y in xs]
            lhs = alg.action(flat)
            rhs = alg.action([alg.action(xs) for xs in xss])
            if alg.equal(lhs, rhs):
                return None
            return _ce(
                (("lists", "[" + ", ".join(show_list(xs) for xs in xss) + "]"),),
                alg.show_value(lhs),
                alg.show_value(rhs),
            )

        unit_law.run(where, law_unit)
        square_law.run(where, law_square)

    return LawReport(
        "algebra", alg.name, samples, seed, (unit_law.done(), square_law.done())
    )
