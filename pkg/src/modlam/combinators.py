"""Module combinators: derivation, products, evaluation, base change,
and a small syntax whose plus/times swap is provably not linear.

Derivation extends the alphabet by one fresh marker drawn from a
reserved namespace; carriers keep their representation and the derived
action simply protects the marker from substitution.  Because markers
are ordinary (reserved) names, renaming and evaluation of the fresh
slot are just substitutions at that name.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Callable, Mapping

from .errors import ConfigError, MalformedTermError, ParseError
from .harness import (
    LawReport,
    ModuleInstance,
    MonadInstance,
    MonadMorphism,
    check_monad_morphism,
    fresh_name,
)

# ---------- derivation ----------


@dataclass(frozen=True)
class DerivedModule(ModuleInstance):
    base: ModuleInstance = None  # type: ignore[assignment]
    marker: str = ""


def derive(mod: ModuleInstance, marker_bias: float = 0.7) -> DerivedModule:
    """Extend the module's alphabet by one fresh marker.

    The derived action protects the marker (it is never substituted);
    the carrier generator seeds the marker into a sampled value through
    the base action so the fresh slot is actually exercised.
    """
    marker = fresh_name(len(mod.fresh_markers))
    m = mod.monad
    protected = mod.fresh_markers + (marker,)

    def mbind(s: Mapping, v: Any) -> Any:
        s2 = {k: img for k, img in s.items() if k not in protected}
        return mod.mbind(s2, v)

    def gen_value(rng: random.Random) -> Any:
        v = mod.gen_value(rng)
        if rng.random() < marker_bias:
            name = m.names[rng.randrange(len(m.names))]
            v = mod.mbind({name: m.unit(marker)}, v)
        return v

    return DerivedModule(
        name=f"{mod.name}'",
        monad=m,
        mbind=mbind,
        gen_value=gen_value,
        equal=mod.equal,
        show_value=mod.show_value,
        fresh_markers=protected,
        base=mod,
        marker=marker,
    )


def second_derivative_inclusions(
    mod: ModuleInstance,
) -> tuple[Callable[[Any], Any], Callable[[Any], Any]]:
    """The two inclusions of the first derivative into the second.

    The one-marker alphabet sits inside the two-marker alphabet either
    as the inner fresh slot (identity on carriers) or as the outer one
    (the marker renamed); both maps are linear.
    """
    first = derive(mod)
    second = derive(first)

    def inner(v: Any) -> Any:
        return v

    def outer(v: Any) -> Any:
        return mod.mbind({first.marker: mod.monad.unit(second.marker)}, v)

    return inner, outer


def eval_morphism(mod: ModuleInstance) -> Callable[[tuple[Any, Any]], Any]:
    """Evaluation M' x R -> M: fill the fresh slot with a monad value.

    Since the fresh slot is a reserved name, this is substitution at
    that single name through the underived action.
    """
    marker = fresh_name(len(mod.fresh_markers))

    def ev(pair: tuple[Any, Any]) -> Any:
        v, r = pair
        return mod.mbind({marker: r}, v)

    return ev


# ---------- products ----------


@dataclass(frozen=True)
class ProductModule(ModuleInstance):
    left: ModuleInstance = None  # type: ignore[assignment]
    right: ModuleInstance = None  # type: ignore[assignment]


def product(m1: ModuleInstance, m2: ModuleInstance) -> ProductModule:
    """The product module: pairs, acted on componentwise."""
    if m1.monad.name != m2.monad.name:
        raise ConfigError(
            f"product needs a shared base monad, got {m1.monad.name} and {m2.monad.name}"
        )

    return ProductModule(
        name=f"{m1.name} x {m2.name}",
        monad=m1.monad,
        mbind=lambda s, v: (m1.mbind(s, v[0]), m2.mbind(s, v[1])),
        gen_value=lambda rng: (m1.gen_value(rng), m2.gen_value(rng)),
        equal=lambda a, b: m1.equal(a[0], b[0]) and m2.equal(a[1], b[1]),
        show_value=lambda v: f"({m1.show_value(v[0])}, {m2.show_value(v[1])})",
        fresh_markers=tuple(sorted(set(m1.fresh_markers) | set(m2.fresh_markers))),
        left=m1,
        right=m2,
    )


def constant_module(monad: MonadInstance, point: Any = "point") -> ModuleInstance:
    """A one-point carrier with the trivial action."""
    return ModuleInstance(
        name="constant",
        monad=monad,
        mbind=lambda s, v: v,
        gen_value=lambda rng: point,
        equal=lambda a, b: a == b,
        show_value=str,
    )


# ---------- base change ----------


@dataclass(frozen=True)
class BaseChangedModule(ModuleInstance):
    morphism: MonadMorphism = None  # type: ignore[assignment]
    inner: ModuleInstance = None  # type: ignore[assignment]


def base_change(
    f: MonadMorphism,
    mod: ModuleInstance,
    validate_samples: int = 64,
    validate_seed: int = 0,
) -> BaseChangedModule:
    """Pull a module over the target monad back along a monad morphism.

    The carrier is unchanged; substitutions over the source monad act
    through their image under f.  The morphism squares are checked on
    samples up front; a failing morphism is a configuration error.
    """
    if f.dst.name != mod.monad.name:
        raise ConfigError(
            f"base change along {f.name} lands in {f.dst.name}, module is over {mod.monad.name}"
        )
    report = check_monad_morphism(f, samples=validate_samples, seed=validate_seed)
    for check in report.checks:
        if check.counterexample is not None:
            raise ConfigError(
                f"{f.name} is not a monad morphism ({check.name} fails):\n"
                + check.counterexample.format()
            )

    def mbind(s: Mapping, v: Any) -> Any:
        return mod.mbind({k: f.map(img) for k, img in s.items()}, v)

    return BaseChangedModule(
        name=f"{f.name}*{mod.name}",
        monad=f.src,
        mbind=mbind,
        gen_value=mod.gen_value,
        equal=mod.equal,
        show_value=mod.show_value,
        fresh_markers=mod.fresh_markers,
        morphism=f,
        inner=mod,
    )


def identity_morphism(m: MonadInstance) -> MonadMorphism:
    return MonadMorphism(name="identity", src=m, dst=m, map=lambda v: v)


# ---------- a syntax whose plus/times swap is not linear ----------


@dataclass(frozen=True)
class PVar:
    name: str


@dataclass(frozen=True)
class Plus:
    left: "PtTerm"
    right: "PtTerm"


@dataclass(frozen=True)
class Times:
    left: "PtTerm"
    right: "PtTerm"


PtTerm = PVar | Plus | Times


def pt_bind(s: Mapping[str, PtTerm], t: PtTerm) -> PtTerm:
    """Homomorphic substitution: this binder-free syntax is a monad."""
    match t:
        case PVar(name):
            return s.get(name, t)
        case Plus(l, r):
            return Plus(pt_bind(s, l), pt_bind(s, r))
        case Times(l, r):
            return Times(pt_bind(s, l), pt_bind(s, r))
    raise MalformedTermError(f"not a plus/times term: {t!r}")


def double_and_swap(t: PtTerm) -> PtTerm:
    """Double variables and swap the two operators.

    A natural transformation of the underlying functors that fails to
    commute with substitution; the harness finds the witness.
    """
    match t:
        case PVar(_):
            return Plus(t, t)
        case Plus(l, r):
            return Times(double_and_swap(l), double_and_swap(r))
        case Times(l, r):
            return Plus(double_and_swap(l), double_and_swap(r))
    raise MalformedTermError(f"not a plus/times term: {t!r}")


# Grammar: t ::= ident | t '+' t | t '*' t | '(' t ')', with '*' binding
# tighter than '+' and both left-associative.


def parse_pt(text: str) -> PtTerm:
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def peek() -> str:
        return text[pos] if pos < n else ""

    def ident() -> str:
        nonlocal pos
        start = pos
        if pos >= n or not (text[pos].isalpha() or text[pos] == "_"):
            raise ParseError("expected identifier", pos)
        while pos < n and (text[pos].isalnum() or text[pos] in "_'"):
            pos += 1
        return text[start:pos]

    def atom() -> PtTerm:
        nonlocal pos
        skip_ws()
        if peek() == "(":
            pos += 1
            t = expr()
            skip_ws()
            if peek() != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return t
        return PVar(ident())

    def factor() -> PtTerm:
        nonlocal pos
        t = atom()
        while True:
            skip_ws()
            if peek() == "*":
                pos += 1
                t = Times(t, atom())
            else:
                return t

    def expr() -> PtTerm:
        nonlocal pos
        t = factor()
        while True:
            skip_ws()
            if peek() == "+":
                pos += 1
                t = Plus(t, factor())
            else:
                return t

    out = expr()
    skip_ws()
    if pos != n:
        raise ParseError("trailing input", pos)
    return out


def show_pt(t: PtTerm) -> str:
    def go(t: PtTerm, level: int) -> str:
        match t:
            case PVar(name):
                return name
            case Plus(l, r):
                s = f"{go(l, 0)}+{go(r, 1)}"
                return f"({s})" if level > 0 else s
            case Times(l, r):
                s = f"{go(l, 1)}*{go(r, 2)}"
                return f"({s})" if level > 1 else s
        raise MalformedTermError(f"not a plus/times term: {t!r}")

    return go(t, 0)


PT_NAMES = ("x", "y", "z")


def gen_pt(rng: random.Random, max_size: int = 6) -> PtTerm:
    def go(budget: int) -> PtTerm:
        if budget <= 1 or rng.random() < 0.35:
            return PVar(PT_NAMES[rng.randrange(len(PT_NAMES))])
        k = rng.randint(1, budget - 1)
        ctor = Plus if rng.random() < 0.5 else Times
        return ctor(go(k), go(budget - 1 - k))

    return go(rng.randint(1, max_size))


def pt_monad() -> MonadInstance:
    return MonadInstance(
        name="pt",
        names=PT_NAMES,
        unit=PVar,
        bind=pt_bind,
        gen_value=lambda rng: gen_pt(rng),
        gen_subst=lambda rng: {
            name: gen_pt(rng, max_size=4)
            for name in PT_NAMES
            if rng.random() < 0.4
        },
        equal=lambda a, b: a == b,
        show_value=show_pt,
    )


#: The canonical witness: substituting x*x into x and then transforming
#: disagrees with transforming first.
PT_WITNESS = ({"x": Times(PVar("x"), PVar("x"))}, PVar("x"))

PT = pt_monad()
