"""Untyped lambda calculus: syntax, reduction, normal forms, and the
exponential structure on normal forms.

Terms use the same variable discipline as the generic core: bound
variables are de Bruijn indices, free variables are names, substitution
rewrites names only.  Reduction is leftmost-outermost beta to normal
form followed by an eta postpass; beta-normal forms are closed under
eta contraction, so the postpass terminates and cannot reintroduce a
beta redex.

Normal forms carry a monad structure of their own (substitute, then
renormalize) and support abstraction and application-to-a-fresh-variable
operations that are mutually inverse.  That pair is what makes the
initial-representation fold (iota_fold) tick.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Any, Callable, Mapping, Optional

from .errors import ConfigError, MalformedTermError, ParseError
from .fuel import DEFAULT_FUEL, Fuel, FuelExhausted
from .harness import MonadInstance, ModuleInstance, fresh_name
from .terms import Bound, Free, Op, ScopedTerm, Signature, Var, bvar, fvar


@dataclass(frozen=True)
class App:
    fun: "LcTerm"
    arg: "LcTerm"


@dataclass(frozen=True)
class Abs:
    body: "LcTerm"


LcTerm = Var | App | Abs


def size(t: LcTerm) -> int:
    match t:
        case Var(_):
            return 1
        case App(f, a):
            return 1 + size(f) + size(a)
        case Abs(b):
            return 1 + size(b)
    raise MalformedTermError(f"not a lambda term: {t!r}")


def free_names(t: LcTerm) -> set[str]:
    match t:
        case Var(Free(name)):
            return {name}
        case Var(Bound(_)):
            return set()
        case App(f, a):
            return free_names(f) | free_names(a)
        case Abs(b):
            return free_names(b)
    raise MalformedTermError(f"not a lambda term: {t!r}")


def well_scoped(t: LcTerm, depth: int = 0) -> bool:
    match t:
        case Var(Free(_)):
            return True
        case Var(Bound(k)):
            return 0 <= k < depth
        case App(f, a):
            return well_scoped(f, depth) and well_scoped(a, depth)
        case Abs(b):
            return well_scoped(b, depth + 1)
    return False


# ---------- shifting and substitution ----------


def shift(t: LcTerm, by: int = 1, cutoff: int = 0) -> LcTerm:
    """Adjust dangling indices (>= cutoff) by `by`.

    shift(t) is the renaming of t along the one-point scope extension: a
    term moved under one extra binder.  Closed terms are fixed.
    """
    match t:
        case Var(Bound(k)):
            return bvar(k + by) if k >= cutoff else t
        case Var(Free(_)):
            return t
        case App(f, a):
            return App(shift(f, by, cutoff), shift(a, by, cutoff))
        case Abs(b):
            return Abs(shift(b, by, cutoff + 1))
    raise MalformedTermError(f"not a lambda term: {t!r}")


def subst(s: Mapping[str, LcTerm], t: LcTerm, depth: int = 0) -> LcTerm:
    """Capture-avoiding simultaneous substitution of free names.

    Images are shifted by the binder depth at their point of use; for
    closed images (the monad case) the shift is the identity, and for
    scope-extended images (the derived module case) it protects the
    dangling index that plays the role of the fresh variable.
    """
    match t:
        case Var(Free(name)):
            if name in s:
                return shift(s[name], depth) if depth else s[name]
            return t
        case Var(Bound(_)):
            return t
        case App(f, a):
            return App(subst(s, f, depth), subst(s, a, depth))
        case Abs(b):
            return Abs(subst(s, b, depth + 1))
    raise MalformedTermError(f"not a lambda term: {t!r}")


def subst0(t: LcTerm, u: LcTerm) -> LcTerm:
    """Substitute u for the innermost dangling index of t.

    t lives one scope deeper than its surroundings; occurrences of index
    0 become u (shifted under binders) and the remaining dangling indices
    are decremented.  This is the beta contraction engine.
    """

    def go(t: LcTerm, j: int) -> LcTerm:
        match t:
            case Var(Bound(k)):
                if k == j:
                    return shift(u, j) if j else u
                if k > j:
                    return bvar(k - 1)
                return t
            case Var(Free(_)):
                return t
            case App(f, a):
                return App(go(f, j), go(a, j))
            case Abs(b):
                return Abs(go(b, j + 1))
        raise MalformedTermError(f"not a lambda term: {t!r}")

    return go(t, 0)


def uses_bound(t: LcTerm, index: int) -> bool:
    match t:
        case Var(Bound(k)):
            return k == index
        case Var(Free(_)):
            return False
        case App(f, a):
            return uses_bound(f, index) or uses_bound(a, index)
        case Abs(b):
            return uses_bound(b, index + 1)
    raise MalformedTermError(f"not a lambda term: {t!r}")


# ---------- reduction ----------


def beta_step(t: LcTerm) -> Optional[LcTerm]:
    """Contract the leftmost-outermost beta redex, or return None."""
    match t:
        case App(Abs(b), a):
            return subst0(b, a)
        case App(f, a):
            f2 = beta_step(f)
            if f2 is not None:
                return App(f2, a)
            a2 = beta_step(a)
            return App(f, a2) if a2 is not None else None
        case Abs(b):
            b2 = beta_step(b)
            return Abs(b2) if b2 is not None else None
        case _:
            return None


def _eta_contract(t: LcTerm) -> Optional[LcTerm]:
    # Abs(App(u, #0)) with u not using #0 contracts to u un-shifted.
    match t:
        case Abs(App(u, Var(Bound(0)))) if not uses_bound(u, 0):
            return shift(u, -1)
        case _:
            return None


def eta_step(t: LcTerm) -> Optional[LcTerm]:
    """Contract the leftmost-outermost eta redex, or return None."""
    contracted = _eta_contract(t)
    if contracted is not None:
        return contracted
    match t:
        case App(f, a):
            f2 = eta_step(f)
            if f2 is not None:
                return App(f2, a)
            a2 = eta_step(a)
            return App(f, a2) if a2 is not None else None
        case Abs(b):
            b2 = eta_step(b)
            return Abs(b2) if b2 is not None else None
        case _:
            return None


def is_beta_normal(t: LcTerm) -> bool:
    match t:
        case Var(_):
            return True
        case App(Abs(_), _):
            return False
        case App(f, a):
            return is_beta_normal(f) and is_beta_normal(a)
        case Abs(b):
            return is_beta_normal(b)
    return False


def is_eta_normal(t: LcTerm) -> bool:
    if _eta_contract(t) is not None:
        return False
    match t:
        case Var(_):
            return True
        case App(f, a):
            return is_eta_normal(f) and is_eta_normal(a)
        case Abs(b):
            return is_eta_normal(b)
    return False


@dataclass(frozen=True)
class NfTerm:
    """A lambda term certified beta-normal and eta-reduced."""

    term: LcTerm

    def __post_init__(self):
        if not is_beta_normal(self.term):
            raise ValueError("term is not beta-normal")
        if not is_eta_normal(self.term):
            raise ValueError("term is not eta-reduced")


def normalize(t: LcTerm, fuel: Fuel | int = DEFAULT_FUEL) -> NfTerm:
    """Reduce to beta normal form (leftmost-outermost), then eta-contract
    to a fixed point.  Spends one fuel unit per rewrite step and raises
    FuelExhausted when the budget runs out.

    A term that outgrows the interpreter's recursion limit before its
    budget is also reported as exhaustion: the stack is a resource
    ceiling of the same kind as the step budget.
    """
    budget = Fuel.coerce(fuel)
    try:
        while (t2 := beta_step(t)) is not None:
            budget.spend()
            t = t2
        while (t2 := eta_step(t)) is not None:
            budget.spend()
            t = t2
        return NfTerm(t)
    except RecursionError:
        raise FuelExhausted("term outgrew the recursion limit") from None


class Equivalence(Enum):
    EQUIVALENT = "equivalent"
    INEQUIVALENT = "inequivalent"
    INCONCLUSIVE = "inconclusive"


def beta_eta_equiv(t1: LcTerm, t2: LcTerm, fuel: Fuel | int = DEFAULT_FUEL) -> Equivalence:
    """Compare beta-eta normal forms; inconclusive if either side runs
    out of fuel.  An integer budget is granted to each side separately;
    passing a Fuel object shares it between the two."""
    if isinstance(fuel, Fuel):
        b1 = b2 = fuel
    else:
        b1, b2 = Fuel(fuel), Fuel(fuel)
    try:
        n1 = normalize(t1, b1)
        n2 = normalize(t2, b2)
    except FuelExhausted:
        return Equivalence.INCONCLUSIVE
    return Equivalence.EQUIVALENT if n1 == n2 else Equivalence.INEQUIVALENT


# ---------- normal forms as a monad ----------


def nf_bind(s: Mapping[str, NfTerm], t: NfTerm, fuel: Fuel | int = DEFAULT_FUEL) -> NfTerm:
    """Substitute normal images and renormalize."""
    for k, v in s.items():
        if not isinstance(v, NfTerm):
            raise ConfigError(f"nf_bind image for {k!r} is not a normal form")
    return normalize(subst({k: v.term for k, v in s.items()}, t.term), fuel)


def nf_app1(t: NfTerm) -> NfTerm:
    """Apply to a fresh variable: t becomes App(shift t, #0), one scope
    deeper, renormalized.  At most one beta step can appear (when t is an
    abstraction), so the internal budget size(t)+1 always suffices; if it
    ever does not, that is a defect in this module, not a user error.
    Exhaustion with budget to spare means the recursion limit was hit
    instead, which stays an ordinary resource error."""
    raw = App(shift(t.term), bvar(0))
    budget = Fuel(size(t.term) + 1)
    try:
        return normalize(raw, budget)
    except FuelExhausted:
        if budget.remaining == 0:  # pragma: no cover
            raise RuntimeError("internal: nf_app1 budget exhausted") from None
        raise


def nf_abs(t: NfTerm) -> NfTerm:
    """Abstract over the fresh variable of a one-scope-deeper normal
    form, contracting a root eta redex if one appears."""
    wrapped = Abs(t.term)
    contracted = _eta_contract(wrapped)
    if contracted is not None:
        return NfTerm(contracted)
    return NfTerm(wrapped)


# ---------- the exponential structure and its fold ----------


@dataclass(frozen=True)
class ExpStructure:
    """What a target must provide for the initial-representation fold:
    a monad of values, inverse abs/app1 operations between values and
    one-scope-deeper values, substitution of the fresh slot, and fresh
    variables for open terms."""

    monad: MonadInstance
    abs1: Callable[[Any], Any]
    app1: Callable[[Any], Any]
    subst_fresh: Callable[[Any, Any, Fuel], Any]
    fresh_var: Callable[[int], Any]


def nf_exp(fuel: int = DEFAULT_FUEL) -> ExpStructure:
    def subst_fresh(ext: NfTerm, v: NfTerm, budget: Fuel) -> NfTerm:
        return normalize(subst0(ext.term, v.term), budget)

    return ExpStructure(
        monad=nf_monad(fuel),
        abs1=nf_abs,
        app1=nf_app1,
        subst_fresh=subst_fresh,
        fresh_var=lambda k: NfTerm(bvar(k)),
    )


def iota_fold(
    exp: ExpStructure,
    t: LcTerm,
    env: Optional[Mapping[str, Any]] = None,
    fuel: Fuel | int = DEFAULT_FUEL,
) -> Any:
    """Fold a lambda term into an exponential target.

    Variables go through env (default: the target's unit); an
    abstraction folds its body one scope deeper and closes it with abs1;
    an application folds the function, opens it with app1, and
    substitutes the folded argument for the fresh slot.
    """
    if not isinstance(exp, ExpStructure):
        raise ConfigError("iota_fold target must carry an exponential structure")
    budget = Fuel.coerce(fuel)

    def lookup(name: str) -> Any:
        if env is None:
            return exp.monad.unit(name)
        if name not in env:
            raise ConfigError(f"fold env not total: missing {name!r}")
        return env[name]

    def go(t: LcTerm) -> Any:
        match t:
            case Var(Free(name)):
                return lookup(name)
            case Var(Bound(k)):
                return exp.fresh_var(k)
            case Abs(b):
                return exp.abs1(go(b))
            case App(f, a):
                return exp.subst_fresh(exp.app1(go(f)), go(a), budget)
        raise MalformedTermError(f"not a lambda term: {t!r}")

    return go(t)


# ---------- the reduction preorder ----------


def step_successors(t: LcTerm) -> list[LcTerm]:
    """All terms reachable by contracting a single beta or eta redex at
    any position (the congruence closure of the oriented rules)."""
    out: list[LcTerm] = []
    match t:
        case App(f, a):
            if isinstance(f, Abs):
                out.append(subst0(f.body, a))
            out.extend(App(f2, a) for f2 in step_successors(f))
            out.extend(App(f, a2) for a2 in step_successors(a))
        case Abs(b):
            contracted = _eta_contract(t)
            if contracted is not None:
                out.append(contracted)
            out.extend(Abs(b2) for b2 in step_successors(b))
    return out


def preorder_leq(t1: LcTerm, t2: LcTerm, depth: int = 20) -> bool:
    """Is t2 reachable from t1 by at most `depth` oriented beta/eta
    steps under congruence?  Reflexive at depth 0; False only means not
    related within the bound."""
    frontier = {t1}
    visited = {t1}
    if t2 in visited:
        return True
    for _ in range(depth):
        nxt: set[LcTerm] = set()
        for t in frontier:
            for u in step_successors(t):
                if u not in visited:
                    visited.add(u)
                    nxt.add(u)
        if t2 in nxt:
            return True
        if not nxt:
            return False
        frontier = nxt
    return False


# ---------- conversion to signature-generic terms ----------

SIG_LC = Signature((("app", (0, 0)), ("abs", (1,))))
_APP, _ABS = 0, 1


def to_scoped(t: LcTerm) -> ScopedTerm:
    match t:
        case Var(_):
            return t
        case App(f, a):
            return Op(_APP, (to_scoped(f), to_scoped(a)))
        case Abs(b):
            return Op(_ABS, (to_scoped(b),))
    raise MalformedTermError(f"not a lambda term: {t!r}")


def from_scoped(t: ScopedTerm) -> LcTerm:
    match t:
        case Var(_):
            return t
        case Op(op, args):
            if op == _APP and len(args) == 2:
                return App(from_scoped(args[0]), from_scoped(args[1]))
            if op == _ABS and len(args) == 1:
                return Abs(from_scoped(args[0]))
            raise MalformedTermError(f"not a lambda-signature term: {t!r}")
    raise MalformedTermError(f"not a term: {t!r}")


# ---------- concrete grammar ----------
#
#   term ::= '\' ident '.' term | app
#   app  ::= atom+                 (left-associative)
#   atom ::= ident | '(' term ')'
#
# The backslash has a lambda synonym on input.  Printing picks machine
# names v0, v1, ... for binders, skipping names that occur free.


def parse(text: str) -> LcTerm:
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

    def term(binders: tuple[str, ...]) -> LcTerm:
        nonlocal pos
        skip_ws()
        if peek() in ("\\", "λ"):
            pos += 1
            skip_ws()
            name = ident()
            skip_ws()
            if peek() != ".":
                raise ParseError("expected '.' after binder", pos)
            pos += 1
            return Abs(term((name,) + binders))
        return app(binders)

    def app(binders: tuple[str, ...]) -> LcTerm:
        t = atom(binders)
        while True:
            skip_ws()
            if peek() and (peek().isalpha() or peek() in "(_"):
                t = App(t, atom(binders))
            else:
                return t

    def atom(binders: tuple[str, ...]) -> LcTerm:
        nonlocal pos
        skip_ws()
        if peek() == "(":
            pos += 1
            t = term(binders)
            skip_ws()
            if peek() != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return t
        name = ident()
        if name in binders:
            return bvar(binders.index(name))
        return fvar(name)

    out = term(())
    skip_ws()
    if pos != n:
        raise ParseError("trailing input", pos)
    return out


def show(t: LcTerm, debruijn: bool = False) -> str:
    """Print a term in the concrete grammar.

    Named mode invents binder names v0, v1, ... avoiding the free names
    of the whole term; a dangling index (possible on scope-extended
    carriers) prints as #k, a diagnostic form outside the grammar.
    """
    if debruijn:
        return _show_debruijn(t, 0)
    taken = free_names(t)
    counter = [0]

    def next_name() -> str:
        while True:
            name = f"v{counter[0]}"
            counter[0] += 1
            if name not in taken:
                return name

    def go(t: LcTerm, level: int, binders: tuple[str, ...]) -> str:
        match t:
            case Var(Free(name)):
                return name
            case Var(Bound(k)):
                return binders[k] if k < len(binders) else f"#{k - len(binders)}"
            case App(f, a):
                s = f"{go(f, 1, binders)} {go(a, 2, binders)}"
                return f"({s})" if level > 1 else s
            case Abs(b):
                name = next_name()
                s = f"\\{name}. {go(b, 0, (name,) + binders)}"
                return f"({s})" if level > 0 else s
        raise MalformedTermError(f"not a lambda term: {t!r}")

    return go(t, 0, ())


def _show_debruijn(t: LcTerm, level: int) -> str:
    match t:
        case Var(Free(name)):
            return name
        case Var(Bound(k)):
            return str(k)
        case App(f, a):
            s = f"{_show_debruijn(f, 1)} {_show_debruijn(a, 2)}"
            return f"({s})" if level > 1 else s
        case Abs(b):
            s = f"λ. {_show_debruijn(b, 0)}"
            return f"({s})" if level > 0 else s
    raise MalformedTermError(f"not a lambda term: {t!r}")


def show_nf(t: NfTerm, debruijn: bool = False) -> str:
    return show(t.term, debruijn)


# ---------- generators ----------

NAME_POOL = ("x", "y", "z", "w")


def gen_term(
    rng: random.Random,
    max_size: int = 8,
    depth: int = 0,
    names: tuple[str, ...] = NAME_POOL,
) -> LcTerm:
    """A random well-scoped term, geometrically smaller toward the leaves."""

    def go(budget: int, depth: int) -> LcTerm:
        if budget <= 1 or rng.random() < 0.3:
            if depth > 0 and rng.random() < 0.5:
                return bvar(rng.randrange(depth))
            return fvar(names[rng.randrange(len(names))])
        if rng.random() < 0.45:
            return Abs(go(budget - 1, depth + 1))
        k = rng.randint(1, budget - 1)
        return App(go(k, depth), go(budget - 1 - k, depth))

    return go(rng.randint(1, max_size), depth)


def gen_normal(
    rng: random.Random,
    max_size: int = 8,
    depth: int = 0,
    names: tuple[str, ...] = NAME_POOL,
) -> NfTerm:
    """A random normal form: built beta-normal by construction, then
    eta-contracted to a fixed point (which preserves beta-normality)."""

    def leaf(depth: int) -> LcTerm:
        if depth > 0 and rng.random() < 0.5:
            return bvar(rng.randrange(depth))
        return fvar(names[rng.randrange(len(names))])

    def neutral(budget: int, depth: int) -> LcTerm:
        if budget <= 1 or rng.random() < 0.4:
            return leaf(depth)
        k = rng.randint(1, budget - 1)
        return App(neutral(k, depth), nf(budget - 1 - k, depth))

    def nf(budget: int, depth: int) -> LcTerm:
        if budget > 1 and rng.random() < 0.4:
            return Abs(nf(budget - 1, depth + 1))
        return neutral(budget, depth)

    t = nf(rng.randint(1, max_size), depth)
    while (t2 := eta_step(t)) is not None:
        t = t2
    return NfTerm(t)


def _gen_subst(rng: random.Random) -> dict:
    return {
        name: gen_term(rng, max_size=5)
        for name in NAME_POOL
        if rng.random() < 0.4
    }


def _gen_nf_subst(rng: random.Random) -> dict:
    return {
        name: gen_normal(rng, max_size=5)
        for name in NAME_POOL
        if rng.random() < 0.4
    }


# ---------- instances ----------


def lc_monad() -> MonadInstance:
    return MonadInstance(
        name="lc",
        names=NAME_POOL,
        unit=fvar,
        bind=subst,
        gen_value=lambda rng: gen_term(rng),
        gen_subst=_gen_subst,
        equal=lambda a, b: a == b,
        show_value=show,
    )


def nf_monad(fuel: int = DEFAULT_FUEL) -> MonadInstance:
    return MonadInstance(
        name="nf",
        names=NAME_POOL,
        unit=lambda name: NfTerm(fvar(name)),
        bind=lambda s, t: nf_bind(s, t, fuel),
        gen_value=lambda rng: gen_normal(rng),
        gen_subst=_gen_nf_subst,
        equal=lambda a, b: a == b,
        show_value=show_nf,
    )


def scope_derived_lc_module(monad: Optional[MonadInstance] = None) -> ModuleInstance:
    """The derived module of the calculus in scope form: carriers are
    terms one scope deeper, the dangling index 0 standing for the fresh
    variable, and the action is ordinary substitution (which shifts
    images under binders, exactly the derived action)."""
    m = monad if monad is not None else LC
    return ModuleInstance(
        name="lc-scope-derived",
        monad=m,
        mbind=subst,
        gen_value=lambda rng: gen_term(rng, depth=1),
        equal=lambda a, b: a == b,
        show_value=show,
    )


def scope_derived_nf_module(fuel: int = DEFAULT_FUEL) -> ModuleInstance:
    """Normal forms one scope deeper, acted on by substitute-and-renormalize."""
    return ModuleInstance(
        name="nf-scope-derived",
        monad=NF,
        mbind=lambda s, t: nf_bind(s, t, fuel),
        gen_value=lambda rng: gen_normal(rng, depth=1),
        equal=lambda a, b: a == b,
        show_value=show_nf,
    )


def naive_prime_monad() -> MonadInstance:
    """Scope-extended terms given the evident unit and the derived
    action as if it were a monad bind.  This is the structure against
    which abstraction famously fails to be a monad morphism; the harness
    exhibits the failure rather than assuming it."""
    return MonadInstance(
        name="lc-prime-naive",
        names=NAME_POOL,
        unit=fvar,
        bind=subst,
        gen_value=lambda rng: gen_term(rng, depth=1),
        gen_subst=lambda rng: {
            name: gen_term(rng, max_size=5, depth=1)
            for name in NAME_POOL
            if rng.random() < 0.4
        },
        equal=lambda a, b: a == b,
        show_value=show,
    )


LC = lc_monad()
NF = nf_monad()
