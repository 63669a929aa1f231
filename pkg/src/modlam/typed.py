"""Simply typed lambda calculus and sort-indexed lists.

Both syntaxes live over fibered alphabets: a typed free variable pairs a
name with a declared type (or sort), and substitution is checked to
preserve the fiber.  The calculus reuses the nameless-bound discipline
of the untyped module, with each abstraction recording its binder type
so checking is syntax-directed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .errors import MalformedTermError, ParseError, TypeCheckError
from .fuel import DEFAULT_FUEL, Fuel, FuelExhausted
from .harness import (
    LawReport,
    ModuleInstance,
    MonadInstance,
    check_linearity,
    counterexample,
    sampled_law,
    show_subst,
)
from .terms import Bound

# ---------- simple types ----------


@dataclass(frozen=True)
class BaseType:
    pass


@dataclass(frozen=True)
class Arrow:
    dom: "SimpleType"
    cod: "SimpleType"


SimpleType = BaseType | Arrow

BASE = BaseType()


def show_type(t: SimpleType) -> str:
    match t:
        case BaseType():
            return "*"
        case Arrow(d, c):
            left = show_type(d)
            if isinstance(d, Arrow):
                left = f"({left})"
            return f"{left} -> {show_type(c)}"
    raise MalformedTermError(f"not a type: {t!r}")


# ---------- terms ----------


@dataclass(frozen=True)
class TFree:
    """A free variable with its declared type."""

    name: str
    type: SimpleType


@dataclass(frozen=True)
class TVar:
    ref: TFree | Bound


@dataclass(frozen=True)
class TApp:
    fun: "StlcTerm"
    arg: "StlcTerm"


@dataclass(frozen=True)
class TAbs:
    binder_type: SimpleType
    body: "StlcTerm"


StlcTerm = TVar | TApp | TAbs


def stlc_size(t: StlcTerm) -> int:
    match t:
        case TVar(_):
            return 1
        case TApp(f, a):
            return 1 + stlc_size(f) + stlc_size(a)
        case TAbs(_, b):
            return 1 + stlc_size(b)
    raise MalformedTermError(f"not a typed term: {t!r}")


def typed_frees(t: StlcTerm) -> set[TFree]:
    match t:
        case TVar(TFree(_, _) as tf):
            return {tf}
        case TVar(Bound(_)):
            return set()
        case TApp(f, a):
            return typed_frees(f) | typed_frees(a)
        case TAbs(_, b):
            return typed_frees(b)
    raise MalformedTermError(f"not a typed term: {t!r}")


def typecheck(
    ctx: Mapping[str, SimpleType], t: StlcTerm, _binders: tuple[SimpleType, ...] = ()
) -> SimpleType:
    """Synthesize the type of a term, syntax-directed.

    The context must agree with every declared free type; bound
    variables take the recorded binder types.  Errors carry the
    offending subterm.
    """
    match t:
        case TVar(TFree(name, ty)):
            if name not in ctx:
                raise TypeCheckError(f"unbound free name {name!r}")
            if ctx[name] != ty:
                raise TypeCheckError(
                    f"free name {name!r} declared {show_type(ty)} "
                    f"but context gives {show_type(ctx[name])}"
                )
            return ty
        case TVar(Bound(k)):
            if not 0 <= k < len(_binders):
                raise TypeCheckError(f"bound index {k} escapes its scope")
            return _binders[k]
        case TApp(f, a):
            tf = typecheck(ctx, f, _binders)
            ta = typecheck(ctx, a, _binders)
            if not isinstance(tf, Arrow):
                raise TypeCheckError(
                    f"applied a non-function of type {show_type(tf)} in {show_stlc(t)}"
                )
            if tf.dom != ta:
                raise TypeCheckError(
                    f"argument type {show_type(ta)} does not match "
                    f"{show_type(tf.dom)} in {show_stlc(t)}"
                )
            return tf.cod
        case TAbs(ty, b):
            return Arrow(ty, typecheck(ctx, b, (ty,) + _binders))
    raise MalformedTermError(f"not a typed term: {t!r}")


def type_of(t: StlcTerm) -> SimpleType:
    """Typecheck against the context read off the term's own frees."""
    ctx: dict[str, SimpleType] = {}
    for tf in sorted(typed_frees(t), key=lambda v: v.name):
        if tf.name in ctx and ctx[tf.name] != tf.type:
            raise TypeCheckError(f"free name {tf.name!r} used at two types")
        ctx[tf.name] = tf.type
    return typecheck(ctx, t)


def stlc_shift(t: StlcTerm, by: int = 1, cutoff: int = 0) -> StlcTerm:
    match t:
        case TVar(Bound(k)):
            return TVar(Bound(k + by)) if k >= cutoff else t
        case TVar(_):
            return t
        case TApp(f, a):
            return TApp(stlc_shift(f, by, cutoff), stlc_shift(a, by, cutoff))
        case TAbs(ty, b):
            return TAbs(ty, stlc_shift(b, by, cutoff + 1))
    raise MalformedTermError(f"not a typed term: {t!r}")


def stlc_subst(s: Mapping[str, StlcTerm], t: StlcTerm) -> StlcTerm:
    """Type-checked substitution of free names.

    Every image is synthesized once up front; an occurrence whose
    declared type differs from its image's type is an error.
    """
    image_types = {name: type_of(img) for name, img in s.items()}

    def go(t: StlcTerm, depth: int) -> StlcTerm:
        match t:
            case TVar(TFree(name, ty)):
                if name in s:
                    if image_types[name] != ty:
                        raise TypeCheckError(
                            f"image for {name!r} has type {show_type(image_types[name])}, "
                            f"occurrence declares {show_type(ty)}"
                        )
                    return stlc_shift(s[name], depth) if depth else s[name]
                return t
            case TVar(Bound(_)):
                return t
            case TApp(f, a):
                return TApp(go(f, depth), go(a, depth))
            case TAbs(ty, b):
                return TAbs(ty, go(b, depth + 1))
        raise MalformedTermError(f"not a typed term: {t!r}")

    return go(t, 0)


def stlc_subst0(t: StlcTerm, u: StlcTerm) -> StlcTerm:
    def go(t: StlcTerm, j: int) -> StlcTerm:
        match t:
            case TVar(Bound(k)):
                if k == j:
                    return stlc_shift(u, j) if j else u
                if k > j:
                    return TVar(Bound(k - 1))
                return t
            case TVar(_):
                return t
            case TApp(f, a):
                return TApp(go(f, j), go(a, j))
            case TAbs(ty, b):
                return TAbs(ty, go(b, j + 1))
        raise MalformedTermError(f"not a typed term: {t!r}")

    return go(t, 0)


def stlc_uses_bound(t: StlcTerm, index: int) -> bool:
    match t:
        case TVar(Bound(k)):
            return k == index
        case TVar(_):
            return False
        case TApp(f, a):
            return stlc_uses_bound(f, index) or stlc_uses_bound(a, index)
        case TAbs(_, b):
            return stlc_uses_bound(b, index + 1)
    raise MalformedTermError(f"not a typed term: {t!r}")


def stlc_beta_step(t: StlcTerm) -> Optional[StlcTerm]:
    match t:
        case TApp(TAbs(_, b), a):
            return stlc_subst0(b, a)
        case TApp(f, a):
            f2 = stlc_beta_step(f)
            if f2 is not None:
                return TApp(f2, a)
            a2 = stlc_beta_step(a)
            return TApp(f, a2) if a2 is not None else None
        case TAbs(ty, b):
            b2 = stlc_beta_step(b)
            return TAbs(ty, b2) if b2 is not None else None
        case _:
            return None


def _stlc_eta_contract(t: StlcTerm) -> Optional[StlcTerm]:
    match t:
        case TAbs(_, TApp(u, TVar(Bound(0)))) if not stlc_uses_bound(u, 0):
            return stlc_shift(u, -1)
        case _:
            return None


def stlc_eta_step(t: StlcTerm) -> Optional[StlcTerm]:
    contracted = _stlc_eta_contract(t)
    if contracted is not None:
        return contracted
    match t:
        case TApp(f, a):
            f2 = stlc_eta_step(f)
            if f2 is not None:
                return TApp(f2, a)
            a2 = stlc_eta_step(a)
            return TApp(f, a2) if a2 is not None else None
        case TAbs(ty, b):
            b2 = stlc_eta_step(b)
            return TAbs(ty, b2) if b2 is not None else None
        case _:
            return None


def stlc_normalize(t: StlcTerm, fuel: Fuel | int = DEFAULT_FUEL) -> StlcTerm:
    """Leftmost-outermost beta to normal form, then eta to a fixed point.

    Outgrowing the interpreter's recursion limit counts as exhaustion,
    as in the untyped normalizer."""
    budget = Fuel.coerce(fuel)
    try:
        while (t2 := stlc_beta_step(t)) is not None:
            budget.spend()
            t = t2
        while (t2 := stlc_eta_step(t)) is not None:
            budget.spend()
            t = t2
        return t
    except RecursionError:
        raise FuelExhausted("term outgrew the recursion limit") from None


def scope_extend(t: StlcTerm) -> StlcTerm:
    """Move a term under one extra binder slot (the partial-derivative
    inclusion); the slot's type is tracked by the surrounding module."""
    return stlc_shift(t, 1, 0)


# ---------- printing and parsing ----------
#
#   term ::= '\' ident ':' type '.' term | app
#   app  ::= atom+
#   atom ::= ident | '(' term ')'
#   type ::= '*' | type '->' type          (right-associative)
#
# Free variables have no annotation in the grammar and are declared at
# the base type.


def show_stlc(t: StlcTerm) -> str:
    taken = {tf.name for tf in typed_frees(t)}
    counter = [0]

    def next_name() -> str:
        while True:
            name = f"v{counter[0]}"
            counter[0] += 1
            if name not in taken:
                return name

    def go(t: StlcTerm, level: int, binders: tuple[str, ...]) -> str:
        match t:
            case TVar(TFree(name, _)):
                return name
            case TVar(Bound(k)):
                return binders[k] if k < len(binders) else f"#{k - len(binders)}"
            case TApp(f, a):
                s = f"{go(f, 1, binders)} {go(a, 2, binders)}"
                return f"({s})" if level > 1 else s
            case TAbs(ty, b):
                name = next_name()
                s = f"\\{name}:{show_type(ty)}. {go(b, 0, (name,) + binders)}"
                return f"({s})" if level > 0 else s
        raise MalformedTermError(f"not a typed term: {t!r}")

    return go(t, 0, ())


def parse_stlc(text: str) -> StlcTerm:
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

    def type_atom() -> SimpleType:
        nonlocal pos
        skip_ws()
        if peek() == "*":
            pos += 1
            return BASE
        if peek() == "(":
            pos += 1
            ty = type_expr()
            skip_ws()
            if peek() != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return ty
        raise ParseError("expected a type", pos)

    def type_expr() -> SimpleType:
        nonlocal pos
        left = type_atom()
        skip_ws()
        if text[pos : pos + 2] == "->":
            pos += 2
            return Arrow(left, type_expr())
        return left

    def term(binders: tuple[str, ...]) -> StlcTerm:
        nonlocal pos
        skip_ws()
        if peek() in ("\\", "λ"):
            pos += 1
            skip_ws()
            name = ident()
            skip_ws()
            if peek() != ":":
                raise ParseError("expected ':' after binder", pos)
            pos += 1
            ty = type_expr()
            skip_ws()
            if peek() != ".":
                raise ParseError("expected '.' after binder type", pos)
            pos += 1
            return TAbs(ty, term((name,) + binders))
        return app(binders)

    def app(binders: tuple[str, ...]) -> StlcTerm:
        t = atom(binders)
        while True:
            skip_ws()
            if peek() and (peek().isalpha() or peek() in "(_"):
                t = TApp(t, atom(binders))
            else:
                return t

    def atom(binders: tuple[str, ...]) -> StlcTerm:
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
            return TVar(Bound(binders.index(name)))
        return TVar(TFree(name, BASE))

    out = term(())
    skip_ws()
    if pos != n:
        raise ParseError("trailing input", pos)
    return out


# ---------- generators ----------

STLC_TYPES = (
    BASE,
    Arrow(BASE, BASE),
    Arrow(Arrow(BASE, BASE), BASE),
    Arrow(BASE, Arrow(BASE, BASE)),
)

#: A fixed fibered alphabet: one declared type per pool name.
STLC_POOL = (
    TFree("x", BASE),
    TFree("y", BASE),
    TFree("f", Arrow(BASE, BASE)),
    TFree("g", Arrow(BASE, BASE)),
    TFree("h", Arrow(Arrow(BASE, BASE), BASE)),
    TFree("k", Arrow(BASE, Arrow(BASE, BASE))),
)


def gen_typed_term(
    rng: random.Random,
    target: Optional[SimpleType] = None,
    max_size: int = 12,
    binders: tuple[SimpleType, ...] = (),
) -> StlcTerm:
    """A random well-typed term of the target type, built top-down."""
    if target is None:
        target = STLC_TYPES[rng.randrange(len(STLC_TYPES))]

    def candidates(ty: SimpleType, binders: tuple[SimpleType, ...]) -> list[StlcTerm]:
        out: list[StlcTerm] = [TVar(Bound(i)) for i, b in enumerate(binders) if b == ty]
        out.extend(TVar(tf) for tf in STLC_POOL if tf.type == ty)
        return out

    def leaf(ty: SimpleType, binders: tuple[SimpleType, ...]) -> StlcTerm:
        opts = candidates(ty, binders)
        if opts:
            return opts[rng.randrange(len(opts))]
        # No variable of this type in scope: eta-expand toward one.
        assert isinstance(ty, Arrow)
        return TAbs(ty.dom, leaf(ty.cod, (ty.dom,) + binders))

    def go(ty: SimpleType, budget: int, binders: tuple[SimpleType, ...]) -> StlcTerm:
        if budget <= 1 or rng.random() < 0.3:
            return leaf(ty, binders)
        if isinstance(ty, Arrow) and rng.random() < 0.5:
            return TAbs(ty.dom, go(ty.cod, budget - 1, (ty.dom,) + binders))
        dom = STLC_TYPES[rng.randrange(len(STLC_TYPES))]
        k = rng.randint(1, budget - 1)
        fun = go(Arrow(dom, ty), k, binders)
        arg = go(dom, budget - 1 - k, binders)
        return TApp(fun, arg)

    return go(target, rng.randint(1, max_size), binders)


def _gen_stlc_subst(rng: random.Random) -> dict:
    return {
        tf.name: gen_typed_term(rng, tf.type, max_size=6)
        for tf in STLC_POOL
        if rng.random() < 0.35
    }


def stlc_monad() -> MonadInstance:
    return MonadInstance(
        name="stlc",
        names=STLC_POOL,
        unit=TVar,
        bind=stlc_subst,
        gen_value=lambda rng: gen_typed_term(rng),
        gen_subst=_gen_stlc_subst,
        equal=lambda a, b: a == b,
        show_value=show_stlc,
        key=lambda tf: tf.name,
        show_name=lambda tf: f"{tf.name}:{show_type(tf.type)}",
    )


def fiber_module(ty: SimpleType, max_size: int = 10) -> ModuleInstance:
    """Terms of one fixed type, acted on by typed substitution."""
    return ModuleInstance(
        name=f"stlc@{show_type(ty)}",
        monad=STLC,
        mbind=stlc_subst,
        gen_value=lambda rng: gen_typed_term(rng, ty, max_size=max_size),
        equal=lambda a, b: a == b,
        show_value=show_stlc,
    )


def scope_extended_module(slot_type: SimpleType, ty: SimpleType) -> ModuleInstance:
    """The partial derivative at slot_type of the fiber at ty: terms one
    scope deeper, the dangling index typed slot_type by convention."""
    return ModuleInstance(
        name=f"stlc-d{show_type(slot_type)}@{show_type(ty)}",
        monad=STLC,
        mbind=stlc_subst,
        gen_value=lambda rng: gen_typed_term(rng, ty, max_size=8, binders=(slot_type,)),
        equal=lambda a, b: a == b,
        show_value=show_stlc,
    )


def semantic_fiber_module(ty: SimpleType, fuel: int = DEFAULT_FUEL) -> ModuleInstance:
    """Normal forms of one fixed type, acted on by substitute-then-normalize."""
    return ModuleInstance(
        name=f"stlc-nf@{show_type(ty)}",
        monad=STLC,
        mbind=lambda s, t: stlc_normalize(stlc_subst(s, t), fuel),
        gen_value=lambda rng: stlc_normalize(
            gen_typed_term(rng, ty, max_size=10), fuel
        ),
        equal=lambda a, b: a == b,
        show_value=show_stlc,
    )


def semantic_scope_extended_module(
    slot_type: SimpleType, ty: SimpleType, fuel: int = DEFAULT_FUEL
) -> ModuleInstance:
    return ModuleInstance(
        name=f"stlc-nf-d{show_type(slot_type)}@{show_type(ty)}",
        monad=STLC,
        mbind=lambda s, t: stlc_normalize(stlc_subst(s, t), fuel),
        gen_value=lambda rng: stlc_normalize(
            gen_typed_term(rng, ty, max_size=8, binders=(slot_type,)), fuel
        ),
        equal=lambda a, b: a == b,
        show_value=show_stlc,
    )


STLC = stlc_monad()


# ---------- sort-indexed lists ----------
#
# Sorts are depths: a list whose elements have sort k has sort k+1.


@dataclass(frozen=True)
class LVar:
    name: str
    sort: int


@dataclass(frozen=True)
class Nil:
    element_sort: int


@dataclass(frozen=True)
class Cons:
    head: "TListTerm"
    tail: "TListTerm"


TListTerm = LVar | Nil | Cons


def tlist_sort(t: TListTerm) -> int:
    """The sort of a term; raises on a sort-discipline violation."""
    match t:
        case LVar(_, sort):
            if sort < 0:
                raise TypeCheckError(f"negative sort in {t!r}")
            return sort
        case Nil(element_sort):
            if element_sort < 0:
                raise TypeCheckError(f"negative sort in {t!r}")
            return element_sort + 1
        case Cons(h, tl):
            hs = tlist_sort(h)
            ts = tlist_sort(tl)
            if ts != hs + 1:
                raise TypeCheckError(
                    f"cons of a sort-{hs} head onto a sort-{ts} tail in {show_tlist(t)}"
                )
            return hs + 1
    raise MalformedTermError(f"not a typed list term: {t!r}")


def tlist_subst(s: Mapping[str, TListTerm], t: TListTerm) -> TListTerm:
    """Sort-checked substitution: each image's sort must equal the
    declared sort of the occurrences it replaces."""
    image_sorts = {name: tlist_sort(img) for name, img in s.items()}

    def go(t: TListTerm) -> TListTerm:
        match t:
            case LVar(name, sort):
                if name in s:
                    if image_sorts[name] != sort:
                        raise TypeCheckError(
                            f"image for {name!r} has sort {image_sorts[name]}, "
                            f"occurrence declares {sort}"
                        )
                    return s[name]
                return t
            case Nil(_):
                return t
            case Cons(h, tl):
                return Cons(go(h), go(tl))
        raise MalformedTermError(f"not a typed list term: {t!r}")

    return go(t)


def tlist_shift(t: TListTerm, by: int = 1) -> TListTerm:
    """Add `by` to every sort annotation (the sort-shift functor on values)."""
    match t:
        case LVar(name, sort):
            return LVar(name, sort + by)
        case Nil(element_sort):
            return Nil(element_sort + by)
        case Cons(h, tl):
            return Cons(tlist_shift(h, by), tlist_shift(tl, by))
    raise MalformedTermError(f"not a typed list term: {t!r}")


# Grammar: t ::= ident '@' nat | 'nil' '@' nat | 'cons' '(' t ',' t ')'


def show_tlist(t: TListTerm) -> str:
    match t:
        case LVar(name, sort):
            return f"{name}@{sort}"
        case Nil(element_sort):
            return f"nil@{element_sort}"
        case Cons(h, tl):
            return f"cons({show_tlist(h)}, {show_tlist(tl)})"
    raise MalformedTermError(f"not a typed list term: {t!r}")


def parse_tlist(text: str) -> TListTerm:
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

    def nat() -> int:
        nonlocal pos
        start = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a sort", start)
        return int(text[start:pos])

    def at_sort() -> int:
        nonlocal pos
        skip_ws()
        if peek() != "@":
            raise ParseError("expected '@sort'", pos)
        pos += 1
        return nat()

    def term() -> TListTerm:
        nonlocal pos
        skip_ws()
        at = pos
        name = ident()
        if name == "nil":
            return Nil(at_sort())
        if name == "cons":
            skip_ws()
            if peek() != "(":
                raise ParseError("expected '(' after cons", pos)
            pos += 1
            h = term()
            skip_ws()
            if peek() != ",":
                raise ParseError("expected ','", pos)
            pos += 1
            tl = term()
            skip_ws()
            if peek() != ")":
                raise ParseError("expected ')'", pos)
            pos += 1
            return Cons(h, tl)
        del at
        return LVar(name, at_sort())

    out = term()
    skip_ws()
    if pos != n:
        raise ParseError("trailing input", pos)
    return out


TLIST_POOL = (
    LVar("x", 0),
    LVar("y", 0),
    LVar("xs", 1),
    LVar("ys", 1),
    LVar("xss", 2),
)


def gen_tlist(rng: random.Random, sort: Optional[int] = None, max_size: int = 8) -> TListTerm:
    if sort is None:
        sort = rng.randrange(3)

    def vars_at(sort: int) -> list[LVar]:
        return [v for v in TLIST_POOL if v.sort == sort]

    def go(sort: int, budget: int) -> TListTerm:
        opts = vars_at(sort)
        if sort == 0:
            return opts[rng.randrange(len(opts))]
        if budget <= 1 or rng.random() < 0.3:
            if opts and rng.random() < 0.6:
                return opts[rng.randrange(len(opts))]
            return Nil(sort - 1)
        k = rng.randint(1, budget - 1)
        return Cons(go(sort - 1, k), go(sort, budget - 1 - k))

    return go(sort, rng.randint(1, max_size))


def tlist_monad() -> MonadInstance:
    return MonadInstance(
        name="tlist",
        names=TLIST_POOL,
        unit=lambda v: v,
        bind=tlist_subst,
        gen_value=lambda rng: gen_tlist(rng),
        gen_subst=lambda rng: {
            v.name: gen_tlist(rng, v.sort, max_size=5)
            for v in TLIST_POOL
            if rng.random() < 0.35
        },
        equal=lambda a, b: a == b,
        show_value=show_tlist,
        key=lambda v: v.name,
        show_name=show_tlist,
    )


def tlist_sort_module(sort: int) -> ModuleInstance:
    """Terms of one fixed sort under sort-checked substitution."""
    return ModuleInstance(
        name=f"tlist@{sort}",
        monad=TLIST,
        mbind=tlist_subst,
        gen_value=lambda rng: gen_tlist(rng, sort),
        equal=lambda a, b: a == b,
        show_value=show_tlist,
    )


TLIST = tlist_monad()


# ---------- linearity suites ----------


def stlc_linearity_suite(
    samples: int = 1000,
    seed: int = 0,
    pairs: tuple[tuple[SimpleType, SimpleType], ...] = ((BASE, BASE),),
) -> LawReport:
    """Typed application and abstraction commute with substitution, both
    on raw syntax and after normalization, at each sampled type pair."""
    from .combinators import product

    checks = []
    for s, t in pairs:
        label = f"{show_type(s)},{show_type(t)}"
        app_src = product(fiber_module(Arrow(s, t)), fiber_module(s))
        checks.extend(
            check_linearity(
                app_src,
                fiber_module(t),
                lambda p: TApp(p[0], p[1]),
                samples,
                seed,
                name=f"app@{label}",
            ).checks
        )
        checks.extend(
            check_linearity(
                scope_extended_module(s, t),
                fiber_module(Arrow(s, t)),
                lambda b, s=s: TAbs(s, b),
                samples,
                seed,
                name=f"abs@{label}",
            ).checks
        )
        app_nf_src = product(
            semantic_fiber_module(Arrow(s, t)), semantic_fiber_module(s)
        )
        checks.extend(
            check_linearity(
                app_nf_src,
                semantic_fiber_module(t),
                lambda p: stlc_normalize(TApp(p[0], p[1])),
                samples,
                seed,
                name=f"app-nf@{label}",
            ).checks
        )
        checks.extend(
            check_linearity(
                semantic_scope_extended_module(s, t),
                semantic_fiber_module(Arrow(s, t)),
                lambda b, s=s: stlc_normalize(TAbs(s, b)),
                samples,
                seed,
                name=f"abs-nf@{label}",
            ).checks
        )
    return LawReport("linearity", "stlc", samples, seed, tuple(checks))


def tlist_linearity_suite(samples: int = 1000, seed: int = 0) -> LawReport:
    """Nil and cons commute with sort-checked substitution, and the
    sort-shift on values commutes with it as well."""
    from .combinators import constant_module, product

    checks = []
    checks.extend(
        check_linearity(
            constant_module(TLIST),
            tlist_sort_module(1),
            lambda _: Nil(0),
            samples,
            seed,
            name="nil",
        ).checks
    )
    cons_src = product(tlist_sort_module(0), tlist_sort_module(1))
    checks.extend(
        check_linearity(
            cons_src,
            tlist_sort_module(1),
            lambda p: Cons(p[0], p[1]),
            samples,
            seed,
            name="cons",
        ).checks
    )

    def gen(rng: random.Random):
        return (TLIST.gen_subst(rng), gen_tlist(rng))

    def prop(s, t):
        lhs = tlist_shift(tlist_subst(s, t), 1)
        shifted = {k: tlist_shift(v, 1) for k, v in s.items()}
        rhs = tlist_subst(shifted, tlist_shift(t, 1))
        if lhs == rhs:
            return None
        return counterexample(
            (("value", show_tlist(t)), ("substitution", show_subst(TLIST, s))),
            show_tlist(lhs),
            show_tlist(rhs),
        )

    checks.append(sampled_law("shift-commute", samples, seed, gen, prop))
    return LawReport("linearity", "tlist", samples, seed, tuple(checks))
