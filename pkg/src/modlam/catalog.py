"""The named law suites exposed by the command line.

Suites pair an instance name with the checks that make sense for it.
The plus/times linearity suite is special: its point is the
counterexample, so it is expected to fail and the CLI treats a found
counterexample as success.
"""

from __future__ import annotations

from .combinators import (
    PT,
    PT_WITNESS,
    derive,
    double_and_swap,
    eval_morphism,
    product,
    second_derivative_inclusions,
)
from .errors import ConfigError
from .harness import (
    LawReport,
    ModuleInstance,
    algebra_check,
    check_linearity,
    check_module_laws,
    check_monad_laws,
    combine_reports,
    tautological_module,
)
from .lam import (
    LC,
    NF,
    Abs,
    App,
    nf_abs,
    nf_app1,
    scope_derived_lc_module,
    scope_derived_nf_module,
)
from .lists import LIST, concat, int_add_algebra
from .typed import STLC, TLIST, stlc_linearity_suite, tlist_linearity_suite

MONADS = {
    "lc": LC,
    "nf": NF,
    "list": LIST,
    "pt": PT,
    "stlc": STLC,
    "tlist": TLIST,
}

SUITES = ("monad", "module", "linearity", "algebra")
INSTANCES = ("lc", "nf", "list", "pt", "stlc", "tlist", "derived-lc", "product-lc")


def module_instance(name: str) -> ModuleInstance:
    if name in MONADS:
        return tautological_module(MONADS[name])
    if name == "derived-lc":
        return derive(tautological_module(LC))
    if name == "product-lc":
        taut = tautological_module(LC)
        return product(taut, taut)
    raise ConfigError(f"no module instance named {name!r}")


def _lc_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(LC)
    app = check_linearity(
        product(taut, taut), taut, lambda p: App(p[0], p[1]), samples, seed, name="app"
    )
    abs_ = check_linearity(
        scope_derived_lc_module(), taut, Abs, samples, seed, name="abs"
    )
    return combine_reports("linearity", "lc", [app, abs_])


def _nf_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(NF)
    scoped = scope_derived_nf_module()
    abs_ = check_linearity(scoped, taut, nf_abs, samples, seed, name="abs")
    app1 = check_linearity(taut, scoped, nf_app1, samples, seed, name="app1")
    return combine_reports("linearity", "nf", [abs_, app1])


def _list_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(LIST)
    rep = check_linearity(
        product(taut, taut), taut, concat, samples, seed, name="concat"
    )
    return combine_reports("linearity", "list", [rep])


def _pt_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(PT)
    rep = check_linearity(
        taut,
        taut,
        double_and_swap,
        samples,
        seed,
        probes=(PT_WITNESS,),
        name="double-and-swap",
    )
    return combine_reports("linearity", "pt", [rep])


def _derived_lc_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(LC)
    first = derive(taut)
    second = derive(first)
    inner, outer = second_derivative_inclusions(taut)
    reports = [
        check_linearity(first, second, inner, samples, seed, name="inner-inclusion"),
        check_linearity(first, second, outer, samples, seed, name="outer-inclusion"),
        check_linearity(
            product(first, taut), taut, eval_morphism(taut), samples, seed, name="eval"
        ),
    ]
    return combine_reports("linearity", "derived-lc", reports)


def _product_lc_linearity(samples: int, seed: int) -> LawReport:
    taut = tautological_module(LC)
    pair = product(taut, taut)
    reports = [
        check_linearity(pair, taut, lambda p: p[0], samples, seed, name="fst"),
        check_linearity(pair, taut, lambda p: p[1], samples, seed, name="snd"),
    ]
    return combine_reports("linearity", "product-lc", reports)


_LINEARITY = {
    "lc": _lc_linearity,
    "nf": _nf_linearity,
    "list": _list_linearity,
    "pt": _pt_linearity,
    "stlc": stlc_linearity_suite,
    "tlist": tlist_linearity_suite,
    "derived-lc": _derived_lc_linearity,
    "product-lc": _product_lc_linearity,
}


def run_suite(suite: str, instance: str, samples: int = 1000, seed: int = 0) -> LawReport:
    if suite == "monad":
        if instance not in MONADS:
            raise ConfigError(f"{instance!r} is not a monad instance")
        return check_monad_laws(MONADS[instance], samples, seed)
    if suite == "module":
        return check_module_laws(module_instance(instance), samples, seed)
    if suite == "linearity":
        if instance not in _LINEARITY:
            raise ConfigError(f"no linearity suite for {instance!r}")
        return _LINEARITY[instance](samples, seed)
    if suite == "algebra":
        if instance != "list":
            raise ConfigError("the algebra suite applies to the list instance only")
        return algebra_check(int_add_algebra(), samples, seed)
    raise ConfigError(f"unknown suite {suite!r}")


def expects_counterexample(suite: str, instance: str) -> bool:
    """The pt linearity suite passes by finding its counterexample."""
    return suite == "linearity" and instance == "pt"
