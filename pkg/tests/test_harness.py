import pytest

from modlam.errors import ConfigError
from modlam.fuel import FuelExhausted
from modlam.harness import (
    FRESH_SLOT,
    Counterexample,
    LawCheck,
    LawReport,
    check_linearity,
    check_monad_laws,
    combine_reports,
    compose_subst,
    counterexample,
    fresh_name,
    is_fresh_name,
    maybe_gamma,
    sampled_law,
    show_subst,
    subst_total,
    tautological_module,
)
from modlam.lists import LIST, bind, list_monad


class TestFreshMarkers:
    def test_fresh_name_family(self):
        assert fresh_name(0) == "*0"
        assert fresh_name(3) == "*3"
        assert is_fresh_name("*0")
        assert not is_fresh_name("x0")

    def test_maybe_gamma(self):
        # The added point becomes unit of the reserved marker; everything
        # else is left in place (the alphabet inclusion is the identity).
        assert maybe_gamma(LIST, FRESH_SLOT) == ("*0",)
        assert maybe_gamma(LIST, (1, 2)) == (1, 2)
        assert maybe_gamma(LIST, ()) == ()


class TestSubstHelpers:
    def test_subst_total(self):
        assert subst_total(LIST, {3: (1, 2)}, 3) == (1, 2)
        assert subst_total(LIST, {}, 3) == (3,)

    def test_compose_subst_oracle(self):
        f = {1: (2, 3)}
        g = {2: (4,)}
        comp = compose_subst(LIST, f, g)
        assert comp == {1: (4, 3), 2: (4,)}

    def test_compose_subst_is_kleisli_composition(self):
        f = {1: (2, 3), 5: ()}
        g = {2: (4,), 3: (3, 3)}
        comp = compose_subst(LIST, f, g)
        for x in [(1, 2, 3), (5, 5), (), (7,)]:
            assert LIST.bind(comp, x) == LIST.bind(g, LIST.bind(f, x))

    def test_show_subst_sorted(self):
        assert show_subst(LIST, {2: (1,), 1: ()}) == "{1 -> [], 2 -> [1]}"


class TestReportFormatting:
    def test_pass_line(self):
        check = LawCheck("demo", 10, 0, None)
        assert check.format() == "law demo: PASS (10 checked)"

    def test_pass_with_skips(self):
        check = LawCheck("demo", 8, 2, None)
        assert check.format() == "law demo: PASS (8 checked, 2 skipped)"

    def test_inconclusive(self):
        check = LawCheck("demo", 0, 5, None)
        assert check.inconclusive
        assert not check.passed
        assert check.format() == "law demo: INCONCLUSIVE (0 checked, 5 skipped)"

    def test_fail_block(self):
        ce = Counterexample("sample 3", (("value", "[1]"),), "[1, 1]", "[1]")
        check = LawCheck("demo", 3, 0, ce)
        assert check.format() == (
            "law demo: FAIL (counterexample at sample 3)\n"
            "  value: [1]\n"
            "  lhs: [1, 1]\n"
            "  rhs: [1]"
        )

    def test_report_tail(self):
        report = LawReport("monad", "list", 5, 0, (LawCheck("demo", 5, 0, None),))
        assert report.format().endswith("result: PASS")
        assert report.check("demo").passed
        with pytest.raises(KeyError):
            report.check("absent")

    def test_combine_reports(self):
        a = check_monad_laws(LIST, samples=5, seed=0)
        b = check_monad_laws(LIST, samples=5, seed=0)
        both = combine_reports("monad", "twice", [a, b])
        assert len(both.checks) == 6
        with pytest.raises(ConfigError):
            combine_reports("monad", "none", [])


class TestSamplingEngine:
    def test_determinism(self):
        one = check_monad_laws(list_monad(), samples=100, seed=7)
        two = check_monad_laws(list_monad(), samples=100, seed=7)
        assert one.format() == two.format()

    def test_sampled_law_pass(self):
        check = sampled_law(
            "tautology",
            samples=20,
            seed=0,
            gen=lambda rng: (rng.randrange(10),),
            prop=lambda n: None,
        )
        assert check.passed
        assert check.checked == 20

    def test_sampled_law_failure_stops(self):
        def prop(n):
            return counterexample((("n", str(n)),), "left", "right")

        check = sampled_law(
            "always-wrong",
            samples=20,
            seed=0,
            gen=lambda rng: (rng.randrange(10),),
            prop=prop,
        )
        assert not check.passed
        assert check.checked == 0
        assert check.counterexample.where == "sample 0"

    def test_sampled_law_probes_run_first(self):
        def prop(n):
            if n == 99:
                return counterexample((("n", str(n)),), "left", "right")
            return None

        check = sampled_law(
            "probed",
            samples=20,
            seed=0,
            gen=lambda rng: (rng.randrange(10),),
            prop=prop,
            probes=((99,),),
        )
        assert check.counterexample.where == "probe 0"

    def test_generator_exhaustion_is_skip(self):
        def gen(rng):
            raise FuelExhausted("out of fuel")

        check = sampled_law("starved", samples=15, seed=0, gen=gen, prop=lambda: None)
        assert check.inconclusive
        assert check.skipped == 15

    def test_property_exhaustion_is_skip(self):
        def prop(n):
            if n % 2:
                raise FuelExhausted("out of fuel")
            return None

        check = sampled_law(
            "flaky",
            samples=30,
            seed=0,
            gen=lambda rng: (rng.randrange(10),),
            prop=prop,
        )
        assert check.passed
        assert check.checked + check.skipped == 30
        assert check.skipped > 0

    def test_linearity_requires_shared_monad(self):
        from modlam.lam import LC

        with pytest.raises(ConfigError):
            check_linearity(
                tautological_module(LIST),
                tautological_module(LC),
                lambda x: x,
                samples=1,
            )

    def test_linearity_identity_passes(self):
        taut = tautological_module(LIST)
        report = check_linearity(taut, taut, lambda x: x, samples=50, seed=0)
        assert report.passed
