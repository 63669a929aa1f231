import io
import subprocess
import sys

from modlam.cli import EXIT_FUEL, EXIT_NO, EXIT_OK, EXIT_PARSE, EXIT_USAGE, run

OMEGA = "(\\x. x x) (\\x. x x)"


class TestParse:
    def test_echoes_canonical_form(self, capsys):
        assert run(["parse", "\\x. x y"]) == EXIT_OK
        assert capsys.readouterr().out == "\\v0. v0 y\n"

    def test_debruijn(self, capsys):
        assert run(["parse", "\\x. x y", "--debruijn"]) == EXIT_OK
        assert capsys.readouterr().out == "λ. 0 y\n"

    def test_parse_error(self, capsys):
        assert run(["parse", "(x"]) == EXIT_PARSE
        assert "parse error at" in capsys.readouterr().err

    def test_stdin(self, capsys, monkeypatch):
        monkeypatch.setattr(sys, "stdin", io.StringIO("\\x. x\n"))
        assert run(["parse", "-"]) == EXIT_OK
        assert capsys.readouterr().out == "\\v0. v0\n"


class TestNormalize:
    def test_beta(self, capsys):
        assert run(["normalize", "(\\x. x) y"]) == EXIT_OK
        assert capsys.readouterr().out == "y\n"

    def test_eta_postpass(self, capsys):
        assert run(["normalize", "\\x. y x"]) == EXIT_OK
        assert capsys.readouterr().out == "y\n"

    def test_fuel_exhaustion(self, capsys):
        assert run(["normalize", OMEGA, "--fuel", "50"]) == EXIT_FUEL
        assert capsys.readouterr().err == "fuel exhausted\n"


class TestEquiv:
    def test_equivalent(self, capsys):
        assert run(["equiv", "\\x. y x", "y"]) == EXIT_OK
        assert capsys.readouterr().out == "equivalent\n"

    def test_inequivalent(self, capsys):
        assert run(["equiv", "\\x. x", "y"]) == EXIT_NO
        assert capsys.readouterr().out == "inequivalent\n"

    def test_inconclusive(self, capsys):
        assert run(["equiv", OMEGA, "y", "--fuel", "50"]) == EXIT_FUEL
        assert capsys.readouterr().out == "inconclusive\n"


class TestLeq:
    def test_related(self, capsys):
        assert run(["leq", "(\\x. x) y", "y"]) == EXIT_OK
        assert capsys.readouterr().out == "related\n"

    def test_not_related(self, capsys):
        assert run(["leq", "y", "(\\x. x) y"]) == EXIT_NO
        assert capsys.readouterr().out == "not related within depth 20\n"

    def test_depth_bound(self, capsys):
        t = "(\\x. x) ((\\x. x) y)"
        assert run(["leq", t, "y", "--depth", "1"]) == EXIT_NO
        assert capsys.readouterr().out == "not related within depth 1\n"
        assert run(["leq", t, "y", "--depth", "2"]) == EXIT_OK


class TestSubst:
    def test_map(self, capsys):
        assert run(["subst", "x y", "--map", "x=\\z. z,y=w"]) == EXIT_OK
        assert capsys.readouterr().out == "(\\v0. v0) w\n"

    def test_bad_entry(self, capsys):
        assert run(["subst", "x", "--map", "nonsense"]) == EXIT_USAGE
        assert "usage error" in capsys.readouterr().err

    def test_image_parse_error(self, capsys):
        assert run(["subst", "x", "--map", "x=(y"]) == EXIT_PARSE


class TestLaws:
    def test_passing_suite(self, capsys):
        code = run(["laws", "--suite", "monad", "--instance", "list", "--samples", "50"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "suite: monad" in out
        assert "result: PASS" in out

    def test_expected_failure_inverts(self, capsys):
        code = run(["laws", "--suite", "linearity", "--instance", "pt", "--samples", "50"])
        out = capsys.readouterr().out
        assert code == EXIT_OK
        assert "result: FAIL" in out
        assert out.rstrip().endswith("expected failure: counterexample found")

    def test_bad_combination(self, capsys):
        code = run(["laws", "--suite", "algebra", "--instance", "lc"])
        assert code == EXIT_USAGE
        assert "usage error" in capsys.readouterr().err

    def test_monad_suite_needs_a_monad(self, capsys):
        code = run(["laws", "--suite", "monad", "--instance", "derived-lc"])
        assert code == EXIT_USAGE

    def test_unknown_instance(self, capsys):
        assert run(["laws", "--suite", "monad", "--instance", "bogus"]) == EXIT_USAGE


class TestFold:
    def test_fold_to_nf(self, capsys):
        assert run(["fold", "(\\x. x) y", "--target", "nf"]) == EXIT_OK
        assert capsys.readouterr().out == "y\n"

    def test_fold_fuel(self, capsys):
        assert run(["fold", OMEGA, "--target", "nf", "--fuel", "50"]) == EXIT_FUEL


class TestTypecheck:
    def test_synthesizes(self, capsys):
        assert run(["typecheck", "\\x:*. x"]) == EXIT_OK
        assert capsys.readouterr().out == "* -> *\n"

    def test_type_error(self, capsys):
        assert run(["typecheck", "x y"]) == EXIT_NO
        assert capsys.readouterr().err.startswith("type error:")

    def test_parse_error(self, capsys):
        assert run(["typecheck", "\\x. x"]) == EXIT_PARSE


class TestUsage:
    def test_no_command(self, capsys):
        assert run([]) == EXIT_USAGE

    def test_unknown_command(self, capsys):
        assert run(["frobnicate"]) == EXIT_USAGE

    def test_missing_required_option(self, capsys):
        assert run(["subst", "x"]) == EXIT_USAGE


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "modlam", "normalize", "(\\x. x) y"],
            capture_output=True,
        )
        assert proc.returncode == EXIT_OK
        assert proc.stdout == b"y\n"
