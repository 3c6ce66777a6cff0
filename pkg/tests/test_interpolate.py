from random import Random

import pytest

from gordian.engine import prove_consequence
from gordian.errors import UnsupportedLogicError
from gordian.interpolate import (
    lift_interpolant,
    mult_uniform_interpolant,
    verify_interpolant,
)
from gordian.rand import random_mult_formula
from gordian.syntax import parse, render, variables_of


def test_abelian_elimination():
    pi = mult_uniform_interpolant("A", [parse("p -> q"), parse("q -> r")], {"p", "r"})
    assert [render(f) for f in pi] == ["p -> r"]


def test_abelian_empty_projection():
    assert mult_uniform_interpolant("A", [parse("p -> q")], {"q"}) == []


def test_full_variable_set_is_identity():
    sigma = [parse("p -> q"), parse("q -> r")]
    pi = mult_uniform_interpolant("A", sigma, {"p", "q", "r"})
    report = verify_interpolant("A", sigma, pi, {"p", "q", "r"}, sigma)
    assert report.ok


def test_x_must_be_subset():
    with pytest.raises(ValueError):
        mult_uniform_interpolant("A", [parse("p -> q")], {"z"})


def test_unsupported_logic():
    with pytest.raises(UnsupportedLogicError):
        mult_uniform_interpolant("BIULm", [parse("p -> q")], {"p"})
    with pytest.raises(UnsupportedLogicError):
        mult_uniform_interpolant("RMt", [parse("p -> q * r * s")], {"q", "r", "s"})


def test_verify_examples():
    sigma = [parse("p -> q"), parse("q -> r")]
    report = verify_interpolant(
        "A", sigma, [parse("p -> r")], {"p", "r"},
        [parse("p -> r"), parse("(p * p) -> (r * r)")],
    )
    assert report.ok
    report = verify_interpolant("A", sigma, [parse("p -> q")], {"p", "r"}, [])
    assert not report.ok and report.first_failure.name == "variable_condition"
    report = verify_interpolant("A", sigma, [], {"p", "r"}, [parse("p -> r")])
    assert not report.ok and report.first_failure.name == "probe_equivalence"


def test_verify_rejects_bad_probe():
    with pytest.raises(ValueError):
        verify_interpolant("A", [parse("p -> q")], [], {"q"}, [parse("p")])


def test_lift_base_case_is_multiplicative_interpolant():
    sigma = [parse("p -> q"), parse("q -> r")]
    assert lift_interpolant("A", sigma, {"p", "r"}) == mult_uniform_interpolant(
        "A", sigma, {"p", "r"}
    )


def test_lift_disjunctive_hypothesis():
    sigma = [parse("(p -> q) | (p -> r)")]
    pi = lift_interpolant("A", sigma, {"p", "q", "r"})
    report = verify_interpolant(
        "A", sigma, pi, {"p", "q", "r"},
        [parse("(p -> q) | (p -> r)"), parse("p -> q"), parse("(p*p) -> (q*q) | (p*p) -> (r*r)")],
    )
    assert report.ok


def test_lift_empty_branch_collapses():
    # one branch has no shared-variable consequences, so neither does the join
    sigma = [parse("(p -> q) | (q -> p)")]
    pi = lift_interpolant("A", sigma, {"q"})
    report = verify_interpolant("A", sigma, pi, {"q"}, [parse("q -> q"), parse("q")])
    assert report.ok


def test_sugihara_interpolant_small():
    sigma = [parse("x -> y")]
    for logic in ("RMt", "IUMLm"):
        pi = mult_uniform_interpolant(logic, sigma, {"y"}, depth=3)
        assert variables_of(pi) <= {"y"}
        report = verify_interpolant(
            logic, sigma, pi, {"y"}, [parse("y -> y"), parse("y"), parse("y + ~y")]
        )
        assert report.ok, report.first_failure


def test_sugihara_interpolant_two_vars():
    sigma = [parse("x -> y"), parse("y -> z")]
    pi = mult_uniform_interpolant("IUMLm", sigma, {"x", "z"}, depth=3)
    report = verify_interpolant("IUMLm", sigma, pi, {"x", "z"}, [parse("x -> z")])
    assert report.ok, report.first_failure


def test_random_abelian_interpolation_property():
    rng = Random(5150)
    names = ["p", "q", "r", "s"]
    for _ in range(25):
        sigma = [
            random_mult_formula(rng, names, rng.randint(1, 3))
            for _ in range(rng.randint(1, 4))
        ]
        in_use = sorted(variables_of(sigma))
        if not in_use:
            continue
        x_vars = set(rng.sample(in_use, rng.randint(1, len(in_use))))
        pi = mult_uniform_interpolant("A", sigma, x_vars)
        assert variables_of(pi) <= x_vars
        for f in pi:
            assert prove_consequence("A", sigma, f).status == "proved"
        probes = [
            random_mult_formula(rng, sorted(x_vars) + ["w"], rng.randint(1, 3))
            for _ in range(10)
        ]
        report = verify_interpolant("A", sigma, pi, x_vars, probes)
        assert report.ok, report.first_failure


def test_projection_rows_lie_in_the_original_cone():
    # each interpolant formula's linear form must itself be a nonnegative
    # combination of the hypotheses' forms (the projection is exact, not
    # merely implied)
    from random import Random as _Random

    from gordian.linalg import LinForm, nonneg_combination, project_fm

    rng = _Random(7777)
    names = ["p", "q", "r", "s"]
    for _ in range(80):
        gens = [
            LinForm({v: rng.randint(-3, 3) for v in names})
            for _ in range(rng.randint(1, 4))
        ]
        keep = set(rng.sample(names, rng.randint(1, 3)))
        for row in project_fm(gens, keep):
            assert row.variables() <= keep
            assert nonneg_combination(row, gens) is not None, (gens, keep, row)
