from random import Random

import pytest

from helpers import (
    abelian_goal_countermodel,
    goal_holds_brute_force,
    random_goal,
    rmt_chain_family,
)

from gordian.engine import (
    check_excluded_middle,
    check_expansion,
    combination_formula,
    expand_combination,
    prove_consequence,
    prove_disjunction,
)
from gordian.errors import InvalidCertificateError, LogicWithoutToAError
from gordian.logics import lookup_logic
from gordian.normalize import Goal
from gordian.oracles import countermodel_refutes, decide, verify_linear_witness
from gordian.syntax import parse, plus, scalar


def goal_of(hyp_texts, disjunct_texts) -> Goal:
    return Goal.of([parse(t) for t in hyp_texts], [parse(t) for t in disjunct_texts])


def test_requires_toa():
    with pytest.raises(LogicWithoutToAError):
        prove_disjunction("MLL", goal_of([], ["p"]))


def test_rmt_excluded_middle_subset():
    result = prove_disjunction("RMt", goal_of([], ["p", "~p"]))
    assert result.status == "proved"
    assert result.certificate.lambdas == (1, 1)


def test_abelian_symmetry_goal():
    result = prove_disjunction("A", goal_of([], ["p -> q", "q -> p"]))
    assert result.status == "proved"
    assert result.certificate.lambdas == (1, 1)


def test_abelian_refutation_strict_dual():
    result = prove_disjunction("A", goal_of([], ["p", "q"]))
    assert result.status == "refuted"
    assert countermodel_refutes(
        result.countermodel, [], [parse("p"), parse("q")]
    )


def test_abelian_with_hypotheses():
    result = prove_disjunction("A", goal_of(["p -> q", "q -> r"], ["p -> r"]))
    assert result.status == "proved"
    result = prove_disjunction("A", goal_of(["p -> q"], ["q -> p"]))
    assert result.status == "refuted"


def test_combination_formula_shape():
    disjuncts = (parse("p"), parse("q"), parse("r"))
    combo = combination_formula((1, 0, 2), disjuncts)
    assert combo == plus(parse("p"), scalar(2, parse("r")))
    with pytest.raises(InvalidCertificateError):
        combination_formula((0, 0, 0), disjuncts)


def test_prove_consequence_examples():
    assert prove_consequence("IUMLm", [], parse("1 -> 0")).status == "proved"
    result = prove_consequence("A", [parse("p -> q"), parse("q -> r")], parse("p -> r"))
    assert result.status == "proved"
    result = prove_consequence("RMt", [], parse("1 -> 0"))
    assert result.status == "refuted"
    assert result.countermodel is not None


def test_consequence_aggregates_goals():
    result = prove_consequence("A", [], parse("(p -> p) & (q -> q)"))
    assert result.status == "proved" and len(result.results) == 2
    result = prove_consequence("A", [], parse("(p -> p) & q"))
    assert result.status == "refuted"


def test_excluded_middle_all_logics():
    for name in ("A", "RMt", "IUMLm", "BIULm"):
        assert check_excluded_middle(name).ok, name


def test_abelian_completeness_against_semantic_lp():
    rng = Random(6021)
    for _ in range(80):
        goal = random_goal(rng)
        result = prove_disjunction("A", goal)
        countermodel = abelian_goal_countermodel(goal)
        assert (result.status == "proved") == (countermodel is None)


def test_mingle_collapse_general_vs_subset():
    rng = Random(1311)
    for _ in range(50):
        goal = random_goal(rng, max_depth=3)
        subset = prove_disjunction("RMt", goal)
        general = prove_disjunction("RMt", goal, strategy="deepening")
        brute = goal_holds_brute_force(rmt_chain_family(3), goal)
        assert subset.status == general.status
        assert (subset.status == "proved") == brute


def test_proved_certificates_reverify():
    rng = Random(88)
    for logic_name in ("A", "RMt", "IUMLm"):
        logic = lookup_logic(logic_name)
        for _ in range(40):
            goal = random_goal(rng, max_depth=3)
            result = prove_disjunction(logic, goal)
            if result.status == "proved":
                combo = combination_formula(
                    result.certificate.lambdas, goal.clause.disjuncts
                )
                assert decide(logic, goal.hypotheses, combo).status == "proved"
                if logic_name == "A":
                    assert verify_linear_witness(
                        result.certificate.witness, goal.hypotheses, combo
                    )
            else:
                assert result.status == "refuted"
                assert countermodel_refutes(
                    result.countermodel, goal.hypotheses, goal.clause.disjuncts
                )


def test_expand_combination_examples():
    goal = goal_of([], ["p", "~p"])
    result = prove_disjunction("RMt", goal)
    sketch = expand_combination(result.certificate, goal)
    assert sketch.final == goal.clause.disjuncts
    assert check_expansion(result.certificate, goal, sketch)

    # lambda = (1, 0): weaken the unused disjunct in
    from gordian.engine import ToACertificate
    from gordian.oracles import ChainExhaustiveWitness

    goal2 = goal_of([], ["p -> p", "q"])
    cert2 = ToACertificate((1, 0), ChainExhaustiveWitness(("sugihara_odd_1",)))
    sketch2 = expand_combination(cert2, goal2)
    assert [s.rule for s in sketch2.steps] == ["weaken"]
    assert check_expansion(cert2, goal2, sketch2)

    # lambda = (2, 0): two copies, dedupe, then weaken
    cert3 = ToACertificate((2, 0), ChainExhaustiveWitness(("sugihara_odd_1",)))
    sketch3 = expand_combination(cert3, goal2)
    rules = [s.rule for s in sketch3.steps]
    assert "sum_split" in rules and "dedupe" in rules and "weaken" in rules
    assert check_expansion(cert3, goal2, sketch3)


def test_expand_rejects_mismatched_certificates():
    from gordian.engine import ToACertificate
    from gordian.oracles import ChainExhaustiveWitness

    goal = goal_of([], ["p", "~p"])
    with pytest.raises(InvalidCertificateError):
        expand_combination(
            ToACertificate((1,), ChainExhaustiveWitness(())), goal
        )
    with pytest.raises(InvalidCertificateError):
        expand_combination(
            ToACertificate((0, 0), ChainExhaustiveWitness(())), goal
        )


def test_expansion_random_certificates():
    rng = Random(515)
    for _ in range(60):
        goal = random_goal(rng, max_depth=3)
        result = prove_disjunction("A", goal)
        if result.status != "proved":
            continue
        sketch = expand_combination(result.certificate, goal)
        assert check_expansion(result.certificate, goal, sketch)


def test_biul_deepening_finds_certificates():
    goal = goal_of([], ["p", "~p"])
    result = prove_disjunction("BIULm", goal)
    assert result.status == "proved"
    assert result.certificate.lambdas == (1, 1)
    goal2 = goal_of([], ["0 -> 1"])
    assert prove_disjunction("BIULm", goal2).status == "proved"


def test_deterministic_results():
    rng = Random(9)
    goals = [random_goal(rng) for _ in range(10)]
    for goal in goals:
        a = prove_disjunction("A", goal)
        b = prove_disjunction("A", goal)
        assert a == b


def test_end_to_end_against_chain_semantics():
    # full pipeline (normalizer + engine + oracle) vs direct evaluation
    from random import Random

    from helpers import iuml_chain_family
    from gordian.chains import brute_force_consequence
    from gordian.rand import random_formula

    rng = Random(303030)
    for _ in range(60):
        sigma = [random_formula(rng, ["p", "q"], rng.randint(1, 3))
                 for _ in range(rng.randint(0, 2))]
        f = random_formula(rng, ["p", "q"], rng.randint(1, 3))
        for logic, chains in (
            ("IUMLm", iuml_chain_family(2)),
            ("RMt", rmt_chain_family(2)),
        ):
            result = prove_consequence(logic, sigma, f)
            direct = brute_force_consequence(chains, sigma, f) is None
            assert (result.status == "proved") == direct, (logic, sigma, f)


def test_end_to_end_abelian_grid_consistency():
    from random import Random

    from gordian.chains import eval_abelian
    from gordian.rand import random_formula
    from gordian.syntax import variables_of
    import itertools

    rng = Random(404040)
    for _ in range(60):
        sigma = [random_formula(rng, ["p", "q"], rng.randint(1, 3))
                 for _ in range(rng.randint(0, 2))]
        f = random_formula(rng, ["p", "q"], rng.randint(1, 3))
        result = prove_consequence("A", sigma, f)
        names = sorted(variables_of(sigma + [f]))
        if result.status == "proved":
            # a proved consequence admits no integer countermodel
            for point in itertools.product(range(-2, 3), repeat=len(names)):
                valuation = dict(zip(names, point))
                if all(eval_abelian(h, valuation) >= 0 for h in sigma):
                    assert eval_abelian(f, valuation) >= 0, (sigma, f, valuation)
        else:
            assert result.status == "refuted"
            cm = result.countermodel
            assert cm is not None and cm.chain == "Z"
            valuation = {v: 0 for v in names}
            valuation.update(cm.mapping)
            assert all(eval_abelian(h, valuation) >= 0 for h in sigma)
            assert eval_abelian(f, valuation) < 0


def test_lambda_cap_yields_unknown():
    from gordian.engine import EngineBudget

    goal = goal_of([], ["p", "~p"])
    result = prove_disjunction("BIULm", goal, EngineBudget(lambda_cap=1))
    assert result.status == "unknown"
    result = prove_disjunction("BIULm", goal, EngineBudget(lambda_cap=2))
    assert result.status == "proved"
