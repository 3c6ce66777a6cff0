"""The theorem-of-alternatives engine.

A disjunction goal is settled by finding a not-all-zero natural vector
``lambda`` whose weighted sum of the disjuncts is derivable from the
hypotheses in the multiplicative fragment, or by exhibiting a countermodel:

* Abelian: one exact linear program decides both directions at once (with
  no hypotheses this is literally the strict-dual/kernel dichotomy).
* Mingle logics: ``lambda`` ranges over 0/1 vectors (subset form), decided
  against the Sugihara decision chains; refutations come from a direct
  valuation sweep.
* Everything else: iterative deepening on ``sum(lambda)`` against the
  Hilbert oracle; exhaustion is reported as Unknown, never Refuted.

A certificate expands back into the disjunction by peeling one summand at a
time with excluded middle, which is recorded as a checkable step list.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidCertificateError, LogicWithoutToAError
from .linalg import (
    IntMatrix,
    Kernel,
    StrictDual,
    _clear_denominators,
    _primitive,
    feasible_point_or_farkas,
    gordan,
    translate_abelian,
)
from .logics import LogicSpec, lookup_logic
from .normalize import Goal, decompose_consequence
from .oracles import (
    Countermodel,
    HilbertBudget,
    LinearWitness,
    MultWitness,
    countermodel_refutes,
    decide,
    decision_chains,
    find_chain_countermodel,
)
from .syntax import (
    ONE,
    ZERO,
    Disj,
    Formula,
    Imp,
    Var,
    Zero,
    neg,
    plus,
    render,
    scalar,
    variables_of,
)


@dataclass(frozen=True)
class EngineBudget:
    lambda_cap: int = 16
    widen: int = 0
    max_literals: int = 4096
    max_goals: int = 4096
    hilbert: HilbertBudget = field(default_factory=HilbertBudget)


DEFAULT_BUDGET = EngineBudget()


@dataclass(frozen=True)
class ToACertificate:
    """Not-all-zero weights plus the oracle's witness for the weighted sum."""

    lambdas: tuple[int, ...]
    witness: MultWitness


@dataclass(frozen=True)
class ProofResult:
    status: str  # proved / refuted / unknown
    goal: Goal
    certificate: ToACertificate | None = None
    countermodel: Countermodel | None = None
    reason: str | None = None


def combination_formula(lambdas, disjuncts) -> Formula:
    """The weighted sum ``l1*f1 + ... + ln*fn`` over the support of
    ``lambdas``, folded right-nested in disjunct order."""
    terms = [scalar(l, d) for l, d in zip(lambdas, disjuncts, strict=True) if l > 0]
    if not terms:
        raise InvalidCertificateError("weights must not all be zero")
    acc = terms[-1]
    for t in reversed(terms[:-1]):
        acc = plus(t, acc)
    return acc


def _resolve(logic: LogicSpec | str) -> LogicSpec:
    return lookup_logic(logic) if isinstance(logic, str) else logic


def prove_disjunction(
    logic: LogicSpec | str,
    goal: Goal,
    budget: EngineBudget = DEFAULT_BUDGET,
    strategy: str = "auto",
) -> ProofResult:
    """Decide one multiplicative disjunction goal with certificates.

    ``strategy`` is normally ``"auto"``; ``"deepening"`` forces the generic
    iterative-deepening search even where a one-shot method exists (used to
    cross-check the subset form on the mingle logics).
    """
    logic = _resolve(logic)
    if not logic.has_toa:
        raise LogicWithoutToAError(f"{logic.name} has no theorem of alternatives")
    if strategy == "auto":
        strategy = {
            "abelian": "linear",
            "sugihara": "subset",
        }.get(logic.oracle_kind, "deepening")
    if strategy == "linear":
        return _prove_abelian(logic, goal)
    if strategy == "subset":
        return _prove_subsets(logic, goal, budget)
    if strategy == "deepening":
        return _prove_deepening(logic, goal, budget)
    raise ValueError(f"unknown strategy {strategy!r}")


# --- Abelian: one exact LP -----------------------------------------------------


def _prove_abelian(logic: LogicSpec, goal: Goal) -> ProofResult:
    disjuncts = goal.clause.disjuncts
    hyps = goal.hypotheses
    d_forms = [translate_abelian(d) for d in disjuncts]
    h_forms = [translate_abelian(h) for h in hyps]
    variables = sorted(frozenset().union(*(f.variables() for f in d_forms + h_forms)))

    if not hyps and variables:
        # columns are the disjunct forms: the kernel/strict-dual dichotomy
        matrix = IntMatrix.of(
            [[f.get(v) for f in d_forms] for v in variables]
        )
        result = gordan(matrix)
        if isinstance(result, Kernel):
            return _abelian_proved(goal, result.x, mu=(), scale=1)
        assert isinstance(result, StrictDual)
        valuation = dict(zip(variables, (-y for y in result.y)))
        return _abelian_refuted(goal, valuation)

    n, h = len(disjuncts), len(hyps)
    rows: list[list[int]] = [
        [f.get(v) for f in d_forms] + [-f.get(v) for f in h_forms] for v in variables
    ]
    rows.append([1] * n + [0] * h)
    rhs = [0] * len(variables) + [1]
    x, y = feasible_point_or_farkas(rows, rhs)
    if x is not None:
        ints, _ = _clear_denominators(x)
        return _abelian_proved(goal, ints[:n], mu=tuple(ints[n:]), scale=1)
    assert y is not None
    # Farkas y: <y, disjunct form> <= -y_last < 0 and <y, hyp form> >= 0,
    # so y itself (restricted to the variable rows) is the countermodel.
    valuation = dict(zip(variables, _primitive(list(y[: len(variables)]))))
    return _abelian_refuted(goal, valuation)


def _abelian_proved(goal: Goal, lambdas, mu, scale) -> ProofResult:
    lambdas = tuple(int(v) for v in lambdas)
    cert = ToACertificate(lambdas, LinearWitness(tuple(int(v) for v in mu), scale))
    combo = translate_abelian(combination_formula(lambdas, goal.clause.disjuncts))
    total = sum(
        (m * translate_abelian(hyp) for m, hyp in zip(cert.witness.mu, goal.hypotheses)),
        start=0 * combo,
    )
    assert total == scale * combo
    return ProofResult("proved", goal, certificate=cert)


def _abelian_refuted(goal: Goal, valuation: dict[str, int]) -> ProofResult:
    full = {v: 0 for v in variables_of(goal.hypotheses + goal.clause.disjuncts)}
    full.update(valuation)
    cm = Countermodel.of("Z", full)
    assert countermodel_refutes(cm, goal.hypotheses, goal.clause.disjuncts)
    return ProofResult("refuted", goal, countermodel=cm)


# --- mingle logics: subset weights ---------------------------------------------


def _prove_subsets(logic: LogicSpec, goal: Goal, budget: EngineBudget) -> ProofResult:
    cm = _chain_countermodel(logic, goal, budget)
    if cm is not None:
        return ProofResult("refuted", goal, countermodel=cm)
    disjuncts = goal.clause.disjuncts
    n = len(disjuncts)
    for r in range(1, n + 1):
        for indices in itertools.combinations(range(n), r):
            lambdas = tuple(1 if i in indices else 0 for i in range(n))
            combo = combination_formula(lambdas, disjuncts)
            verdict = decide(logic, goal.hypotheses, combo, widen=budget.widen)
            if verdict.status == "proved":
                return ProofResult(
                    "proved", goal, certificate=ToACertificate(lambdas, verdict.witness)
                )
    return ProofResult(
        "unknown",
        goal,
        reason="valid on the decision chains but no subset combination proved",
    )


def _chain_countermodel(
    logic: LogicSpec, goal: Goal, budget: EngineBudget
) -> Countermodel | None:
    k = len(variables_of(goal.hypotheses + goal.clause.disjuncts))
    chains = decision_chains(logic, k, budget.widen)
    cm = find_chain_countermodel(chains, goal.hypotheses, goal.clause.disjuncts)
    if cm is not None:
        assert countermodel_refutes(cm, goal.hypotheses, goal.clause.disjuncts)
    return cm


# --- generic: iterative deepening ----------------------------------------------


def _compositions(total: int, parts: int):
    """All nonnegative integer vectors of the given sum, lexicographically
    from the first coordinate down."""
    if parts == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def _prove_deepening(logic: LogicSpec, goal: Goal, budget: EngineBudget) -> ProofResult:
    if logic.oracle_kind == "sugihara":
        cm = _chain_countermodel(logic, goal, budget)
        if cm is not None:
            return ProofResult("refuted", goal, countermodel=cm)
    disjuncts = goal.clause.disjuncts
    for total in range(1, budget.lambda_cap + 1):
        for lambdas in _compositions(total, len(disjuncts)):
            combo = combination_formula(lambdas, disjuncts)
            verdict = decide(
                logic, goal.hypotheses, combo, budget=budget.hilbert, widen=budget.widen
            )
            if verdict.status == "proved":
                return ProofResult(
                    "proved", goal, certificate=ToACertificate(lambdas, verdict.witness)
                )
    return ProofResult(
        "unknown", goal, reason=f"no combination proved with weight sum <= {budget.lambda_cap}"
    )


# --- certificate expansion ------------------------------------------------------


@dataclass(frozen=True)
class ExpansionStep:
    rule: str  # sum_split / dedupe / weaken / reorder
    principal: Formula | None
    disjuncts: tuple[Formula, ...]


@dataclass(frozen=True)
class ExpansionSketch:
    steps: tuple[ExpansionStep, ...]
    final: tuple[Formula, ...]


def expand_combination(cert: ToACertificate, goal: Goal) -> ExpansionSketch:
    """Step list taking the certified weighted sum back to the goal's
    disjunction: each sum splits into two disjuncts via excluded middle,
    duplicates collapse, zero-weight disjuncts weaken in, then reorder.
    The steps are records for an external checker, not oracle calls."""
    disjuncts = goal.clause.disjuncts
    if len(cert.lambdas) != len(disjuncts):
        raise InvalidCertificateError("weight vector does not match the goal")
    if any(l < 0 for l in cert.lambdas) or not any(cert.lambdas):
        raise InvalidCertificateError("weights must be nonnegative, not all zero")

    state = [combination_formula(cert.lambdas, disjuncts)]
    steps: list[ExpansionStep] = []

    def record(rule: str, principal: Formula | None) -> None:
        steps.append(ExpansionStep(rule, principal, tuple(state)))

    support = [(d, l) for d, l in zip(disjuncts, cert.lambdas) if l > 0]
    # peel the right-nested fold: one term splits off per step
    for position in range(len(support) - 1):
        current = state[position]
        assert isinstance(current, Imp) and isinstance(current.left, Imp)
        state[position : position + 1] = [current.left.left, current.right]
        record("sum_split", current.left.left)
    # expand each left-nested scalar multiple into copies
    position = 0
    for d, l in support:
        for _ in range(l - 1):
            current = state[position]
            state[position : position + 1] = [current.left.left, current.right]
            record("sum_split", current.left.left)
        position += l
    # collapse duplicate copies
    seen: list[Formula] = []
    idx = 0
    while idx < len(state):
        if state[idx] in seen:
            principal = state.pop(idx)
            record("dedupe", principal)
        else:
            seen.append(state[idx])
            idx += 1
    # weaken in the zero-weight disjuncts
    for d, l in zip(disjuncts, cert.lambdas):
        if l == 0:
            state.append(d)
            record("weaken", d)
    if tuple(state) != disjuncts:
        if sorted(state, key=render) != sorted(disjuncts, key=render):
            raise InvalidCertificateError("expansion did not reach the goal disjunction")
        state = list(disjuncts)
        record("reorder", None)
    return ExpansionSketch(tuple(steps), tuple(state))


def check_expansion(cert: ToACertificate, goal: Goal, sketch: ExpansionSketch) -> bool:
    """Replay an expansion sketch step by step, verifying each record."""
    state = [combination_formula(cert.lambdas, goal.clause.disjuncts)]
    for step in sketch.steps:
        after = list(step.disjuncts)
        if step.rule == "sum_split":
            if len(after) != len(state) + 1:
                return False
            i = next(
                (j for j in range(len(state)) if state[j] != after[j]), len(state) - 1
            )
            split = state[i]
            if not (
                isinstance(split, Imp)
                and isinstance(split.left, Imp)
                and isinstance(split.left.right, Zero)
                and after[i] == split.left.left
                and after[i + 1] == split.right
                and after[: i] == state[: i]
                and after[i + 2 :] == state[i + 1 :]
            ):
                return False
        elif step.rule == "dedupe":
            if len(after) != len(state) - 1 or step.principal not in state:
                return False
            if sorted(map(render, after + [step.principal])) != sorted(
                map(render, state)
            ):
                return False
            if step.principal not in after:
                return False
        elif step.rule == "weaken":
            if after[:-1] != state or after[-1] not in goal.clause.disjuncts:
                return False
        elif step.rule == "reorder":
            if sorted(map(render, after)) != sorted(map(render, state)):
                return False
        else:
            return False
        state = after
    return tuple(state) == goal.clause.disjuncts == sketch.final


# --- full consequences ------------------------------------------------------------


@dataclass(frozen=True)
class ConsequenceResult:
    status: str
    results: tuple[ProofResult, ...]

    @property
    def countermodel(self) -> Countermodel | None:
        for r in self.results:
            if r.status == "refuted":
                return r.countermodel
        return None

    @property
    def reason(self) -> str | None:
        for r in self.results:
            if r.status == "unknown":
                return r.reason
        return None


def prove_consequence(
    logic: LogicSpec | str,
    sigma,
    f: Formula,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> ConsequenceResult:
    """Decompose ``sigma |- f`` into multiplicative goals and settle each.

    Proved iff every goal is proved; any refuted goal refutes the
    consequence (the decomposition is equivalence-preserving over chains).
    """
    logic = _resolve(logic)
    goals = decompose_consequence(
        sigma, f, max_literals=budget.max_literals, max_goals=budget.max_goals
    )
    results = tuple(prove_disjunction(logic, g, budget) for g in goals)
    if any(r.status == "refuted" for r in results):
        status = "refuted"
    elif any(r.status == "unknown" for r in results):
        status = "unknown"
    else:
        status = "proved"
    return ConsequenceResult(status, results)


@dataclass(frozen=True)
class ExcludedMiddleReport:
    logic: str
    excluded_middle: ConsequenceResult
    zero_to_one: ConsequenceResult

    @property
    def ok(self) -> bool:
        return (
            self.excluded_middle.status == "proved"
            and self.zero_to_one.status == "proved"
        )


def check_excluded_middle(
    logic: LogicSpec | str, budget: EngineBudget = DEFAULT_BUDGET
) -> ExcludedMiddleReport:
    """Any logic with an alternatives theorem proves p | ~p and 0 -> 1;
    run both through the engine and report."""
    logic = _resolve(logic)
    p = Var("p")
    lem = prove_consequence(logic, [], Disj(p, neg(p)), budget)
    zero_one = prove_consequence(logic, [], Imp(ZERO, ONE), budget)
    return ExcludedMiddleReport(logic.name, lem, zero_one)
