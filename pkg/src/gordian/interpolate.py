"""Uniform deductive interpolation.

Given hypotheses and a subset X of their variables, an interpolant is a
finite set over X with exactly the same consequences among formulas whose
shared variables lie in X.

Multiplicative level:

* Abelian: the hypotheses' linear forms generate a cone; projecting the
  cone's polar inequality system onto X by Fourier-Motzkin yields rows that
  generate exactly the cone's intersection with the X-subspace, and each
  row renders back as the implication (negative part) -> (positive part).
* Mingle logics (X of at most 2 variables): the finitely many semantic
  classes of formulas over X are enumerated against the decision chains and
  the derivable representatives kept.

Full-language hypotheses reduce to the multiplicative level by splitting
conjunctions, recursing over disjunctive clauses, and joining the two
branch interpolants as one disjunction of their conjunctions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import eval_vector
from .engine import DEFAULT_BUDGET, EngineBudget, prove_consequence
from .errors import (
    EnumerationBudgetExceededError,
    NotMultiplicativeError,
    SizeBudgetExceededError,
    UnsupportedLogicError,
)
from .linalg import LinForm, project_fm, translate_abelian
from .logics import LogicSpec, lookup_logic
from .normalize import to_mult_clauses
from .oracles import decision_chains, sugihara_decide
from .syntax import (
    ONE,
    Conj,
    Disj,
    Formula,
    Fuse,
    Imp,
    Var,
    ZERO,
    is_multiplicative,
    power,
    render,
    variables,
    variables_of,
)


def _resolve(logic: LogicSpec | str) -> LogicSpec:
    return lookup_logic(logic) if isinstance(logic, str) else logic


def _form_to_formula(form: LinForm) -> Formula:
    """A multiplicative formula whose linear reading is ``form``:
    (product of negative-coefficient powers) -> (product of positive ones)."""
    assert form.constant == 0

    def monomial(signed: int) -> Formula:
        factors = [
            power(Var(v), c * signed)
            for v, c in sorted(form.coeffs.items())
            if c * signed > 0
        ]
        out = ONE
        for f in factors:
            out = f if out == ONE else Fuse(out, f)
        return out

    return Imp(monomial(-1), monomial(+1))


def mult_uniform_interpolant(
    logic: LogicSpec | str,
    sigma,
    x_vars,
    depth: int = 4,
    class_cap: int = 4096,
) -> list[Formula]:
    """Finite interpolant for multiplicative hypotheses over the variable
    set ``x_vars``.  Fully supported for the Abelian logic; for the mingle
    logics via bounded semantic enumeration with at most two variables."""
    sigma = list(sigma)
    if not frozenset(x_vars) <= variables_of(sigma):
        raise ValueError("X must be a subset of the hypotheses' variables")
    return _mult_interpolant(_resolve(logic), sigma, frozenset(x_vars), depth, class_cap)


def _mult_interpolant(
    logic: LogicSpec,
    sigma: list[Formula],
    x_vars: frozenset[str],
    depth: int = 4,
    class_cap: int = 4096,
) -> list[Formula]:
    for f in sigma:
        if not is_multiplicative(f):
            raise NotMultiplicativeError(f"not multiplicative: {f}")
    if logic.oracle_kind == "abelian":
        rows = project_fm([translate_abelian(f) for f in sigma], x_vars)
        return sorted((_form_to_formula(r) for r in rows), key=render)
    if logic.oracle_kind == "sugihara":
        if len(x_vars) > 2:
            raise UnsupportedLogicError(
                f"{logic.name}: enumeration supports at most 2 shared variables"
            )
        reps = _enumerate_classes(logic, sorted(x_vars), depth, class_cap)
        kept = [
            f for f in reps if sugihara_decide(logic, sigma, f).status == "proved"
        ]
        return sorted(kept, key=render)
    raise UnsupportedLogicError(f"no interpolation procedure for {logic.name}")


def _enumerate_classes(
    logic: LogicSpec, x_vars: list[str], depth: int, class_cap: int
) -> list[Formula]:
    """One shortest representative per semantic class of multiplicative
    formulas over ``x_vars``, classes separated by their value vectors over
    the decision chains.  Local finiteness makes this saturate."""
    chains = decision_chains(logic, len(x_vars))
    grids = [
        list(itertools.product(chain.carrier, repeat=len(x_vars))) for chain in chains
    ]

    def signature(f: Formula) -> tuple:
        return tuple(
            tuple(eval_vector(chain, f, x_vars, grid))
            for chain, grid in zip(chains, grids)
        )

    classes: dict[tuple, Formula] = {}
    for atom in [Var(v) for v in x_vars] + [ONE, ZERO]:
        classes.setdefault(signature(atom), atom)
    for _ in range(depth):
        known = list(classes.values())
        new: list[Formula] = []
        for a, b in itertools.product(known, repeat=2):
            for candidate in (Fuse(a, b), Imp(a, b)):
                sig = signature(candidate)
                if sig not in classes:
                    classes[sig] = candidate
                    new.append(candidate)
                    if len(classes) > class_cap:
                        raise EnumerationBudgetExceededError(
                            f"more than {class_cap} semantic classes"
                        )
        if not new:
            break
    return list(classes.values())


def lift_interpolant(
    logic: LogicSpec | str,
    sigma,
    x_vars,
    budget: EngineBudget = DEFAULT_BUDGET,
    max_branches: int = 256,
) -> list[Formula]:
    """Interpolant for arbitrary hypotheses.

    Hypotheses normalize to clauses; conjunctions split into separate
    hypotheses, and each disjunctive clause forks into two subproblems whose
    interpolants rejoin as (and of one side) | (and of the other).  An empty
    side means that branch admits only theorems over X, so the join is
    empty too.  The base case is the multiplicative interpolant.
    """
    logic = _resolve(logic)
    sigma = list(sigma)
    x_vars = frozenset(x_vars)
    if not x_vars <= variables_of(sigma):
        raise ValueError("X must be a subset of the hypotheses' variables")
    clauses = []
    for f in sigma:
        clauses.extend(list(c.disjuncts) for c in to_mult_clauses(f, budget.max_literals))

    branches = 1
    for c in clauses:
        branches *= len(c)
    if branches > max_branches:
        raise SizeBudgetExceededError(f"interpolation would fork {branches} branches")

    def recurse(cls: list[list[Formula]]) -> list[Formula]:
        for i, clause in enumerate(cls):
            if len(clause) > 1:
                left = recurse(cls[:i] + [[clause[0]]] + cls[i + 1 :])
                right = recurse(cls[:i] + [clause[1:]] + cls[i + 1 :])
                if not left or not right:
                    return []
                return [Disj(_conj_fold(left), _conj_fold(right))]
        return _mult_interpolant(logic, [c[0] for c in cls], x_vars)

    return sorted(recurse(clauses), key=render)


def _conj_fold(formulas: list[Formula]) -> Formula:
    out = formulas[0]
    for f in formulas[1:]:
        out = Conj(out, f)
    return out


@dataclass(frozen=True)
class InterpolationCheck:
    name: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class InterpolationReport:
    checks: tuple[InterpolationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def first_failure(self) -> InterpolationCheck | None:
        return next((c for c in self.checks if not c.ok), None)


def verify_interpolant(
    logic: LogicSpec | str,
    sigma,
    pi,
    x_vars,
    probes,
    budget: EngineBudget = DEFAULT_BUDGET,
) -> InterpolationReport:
    """Check the defining equivalence on concrete probes: the interpolant
    uses only X, follows from the hypotheses, and proves exactly the same
    probes.  Probes must share only X-variables with the hypotheses."""
    logic = _resolve(logic)
    sigma, pi = list(sigma), list(pi)
    x_vars = frozenset(x_vars)
    checks: list[InterpolationCheck] = []

    stray = variables_of(pi) - x_vars
    checks.append(
        InterpolationCheck(
            "variable_condition",
            not stray,
            "" if not stray else f"interpolant uses {sorted(stray)}",
        )
    )
    for f in pi:
        ok = prove_consequence(logic, sigma, f, budget).status == "proved"
        checks.append(
            InterpolationCheck("forward_derivability", ok, render(f))
        )
    shared_bound = variables_of(sigma)
    for probe in probes:
        if variables(probe) & (shared_bound - x_vars):
            raise ValueError(f"probe {render(probe)} violates the variable side-condition")
        from_sigma = prove_consequence(logic, sigma, probe, budget).status
        from_pi = prove_consequence(logic, pi, probe, budget).status
        checks.append(
            InterpolationCheck(
                "probe_equivalence",
                from_sigma == from_pi,
                f"{render(probe)}: {from_sigma} vs {from_pi}",
            )
        )
    return InterpolationReport(tuple(checks))
