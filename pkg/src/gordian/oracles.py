"""Multiplicative-fragment decision procedures.

All three oracles answer the same question, ``decide(sigma, phi)`` for
finite multiplicative ``sigma``, and return machine-checkable evidence:

* ``abelian``: complete, by exact rational cone membership of the linear
  readings; refutations carry an integer valuation ("Z", the integers).
* ``sugihara``: complete for the mingle logics, by exhausting valuations
  into the decision chains derived from the variable count.
* ``hilbert``: budgeted forward saturation over axiom-schema instances with
  modus ponens and the unperforated rule; Proved or Unknown, never Refuted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chains import (
    ChainAlgebra,
    chain_from_name,
    eval_abelian,
    eval_formula,
    eval_vector,
    sugihara_chain,
)
from .errors import NotMultiplicativeError, UnsupportedLogicError
from .linalg import ConeMembership, LinForm, cone_solve, translate_abelian
from .logics import LogicSpec, instantiate, lookup_logic, match_template
from .syntax import (
    ONE,
    ZERO,
    Conj,
    Formula,
    Imp,
    One,
    Var,
    Zero,
    is_multiplicative,
    metavariables,
    render,
    size,
    variables_of,
)

# --- verdicts and evidence ----------------------------------------------------


@dataclass(frozen=True)
class LinearWitness:
    """Nonnegative integer combination: sum(mu_j * hyp_j) = scale * target
    on the linear readings; the scale is discharged by the unperforated rule."""

    mu: tuple[int, ...]
    scale: int

    kind = "linear"


@dataclass(frozen=True)
class ChainExhaustiveWitness:
    """Every valuation into the named decision chains designates the target."""

    chains: tuple[str, ...]

    kind = "chain_exhaustive"


@dataclass(frozen=True)
class DerivationLine:
    index: int
    formula: Formula
    justification: str


@dataclass(frozen=True)
class DerivationWitness:
    lines: tuple[DerivationLine, ...]

    kind = "derivation"


MultWitness = LinearWitness | ChainExhaustiveWitness | DerivationWitness


@dataclass(frozen=True)
class Countermodel:
    """A refuting valuation into a named chain ("Z" = the integers)."""

    chain: str
    valuation: tuple[tuple[str, int], ...]

    @staticmethod
    def of(chain: str, valuation: dict[str, int]) -> "Countermodel":
        return Countermodel(chain, tuple(sorted(valuation.items())))

    @property
    def mapping(self) -> dict[str, int]:
        return dict(self.valuation)


@dataclass(frozen=True)
class Proved:
    witness: MultWitness

    status = "proved"


@dataclass(frozen=True)
class Refuted:
    countermodel: Countermodel

    status = "refuted"


@dataclass(frozen=True)
class Unknown:
    reason: str

    status = "unknown"


OracleVerdict = Proved | Refuted | Unknown


def _require_multiplicative(formulas) -> None:
    for f in formulas:
        if not is_multiplicative(f):
            raise NotMultiplicativeError(f"not multiplicative: {f}")


def countermodel_refutes(cm: Countermodel, sigma, disjuncts) -> bool:
    """Exact re-check: the valuation designates every hypothesis and none of
    the disjuncts."""
    val = cm.mapping
    if cm.chain == "Z":
        value = lambda f: eval_abelian(f, val)
        designated = lambda v: v >= 0
    else:
        chain = chain_from_name(cm.chain)
        value = lambda f: eval_formula(chain, val, f)
        designated = lambda v: v >= chain.unit
    return all(designated(value(h)) for h in sigma) and not any(
        designated(value(d)) for d in disjuncts
    )


# --- Abelian ------------------------------------------------------------------


def abelian_decide(sigma, phi: Formula) -> OracleVerdict:
    """Complete decision for the Abelian reading: Proved iff the target's
    linear form lies in the rational cone of the hypotheses' forms, else
    Refuted with the Farkas-dual integer valuation.  Never Unknown."""
    sigma = list(sigma)
    _require_multiplicative(sigma + [phi])
    result = cone_solve(translate_abelian(phi), [translate_abelian(h) for h in sigma])
    if isinstance(result, ConeMembership):
        return Proved(LinearWitness(result.mu, result.scale))
    valuation = {v: 0 for v in variables_of(sigma + [phi])}
    valuation.update(result)
    cm = Countermodel.of("Z", valuation)
    assert countermodel_refutes(cm, sigma, [phi])
    return Refuted(cm)


def verify_linear_witness(witness: LinearWitness, sigma, phi: Formula) -> bool:
    combination = LinForm()
    for mu_j, h in zip(witness.mu, sigma, strict=True):
        combination = combination + mu_j * translate_abelian(h)
    return witness.scale >= 1 and combination == witness.scale * translate_abelian(phi)


# --- Sugihara -----------------------------------------------------------------


def _resolve(logic: LogicSpec | str) -> LogicSpec:
    return lookup_logic(logic) if isinstance(logic, str) else logic


def decision_chains(logic: LogicSpec | str, k: int, widen: int = 0) -> list[ChainAlgebra]:
    """Decision chains for a k-variable question.  The odd chain of
    half-width k+1 suffices for the odd-unit logic; the mingle logic with
    separate unit also needs the even chain of half-width k+2, since
    neither parity's chains embed in the other's."""
    logic = _resolve(logic)
    if logic.name == "IUMLm":
        return [sugihara_chain(k + 1 + widen, odd=True)]
    if logic.name == "RMt":
        return [
            sugihara_chain(k + 2 + widen, odd=False),
            sugihara_chain(k + 1 + widen, odd=True),
        ]
    raise UnsupportedLogicError(f"no chain decision procedure for {logic.name}")


def find_chain_countermodel(chains, sigma, disjuncts):
    """First valuation designating all of ``sigma`` and none of
    ``disjuncts``, scanning the given chains; ``None`` if there is none."""
    sigma, disjuncts = list(sigma), list(disjuncts)
    var_order = sorted(variables_of(sigma + disjuncts))
    for chain in chains:
        grid = list(itertools.product(chain.carrier, repeat=len(var_order)))
        hyp_vecs = [eval_vector(chain, h, var_order, grid) for h in sigma]
        dis_vecs = [eval_vector(chain, d, var_order, grid) for d in disjuncts]
        unit = chain.unit
        for idx, point in enumerate(grid):
            if any(vec[idx] >= unit for vec in dis_vecs):
                continue
            if all(vec[idx] >= unit for vec in hyp_vecs):
                return Countermodel.of(chain.name, dict(zip(var_order, point)))
    return None


def sugihara_decide(
    logic: LogicSpec | str, sigma, phi: Formula, widen: int = 0
) -> OracleVerdict:
    """Complete decision for the mingle logics by chain exhaustion."""
    logic = _resolve(logic)
    sigma = list(sigma)
    _require_multiplicative(sigma + [phi])
    chains = decision_chains(logic, len(variables_of(sigma + [phi])), widen)
    cm = find_chain_countermodel(chains, sigma, [phi])
    if cm is not None:
        assert countermodel_refutes(cm, sigma, [phi])
        return Refuted(cm)
    return Proved(ChainExhaustiveWitness(tuple(c.name for c in chains)))


# --- Hilbert ------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertBudget:
    max_lines: int = 4000
    max_instances: int = 12000
    pool_limit: int = 28
    max_term_size: int | None = None
    family_bound: int = 8
    u_bound: int = 16


def _scalar_count(f: Formula, g: Formula) -> int | None:
    """Largest n with f == n*g (left-nested sums), or None."""
    n = 0
    current = f
    while True:
        if current == g:
            return n + 1
        if (
            isinstance(current, Imp)
            and isinstance(current.left, Imp)
            and isinstance(current.left.right, Zero)
            and current.right == g
        ):
            current = current.left.left
            n += 1
            continue
        return None


def _subterms(f: Formula, out: dict[Formula, None]) -> None:
    if f in out:
        return
    out[f] = None
    if not isinstance(f, (Var, One, Zero)):
        _subterms(f.left, out)
        _subterms(f.right, out)


def _axiom_instances(schemas, pool, max_size, max_instances):
    """Deterministic stream of schema instances over the term pool, larger
    metavariable counts drawing from a shorter prefix of the pool."""
    produced = 0
    for schema in schemas:
        mvars = sorted(metavariables(schema.template))
        if not mvars:
            yield schema.name, schema.template
            produced += 1
            continue
        source = pool[: max(8, len(pool) // (2 ** (len(mvars) - 1)))]
        for combo in itertools.product(source, repeat=len(mvars)):
            instance = instantiate(schema, dict(zip(mvars, combo)))
            if size(instance) > max_size:
                continue
            yield schema.name, instance
            produced += 1
            if produced >= max_instances:
                return


def hilbert_search(
    logic: LogicSpec | str, sigma, phi: Formula, budget: HilbertBudget | None = None
) -> OracleVerdict:
    """Budgeted proof search in the logic's multiplicative fragment.

    Forward saturation: hypotheses and axiom-schema instances built from the
    subterm closure are closed under modus ponens and the unperforated rule
    until the target appears or the budget runs out.  Proved answers carry a
    checkable derivation; there are no Refuted answers.
    """
    logic = _resolve(logic)
    budget = budget or HilbertBudget()
    sigma = list(sigma)
    _require_multiplicative(sigma + [phi])

    schemas = logic.mult_axiom_schemas() + logic.family_schemas(budget.family_bound)
    use_u = "u_n" in logic.mult_rules

    pool_map: dict[Formula, None] = {}
    for f in sigma + [phi, ONE, ZERO]:
        _subterms(f, pool_map)
    pool = sorted(pool_map, key=lambda f: (size(f), render(f)))[: budget.pool_limit]
    max_size = budget.max_term_size or max(2 * size(phi) + 8, 24)

    parents: dict[Formula, tuple] = {}
    queue: list[Formula] = []
    by_antecedent: dict[Formula, list[Imp]] = {}

    def add(f: Formula, justification: tuple) -> None:
        if f in parents:
            return
        parents[f] = justification
        queue.append(f)

    for h in sigma:
        add(h, ("hyp",))
    if phi not in parents:
        for name, instance in _axiom_instances(
            schemas, pool, max_size, budget.max_instances
        ):
            add(instance, ("axiom", name))
            if instance == phi:
                break

    seeded = len(parents)
    head = 0
    while head < len(queue) and phi not in parents:
        if len(parents) > seeded + budget.max_lines:
            return Unknown("line budget exhausted")
        f = queue[head]
        head += 1
        if isinstance(f, Imp):
            by_antecedent.setdefault(f.left, []).append(f)
            if f.left in parents:
                add(f.right, ("mp", f.left, f))
        for implication in by_antecedent.get(f, ()):
            add(implication.right, ("mp", f, implication))
        if use_u:
            # from n*g conclude g
            for candidate in _u_candidates(f):
                n = _scalar_count(f, candidate)
                if n is not None and 2 <= n <= budget.u_bound:
                    add(candidate, ("u", n, f))

    if phi not in parents:
        return Unknown("saturation exhausted without reaching the target")
    return Proved(DerivationWitness(_reconstruct(phi, parents)))


def _u_candidates(f: Formula):
    # n*g for n >= 2 is ~(...) -> g; the only possible quotient is f.right.
    if isinstance(f, Imp) and isinstance(f.left, Imp) and isinstance(f.left.right, Zero):
        yield f.right


def _reconstruct(goal: Formula, parents: dict[Formula, tuple]) -> tuple[DerivationLine, ...]:
    order: list[Formula] = []
    seen: set[Formula] = set()

    def visit(f: Formula) -> None:
        if f in seen:
            return
        seen.add(f)
        info = parents[f]
        if info[0] == "mp":
            visit(info[1])
            visit(info[2])
        elif info[0] == "u":
            visit(info[2])
        order.append(f)

    visit(goal)
    index = {f: i + 1 for i, f in enumerate(order)}
    lines = []
    for f in order:
        info = parents[f]
        if info[0] == "hyp":
            just = "hypothesis"
        elif info[0] == "axiom":
            just = f"axiom {info[1]}"
        elif info[0] == "mp":
            just = f"mp {index[info[1]]},{index[info[2]]}"
        else:
            just = f"u_{info[1]} {index[info[2]]}"
        lines.append(DerivationLine(index[f], f, just))
    return tuple(lines)


# --- derivation checking -------------------------------------------------------


@dataclass(frozen=True)
class DerivationCheck:
    ok: bool
    bad_index: int | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _matches_axiom(logic: LogicSpec, f: Formula) -> bool:
    for schema in logic.axiom_schemas():
        if match_template(schema.template, f) is not None:
            return True
    limit = size(f)
    for fam in logic.families:
        for n in itertools.count(0):
            fam_schemas = fam.schemas(n)
            if all(size(s.template) > limit + 2 for s in fam_schemas):
                break
            if any(match_template(s.template, f) is not None for s in fam_schemas):
                return True
    return False


def verify_derivation(logic: LogicSpec | str, lines, hypotheses=()) -> DerivationCheck:
    """Independent line-by-line check: each line must be an axiom-schema
    instance, a hypothesis, or follow from earlier lines by mp (or the
    unperforated rule / adjunction where the logic has them).  The stated
    justifications are not trusted."""
    logic = _resolve(logic)
    formulas = [line.formula if isinstance(line, DerivationLine) else line for line in lines]
    hypotheses = list(hypotheses)
    rules = set(logic.rules) | set(logic.mult_rules)
    earlier: list[Formula] = []
    earlier_set: set[Formula] = set()
    for i, f in enumerate(formulas):
        ok = f in hypotheses or _matches_axiom(logic, f)
        if not ok:
            for a in earlier:
                if Imp(a, f) in earlier_set:
                    ok = True
                    break
        if not ok and "adj" in rules and isinstance(f, Conj):
            ok = f.left in earlier_set and f.right in earlier_set
        if not ok and "u_n" in rules:
            for a in earlier:
                n = _scalar_count(a, f)
                if n is not None and n >= 2:
                    ok = True
                    break
        if not ok:
            return DerivationCheck(False, i + 1, f"line {i + 1} unjustified: {f}")
        earlier.append(f)
        earlier_set.add(f)
    return DerivationCheck(True)


# --- dispatch -------------------------------------------------------------------


def decide(
    logic: LogicSpec | str,
    sigma,
    phi: Formula,
    budget: HilbertBudget | None = None,
    widen: int = 0,
) -> OracleVerdict:
    """Route a multiplicative consequence question to the logic's oracle."""
    logic = _resolve(logic)
    if logic.oracle_kind == "abelian":
        return abelian_decide(sigma, phi)
    if logic.oracle_kind == "sugihara":
        return sugihara_decide(logic, sigma, phi, widen=widen)
    return hilbert_search(logic, sigma, phi, budget=budget)
