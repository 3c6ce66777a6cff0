"""Axiom systems, named logics and schema machinery.

Templates are ordinary formula trees whose leaves may be metavariables
(uppercase names, a namespace disjoint from object variables).  A logic is
a base system plus extra axiom schemas; the registry carries the standard
presets and parametric knotted extensions.  Each preset also records which
multiplicative-fragment decision procedure applies to it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from .errors import MissingMetavariableError, UnknownLogicError
from .syntax import (
    Conj,
    Formula,
    Imp,
    MVar,
    One,
    Var,
    Zero,
    is_multiplicative,
    parse_template,
    power,
    scalar,
)


@dataclass(frozen=True)
class AxiomSchema:
    name: str
    template: Formula


@dataclass(frozen=True)
class RuleSchema:
    name: str
    premises: tuple[Formula, ...]
    conclusion: Formula


_PHI = MVar("PHI")
_PSI = MVar("PSI")

MP = RuleSchema("mp", (_PHI, Imp(_PHI, _PSI)), _PSI)
ADJ = RuleSchema("adj", (_PHI, _PSI), Conj(_PHI, _PSI))


def u_rule(n: int) -> RuleSchema:
    """The unperforated rule for a fixed n >= 1: from n*f infer f."""
    if n < 1:
        raise ValueError("u_n requires n >= 1")
    return RuleSchema(f"u_{n}", (scalar(n, _PHI),), _PHI)


@dataclass(frozen=True)
class AxiomFamily:
    """An axiom-schema family indexed by a natural number."""

    name: str
    schemas: Callable[[int], tuple[AxiomSchema, ...]] = field(compare=False)


def _ax(name: str, text: str) -> AxiomSchema:
    return AxiomSchema(name, parse_template(text))


_MLL_CORE = (
    _ax("suffixing", "(PHI -> PSI) -> ((PSI -> CHI) -> (PHI -> CHI))"),
    _ax("uncurry", "(PHI -> (PSI -> CHI)) -> ((PHI * PSI) -> CHI)"),
    _ax("exchange", "(PHI -> (PSI -> CHI)) -> (PSI -> (PHI -> CHI))"),
    _ax("fusion_intro", "PHI -> (PSI -> (PHI * PSI))"),
    _ax("identity", "PHI -> PHI"),
    _ax("unit_intro", "PHI -> (1 -> PHI)"),
    _ax("double_negation", "~~PHI -> PHI"),
    _ax("unit", "1"),
)

_ADDITIVE = (
    _ax("conj_left1", "(PHI & PSI) -> PHI"),
    _ax("conj_left2", "(PHI & PSI) -> PSI"),
    _ax("disj_right1", "PHI -> (PHI | PSI)"),
    _ax("disj_right2", "PSI -> (PHI | PSI)"),
    _ax("conj_intro", "((PHI -> PSI) & (PHI -> CHI)) -> (PHI -> (PSI & CHI))"),
    _ax("disj_elim", "((PHI -> CHI) & (PSI -> CHI)) -> ((PHI | PSI) -> CHI)"),
)

_PRELINEARITY = _ax("prelinearity", "((PHI -> PSI) & 1) | ((PSI -> PHI) & 1)")
_EXCLUDED_MIDDLE = _ax("excluded_middle", "PHI | ~PHI")
_ZERO_ONE = _ax("zero_one", "0 -> 1")
_ONE_ZERO = _ax("one_zero", "1 -> 0")
_COLLAPSE = _ax("collapse", "(PHI -> PHI) -> 0")
_MINGLE_IN = _ax("mingle_in", "PHI -> (PHI + PHI)")
_MINGLE_OUT = _ax("mingle_out", "(PHI + PHI) -> PHI")

_BASE_AXIOMS: dict[str, tuple[AxiomSchema, ...]] = {
    "MLL": _MLL_CORE,
    "MLL0": _MLL_CORE + (_ZERO_ONE,),
    "MLLu": _MLL_CORE,
    "MLL0u": _MLL_CORE + (_ZERO_ONE,),
    "MALLm": _MLL_CORE + _ADDITIVE,
    "IULm": _MLL_CORE + _ADDITIVE + (_PRELINEARITY,),
    "IULstar": _MLL_CORE + _ADDITIVE + (_PRELINEARITY, _EXCLUDED_MIDDLE, _ZERO_ONE),
}

_BASE_RULES: dict[str, tuple[str, ...]] = {
    "MLL": ("mp",),
    "MLL0": ("mp",),
    "MLLu": ("mp", "u_n"),
    "MLL0u": ("mp", "u_n"),
    "MALLm": ("mp", "adj"),
    "IULm": ("mp", "adj"),
    "IULstar": ("mp", "adj"),
}


def _balance_schemas(n: int) -> tuple[AxiomSchema, ...]:
    return (
        AxiomSchema(f"balance_up_{n}", Imp(scalar(n, _PHI), power(_PHI, n))),
        AxiomSchema(f"balance_down_{n}", Imp(power(_PHI, n), scalar(n, _PHI))),
    )


_BALANCE = AxiomFamily("balance", _balance_schemas)


@dataclass(frozen=True)
class LogicSpec:
    """A named logic: base system, extra axiom schemas, capabilities."""

    name: str
    base: str
    extra_axioms: tuple[AxiomSchema, ...] = ()
    families: tuple[AxiomFamily, ...] = ()
    has_toa: bool = False
    proves_one_to_zero: bool = False
    oracle_kind: str = "hilbert"

    @property
    def rules(self) -> tuple[str, ...]:
        return _BASE_RULES[self.base]

    def axiom_schemas(self) -> tuple[AxiomSchema, ...]:
        return _BASE_AXIOMS[self.base] + self.extra_axioms

    def family_schemas(self, max_n: int) -> tuple[AxiomSchema, ...]:
        out: list[AxiomSchema] = []
        for fam in self.families:
            for n in range(max_n + 1):
                out.extend(fam.schemas(n))
        return tuple(out)

    def mult_axiom_schemas(self) -> tuple[AxiomSchema, ...]:
        """Axiom basis of the multiplicative fragment: the multiplicative
        core, 0 -> 1 when the logic proves it, and the multiplicative extra
        schemas (families excluded; fetch those via family_schemas)."""
        out = list(_MLL_CORE)
        names = {a.name for a in out}
        base_mult = [a for a in _BASE_AXIOMS[self.base] if is_multiplicative(a.template)]
        for a in base_mult + [
            a for a in self.extra_axioms if is_multiplicative(a.template)
        ]:
            if a.name not in names:
                out.append(a)
                names.add(a.name)
        return tuple(out)

    @property
    def mult_rules(self) -> tuple[str, ...]:
        if self.has_toa or self.base in ("MLLu", "MLL0u"):
            return ("mp", "u_n")
        return ("mp",)


def _make_registry() -> dict[str, LogicSpec]:
    presets = [
        LogicSpec("MLL", "MLL"),
        LogicSpec("MLL0", "MLL0"),
        LogicSpec("MLLu", "MLLu"),
        LogicSpec("MLL0u", "MLL0u"),
        LogicSpec("MALLm", "MALLm"),
        LogicSpec("IULm", "IULm"),
        LogicSpec("IULstar", "IULstar"),
        LogicSpec(
            "A",
            "IULm",
            extra_axioms=(_COLLAPSE, _ZERO_ONE),
            has_toa=True,
            proves_one_to_zero=True,
            oracle_kind="abelian",
        ),
        LogicSpec(
            "RMt",
            "IULm",
            extra_axioms=(_MINGLE_IN, _MINGLE_OUT),
            has_toa=True,
            proves_one_to_zero=False,
            oracle_kind="sugihara",
        ),
        LogicSpec(
            "IUMLm",
            "IULm",
            extra_axioms=(_MINGLE_IN, _MINGLE_OUT, _ONE_ZERO),
            has_toa=True,
            proves_one_to_zero=True,
            oracle_kind="sugihara",
        ),
        LogicSpec(
            "BIULm",
            "IULm",
            families=(_BALANCE,),
            has_toa=True,
            proves_one_to_zero=True,
            oracle_kind="hilbert",
        ),
    ]
    return {spec.name: spec for spec in presets}


_REGISTRY = _make_registry()

_KNOTTED_NAME = re.compile(r"knotted\((\d+),(\d+)((?:,\d+:\d+:\d+:\d+)+)\)$")


def knotted_logic(t: int, u: int, witnesses) -> LogicSpec:
    """Knotted extension: p^t -> p^(t+u) plus one scaling witness
    (r_i, k_i, m_i, s_i) per residue i < u, with r_i = s_i = i (mod u) and
    r_i, s_i >= t.  Registered with a theorem of alternatives; its
    side-condition check may still come back Unknown under the Hilbert
    oracle."""
    witnesses = tuple(tuple(int(v) for v in w) for w in witnesses)
    if t < 1 or u < 1 or len(witnesses) != u:
        raise ValueError("need t,u >= 1 and exactly u witnesses")
    axioms = [AxiomSchema(f"knot_{t}_{t + u}", Imp(power(_PHI, t), power(_PHI, t + u)))]
    for i, (r, k, m, s) in enumerate(witnesses):
        if min(r, k, m, s) < 1 or r < t or s < t or r % u != i % u or s % u != i % u:
            raise ValueError(f"witness {i} violates the knotted parameter conditions")
        axioms.append(
            AxiomSchema(
                f"scaling_{r}_{k}_{m}_{s}",
                Imp(power(scalar(r, _PHI), k), scalar(m, power(_PHI, s))),
            )
        )
    name = f"knotted({t},{u}," + ",".join(":".join(map(str, w)) for w in witnesses) + ")"
    return LogicSpec(
        name,
        "IULstar",
        extra_axioms=tuple(axioms),
        has_toa=True,
        oracle_kind="hilbert",
    )


def lookup_logic(name: str) -> LogicSpec:
    """Fetch a preset by name; knotted(t,u,r:k:m:s[,...]) is parsed."""
    if name in _REGISTRY:
        return _REGISTRY[name]
    m = _KNOTTED_NAME.match(name)
    if m:
        t, u = int(m.group(1)), int(m.group(2))
        witnesses = [w.split(":") for w in m.group(3).lstrip(",").split(",")]
        try:
            return knotted_logic(t, u, witnesses)
        except ValueError as exc:
            raise UnknownLogicError(f"{name}: {exc}") from exc
    raise UnknownLogicError(
        f"unknown logic {name!r}; available: {', '.join(sorted(_REGISTRY))}, "
        "knotted(t,u,r:k:m:s[,...])"
    )


def registered_logics() -> tuple[str, ...]:
    return tuple(sorted(_REGISTRY))


# --- schema instantiation and matching --------------------------------------


def instantiate(schema: AxiomSchema, args: dict[str, Formula]) -> Formula:
    """Uniformly replace every metavariable; all must be covered."""

    def walk(f: Formula) -> Formula:
        if isinstance(f, MVar):
            try:
                return args[f.name]
            except KeyError:
                raise MissingMetavariableError(
                    f"schema {schema.name}: metavariable {f.name} unbound"
                ) from None
        if isinstance(f, (Var, One, Zero)):
            return f
        return type(f)(walk(f.left), walk(f.right))

    return walk(schema.template)


def match_template(template: Formula, f: Formula) -> dict[str, Formula] | None:
    """One-way matching: an assignment with instantiate(template) == f."""
    assignment: dict[str, Formula] = {}

    def walk(t: Formula, g: Formula) -> bool:
        if isinstance(t, MVar):
            bound = assignment.get(t.name)
            if bound is None:
                assignment[t.name] = g
                return True
            return bound == g
        if type(t) is not type(g):
            return False
        if isinstance(t, Var):
            return t.name == g.name
        if isinstance(t, (One, Zero)):
            return True
        return walk(t.left, g.left) and walk(t.right, g.right)

    return assignment if walk(template, f) else None


# --- the scaling side condition ----------------------------------------------


@dataclass(frozen=True)
class ToAConditionEntry:
    n: int
    k: int
    m: int
    status: str  # proved / refuted / unknown


@dataclass(frozen=True)
class ToAConditionReport:
    logic: str
    entries: tuple[ToAConditionEntry, ...]

    @property
    def all_proved(self) -> bool:
        return all(e.status == "proved" for e in self.entries)


def check_toa_condition(
    logic: LogicSpec,
    n_max: int,
    witnesses: dict[int, tuple[int, int]] | None = None,
    budget=None,
) -> ToAConditionReport:
    """For each n <= n_max check derivability of (n*p)^k -> m*(p^n) in the
    logic's multiplicative fragment, with candidate (k, m) per n (default
    (1, 1)).  Budget exhaustion yields Unknown entries, never a failure.
    """
    from . import oracles  # deferred: oracles depends on this module

    if budget is None:
        budget = oracles.HilbertBudget(
            family_bound=max(oracles.HilbertBudget().family_bound, n_max)
        )
    p = Var("p")
    entries = []
    for n in range(1, n_max + 1):
        k, m = (witnesses or {}).get(n, (1, 1))
        if m < 1 or k < 0:
            raise ValueError(f"witness for n={n} needs m >= 1 and k >= 0")
        target = Imp(power(scalar(n, p), k), scalar(m, power(p, n)))
        verdict = oracles.decide(logic, [], target, budget=budget)
        entries.append(ToAConditionEntry(n, k, m, verdict.status))
    return ToAConditionReport(logic.name, tuple(entries))
