"""Finite chain algebras and brute-force evaluation.

These totally ordered algebras are the independent semantic layer every
other component is tested against.  A :class:`ChainAlgebra` carries its
fusion rule; the residual implication is derived from fusion by exhaustive
residuation, so a wrong fusion table fails the construction-time law check
rather than silently mis-evaluating.

Sugihara chains live on signed integers: fusion returns the argument of
strictly larger absolute value and breaks ties with the meet.  Odd chains
contain the self-inverting element 0, which is both the monoid unit and
the interpretation of the constant 0; even chains interpret the unit as 1
and the constant 0 as -1.

The integers themselves (with fusion as addition and both constants as 0)
serve as the reference model for the Abelian reading; they are exposed here
through :func:`eval_abelian` and the bounded grid search
:func:`abelian_grid_refute`.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import MissingVariableError, NotMultiplicativeError
from .linalg import translate_abelian
from .syntax import (
    Conj,
    Disj,
    Formula,
    Fuse,
    Imp,
    One,
    Var,
    Zero,
    is_multiplicative,
    variables_of,
)

LAW_CHECK_MAX_SIZE = 16


class ChainAlgebra:
    """Finite totally ordered involutive commutative residuated lattice.

    Elements are integers ordered as usual.  ``fuse_rule`` gives the monoid
    operation; implication is its residual, computed exhaustively at
    construction.  For carriers of size <= 16 the algebra laws (involution,
    residuation, commutative monoid, order compatibility) are verified
    exhaustively and a violation raises ``ValueError``.
    """

    __slots__ = ("name", "carrier", "unit", "zero", "_fuse", "_imp")

    def __init__(self, name: str, carrier, unit: int, zero: int, fuse_rule):
        self.name = name
        self.carrier = tuple(sorted(carrier))
        self.unit = unit
        self.zero = zero
        if unit not in self.carrier or zero not in self.carrier:
            raise ValueError("unit and zero must lie in the carrier")
        self._fuse = {
            (a, b): fuse_rule(a, b)
            for a in self.carrier
            for b in self.carrier
        }
        self._imp = {}
        for a in self.carrier:
            for c in self.carrier:
                residual = [b for b in self.carrier if self._fuse[(a, b)] <= c]
                if not residual:
                    raise ValueError(f"{name}: no residual for {a} -> {c}")
                self._imp[(a, c)] = max(residual)
        if len(self.carrier) <= LAW_CHECK_MAX_SIZE:
            self.check_laws()

    def fuse(self, a: int, b: int) -> int:
        return self._fuse[(a, b)]

    def imp(self, a: int, b: int) -> int:
        return self._imp[(a, b)]

    def neg(self, a: int) -> int:
        return self._imp[(a, self.zero)]

    def designated(self, a: int) -> bool:
        return a >= self.unit

    def check_laws(self) -> None:
        """Exhaustively verify involution, residuation, the commutative
        monoid laws and order compatibility; raises ValueError on failure."""
        els = self.carrier
        for a in els:
            if self.fuse(self.unit, a) != a or self.fuse(a, self.unit) != a:
                raise ValueError(f"{self.name}: {self.unit} is not a unit at {a}")
            if self.neg(self.neg(a)) != a:
                raise ValueError(f"{self.name}: involution fails at {a}")
        for a, b in itertools.product(els, repeat=2):
            if self.fuse(a, b) != self.fuse(b, a):
                raise ValueError(f"{self.name}: fusion not commutative at {a},{b}")
        for a, b, c in itertools.product(els, repeat=3):
            if self.fuse(self.fuse(a, b), c) != self.fuse(a, self.fuse(b, c)):
                raise ValueError(f"{self.name}: fusion not associative")
            if (self.fuse(a, b) <= c) != (b <= self.imp(a, c)):
                raise ValueError(f"{self.name}: residuation fails at {a},{b},{c}")
            if a <= b and self.fuse(a, c) > self.fuse(b, c):
                raise ValueError(f"{self.name}: fusion not order-preserving")

    def __repr__(self) -> str:
        return f"ChainAlgebra({self.name}, size={len(self.carrier)})"


def _sugihara_fuse(a: int, b: int) -> int:
    if abs(a) > abs(b):
        return a
    if abs(b) > abs(a):
        return b
    return min(a, b)


@lru_cache(maxsize=None)
def sugihara_chain(k: int, odd: bool) -> ChainAlgebra:
    """The Sugihara chain of half-width ``k``.

    Odd: carrier {-k,...,0,...,k}, unit = constant 0 = the element 0.
    Even: carrier {-k,...,-1,1,...,k}, unit 1, constant 0 = -1.
    """
    if k < 1:
        raise ValueError("half-width must be at least 1")
    if odd:
        carrier = range(-k, k + 1)
        return ChainAlgebra(f"sugihara_odd_{k}", carrier, 0, 0, _sugihara_fuse)
    carrier = [v for v in range(-k, k + 1) if v != 0]
    return ChainAlgebra(f"sugihara_even_{k}", carrier, 1, -1, _sugihara_fuse)


def chain_from_name(name: str) -> ChainAlgebra:
    for parity in ("odd", "even"):
        prefix = f"sugihara_{parity}_"
        if name.startswith(prefix):
            return sugihara_chain(int(name[len(prefix):]), odd=parity == "odd")
    raise ValueError(f"unknown chain {name!r}")


def eval_formula(chain: ChainAlgebra, valuation, f: Formula) -> int:
    """Homomorphic evaluation; designated iff ``chain.unit <= value``."""
    if isinstance(f, Var):
        try:
            return valuation[f.name]
        except KeyError:
            raise MissingVariableError(f"valuation missing {f.name!r}") from None
    if isinstance(f, One):
        return chain.unit
    if isinstance(f, Zero):
        return chain.zero
    left = eval_formula(chain, valuation, f.left)
    right = eval_formula(chain, valuation, f.right)
    if isinstance(f, Conj):
        return min(left, right)
    if isinstance(f, Disj):
        return max(left, right)
    if isinstance(f, Fuse):
        return chain.fuse(left, right)
    if isinstance(f, Imp):
        return chain.imp(left, right)
    raise TypeError(f"cannot evaluate {f!r}")


def _postorder(f: Formula, seen: dict[Formula, None]) -> None:
    if f in seen:
        return
    if isinstance(f, (Conj, Disj, Fuse, Imp)):
        _postorder(f.left, seen)
        _postorder(f.right, seen)
    seen[f] = None


def eval_vector(chain: ChainAlgebra, f: Formula, var_order, grid) -> list[int]:
    """Values of ``f`` at every valuation in ``grid`` (tuples over
    ``var_order``), computed bottom-up once per distinct subformula."""
    seen: dict[Formula, None] = {}
    _postorder(f, seen)
    columns: dict[Formula, list[int]] = {}
    index = {v: i for i, v in enumerate(var_order)}
    n = len(grid)
    fuse, imp = chain._fuse, chain._imp
    for node in seen:
        if isinstance(node, Var):
            if node.name not in index:
                raise MissingVariableError(f"valuation missing {node.name!r}")
            i = index[node.name]
            columns[node] = [point[i] for point in grid]
        elif isinstance(node, One):
            columns[node] = [chain.unit] * n
        elif isinstance(node, Zero):
            columns[node] = [chain.zero] * n
        else:
            left, right = columns[node.left], columns[node.right]
            if isinstance(node, Conj):
                columns[node] = [min(a, b) for a, b in zip(left, right)]
            elif isinstance(node, Disj):
                columns[node] = [max(a, b) for a, b in zip(left, right)]
            elif isinstance(node, Fuse):
                columns[node] = [fuse[(a, b)] for a, b in zip(left, right)]
            else:
                columns[node] = [imp[(a, b)] for a, b in zip(left, right)]
    return columns[f]


def brute_force_consequence(chains, sigma, f: Formula):
    """Exhaustively check the consequence over every valuation into each
    chain.  Returns ``None`` if it holds, else ``(chain, valuation)``."""
    sigma = list(sigma)
    var_order = sorted(variables_of(sigma + [f]))
    for chain in chains:
        grid = list(itertools.product(chain.carrier, repeat=len(var_order)))
        hyp_vectors = [eval_vector(chain, h, var_order, grid) for h in sigma]
        goal_vector = eval_vector(chain, f, var_order, grid)
        unit = chain.unit
        for idx, point in enumerate(grid):
            if goal_vector[idx] >= unit:
                continue
            if all(vec[idx] >= unit for vec in hyp_vectors):
                return chain, dict(zip(var_order, point))
    return None


# --- the Abelian reference model ---------------------------------------------


def eval_abelian(f: Formula, valuation) -> int:
    """Evaluate over the integers: fusion is addition, implication is
    right-minus-left, both constants are 0; designated iff >= 0."""
    if isinstance(f, Var):
        try:
            return valuation[f.name]
        except KeyError:
            raise MissingVariableError(f"valuation missing {f.name!r}") from None
    if isinstance(f, (One, Zero)):
        return 0
    left = eval_abelian(f.left, valuation)
    right = eval_abelian(f.right, valuation)
    if isinstance(f, Conj):
        return min(left, right)
    if isinstance(f, Disj):
        return max(left, right)
    if isinstance(f, Fuse):
        return left + right
    if isinstance(f, Imp):
        return right - left
    raise TypeError(f"cannot evaluate {f!r}")


def abelian_grid_refute(sigma, f: Formula, bound: int):
    """Search integer valuations in ``[-bound, bound]`` for one designating
    every hypothesis while refuting ``f``.  Refutation-sound only: ``None``
    proves nothing."""
    sigma = list(sigma)
    for g in sigma + [f]:
        if not is_multiplicative(g):
            raise NotMultiplicativeError(f"not multiplicative: {g}")
    hyp_forms = [translate_abelian(h) for h in sigma]
    goal_form = translate_abelian(f)
    var_order = sorted(variables_of(sigma + [f]))
    values = range(-bound, bound + 1)
    for point in itertools.product(values, repeat=len(var_order)):
        valuation = dict(zip(var_order, point))
        if goal_form.evaluate(valuation) < 0 and all(
            h.evaluate(valuation) >= 0 for h in hyp_forms
        ):
            return valuation
    return None
