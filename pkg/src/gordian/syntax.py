"""Formula syntax: abstract trees, parsing, printing and substitution.

The tree has exactly six node kinds: variables, the constants 1 and 0, the
lattice connectives ``&`` and ``|``, fusion ``*`` and implication ``->``.
Negation, sum, scalar multiples and powers are input notation only; they
elaborate at construction time via

    ~f        = f -> 0
    f + g     = ~f -> g
    0*f = 0,  1*f = f,  (n+1)*f = n*f + f
    f^0 = 1,  f^1 = f,  f^(n+1) = f^n * f

so parsed trees never contain a derived connective.

Grammar: variables ``[a-z][a-zA-Z0-9_]*``, constants ``1`` and ``0``,
operators ``~`` (prefix), ``^n`` (postfix, integer n), ``*``, ``+``, ``->``
(right-associative), ``&``, ``|``.  A bare integer literal directly left of
``*`` is a scalar multiple and consumes the next factor.  Precedence, high
to low: ``~``/``^``  >  ``*``  >  ``+``  >  ``->``  >  ``&``  >  ``|``;
parentheses override.  ``^`` binds tighter than ``~``, so ``~p^2`` is
``~(p^2)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, reduce

from .errors import ArityError, FormulaSyntaxError

MAX_REPEAT = 1 << 16


class Formula:
    """Base class for formula nodes.  Instances are immutable and hashable."""

    __slots__ = ()

    def __str__(self) -> str:
        return render(self)


@dataclass(frozen=True, slots=True)
class Var(Formula):
    name: str


@dataclass(frozen=True, slots=True)
class One(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Zero(Formula):
    pass


@dataclass(frozen=True, slots=True)
class Conj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Disj(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Fuse(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class MVar(Formula):
    """Schema metavariable.  Appears only in axiom/rule templates, never in
    parsed object formulas; the namespaces are disjoint (metavariable names
    start with an uppercase letter, object variables with a lowercase one).
    """

    name: str


ONE = One()
ZERO = Zero()


def neg(f: Formula) -> Formula:
    return Imp(f, ZERO)


def plus(f: Formula, g: Formula) -> Formula:
    return Imp(neg(f), g)


def scalar(n: int, f: Formula) -> Formula:
    """n-fold sum n*f, left-nested: 3*f = (f + f) + f."""
    if n < 0 or n > MAX_REPEAT:
        raise ArityError(f"scalar multiple {n} out of range 0..{MAX_REPEAT}")
    if n == 0:
        return ZERO
    acc = f
    for _ in range(n - 1):
        acc = plus(acc, f)
    return acc


def power(f: Formula, n: int) -> Formula:
    """n-fold fusion f^n, left-nested: f^3 = (f * f) * f."""
    if n < 0 or n > MAX_REPEAT:
        raise ArityError(f"power {n} out of range 0..{MAX_REPEAT}")
    if n == 0:
        return ONE
    acc = f
    for _ in range(n - 1):
        acc = Fuse(acc, f)
    return acc


def conj_all(fs) -> Formula:
    return reduce(Conj, fs)


def disj_all(fs) -> Formula:
    return reduce(Disj, fs)


@lru_cache(maxsize=None)
def variables(f: Formula) -> frozenset[str]:
    """Object variables occurring in ``f`` (metavariables excluded)."""
    if isinstance(f, Var):
        return frozenset((f.name,))
    if isinstance(f, (One, Zero, MVar)):
        return frozenset()
    return variables(f.left) | variables(f.right)


def variables_of(fs) -> frozenset[str]:
    out: frozenset[str] = frozenset()
    for f in fs:
        out |= variables(f)
    return out


@lru_cache(maxsize=None)
def metavariables(f: Formula) -> frozenset[str]:
    if isinstance(f, MVar):
        return frozenset((f.name,))
    if isinstance(f, (Var, One, Zero)):
        return frozenset()
    return metavariables(f.left) | metavariables(f.right)


@lru_cache(maxsize=None)
def is_multiplicative(f: Formula) -> bool:
    """True iff no lattice connective (&, |) occurs in ``f``."""
    if isinstance(f, (Var, One, Zero, MVar)):
        return True
    if isinstance(f, (Conj, Disj)):
        return False
    return is_multiplicative(f.left) and is_multiplicative(f.right)


@lru_cache(maxsize=None)
def size(f: Formula) -> int:
    if isinstance(f, (Var, One, Zero, MVar)):
        return 1
    return 1 + size(f.left) + size(f.right)


def substitute(f: Formula, mapping: dict[str, Formula]) -> Formula:
    """Homomorphic image of ``f``; variables outside ``mapping`` are fixed."""
    if isinstance(f, Var):
        return mapping.get(f.name, f)
    if isinstance(f, (One, Zero, MVar)):
        return f
    kind = type(f)
    return kind(substitute(f.left, mapping), substitute(f.right, mapping))


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<arrow>->)"
    r"|(?P<var>[a-z][a-zA-Z0-9_]*)"
    r"|(?P<mvar>[A-Z][a-zA-Z0-9_]*)"
    r"|(?P<int>\d+)"
    r"|(?P<op>[~*+&|^()])"
)


def _tokenize(text: str, allow_meta: bool) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            if kind == "mvar" and not allow_meta:
                raise FormulaSyntaxError(
                    f"uppercase name {m.group()!r} is reserved for metavariables", pos
                )
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.i = 0

    def peek(self, ahead: int = 0) -> tuple[str, str, int]:
        return self.tokens[min(self.i + ahead, len(self.tokens) - 1)]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, text: str) -> None:
        kind, value, pos = self.peek()
        if kind == "op" and value == text:
            self.take()
            return
        raise FormulaSyntaxError(f"expected {text!r}", pos)

    def at_op(self, text: str) -> bool:
        kind, value, _ = self.peek()
        return (kind == "op" and value == text) or (kind == "arrow" and text == "->")

    # precedence levels, low to high: | & -> + * unary

    def parse_formula(self) -> Formula:
        f = self.parse_disj()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", pos)
        return f

    def parse_disj(self) -> Formula:
        f = self.parse_conj()
        while self.at_op("|"):
            self.take()
            f = Disj(f, self.parse_conj())
        return f

    def parse_conj(self) -> Formula:
        f = self.parse_imp()
        while self.at_op("&"):
            self.take()
            f = Conj(f, self.parse_imp())
        return f

    def parse_imp(self) -> Formula:
        f = self.parse_plus()
        if self.peek()[0] == "arrow":
            self.take()
            return Imp(f, self.parse_imp())
        return f

    def parse_plus(self) -> Formula:
        f = self.parse_fuse()
        while self.at_op("+"):
            self.take()
            f = plus(f, self.parse_fuse())
        return f

    def parse_fuse(self) -> Formula:
        f = self.parse_factor()
        while self.at_op("*"):
            self.take()
            f = Fuse(f, self.parse_factor())
        return f

    def parse_factor(self) -> Formula:
        # A bare integer directly left of '*' is a scalar multiple of the
        # next factor; elsewhere integers are the constants 0 and 1.
        kind, value, pos = self.peek()
        if kind == "int" and self.peek(1)[:2] == ("op", "*"):
            self.take()
            self.take()
            n = int(value)
            if n > MAX_REPEAT:
                raise ArityError(f"scalar multiple {n} out of range 0..{MAX_REPEAT}")
            return scalar(n, self.parse_factor())
        return self.parse_unary()

    def parse_unary(self) -> Formula:
        if self.at_op("~"):
            self.take()
            return neg(self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> Formula:
        f = self.parse_atom()
        while self.at_op("^"):
            self.take()
            kind, value, pos = self.peek()
            if kind != "int":
                raise FormulaSyntaxError("expected integer exponent after '^'", pos)
            self.take()
            n = int(value)
            if n > MAX_REPEAT:
                raise ArityError(f"power {n} out of range 0..{MAX_REPEAT}")
            f = power(f, n)
        return f

    def parse_atom(self) -> Formula:
        kind, value, pos = self.take()
        if kind == "var":
            return Var(value)
        if kind == "mvar":
            return MVar(value)
        if kind == "int":
            if value == "1":
                return ONE
            if value == "0":
                return ZERO
            raise FormulaSyntaxError(f"bare integer {value!r} is not a formula", pos)
        if kind == "op" and value == "(":
            f = self.parse_disj()
            self.expect_op(")")
            return f
        raise FormulaSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text: str) -> Formula:
    """Parse formula text; derived connectives elaborate away."""
    return _Parser(_tokenize(text, allow_meta=False)).parse_formula()


def parse_template(text: str) -> Formula:
    """Like :func:`parse` but uppercase names become metavariables."""
    return _Parser(_tokenize(text, allow_meta=True)).parse_formula()


# --- printing --------------------------------------------------------------

_PREC_DISJ, _PREC_CONJ, _PREC_IMP, _PREC_PLUS, _PREC_FUSE, _PREC_UNARY = range(6)


def render(f: Formula) -> str:
    """Minimal-parenthesis text; ``parse(render(f))`` equals ``f``.

    Negation and sum sugar is restored (``f -> 0`` prints as ``~f``,
    ``~f -> g`` as ``f + g``); scalar multiples and powers are not.
    Constants appearing as fusion operands are parenthesized so that the
    output never contains a digit directly left of ``*``, which would
    re-parse as a scalar multiple.
    """
    return _render(f, 0, False)


def _render(f: Formula, min_prec: int, fuse_operand: bool) -> str:
    if isinstance(f, (Var, MVar)):
        return f.name
    if isinstance(f, One):
        return "(1)" if fuse_operand else "1"
    if isinstance(f, Zero):
        return "(0)" if fuse_operand else "0"
    if isinstance(f, Imp):
        if isinstance(f.right, Zero):
            text = "~" + _render(f.left, _PREC_UNARY, False)
            prec = _PREC_UNARY
        elif isinstance(f.left, Imp) and isinstance(f.left.right, Zero):
            text = (
                _render(f.left.left, _PREC_PLUS, False)
                + " + "
                + _render(f.right, _PREC_PLUS + 1, False)
            )
            prec = _PREC_PLUS
        else:
            text = (
                _render(f.left, _PREC_IMP + 1, False)
                + " -> "
                + _render(f.right, _PREC_IMP, False)
            )
            prec = _PREC_IMP
    elif isinstance(f, Fuse):
        text = (
            _render(f.left, _PREC_FUSE, True)
            + " * "
            + _render(f.right, _PREC_FUSE + 1, True)
        )
        prec = _PREC_FUSE
    elif isinstance(f, Conj):
        text = (
            _render(f.left, _PREC_CONJ, False)
            + " & "
            + _render(f.right, _PREC_CONJ + 1, False)
        )
        prec = _PREC_CONJ
    elif isinstance(f, Disj):
        text = (
            _render(f.left, _PREC_DISJ, False)
            + " | "
            + _render(f.right, _PREC_DISJ + 1, False)
        )
        prec = _PREC_DISJ
    else:  # pragma: no cover
        raise TypeError(f"not a formula: {f!r}")
    if prec < min_prec:
        return "(" + text + ")"
    return text
