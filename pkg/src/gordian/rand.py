"""Seeded random formula generators for property tests and sampling."""

from __future__ import annotations

from random import Random

from .syntax import ONE, ZERO, Conj, Disj, Formula, Fuse, Imp, Var


def random_mult_formula(
    rng: Random,
    variables: list[str],
    max_depth: int,
    constant_weight: float = 0.2,
) -> Formula:
    """Random multiplicative formula (->, *, 1, 0 and variables only)."""
    if max_depth == 0 or rng.random() < 0.3:
        if rng.random() < constant_weight:
            return rng.choice([ONE, ZERO])
        return Var(rng.choice(variables))
    kind = rng.choice([Imp, Fuse])
    return kind(
        random_mult_formula(rng, variables, max_depth - 1, constant_weight),
        random_mult_formula(rng, variables, max_depth - 1, constant_weight),
    )


def random_formula(
    rng: Random,
    variables: list[str],
    max_depth: int,
    lattice_weight: float = 0.35,
) -> Formula:
    """Random formula over the full language."""
    if max_depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.2:
            return rng.choice([ONE, ZERO])
        return Var(rng.choice(variables))
    if rng.random() < lattice_weight:
        kind = rng.choice([Conj, Disj])
    else:
        kind = rng.choice([Imp, Fuse])
    return kind(
        random_formula(rng, variables, max_depth - 1, lattice_weight),
        random_formula(rng, variables, max_depth - 1, lattice_weight),
    )
