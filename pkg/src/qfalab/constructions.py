"""Machine builders: the measure-once to measure-many embedding, constant
probability gadgets, and reduction pairs that tie equivalence questions to
emptiness/universality questions.

Probability levels are accepted as exact rationals (``Fraction``, ``"3/4"``,
``"0.75"``, ints, floats) and converted to double precision exactly once;
square roots of the converted values then feed the amplitude vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InputError, ParameterError, ValidationError
from .machines import (
    Alphabet,
    DEFAULT_TOL,
    LEFT_MARKER,
    MMQFA,
    MOQFA,
    RIGHT_MARKER,
    validate,
)

RationalLike = Fraction | int | float | str


def to_fraction(value: RationalLike, name: str = "value") -> Fraction:
    """Parse an exact rational from a Fraction, number, or text like '3/4'."""
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParameterError(f"cannot read {name} {value!r} as a rational number") from exc


@dataclass(frozen=True)
class GadgetSpec:
    """Parameters of a constant-probability gadget.

    ``level`` is the probability the gadget sits at (or, with ``drop``, the
    level it sits strictly below); constraints are 0 < level <= 1 and, when
    present, 0 < drop < level.
    """

    alphabet: Alphabet
    level: Fraction
    drop: Fraction | None = None

    def __post_init__(self):
        object.__setattr__(self, "level", to_fraction(self.level, "level"))
        if not 0 < self.level <= 1:
            raise ParameterError(f"level must be in (0, 1], got {self.level}")
        if self.drop is not None:
            object.__setattr__(self, "drop", to_fraction(self.drop, "drop"))
            if not 0 < self.drop < self.level:
                raise ParameterError(
                    f"drop must satisfy 0 < drop < level, got drop={self.drop} "
                    f"level={self.level}"
                )


def constant_moqfa(alphabet: Alphabet, level: RationalLike) -> MOQFA:
    """Two-state machine accepting every word with probability ``level``.

    All unitaries are the identity, so the initial amplitude split
    (sqrt(level), sqrt(1 - level)) is never disturbed; at cutpoint ``level``
    the nonstrict language is everything.
    """
    spec = GadgetSpec(alphabet, to_fraction(level, "level"))
    lam = float(spec.level)
    initial = [math.sqrt(lam), math.sqrt(1.0 - lam)]
    eye = np.eye(2, dtype=np.complex128)
    return MOQFA(
        alphabet=alphabet,
        initial=initial,
        unitaries={tok: eye for tok in alphabet.tokens},
        accepting=frozenset({0}),
    )


def below_cutpoint_moqfa(
    alphabet: Alphabet, level: RationalLike, drop: RationalLike
) -> MOQFA:
    """Three-state machine stuck at probability ``level - drop`` on every word.

    Since level - drop < level, no word is ever a strict member at cutpoint
    ``level``: the strict cutpoint language is empty by construction.
    """
    spec = GadgetSpec(alphabet, to_fraction(level, "level"), to_fraction(drop, "drop"))
    below = float(spec.level - spec.drop)
    initial = [math.sqrt(below), math.sqrt(1.0 - below), 0.0]
    eye = np.eye(3, dtype=np.complex128)
    return MOQFA(
        alphabet=alphabet,
        initial=initial,
        unitaries={tok: eye for tok in alphabet.tokens},
        accepting=frozenset({0}),
    )


def embed_moqfa_to_mmqfa(machine: MOQFA, tol: float = DEFAULT_TOL) -> MMQFA:
    """Rebuild a measure-once machine as a measure-many one with the same
    word function.

    The state space triples into three blocks.  Every alphabet unitary acts
    only on the middle block, where the original machine evolves; both
    end-markers swap the first two blocks.  The left marker moves the
    initial vector out of the measured first block before any input symbol
    is read, so every measurement before the right marker sees zero accept
    and zero reject mass; the right marker swaps the evolved vector back,
    where the accepting states of the original machine (block one) and
    everything else outside the go block (rest of block one, all of block
    three) are measured.  The accept mass of that final step is exactly the
    measure-once acceptance probability.
    """
    violations = validate(machine, tol)
    if violations:
        raise ValidationError(violations)
    n = machine.dim
    eye = np.eye(n, dtype=np.complex128)

    def block_diag(middle: np.ndarray) -> np.ndarray:
        out = np.zeros((3 * n, 3 * n), dtype=np.complex128)
        out[:n, :n] = eye
        out[n : 2 * n, n : 2 * n] = middle
        out[2 * n :, 2 * n :] = eye
        return out

    swap = np.zeros((3 * n, 3 * n), dtype=np.complex128)
    swap[:n, n : 2 * n] = eye
    swap[n : 2 * n, :n] = eye
    swap[2 * n :, 2 * n :] = eye

    unitaries = {tok: block_diag(machine.unitaries[tok]) for tok in machine.alphabet}
    unitaries[LEFT_MARKER] = swap
    unitaries[RIGHT_MARKER] = swap

    initial = np.zeros(3 * n, dtype=np.complex128)
    initial[:n] = machine.initial

    accepting = frozenset(machine.accepting)
    rejecting = frozenset(i for i in range(n) if i not in machine.accepting) | frozenset(
        range(2 * n, 3 * n)
    )
    return MMQFA(
        alphabet=machine.alphabet,
        initial=initial,
        unitaries=unitaries,
        accepting=accepting,
        rejecting=rejecting,
    )


def full_nonstrict_mmqfa(alphabet: Alphabet, level: RationalLike) -> MMQFA:
    """Measure-many machine accepting every word with probability ``level``
    exactly, so its nonstrict cutpoint language at ``level`` is everything."""
    return embed_moqfa_to_mmqfa(constant_moqfa(alphabet, level))


def empty_strict_mmqfa(
    alphabet: Alphabet, level: RationalLike, drop: RationalLike
) -> MMQFA:
    """Measure-many machine whose strict cutpoint language at ``level`` is
    empty: every word sits at probability ``level - drop``."""
    return embed_moqfa_to_mmqfa(below_cutpoint_moqfa(alphabet, level, drop))


@dataclass(frozen=True)
class ReductionPair:
    """Two machines whose bounded equivalence answers an emptiness or
    universality question about the left one."""

    left: MMQFA
    right: MMQFA
    cutpoint: float
    mode: str
    claim: str

    def __post_init__(self):
        if self.left.alphabet.tokens != self.right.alphabet.tokens:
            raise InputError("reduction pair machines must share an alphabet")
        if self.mode not in ("strict", "nonstrict"):
            raise ParameterError(f"mode must be 'strict' or 'nonstrict', got {self.mode!r}")
        if not 0.0 < self.cutpoint <= 1.0:
            raise ParameterError(f"cutpoint must be in (0, 1], got {self.cutpoint}")


def nonstrict_equivalence_reduction(
    machine: MMQFA, level: RationalLike, tol: float = DEFAULT_TOL
) -> ReductionPair:
    """Pair ``machine`` with a gadget that accepts every word at exactly the
    cutpoint.

    The gadget's nonstrict language is all words, so the pair is
    bounded-equivalent up to length L exactly when every word up to L is a
    nonstrict member for ``machine``: nonstrict equivalence subsumes
    nonstrict universality.
    """
    violations = validate(machine, tol)
    if violations:
        raise ValidationError(violations)
    lam = to_fraction(level, "level")
    right = full_nonstrict_mmqfa(machine.alphabet, lam)
    claim = (
        f"equivalence-to-universality reduction: the right machine accepts every "
        f"word with probability exactly {lam}, so the nonstrict cutpoint languages "
        f"at {lam} coincide iff every word is a nonstrict member for the left machine"
    )
    return ReductionPair(machine, right, float(lam), "nonstrict", claim)


def strict_equivalence_reduction(
    machine: MMQFA, level: RationalLike, drop: RationalLike, tol: float = DEFAULT_TOL
) -> ReductionPair:
    """Pair ``machine`` with a gadget whose strict language at the cutpoint
    is empty.

    The pair is bounded-equivalent up to length L exactly when ``machine``
    has no strict witness up to L: strict equivalence subsumes strict
    emptiness.
    """
    violations = validate(machine, tol)
    if violations:
        raise ValidationError(violations)
    lam = to_fraction(level, "level")
    c = to_fraction(drop, "drop")
    right = empty_strict_mmqfa(machine.alphabet, lam, c)
    claim = (
        f"equivalence-to-emptiness reduction: the right machine sits at "
        f"probability {lam - c} on every word, so its strict cutpoint language at "
        f"{lam} is empty and the pair is equivalent iff the left machine has no "
        f"strict witness"
    )
    return ReductionPair(machine, right, float(lam), "strict", claim)
