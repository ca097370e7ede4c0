"""Acceptance-probability evaluation for all three machine kinds.

A word is a tuple of alphabet tokens; the empty tuple is the empty word.
Evaluation is pure and deterministic: the same machine and word always
produce bit-identical results.

Product convention for PFAs: the state vector streams from the final
indicator, so the matrix for the *last* symbol read ends up outermost and
the returned value is ``initial . (M_wr ... M_w1 . final)``.  Per word this
is the reversed-product convention; over all words the recognized language
is the reversal of what the outermost-first convention would give, so
emptiness and universality questions are unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import AlphabetError
from .machines import LEFT_MARKER, MMQFA, MOQFA, Machine, PFA, RIGHT_MARKER

Word = tuple[str, ...]


def as_word(tokens: Iterable[str]) -> Word:
    """Coerce to a token tuple.  A plain string becomes its characters."""
    return tuple(tokens)


def _check_word(machine: Machine, word: Word) -> None:
    for tok in word:
        if tok not in machine.alphabet:
            raise AlphabetError(f"token {tok!r} is not in the machine's alphabet")


def _clamp01(x: float) -> float:
    return 0.0 if x < 0.0 else (1.0 if x > 1.0 else x)


@dataclass(frozen=True)
class TraceStep:
    """One measured step of a measure-many run."""

    symbol: str
    accept_increment: float
    reject_increment: float
    go_norm_sq: float


@dataclass(frozen=True)
class RunTrace:
    """Stepwise record of a measure-many run.

    ``total_accept`` is the raw (unclamped) acceptance probability; it
    determines the machine's language.  Reject and go masses are tracked as
    well so that conservation is checkable: after every step the cumulative
    accept + cumulative reject + remaining go mass equals 1 up to floating
    point error.
    """

    steps: tuple[TraceStep, ...]
    total_accept: float
    total_reject: float
    residual_go: float


def pfa_accept_prob(machine: PFA, word: Iterable[str]) -> float:
    """Acceptance probability of a PFA, clamped to [0, 1]."""
    word = as_word(word)
    _check_word(machine, word)
    v = machine.final
    for tok in word:
        v = machine.transitions[tok] @ v
    return _clamp01(float(machine.initial @ v))


def moqfa_accept_prob(machine: MOQFA, word: Iterable[str]) -> float:
    """Acceptance probability of a measure-once machine, clamped to [0, 1].

    The word's unitaries are applied in reading order to the initial vector
    and the squared norm of the accepting components is returned.  For the
    empty word no unitary is applied at all.
    """
    word = as_word(word)
    _check_word(machine, word)
    v = machine.initial
    for tok in word:
        v = machine.unitaries[tok] @ v
    if not machine.accepting:
        return 0.0
    idx = np.fromiter(sorted(machine.accepting), dtype=np.intp)
    return _clamp01(float(np.sum(np.abs(v[idx]) ** 2)))


def mmqfa_run(machine: MMQFA, word: Iterable[str]) -> RunTrace:
    """Run a measure-many machine over ``#left word #right``, step by step.

    The evaluation streams a single state vector: after each symbol's
    unitary, the accept and reject masses are measured off and the vector
    is projected onto the go states.  The accumulated accept increments
    equal the sum, over all halting points, of the squared accepting
    amplitude at that point; tests pin this equality against a direct
    term-by-term evaluation.
    """
    word = as_word(word)
    _check_word(machine, word)
    n = machine.dim
    acc = np.fromiter(sorted(machine.accepting), dtype=np.intp)
    rej = np.fromiter(sorted(machine.rejecting), dtype=np.intp)
    go_mask = np.ones(n, dtype=bool)
    go_mask[acc] = False
    go_mask[rej] = False

    v = machine.initial
    steps = []
    total_accept = 0.0
    total_reject = 0.0
    go_norm = 0.0
    for sym in (LEFT_MARKER, *word, RIGHT_MARKER):
        u = machine.unitaries[sym] @ v
        a_inc = float(np.sum(np.abs(u[acc]) ** 2))
        r_inc = float(np.sum(np.abs(u[rej]) ** 2))
        v = np.where(go_mask, u, 0.0)
        go_norm = float(np.real(np.vdot(v, v)))
        total_accept += a_inc
        total_reject += r_inc
        steps.append(TraceStep(sym, a_inc, r_inc, go_norm))
    return RunTrace(tuple(steps), total_accept, total_reject, go_norm)


def mmqfa_accept_prob(machine: MMQFA, word: Iterable[str]) -> float:
    """Total acceptance probability of a measure-many run, clamped to [0, 1]."""
    return _clamp01(mmqfa_run(machine, word).total_accept)


def accept_prob(machine: Machine, word: Iterable[str]) -> float:
    """Acceptance probability for any machine kind."""
    if isinstance(machine, PFA):
        return pfa_accept_prob(machine, word)
    if isinstance(machine, MOQFA):
        return moqfa_accept_prob(machine, word)
    if isinstance(machine, MMQFA):
        return mmqfa_accept_prob(machine, word)
    raise TypeError(f"not a machine: {type(machine).__name__}")
