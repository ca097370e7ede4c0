"""Machine descriptions: probabilistic and quantum finite automata.

The three machine kinds are frozen dataclasses holding read-only numpy
arrays.  Construction enforces structure only (array shapes, a transition
matrix for every token); numeric properties such as stochasticity,
unitarity, unit-norm initial vectors and disjoint halting sets are checked
by :func:`validate`, which returns a list of violations instead of raising
so callers can report every defect at once.  Once validated, machines are
safely shareable: nothing in this package mutates them.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from . import linalg
from .errors import AlphabetError, ShapeError

# Reserved end-marker keys for MMQFA transition maps.  Alphabet tokens may
# never start with '#', so these cannot collide with real input symbols.
LEFT_MARKER = "#left"
RIGHT_MARKER = "#right"

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Alphabet:
    """Ordered input alphabet.  Token order fixes word enumeration order."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if not self.tokens:
            raise AlphabetError("alphabet must not be empty")
        seen = set()
        for tok in self.tokens:
            if not isinstance(tok, str) or not tok:
                raise AlphabetError("alphabet tokens must be non-empty strings")
            if tok.startswith("#"):
                raise AlphabetError(
                    f"token {tok!r} starts with '#', which is reserved for end-markers"
                )
            if tok in seen:
                raise AlphabetError(f"duplicate token {tok!r}")
            seen.add(tok)

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)

    def __contains__(self, token) -> bool:
        return token in self.tokens


def _frozen_array(value, dtype, name: str, ndim: int) -> np.ndarray:
    arr = np.array(value, dtype=dtype)
    if arr.ndim != ndim:
        kind = "vector" if ndim == 1 else "matrix"
        raise ShapeError(f"{name} must be a {kind}, got array of rank {arr.ndim}")
    arr.setflags(write=False)
    return arr


def _check_state_set(states, n: int, name: str) -> frozenset[int]:
    out = frozenset(int(i) for i in states)
    for i in out:
        if not 0 <= i < n:
            raise ShapeError(f"{name} state {i} out of range for dimension {n}")
    return out


def _check_transition_keys(present, expected, markers=()):
    missing = set(expected) - set(present)
    if missing & set(markers):
        which = sorted(missing & set(markers))
        raise AlphabetError(f"missing end-marker transition {which[0]!r}")
    if missing:
        raise AlphabetError(
            f"missing transition matrix for token {sorted(missing)[0]!r}"
        )
    extra = set(present) - set(expected)
    if extra:
        raise AlphabetError(f"unexpected transition key {sorted(extra)[0]!r}")


def _freeze_transitions(transitions, expected, n, dtype, markers=()):
    _check_transition_keys(transitions.keys(), expected, markers)
    out = {}
    for key in expected:
        mat = np.array(transitions[key], dtype=dtype)
        if mat.shape != (n, n):
            raise ShapeError(
                f"transition matrix for {key!r} has shape {mat.shape}, expected ({n}, {n})"
            )
        mat.setflags(write=False)
        out[key] = mat
    return out


@dataclass(frozen=True, eq=False)
class PFA:
    """Probabilistic finite automaton.

    ``initial`` is a probability distribution over states, each transition
    matrix is row-stochastic, and ``final`` is a 0/1 indicator of final
    states.
    """

    alphabet: Alphabet
    initial: np.ndarray
    transitions: dict[str, np.ndarray]
    final: np.ndarray

    def __post_init__(self):
        initial = _frozen_array(self.initial, np.float64, "initial", 1)
        n = initial.shape[0]
        if n == 0:
            raise ShapeError("machine must have at least one state")
        final = _frozen_array(self.final, np.float64, "final", 1)
        if final.shape[0] != n:
            raise ShapeError(f"final vector has length {final.shape[0]}, expected {n}")
        transitions = _freeze_transitions(
            self.transitions, tuple(self.alphabet.tokens), n, np.float64
        )
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "final", final)
        object.__setattr__(self, "transitions", transitions)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]


@dataclass(frozen=True, eq=False)
class MOQFA:
    """Measure-once quantum finite automaton.

    Unitary evolution per symbol; a single measurement against the
    ``accepting`` states happens after the whole word has been read.
    """

    alphabet: Alphabet
    initial: np.ndarray
    unitaries: dict[str, np.ndarray]
    accepting: frozenset[int]

    def __post_init__(self):
        initial = _frozen_array(self.initial, np.complex128, "initial", 1)
        n = initial.shape[0]
        if n == 0:
            raise ShapeError("machine must have at least one state")
        unitaries = _freeze_transitions(
            self.unitaries, tuple(self.alphabet.tokens), n, np.complex128
        )
        accepting = _check_state_set(self.accepting, n, "accepting")
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "unitaries", unitaries)
        object.__setattr__(self, "accepting", accepting)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]


@dataclass(frozen=True, eq=False)
class MMQFA:
    """Measure-many quantum finite automaton.

    The run is framed by the end-markers: the unitaries map must contain an
    entry for every alphabet token plus ``'#left'`` and ``'#right'``.  After
    every symbol the state is measured against the accepting / rejecting /
    go partition of the state set.  A machine with no meaningful left-marker
    action should supply the identity for ``'#left'``.
    """

    alphabet: Alphabet
    initial: np.ndarray
    unitaries: dict[str, np.ndarray]
    accepting: frozenset[int]
    rejecting: frozenset[int]

    def __post_init__(self):
        initial = _frozen_array(self.initial, np.complex128, "initial", 1)
        n = initial.shape[0]
        if n == 0:
            raise ShapeError("machine must have at least one state")
        keys = tuple(self.alphabet.tokens) + (LEFT_MARKER, RIGHT_MARKER)
        unitaries = _freeze_transitions(
            self.unitaries, keys, n, np.complex128, markers=(LEFT_MARKER, RIGHT_MARKER)
        )
        accepting = _check_state_set(self.accepting, n, "accepting")
        rejecting = _check_state_set(self.rejecting, n, "rejecting")
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "unitaries", unitaries)
        object.__setattr__(self, "accepting", accepting)
        object.__setattr__(self, "rejecting", rejecting)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]


Machine = Union[PFA, MOQFA, MMQFA]


@dataclass(frozen=True)
class Violation:
    """One validation defect: which field, where, and how far off it is."""

    field: str
    index: str | int | None
    deviation: float
    message: str

    def __str__(self) -> str:
        return self.message


def validate(machine: Machine, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Check numeric invariants, returning a (possibly empty) violation list.

    Structural problems raise at construction time; everything
    tolerance-based lands here.  All checks are monotone in ``tol``: a
    machine with no violations at some tolerance has none at any larger one.
    """
    if isinstance(machine, PFA):
        return _validate_pfa(machine, tol)
    if isinstance(machine, MOQFA):
        return _validate_quantum(machine, tol, overlap_check=False)
    if isinstance(machine, MMQFA):
        return _validate_quantum(machine, tol, overlap_check=True)
    raise TypeError(f"not a machine: {type(machine).__name__}")


def _finite_or_flag(field, index, arr, out) -> bool:
    if linalg.entries_finite(arr):
        return True
    label = field if index is None else f"{field}[{index!r}]"
    out.append(
        Violation(field, index, float("inf"), f"non-finite entries in {label}")
    )
    return False


def _validate_pfa(m: PFA, tol: float) -> list[Violation]:
    out: list[Violation] = []
    if _finite_or_flag("initial", None, m.initial, out):
        neg = max(0.0, float(-m.initial.min()))
        if neg > tol:
            out.append(
                Violation(
                    "initial", None, neg,
                    f"initial distribution has negative entries (worst {neg:.3e})",
                )
            )
        total = float(m.initial.sum())
        if abs(total - 1.0) > tol:
            out.append(
                Violation(
                    "initial", None, abs(total - 1.0),
                    f"initial distribution sums to {total:.12g}, not 1",
                )
            )
    if _finite_or_flag("final", None, m.final, out):
        dev = float(np.max(np.minimum(np.abs(m.final), np.abs(m.final - 1.0))))
        if dev > 0.0:
            out.append(
                Violation(
                    "final", None, dev,
                    f"final indicator entries must be exactly 0 or 1 (worst deviation {dev:.3e})",
                )
            )
    for tok in m.alphabet.tokens:
        mat = m.transitions[tok]
        if not _finite_or_flag("transitions", tok, mat, out):
            continue
        row_dev = float(np.max(np.abs(mat.sum(axis=1) - 1.0)))
        if row_dev > tol:
            out.append(
                Violation(
                    "transitions", tok, row_dev,
                    f"transition matrix for token {tok!r} is not row-stochastic "
                    f"(row-sum deviation {row_dev:.3e})",
                )
            )
        ent_dev = max(0.0, float(-mat.min()), float(mat.max() - 1.0))
        if ent_dev > tol:
            out.append(
                Violation(
                    "transitions", tok, ent_dev,
                    f"transition matrix for token {tok!r} has entries outside [0, 1] "
                    f"(by {ent_dev:.3e})",
                )
            )
    return out


def _validate_quantum(m, tol: float, overlap_check: bool) -> list[Violation]:
    out: list[Violation] = []
    if _finite_or_flag("initial", None, m.initial, out):
        norm_dev = abs(linalg.norm_sq(m.initial) - 1.0)
        if norm_dev > tol:
            out.append(
                Violation(
                    "initial", None, norm_dev,
                    f"initial vector squared norm deviates from 1 by {norm_dev:.3e}",
                )
            )
    for key in m.unitaries:
        mat = m.unitaries[key]
        if not _finite_or_flag("unitaries", key, mat, out):
            continue
        dev = linalg.unitary_deviation(mat)
        if dev > tol:
            out.append(
                Violation(
                    "unitaries", key, dev,
                    f"non-unitary transition for {key!r} (max |U†U - I| entry {dev:.3e})",
                )
            )
    if overlap_check:
        overlap = m.accepting & m.rejecting
        if overlap:
            out.append(
                Violation(
                    "halting", None, float(len(overlap)),
                    f"overlapping halting sets: states {sorted(overlap)} are both "
                    f"accepting and rejecting",
                )
            )
    return out


def projectors_of(m: MMQFA) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Diagonal 0/1 projectors (accept, go, reject) for the state partition.

    For a valid machine the three matrices sum to the identity exactly; all
    entries are exact integers.
    """
    n = m.dim
    p_a = np.zeros((n, n))
    p_g = np.zeros((n, n))
    p_r = np.zeros((n, n))
    for i in range(n):
        if i in m.accepting:
            p_a[i, i] = 1.0
        if i in m.rejecting:
            p_r[i, i] = 1.0
        if i not in m.accepting and i not in m.rejecting:
            p_g[i, i] = 1.0
    return p_a, p_g, p_r
