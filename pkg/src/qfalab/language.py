"""Cutpoint membership verdicts and bounded-length language searches.

Everything here is explicitly *bounded*: the underlying questions about
cutpoint languages of these machines (emptiness, universality, equivalence,
containment) admit no general decision procedure, so exhausting all words
up to some length proves nothing about longer words.  A search either
produces a concrete witness word or an exhaustion certificate for the
searched range, never more.

Comparisons against the cutpoint use a three-valued classification with an
epsilon band: probabilities within epsilon of the cutpoint are Boundary
verdicts, which count as members in nonstrict mode and as non-members in
strict mode.  This keeps machines that sit exactly at the cutpoint stable
under floating-point noise.  Words that received a Boundary verdict are
listed separately in every report so numerically ambiguous classifications
stay visible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .errors import InputError, ParameterError
from .machines import Alphabet, Machine
from .semantics import Word, accept_prob


class Side(Enum):
    """Where a probability lies relative to the cutpoint's epsilon band."""

    ABOVE = "above"
    BELOW = "below"
    BOUNDARY = "boundary"


@dataclass(frozen=True)
class CutpointQuery:
    """A cutpoint with comparison mode and tolerance.

    The cutpoint may be given as an exact rational (``"3/4"``, ``Fraction``)
    or a decimal; it is reduced and converted to double precision once.
    """

    cutpoint: float
    mode: str
    epsilon: float = 1e-9

    def __post_init__(self):
        try:
            exact = Fraction(self.cutpoint)
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise ParameterError(
                f"cannot read cutpoint {self.cutpoint!r} as a rational number"
            ) from exc
        object.__setattr__(self, "cutpoint", float(exact))
        if not 0.0 < self.cutpoint <= 1.0:
            raise ParameterError(f"cutpoint must be in (0, 1], got {self.cutpoint}")
        if self.mode not in ("strict", "nonstrict"):
            raise ParameterError(f"mode must be 'strict' or 'nonstrict', got {self.mode!r}")
        if not self.epsilon > 0.0:
            raise ParameterError(f"epsilon must be positive, got {self.epsilon}")


@dataclass(frozen=True)
class MembershipVerdict:
    """Three-valued classification of one probability against one query."""

    side: Side
    probability: float
    margin: float

    @property
    def strict_member(self) -> bool:
        return self.side is Side.ABOVE

    @property
    def nonstrict_member(self) -> bool:
        return self.side is not Side.BELOW

    def is_member(self, mode: str) -> bool:
        return self.strict_member if mode == "strict" else self.nonstrict_member


def membership(probability: float, query: CutpointQuery) -> MembershipVerdict:
    """Classify a probability in [0, 1] against the query's cutpoint."""
    margin = probability - query.cutpoint
    if margin > query.epsilon:
        side = Side.ABOVE
    elif margin < -query.epsilon:
        side = Side.BELOW
    else:
        side = Side.BOUNDARY
    return MembershipVerdict(side, probability, margin)


@dataclass(frozen=True)
class SearchReport:
    """Outcome of one bounded search.

    ``outcome`` is ``"witness"`` or ``"exhausted"``.  ``verdicts`` holds the
    witness word's classification, one entry per machine involved (so two
    for equivalence and containment searches); it is empty on exhaustion.
    ``words_checked`` counts the words evaluated, including the witness; on
    exhaustion it equals the total number of words up to ``max_len``.
    ``proper_witness`` is used by containment searches only: the first word
    found in the right language but not the left, or None.
    """

    outcome: str
    witness: Word | None
    verdicts: tuple[MembershipVerdict, ...]
    max_len: int
    words_checked: int
    boundary_words: tuple[Word, ...]
    proper_witness: Word | None = field(default=None)

    @property
    def found(self) -> bool:
        return self.outcome == "witness"

    @property
    def proper_containment_found(self) -> bool:
        return self.proper_witness is not None


def words_up_to(alphabet: Alphabet, max_len: int) -> Iterator[Word]:
    """All words of length <= max_len, shortest first, declared token order
    within each length.  The empty word comes first."""
    if max_len < 0:
        raise ParameterError(f"max_len must be >= 0, got {max_len}")
    for length in range(max_len + 1):
        yield from itertools.product(alphabet.tokens, repeat=length)


def word_count(alphabet: Alphabet, max_len: int) -> int:
    """Number of words of length <= max_len over the alphabet."""
    if max_len < 0:
        raise ParameterError(f"max_len must be >= 0, got {max_len}")
    size = len(alphabet.tokens)
    return sum(size**k for k in range(max_len + 1))


def bounded_witness_search(
    machine: Machine, query: CutpointQuery, max_len: int
) -> SearchReport:
    """First word (shortest first) that is a member at the query's cutpoint.

    A witness disproves emptiness of the cutpoint language; exhaustion says
    nothing beyond the searched range.
    """
    boundary: list[Word] = []
    checked = 0
    for word in words_up_to(machine.alphabet, max_len):
        checked += 1
        verdict = membership(accept_prob(machine, word), query)
        if verdict.side is Side.BOUNDARY:
            boundary.append(word)
        if verdict.is_member(query.mode):
            return SearchReport(
                "witness", word, (verdict,), max_len, checked, tuple(boundary)
            )
    return SearchReport("exhausted", None, (), max_len, checked, tuple(boundary))


def bounded_universality(
    machine: Machine, query: CutpointQuery, max_len: int
) -> SearchReport:
    """First word that is a NON-member: a counterexample to universality."""
    boundary: list[Word] = []
    checked = 0
    for word in words_up_to(machine.alphabet, max_len):
        checked += 1
        verdict = membership(accept_prob(machine, word), query)
        if verdict.side is Side.BOUNDARY:
            boundary.append(word)
        if not verdict.is_member(query.mode):
            return SearchReport(
                "witness", word, (verdict,), max_len, checked, tuple(boundary)
            )
    return SearchReport("exhausted", None, (), max_len, checked, tuple(boundary))


def _require_same_alphabet(a: Machine, b: Machine) -> None:
    if a.alphabet.tokens != b.alphabet.tokens:
        raise InputError(
            f"machines do not share an alphabet: {a.alphabet.tokens} vs {b.alphabet.tokens}"
        )


def bounded_equivalence(
    a: Machine, b: Machine, query: CutpointQuery, max_len: int
) -> SearchReport:
    """First word whose membership differs between the two machines.

    Boundary verdicts are resolved by the query mode before comparison.  A
    witness separates the two cutpoint languages; exhaustion certifies
    agreement on the searched range only.
    """
    _require_same_alphabet(a, b)
    boundary: list[Word] = []
    checked = 0
    for word in words_up_to(a.alphabet, max_len):
        checked += 1
        va = membership(accept_prob(a, word), query)
        vb = membership(accept_prob(b, word), query)
        if va.side is Side.BOUNDARY or vb.side is Side.BOUNDARY:
            boundary.append(word)
        if va.is_member(query.mode) != vb.is_member(query.mode):
            return SearchReport(
                "witness", word, (va, vb), max_len, checked, tuple(boundary)
            )
    return SearchReport("exhausted", None, (), max_len, checked, tuple(boundary))


def bounded_containment(
    a: Machine, b: Machine, query: CutpointQuery, max_len: int
) -> SearchReport:
    """First word in the left language but not the right (shortest first).

    A witness refutes containment of the left cutpoint language in the
    right one.  ``proper_witness`` additionally reports the first word seen
    in the right language only, which supports the proper-containment
    question over the words enumerated before the search stopped.
    """
    _require_same_alphabet(a, b)
    boundary: list[Word] = []
    proper: Word | None = None
    checked = 0
    for word in words_up_to(a.alphabet, max_len):
        checked += 1
        va = membership(accept_prob(a, word), query)
        vb = membership(accept_prob(b, word), query)
        if va.side is Side.BOUNDARY or vb.side is Side.BOUNDARY:
            boundary.append(word)
        in_a = va.is_member(query.mode)
        in_b = vb.is_member(query.mode)
        if in_b and not in_a and proper is None:
            proper = word
        if in_a and not in_b:
            return SearchReport(
                "witness", word, (va, vb), max_len, checked, tuple(boundary), proper
            )
    return SearchReport("exhausted", None, (), max_len, checked, tuple(boundary), proper)
