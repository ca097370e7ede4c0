"""qfalab: simulate probabilistic and quantum finite automata, and explore
their cutpoint languages with bounded searches."""

from .constructions import (
    GadgetSpec,
    ReductionPair,
    below_cutpoint_moqfa,
    constant_moqfa,
    embed_moqfa_to_mmqfa,
    empty_strict_mmqfa,
    full_nonstrict_mmqfa,
    nonstrict_equivalence_reduction,
    strict_equivalence_reduction,
    to_fraction,
)
from .errors import (
    AlphabetError,
    InputError,
    ParameterError,
    ParseError,
    QfaError,
    ShapeError,
    ValidationError,
)
from .language import (
    CutpointQuery,
    MembershipVerdict,
    SearchReport,
    Side,
    bounded_containment,
    bounded_equivalence,
    bounded_universality,
    bounded_witness_search,
    membership,
    word_count,
    words_up_to,
)
from .linalg import apply, dagger, is_unitary, matmul, norm_sq, unitary_deviation
from .machines import (
    Alphabet,
    DEFAULT_TOL,
    LEFT_MARKER,
    MMQFA,
    MOQFA,
    PFA,
    RIGHT_MARKER,
    Violation,
    projectors_of,
    validate,
)
from .semantics import (
    RunTrace,
    TraceStep,
    Word,
    accept_prob,
    as_word,
    mmqfa_accept_prob,
    mmqfa_run,
    moqfa_accept_prob,
    pfa_accept_prob,
)
from .serialize import parse_automaton, serialize_automaton

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "AlphabetError",
    "CutpointQuery",
    "DEFAULT_TOL",
    "GadgetSpec",
    "InputError",
    "LEFT_MARKER",
    "MMQFA",
    "MOQFA",
    "MembershipVerdict",
    "PFA",
    "ParameterError",
    "ParseError",
    "QfaError",
    "ReductionPair",
    "RIGHT_MARKER",
    "RunTrace",
    "SearchReport",
    "ShapeError",
    "Side",
    "TraceStep",
    "ValidationError",
    "Violation",
    "Word",
    "accept_prob",
    "apply",
    "as_word",
    "below_cutpoint_moqfa",
    "bounded_containment",
    "bounded_equivalence",
    "bounded_universality",
    "bounded_witness_search",
    "constant_moqfa",
    "dagger",
    "embed_moqfa_to_mmqfa",
    "empty_strict_mmqfa",
    "full_nonstrict_mmqfa",
    "is_unitary",
    "matmul",
    "membership",
    "mmqfa_accept_prob",
    "mmqfa_run",
    "moqfa_accept_prob",
    "nonstrict_equivalence_reduction",
    "norm_sq",
    "parse_automaton",
    "pfa_accept_prob",
    "projectors_of",
    "serialize_automaton",
    "strict_equivalence_reduction",
    "to_fraction",
    "unitary_deviation",
    "validate",
    "word_count",
    "words_up_to",
]
