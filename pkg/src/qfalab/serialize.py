"""JSON document format for machines, with canonical serialization.

One machine per document.  Complex numbers are two-element ``[re, im]``
arrays; real machines (PFAs) use plain numbers.  The MMQFA end-marker
matrices live under the reserved keys ``"#left"`` and ``"#right"``, which
can never collide with alphabet tokens because tokens may not start with
``'#'``.

Serialization is canonical: fixed key order, alphabet order as declared,
and every float printed with 17 significant digits, so entries round-trip
bit-exactly and equal machines produce byte-identical documents.  Parsing
is strict: unknown keys, shape disagreements with the declared dimension,
and missing end-markers are all rejected with a located error.
"""

from __future__ import annotations

import json
import math


from .errors import AlphabetError, ParseError, ValidationError
from .machines import (
    Alphabet,
    DEFAULT_TOL,
    LEFT_MARKER,
    MMQFA,
    MOQFA,
    Machine,
    PFA,
    RIGHT_MARKER,
    validate,
)

_KEYS = {
    "pfa": ("kind", "alphabet", "dimension", "initial", "transitions", "final"),
    "moqfa": ("kind", "alphabet", "dimension", "initial", "transitions", "accepting"),
    "mmqfa": (
        "kind",
        "alphabet",
        "dimension",
        "initial",
        "transitions",
        "accepting",
        "rejecting",
    ),
}


# ---------------------------------------------------------------------------
# serialization


def _fmt(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    s = format(float(x), ".17g")
    # bare "-0" would reload as the integer 0 and lose the sign bit
    return "-0.0" if s == "-0" else s


def _real_row(row) -> str:
    return "[" + ", ".join(_fmt(x) for x in row) + "]"


def _complex_row(row) -> str:
    return "[" + ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in row) + "]"


def _int_list(values) -> str:
    return "[" + ", ".join(str(int(i)) for i in sorted(values)) + "]"


def serialize_automaton(machine: Machine) -> str:
    """Render a machine as its canonical document text."""
    if isinstance(machine, PFA):
        kind = "pfa"
        row = _real_row
    elif isinstance(machine, MOQFA):
        kind = "moqfa"
        row = _complex_row
    elif isinstance(machine, MMQFA):
        kind = "mmqfa"
        row = _complex_row
    else:
        raise TypeError(f"not a machine: {type(machine).__name__}")

    matrices = machine.transitions if kind == "pfa" else machine.unitaries
    keys = list(machine.alphabet.tokens)
    if kind == "mmqfa":
        keys += [LEFT_MARKER, RIGHT_MARKER]

    lines = ["{"]
    lines.append(f'  "kind": {json.dumps(kind)},')
    alpha = ", ".join(json.dumps(t) for t in machine.alphabet.tokens)
    lines.append(f'  "alphabet": [{alpha}],')
    lines.append(f'  "dimension": {machine.dim},')
    lines.append(f'  "initial": {row(machine.initial)},')
    lines.append('  "transitions": {')
    for j, key in enumerate(keys):
        mat = matrices[key]
        lines.append(f"    {json.dumps(key)}: [")
        for i in range(mat.shape[0]):
            comma = "," if i < mat.shape[0] - 1 else ""
            lines.append(f"      {row(mat[i])}{comma}")
        lines.append("    ]" + ("," if j < len(keys) - 1 else ""))
    lines.append("  },")
    if kind == "pfa":
        lines.append(f'  "final": {_real_row(machine.final)}')
    elif kind == "moqfa":
        lines.append(f'  "accepting": {_int_list(machine.accepting)}')
    else:
        lines.append(f'  "accepting": {_int_list(machine.accepting)},')
        lines.append(f'  "rejecting": {_int_list(machine.rejecting)}')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# parsing


def _num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected a number, got {value!r}", where)
    return float(value)


def _pair(value, where: str) -> complex:
    if not isinstance(value, list) or len(value) != 2:
        raise ParseError(f"expected an [re, im] pair, got {value!r}", where)
    return complex(_num(value[0], where), _num(value[1], where))


def _vector(value, n: int, complex_entries: bool, where: str):
    if not isinstance(value, list):
        raise ParseError("expected an array", where)
    if len(value) != n:
        raise ParseError(f"expected {n} entries, got {len(value)}", where)
    if complex_entries:
        return [_pair(v, where) for v in value]
    return [_num(v, where) for v in value]


def _matrix(value, n: int, complex_entries: bool, where: str):
    if not isinstance(value, list):
        raise ParseError("expected an array of rows", where)
    if len(value) != n:
        raise ParseError(f"expected {n} rows, got {len(value)}", where)
    return [_vector(row, n, complex_entries, f"{where}[{i}]") for i, row in enumerate(value)]


def _state_list(value, n: int, where: str) -> frozenset[int]:
    if not isinstance(value, list):
        raise ParseError("expected an array of state indices", where)
    out = []
    for v in value:
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"expected an integer state index, got {v!r}", where)
        if not 0 <= v < n:
            raise ParseError(f"state index {v} out of range for dimension {n}", where)
        out.append(v)
    if len(set(out)) != len(out):
        raise ParseError("duplicate state index", where)
    return frozenset(out)


def _alphabet(value) -> Alphabet:
    if not isinstance(value, list) or not all(isinstance(t, str) for t in value):
        raise ParseError("expected an array of token strings", "alphabet")
    try:
        return Alphabet(tuple(value))
    except AlphabetError as exc:
        raise ParseError(str(exc), "alphabet") from exc


def parse_automaton(text: str, tol: float = DEFAULT_TOL, *, check: bool = True) -> Machine:
    """Parse a document into a validated machine.

    Raises ParseError for syntax and structural problems (with a location),
    and ValidationError carrying the violation list when the parsed machine
    fails validation at ``tol``.  With ``check=False`` the machine is
    returned un-validated so callers can collect violations themselves.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno} column {exc.colno}"
        ) from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")

    kind = doc.get("kind")
    if kind not in _KEYS:
        raise ParseError(f"kind must be one of 'pfa', 'moqfa', 'mmqfa', got {kind!r}", "kind")
    expected = _KEYS[kind]
    for key in doc:
        if key not in expected:
            raise ParseError(f"unknown key {key!r} in {kind} document", key)
    for key in expected:
        if key not in doc:
            raise ParseError(f"missing key {key!r}", key)

    alphabet = _alphabet(doc["alphabet"])
    dim = doc["dimension"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise ParseError(f"dimension must be a positive integer, got {dim!r}", "dimension")

    is_quantum = kind != "pfa"
    initial = _vector(doc["initial"], dim, is_quantum, "initial")

    trans_doc = doc["transitions"]
    if not isinstance(trans_doc, dict):
        raise ParseError("expected an object mapping tokens to matrices", "transitions")
    keys = list(alphabet.tokens)
    if kind == "mmqfa":
        for marker in (LEFT_MARKER, RIGHT_MARKER):
            if marker not in trans_doc:
                raise ParseError(f"missing end-marker transition {marker!r}", "transitions")
        keys += [LEFT_MARKER, RIGHT_MARKER]
    for key in trans_doc:
        if key not in keys:
            raise ParseError(f"unknown transition key {key!r}", "transitions")
    for key in keys:
        if key not in trans_doc:
            raise ParseError(f"missing transition matrix for token {key!r}", "transitions")
    matrices = {
        key: _matrix(trans_doc[key], dim, is_quantum, f"transitions.{key}") for key in keys
    }

    if kind == "pfa":
        final = _vector(doc["final"], dim, False, "final")
        machine: Machine = PFA(alphabet, initial, matrices, final)
    elif kind == "moqfa":
        accepting = _state_list(doc["accepting"], dim, "accepting")
        machine = MOQFA(alphabet, initial, matrices, accepting)
    else:
        accepting = _state_list(doc["accepting"], dim, "accepting")
        rejecting = _state_list(doc["rejecting"], dim, "rejecting")
        machine = MMQFA(alphabet, initial, matrices, accepting, rejecting)

    if check:
        violations = validate(machine, tol)
        if violations:
            raise ValidationError(violations)
    return machine
