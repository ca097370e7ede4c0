"""Shared test helpers: random machine generation and independent oracles.

Random unitaries come from QR orthonormalization of a complex Gaussian
matrix with the R-diagonal phases folded back in (approximately Haar).
The oracles recompute acceptance probabilities along a different route
than the package (full matrix products, term-by-term halting sums) so the
streaming implementations are checked against genuinely independent math.
"""

from __future__ import annotations

import numpy as np

from qfalab import (
    Alphabet,
    LEFT_MARKER,
    MMQFA,
    MOQFA,
    PFA,
    RIGHT_MARKER,
    projectors_of,
)

LETTERS = "abc"


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_alphabet(rng: np.random.Generator, max_tokens: int = 3) -> Alphabet:
    k = int(rng.integers(1, max_tokens + 1))
    return Alphabet(tuple(LETTERS[:k]))


def random_word(rng: np.random.Generator, alphabet: Alphabet, max_len: int) -> tuple[str, ...]:
    k = int(rng.integers(0, max_len + 1))
    toks = alphabet.tokens
    return tuple(toks[int(i)] for i in rng.integers(0, len(toks), size=k))


def random_moqfa(
    rng: np.random.Generator, max_dim: int = 5, alphabet: Alphabet | None = None
) -> MOQFA:
    n = int(rng.integers(1, max_dim + 1))
    alphabet = alphabet or random_alphabet(rng)
    unitaries = {tok: haar_unitary(rng, n) for tok in alphabet.tokens}
    accepting = frozenset(i for i in range(n) if rng.random() < 0.5)
    return MOQFA(alphabet, random_unit_vector(rng, n), unitaries, accepting)


def random_mmqfa(
    rng: np.random.Generator, max_dim: int = 9, alphabet: Alphabet | None = None
) -> MMQFA:
    n = int(rng.integers(1, max_dim + 1))
    alphabet = alphabet or random_alphabet(rng)
    unitaries = {tok: haar_unitary(rng, n) for tok in alphabet.tokens}
    unitaries[LEFT_MARKER] = haar_unitary(rng, n)
    unitaries[RIGHT_MARKER] = haar_unitary(rng, n)
    labels = rng.integers(0, 3, size=n)
    accepting = frozenset(int(i) for i in range(n) if labels[i] == 0)
    rejecting = frozenset(int(i) for i in range(n) if labels[i] == 1)
    return MMQFA(alphabet, random_unit_vector(rng, n), unitaries, accepting, rejecting)


def random_pfa(
    rng: np.random.Generator, max_dim: int = 6, alphabet: Alphabet | None = None
) -> PFA:
    n = int(rng.integers(1, max_dim + 1))
    alphabet = alphabet or random_alphabet(rng)
    transitions = {}
    for tok in alphabet.tokens:
        m = rng.random((n, n)) + 1e-9
        transitions[tok] = m / m.sum(axis=1, keepdims=True)
    x = rng.random(n) + 1e-9
    final = (rng.random(n) < 0.5).astype(float)
    return PFA(alphabet, x / x.sum(), transitions, final)


def rotation_moqfa(angle: float, alphabet: Alphabet) -> MOQFA:
    """First token rotates by ``angle`` in a 2-state plane, all other tokens
    are the identity; acceptance probability is sin^2(count * angle)."""
    c, s = np.cos(angle), np.sin(angle)
    rot = np.array([[c, -s], [s, c]], dtype=complex)
    eye = np.eye(2, dtype=complex)
    unitaries = {tok: eye for tok in alphabet.tokens}
    unitaries[alphabet.tokens[0]] = rot
    return MOQFA(alphabet, [1.0, 0.0], unitaries, frozenset({1}))


# ---------------------------------------------------------------------------
# independent oracles


def pfa_prob_product(m: PFA, word) -> float:
    """Acceptance probability via the fully materialized matrix product,
    last symbol outermost (independent of the streaming path)."""
    prod = np.eye(m.dim)
    for tok in word:
        prod = m.transitions[tok] @ prod
    return float(m.initial @ (prod @ m.final))


def moqfa_prob_projector(m: MOQFA, word) -> float:
    """Acceptance probability via an explicit projector matrix."""
    p_a = np.zeros((m.dim, m.dim))
    for i in m.accepting:
        p_a[i, i] = 1.0
    v = m.initial
    for tok in word:
        v = m.unitaries[tok] @ v
    v = p_a @ v
    return float(np.real(np.vdot(v, v)))


def mmqfa_prob_termwise(m: MMQFA, word) -> float:
    """Acceptance probability as the explicit sum over halting points.

    For each position k in '#left word #right', applies the projected
    product (P_g U) symbol by symbol from the initial vector, then one more
    unitary and the accept projector, and accumulates the squared norms.
    Quadratic in the word length, but independent of the streaming run.
    """
    p_a, p_g, _ = projectors_of(m)
    symbols = (LEFT_MARKER, *word, RIGHT_MARKER)
    total = 0.0
    for k in range(len(symbols)):
        v = np.array(m.initial)
        for i in range(k):
            v = p_g @ (m.unitaries[symbols[i]] @ v)
        v = p_a @ (m.unitaries[symbols[k]] @ v)
        total += float(np.real(np.vdot(v, v)))
    return total
