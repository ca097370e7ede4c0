import numpy as np
import pytest

from qfalab import (
    Alphabet,
    AlphabetError,
    LEFT_MARKER,
    MMQFA,
    MOQFA,
    PFA,
    RIGHT_MARKER,
    constant_moqfa,
    embed_moqfa_to_mmqfa,
    mmqfa_accept_prob,
    mmqfa_run,
    moqfa_accept_prob,
    pfa_accept_prob,
)
from support import (
    mmqfa_prob_termwise,
    moqfa_prob_projector,
    pfa_prob_product,
    random_mmqfa,
    random_moqfa,
    random_pfa,
    random_word,
)

H = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
EYE2 = np.eye(2, dtype=complex)


class TestPfa:
    def pfa(self, matrix):
        return PFA(Alphabet(("a",)), [1.0, 0.0], {"a": np.asarray(matrix)}, [1.0, 0.0])

    def test_identity_machine(self):
        m = self.pfa(np.eye(2))
        assert pfa_accept_prob(m, "aaa") == 1.0

    def test_permutation_parity(self):
        m = self.pfa([[0.0, 1.0], [1.0, 0.0]])
        assert pfa_accept_prob(m, "a") == 0.0
        assert pfa_accept_prob(m, "aa") == 1.0

    def test_uniform_mixing_row(self):
        m = PFA(
            Alphabet(("b",)),
            [1.0, 0.0],
            {"b": np.full((2, 2), 0.5)},
            [1.0, 0.0],
        )
        assert pfa_accept_prob(m, "b") == 0.5

    def test_unknown_token(self):
        with pytest.raises(AlphabetError, match="'z'"):
            pfa_accept_prob(self.pfa(np.eye(2)), ("z",))

    def test_matches_product_oracle(self):
        rng = np.random.default_rng(31)
        for _ in range(100):
            m = random_pfa(rng)
            w = random_word(rng, m.alphabet, 8)
            assert pfa_accept_prob(m, w) == pytest.approx(
                pfa_prob_product(m, w), abs=1e-12
            )

    def test_range_after_clamp_and_raw_deviation(self):
        rng = np.random.default_rng(37)
        for _ in range(200):
            m = random_pfa(rng)
            w = random_word(rng, m.alphabet, 10)
            p = pfa_accept_prob(m, w)
            assert 0.0 <= p <= 1.0
            raw = pfa_prob_product(m, w)
            assert max(0.0, -raw, raw - 1.0) <= 1e-10


class TestMoqfa:
    def hadamard(self):
        return MOQFA(Alphabet(("a",)), [1.0, 0.0], {"a": H}, frozenset({0}))

    def test_single_hadamard(self):
        assert moqfa_accept_prob(self.hadamard(), "a") == pytest.approx(0.5, abs=1e-12)

    def test_hadamard_squared(self):
        assert moqfa_accept_prob(self.hadamard(), "aa") == pytest.approx(1.0, abs=1e-12)

    def test_constant_gadget_quarter(self):
        m = constant_moqfa(Alphabet(("a", "b")), "1/4")
        rng = np.random.default_rng(41)
        for _ in range(20):
            w = random_word(rng, m.alphabet, 7)
            assert moqfa_accept_prob(m, w) == pytest.approx(0.25, abs=1e-12)

    def test_empty_word_is_projection_of_initial(self):
        m = MOQFA(Alphabet(("a",)), [0.6, 0.8], {"a": H}, frozenset({0}))
        assert moqfa_accept_prob(m, ()) == pytest.approx(0.36, abs=1e-15)

    def test_no_accepting_states(self):
        m = MOQFA(Alphabet(("a",)), [1.0, 0.0], {"a": H}, frozenset())
        assert moqfa_accept_prob(m, "aaa") == 0.0

    def test_matches_projector_oracle(self):
        rng = np.random.default_rng(43)
        for _ in range(100):
            m = random_moqfa(rng)
            w = random_word(rng, m.alphabet, 8)
            assert moqfa_accept_prob(m, w) == pytest.approx(
                moqfa_prob_projector(m, w), abs=1e-12
            )


class TestMmqfaRun:
    def test_embedded_constant_trace(self):
        m = embed_moqfa_to_mmqfa(constant_moqfa(Alphabet(("a",)), "1/2"))
        trace = mmqfa_run(m, ("a",))
        symbols = [s.symbol for s in trace.steps]
        assert symbols == [LEFT_MARKER, "a", RIGHT_MARKER]
        assert trace.steps[0].accept_increment == 0.0
        assert trace.steps[0].reject_increment == 0.0
        assert trace.steps[1].accept_increment == 0.0
        assert trace.steps[1].reject_increment == 0.0
        assert trace.steps[2].accept_increment == pytest.approx(0.5, abs=1e-12)
        assert trace.steps[2].reject_increment == pytest.approx(0.5, abs=1e-12)
        assert trace.total_accept == pytest.approx(0.5, abs=1e-12)
        assert trace.residual_go == 0.0
        # cross-check against the measure-once side
        assert trace.total_accept == pytest.approx(
            moqfa_accept_prob(constant_moqfa(Alphabet(("a",)), "1/2"), "a"), abs=1e-12
        )

    def test_empty_word_two_steps(self):
        rng = np.random.default_rng(47)
        m = random_mmqfa(rng)
        trace = mmqfa_run(m, ())
        assert [s.symbol for s in trace.steps] == [LEFT_MARKER, RIGHT_MARKER]

    def test_no_accepting_states_never_accepts(self):
        rng = np.random.default_rng(53)
        base = random_mmqfa(rng, max_dim=5)
        m = MMQFA(
            base.alphabet, base.initial, dict(base.unitaries), frozenset(), base.rejecting
        )
        for _ in range(10):
            w = random_word(rng, m.alphabet, 6)
            assert mmqfa_run(m, w).total_accept == 0.0

    def test_unknown_token(self):
        rng = np.random.default_rng(59)
        m = random_mmqfa(rng)
        with pytest.raises(AlphabetError):
            mmqfa_run(m, ("nope",))

    def test_conservation_500_random_runs(self):
        rng = np.random.default_rng(61)
        for _ in range(500):
            m = random_mmqfa(rng, max_dim=9)
            w = random_word(rng, m.alphabet, 12)
            trace = mmqfa_run(m, w)
            cum_a = cum_r = 0.0
            for step in trace.steps:
                assert step.accept_increment >= 0.0
                assert step.reject_increment >= 0.0
                cum_a += step.accept_increment
                cum_r += step.reject_increment
                assert cum_a + cum_r <= 1.0 + 1e-9
                assert abs(cum_a + cum_r + step.go_norm_sq - 1.0) <= 1e-9
            assert trace.total_accept == pytest.approx(cum_a)
            assert trace.residual_go == trace.steps[-1].go_norm_sq

    def test_matches_termwise_oracle(self):
        rng = np.random.default_rng(67)
        for _ in range(100):
            m = random_mmqfa(rng, max_dim=7)
            w = random_word(rng, m.alphabet, 8)
            assert mmqfa_run(m, w).total_accept == pytest.approx(
                mmqfa_prob_termwise(m, w), abs=1e-10
            )

    def test_accept_prob_is_clamped_total(self):
        rng = np.random.default_rng(71)
        m = random_mmqfa(rng)
        w = random_word(rng, m.alphabet, 6)
        p = mmqfa_accept_prob(m, w)
        assert 0.0 <= p <= 1.0
        assert p == pytest.approx(mmqfa_run(m, w).total_accept, abs=1e-15)


def test_determinism_bit_identical():
    rng = np.random.default_rng(73)
    m = random_mmqfa(rng)
    w = random_word(rng, m.alphabet, 9)
    assert mmqfa_run(m, w) == mmqfa_run(m, w)
    p = random_pfa(rng)
    wp = random_word(rng, p.alphabet, 9)
    assert pfa_accept_prob(p, wp) == pfa_accept_prob(p, wp)
