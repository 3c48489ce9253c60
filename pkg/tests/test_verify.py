import random

import numpy as np
import pytest

from tpar.bench import ccz_fixture, example_cancellation, toffoli_circuit
from tpar.ir import CNOT, H, P, T, TDG, X, Z, Circuit, expand, gate
from tpar.matroid import Oracle
from tpar.verify import (
    DIFFERENT, EQUAL, EQUAL_UP_TO_PHASE, brute_force_min_partition, check_summary, check_unitary,
    circuit_unitary, default_verdict,
)

from strategies import random_circuit


def wrap(n, gates, inputs=None):
    names = [f"q{i}" for i in range(n)]
    return Circuit(names, names[: n if inputs is None else inputs], gates)


def merged_cancellation():
    """The cancellation example rewritten with its single surviving phase."""
    gates = [
        gate(CNOT, 2, 3), gate(P, 3), gate(CNOT, 2, 3),
        gate(CNOT, 3, 2),
        gate(CNOT, 0, 1), gate(CNOT, 1, 0), gate(CNOT, 0, 1),
    ]
    names = ["x1", "x2", "x3", "x4"]
    return Circuit(names, list(names), gates)


class TestSummaryCheck:
    def test_cancellation_example(self):
        assert check_summary(example_cancellation(), merged_cancellation()).verdict == EQUAL

    def test_toffoli_against_expansion(self):
        assert check_summary(toffoli_circuit(), expand(toffoli_circuit())).verdict == EQUAL

    def test_missing_phase_has_witness(self):
        a = wrap(2, [gate(CNOT, 0, 1), gate(T, 1)])
        b = wrap(2, [gate(CNOT, 0, 1)])
        report = check_summary(a, b)
        assert report.verdict == DIFFERENT
        assert report.witness is not None and report.witness & 0b11

    def test_wrong_permutation(self):
        report = check_summary(wrap(2, [gate(CNOT, 0, 1)]), wrap(2, [gate(CNOT, 1, 0)]))
        assert report.verdict == DIFFERENT
        assert report.witness is not None

    def test_hh_is_identity(self):
        assert check_summary(wrap(1, [gate(H, 0), gate(H, 0)]), wrap(1, [])).ok

    def test_constant_phase_is_tolerated(self):
        a = wrap(1, [gate(X, 0), gate(T, 0), gate(X, 0)])
        b = wrap(1, [gate(TDG, 0)])
        assert check_summary(a, b).ok

    def test_extra_ancilla_must_be_clean(self):
        a = wrap(1, [])
        b = wrap(2, [gate(X, 1)], inputs=1)
        assert check_summary(a, b).verdict == DIFFERENT

    @pytest.mark.parametrize("seed", range(60))
    def test_sound_against_unitary(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        a = random_circuit(rng, n, 12)
        b = random_circuit(rng, n, 12) if seed % 2 else a.copy(list(a.gates) + [gate(Z, 0), gate(Z, 0)])
        if check_summary(a, b).ok:
            assert check_unitary(a, b).ok


class TestUnitaryCheck:
    def test_ccz_matches_diagonal(self):
        diag = np.ones(8, dtype=complex)
        diag[-1] = -1
        assert check_unitary(ccz_fixture(), np.diag(diag)).verdict == EQUAL

    def test_global_phase(self):
        a = wrap(1, [gate(X, 0), gate(T, 0), gate(X, 0)])
        b = wrap(1, [gate(TDG, 0)])
        assert check_unitary(a, b).verdict == EQUAL_UP_TO_PHASE

    def test_different_has_witness(self):
        report = check_unitary(wrap(2, [gate(CNOT, 0, 1)]), wrap(2, []))
        assert report.verdict == DIFFERENT
        assert report.witness is not None
        assert report.max_amplitude_error > 0.5

    def test_too_many_wires(self):
        with pytest.raises(ValueError):
            check_unitary(wrap(11, []), wrap(11, []))

    def test_bad_matrix_shape(self):
        with pytest.raises(ValueError):
            check_unitary(wrap(2, []), np.eye(2))

    def test_unitary_is_unitary(self):
        u = circuit_unitary(expand(toffoli_circuit()))
        assert np.allclose(u @ u.conj().T, np.eye(8))

    @pytest.mark.parametrize("seed", range(30))
    def test_reflexive_and_symmetric(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 4)
        a, b = random_circuit(rng, n, 10), random_circuit(rng, n, 10)
        assert check_unitary(a, a).verdict == EQUAL
        assert check_unitary(a, b).ok == check_unitary(b, a).ok

    def test_default_verdict(self):
        assert default_verdict(toffoli_circuit(), expand(toffoli_circuit())) == EQUAL


class TestBruteForce:
    def test_ccz_sized(self):
        masks = [0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111]
        assert brute_force_min_partition(masks, Oracle(3, 3)) == 3
        assert brute_force_min_partition(masks, Oracle(3, 4)) == 2

    def test_empty(self):
        assert brute_force_min_partition([], Oracle(1, 1)) == 0

    def test_cap(self):
        with pytest.raises(ValueError):
            brute_force_min_partition(list(range(1, 11)), Oracle(4, 4))
