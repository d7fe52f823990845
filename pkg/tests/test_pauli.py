from itertools import product

import numpy as np
import pytest

from dvrvqe.pauli import (
    PauliSum,
    decompose,
    expectation,
    load_pauli,
    reconstruct,
    save_pauli,
    term_count,
)

from conftest import random_state

PAULI_1Q = {
    "I": np.eye(2),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]]),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]]),
    "Z": np.diag([1.0, -1.0]),
}


def dense_decompose(matrix):
    """Literal tensor-product trace oracle, O(4^n * 4^n)."""
    n = matrix.shape[0].bit_length() - 1
    coeffs = {}
    for letters in product("IXYZ", repeat=n):
        word_matrix = np.array([[1.0]])
        for letter in letters:
            word_matrix = np.kron(word_matrix, PAULI_1Q[letter])
        coeff = np.trace(word_matrix @ matrix) / 2**n
        if abs(coeff) > 1e-12:
            coeffs["".join(letters)] = coeff
    return coeffs


def random_symmetric(rng, n):
    a = rng.standard_normal((2**n, 2**n))
    return a + a.T


def test_identity_single_qubit():
    assert dict(decompose(np.eye(2)).items()) == {"I": 1.0}


def test_two_by_two_formula():
    a, b, d = 1.3, -0.4, 0.5
    terms = dict(decompose(np.array([[a, b], [b, d]])).items())
    assert terms["I"] == pytest.approx((a + d) / 2)
    assert terms["X"] == pytest.approx(b)
    assert terms["Z"] == pytest.approx((a - d) / 2)


def test_infinite_kinetic_n1():
    matrix = np.array([[np.pi**2 / 3, -2.0], [-2.0, np.pi**2 / 3]])
    terms = dict(decompose(matrix).items())
    assert set(terms) == {"I", "X"}
    assert terms["I"] == pytest.approx(np.pi**2 / 3)
    assert terms["X"] == pytest.approx(-2.0)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_matches_dense_oracle(n):
    rng = np.random.default_rng(100 + n)
    matrix = random_symmetric(rng, n)
    ours = dict(decompose(matrix).items())
    oracle = dense_decompose(matrix)
    assert set(ours) == set(oracle)
    for word, coeff in oracle.items():
        assert abs(coeff.imag) < 1e-12
        assert ours[word] == pytest.approx(coeff.real, abs=1e-12)


@pytest.mark.parametrize("n", range(1, 7))
def test_roundtrip_random_symmetric(n):
    rng = np.random.default_rng(n)
    for _ in range(50 // n):
        matrix = random_symmetric(rng, n)
        assert np.max(np.abs(reconstruct(decompose(matrix, tol=0.0)) - matrix)) < 1e-12


def test_empty_sum_reconstructs_zero():
    assert np.array_equal(reconstruct(PauliSum(2, {})), np.zeros((4, 4)))


def test_z_word_reconstruction():
    assert np.array_equal(reconstruct(PauliSum(1, {"Z": 1.0})), np.diag([1.0, -1.0]))


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        decompose(np.zeros((3, 3)))
    with pytest.raises(ValueError):
        decompose(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        decompose(np.eye(2), tol=-1.0)


def test_no_odd_y_words():
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        psum = decompose(random_symmetric(rng, n), tol=0.0)
        for word in psum.terms:
            assert word.count("Y") % 2 == 0


def test_linearity_termwise():
    rng = np.random.default_rng(8)
    for n in (2, 3, 4, 5):
        a = random_symmetric(rng, n)
        b = random_symmetric(rng, n)
        alpha, beta = 0.7, -1.9
        combo = dict(decompose(alpha * a + beta * b, tol=0.0).items())
        da = dict(decompose(a, tol=0.0).items())
        db = dict(decompose(b, tol=0.0).items())
        for word in set(da) | set(db):
            expected = alpha * da.get(word, 0.0) + beta * db.get(word, 0.0)
            assert combo.get(word, 0.0) == pytest.approx(expected, abs=1e-10)


def test_diagonal_matrix_term_count():
    rng = np.random.default_rng(9)
    psum = decompose(np.diag(rng.standard_normal(16)))
    assert term_count(psum) <= 16
    assert all(set(word) <= {"I", "Z"} for word in psum.terms)


def test_morse16_radial_term_count(morse16_radial):
    """Counting every term that survives exact-zero dropping reproduces the
    scale of the published diatomic counts (about 130 of the 136 possible)."""
    exact_nonzero = term_count(decompose(morse16_radial.full, tol=0.0))
    assert 120 <= exact_nonzero <= 136


def test_morse32_term_count_reported(morse32):
    count = term_count(decompose(morse32.full))
    assert count <= 16 * 33  # real-symmetric dimension 2^4 (2^5 + 1)


class TestExpectation:
    def test_z_on_zero_state(self):
        state = np.array([1.0, 0.0])
        assert expectation(PauliSum(1, {"Z": 1.0}), state) == pytest.approx(1.0)

    def test_x_on_plus_state(self):
        state = np.array([1.0, 1.0]) / np.sqrt(2)
        assert expectation(PauliSum(1, {"X": 1.0}), state) == pytest.approx(1.0)

    def test_matches_dense_quadratic_form(self):
        rng = np.random.default_rng(11)
        matrix = random_symmetric(rng, 5)
        psum = decompose(matrix, tol=0.0)
        for _ in range(5):
            psi = random_state(rng, 32)
            dense = np.vdot(psi, matrix @ psi).real
            assert expectation(psum, psi) == pytest.approx(dense, abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            expectation(PauliSum(2, {"II": 1.0}), np.array([1.0, 0.0]))


def test_export_roundtrip(tmp_path, morse16_radial):
    psum = decompose(morse16_radial.full)
    path = tmp_path / "pauli.txt"
    save_pauli(path, psum)
    loaded = load_pauli(path)
    assert loaded.n_qubits == psum.n_qubits
    assert dict(loaded.items()) == dict(psum.items())
    first_word, first_coeff = psum.items()[0]
    assert f"{first_word} {first_coeff:.17e}" in path.read_text()
