"""Pauli-word decomposition of real symmetric matrices.

Words are strings over {I, X, Y, Z} with qubit 0 leftmost (most
significant index bit). Coefficients are A_w = 2^-n Tr[P_w H]; for real
symmetric H only words with an even number of Y letters survive, and all
coefficients are real.

Traces are evaluated through the permutation structure of Pauli words
(each word has one nonzero entry per row), which reproduces the dense
tensor-product trace exactly up to summation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

DEFAULT_TOL = 1e-12

_LETTERS = "IXYZ"


def _word_action(word: str) -> tuple[int, np.ndarray]:
    """Return (flip_mask, phases) so that P|j> = phases[j] |j ^ flip_mask>.

    phases are the entries <j ^ flip | P | j>; real for even-Y words,
    imaginary otherwise.
    """
    n = len(word)
    flip = 0
    for q, letter in enumerate(word):
        if letter in "XY":
            flip |= 1 << (n - 1 - q)
    j = np.arange(2 ** n)
    phases = np.ones(2 ** n, dtype=complex)
    for q, letter in enumerate(word):
        bit = (j >> (n - 1 - q)) & 1
        if letter == "Z":
            phases = phases * np.where(bit, -1.0, 1.0)
        elif letter == "Y":
            # Y|0> = i|1>, Y|1> = -i|0>
            phases = phases * np.where(bit, -1j, 1j)
    return flip, phases


@dataclass(frozen=True)
class PauliSum:
    """Sparse real-coefficient expansion sum_w A_w P_w."""

    n_qubits: int
    terms: dict[str, float]
    drop_tol: float = DEFAULT_TOL

    def __post_init__(self):
        for word in self.terms:
            if len(word) != self.n_qubits:
                raise ValueError(f"word {word!r} has wrong length for n={self.n_qubits}")

    def __len__(self) -> int:
        return len(self.terms)

    def items(self):
        return sorted(self.terms.items())


def decompose(matrix: np.ndarray, tol: float = DEFAULT_TOL) -> PauliSum:
    """Expand a real symmetric 2^n x 2^n matrix in Pauli words.

    Terms with |A_w| <= tol are dropped. Words containing an odd number
    of Y letters have exactly zero coefficient for symmetric input and
    are never visited.
    """
    matrix = np.asarray(matrix, dtype=float)
    dim = matrix.shape[0]
    if matrix.ndim != 2 or matrix.shape != (dim, dim) or dim < 1 or dim & (dim - 1):
        raise ValueError(f"expected a square 2^n x 2^n matrix, got shape {matrix.shape}")
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    scale = max(np.max(np.abs(matrix)), 1.0)
    if np.max(np.abs(matrix - matrix.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    n = dim.bit_length() - 1

    terms: dict[str, float] = {}
    j = np.arange(dim)
    for letters in product(_LETTERS, repeat=n):
        if sum(1 for c in letters if c == "Y") % 2:
            continue
        word = "".join(letters)
        flip, phases = _word_action(word)
        # Tr[P H] = sum_j <j|P H|j> = sum_j phases[j] H[j ^ flip, j]
        coeff = np.sum(phases * matrix[j ^ flip, j])
        value = float(coeff.real) / dim
        if abs(value) > tol:
            terms[word] = value
    return PauliSum(n, terms, tol)


def reconstruct(psum: PauliSum) -> np.ndarray:
    """Dense matrix sum_w A_w P_w."""
    dim = 2 ** psum.n_qubits
    out = np.zeros((dim, dim))
    j = np.arange(dim)
    for word, coeff in psum.items():
        flip, phases = _word_action(word)
        out[j ^ flip, j] += coeff * phases.real
    return out


def apply_word(word: str, state: np.ndarray) -> np.ndarray:
    """P_w |psi>."""
    flip, phases = _word_action(word)
    out = np.empty_like(state, dtype=complex)
    j = np.arange(state.size)
    out[j ^ flip] = phases * state
    return out


def expectation(psum: PauliSum, state: np.ndarray) -> float:
    """sum_w A_w <psi|P_w|psi>."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (2 ** psum.n_qubits,):
        raise ValueError(
            f"state dimension {state.shape} does not match {psum.n_qubits} qubits"
        )
    total = 0.0
    for word, coeff in psum.items():
        total += coeff * np.vdot(state, apply_word(word, state)).real
    return float(total)


def term_count(psum: PauliSum) -> int:
    return len(psum)


def format_pauli(psum: PauliSum) -> str:
    """One `<word> <coefficient>` line per stored term, full precision."""
    return "".join(f"{word} {coeff:.17e}\n" for word, coeff in psum.items())


def save_pauli(path, psum: PauliSum) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_pauli(psum))


def load_pauli(path) -> PauliSum:
    terms: dict[str, float] = {}
    n = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if len(parts) != 2:
                raise ValueError(f"{path}:{lineno}: expected '<word> <coefficient>'")
            word, coeff = parts[0], float(parts[1])
            if n is None:
                n = len(word)
            terms[word] = coeff
    if n is None:
        raise ValueError(f"{path}: no terms found")
    return PauliSum(n, terms)
