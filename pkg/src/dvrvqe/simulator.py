"""Exact statevector simulation of the {RY, CNOT, H, X} gate set.

States are 2^n complex amplitude vectors; basis index bit conventions
follow circuits.py (qubit 0 = most significant bit). Gate application is
done on a (2,)*n view of the state so axis q is qubit q.
"""

from __future__ import annotations

import numpy as np

from .circuits import Circuit

_SQRT_HALF = 1.0 / np.sqrt(2.0)
_H_MATRIX = np.array([[_SQRT_HALF, _SQRT_HALF], [_SQRT_HALF, -_SQRT_HALF]])
_X_MATRIX = np.array([[0.0, 1.0], [1.0, 0.0]])


def _ry_matrix(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]])


def _apply_single(tensor: np.ndarray, matrix: np.ndarray, qubit: int) -> np.ndarray:
    out = np.tensordot(matrix, tensor, axes=([1], [qubit]))
    return np.moveaxis(out, 0, qubit)


def _apply_cnot(tensor: np.ndarray, ctrl: int, tgt: int) -> np.ndarray:
    n = tensor.ndim
    sel1 = [slice(None)] * n
    sel1[ctrl] = 1
    block = tensor[tuple(sel1)]
    tensor = tensor.copy()
    tensor[tuple(sel1)] = np.flip(block, axis=tgt if tgt < ctrl else tgt - 1)
    return tensor


def run(circuit: Circuit, params=None) -> np.ndarray:
    """Apply the circuit to |0...0> and return the final amplitudes."""
    params = np.asarray(params if params is not None else [], dtype=float)
    if params.shape != (circuit.n_slots,):
        raise ValueError(
            f"parameter vector length {params.shape} does not match slot count {circuit.n_slots}"
        )
    state = np.zeros(2 ** circuit.n_qubits, dtype=complex)
    state[0] = 1.0
    return apply_circuit(circuit, state, params)


def apply_circuit(circuit: Circuit, state: np.ndarray, params=None) -> np.ndarray:
    """Apply the circuit's gates left-to-right to an existing state."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (2 ** circuit.n_qubits,):
        raise ValueError(
            f"state dimension {state.shape} does not match {circuit.n_qubits} qubits"
        )
    tensor = state.reshape((2,) * circuit.n_qubits)
    for g in circuit.gates:
        if g.kind == "ry":
            tensor = _apply_single(tensor, _ry_matrix(params[g.other]), g.qubit)
        elif g.kind == "h":
            tensor = _apply_single(tensor, _H_MATRIX, g.qubit)
        elif g.kind == "x":
            tensor = _apply_single(tensor, _X_MATRIX, g.qubit)
        else:
            tensor = _apply_cnot(tensor, g.qubit, g.other)
    return tensor.reshape(-1)


def expectation_dense(state: np.ndarray, matrix: np.ndarray) -> float:
    """<psi|H|psi> for a symmetric dense matrix."""
    state = np.asarray(state)
    matrix = np.asarray(matrix)
    if matrix.shape != (state.size, state.size):
        raise ValueError(f"dimension mismatch: state {state.size}, matrix {matrix.shape}")
    value = np.vdot(state, matrix @ state)
    if abs(value.imag) > 1e-12 * max(1.0, abs(value.real)):
        raise ValueError(f"expectation has imaginary residue {value.imag}")
    return float(value.real)


def overlap_sq(s1: np.ndarray, s2: np.ndarray) -> float:
    """|<s1|s2>|^2."""
    s1 = np.asarray(s1)
    s2 = np.asarray(s2)
    if s1.shape != s2.shape:
        raise ValueError(f"state dimensions differ: {s1.shape} vs {s2.shape}")
    return float(abs(np.vdot(s1, s2)) ** 2)


def sample_counts(state: np.ndarray, analysis_circuit: Circuit | None, shots: int, seed) -> np.ndarray:
    """Histogram of ``shots`` i.i.d. Z-basis measurements of V^dag|psi>.

    ``analysis_circuit=None`` measures the state directly. Deterministic
    for a given seed (PCG64 stream).
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if analysis_circuit is not None:
        state = apply_circuit(analysis_circuit, state)
    probs = np.abs(np.asarray(state)) ** 2
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    return rng.multinomial(shots, probs)
