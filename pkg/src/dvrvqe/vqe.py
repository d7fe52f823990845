"""Variational minimization of <psi(phi)|H|psi(phi)> with overlap deflation.

Excited states are reached by re-minimizing with penalty terms
beta_i * |<psi_i|psi(phi)>|^2 against the previously found states; the
beta weights come from the Gershgorin upper bound of H so that
beta_i >= E_{i+1} - E_i always holds.

Gradients use the parameter-shift rule, exact for RY generators; the
deflation overlaps share the RY trigonometric structure so the same
+-pi/2 shifts differentiate the full objective.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.optimize

from .ansatz import AnsatzSpec
from .circuits import Circuit
from .constants import HARTREE_TO_INV_CM
from .pauli import PauliSum, expectation as pauli_expectation
from .simulator import overlap_sq, run


@dataclass(frozen=True)
class ObjectiveConfig:
    hamiltonian: object                     # dense symmetric ndarray or PauliSum
    deflation: tuple[tuple[np.ndarray, float], ...] = ()
    unit: str = "hartree"

    def __post_init__(self):
        for _, beta in self.deflation:
            if beta <= 0:
                raise ValueError(f"deflation weights must be positive, got {beta}")


@dataclass(frozen=True)
class OptimizerConfig:
    method: str = "lbfgs"                   # 'lbfgs' (parameter-shift gradients) or 'simplex'
    gradient_tol: float = 1e-8
    objective_tol: float = 1e-12
    max_iter: int = 2000
    restarts: int = 5
    seed: tuple[int, ...] | int = 0
    init_scale: float = 0.1

    def __post_init__(self):
        if self.method not in ("lbfgs", "simplex"):
            raise ValueError(f"unknown optimizer method {self.method!r}")
        if self.gradient_tol <= 0 or self.objective_tol <= 0:
            raise ValueError("tolerances must be positive")

    def seed_tuple(self) -> tuple[int, ...]:
        return (self.seed,) if isinstance(self.seed, int) else tuple(self.seed)


@dataclass(frozen=True)
class VqeResult:
    energy: float
    params: np.ndarray
    trace: tuple[tuple[int, float, float], ...]   # (iteration, objective, energy)
    converged: bool
    overlaps: tuple[float, ...] = ()

    def energy_cm1(self) -> float:
        return self.energy * HARTREE_TO_INV_CM


def _as_circuit(ansatz) -> Circuit:
    return ansatz.circuit() if isinstance(ansatz, AnsatzSpec) else ansatz


def energy_of(state: np.ndarray, hamiltonian) -> float:
    if isinstance(hamiltonian, PauliSum):
        return pauli_expectation(hamiltonian, state)
    return float(np.vdot(state, hamiltonian @ state).real)


def objective(params, circuit: Circuit, config: ObjectiveConfig) -> float:
    """<H> plus the weighted squared overlaps with the deflation references."""
    state = run(circuit, params)
    value = energy_of(state, config.hamiltonian)
    for ref, beta in config.deflation:
        value += beta * overlap_sq(ref, state)
    return value


def gradient(params, circuit: Circuit, config: ObjectiveConfig) -> np.ndarray:
    """Parameter-shift gradient: [f(theta + pi/2) - f(theta - pi/2)] / 2 per slot."""
    params = np.asarray(params, dtype=float)
    grad = np.empty(params.size)
    for j in range(params.size):
        shifted = params.copy()
        shifted[j] = params[j] + np.pi / 2.0
        f_plus = objective(shifted, circuit, config)
        shifted[j] = params[j] - np.pi / 2.0
        f_minus = objective(shifted, circuit, config)
        grad[j] = 0.5 * (f_plus - f_minus)
    return grad


def gershgorin_upper(matrix: np.ndarray) -> float:
    matrix = np.asarray(matrix)
    radii = np.sum(np.abs(matrix), axis=1) - np.abs(np.diag(matrix))
    return float(np.max(np.diag(matrix) + radii))


def _single_run(circuit, config, opt, x0):
    trace = []

    def record(xk):
        obj = objective(xk, circuit, config)
        energy = energy_of(run(circuit, xk), config.hamiltonian)
        trace.append((len(trace), obj, energy))

    record(x0)
    if opt.method == "lbfgs":
        res = scipy.optimize.minimize(
            objective,
            x0,
            args=(circuit, config),
            jac=gradient,
            method="L-BFGS-B",
            callback=record,
            options={"maxiter": opt.max_iter, "gtol": opt.gradient_tol, "ftol": opt.objective_tol},
        )
    else:
        res = scipy.optimize.minimize(
            objective,
            x0,
            args=(circuit, config),
            method="Nelder-Mead",
            callback=record,
            options={"maxiter": opt.max_iter, "fatol": opt.objective_tol, "xatol": 1e-10},
        )
    state = run(circuit, res.x)
    energy = energy_of(state, config.hamiltonian)
    overlaps = tuple(overlap_sq(ref, state) for ref, _ in config.deflation)
    converged = bool(res.status == 0)
    return VqeResult(energy, np.asarray(res.x), tuple(trace), converged, overlaps), float(res.fun)


def minimize(ansatz, config: ObjectiveConfig, opt: OptimizerConfig, x0=None) -> VqeResult:
    """Best VQE result over restarts; deterministic for a given seed.

    ``x0`` warm-starts a single run and bypasses the random restarts.
    Exhausting the iteration budget is reported through converged=False,
    not an exception.
    """
    circuit = _as_circuit(ansatz)
    if x0 is not None:
        x0 = np.asarray(x0, dtype=float)
        if x0.shape != (circuit.n_slots,):
            raise ValueError(f"x0 length {x0.shape} does not match {circuit.n_slots} slots")
        return _single_run(circuit, config, opt, x0)[0]

    best = None
    best_key = None
    for restart in range(opt.restarts):
        rng = np.random.default_rng((*opt.seed_tuple(), restart))
        start = rng.uniform(-opt.init_scale, opt.init_scale, circuit.n_slots)
        result, fun = _single_run(circuit, config, opt, start)
        key = (fun, restart)
        if best is None or key < best_key:
            best, best_key = result, key
    return best


def excited_states(ansatz, hamiltonian, v_max: int, opt: OptimizerConfig, beta_margin: float = 1.1):
    """Sequential deflation: solve v=0, penalize its state, re-solve, ...

    beta_v = beta_margin * (Gershgorin upper bound - E_v), which dominates
    every gap E_{v+1} - E_v.
    """
    if v_max < 0:
        raise ValueError(f"v_max must be >= 0, got {v_max}")
    hamiltonian = np.asarray(hamiltonian, dtype=float)
    upper = gershgorin_upper(hamiltonian)
    circuit = _as_circuit(ansatz)

    results = []
    deflation: list[tuple[np.ndarray, float]] = []
    for v in range(v_max + 1):
        config = ObjectiveConfig(hamiltonian, tuple(deflation))
        opt_v = OptimizerConfig(
            opt.method, opt.gradient_tol, opt.objective_tol, opt.max_iter,
            opt.restarts, (*opt.seed_tuple(), v), opt.init_scale,
        )
        result = minimize(circuit, config, opt_v)
        results.append(result)
        beta = beta_margin * max(upper - result.energy, 1e-6)
        deflation.append((run(circuit, result.params), beta))
    return results


def write_trace_csv(path, result: VqeResult) -> None:
    """Per-iteration trace: iter,objective,energy_hartree,energy_cm1."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("iter,objective,energy_hartree,energy_cm1\n")
        for iteration, obj, energy in result.trace:
            fh.write(
                f"{iteration},{obj:.17g},{energy:.17g},{energy * HARTREE_TO_INV_CM:.17g}\n"
            )
