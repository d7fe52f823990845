"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings. Tolerances are pinned in the assertions.
"""

import math
import time
from itertools import product

import numpy as np
from dvrvqe import (
    HarmonicPotential,
    assemble,
    build_grid,
    classical_spectrum,
    truncate,
    truncation_error_bound,
)
from dvrvqe.ansatz import linear_ansatz
from dvrvqe.circuits import save_circuit
from dvrvqe.cli import main as cli_main
from dvrvqe.constants import HARTREE_TO_INV_CM
from dvrvqe.grids import band_profile
from dvrvqe.hamiltonian import retained_antidiagonals
from dvrvqe.measurement import (
    TruncationSpec,
    antidiag_operator,
    antidiag_plan,
    band_operator,
    band_plan,
    evaluate_exact,
    evaluate_sampled,
    full_plan,
    plan_complexity,
    plan_to_matrix,
)
from dvrvqe.pauli import decompose, reconstruct, term_count
from dvrvqe.search import SearchConfig, greedy_search
from dvrvqe.vqe import ObjectiveConfig, OptimizerConfig, excited_states, gradient, minimize, objective

from conftest import MASS, MORSE, random_state
from test_measurement import dense_from_bases


class _Check:
    def __init__(self, number, budget_s, label):
        self.number = number
        self.budget_s = budget_s
        self.label = label

    def __enter__(self):
        self.start = time.time()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.time() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        print(f"\nACCEPTANCE {self.number} {status} ({elapsed:.1f}s / budget {self.budget_s}s): {self.label}")
        if exc_type is None and elapsed >= self.budget_s:
            raise AssertionError(
                f"criterion {self.number} exceeded its runtime budget: {elapsed:.1f}s >= {self.budget_s}s"
            )
        return False


def test_criterion_1_dvr_correctness():
    with _Check(1, 10, "DVR spectra: finite lattice exact, harmonic, Morse"):
        for n in range(2, 7):
            a, b, mass = -0.3, 1.7, 1.4
            grid = build_grid("finite", {"a": a, "b": b}, n, mass)
            levels = classical_spectrum(assemble(grid).full)
            exact = np.pi**2 * np.arange(1, 2**n + 1) ** 2 / (2 * mass * (b - a) ** 2)
            assert np.max(np.abs(levels / exact - 1.0)) < 1e-10

        mass, k_f = 500.0, 0.25
        harm = HarmonicPotential(k_f)
        omega = harm.frequency(mass)
        grid = build_grid("infinite", {"x_min": -3.5, "dx": 7.0 / 63}, 6, mass)
        levels = classical_spectrum(assemble(grid, harm).full, 6)
        expected = omega * (np.arange(6) + 0.5)
        assert np.max(np.abs(levels / expected - 1.0)) < 1e-6

        grid = build_grid("infinite", {"x_min": 1.0, "dx": 8.0 / 511}, 9, MASS)
        levels = classical_spectrum(assemble(grid, MORSE).full, 6)
        analytic = np.array([MORSE.level(v, MASS) for v in range(6)])
        assert np.max(np.abs(levels - analytic)) * HARTREE_TO_INV_CM < 0.01


def test_criterion_2_decay_bounds():
    with _Check(2, 5, "decay bounds: band tails, cot bound, sin symmetry"):
        for variant, params in (("infinite", {"x_min": 0.0, "dx": 1.0}),
                                ("half-infinite", {"dx": 1.0})):
            for n in range(2, 11):
                profile = band_profile(build_grid(variant, params, n, 0.5))
                e_t = profile.kinetic_scale
                tails = np.cumsum(np.abs(profile.f[::-1]))[::-1]
                for s in range(2, 2**n):
                    assert tails[s] < 3.0 * e_t / s

        for big_n in (5, 17, 65, 257, 1025):
            k = np.arange(1, big_n)
            inv_sin2 = 1.0 / np.sin(np.pi * k / (2.0 * big_n)) ** 2
            suffix = np.cumsum(inv_sin2[::-1])[::-1]
            for s in range(2, big_n):
                assert suffix[s - 1] < (2.0 * big_n / np.pi) / np.tan(np.pi * (s - 1) / (2.0 * big_n))

        for n in range(1, 11):
            big_n = 2**n
            inv_sin2 = 1.0 / np.sin(np.pi * np.arange(1, 2 * big_n) / (2.0 * big_n)) ** 2
            for r in range(1, big_n):
                left = np.sum(inv_sin2[r - 1 : 2 * big_n - r])
                right = 1.0 + 2.0 * np.sum(inv_sin2[r - 1 : big_n - 1])
                assert abs(left - right) <= 1e-9 * abs(right)


def test_criterion_3_pauli_roundtrip(morse16_radial):
    with _Check(3, 30, "Pauli decompose/reconstruct round-trip and term counts"):
        rng = np.random.default_rng(2024)
        for index in range(50):
            n = 1 + index % 6
            matrix = rng.standard_normal((2**n, 2**n))
            matrix = matrix + matrix.T
            err = np.max(np.abs(reconstruct(decompose(matrix, tol=0.0)) - matrix))
            assert err < 1e-12

        count = term_count(decompose(morse16_radial.full, tol=0.0))
        assert count <= 136
        assert 120 <= count <= 136


def test_criterion_4_plan_reconstruction(morse16_radial, morse32):
    with _Check(4, 60, "band/anti-diagonal/full measurement-plan reconstruction"):
        for n in range(1, 7):
            for k in range(1, min(2**n, 8)):
                bases, q = band_plan(k, n)
                assert np.max(np.abs(dense_from_bases(bases, n) - band_operator(k, n, q))) < 1e-12

        rng = np.random.default_rng(11)
        for n in range(1, 7):
            g = rng.standard_normal(2 ** (n + 1) - 1)
            for r in (1, 2, min(5, 2**n), 2**n):
                for streamlined in (False, True):
                    bases = antidiag_plan(g, r, n, streamlined)
                    kept = retained_antidiagonals(n, r, streamlined)
                    target = sum(
                        g[k] * antidiag_operator(k, n)
                        for k in range(2 ** (n + 1) - 1) if kept[k]
                    )
                    assert np.max(np.abs(dense_from_bases(bases, n) - target)) < 1e-12

        for h in (morse16_radial, morse32):
            for s, r in product((2, 4, 8), (1, 2, 3)):
                plan = full_plan(h, TruncationSpec(s, r))
                target = truncate(h, s, r)
                scale = max(1.0, np.max(np.abs(target)))
                assert np.max(np.abs(plan_to_matrix(plan) - target)) < 1e-12 * scale


def test_criterion_5_complexity_bounds(morse16_radial, morse32):
    with _Check(5, 5, "basis-count bounds per band, anti-diagonal, and total"):
        for n in range(2, 7):
            for k in range(1, 2**n):
                bases, _ = band_plan(k, n)
                log2k = math.log2(k) if k > 1 else 0.0
                assert len(bases) <= (n + 1 - log2k) * k

        rng = np.random.default_rng(12)
        for n in (3, 4, 5):
            g = rng.standard_normal(2 ** (n + 1) - 1)
            for r in (1, 2, 3, 5):
                p = max(0, math.ceil(math.log2(r)))
                assert len(antidiag_plan(g, r, n)) <= 2**p
                streamlined = len(antidiag_plan(g, r, n, streamlined=True))
                assert streamlined <= 2 ** max(p - 1, 0) + 1

        for h, n in ((morse16_radial, 4), (morse32, 5)):
            for s, r in product((2, 4, 6), (1, 2, 3)):
                comp = plan_complexity(full_plan(h, TruncationSpec(s, r)))
                assert comp.num_bases <= comp.bound_num_bases


def test_criterion_6_tau_accuracy(morse16_radial, morse32):
    with _Check(6, 120, "tau within truncation bound; sampled estimate within 5 sigma"):
        rng = np.random.default_rng(13)
        for h, dim in ((morse16_radial, 16), (morse32, 32)):
            for s, r in ((2, 1), (4, 2), (8, 4)):
                plan = full_plan(h, TruncationSpec(s, r))
                bound = truncation_error_bound(h.profile, s, r)
                for _ in range(100):
                    psi = random_state(rng, dim)
                    energy = np.vdot(psi, h.full @ psi).real
                    assert abs(evaluate_exact(plan, psi) - energy) <= bound + 1e-12

        epsilon = 0.01
        spec = TruncationSpec.from_epsilon(epsilon, 4)
        plan = full_plan(morse16_radial, spec)
        psi = random_state(rng, 16)
        exact = evaluate_exact(plan, psi)
        for scale in (1, 100):
            shots = scale * spec.default_shots()
            sampled = evaluate_sampled(plan, psi, shots, seed=2718)
            assert abs(sampled.estimate - exact) < 5 * max(sampled.std_error, 1e-15)


def test_criterion_7_vqe_protocol(diatomic16, vdw32):
    with _Check(7, 1800, "molecule-scale VQE: linear ansatz, greedy C_1/C_0.01, deflation"):
        reference = classical_spectrum(diatomic16.full, 3)

        linear = minimize(
            linear_ansatz(4, 3),
            ObjectiveConfig(diatomic16.full),
            OptimizerConfig(max_iter=2000, restarts=5, seed=11),
        )
        assert (linear.energy - reference[0]) * HARTREE_TO_INV_CM < 1.0

        search = greedy_search(
            diatomic16.full, SearchConfig(n_blocks=3, thresholds=(1.0, 0.01), seed=7)
        )
        c1, c001 = search.snapshots[1.0], search.snapshots[0.01]
        assert c1 is not None and c1.ansatz.n_entanglers <= 5
        assert c001 is not None
        for block_c1, block_c001 in zip(c1.ansatz.entanglers, c001.ansatz.entanglers):
            assert set(block_c1) <= set(block_c001)

        excited = excited_states(
            c001.ansatz, diatomic16.full, 2, OptimizerConfig(max_iter=2000, restarts=5, seed=21)
        )
        for v, result in enumerate(excited):
            assert abs(result.energy - reference[v]) * HARTREE_TO_INV_CM < 1.0

        vdw_reference = classical_spectrum(vdw32.full, 1)[0]
        vdw_search = greedy_search(vdw32.full, SearchConfig(n_blocks=3, thresholds=(1.0,), seed=7))
        vdw_c1 = vdw_search.snapshots[1.0]
        assert vdw_c1 is not None and vdw_c1.ansatz.n_entanglers <= 9
        assert (vdw_c1.energy - vdw_reference) * HARTREE_TO_INV_CM < 1.0


def test_criterion_8_gradient_checks(diatomic16):
    with _Check(8, 10, "parameter-shift gradients vs central differences"):
        rng = np.random.default_rng(14)
        circuit = linear_ansatz(3, 2).circuit()
        matrix = rng.standard_normal((8, 8))
        matrix = matrix + matrix.T
        ref = np.zeros(8)
        ref[1] = 1.0
        config = ObjectiveConfig(matrix, ((ref, 1.7),))
        step = 1e-5
        for _ in range(50):
            params = rng.uniform(-np.pi, np.pi, circuit.n_slots)
            analytic = gradient(params, circuit, config)
            numeric = np.empty_like(analytic)
            for j in range(params.size):
                shifted = params.copy()
                shifted[j] = params[j] + step
                f_plus = objective(shifted, circuit, config)
                shifted[j] = params[j] - step
                f_minus = objective(shifted, circuit, config)
                numeric[j] = (f_plus - f_minus) / (2 * step)
            assert np.max(np.abs(analytic - numeric)) < 1e-6


DETERMINISM_CONFIG = """\
[system]
variant = finite
a = 2.55
b = 4.55
n_qubits = 4
mass_amu = 26.0

[potential]
type = morse
well_depth = 0.07
range = 1.35
equilibrium = 3.2

[task]
name = {task}
seed = 9
{extra}
[output]
directory = {outdir}
"""


def test_criterion_9_determinism(tmp_path):
    with _Check(9, 600, "byte-identical artifact manifests across repeated runs"):
        state_circuit = tmp_path / "state.circuit"
        save_circuit(state_circuit, linear_ansatz(4, 1).circuit())
        params_file = tmp_path / "params.txt"
        params_file.write_text("\n".join(["0.03"] * 8) + "\n")

        cases = {
            "diag": "levels = 6\n",
            "decompose": "",
            "vqe": "blocks = 2\nentangler = linear\nrestarts = 3\nmax_iter = 1000\n",
            "plan": "s = 4\nr = 2\n",
            "measure": (
                f"s = 4\nr = 2\nshots = 500\ncircuit = {state_circuit}\nparams = {params_file}\n"
            ),
        }
        for task, extra in cases.items():
            manifests = []
            for attempt in ("first", "second"):
                outdir = tmp_path / f"{task}-{attempt}"
                config_path = tmp_path / f"{task}-{attempt}.ini"
                config_path.write_text(
                    DETERMINISM_CONFIG.format(task=task, extra=extra, outdir=outdir)
                )
                assert cli_main(["run", str(config_path)]) == 0
                manifests.append((outdir / "manifest").read_bytes())
            assert manifests[0] == manifests[1], f"manifests differ for task {task}"
