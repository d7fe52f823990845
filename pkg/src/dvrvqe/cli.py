"""Command-line runner: config-driven Hamiltonian builds, benchmarks, VQE,
ansatz searches and measurement-plan workflows.

Every artifact is written atomically (temp file + rename) and listed with
its SHA-256 in a ``manifest`` file. Re-running a config with the same seed
produces byte-identical artifacts; floats are printed at 17 significant
digits.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import tempfile
from pathlib import Path

import numpy as np

from . import __version__
from .ansatz import linear_ansatz
from .circuits import format_circuit, load_circuit
from .config import ConfigError, RunConfig, load_config
from .constants import HARTREE_TO_INV_CM
from .hamiltonian import assemble, classical_spectrum, truncate
from .measurement import (
    TruncationSpec,
    evaluate_exact,
    evaluate_sampled,
    format_plan,
    full_plan,
    load_plan,
    plan_complexity,
    plan_to_matrix,
)
from .pauli import decompose, format_pauli
from .search import SearchConfig, greedy_search
from .simulator import run as run_circuit
from .vqe import ObjectiveConfig, OptimizerConfig, excited_states, minimize


class _Workspace:
    """Output directory with atomic writes and a hash manifest."""

    def __init__(self, outdir: Path):
        self.outdir = Path(outdir)
        self.outdir.mkdir(parents=True, exist_ok=True)
        self.written: dict[str, str] = {}

    def write_text(self, name: str, text: str) -> None:
        fd, tmp = tempfile.mkstemp(dir=self.outdir, prefix=f".{name}.")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, self.outdir / name)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        self.written[name] = hashlib.sha256(text.encode("utf-8")).hexdigest()

    def finish(self) -> None:
        lines = [f"{digest}  {name}" for name, digest in sorted(self.written.items())]
        text = "\n".join(lines) + "\n"
        fd, tmp = tempfile.mkstemp(dir=self.outdir, prefix=".manifest.")
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, self.outdir / "manifest")


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def _spectrum_csv(energies) -> str:
    lines = ["v,energy_hartree,energy_cm1"]
    for v, e in enumerate(energies):
        lines.append(f"{v},{_fmt(e)},{_fmt(e * HARTREE_TO_INV_CM)}")
    return "\n".join(lines) + "\n"


def _result_csv(rows: list[dict]) -> str:
    keys = list(rows[0])
    lines = [",".join(keys)]
    for row in rows:
        lines.append(",".join(_fmt(v) if isinstance(v, float) else str(v) for v in (row[k] for k in keys)))
    return "\n".join(lines) + "\n"


def _truncation_spec(config: RunConfig) -> TruncationSpec:
    streamlined = bool(config.opt("streamlined", False))
    if config.opt("s") is not None or config.opt("r") is not None:
        if config.opt("s") is None or config.opt("r") is None:
            raise ConfigError("[task] explicit truncation needs both 's' and 'r'")
        return TruncationSpec(config.opt("s"), config.opt("r"), streamlined)
    epsilon = config.opt("epsilon")
    if epsilon is None:
        raise ConfigError("[task] needs 'epsilon' or explicit 's' and 'r'")
    return TruncationSpec.from_epsilon(epsilon, config.grid.n_qubits, streamlined=streamlined)


def _ansatz_for(config: RunConfig, hamiltonian):
    """Resolve the [task] entangler choice into a circuit to optimize."""
    choice = config.opt("entangler", "linear")
    blocks = config.opt("blocks", 3)
    n = config.grid.n_qubits
    if choice == "linear":
        return linear_ansatz(n, blocks).circuit()
    if choice == "search":
        search_config = _search_config(config)
        result = greedy_search(hamiltonian, search_config)
        return result.final_ansatz.circuit()
    circuit_path = Path(choice)
    if not circuit_path.is_file():
        raise ConfigError(f"[task] entangler circuit file not found: {circuit_path}")
    return load_circuit(circuit_path)


def _optimizer_config(config: RunConfig) -> OptimizerConfig:
    return OptimizerConfig(
        max_iter=config.opt("max_iter", 2000),
        restarts=config.opt("restarts", 5),
        seed=config.seed,
    )


def _search_config(config: RunConfig) -> SearchConfig:
    return SearchConfig(
        n_blocks=config.opt("blocks", 3),
        thresholds=config.opt("thresholds", (1.0, 0.01)),
        max_entanglers=config.opt("max_entanglers", 20),
        candidate_budget=config.opt("candidate_budget", 200),
        full_budget=config.opt("max_iter", 2000),
        restarts_initial=config.opt("restarts", 5),
        seed=config.seed,
    )


def _task_diag(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    count = config.opt("levels", min(h.n_points, 8))
    ws.write_text("spectrum.csv", _spectrum_csv(classical_spectrum(h.full, count)))


def _task_decompose(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    psum = decompose(h.full, tol=config.opt("tol", 1e-12))
    ws.write_text("pauli.txt", format_pauli(psum))


def _task_vqe(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    reference = classical_spectrum(h.full, 1)[0]
    circuit = _ansatz_for(config, h.full)
    result = minimize(circuit, ObjectiveConfig(h.full), _optimizer_config(config))
    ws.write_text("spectrum.csv", _spectrum_csv([reference]))

    trace_lines = ["iter,objective,energy_hartree,energy_cm1"]
    for iteration, obj, energy in result.trace:
        trace_lines.append(f"{iteration},{_fmt(obj)},{_fmt(energy)},{_fmt(energy * HARTREE_TO_INV_CM)}")
    ws.write_text("vqe_trace.csv", "\n".join(trace_lines) + "\n")

    error_cm1 = (result.energy - reference) * HARTREE_TO_INV_CM
    ws.write_text("result.csv", _result_csv([{
        "v": 0,
        "energy_hartree": float(result.energy),
        "energy_cm1": float(result.energy * HARTREE_TO_INV_CM),
        "reference_cm1": float(reference * HARTREE_TO_INV_CM),
        "error_cm1": float(error_cm1),
        "converged": int(result.converged),
    }]))


def _task_excited(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    v_max = config.opt("v_max", 2)
    reference = classical_spectrum(h.full, v_max + 1)
    circuit = _ansatz_for(config, h.full)
    results = excited_states(circuit, h.full, v_max, _optimizer_config(config))
    ws.write_text("spectrum.csv", _spectrum_csv(reference))
    rows = []
    for v, result in enumerate(results):
        rows.append({
            "v": v,
            "energy_hartree": float(result.energy),
            "energy_cm1": float(result.energy * HARTREE_TO_INV_CM),
            "reference_cm1": float(reference[v] * HARTREE_TO_INV_CM),
            "error_cm1": float((result.energy - reference[v]) * HARTREE_TO_INV_CM),
            "max_overlap": float(max(result.overlaps, default=0.0)),
        })
    ws.write_text("result.csv", _result_csv(rows))


def _task_search(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    search_config = _search_config(config)
    result = greedy_search(h.full, search_config)

    trace_lines = ["step,block,ctrl,tgt,energy_hartree,error_cm1"]
    for s in result.trace.steps:
        trace_lines.append(f"{s.step},{s.block},{s.ctrl},{s.tgt},{_fmt(s.energy)},{_fmt(s.error_cm1)}")
    ws.write_text("search_trace.csv", "\n".join(trace_lines) + "\n")

    names = {1.0: "c1.circuit", 0.01: "c001.circuit"}
    rows = []
    for threshold, snap in result.snapshots.items():
        row = {"threshold_cm1": float(threshold), "found": int(snap is not None)}
        if snap is not None:
            row.update({
                "entanglers": snap.ansatz.n_entanglers,
                "energy_hartree": float(snap.energy),
                "error_cm1": float((snap.energy - result.trace.reference_energy) * HARTREE_TO_INV_CM),
            })
            if threshold in names:
                ws.write_text(names[threshold], format_circuit(snap.ansatz.circuit()))
        else:
            row.update({"entanglers": -1, "energy_hartree": float("nan"), "error_cm1": float("nan")})
        rows.append(row)
    ws.write_text("result.csv", _result_csv(rows))
    ws.write_text("spectrum.csv", _spectrum_csv([result.trace.reference_energy]))


def _task_plan(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    spec = _truncation_spec(config)
    plan = full_plan(h, spec)
    ws.write_text("plan.txt", format_plan(plan))
    comp = plan_complexity(plan)
    ws.write_text("result.csv", _result_csv([{
        "s": spec.s, "r": spec.r, "streamlined": int(spec.streamlined),
        "num_bases": comp.num_bases, "bound_num_bases": comp.bound_num_bases,
        "max_circuit_depth": comp.max_circuit_depth,
    }]))


def _task_verify_plan(config: RunConfig, ws: _Workspace) -> None:
    plan_path = config.opt("plan", config.outdir / "plan.txt")
    if not Path(plan_path).is_file():
        raise ConfigError(f"[task] plan file not found: {plan_path}")
    imported = load_plan(plan_path)
    h = assemble(config.grid, config.potential)
    spec = _truncation_spec(config)
    rebuilt = full_plan(h, spec)
    dev_plan = float(np.max(np.abs(plan_to_matrix(imported) - plan_to_matrix(rebuilt))))
    dev_truncation = float(np.max(np.abs(
        plan_to_matrix(imported) - truncate(h, spec.s, spec.r, spec.streamlined)
    )))
    ws.write_text("result.csv", _result_csv([{
        "max_abs_deviation_vs_rebuild": dev_plan,
        "max_abs_deviation_vs_truncation": dev_truncation,
    }]))


def _task_measure(config: RunConfig, ws: _Workspace) -> None:
    h = assemble(config.grid, config.potential)
    spec = _truncation_spec(config)
    plan_path = config.opt("plan")
    plan = load_plan(plan_path) if plan_path else full_plan(h, spec)

    circuit_path = config.opt("circuit")
    if circuit_path is None:
        raise ConfigError("[task] measure needs a 'circuit' file for the state")
    circuit = load_circuit(circuit_path)
    params_path = config.opt("params")
    if circuit.n_slots and params_path is None:
        raise ConfigError("[task] measure needs a 'params' file for the circuit's slots")
    params = None
    if params_path is not None:
        values = [float(line) for line in Path(params_path).read_text().split()]
        params = np.array(values)
    state = run_circuit(circuit, params)

    shots = config.opt("shots", spec.default_shots())
    exact = evaluate_exact(plan, state)
    sampled = evaluate_sampled(plan, state, shots, config.seed)
    energy = float(np.vdot(state, h.full @ state).real)
    comp = plan_complexity(full_plan(h, spec)) if plan_path else plan_complexity(plan)

    lines = ["quantity,value"]
    lines.append(f"tau_exact,{_fmt(exact)}")
    lines.append(f"tau_sampled,{_fmt(sampled.estimate)}")
    lines.append(f"std_error,{_fmt(sampled.std_error)}")
    lines.append(f"energy_dense,{_fmt(energy)}")
    lines.append(f"shots_per_basis,{shots}")
    lines.append(f"num_bases,{comp.num_bases}")
    lines.append(f"bound_num_bases,{comp.bound_num_bases}")
    lines.append(f"bases_within_bound,{int(comp.num_bases <= comp.bound_num_bases)}")
    ws.write_text("result.csv", "\n".join(lines) + "\n")

    per_basis = ["basis,shots,estimate,std_error"]
    for row in sampled.per_basis:
        per_basis.append(f"{row.label},{row.shots},{_fmt(row.estimate)},{_fmt(row.std_error)}")
    ws.write_text("measure_bases.csv", "\n".join(per_basis) + "\n")


_TASK_RUNNERS = {
    "diag": _task_diag,
    "decompose": _task_decompose,
    "vqe": _task_vqe,
    "excited": _task_excited,
    "search": _task_search,
    "plan": _task_plan,
    "verify-plan": _task_verify_plan,
    "measure": _task_measure,
}


def run_config(config: RunConfig) -> Path:
    ws = _Workspace(config.outdir)
    _TASK_RUNNERS[config.task](config, ws)
    ws.finish()
    return ws.outdir / "manifest"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dvrvqe",
        description="DVR Hamiltonians, simulated VQE, and measurement plans for 1D vibrational problems.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    run_parser = sub.add_parser("run", help="run the task named in the config file")
    run_parser.add_argument("config")
    for task in _TASK_RUNNERS:
        task_parser = sub.add_parser(task, help=f"run the {task} task on a config")
        task_parser.add_argument("config")
        task_parser.add_argument("--out", default=None, help="output directory override")
        task_parser.add_argument("--seed", type=int, default=None, help="seed override")

    args = parser.parse_args(argv)
    task_override = None if args.command == "run" else args.command
    seed_override = getattr(args, "seed", None)
    outdir_override = getattr(args, "out", None)

    try:
        config = load_config(args.config, task_override, seed_override, outdir_override)
        manifest = run_config(config)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # numeric or I/O failure
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {manifest.parent}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
