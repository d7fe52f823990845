"""Run configuration: an INI file with [system], [potential], [task], [output].

Unknown sections or keys are hard errors so that a typo cannot silently
change a run. The exact schema is documented in the README; every task
draws its randomness from the single [task] seed key.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from pathlib import Path

from .constants import amu_to_me
from .grids import GridSpec, build_grid
from .potentials import HarmonicPotential, MorsePotential, load_tabulated

TASKS = ("diag", "decompose", "vqe", "excited", "search", "plan", "verify-plan", "measure")


class ConfigError(Exception):
    """Malformed configuration; message carries section/key diagnostics."""


_SYSTEM_KEYS = {"variant", "n_qubits", "mass_amu", "mass_me", "a", "b", "x_min", "dx"}
_POTENTIAL_KEYS = {"type", "well_depth", "range", "equilibrium", "force_constant", "center", "file"}
_TASK_KEYS = {
    "name", "seed", "levels", "tol", "blocks", "entangler", "v_max", "thresholds",
    "max_entanglers", "candidate_budget", "restarts", "max_iter", "epsilon", "s", "r",
    "streamlined", "shots", "plan", "circuit", "params",
}
_OUTPUT_KEYS = {"directory"}


@dataclass
class RunConfig:
    grid: GridSpec
    potential: object | None
    task: str
    seed: int
    outdir: Path
    options: dict[str, object] = field(default_factory=dict)

    def opt(self, key, default=None):
        return self.options.get(key, default)


def _check_keys(section: str, present, allowed) -> None:
    unknown = sorted(set(present) - allowed)
    if unknown:
        raise ConfigError(f"[{section}] has unknown key(s): {', '.join(unknown)}")


def _get(parser, section, key, cast, default=None, required=False):
    if not parser.has_option(section, key):
        if required:
            raise ConfigError(f"[{section}] is missing required key '{key}'")
        return default
    raw = parser.get(section, key)
    try:
        if cast is bool:
            if raw.lower() in ("true", "yes", "1", "on"):
                return True
            if raw.lower() in ("false", "no", "0", "off"):
                return False
            raise ValueError(raw)
        return cast(raw)
    except ValueError as exc:
        raise ConfigError(f"[{section}] key '{key}': cannot parse {raw!r}") from exc


def load_config(path, task_override: str | None = None, seed_override: int | None = None,
                outdir_override=None) -> RunConfig:
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    known_sections = {"system", "potential", "task", "output"}
    unknown = sorted(set(parser.sections()) - known_sections)
    if unknown:
        raise ConfigError(f"unknown section(s): {', '.join(unknown)}")
    for required_section in ("system", "task"):
        if not parser.has_section(required_section):
            raise ConfigError(f"missing required section [{required_section}]")

    _check_keys("system", parser.options("system"), _SYSTEM_KEYS)
    variant = _get(parser, "system", "variant", str, required=True)
    n_qubits = _get(parser, "system", "n_qubits", int, required=True)
    mass_amu = _get(parser, "system", "mass_amu", float)
    mass_me = _get(parser, "system", "mass_me", float)
    if (mass_amu is None) == (mass_me is None):
        raise ConfigError("[system] needs exactly one of 'mass_amu' or 'mass_me'")
    mass = amu_to_me(mass_amu) if mass_amu is not None else mass_me
    params = {}
    for key in ("a", "b", "x_min", "dx"):
        value = _get(parser, "system", key, float)
        if value is not None:
            params[key] = value
    try:
        grid = build_grid(variant, params, n_qubits, mass)
    except (ValueError, KeyError) as exc:
        raise ConfigError(f"[system]: {exc}") from exc

    potential = None
    if parser.has_section("potential"):
        _check_keys("potential", parser.options("potential"), _POTENTIAL_KEYS)
        ptype = _get(parser, "potential", "type", str, required=True)
        if ptype == "morse":
            potential = MorsePotential(
                _get(parser, "potential", "well_depth", float, required=True),
                _get(parser, "potential", "range", float, required=True),
                _get(parser, "potential", "equilibrium", float, required=True),
            )
        elif ptype == "harmonic":
            potential = HarmonicPotential(
                _get(parser, "potential", "force_constant", float, required=True),
                _get(parser, "potential", "center", float, default=0.0),
            )
        elif ptype == "tabulated":
            file_name = _get(parser, "potential", "file", str, required=True)
            file_path = Path(file_name)
            if not file_path.is_absolute():
                file_path = path.parent / file_path
            if not file_path.is_file():
                raise ConfigError(f"[potential] file not found: {file_path}")
            potential = load_tabulated(file_path)
        elif ptype == "none":
            potential = None
        else:
            raise ConfigError(f"[potential] unknown type {ptype!r}")

    _check_keys("task", parser.options("task"), _TASK_KEYS)
    task = task_override or _get(parser, "task", "name", str, required=True)
    if task not in TASKS:
        raise ConfigError(f"[task] unknown task {task!r}; expected one of {', '.join(TASKS)}")
    seed = seed_override if seed_override is not None else _get(parser, "task", "seed", int, default=0)

    options: dict[str, object] = {}
    for key, cast in (
        ("levels", int), ("tol", float), ("blocks", int), ("entangler", str),
        ("v_max", int), ("max_entanglers", int), ("candidate_budget", int),
        ("restarts", int), ("max_iter", int), ("epsilon", float), ("s", int),
        ("r", int), ("streamlined", bool), ("shots", int), ("plan", str),
        ("circuit", str), ("params", str),
    ):
        value = _get(parser, "task", key, cast)
        if value is not None:
            options[key] = value
    thresholds = _get(parser, "task", "thresholds", str)
    if thresholds is not None:
        try:
            options["thresholds"] = tuple(float(t) for t in thresholds.split())
        except ValueError as exc:
            raise ConfigError(f"[task] key 'thresholds': cannot parse {thresholds!r}") from exc
    for key in ("plan", "circuit", "params"):
        if key in options:
            file_path = Path(options[key])
            if not file_path.is_absolute():
                file_path = path.parent / file_path
            options[key] = file_path
    # entangler is either a keyword or a circuit file, resolved like the others
    if options.get("entangler") not in (None, "linear", "search"):
        entangler_path = Path(options["entangler"])
        if not entangler_path.is_absolute():
            entangler_path = path.parent / entangler_path
        options["entangler"] = entangler_path

    outdir = Path(outdir_override) if outdir_override is not None else None
    if outdir is None:
        if parser.has_section("output"):
            _check_keys("output", parser.options("output"), _OUTPUT_KEYS)
            directory = _get(parser, "output", "directory", str, default="out")
        else:
            directory = "out"
        outdir = Path(directory)
        if not outdir.is_absolute():
            outdir = path.parent / outdir

    return RunConfig(grid, potential, task, seed, outdir, options)
