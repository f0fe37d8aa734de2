"""Batch scenarios: TOML parsing, validation, execution, CSV emission.

A scenario file is a small TOML document selecting one computation kind,
one model, its parameters, and grid/sweep settings. Scenarios are plain
frozen dataclasses: parse -> serialize -> parse round-trips exactly, and a
given scenario always produces a byte-identical CSV body (the timestamp
header line is the only run-dependent output).
"""

from __future__ import annotations

import dataclasses
import datetime
import io
import json
from dataclasses import dataclass
from typing import Any

import numpy as np

try:
    import tomllib  # Python >= 3.11
except ModuleNotFoundError:  # pragma: no cover - depends on interpreter
    import tomli as tomllib

from . import __version__
from .floquet import DriveSpec, complexity_vs_cycles, floquet_sweep
from .models import ModelKind, Params, make_params, model_by_name
from .numerics import MomentumGrid, default_grid
from .spread import (
    QuenchSchedule,
    QuenchSegment,
    complexity_derivative_sweep,
    quench_complexity,
)
from .workstats import work_stats_derivative_sweep

KINDS = (
    "ground-sweep",
    "quench",
    "multiquench",
    "floquet-vs-n",
    "floquet-sweep",
    "work-sweep",
)


class ScenarioError(ValueError):
    """Scenario file violates the schema; message carries the field path."""


@dataclass(frozen=True)
class RunTable:
    """Columnar result of one scenario run."""

    columns: tuple[tuple[str, np.ndarray], ...]


@dataclass(frozen=True)
class GroundSweepScenario:
    kind = "ground-sweep"
    model: ModelKind
    params: Params
    axis: str
    start: float
    stop: float
    step: float

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        sweep = complexity_derivative_sweep(
            self.model, self.params, self.axis, self.start, self.stop, self.step,
            grid=grid, threads=threads,
        )
        return RunTable((
            (self.axis, sweep.axis),
            ("complexity", sweep.value),
            (f"dcomplexity_d{self.axis}", sweep.derivative),
        ))


@dataclass(frozen=True)
class QuenchScenario:
    kind = "quench"
    model: ModelKind
    initial: Params
    final: Params
    t_max: float
    samples: int

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        schedule = QuenchSchedule.single(self.model, self.initial, self.final, self.t_max)
        curve = quench_complexity(schedule, samples=self.samples, grid=grid)
        return RunTable((("time", curve.times), ("complexity", curve.complexity)))


@dataclass(frozen=True)
class MultiQuenchScenario:
    kind = "multiquench"
    model: ModelKind
    initial: Params
    segments: tuple[tuple[Params, float], ...]
    samples: int

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        schedule = QuenchSchedule(
            self.model,
            self.initial,
            tuple(QuenchSegment(p, d) for p, d in self.segments),
        )
        curve = quench_complexity(schedule, samples=self.samples, grid=grid)
        return RunTable((("time", curve.times), ("complexity", curve.complexity)))


@dataclass(frozen=True)
class FloquetVsNScenario:
    kind = "floquet-vs-n"
    model: ModelKind
    base: Params
    delta: float
    period: float
    n_cycles: int
    steps_per_period: int

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        drive = DriveSpec(self.model, self.base, self.delta, self.period, self.n_cycles)
        curve = complexity_vs_cycles(drive, grid, self.steps_per_period)
        return RunTable((("n", curve.cycles.astype(float)), ("complexity", curve.complexity)))


@dataclass(frozen=True)
class FloquetSweepScenario:
    kind = "floquet-sweep"
    model: ModelKind
    base: Params
    axis: str
    start: float
    stop: float
    step: float
    delta: float
    period: float
    n_cycles: int
    steps_per_period: int

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        sweep = floquet_sweep(
            self.model, self.base, self.axis, self.start, self.stop, self.step,
            self.delta, self.period, self.n_cycles,
            grid=grid, steps_per_period=self.steps_per_period, threads=threads,
        )
        return RunTable((
            (self.axis, sweep.axis),
            ("complexity", sweep.value),
            (f"dcomplexity_d{self.axis}", sweep.derivative),
        ))


@dataclass(frozen=True)
class WorkSweepScenario:
    kind = "work-sweep"
    model: ModelKind
    initial: Params
    final: Params
    axis: str
    start: float
    stop: float
    step: float

    def run(self, grid: MomentumGrid, threads: int = 1) -> RunTable:
        sweeps = work_stats_derivative_sweep(
            self.model, self.initial, self.final, self.axis,
            self.start, self.stop, self.step, grid=grid, threads=threads,
        )
        return RunTable((
            (self.axis, sweeps.mean.axis),
            ("work_mean", sweeps.mean.value),
            (f"dwork_mean_d{self.axis}", sweeps.mean.derivative),
            ("work_variance", sweeps.variance.value),
            (f"dwork_variance_d{self.axis}", sweeps.variance.derivative),
        ))


Scenario = (
    GroundSweepScenario
    | QuenchScenario
    | MultiQuenchScenario
    | FloquetVsNScenario
    | FloquetSweepScenario
    | WorkSweepScenario
)


# ---------------------------------------------------------------------------
# parsing


def _get(data: dict, path: str, key: str, expected: type | tuple, required: bool = True, default=None):
    if key not in data:
        if required:
            raise ScenarioError(f"{path}.{key}: missing required field")
        return default
    value = data[key]
    if expected is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, expected) or isinstance(value, bool) and expected is not bool:
        name = expected.__name__ if isinstance(expected, type) else "/".join(t.__name__ for t in expected)
        raise ScenarioError(f"{path}.{key}: expected {name}, got {type(value).__name__}")
    return value


def _parse_params(model: ModelKind, data: Any, path: str) -> Params:
    if not isinstance(data, dict):
        raise ScenarioError(f"{path}: expected a table of parameter values")
    for key, value in data.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ScenarioError(f"{path}.{key}: expected a number, got {type(value).__name__}")
    try:
        return make_params(model, data)
    except (ValueError, TypeError) as exc:
        raise ScenarioError(f"{path}: {exc}") from None


def _parse_sweep(data: dict, path: str) -> tuple[str, float, float, float]:
    sweep = _get(data, path, "sweep", dict)
    axis = _get(sweep, f"{path}.sweep", "axis", str)
    start = _get(sweep, f"{path}.sweep", "start", float)
    stop = _get(sweep, f"{path}.sweep", "stop", float)
    step = _get(sweep, f"{path}.sweep", "step", float)
    if step <= 0 or stop <= start:
        raise ScenarioError(f"{path}.sweep: need step > 0 and stop > start")
    return axis, start, stop, step


def _parse_drive(data: dict, path: str) -> tuple[float, float, int, int]:
    drive = _get(data, path, "drive", dict)
    p = f"{path}.drive"
    delta = _get(drive, p, "delta", float)
    period = _get(drive, p, "period", float)
    n_cycles = _get(drive, p, "n_cycles", int)
    steps = _get(drive, p, "steps_per_period", int, required=False, default=256)
    return delta, period, n_cycles, steps


def parse_scenario(data: dict, source: str = "scenario") -> Scenario:
    """Validate a parsed TOML document and build the typed scenario."""
    kind = _get(data, source, "kind", str)
    if kind not in KINDS:
        raise ScenarioError(f"{source}.kind: unknown kind {kind!r}; choose from {list(KINDS)}")
    model_name = _get(data, source, "model", str)
    try:
        model = model_by_name(model_name)
    except ValueError as exc:
        raise ScenarioError(f"{source}.model: {exc}") from None
    params = _get(data, source, "params", dict)
    ppath = f"{source}.params"

    if kind == "ground-sweep":
        axis, start, stop, step = _parse_sweep(data, source)
        return GroundSweepScenario(model, _parse_params(model, params, ppath), axis, start, stop, step)

    if kind == "quench":
        initial = _parse_params(model, _get(params, ppath, "initial", dict), f"{ppath}.initial")
        final = _parse_params(model, _get(params, ppath, "final", dict), f"{ppath}.final")
        time_tab = _get(data, source, "time", dict)
        t_max = _get(time_tab, f"{source}.time", "t_max", float)
        samples = _get(time_tab, f"{source}.time", "samples", int, required=False, default=500)
        if t_max <= 0:
            raise ScenarioError(f"{source}.time.t_max: must be positive")
        return QuenchScenario(model, initial, final, t_max, samples)

    if kind == "multiquench":
        initial = _parse_params(model, _get(params, ppath, "initial", dict), f"{ppath}.initial")
        raw_segments = _get(data, source, "segments", list)
        if not raw_segments:
            raise ScenarioError(f"{source}.segments: need at least one segment")
        segments = []
        for i, seg in enumerate(raw_segments):
            spath = f"{source}.segments[{i}]"
            if not isinstance(seg, dict):
                raise ScenarioError(f"{spath}: expected a table")
            duration = _get(seg, spath, "duration", float)
            if duration <= 0:
                raise ScenarioError(f"{spath}.duration: must be positive")
            seg_params = _parse_params(model, _get(seg, spath, "params", dict), f"{spath}.params")
            segments.append((seg_params, duration))
        time_tab = _get(data, source, "time", dict, required=False, default={})
        samples = _get(time_tab, f"{source}.time", "samples", int, required=False, default=500)
        return MultiQuenchScenario(model, initial, tuple(segments), samples)

    if kind == "floquet-vs-n":
        base = _parse_params(model, _get(params, ppath, "base", dict), f"{ppath}.base")
        delta, period, n_cycles, steps = _parse_drive(data, source)
        return FloquetVsNScenario(model, base, delta, period, n_cycles, steps)

    if kind == "floquet-sweep":
        base = _parse_params(model, _get(params, ppath, "base", dict), f"{ppath}.base")
        delta, period, n_cycles, steps = _parse_drive(data, source)
        axis, start, stop, step = _parse_sweep(data, source)
        return FloquetSweepScenario(
            model, base, axis, start, stop, step, delta, period, n_cycles, steps
        )

    # work-sweep
    initial = _parse_params(model, _get(params, ppath, "initial", dict), f"{ppath}.initial")
    final = _parse_params(model, _get(params, ppath, "final", dict), f"{ppath}.final")
    axis, start, stop, step = _parse_sweep(data, source)
    return WorkSweepScenario(model, initial, final, axis, start, stop, step)


def load_scenario(path: str) -> Scenario:
    with open(path, "rb") as fh:
        try:
            data = tomllib.load(fh)
        except tomllib.TOMLDecodeError as exc:
            raise ScenarioError(f"{path}: not valid TOML: {exc}") from None
    return parse_scenario(data, source=path)


# ---------------------------------------------------------------------------
# serialization


def _params_dict(p: Params) -> dict[str, float]:
    return {f.name: getattr(p, f.name) for f in dataclasses.fields(p)}


def scenario_to_dict(s: Scenario) -> dict:
    """Canonical nested-dict form (the TOML document structure)."""
    out: dict[str, Any] = {"kind": s.kind, "model": s.model.name}
    if isinstance(s, GroundSweepScenario):
        out["params"] = _params_dict(s.params)
        out["sweep"] = {"axis": s.axis, "start": s.start, "stop": s.stop, "step": s.step}
    elif isinstance(s, QuenchScenario):
        out["params"] = {"initial": _params_dict(s.initial), "final": _params_dict(s.final)}
        out["time"] = {"t_max": s.t_max, "samples": s.samples}
    elif isinstance(s, MultiQuenchScenario):
        out["params"] = {"initial": _params_dict(s.initial)}
        out["segments"] = [
            {"duration": d, "params": _params_dict(p)} for p, d in s.segments
        ]
        out["time"] = {"samples": s.samples}
    elif isinstance(s, FloquetVsNScenario):
        out["params"] = {"base": _params_dict(s.base)}
        out["drive"] = {
            "delta": s.delta, "period": s.period,
            "n_cycles": s.n_cycles, "steps_per_period": s.steps_per_period,
        }
    elif isinstance(s, FloquetSweepScenario):
        out["params"] = {"base": _params_dict(s.base)}
        out["drive"] = {
            "delta": s.delta, "period": s.period,
            "n_cycles": s.n_cycles, "steps_per_period": s.steps_per_period,
        }
        out["sweep"] = {"axis": s.axis, "start": s.start, "stop": s.stop, "step": s.step}
    elif isinstance(s, WorkSweepScenario):
        out["params"] = {"initial": _params_dict(s.initial), "final": _params_dict(s.final)}
        out["sweep"] = {"axis": s.axis, "start": s.start, "stop": s.stop, "step": s.step}
    else:  # pragma: no cover
        raise TypeError(f"unknown scenario type {type(s)}")
    return out


def _toml_value(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    if isinstance(v, str):
        return json.dumps(v)
    raise TypeError(f"cannot serialize {type(v)} to TOML")


def _emit_table(buf: io.StringIO, table: dict, prefix: str) -> None:
    scalars = {k: v for k, v in table.items() if not isinstance(v, (dict, list))}
    subtables = {k: v for k, v in table.items() if isinstance(v, dict)}
    arrays = {k: v for k, v in table.items() if isinstance(v, list)}
    for k, v in scalars.items():
        buf.write(f"{k} = {_toml_value(v)}\n")
    for k, v in subtables.items():
        name = f"{prefix}{k}"
        buf.write(f"\n[{name}]\n")
        _emit_table(buf, v, f"{name}.")
    for k, items in arrays.items():
        for item in items:
            name = f"{prefix}{k}"
            buf.write(f"\n[[{name}]]\n")
            _emit_table(buf, item, f"{name}.")


def scenario_to_toml(s: Scenario) -> str:
    """TOML text that parses back to an identical scenario."""
    buf = io.StringIO()
    _emit_table(buf, scenario_to_dict(s), "")
    return buf.getvalue()


# ---------------------------------------------------------------------------
# execution and CSV output


def format_float(x: float) -> str:
    """Full double precision: 17 significant digits."""
    return f"{x:.17g}"


def run_scenario(
    scenario: Scenario,
    out_path: str,
    grid_n: int | None = None,
    threads: int = 1,
) -> str:
    """Execute one scenario and write its CSV; returns the output path."""
    grid = default_grid(grid_n) if grid_n else default_grid()
    table = scenario.run(grid, threads=threads)
    timestamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
    with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# spreadchain {__version__}\n")
        fh.write(f"# timestamp: {timestamp}\n")
        fh.write(f"# grid: k_intervals={grid.n_intervals}\n")
        fh.write("# scenario:\n")
        for line in scenario_to_toml(scenario).splitlines():
            fh.write(f"#   {line}\n")
        names = [name for name, _ in table.columns]
        fh.write(",".join(names) + "\n")
        data = np.column_stack([col for _, col in table.columns])
        for row in data:
            fh.write(",".join(format_float(x) for x in row) + "\n")
    return out_path


def write_manifest(
    path: str,
    outputs: list[str],
    grid_n: int | None,
    threads: int,
    scenarios: list[tuple[str, Scenario]],
) -> str:
    doc = {
        "tool": "spreadchain",
        "version": __version__,
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds"),
        "grid_k_intervals": grid_n or default_grid().n_intervals,
        "threads": threads,
        "runs": [
            {"label": label, "output": out, "scenario": scenario_to_dict(s)}
            for (label, s), out in zip(scenarios, outputs)
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path
