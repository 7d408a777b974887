"""Scenario execution, trace recording and property checking."""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

from acccheck.controller import ControllerConfig, ControllerState, ModeRule, PidGains, controller_step
from acccheck.ltl import Verdict, check_trace
from acccheck.patterns import PropertySpec, build_acc_stability
from acccheck.plant import ConstantSpeed, LeadProfile, SimulationError, SineSpeed, VehicleState, step_ego, step_lead

TRACE_COLUMNS = ("t", "x_ego", "v_ego", "a_ego", "x_lead", "v_lead", "d_rel", "d_safe", "mode")
BUNDLED_SCENARIOS = ("case1", "case2", "case3", "fig1_sine")
GROUND_TRUTH = {"case1": True, "case2": True, "case3": False}


class SchemaError(ValueError):
    pass


def kmh_to_ms(v: float) -> float:
    if v < 0:
        raise ValueError(f"speed must be non-negative, got {v}")
    return v / 3.6


@dataclass(frozen=True)
class ScenarioConfig:
    id: str
    v0_ego: float  # km/h
    v0_lead: float  # km/h
    x0_ego: float
    x0_lead: float
    controller: ControllerConfig
    lead_profile: LeadProfile
    dt: float = 0.1
    horizon: float = 45.0
    description: str = ""

    def __post_init__(self) -> None:
        if not self.x0_lead > self.x0_ego:
            raise ValueError("lead vehicle must start ahead of the ego vehicle")
        if not self.horizon > 0:
            raise ValueError("horizon must be positive")
        if not self.dt > 0:
            raise ValueError("dt must be positive")

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt))

    def to_dict(self) -> dict[str, Any]:
        ctrl = asdict(self.controller)
        ctrl["mode_rule"] = self.controller.mode_rule.value
        if isinstance(self.lead_profile, SineSpeed):
            profile = {"kind": "sine", **asdict(self.lead_profile)}
        else:
            profile = {"kind": "constant", **asdict(self.lead_profile)}
        return {
            "id": self.id,
            "description": self.description,
            "v0_ego": self.v0_ego,
            "v0_lead": self.v0_lead,
            "x0_ego": self.x0_ego,
            "x0_lead": self.x0_lead,
            "dt": self.dt,
            "horizon": self.horizon,
            "lead_profile": profile,
            "controller": ctrl,
        }

    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioConfig":
        data = dict(data)
        v0_ego = float(data["v0_ego"])
        v0_lead = float(data["v0_lead"])

        ctrl = dict(data.get("controller", {}))
        ctrl.setdefault("V_set", data.get("V_set", kmh_to_ms(v0_ego)))
        for key in ("speed_pid", "space_pid"):
            if key in ctrl:
                ctrl[key] = PidGains(**ctrl[key])
        if "mode_rule" in ctrl:
            ctrl["mode_rule"] = ModeRule(ctrl["mode_rule"])
        controller = ControllerConfig(**ctrl)

        prof = dict(data.get("lead_profile") or {"kind": "constant", "v0": kmh_to_ms(v0_lead)})
        kind = prof.pop("kind", "constant")
        if kind == "constant":
            profile: LeadProfile = ConstantSpeed(**prof)
        elif kind == "sine":
            profile = SineSpeed(**prof)
        else:
            raise ValueError(f"unknown lead profile kind {kind!r}")

        return cls(
            id=str(data["id"]),
            v0_ego=v0_ego,
            v0_lead=v0_lead,
            x0_ego=float(data["x0_ego"]),
            x0_lead=float(data["x0_lead"]),
            controller=controller,
            lead_profile=profile,
            dt=float(data.get("dt", 0.1)),
            horizon=float(data.get("horizon", 45.0)),
            description=str(data.get("description", "")),
        )


def load_scenario(name_or_path: Union[str, Path]) -> ScenarioConfig:
    """Load a bundled scenario by name (``case1`` ...) or a JSON file by path."""
    name = str(name_or_path)
    if name in BUNDLED_SCENARIOS:
        text = resources.files("acccheck.scenarios").joinpath(f"{name}.json").read_text()
    else:
        text = Path(name).read_text()
    return ScenarioConfig.from_dict(json.loads(text))


@dataclass(frozen=True)
class Sample:
    t: float
    x_ego: float
    v_ego: float
    a_ego: float
    x_lead: float
    v_lead: float
    d_rel: float
    d_safe: float
    mode: int

    def as_row(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in TRACE_COLUMNS}


@dataclass
class Trace:
    samples: list[Sample]
    collision: Optional[float] = None
    fingerprint: str = ""

    def __len__(self) -> int:
        return len(self.samples)

    def column(self, name: str) -> list[float]:
        return [getattr(s, name) for s in self.samples]

    def rows(self) -> list[dict[str, float]]:
        return [s.as_row() for s in self.samples]

    def mode_switches(self) -> int:
        modes = self.column("mode")
        return sum(1 for a, b in zip(modes, modes[1:]) if a != b)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(TRACE_COLUMNS) + "\n")
        for s in self.samples:
            buf.write(",".join(_fmt(getattr(s, c)) for c in TRACE_COLUMNS) + "\n")
        if self.collision is not None:
            buf.write(f"# collision t={_fmt(self.collision)}\n")
        return buf.getvalue()

    def write_csv(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.to_csv())

    @classmethod
    def from_csv(cls, text: str) -> "Trace":
        lines = text.splitlines()
        collision = None
        body = []
        for line in lines:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition("=")
                if key.strip() == "collision t":
                    collision = float(value)
                continue
            if line.strip():
                body.append(line)
        reader = csv.DictReader(body)
        if tuple(reader.fieldnames or ()) != TRACE_COLUMNS:
            raise SchemaError(f"unexpected trace header {reader.fieldnames}; expected {TRACE_COLUMNS}")
        samples = []
        for row in reader:
            values = {k: float(v) for k, v in row.items()}
            values["mode"] = int(values["mode"])
            samples.append(Sample(**values))
        return cls(samples, collision)

    @classmethod
    def read_csv(cls, path: Union[str, Path]) -> "Trace":
        return cls.from_csv(Path(path).read_text())


def _fmt(value: float) -> str:
    if isinstance(value, int):
        return str(value)
    return repr(float(value))


def run_scenario(cfg: ScenarioConfig) -> Trace:
    """Closed-loop simulation from t=0 to the horizon, stopping at contact."""
    ctrl_cfg = cfg.controller
    ego = VehicleState(cfg.x0_ego, kmh_to_ms(cfg.v0_ego))
    lead = VehicleState(cfg.x0_lead, cfg.lead_profile.speed(0.0))
    ctrl = ControllerState()

    samples: list[Sample] = []
    collision = None
    n = cfg.steps
    for k in range(n + 1):
        t = k * cfg.dt
        out, ctrl = controller_step(ctrl_cfg, ctrl, ego.x, ego.v, lead.x, cfg.dt)
        sample = Sample(t, ego.x, ego.v, out.a_cmd, lead.x, lead.v, out.d_rel, out.d_safe, int(out.mode))
        if not all(math.isfinite(getattr(sample, c)) for c in TRACE_COLUMNS):
            raise SimulationError(f"non-finite sample at t={t}: {sample}")
        samples.append(sample)
        if out.d_rel <= 0:
            collision = t
            break
        if k < n:
            ego = step_ego(ego, out.a_cmd, cfg.dt)
            lead = step_lead(t, cfg.lead_profile, lead, cfg.dt)
    return Trace(samples, collision, cfg.fingerprint())


def run_batch(configs: Sequence[ScenarioConfig], max_workers: int = 1) -> dict[str, Trace]:
    if max_workers > 1:
        with ProcessPoolExecutor(max_workers=max_workers) as pool:
            traces = list(pool.map(run_scenario, configs))
    else:
        traces = [run_scenario(c) for c in configs]
    return {c.id: tr for c, tr in sorted(zip(configs, traces), key=lambda p: p[0].id)}


def check_scenario(trace: Trace, spec) -> Verdict:
    """Check a property (anything with ``formula`` and ``atoms``) on a simulated trace.

    A trace that ends in a collision never satisfies the property; the stutter
    extension of a crashed state would otherwise be judged on a meaningless gap.
    """
    for pred in spec.atoms.values():
        pred.validate(TRACE_COLUMNS)
    if not trace.samples:
        raise ValueError("empty trace")

    if trace.collision is not None:
        last = len(trace) - 1
        return Verdict(False, counterexample_index=last, diagnostics={
            "collision": True,
            "collision_time": trace.collision,
        })

    verdict = check_trace(spec.formula, trace.rows(), spec.atoms)
    verdict.diagnostics["collision"] = False
    if verdict.witness_index is not None and verdict.holds:
        t_end = trace.samples[-1].t
        t_conv = trace.samples[verdict.witness_index].t
        verdict.diagnostics["convergence_time"] = t_conv
        verdict.diagnostics["trailing_hold_duration"] = t_end - t_conv
    return verdict


@dataclass
class CaseResult:
    id: str
    ground_truth: bool
    verdict: Verdict
    trace: Trace = field(repr=False)

    @property
    def result(self) -> bool:
        return self.verdict.holds

    @property
    def match(self) -> bool:
        return self.verdict.internal_error is None and self.result == self.ground_truth


@dataclass
class Report:
    cases: list[CaseResult]
    elapsed: float = 0.0

    @property
    def all_match(self) -> bool:
        return all(c.match for c in self.cases)

    @property
    def mismatches(self) -> list[str]:
        return [c.id for c in self.cases if not c.match]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "ground_truth", "result", "match", "collision_time",
                         "convergence_time", "samples"])
        for c in self.cases:
            d = c.verdict.diagnostics
            writer.writerow([c.id, str(c.ground_truth).lower(), str(c.result).lower(),
                             str(c.match).lower(), _opt(d.get("collision_time")),
                             _opt(d.get("convergence_time")), len(c.trace)])
        return buf.getvalue()

    def format_table(self) -> str:
        lines = [f"{'ID':<8}{'Ground-Truth':>14}{'Result':>9}{'Match':>8}  Notes"]
        for c in self.cases:
            d = c.verdict.diagnostics
            if d.get("collision"):
                note = f"collision at t={d['collision_time']:.2f} s"
            elif c.verdict.internal_error:
                note = f"internal error: {c.verdict.internal_error}"
            elif "convergence_time" in d:
                note = f"settled from t={d['convergence_time']:.1f} s"
            else:
                note = "never settled"
            lines.append(f"{c.id:<8}{str(c.ground_truth).lower():>14}{str(c.result).lower():>9}"
                         f"{'yes' if c.match else 'NO':>8}  {note}")
        matched = sum(c.match for c in self.cases)
        lines.append(f"{matched}/{len(self.cases)} verdicts match ({self.elapsed:.2f} s)")
        return "\n".join(lines)


def _opt(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def reproduce_table2(configs: Optional[Iterable[ScenarioConfig]] = None,
                     spec: Optional[PropertySpec] = None,
                     ground_truth: Mapping[str, bool] = GROUND_TRUTH,
                     max_workers: int = 1) -> Report:
    """Simulate the three verdict-table cases and compare against the expected verdicts."""
    start = time.perf_counter()
    if configs is None:
        configs = [load_scenario(name) for name in GROUND_TRUTH]
    configs = list(configs)
    spec = spec or build_acc_stability()
    traces = run_batch(configs, max_workers=max_workers)
    cases = [CaseResult(cid, ground_truth[cid], check_scenario(trace, spec), trace)
             for cid, trace in traces.items()]
    return Report(cases, time.perf_counter() - start)
