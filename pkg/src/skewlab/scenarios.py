"""Parameter sweeps that reproduce the worked examples as CSV tables.

A sweep is described by a :class:`ScenarioConfig` (also loadable from JSON)
and evaluated row by row over the (alpha, theta) grid, alpha outermost.
Every row is checked for dominance: no bound may exceed the skew-information
sum by more than ``DOMINANCE_SLACK``.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .bounds import (
    DEFAULT_WEIGHTS,
    L_GE_M,
    L_GT_M,
    M_GE_L,
    WeightParams,
    all_bounds,
    build_table_observables,
    build_table_unitaries,
)
from .channels import channel_bounds
from .errors import ConfigParse, DominanceViolation, SkewlabError
from .linalg import matrix_from_json, matrix_to_json
from .quantum import (
    NAMED_CHANNELS,
    DensityMatrix,
    KrausChannel,
    Observable,
    UnitaryOperator,
    bloch_matrix,
    pauli,
    printed_u3,
    rotation_unitary,
)
from .skew import SkewParams

DOMINANCE_SLACK = 1e-9
THETA_STEPS = 200
ALPHA_GRID = {"start": 0.01, "stop": 0.99, "step": 0.02}
KINDS = ("observables", "channels", "unitaries")

OPERATOR_BOUNDS = ("prior1", "prior2", "prior3", "prior", "tight1", "tight2", "tight3", "tight")
CHANNEL_BOUNDS = ("prior1", "prior2", "prior3", "prior", "kraus1", "kraus2", "kraus3",
                  "stacked1", "stacked2", "stacked3", "optimal")


def columns_for(kind: str) -> list:
    base = ["alpha", "beta", "gamma", "theta", "sum_k"]
    if kind == "channels":
        return base + list(CHANNEL_BOUNDS) + [
            "winner", "optimal_assignment",
            "diff_optimal_prior", "diff_optimal_prior1",
            "diff_optimal_prior2", "diff_optimal_prior3"]
    return base + list(OPERATOR_BOUNDS) + [
        "winner", "diff_tight_prior", "diff_tight_prior1",
        "diff_tight_prior2", "diff_tight_prior3"]


# --- grids ----------------------------------------------------------------

def parse_grid(spec, name: str = "grid") -> np.ndarray:
    """Number, list, or ``{"start", "stop", "step"|"num"}`` -> increasing array."""
    try:
        if isinstance(spec, (int, float)):
            values = np.array([float(spec)])
        elif isinstance(spec, dict):
            start, stop = float(spec["start"]), float(spec["stop"])
            if "num" in spec:
                values = np.linspace(start, stop, int(spec["num"]))
            else:
                step = float(spec["step"])
                if step <= 0:
                    raise ConfigParse(f"{name}: step must be positive")
                count = int(math.floor((stop - start) / step + 1e-9)) + 1
                values = start + step * np.arange(max(count, 0))
        else:
            values = np.array([float(x) for x in spec])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigParse(f"{name}: malformed grid {spec!r}") from exc
    if values.size == 0:
        raise ConfigParse(f"{name}: grid is empty")
    if not np.all(np.isfinite(values)):
        raise ConfigParse(f"{name}: grid has non-finite values")
    if np.any(np.diff(values) <= 0):
        raise ConfigParse(f"{name}: grid must be strictly increasing")
    return values


def theta_grid(steps: int = THETA_STEPS) -> dict:
    if int(steps) < 1:
        raise ConfigParse("theta steps must be >= 1")
    return {"start": 0.0, "stop": 2 * math.pi, "num": int(steps) + 1}


# --- config ---------------------------------------------------------------

@dataclass
class ScenarioConfig:
    kind: str
    state: dict
    elements: list
    alpha: np.ndarray
    theta: np.ndarray
    beta: float | None = None      # None: beta = 1 - alpha
    gamma: float = 0.5
    weights: tuple = DEFAULT_WEIGHTS
    name: str = "scenario"
    output: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, obj: dict) -> "ScenarioConfig":
        if not isinstance(obj, dict):
            raise ConfigParse("scenario must be a JSON object")
        kind = obj.get("kind")
        if kind not in KINDS:
            raise ConfigParse(f"kind must be one of {KINDS}, got {kind!r}")
        for key in ("state", "elements"):
            if key not in obj:
                raise ConfigParse(f"scenario is missing {key!r}")
        params = obj.get("params", {})
        beta = params.get("beta")
        if beta in ("complement", None):
            beta = None
        else:
            try:
                beta = float(beta)
            except (TypeError, ValueError) as exc:
                raise ConfigParse(f"bad beta {beta!r}") from exc
        try:
            gamma = float(params.get("gamma", 0.5))
        except (TypeError, ValueError) as exc:
            raise ConfigParse("bad gamma") from exc
        cfg = cls(
            kind=kind,
            state=obj["state"],
            elements=list(obj["elements"]),
            alpha=parse_grid(params.get("alpha", ALPHA_GRID), "alpha"),
            theta=parse_grid(params.get("theta", theta_grid()), "theta"),
            beta=beta,
            gamma=gamma,
            weights=parse_weights(obj.get("weights", {})),
            name=str(obj.get("name", "scenario")),
            output=dict(obj.get("output", {})),
        )
        # fail early on unknown builders and bad states
        cfg.build_elements()
        cfg.state_at(float(cfg.theta[0]))
        return cfg

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "state": self.state,
            "elements": self.elements,
            "params": {
                "alpha": [float(a) for a in self.alpha],
                "beta": "complement" if self.beta is None else self.beta,
                "gamma": self.gamma,
                "theta": [float(t) for t in self.theta],
            },
            "weights": {f"{k}{i + 1}": getattr(w, k) for i, w in enumerate(self.weights)
                        for k in ("M", "L")},
            "output": self.output,
        }

    def params_at(self, alpha: float) -> SkewParams:
        beta = 1.0 - alpha if self.beta is None else self.beta
        return SkewParams(alpha, beta, self.gamma)

    def state_at(self, theta: float) -> DensityMatrix:
        st = self.state
        try:
            if "bloch" in st:
                return DensityMatrix.from_matrix(bloch_matrix(st["bloch"]))
            if "bloch_theta" in st:
                spec = st["bloch_theta"]
                xy, z = float(spec["xy"]), float(spec.get("z", 0.0))
                r = [xy * math.cos(theta), xy * math.sin(theta), z]
                return DensityMatrix.from_matrix(bloch_matrix(r))
            if "matrix" in st:
                return DensityMatrix.from_matrix(matrix_from_json(st["matrix"]))
        except (KeyError, TypeError) as exc:
            raise ConfigParse(f"malformed state {st!r}") from exc
        raise ConfigParse(f"state needs 'bloch', 'bloch_theta' or 'matrix', got {sorted(st)}")

    def build_elements(self) -> list:
        builders = {"observables": _observable, "unitaries": _unitary, "channels": _channel}
        if len(self.elements) < 2:
            raise ConfigParse("need at least two elements")
        return [builders[self.kind](spec) for spec in self.elements]


def parse_weights(obj: dict) -> tuple:
    defaults = {}
    for i, w in enumerate(DEFAULT_WEIGHTS):
        defaults[f"M{i + 1}"] = w.M
        defaults[f"L{i + 1}"] = w.L
    try:
        vals = {k: float(obj.get(k, v)) for k, v in defaults.items()}
    except (TypeError, ValueError) as exc:
        raise ConfigParse("weights must be numbers") from exc
    unknown = set(obj) - set(defaults)
    if unknown:
        raise ConfigParse(f"unknown weight keys {sorted(unknown)}")
    return (WeightParams(vals["M1"], vals["L1"], M_GE_L),
            WeightParams(vals["M2"], vals["L2"], L_GE_M),
            WeightParams(vals["M3"], vals["L3"], L_GT_M))


def _observable(spec) -> Observable:
    if "pauli" in spec:
        return pauli(int(spec["pauli"]))
    if "matrix" in spec:
        return Observable(matrix_from_json(spec["matrix"]))
    raise ConfigParse(f"unknown observable builder {spec!r}")


def _unitary(spec) -> UnitaryOperator:
    if "rotation" in spec:
        axis = spec["rotation"]
        if axis == "printed_u3":
            return printed_u3()
        return rotation_unitary(int(axis))
    if "matrix" in spec:
        return UnitaryOperator(matrix_from_json(spec["matrix"]))
    raise ConfigParse(f"unknown unitary builder {spec!r}")


def _channel(spec) -> KrausChannel:
    if "channel" in spec:
        name = spec["channel"]
        if name not in NAMED_CHANNELS:
            raise ConfigParse(f"unknown channel {name!r}")
        return NAMED_CHANNELS[name](float(spec.get("q", 0.0)))
    if "kraus" in spec:
        return KrausChannel(spec.get("name", "custom"),
                            tuple(matrix_from_json(m) for m in spec["kraus"]))
    raise ConfigParse(f"unknown channel builder {spec!r}")


# --- evaluation -----------------------------------------------------------

def _element_matrices(kind, elements) -> dict:
    if kind == "channels":
        return {f"{c.name}[{t}].kraus[{i}]": matrix_to_json(e)
                for t, c in enumerate(elements) for i, e in enumerate(c.kraus)}
    return {f"element[{t}]": matrix_to_json(e.matrix) for t, e in enumerate(elements)}


def evaluate_point(cfg: ScenarioConfig, elements: list, alpha: float, theta: float) -> dict:
    p = cfg.params_at(alpha)
    rho = cfg.state_at(theta)
    row = {"alpha": alpha, "beta": p.beta, "gamma": p.gamma, "theta": theta}
    if cfg.kind == "channels":
        rep = channel_bounds(rho, elements, p, cfg.weights)
        vals = rep.values
        row["sum_k"] = rep.total_k
        row.update({k: vals[k] for k in CHANNEL_BOUNDS})
        row["winner"] = max((k for k in CHANNEL_BOUNDS[:-1] if vals[k] is not None),
                            key=lambda k: vals[k])
        row["optimal_assignment"] = _format_assignment(rep.assignments["optimal"])
        for suffix, ref in (("prior", "prior"), ("prior1", "prior1"),
                            ("prior2", "prior2"), ("prior3", "prior3")):
            v = vals[ref]
            row[f"diff_optimal_{suffix}"] = None if v is None else vals["optimal"] - v
        bound_ids = CHANNEL_BOUNDS
    else:
        build = build_table_observables if cfg.kind == "observables" else build_table_unitaries
        table = build(rho, elements, p)
        rep = all_bounds(table, cfg.weights)
        vals = rep.values
        row["sum_k"] = rep.total_k
        row.update({k: vals[k] for k in OPERATOR_BOUNDS})
        row["winner"] = rep.winner
        for suffix in ("prior", "prior1", "prior2", "prior3"):
            v = vals[suffix]
            row[f"diff_tight_{suffix}"] = None if v is None else vals["tight"] - v
        bound_ids = OPERATOR_BOUNDS

    worst = None
    for k in bound_ids:
        v = row[k]
        if v is not None and v > row["sum_k"] + DOMINANCE_SLACK:
            worst = k
            break
    if worst is not None:
        dump = {
            "scenario": cfg.name,
            "kind": cfg.kind,
            "violated": worst,
            "row": row,
            "state": matrix_to_json(rho.matrix),
            "elements": _element_matrices(cfg.kind, elements),
        }
        raise DominanceViolation(
            f"{worst}={row[worst]!r} exceeds sum_k={row['sum_k']!r} at alpha={alpha}, theta={theta}",
            dump=dump)
    return row


def _format_assignment(assignment) -> str:
    return "|".join("".join(str(i + 1) for i in perm) for perm in assignment)


def run_scenario(cfg: ScenarioConfig) -> list:
    """Evaluate every grid point; rows ordered alpha-major, theta-minor."""
    elements = cfg.build_elements()
    rows = []
    for alpha in cfg.alpha:
        for theta in cfg.theta:
            try:
                rows.append(evaluate_point(cfg, elements, float(alpha), float(theta)))
            except DominanceViolation:
                raise
            except SkewlabError as exc:
                raise type(exc)(f"at alpha={alpha}, theta={theta}: {exc}") from exc
    return rows


def load_scenario(path) -> ScenarioConfig:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigParse(f"{path}: invalid JSON ({exc})") from exc
    return ScenarioConfig.from_dict(obj)


# --- CSV ------------------------------------------------------------------

def format_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, str):
        return v
    return format(float(v), ".17g")


def rows_to_csv(rows: Sequence[dict], columns: Sequence[str]) -> str:
    lines = [",".join(columns)]
    for row in rows:
        lines.append(",".join(format_value(row.get(c)) for c in columns))
    return "\n".join(lines) + "\n"


def write_csv(path, rows: Sequence[dict], columns: Sequence[str]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="\n") as fh:
        fh.write(rows_to_csv(rows, columns))
    return path


def read_csv(path) -> dict:
    """Column name -> list of floats (NaN for blanks); string columns are kept as str."""
    lines = Path(path).read_text().splitlines()
    header = lines[0].split(",")
    cols = {h: [] for h in header}
    for line in lines[1:]:
        for h, cell in zip(header, line.split(",")):
            try:
                cols[h].append(float(cell) if cell != "" else math.nan)
            except ValueError:
                cols[h].append(cell)
    return cols


def write_metadata(path, cfg: ScenarioConfig, extra: dict | None = None) -> Path:
    meta = {
        "scenario": cfg.to_dict(),
        "grid": {
            "alpha_points": int(cfg.alpha.size),
            "theta_points": int(cfg.theta.size),
            "order": "alpha-major, theta-minor",
        },
        "csv_format": "header row, comma separated, 17 significant digits, LF line endings",
    }
    if extra:
        meta.update(extra)
    path = Path(path)
    path.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return path


def run_to_files(cfg: ScenarioConfig, out_dir, stem: str, extra_meta: dict | None = None) -> tuple:
    rows = run_scenario(cfg)
    out_dir = Path(out_dir)
    csv_path = write_csv(out_dir / f"{stem}.csv", rows, columns_for(cfg.kind))
    write_metadata(out_dir / f"{stem}.meta.json", cfg, extra_meta)
    return rows, csv_path


# --- the three worked examples -----------------------------------------

SQRT2_2 = math.sqrt(2) / 2
SQRT3_2 = math.sqrt(3) / 2


def example1_config(alpha=ALPHA_GRID, theta=None, beta=None, gamma=0.5,
                    weights=DEFAULT_WEIGHTS) -> ScenarioConfig:
    """Pure state r = (cos t, sin t, 1) / sqrt 2 with the three Pauli observables."""
    return ScenarioConfig.from_dict({
        "name": "example1",
        "kind": "observables",
        "state": {"bloch_theta": {"xy": SQRT2_2, "z": SQRT2_2}},
        "elements": [{"pauli": 1}, {"pauli": 2}, {"pauli": 3}],
        "params": {"alpha": alpha, "beta": beta, "gamma": gamma,
                   "theta": theta if theta is not None else theta_grid()},
        "weights": _weights_dict(weights),
    })


def example2_config(alpha=0.25, q=0.3, theta=None, beta=None, gamma=0.5,
                    weights=DEFAULT_WEIGHTS) -> ScenarioConfig:
    """Mixed state r = (sqrt3/2)(cos t, sin t, 0) under amplitude damping, phase damping, bit flip."""
    return ScenarioConfig.from_dict({
        "name": "example2",
        "kind": "channels",
        "state": {"bloch_theta": {"xy": SQRT3_2, "z": 0.0}},
        "elements": [{"channel": "amplitude_damping", "q": q},
                     {"channel": "phase_damping", "q": q},
                     {"channel": "bit_flip", "q": q}],
        "params": {"alpha": alpha, "beta": beta, "gamma": gamma,
                   "theta": theta if theta is not None else theta_grid()},
        "weights": _weights_dict(weights),
    })


def example3_config(alpha=(0.2, 1 / 3), theta=None, use_printed_u3=False, beta=None,
                    gamma=0.5, weights=DEFAULT_WEIGHTS) -> ScenarioConfig:
    """State r = (sqrt2/2)(cos t, sin t, 0) with pi/4 rotations about x, y, z."""
    return ScenarioConfig.from_dict({
        "name": "example3",
        "kind": "unitaries",
        "state": {"bloch_theta": {"xy": SQRT2_2, "z": 0.0}},
        "elements": [{"rotation": 1}, {"rotation": 2},
                     {"rotation": "printed_u3" if use_printed_u3 else 3}],
        "params": {"alpha": list(alpha) if isinstance(alpha, (list, tuple)) else alpha,
                   "beta": beta, "gamma": gamma,
                   "theta": theta if theta is not None else theta_grid()},
        "weights": _weights_dict(weights),
    })


def _weights_dict(weights) -> dict:
    return {f"{k}{i + 1}": getattr(w, k) for i, w in enumerate(weights) for k in ("M", "L")}
