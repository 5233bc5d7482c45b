"""Problem, result and trace files (JSON; reals written with 17 significant digits)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .disk import Arc, BlaschkeProduct, Partition, separation_constant
from .interpolation import FipProblem, InterpolationProblem
from .solver import SolverConfig, TraceStep, resolve_anchors

MODES = ("partition", "interpolation", "fip")

_COMMON = {"mode", "C", "pi"}
_ALLOWED = {
    "partition": _COMMON | {"arcs", "epsilon", "anchors", "R_override", "max_iterations"},
    "interpolation": _COMMON | {"nodes", "beta", "s", "m"},
    "fip": _COMMON | {"nodes", "targets"},
}


class ProblemError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"field '{field_name}': {message}")
        self.field = field_name


@dataclass
class ProblemFile:
    mode: str
    C: float
    partition: Optional[Partition] = None
    config: Optional[SolverConfig] = None
    interpolation: Optional[InterpolationProblem] = None
    fip: Optional[FipProblem] = None

    @property
    def N(self) -> int:
        if self.mode == "partition":
            return len(self.partition)
        if self.mode == "interpolation":
            return self.interpolation.N
        return len(self.fip.nodes)


def _real(data: dict, key: str, default=None, lo=None, hi=None):
    if key not in data:
        if default is None:
            raise ProblemError(key, "missing")
        return default
    v = data[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ProblemError(key, f"expected a finite number, got {v!r}")
    v = float(v)
    if (lo is not None and v < lo) or (hi is not None and v >= hi):
        raise ProblemError(key, f"value {v!r} out of range")
    return v


def _angle_list(data: dict, key: str, scale: float) -> list:
    v = data.get(key)
    if not isinstance(v, list) or not v:
        raise ProblemError(key, "expected a non-empty list of angles")
    out = []
    for i, x in enumerate(v):
        if isinstance(x, bool) or not isinstance(x, (int, float)) or not math.isfinite(x):
            raise ProblemError(f"{key}[{i}]", f"expected a finite number, got {x!r}")
        out.append(float(x) * scale)
    return out


def _complex(v, name: str) -> complex:
    if not isinstance(v, dict) or set(v) != {"re", "im"}:
        raise ProblemError(name, "expected an object with exactly 're' and 'im'")
    try:
        return complex(_real(v, "re"), _real(v, "im"))
    except ProblemError as exc:
        raise ProblemError(f"{name}.{exc.field}", str(exc).split(": ", 1)[1]) from None


def parse_problem(data) -> ProblemFile:
    if not isinstance(data, dict):
        raise ProblemError("<root>", "expected a JSON object")
    mode = data.get("mode", "partition")
    if mode not in MODES:
        raise ProblemError("mode", f"expected one of {MODES}, got {mode!r}")
    unknown = sorted(set(data) - _ALLOWED[mode])
    if unknown:
        raise ProblemError(unknown[0], f"unknown field for mode '{mode}'")
    if not isinstance(data.get("pi", False), bool):
        raise ProblemError("pi", "expected true or false")
    scale = math.pi if data.get("pi", False) else 1.0
    C = _real(data, "C", 0.5, 0.0, 1.0)

    if mode == "partition":
        arcs_raw = data.get("arcs")
        if not isinstance(arcs_raw, list) or not arcs_raw:
            raise ProblemError("arcs", "expected a non-empty list of {start, end}")
        arcs = []
        for i, a in enumerate(arcs_raw):
            if not isinstance(a, dict) or set(a) != {"start", "end"}:
                raise ProblemError(f"arcs[{i}]", "expected an object with exactly 'start' and 'end'")
            try:
                arcs.append(Arc(_real(a, "start") * scale, _real(a, "end") * scale))
            except ProblemError as exc:
                raise ProblemError(f"arcs[{i}].{exc.field}", "expected a finite number") from None
        try:
            partition = Partition(tuple(arcs))
        except ValueError as exc:
            raise ProblemError("arcs", str(exc)) from None
        anchors = None
        if "anchors" in data and data["anchors"] is not None:
            anchors = _angle_list(data, "anchors", scale)
        R_override = None
        if data.get("R_override") is not None:
            R_override = _real(data, "R_override", lo=0.0, hi=1.0)
        max_it = data.get("max_iterations", 100_000)
        if isinstance(max_it, bool) or not isinstance(max_it, int) or max_it < 1:
            raise ProblemError("max_iterations", f"expected a positive integer, got {max_it!r}")
        epsilon = _real(data, "epsilon", 1e-6)
        if epsilon <= 0.0:
            raise ProblemError("epsilon", "must be positive")
        config = SolverConfig(C=C, epsilon=epsilon, max_iterations=max_it, anchors=anchors, R_override=R_override)
        if anchors is not None:
            try:
                resolve_anchors(partition, anchors)
            except ValueError as exc:
                raise ProblemError("anchors", str(exc)) from None
        return ProblemFile(mode, C, partition=partition, config=config)

    nodes = _angle_list(data, "nodes", scale)
    if mode == "interpolation":
        if "beta" not in data:
            raise ProblemError("beta", "missing")
        beta = _complex(data["beta"], "beta")
        s = m = None
        if "s" in data or "m" in data:
            s = _real(data, "s", lo=0.0, hi=1.0)
            m = data.get("m")
            if isinstance(m, bool) or not isinstance(m, int) or m < 0:
                raise ProblemError("m", f"expected a non-negative integer, got {m!r}")
        if abs(abs(beta) - 1.0) > 1e-12:
            raise ProblemError("beta", "must lie on the unit circle")
        if abs(beta - 1.0) <= 1e-12:
            raise ProblemError("beta", "must lie on the unit circle minus {1}")
        try:
            problem = InterpolationProblem(tuple(nodes), beta, C=C, s=s, m=m)
        except ValueError as exc:
            raise ProblemError("nodes", str(exc)) from None
        return ProblemFile(mode, C, interpolation=problem)

    raw = data.get("targets")
    if not isinstance(raw, list):
        raise ProblemError("targets", "expected a list of {re, im}")
    targets = [_complex(t, f"targets[{i}]") for i, t in enumerate(raw)]
    try:
        problem = FipProblem(tuple(nodes), tuple(targets))
    except ValueError as exc:
        raise ProblemError("nodes" if "node" in str(exc) else "targets", str(exc)) from None
    return ProblemFile(mode, C, fip=problem)


def load_problem(path) -> ProblemFile:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemError("<root>", f"invalid JSON: {exc}") from None
    return parse_problem(data)


def _fmt(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            raise ValueError(f"cannot serialize non-finite value {x!r}")
        return format(x, ".17g")
    if isinstance(x, str):
        return json.dumps(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj, indent: Optional[int] = 2, _level: int = 0) -> str:
    """JSON text with every float printed to 17 significant digits."""
    if isinstance(obj, np.ndarray):
        obj = obj.tolist()
    if isinstance(obj, (dict, list, tuple)):
        items = list(obj.items()) if isinstance(obj, dict) else list(obj)
        open_, close = ("{", "}") if isinstance(obj, dict) else ("[", "]")
        if not items:
            return open_ + close
        parts = []
        for it in items:
            if isinstance(obj, dict):
                k, v = it
                parts.append(json.dumps(str(k)) + ": " + dumps(v, indent, _level + 1))
            else:
                parts.append(dumps(it, indent, _level + 1))
        if indent is None:
            return open_ + ", ".join(parts) + close
        pad = "\n" + " " * (indent * (_level + 1))
        return open_ + pad + ("," + pad).join(parts) + "\n" + " " * (indent * _level) + close
    return _fmt(obj)


def product_record(B: BlaschkeProduct) -> dict:
    return {
        "rotation": {"re": B.rotation.real, "im": B.rotation.imag},
        "zeros": [
            {"re": z.real, "im": z.imag, "radius": abs(z), "angle": math.atan2(z.imag, z.real)}
            for z in B.zeros
        ],
    }


def result_record(B: BlaschkeProduct, measures, delta: float, err: float, iterations: int, converged: bool, **extra) -> dict:
    rec = product_record(B)
    rec.update(
        measures=[float(v) for v in measures],
        delta=float(delta),
        error=float(err),
        iterations=int(iterations),
        converged=bool(converged),
    )
    rec.update(extra)
    return rec


def product_from_record(rec: dict) -> BlaschkeProduct:
    try:
        rot = complex(float(rec["rotation"]["re"]), float(rec["rotation"]["im"]))
        zeros = tuple(complex(float(z["re"]), float(z["im"])) for z in rec["zeros"])
    except (KeyError, TypeError) as exc:
        raise ProblemError("zeros", f"malformed result file ({exc})") from None
    return BlaschkeProduct(zeros, rot)


def load_result(path) -> dict:
    with open(path) as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ProblemError("<root>", f"invalid JSON: {exc}") from None


def trace_line(step: TraceStep, anchors=None) -> str:
    """One compact JSON record; ``delta`` is included when the anchor angles are known."""
    rec = {
        "k": step.k,
        "moved_index": step.moved_index,
        "new_radius": step.new_radius,
        "radii": step.radii,
        "measures": step.measures,
        "error": step.error,
    }
    if anchors is not None:
        zeros = np.asarray(step.radii) * np.exp(1j * np.asarray(anchors))
        rec["delta"] = separation_constant(BlaschkeProduct(tuple(zeros)))
    return dumps(rec, indent=None)
