"""Search certificates and their JSON encoding.

Floats are written with 17 significant digits so that a parsed
certificate re-serializes to the same bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .geometry import Brick, Placement, SkewTriple, triangle_metrics

CERT_VERSION = "1"
OBJECTIVES = ("equilateral", "min-side")


@dataclass(frozen=True)
class Witness:
    brick: tuple[float, float, float]
    triple: SkewTriple
    lambdas: tuple[float, float, float]
    side_sq: float
    residual: float

    @classmethod
    def from_placement(cls, brick: Brick, placement: Placement, objective: str) -> Witness:
        m = triangle_metrics(brick, placement)
        side = m.min_sq if objective == "min-side" else m.sq_ab
        return cls(brick.sides, placement.triple, placement.lambdas, side, m.eq_residual)

    def brick_obj(self) -> Brick:
        return Brick(*self.brick)

    def placement(self) -> Placement:
        return Placement(self.triple, self.lambdas)

    def to_dict(self) -> dict:
        return {
            "brick": list(self.brick),
            "triple": self.triple.to_dict(),
            "lambdas": list(self.lambdas),
            "side_sq": self.side_sq,
            "residual": self.residual,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Witness:
        return cls(
            tuple(float(x) for x in d["brick"]),
            SkewTriple.from_dict(d["triple"]),
            tuple(float(x) for x in d["lambdas"]),
            float(d["side_sq"]),
            float(d["residual"]),
        )


@dataclass(frozen=True)
class BoundCheck:
    bound_sq: float
    satisfied: bool
    margin: float
    sharp: bool

    def to_dict(self) -> dict:
        return {
            "bound_sq": self.bound_sq,
            "satisfied": self.satisfied,
            "margin": self.margin,
            "sharp": self.sharp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> BoundCheck:
        return cls(float(d["bound_sq"]), bool(d["satisfied"]), float(d["margin"]), bool(d["sharp"]))


@dataclass(frozen=True)
class Match:
    witness_index: int
    optimum_id: str

    def to_dict(self) -> dict:
        return {"witness_index": self.witness_index, "optimum_id": self.optimum_id}


@dataclass
class Certificate:
    objective: str
    domain: dict
    settings: dict
    optimum_sq: float
    witnesses: list[Witness] = field(default_factory=list)
    bound_check: BoundCheck | None = None
    matched: list[Match] = field(default_factory=list)
    timing_ms: float | None = None
    version: str = CERT_VERSION

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "objective": self.objective,
            "domain": {"min_side": self.domain["min_side"], "volume": self.domain["volume"]},
            "settings": {
                k: self.settings[k] for k in ("grid_n", "starts", "tol", "max_iter", "seed")
            },
            "result": {
                "optimum_sq": self.optimum_sq,
                "witnesses": [w.to_dict() for w in self.witnesses],
            },
            "bound_check": None if self.bound_check is None else self.bound_check.to_dict(),
            "matched": [m.to_dict() for m in self.matched],
            "timing_ms": self.timing_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        s = d["settings"]
        return cls(
            objective=d["objective"],
            domain={k: float(d["domain"][k]) for k in ("min_side", "volume")},
            settings={
                "grid_n": int(s["grid_n"]),
                "starts": int(s["starts"]),
                "tol": float(s["tol"]),
                "max_iter": int(s["max_iter"]),
                "seed": int(s["seed"]),
            },
            optimum_sq=float(d["result"]["optimum_sq"]),
            witnesses=[Witness.from_dict(w) for w in d["result"]["witnesses"]],
            bound_check=None if d["bound_check"] is None else BoundCheck.from_dict(d["bound_check"]),
            matched=[Match(int(m["witness_index"]), m["optimum_id"]) for m in d["matched"]],
            timing_ms=None if d["timing_ms"] is None else float(d["timing_ms"]),
            version=d["version"],
        )

    def dumps(self) -> str:
        return dumps(self.to_dict()) + "\n"

    @classmethod
    def loads(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))


def format_float(x: float) -> str:
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite number {x!r}")
    s = f"{x:.17g}"
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 2, _level: int = 0) -> str:
    """JSON text with fixed key order and 17-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")
