"""Bricks, their edges, skew edge triples and triangle placements.

The brick occupies ``[0, a] x [0, b] x [0, c]``.  An edge is named by its
direction and the two binary offsets that fix it in the remaining axes
(ascending axis order), so ``EdgeId(Axis.Y, (1, 0))`` is the segment
``x = a, z = 0``.  A vertex on an edge is located by a normalized
parameter ``lam`` in ``[0, 1]`` measured from the low end of the edge.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import IntEnum

import numpy as np

from .errors import DomainError

INV_SQRT2 = 1.0 / math.sqrt(2.0)
VOLUME_TOL = 1e-12
SIDE_TOL = 1e-12


class Axis(IntEnum):
    X = 0
    Y = 1
    Z = 2

    def others(self) -> tuple[Axis, Axis]:
        return tuple(ax for ax in Axis if ax != self)  # type: ignore[return-value]


@dataclass(frozen=True, order=True)
class EdgeId:
    direction: Axis
    offsets: tuple[int, int]

    def __post_init__(self):
        object.__setattr__(self, "direction", Axis(self.direction))
        offsets = tuple(int(o) for o in self.offsets)
        if len(offsets) != 2 or any(o not in (0, 1) for o in offsets):
            raise DomainError(f"edge offsets must be two 0/1 flags, got {self.offsets!r}")
        object.__setattr__(self, "offsets", offsets)

    def offset(self, axis: Axis) -> int:
        """Fixed 0/1 coordinate of the edge along ``axis`` (not its direction)."""
        if axis == self.direction:
            raise DomainError("an edge has no fixed offset along its own direction")
        return self.offsets[self.direction.others().index(axis)]

    @property
    def code(self) -> str:
        return f"{self.direction.name}{self.offsets[0]}{self.offsets[1]}"

    @classmethod
    def parse(cls, code: str) -> EdgeId:
        if len(code) != 3 or code[0] not in "XYZ" or any(ch not in "01" for ch in code[1:]):
            raise DomainError(f"bad edge code {code!r}")
        return cls(Axis[code[0]], (int(code[1]), int(code[2])))

    def endpoints(self, brick: Brick) -> tuple[np.ndarray, np.ndarray]:
        return vertex_position(brick, self, 0.0), vertex_position(brick, self, 1.0)


ALL_EDGES: tuple[EdgeId, ...] = tuple(
    EdgeId(axis, offs) for axis in Axis for offs in itertools.product((0, 1), repeat=2)
)


def is_skew_pair(e1: EdgeId, e2: EdgeId) -> bool:
    """Two brick edges are skew iff non-parallel and apart along the third axis."""
    if e1.direction == e2.direction:
        return False
    (third,) = set(Axis) - {e1.direction, e2.direction}
    return e1.offset(third) != e2.offset(third)


@dataclass(frozen=True, order=True)
class SkewTriple:
    ex: EdgeId
    ey: EdgeId
    ez: EdgeId

    def __post_init__(self):
        for edge, axis in zip(self.edges, Axis):
            if edge.direction != axis:
                raise DomainError(f"{edge.code} is not an {axis.name}-edge")
        for e1, e2 in itertools.combinations(self.edges, 2):
            if not is_skew_pair(e1, e2):
                raise DomainError(f"edges {e1.code} and {e2.code} are not skew")

    @property
    def edges(self) -> tuple[EdgeId, EdgeId, EdgeId]:
        return (self.ex, self.ey, self.ez)

    @property
    def code(self) -> str:
        return "-".join(e.code for e in self.edges)

    def to_dict(self) -> dict[str, str]:
        return {"ex": self.ex.code, "ey": self.ey.code, "ez": self.ez.code}

    @classmethod
    def from_dict(cls, d: dict[str, str]) -> SkewTriple:
        return cls(EdgeId.parse(d["ex"]), EdgeId.parse(d["ey"]), EdgeId.parse(d["ez"]))


def enumerate_skew_triples() -> list[SkewTriple]:
    """All triples of pairwise skew edges, one per direction, in lexicographic order."""
    by_dir = [[e for e in ALL_EDGES if e.direction == ax] for ax in Axis]
    out = []
    for ex, ey, ez in itertools.product(*by_dir):
        if is_skew_pair(ex, ey) and is_skew_pair(ex, ez) and is_skew_pair(ey, ez):
            out.append(SkewTriple(ex, ey, ez))
    return out


# Representative triple used by the searches: X(y=0,z=0), Y(x=0,z=1), Z(x=1,y=1).
REFERENCE_TRIPLE = SkewTriple(
    EdgeId(Axis.X, (0, 0)), EdgeId(Axis.Y, (0, 1)), EdgeId(Axis.Z, (1, 1))
)


@dataclass(frozen=True)
class Brick:
    a: float
    b: float
    c: float

    def __post_init__(self):
        for name in ("a", "b", "c"):
            v = float(getattr(self, name))
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"brick side {name}={v!r} must be positive and finite")
            object.__setattr__(self, name, v)

    @classmethod
    def from_squares(cls, a_sq: float, b_sq: float, c_sq: float) -> Brick:
        return cls(math.sqrt(a_sq), math.sqrt(b_sq), math.sqrt(c_sq))

    @property
    def sides(self) -> tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def squares(self) -> tuple[float, float, float]:
        return (self.a * self.a, self.b * self.b, self.c * self.c)

    @property
    def volume(self) -> float:
        return self.a * self.b * self.c

    @property
    def is_unit_volume(self) -> bool:
        return abs(self.volume - 1.0) <= VOLUME_TOL

    def is_admissible(self, min_side: float = INV_SQRT2) -> bool:
        return self.is_unit_volume and min(self.sides) >= min_side - SIDE_TOL

    def scaled(self, s: float) -> Brick:
        return Brick(s * self.a, s * self.b, s * self.c)


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"edge parameter {lam!r} outside [0, 1]")
    return lam


def vertex_position(brick: Brick, edge: EdgeId, lam: float) -> np.ndarray:
    lam = _check_lambda(lam)
    sides = brick.sides
    pos = np.empty(3)
    pos[edge.direction] = lam * sides[edge.direction]
    for axis in edge.direction.others():
        pos[axis] = edge.offset(axis) * sides[axis]
    return pos


@dataclass(frozen=True)
class Placement:
    triple: SkewTriple
    lambdas: tuple[float, float, float]

    def __post_init__(self):
        lams = tuple(float(x) for x in self.lambdas)
        if len(lams) != 3:
            raise DomainError("a placement needs exactly three edge parameters")
        for lam in lams:
            _check_lambda(lam)
        object.__setattr__(self, "lambdas", lams)

    def points(self, brick: Brick) -> np.ndarray:
        """Vertices A, B, C as rows of a 3x3 array."""
        return np.array(
            [vertex_position(brick, e, lam) for e, lam in zip(self.triple.edges, self.lambdas)]
        )


@dataclass(frozen=True)
class TriangleMetrics:
    sq_ab: float
    sq_bc: float
    sq_ca: float
    min_sq: float
    eq_residual: float

    @property
    def squares(self) -> tuple[float, float, float]:
        return (self.sq_ab, self.sq_bc, self.sq_ca)


def metrics_from_points(pa, pb, pc) -> TriangleMetrics:
    pa, pb, pc = (np.asarray(p, dtype=float) for p in (pa, pb, pc))
    ab = float(np.sum((pa - pb) ** 2))
    bc = float(np.sum((pb - pc) ** 2))
    ca = float(np.sum((pc - pa) ** 2))
    return TriangleMetrics(ab, bc, ca, min(ab, bc, ca), max(abs(ab - bc), abs(bc - ca)))


def triangle_metrics(brick: Brick, placement: Placement) -> TriangleMetrics:
    return metrics_from_points(*placement.points(brick))


def side_squares(squares, triple: SkewTriple, la, lb, lc):
    """Squared sides (AB, BC, CA) in closed form; broadcasts over numpy arrays.

    ``squares`` is ``(a**2, b**2, c**2)``, each entry scalar or array.  This
    is the fast path used by the searches; ``triangle_metrics`` evaluates
    the same quantities from explicit 3D points.
    """
    p, q, r = squares
    ex, ey, ez = triple.edges
    y0, z0 = ex.offsets
    x1, z1 = ey.offsets
    x2, y2 = ez.offsets
    ab = (la - x1) ** 2 * p + (y0 - lb) ** 2 * q + (z0 - z1) ** 2 * r
    bc = (x1 - x2) ** 2 * p + (lb - y2) ** 2 * q + (z1 - lc) ** 2 * r
    ca = (x2 - la) ** 2 * p + (y2 - y0) ** 2 * q + (lc - z0) ** 2 * r
    return ab, bc, ca


def reflect_edge(edge: EdgeId, axis: Axis) -> EdgeId:
    if edge.direction == axis:
        return edge
    offs = list(edge.offsets)
    i = edge.direction.others().index(axis)
    offs[i] = 1 - offs[i]
    return EdgeId(edge.direction, tuple(offs))


def reflect_placement(placement: Placement, axis: Axis) -> Placement:
    """Image of a placement under the brick's mirror symmetry ``x_axis -> L - x_axis``."""
    triple = SkewTriple(*(reflect_edge(e, axis) for e in placement.triple.edges))
    lams = list(placement.lambdas)
    lams[axis] = 1.0 - lams[axis]
    return Placement(triple, tuple(lams))


def segment_distance(p0, p1, q0, q1) -> float:
    """Euclidean distance between closed segments [p0, p1] and [q0, q1]."""
    p0, p1, q0, q1 = (np.asarray(v, dtype=float) for v in (p0, p1, q0, q1))
    d1 = p1 - p0
    d2 = q1 - q0
    r = p0 - q0
    a = d1 @ d1
    e = d2 @ d2
    f = d2 @ r
    eps = 1e-300
    if a <= eps and e <= eps:
        return float(np.linalg.norm(r))
    if a <= eps:
        s, t = 0.0, min(max(f / e, 0.0), 1.0)
    else:
        c = d1 @ r
        if e <= eps:
            t, s = 0.0, min(max(-c / a, 0.0), 1.0)
        else:
            b = d1 @ d2
            denom = a * e - b * b
            s = min(max((b * f - c * e) / denom, 0.0), 1.0) if denom > eps else 0.0
            t = (b * s + f) / e
            if t < 0.0:
                t, s = 0.0, min(max(-c / a, 0.0), 1.0)
            elif t > 1.0:
                t, s = 1.0, min(max((b - c) / a, 0.0), 1.0)
    return float(np.linalg.norm((p0 + s * d1) - (q0 + t * d2)))
