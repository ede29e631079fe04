"""Explicit one-parameter families of equilateral triangles in unit bricks.

Both families are parametrized by ``t = b**2`` and share the squared
triangle side ``f(t) = 2/3 * (t + sqrt(t**2 + 3/t))``:

* family 1: one triangle side is a brick edge of length ``c``; the third
  vertex is the midpoint of the opposite parallel edge.
* family 2: one triangle side is the diagonal of a ``(b, c)`` face; the
  third vertex sits at fraction ``z`` of a skew edge of the opposite face.

Also here: the rectangle-area functional used to show that minimal
rectangles around a non-obtuse corner share a side with the triangle, and
the thin-brick constructor showing that the side-length lower bound is
necessary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoSolution
from .geometry import Axis, Brick, EdgeId, Placement, REFERENCE_TRIPLE, SkewTriple

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
ARGMIN_TOL = 1e-10
ANGLE_TOL = 1e-12

# Exact stationary point of f: f'(t) = 0 reduces to t**3 = 3/8.
T_STAR = (3.0 / 8.0) ** (1.0 / 3.0)
F_STAR = (8.0 / 3.0) ** (2.0 / 3.0)

# B on the low end of Y(x=0, z=0) paired with A on X(y=0, z=1) spans the
# x = 0 face diagonal; C runs up Z(x=1, y=1).
FAMILY2_TRIPLE = SkewTriple(
    EdgeId(Axis.X, (0, 1)), EdgeId(Axis.Y, (0, 0)), EdgeId(Axis.Z, (1, 1))
)


def _check_t(t: float) -> float:
    t = float(t)
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"parameter t={t!r} must be positive")
    return t


def f_objective(t: float) -> float:
    t = _check_t(t)
    return 2.0 / 3.0 * (t + math.sqrt(t * t + 3.0 / t))


def golden_section(fun, lo: float, hi: float, tol: float = ARGMIN_TOL) -> float:
    """Minimizer of a unimodal ``fun`` on ``[lo, hi]`` to bracket width ``tol``."""
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def f_argmin(lo: float, hi: float, tol: float = ARGMIN_TOL) -> tuple[float, float]:
    """Minimizer of ``f`` on ``[lo, hi]``, snapping to an endpoint when it wins."""
    lo, hi = float(lo), float(hi)
    if not (0.0 < lo < hi and math.isfinite(hi)):
        raise DomainError(f"invalid interval [{lo!r}, {hi!r}]")
    t = golden_section(f_objective, lo, hi, tol)
    best = (f_objective(t), t)
    for end in (lo, hi):
        if abs(t - end) <= 2 * tol:
            best = min(best, (f_objective(end), end))
    return best[1], best[0]


@dataclass(frozen=True)
class Case1Config:
    t: float
    a_sq: float
    b_sq: float
    c_sq: float
    d_sq: float

    def brick(self) -> Brick:
        return Brick.from_squares(self.a_sq, self.b_sq, self.c_sq)

    def placement(self) -> Placement:
        # A = (0,0,0), B = (0,0,c) share the z-edge at x=y=0; C = (a, b, c/2).
        return Placement(REFERENCE_TRIPLE, (0.0, 0.0, 0.5))


@dataclass(frozen=True)
class Case2Config:
    t: float
    a_sq: float
    b_sq: float
    c_sq: float
    z: float
    d_sq: float

    def brick(self) -> Brick:
        return Brick.from_squares(self.a_sq, self.b_sq, self.c_sq)

    def placement(self) -> Placement:
        # A = (0,0,c), B = (0,b,0) span the x=0 face diagonal; C = (a, b, z*c).
        if not 0.0 <= self.z <= 1.0:
            raise DomainError(f"z={self.z!r} puts the third vertex off the edge")
        return Placement(FAMILY2_TRIPLE, (0.0, 1.0, self.z))


def case1_config(t: float) -> Case1Config:
    t = _check_t(t)
    # Positive root of a**4 + t*a**2 - 3/(4t) = 0, written without the
    # subtraction -t + sqrt(...) that cancels for large t.
    a_sq = 1.5 / (t * (t + math.sqrt(t * t + 3.0 / t)))
    c_sq = 1.0 / (a_sq * t)
    return Case1Config(t=t, a_sq=a_sq, b_sq=t, c_sq=c_sq, d_sq=c_sq)


def case2_config(t: float) -> Case2Config:
    t = _check_t(t)
    # Positive root of 3*c**4 + 2t*c**2 - (t**2 + 4/t) = 0, cancellation-free form.
    c_sq = (t * t + 4.0 / t) / (t + math.sqrt(4.0 * t * t + 12.0 / t))
    a_sq = 1.0 / (t * c_sq)
    z = (t + c_sq) / (2.0 * c_sq)
    return Case2Config(t=t, a_sq=a_sq, b_sq=t, c_sq=c_sq, z=z, d_sq=t + c_sq)


def case_consistency(t: float) -> float:
    return abs(case1_config(t).d_sq - case2_config(t).d_sq)


@dataclass(frozen=True)
class RectParams:
    """Rectangle around triangle ABC with corner A.

    ``gamma`` is the angle BAC and ``theta`` the tilt of the rectangle side
    through A relative to AC.
    """

    len_ab: float
    len_ac: float
    gamma: float
    theta: float

    def __post_init__(self):
        if not (self.len_ab > 0.0 and self.len_ac > 0.0):
            raise DomainError("side lengths must be positive")
        _check_gamma(self.gamma)
        if not -ANGLE_TOL <= self.theta <= math.pi / 2 - self.gamma + ANGLE_TOL:
            raise DomainError(
                f"theta={self.theta!r} outside [0, pi/2 - gamma] for gamma={self.gamma!r}"
            )


def _check_gamma(gamma: float) -> None:
    if not 0.0 < gamma <= math.pi / 2 + ANGLE_TOL:
        raise DomainError(f"angle {gamma!r} must lie in (0, pi/2]")


def rect_area(p: RectParams) -> float:
    return p.len_ab * p.len_ac * math.cos(p.theta) * math.sin(p.gamma + p.theta)


def min_rect_area(len_ab: float, len_ac: float, gamma: float) -> tuple[tuple[float, ...], float]:
    """Minimal area and its minimizing tilts; the two ends of the tilt range tie."""
    if not (len_ab > 0.0 and len_ac > 0.0):
        raise DomainError("side lengths must be positive")
    _check_gamma(gamma)
    area = len_ab * len_ac * math.sin(gamma)
    upper = max(math.pi / 2 - gamma, 0.0)
    if upper <= ANGLE_TOL:
        return (0.0,), area
    return (0.0, upper), area


def rect_area_identity(len_ab, len_ac, gamma, theta):
    """``rect_area`` rewritten as ``1/2 |AB||AC| [sin(gamma + 2 theta) + sin(gamma)]``; broadcasts."""
    return 0.5 * len_ab * len_ac * (np.sin(gamma + 2.0 * theta) + np.sin(gamma))


@dataclass
class LemmaReport:
    n: int
    passed: int
    len_ab: np.ndarray
    len_ac: np.ndarray
    gamma: np.ndarray
    min_areas: np.ndarray
    passed_mask: np.ndarray
    failures: list[tuple[float, float, float]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.n


def lemma_check(
    n: int = 1000,
    seed: int = 0,
    samples: int = 10_000,
    tol: float = 1e-9,
    len_ab: float | None = None,
    len_ac: float | None = None,
    gamma: float | None = None,
) -> LemmaReport:
    """Sample ``n`` random corners and minimize the rectangle area over a tilt grid.

    A case passes when the grid minimum sits at an end of ``[0, pi/2 - gamma]``
    and equals ``|AB||AC| sin(gamma)`` within ``tol``.  Any of the three
    corner parameters may be fixed instead of drawn.
    """
    if n < 1 or samples < 2:
        raise DomainError("need at least one case and two tilt samples")
    rng = np.random.default_rng(seed)
    l1 = rng.uniform(0.1, 10.0, n) if len_ab is None else np.full(n, float(len_ab))
    l2 = rng.uniform(0.1, 10.0, n) if len_ac is None else np.full(n, float(len_ac))
    # gamma in (0, pi/2]: draw from [0, pi/2) and reflect so the right angle is reachable.
    g = math.pi / 2 - rng.uniform(0.0, math.pi / 2, n) if gamma is None else np.full(n, float(gamma))
    if np.any(l1 <= 0) or np.any(l2 <= 0):
        raise DomainError("side lengths must be positive")
    for gi in np.unique(g):
        _check_gamma(gi)
    u = np.linspace(0.0, 1.0, samples)
    upper = np.maximum(math.pi / 2 - g, 0.0)
    theta = upper[:, None] * u[None, :]
    area = l1[:, None] * l2[:, None] * np.cos(theta) * np.sin(g[:, None] + theta)
    k = np.argmin(area, axis=1)
    amin = area[np.arange(n), k]
    exact = l1 * l2 * np.sin(g)
    at_end = (k == 0) | (k == samples - 1) | (upper <= ANGLE_TOL)
    ok = at_end & (np.abs(amin - exact) <= tol)
    failures = [(float(a), float(b), float(c)) for a, b, c in zip(l1[~ok], l2[~ok], g[~ok])]
    return LemmaReport(
        n=n,
        passed=int(ok.sum()),
        len_ab=l1,
        len_ac=l2,
        gamma=g,
        min_areas=amin,
        passed_mask=ok,
        failures=failures,
    )


def thin_brick_for_side(side_len: float) -> tuple[Brick, Placement, Case1Config]:
    """Unit brick from family 1 carrying an equilateral triangle of side ``side_len``.

    Solves ``f(t) = side_len**2`` on the increasing branch ``t >= T_STAR`` by
    bracket doubling and bisection down to adjacent floats.  For
    ``side_len**2 > 2`` the brick is thinner than ``1/sqrt(2)``.
    """
    target = float(side_len) ** 2
    if not math.isfinite(target) or target < F_STAR:
        raise NoSolution(f"side**2={target!r} is below min f = {F_STAR:.6f}")
    lo, hi = T_STAR, 2.0 * T_STAR
    while f_objective(hi) < target:
        lo, hi = hi, 2.0 * hi
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if f_objective(mid) < target:
            lo = mid
        else:
            hi = mid
    t = min((lo, hi), key=lambda x: abs(f_objective(x) - target))
    cfg = case1_config(t)
    return cfg.brick(), cfg.placement(), cfg
