"""Brute-force checks, witness canonicalization and certificate assembly.

Nothing here calls the optimizer: the grid maximum is computed directly,
and the three known optimal arrangements are built from the closed forms.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .certificate import BoundCheck, Certificate, Match, Witness
from .closedform import case1_config, case2_config
from .errors import DomainError
from .geometry import (
    REFERENCE_TRIPLE,
    Axis,
    Brick,
    EdgeId,
    Placement,
    SkewTriple,
    reflect_placement,
    side_squares,
)

if TYPE_CHECKING:
    from .optimizer import SearchDomain, SearchSettings

BOUND_SQ = 2.0
BOUND_TOL = 1e-6
MATCH_TOL = 1e-4
FILTER_C = 10.0
KEY_DIGITS = 9
SAME_TOL = 1e-6
DIM_TIE = 1e-9


# ---------------------------------------------------------------------------
# symmetry


def permute_placement(brick: Brick, placement: Placement, perm) -> tuple[Brick, Placement]:
    """Relabel axes so that new axis ``j`` is old axis ``perm[j]``.

    Vertices travel with their edges, so the vertex on the new X-edge is
    the new A; this is how vertex relabelings enter the symmetry group.
    """
    sides = brick.sides
    new_brick = Brick(*(sides[perm[j]] for j in range(3)))
    by_dir = {e.direction: (e, lam) for e, lam in zip(placement.triple.edges, placement.lambdas)}
    edges, lams = [], []
    for j in Axis:
        old_edge, lam = by_dir[Axis(perm[j])]
        offs = tuple(old_edge.offset(Axis(perm[k])) for k in j.others())
        edges.append(EdgeId(j, offs))
        lams.append(lam)
    return new_brick, Placement(SkewTriple(*edges), tuple(lams))


def _reflections():
    for mask in itertools.product((False, True), repeat=3):
        yield [ax for ax, flip in zip(Axis, mask) if flip]


def symmetry_images(brick: Brick, placement: Placement):
    """All 48 images of a placement under axis permutations and reflections."""
    for perm in itertools.permutations(range(3)):
        b2, p2 = permute_placement(brick, placement, perm)
        for axes in _reflections():
            p3 = p2
            for ax in axes:
                p3 = reflect_placement(p3, ax)
            yield b2, p3


def _key(brick: Brick, placement: Placement):
    return (
        tuple(round(s, KEY_DIGITS) for s in brick.sides),
        placement.triple.code,
        tuple(round(x, KEY_DIGITS) for x in placement.lambdas),
    )


def canonicalize_witness(w: Witness) -> Witness:
    """Lexicographically least image with ascending brick dims.

    When dims tie (to a relative ``DIM_TIE``) every ordering of the tied
    axes is admitted, so e.g. all 48 cube symmetries are tried.
    """
    brick, placement = w.brick_obj(), w.placement()
    sides = brick.sides
    target = sorted(sides)
    best = None
    for perm in itertools.permutations(range(3)):
        if any(abs(sides[perm[j]] - target[j]) > DIM_TIE * target[j] for j in range(3)):
            continue
        b2, p2 = permute_placement(brick, placement, perm)
        for axes in _reflections():
            p3 = p2
            for ax in axes:
                p3 = reflect_placement(p3, ax)
            k = _key(b2, p3)
            if best is None or k < best[0]:
                best = (k, b2, p3)
    _, b2, p3 = best
    return Witness(b2.sides, p3.triple, p3.lambdas, w.side_sq, w.residual)


def same_witness(w1: Witness, w2: Witness, tol: float = SAME_TOL) -> bool:
    return (
        w1.triple == w2.triple
        and max(abs(x - y) for x, y in zip(w1.brick, w2.brick)) <= tol
        and max(abs(x - y) for x, y in zip(w1.lambdas, w2.lambdas)) <= tol
    )


# ---------------------------------------------------------------------------
# catalogue of the three optimal arrangements


@dataclass(frozen=True)
class CanonicalOptimum:
    id: str
    brick_sq: tuple[float, float, float]
    d_sq: float
    description: str
    brick: Brick
    placement: Placement

    def witness(self) -> Witness:
        return Witness.from_placement(self.brick, self.placement, "equilateral")


def _catalogue() -> tuple[CanonicalOptimum, ...]:
    c1 = case1_config(1.0)
    c2 = case2_config(0.5)
    cube = Brick(1.0, 1.0, 1.0)
    return (
        CanonicalOptimum(
            "CASE1",
            tuple(sorted((c1.a_sq, c1.b_sq, c1.c_sq))),
            c1.d_sq,
            "one side is a brick edge of length sqrt(2); third vertex at the midpoint "
            "of the opposite edge; brick dims^2 = (1/2, 1, 2)",
            c1.brick(),
            c1.placement(),
        ),
        CanonicalOptimum(
            "CASE2_BRICK",
            tuple(sorted((c2.a_sq, c2.b_sq, c2.c_sq))),
            c2.d_sq,
            "one side is a face diagonal; third vertex at 2/3 of a skew edge; "
            "brick dims^2 = (1/2, 4/3, 3/2)",
            c2.brick(),
            c2.placement(),
        ),
        CanonicalOptimum(
            "CASE2_CUBE",
            (1.0, 1.0, 1.0),
            2.0,
            "unit cube; vertices at three pairwise non-adjacent corners",
            cube,
            Placement(REFERENCE_TRIPLE, (1.0, 0.0, 1.0)),
        ),
    )


CANONICAL_OPTIMA: tuple[CanonicalOptimum, ...] = _catalogue()


@dataclass(frozen=True)
class MatchReport:
    matched: list[tuple[int, CanonicalOptimum]]
    unmatched: list[int]

    @property
    def ids(self) -> set[str]:
        return {opt.id for _, opt in self.matched}


def match_witnesses(witnesses, tol: float = MATCH_TOL) -> MatchReport:
    matched, unmatched = [], []
    for i, w in enumerate(witnesses):
        dims_sq = sorted(s * s for s in w.brick)
        hit = None
        for opt in CANONICAL_OPTIMA:
            if abs(w.side_sq - opt.d_sq) <= tol and all(
                abs(x - y) <= tol for x, y in zip(dims_sq, opt.brick_sq)
            ):
                hit = opt
                break
        if hit is None:
            unmatched.append(i)
        else:
            matched.append((i, hit))
    return MatchReport(matched, unmatched)


def match_known_optima(cert: Certificate, tol: float = MATCH_TOL) -> MatchReport:
    return match_witnesses(cert.witnesses, tol)


def check_bound(
    cert: Certificate, bound_sq: float = BOUND_SQ, tol: float = BOUND_TOL
) -> BoundCheck:
    opt = cert.optimum_sq
    sharp = any(abs(w.side_sq - bound_sq) <= tol for w in cert.witnesses)
    return BoundCheck(bound_sq, opt <= bound_sq + tol, bound_sq - opt, sharp)


def assemble_certificate(
    objective: str,
    domain: SearchDomain,
    settings: SearchSettings,
    optimum_sq: float,
    witnesses,
    timing_ms: float | None = None,
) -> Certificate:
    """Canonicalize and deduplicate witnesses, then attach bound check and matches."""
    canon = []
    for w in witnesses:
        c = canonicalize_witness(w)
        if not any(same_witness(c, k) for k in canon):
            canon.append(c)
    canon.sort(key=lambda w: (-round(w.side_sq, KEY_DIGITS), w.brick, w.triple.code, w.lambdas))
    cert = Certificate(
        objective=objective,
        domain=domain.to_dict(),
        settings=settings.to_dict(),
        optimum_sq=float(optimum_sq),
        witnesses=canon,
        timing_ms=timing_ms,
    )
    cert.bound_check = check_bound(cert)
    cert.matched = [Match(i, opt.id) for i, opt in match_known_optima(cert).matched]
    return cert


def validate_certificate(cert: Certificate, tol: float = 1e-10, min_side: float | None = None) -> list[str]:
    """Problems found when re-evaluating every witness from scratch; empty if none."""
    from .geometry import triangle_metrics

    problems = []
    min_side = cert.domain["min_side"] if min_side is None else min_side
    for i, w in enumerate(cert.witnesses):
        brick = w.brick_obj()
        m = triangle_metrics(brick, w.placement())
        side = m.min_sq if cert.objective == "min-side" else m.sq_ab
        if abs(side - w.side_sq) > tol:
            problems.append(f"witness {i}: side_sq {w.side_sq!r} re-evaluates to {side!r}")
        if abs(m.eq_residual - w.residual) > tol:
            problems.append(f"witness {i}: residual {w.residual!r} re-evaluates to {m.eq_residual!r}")
        if abs(brick.volume - cert.domain["volume"]) > 1e-12 * cert.domain["volume"]:
            problems.append(f"witness {i}: volume {brick.volume!r}")
        if min(brick.sides) < min_side * (1 - 1e-12):
            problems.append(f"witness {i}: side {min(brick.sides)!r} below {min_side!r}")
    return problems


# ---------------------------------------------------------------------------
# brute force


def _axes(domain: SearchDomain, resolution):
    if isinstance(resolution, (int, np.integer)):
        resolution = (int(resolution),) * 5
    resolution = tuple(int(r) for r in resolution)
    if len(resolution) != 5 or min(resolution) < 2:
        raise DomainError(f"resolution needs five counts >= 2, got {resolution!r}")
    if domain.pin is not None:
        a_ax, b_ax = np.array([domain.pin[0]]), np.array([domain.pin[1]])
    else:
        lo, hi = domain.side_box
        a_ax, b_ax = np.linspace(lo, hi, resolution[0]), np.linspace(lo, hi, resolution[1])
    lams = tuple(np.linspace(0.0, 1.0, r) for r in resolution[2:])
    return a_ax, b_ax, lams, resolution


def _bricks(domain, a_ax, b_ax):
    a, b = np.meshgrid(a_ax, b_ax, indexing="ij")
    a, b = a.ravel(), b.ravel()
    c = domain.volume / (a * b)
    ok = c >= domain.min_side * (1.0 - 1e-12)
    return a[ok], b[ok], c[ok]


def _point(a, b, c, la, lb, lc, value):
    return {"brick": (float(a), float(b), float(c)), "lambdas": (float(la), float(lb), float(lc)),
            "value": float(value)}


def _exhaustive(domain, objective, a_ax, b_ax, lams, resolution, triple):
    a, b, c = _bricks(domain, a_ax, b_ax)
    la, lb, lc = np.meshgrid(*lams, indexing="ij")
    la, lb, lc = la.ravel(), lb.ravel(), lc.ravel()
    filt = FILTER_C / min(resolution[2:])
    best, arg = -math.inf, None
    for k in range(len(a)):
        ab, bc, ca = side_squares((a[k] ** 2, b[k] ** 2, c[k] ** 2), triple, la, lb, lc)
        val = np.minimum(np.minimum(ab, bc), ca)
        if objective == "equilateral":
            resid = np.maximum(np.abs(ab - bc), np.abs(bc - ca))
            val = np.where(resid <= filt, val, -math.inf)
        i = int(np.argmax(val))
        if val[i] > best:
            best, arg = float(val[i]), (a[k], b[k], c[k], la[i], lb[i], lc[i])
    return best, arg


def _monotone_min_side(domain, a_ax, b_ax, lams, chunk=1 << 20):
    """Exact grid maximum of the shortest side on the reference triple.

    With AB = u^2 p + v^2 q + r, BC = p + (1-v)^2 q + (1-w)^2 r and
    CA = (1-u)^2 p + q + w^2 r: for fixed (brick, u, v) the best w-grid
    value of min(BC, CA) sits at a neighbor of the crossing BC = CA, and
    that best value is nonincreasing in v while AB increases, so the best
    v is found by bisection.  The result equals exhaustive enumeration.
    """
    u_ax, v_ax, w_ax = lams
    nv, nw = len(v_ax), len(w_ax)
    a, b, c = _bricks(domain, a_ax, b_ax)
    nb = len(a)
    bi = np.repeat(np.arange(nb), len(u_ax))
    ui = np.tile(np.arange(len(u_ax)), nb)
    best, arg = -math.inf, None
    for s in range(0, len(bi), chunk):
        kb, ku = bi[s : s + chunk], ui[s : s + chunk]
        p, q, r = a[kb] ** 2, b[kb] ** 2, c[kb] ** 2
        u = u_ax[ku]

        def inner(j):
            v = v_ax[j]
            ab = u * u * p + v * v * q + r
            k_cross = (1.0 - ((1 - u) ** 2 * p + q - p - (1 - v) ** 2 * q) / r) / 2.0
            k0 = np.clip(np.floor(k_cross * (nw - 1)), 0, nw - 2).astype(int)
            h = np.full(len(p), -np.inf)
            kbest = k0.copy()
            for kk in (k0, k0 + 1):
                w = w_ax[kk]
                m = np.minimum(p + (1 - v) ** 2 * q + (1 - w) ** 2 * r, (1 - u) ** 2 * p + q + w * w * r)
                better = m > h
                h = np.where(better, m, h)
                kbest = np.where(better, kk, kbest)
            return ab, h, kbest

        lo = np.zeros(len(p), dtype=int)
        hi = np.full(len(p), nv)
        while np.any(lo < hi):
            mid = (lo + hi) // 2
            act = lo < hi
            ab, h, _ = inner(np.minimum(mid, nv - 1))
            pred = act & (ab >= h)
            hi = np.where(pred, mid, hi)
            lo = np.where(act & ~pred, mid + 1, lo)
        val = np.full(len(p), -np.inf)
        jbest = np.zeros(len(p), dtype=int)
        kbest = np.zeros(len(p), dtype=int)
        for j in (lo - 1, lo):
            valid = (j >= 0) & (j <= nv - 1)
            jj = np.clip(j, 0, nv - 1)
            ab, h, kk = inner(jj)
            g = np.where(valid, np.minimum(ab, h), -np.inf)
            better = g > val
            val = np.where(better, g, val)
            jbest = np.where(better, jj, jbest)
            kbest = np.where(better, kk, kbest)
        i = int(np.argmax(val))
        if val[i] > best:
            best = float(val[i])
            k = kb[i]
            arg = (a[k], b[k], c[k], u[i], v_ax[jbest[i]], w_ax[kbest[i]])
    return best, arg


def brute_force_max(
    domain: SearchDomain, objective: str = "min-side", resolution=20, method: str = "auto"
) -> tuple[float, dict]:
    """Maximum of the objective over a full grid of (a, b, lamA, lamB, lamC).

    Dims ``a, b`` are sampled linearly over the domain's side box (bricks
    with ``c < min_side`` are dropped) and each edge parameter over
    ``[0, 1]``; all endpoints are on the grid.  For ``"equilateral"`` only
    grid points with residual ``<= 10 / n`` count, ``n`` the smallest edge
    resolution, and the value is their shortest side.  Min-side maxima use
    the exact monotone reduction unless ``method="exhaustive"``.
    """
    if objective not in ("min-side", "equilateral"):
        raise DomainError(f"unknown objective {objective!r}")
    a_ax, b_ax, lams, resolution = _axes(domain, resolution)
    if method == "auto":
        method = "monotone" if objective == "min-side" else "exhaustive"
    if method == "monotone":
        if objective != "min-side":
            raise DomainError("the monotone reduction only applies to the min-side objective")
        best, arg = _monotone_min_side(domain, a_ax, b_ax, lams)
    elif method == "exhaustive":
        best, arg = _exhaustive(domain, objective, a_ax, b_ax, lams, resolution, REFERENCE_TRIPLE)
    else:
        raise DomainError(f"unknown method {method!r}")
    if arg is None:
        return -math.inf, {}
    return best, _point(*arg, best)
