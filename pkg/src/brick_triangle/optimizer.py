"""Numerical search for the largest triangles on skew edges of unit bricks.

Two objectives are supported: the side of an equilateral triangle
(``"equilateral"``) and the shortest side of an arbitrary triangle
(``"min-side"``).  Bricks are searched in log coordinates
``(log a, log b)`` with ``c = volume / (a b)``, where the admissible set
``a, b, c >= min_side`` is a triangle.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from .certificate import Certificate, Witness
from .errors import DomainError, NoSolution
from .geometry import (
    INV_SQRT2,
    REFERENCE_TRIPLE,
    Brick,
    Placement,
    SkewTriple,
    side_squares,
)
from . import oracle

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 100
FD_STEP = 1e-7
ACCEPT_TOL = 1e-10
BOUND_SLACK = 1e-9
DEDUPE_TOL = 1e-8
STEP_MIN = 1e-10
STEP_MIN_MINSIDE = 1e-8
MAX_HALVINGS = 12
REFINE_STEP_MAX = 0.1
START_GRID = np.linspace(0.0, 1.0, 4)

# Free coordinates when coordinate k is pinned.
_FREE = np.array([[1, 2], [0, 2], [0, 1]])


@dataclass(frozen=True)
class SearchDomain:
    """Unit-volume bricks with every side at least ``min_side``.

    ``pin`` fixes ``(a, b)`` and reduces the outer search to one brick.
    """

    min_side: float = INV_SQRT2
    volume: float = 1.0
    pin: tuple[float, float] | None = None

    def __post_init__(self):
        if not (self.min_side > 0.0 and self.volume > 0.0):
            raise DomainError("min_side and volume must be positive")
        if self.min_side**3 > self.volume * (1.0 + 1e-12):
            raise DomainError(
                f"no brick of volume {self.volume} has all sides >= {self.min_side}"
            )
        if self.pin is not None and not self.contains(*self.pin):
            raise DomainError(f"pinned dims {self.pin} violate the domain")

    @property
    def side_box(self) -> tuple[float, float]:
        return self.min_side, self.volume / self.min_side**2

    @property
    def log_bounds(self) -> tuple[float, float]:
        """``(L, U)``: feasible log dims satisfy ``alpha, beta >= L`` and ``alpha + beta <= U``."""
        lo = math.log(self.min_side)
        return lo, math.log(self.volume) - lo

    def brick(self, a: float, b: float) -> Brick:
        return Brick(a, b, self.volume / (a * b))

    def contains(self, a: float, b: float, tol: float = 1e-12) -> bool:
        c = self.volume / (a * b)
        return min(a, b, c) >= self.min_side * (1.0 - tol)

    def to_dict(self) -> dict:
        return {"min_side": self.min_side, "volume": self.volume}


@dataclass(frozen=True)
class SearchSettings:
    grid_n: int = 33
    starts: int = 16
    tol: float = 1e-8
    max_iter: int = 2000
    seed: int = 0

    def __post_init__(self):
        if int(self.grid_n) != self.grid_n or self.grid_n < 2:
            raise DomainError(f"grid_n must be an integer >= 2, got {self.grid_n!r}")
        if int(self.starts) != self.starts or self.starts < 1:
            raise DomainError(f"starts must be a positive integer, got {self.starts!r}")
        if not self.tol > 0.0:
            raise DomainError(f"tol must be positive, got {self.tol!r}")
        if int(self.max_iter) != self.max_iter or self.max_iter < 1:
            raise DomainError(f"max_iter must be a positive integer, got {self.max_iter!r}")

    def to_dict(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "starts": self.starts,
            "tol": self.tol,
            "max_iter": self.max_iter,
            "seed": self.seed,
        }


# ---------------------------------------------------------------------------
# equilateral system, batched over bricks
#
# Arrays named ``sq`` hold one row of squared brick dims per system, so a
# single Newton call can serve many bricks at once.


def _sides(sq, triple, lam):
    return side_squares((sq[:, 0], sq[:, 1], sq[:, 2]), triple, lam[:, 0], lam[:, 1], lam[:, 2])


def _residuals(sq, triple, lam):
    ab, bc, ca = _sides(sq, triple, lam)
    out = np.empty((len(lam), 2))
    out[:, 0] = ab - bc
    out[:, 1] = ab - ca
    return out


def _newton(sq, triple, lam0, pin, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
    """Damped Newton on ``AB = BC = CA`` over the two unpinned coordinates.

    ``lam0`` is ``(N, 3)``; row ``i`` keeps coordinate ``pin[i]`` fixed.
    The Jacobian uses central differences; a step is halved while it
    fails to reduce the residual.  Returns the final points and a mask of
    rows that converged to ``tol``.
    """
    lam = np.array(lam0, dtype=float)
    n = len(lam)
    rows = np.arange(n)
    fa, fb = _FREE[pin, 0], _FREE[pin, 1]
    res = _residuals(sq, triple, lam)
    norm = np.max(np.abs(res), axis=1)
    done = norm <= tol
    alive = ~done
    for _ in range(max_iter):
        idx = rows[alive]
        if not len(idx):
            break
        m = len(idx)
        sub = np.arange(m)
        x, s_sq = lam[idx], sq[idx]
        cols = []
        for f in (fa[idx], fb[idx]):
            xp, xm = x.copy(), x.copy()
            xp[sub, f] += FD_STEP
            xm[sub, f] -= FD_STEP
            cols.append((_residuals(s_sq, triple, xp) - _residuals(s_sq, triple, xm)) / (2 * FD_STEP))
        j11, j21 = cols[0][:, 0], cols[0][:, 1]
        j12, j22 = cols[1][:, 0], cols[1][:, 1]
        det = j11 * j22 - j12 * j21
        r1, r2 = res[idx, 0], res[idx, 1]
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            s1 = -(j22 * r1 - j12 * r2) / det
            s2 = -(-j21 * r1 + j11 * r2) / det
        ok = np.isfinite(s1) & np.isfinite(s2)
        s1, s2 = np.where(ok, s1, 0.0), np.where(ok, s2, 0.0)
        alpha = np.ones(m)
        new_x = x.copy()
        new_res = res[idx].copy()
        new_norm = np.full(m, np.inf)
        pending = ok.copy()
        for _halving in range(MAX_HALVINGS):
            t = np.flatnonzero(pending)
            if not len(t):
                break
            trial = x[t].copy()
            trial[np.arange(len(t)), fa[idx][t]] += alpha[t] * s1[t]
            trial[np.arange(len(t)), fb[idx][t]] += alpha[t] * s2[t]
            tres = _residuals(s_sq[t], triple, trial)
            tnorm = np.max(np.abs(tres), axis=1)
            better = tnorm < norm[idx][t]
            acc = t[better]
            new_x[acc], new_res[acc], new_norm[acc] = trial[better], tres[better], tnorm[better]
            pending[acc] = False
            alpha[t[~better]] *= 0.5
        improved = np.isfinite(new_norm)
        upd = idx[improved]
        lam[upd], res[upd], norm[upd] = new_x[improved], new_res[improved], new_norm[improved]
        # Diverging or stalled rows are abandoned.
        far = np.max(np.abs(lam[idx] - 0.5), axis=1) > 10.0
        done[idx] = norm[idx] <= tol
        alive[idx] = improved & ~done[idx] & ~far
    return lam, done


def _feasible(sq, triple, lam, conv, tol=ACCEPT_TOL):
    """Clamp converged rows into the unit cube; mask and min side of the equilateral ones."""
    inside = conv & np.all((lam >= -BOUND_SLACK) & (lam <= 1.0 + BOUND_SLACK), axis=1)
    lam = np.clip(lam, 0.0, 1.0)
    ab, bc, ca = _sides(sq, triple, lam)
    resid = np.maximum(np.abs(ab - bc), np.abs(bc - ca))
    keep = inside & (resid <= tol)
    return lam, keep, np.minimum(np.minimum(ab, bc), ca)


def _pinned_solutions(sq, triple, values, vertex):
    """Equilateral points with coordinate ``vertex`` at each of ``values``, per brick.

    ``sq`` is ``(B, 3)``.  Returns ``(lam, side_sq, owner)`` for the
    feasible solutions, ``owner`` indexing the brick.
    """
    values = np.asarray(values, dtype=float)
    g1, g2 = np.meshgrid(START_GRID, START_GRID, indexing="ij")
    per_brick = len(values) * g1.size
    base = np.empty((per_brick, 3))
    fa, fb = _FREE[vertex]
    base[:, vertex] = np.repeat(values, g1.size)
    base[:, fa] = np.tile(g1.ravel(), len(values))
    base[:, fb] = np.tile(g2.ravel(), len(values))
    nb = len(sq)
    lam0 = np.tile(base, (nb, 1))
    owner = np.repeat(np.arange(nb), per_brick)
    rows_sq = sq[owner]
    lam, conv = _newton(rows_sq, triple, lam0, np.full(len(lam0), vertex))
    lam, keep, vals = _feasible(rows_sq, triple, lam, conv)
    return lam[keep], vals[keep], owner[keep]


def _dedupe(lam, vals, tol=DEDUPE_TOL):
    order = np.lexsort(lam.T[::-1])
    keep_l, keep_v = [], []
    for i in order:
        if any(np.max(np.abs(lam[i] - k)) <= tol for k in keep_l):
            continue
        keep_l.append(lam[i])
        keep_v.append(vals[i])
    return np.array(keep_l).reshape(-1, 3), np.array(keep_v)


def solve_equilateral_family(
    brick: Brick, triple: SkewTriple, anchor: float, vertex: int = 0, tol: float = ACCEPT_TOL
) -> list[Placement]:
    """Equilateral placements with the ``vertex``-th edge parameter equal to ``anchor``.

    Newton is started from a 4x4 grid over the two free parameters;
    solutions are clamped into the unit square and deduplicated.  An empty
    list means no equilateral triangle passes through this anchor.
    """
    if not 0.0 <= anchor <= 1.0:
        raise DomainError(f"anchor {anchor!r} outside [0, 1]")
    sq = np.array([brick.squares])
    lam, vals, _ = _pinned_solutions(sq, triple, [anchor], vertex)
    ab, bc, ca = side_squares(brick.squares, triple, lam[:, 0], lam[:, 1], lam[:, 2])
    ok = np.maximum(np.abs(ab - bc), np.abs(bc - ca)) <= tol
    lam, _ = _dedupe(lam[ok], vals[ok])
    return [Placement(triple, tuple(row)) for row in lam]


def _best_per_owner(lam, vals, owner, nb):
    best_val = np.full(nb, -np.inf)
    best_lam = np.full((nb, 3), np.nan)
    if len(vals):
        order = np.lexsort((-vals, owner))
        first = np.ones(len(order), dtype=bool)
        first[1:] = owner[order][1:] != owner[order][:-1]
        pick = order[first]
        best_val[owner[pick]] = vals[pick]
        best_lam[owner[pick]] = lam[pick]
    return best_lam, best_val


def _refine_on_family(sq, triple, lam, val, max_iter, step=REFINE_STEP_MAX):
    """Coordinate pattern search for larger equilateral triangles, one row per brick.

    Each trial moves one edge parameter by +-step (clamped to [0, 1]) and
    re-solves the equilateral system for the other two from the current
    point, so boundary points are reached exactly.  The step doubles after
    a gain (up to ``REFINE_STEP_MAX``) and halves after a failed poll.
    Rows with no start (``val == -inf``) are left alone.
    """
    lam, val = lam.copy(), val.copy()
    nb = len(val)
    steps = np.where(np.isfinite(val), step, 0.0)
    moves = [(k, sgn) for k in range(3) for sgn in (1.0, -1.0)]
    for _ in range(max_iter):
        active = np.flatnonzero(steps >= STEP_MIN)
        if not len(active):
            break
        trials = np.repeat(lam[active], len(moves), axis=0)
        owner = np.repeat(active, len(moves))
        pins = np.tile([k for k, _ in moves], len(active))
        sgns = np.tile([s for _, s in moves], len(active))
        r = np.arange(len(trials))
        trials[r, pins] = np.clip(trials[r, pins] + sgns * steps[owner], 0.0, 1.0)
        moved = trials[r, pins] != lam[owner, pins]
        cand, conv = _newton(sq[owner], triple, trials, pins)
        cand, keep, vals = _feasible(sq[owner], triple, cand, conv)
        keep &= moved
        blam, bval = _best_per_owner(cand[keep], vals[keep], owner[keep], nb)
        gain = bval[active] > val[active] + 1e-14
        win = active[gain]
        lam[win], val[win] = blam[win], bval[win]
        steps[win] = np.minimum(2.0 * steps[win], REFINE_STEP_MAX)
        steps[active[~gain]] *= 0.5
    return lam, val


def _inner_max(sq, triple, grid_n, max_iter, refine=True):
    """Best equilateral placement per brick row of ``sq``; ``-inf`` where none exists."""
    nb = len(sq)
    anchors = np.linspace(0.0, 1.0, grid_n)
    parts = [_pinned_solutions(sq, triple, anchors, 0)]
    for vertex in (1, 2):
        parts.append(_pinned_solutions(sq, triple, [0.0, 1.0], vertex))
    lam = np.concatenate([p[0] for p in parts])
    vals = np.concatenate([p[1] for p in parts])
    owner = np.concatenate([p[2] for p in parts])
    best_lam, best_val = _best_per_owner(lam, vals, owner, nb)
    if refine:
        best_lam, best_val = _refine_on_family(sq, triple, best_lam, best_val, max_iter)
    return best_lam, best_val


def max_equilateral_side(
    brick: Brick, triple: SkewTriple, settings: SearchSettings | None = None
) -> tuple[Placement, float]:
    """Largest equilateral triangle with vertices on the three edges of ``triple``.

    Returns the placement and its squared side.  Raises ``NoSolution`` when
    no anchor on the scan admits an equilateral triangle.
    """
    settings = settings or SearchSettings()
    lam, val = _inner_max(np.array([brick.squares]), triple, settings.grid_n, settings.max_iter)
    if not np.isfinite(val[0]):
        raise NoSolution(f"no equilateral triangle on {triple.code} in {brick}")
    return Placement(triple, tuple(lam[0])), float(val[0])


# ---------------------------------------------------------------------------
# outer search over bricks

# Compass directions in (log a, log b): axes, plus the diagonals that keep
# c fixed or move along the c = min_side edge of the admissible triangle.
_DIRS2 = np.array(
    [[1, 0], [-1, 0], [0, 1], [0, -1], [1, -1], [-1, 1], [1, 1], [-1, -1]], dtype=float
)
_DIRS2 /= np.linalg.norm(_DIRS2, axis=1)[:, None]


def project_log_dims(xy, lo, up):
    """Euclidean projection of ``(alpha, beta)`` rows onto ``alpha, beta >= lo, alpha + beta <= up``."""
    xy = np.atleast_2d(np.asarray(xy, dtype=float))
    al, be = xy[:, 0], xy[:, 1]
    hi = up - lo
    inside = (al >= lo) & (be >= lo) & (al + be <= up)
    cands = [
        np.stack([np.full_like(al, lo), np.clip(be, lo, hi)], axis=1),
        np.stack([np.clip(al, lo, hi), np.full_like(be, lo)], axis=1),
    ]
    a3 = np.clip(0.5 * (al - be + up), lo, hi)
    cands.append(np.stack([a3, up - a3], axis=1))
    dist = np.stack([np.sum((c - xy) ** 2, axis=1) for c in cands], axis=1)
    pick = np.argmin(dist, axis=1)
    proj = np.stack(cands, axis=0)[pick, np.arange(len(xy))]
    return np.where(inside[:, None], xy, proj)


def _squares_from_log(xy, volume):
    p = np.exp(2 * xy[:, 0])
    q = np.exp(2 * xy[:, 1])
    return np.stack([p, q, volume**2 / (p * q)], axis=1)


def _log_grid(domain: SearchDomain, n: int):
    """Feasible cells of an ``n x n`` grid in log dims, with their indices."""
    lo, up = domain.log_bounds
    axis = np.linspace(lo, up - lo, n)
    i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    ok = (i + j) <= n - 1
    return np.stack([axis[i[ok]], axis[j[ok]]], axis=1), np.stack([i[ok], j[ok]], axis=1)


def _separated_top(values, index, count, min_sep=2):
    """Greedy pick of high values whose grid indices are pairwise >= min_sep apart."""
    order = np.argsort(-values, kind="stable")
    picked = []
    for k in order:
        if not np.isfinite(values[k]):
            break
        if all(np.max(np.abs(index[k] - index[p])) >= min_sep for p in picked):
            picked.append(k)
            if len(picked) == count:
                break
    return np.array(picked, dtype=int)


def _inner_local(sq, triple, lam0, step0, max_iter):
    """Continue each row's placement ``lam0`` onto a nearby brick, then refine.

    The equilateral system is re-solved three ways, pinning each edge
    parameter in turn at its current value; rows where every attempt
    fails get ``-inf``.
    """
    nb = len(sq)
    owner = np.repeat(np.arange(nb), 3)
    pins = np.tile(np.arange(3), nb)
    cand, conv = _newton(sq[owner], triple, lam0[owner], pins)
    cand, keep, vals = _feasible(sq[owner], triple, cand, conv)
    lam, val = _best_per_owner(cand[keep], vals[keep], owner[keep], nb)
    return _refine_on_family(sq, triple, lam, val, max_iter, step=step0)


def _pattern_search_dims(domain, settings, xy, triple, restarts=3):
    """Lockstep compass search on bricks; every row is one start.

    Trial bricks are scored by continuing the current placement, which
    tracks one branch of equilateral triangles.  When a start converges its
    brick is rescored with the full anchor scan; if another branch wins
    there, the start resumes from it.
    """
    lo, up = domain.log_bounds
    spacing = (up - 2 * lo) / (settings.grid_n - 1)
    xy = xy.copy()
    lam, val = _inner_max(_squares_from_log(xy, domain.volume), triple, settings.grid_n, settings.max_iter)
    steps = np.where(np.isfinite(val), spacing, 0.0)
    budget = np.full(len(xy), restarts)
    nd = len(_DIRS2)
    for _ in range(settings.max_iter):
        active = np.flatnonzero(steps >= STEP_MIN)
        if not len(active):
            break
        owner = np.repeat(active, nd)
        trial = xy[owner] + np.tile(_DIRS2, (len(active), 1)) * steps[owner][:, None]
        trial = project_log_dims(trial, lo, up)
        moved = np.any(trial != xy[owner], axis=1)
        trial, owner = trial[moved], owner[moved]
        tlam, tval = _inner_local(
            _squares_from_log(trial, domain.volume),
            triple,
            lam[owner],
            np.minimum(0.1, 4.0 * steps[owner]),
            settings.max_iter,
        )
        best = np.full(len(xy), -np.inf)
        pick = np.full(len(xy), -1)
        for k in np.argsort(-tval, kind="stable"):
            if tval[k] > best[owner[k]]:
                best[owner[k]] = tval[k]
                pick[owner[k]] = k
        gain = best[active] > val[active] + 1e-15
        win = active[gain]
        xy[win], lam[win], val[win] = trial[pick[win]], tlam[pick[win]], best[win]
        steps[active[~gain]] *= 0.5
        finished = active[~gain][steps[active[~gain]] < STEP_MIN]
        if len(finished):
            flam, fval = _inner_max(
                _squares_from_log(xy[finished], domain.volume), triple, settings.grid_n, settings.max_iter
            )
            jump = (fval > val[finished] + settings.tol) & (budget[finished] > 0)
            lam[finished[jump]], val[finished[jump]] = flam[jump], fval[jump]
            steps[finished[jump]] = spacing / 4
            budget[finished[jump]] -= 1
    return xy, lam, val


def _witness_rows(domain, objective, xy, lam, val, triple, tol):
    """Placements within ``tol`` of the best value, as certificate witnesses."""
    finite = np.isfinite(val)
    if not finite.any():
        return -math.inf, []
    opt = float(np.max(val[finite]))
    out = []
    for k in np.flatnonzero(finite & (val >= opt - tol)):
        a, b = math.exp(xy[k, 0]), math.exp(xy[k, 1])
        brick = domain.brick(a, b)
        out.append(Witness.from_placement(brick, Placement(triple, tuple(lam[k])), objective))
    return opt, out


def global_max_equilateral(
    domain: SearchDomain | None = None,
    settings: SearchSettings | None = None,
    record_timing: bool = False,
) -> Certificate:
    """Largest equilateral triangle over all bricks of ``domain``.

    A log-dims grid seeds a multi-start compass search; each brick is scored
    by ``max_equilateral_side`` on the reference triple (the brick's mirror
    symmetries carry every skew triple onto it).
    """
    domain = domain or SearchDomain()
    settings = settings or SearchSettings()
    t0 = time.perf_counter()
    triple = REFERENCE_TRIPLE
    if domain.pin is not None:
        xy = np.log(np.array([domain.pin], dtype=float))
        lam, val = _inner_max(_squares_from_log(xy, domain.volume), triple, settings.grid_n, settings.max_iter)
    else:
        cells, index = _log_grid(domain, settings.grid_n)
        _, grid_val = _inner_max(
            _squares_from_log(cells, domain.volume), triple, settings.grid_n, settings.max_iter, refine=False
        )
        picked = _separated_top(grid_val, index, settings.starts)
        if not len(picked):
            raise NoSolution("no equilateral triangle anywhere on the brick grid")
        rng = np.random.default_rng(settings.seed)
        lo, up = domain.log_bounds
        spacing = (up - 2 * lo) / (settings.grid_n - 1)
        xy = cells[picked] + rng.uniform(-0.25, 0.25, (len(picked), 2)) * spacing
        xy = project_log_dims(xy, lo, up)
        xy, lam, val = _pattern_search_dims(domain, settings, xy, triple)
    opt, witnesses = _witness_rows(domain, "equilateral", xy, lam, val, triple, settings.tol)
    if not witnesses:
        raise NoSolution("no equilateral triangle found")
    elapsed = (time.perf_counter() - t0) * 1e3 if record_timing else None
    return oracle.assemble_certificate("equilateral", domain, settings, opt, witnesses, elapsed)


# ---------------------------------------------------------------------------
# shortest side, no equilateral constraint


def _min_side_values(y, volume, triple):
    sq = _squares_from_log(y[:, :2], volume)
    ab, bc, ca = side_squares((sq[:, 0], sq[:, 1], sq[:, 2]), triple, y[:, 2], y[:, 3], y[:, 4])
    return np.minimum(np.minimum(ab, bc), ca)


def _project5(y, lo, up):
    out = np.empty_like(y)
    out[:, :2] = project_log_dims(y[:, :2], lo, up)
    out[:, 2:] = np.clip(y[:, 2:], 0.0, 1.0)
    return out


def _compass_5d(y, val, domain, settings, triple, rng, step=0.1, fixed_dims=False):
    """Lockstep compass search over (log a, log b, lamA, lamB, lamC).

    Each poll tries the coordinate moves plus the moves along a fresh
    random orthonormal frame; the random frame keeps the search from
    stalling on the kinks of the min objective.  ``fixed_dims`` freezes
    the first two coordinates.
    """
    lo, up = domain.log_bounds
    free = np.arange(2, 5) if fixed_dims else np.arange(5)
    nf = len(free)
    eye = np.zeros((nf, 5))
    eye[np.arange(nf), free] = 1.0
    steps = np.full(len(y), step)
    for _ in range(settings.max_iter):
        active = np.flatnonzero(steps >= STEP_MIN_MINSIDE)
        if not len(active):
            break
        frames = []
        for _k in active:
            qmat, _r = np.linalg.qr(rng.standard_normal((nf, nf)))
            rot = np.zeros((nf, 5))
            rot[:, free] = qmat.T
            frames.append(np.concatenate([eye, -eye, rot, -rot]))
        dirs = np.concatenate(frames)
        nd = 4 * nf
        owner = np.repeat(active, nd)
        trial = _project5(y[owner] + dirs * steps[owner][:, None], lo, up)
        tval = _min_side_values(trial, domain.volume, triple)
        best = np.full(len(y), -np.inf)
        pick = np.full(len(y), -1)
        for k in np.argsort(-tval, kind="stable"):
            if tval[k] > best[owner[k]]:
                best[owner[k]] = tval[k]
                pick[owner[k]] = k
        gain = best[active] > val[active] + 1e-15
        win = active[gain]
        y[win], val[win] = trial[pick[win]], best[win]
        steps[active[~gain]] *= 0.5
    return y, val


def global_max_min_side(
    domain: SearchDomain | None = None,
    settings: SearchSettings | None = None,
    record_timing: bool = False,
) -> Certificate:
    """Largest shortest side over all triangles on skew edges of domain bricks.

    A coarse grid over log dims and edge parameters seeds a multi-start
    derivative-free compass search; the objective is the minimum of three
    smooth functions and is not differentiable at the optimum.
    """
    domain = domain or SearchDomain()
    settings = settings or SearchSettings()
    t0 = time.perf_counter()
    triple = REFERENCE_TRIPLE
    lo, up = domain.log_bounds
    lam_n = (settings.grid_n - 1) // 4 + 1
    lam_ax = np.linspace(0.0, 1.0, max(lam_n, 2))
    if domain.pin is not None:
        cells = np.log(np.array([domain.pin], dtype=float))
        index = np.zeros((1, 2), dtype=int)
    else:
        cells, index = _log_grid(domain, settings.grid_n)
    li = np.stack(np.meshgrid(*(np.arange(len(lam_ax)),) * 3, indexing="ij"), axis=-1).reshape(-1, 3)
    nc, nl = len(cells), len(li)
    y0 = np.concatenate([np.repeat(cells, nl, axis=0), np.tile(lam_ax[li], (nc, 1))], axis=1)
    idx = np.concatenate([np.repeat(index, nl, axis=0), np.tile(li, (nc, 1))], axis=1)
    grid_val = _min_side_values(y0, domain.volume, triple)
    picked = _separated_top(grid_val, idx, settings.starts)
    rng = np.random.default_rng(settings.seed)
    y = y0[picked].copy()
    if domain.pin is None:
        spacing = (up - 2 * lo) / (settings.grid_n - 1)
        y[:, :2] += rng.uniform(-0.25, 0.25, (len(y), 2)) * spacing
    y = _project5(y, lo, up)
    val = _min_side_values(y, domain.volume, triple)
    y, val = _compass_5d(y, val, domain, settings, triple, rng, fixed_dims=domain.pin is not None)
    opt = float(np.max(val))
    witnesses = []
    for k in np.flatnonzero(val >= opt - settings.tol):
        brick = domain.brick(math.exp(y[k, 0]), math.exp(y[k, 1]))
        witnesses.append(Witness.from_placement(brick, Placement(triple, tuple(y[k, 2:])), "min-side"))
    elapsed = (time.perf_counter() - t0) * 1e3 if record_timing else None
    return oracle.assemble_certificate("min-side", domain, settings, opt, witnesses, elapsed)
