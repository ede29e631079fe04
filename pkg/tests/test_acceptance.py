"""Acceptance criteria, one test per criterion.

Each test prints the measured quantities; a PASS/FAIL line per criterion
is added to the terminal summary by conftest.py.
"""

import math
import sys

import numpy as np
import pytest

from brick_triangle import cli, closedform, oracle
from brick_triangle.certificate import Witness
from brick_triangle.errors import NoSolution
from brick_triangle.geometry import INV_SQRT2, enumerate_skew_triples, triangle_metrics
from brick_triangle.optimizer import (
    SearchDomain,
    SearchSettings,
    global_max_equilateral,
    global_max_min_side,
    max_equilateral_side,
)


@pytest.fixture(scope="module")
def eq_cert():
    return global_max_equilateral(SearchDomain(), SearchSettings())


@pytest.fixture(scope="module")
def ms_cert():
    return global_max_min_side(SearchDomain(), SearchSettings())


def test_criterion_01_closed_form_boundary_values():
    """f(1/2) = f(1) = 2 within 1e-12"""
    f_half, f_one = closedform.f_objective(0.5), closedform.f_objective(1.0)
    print(f"f(1/2) = {f_half!r}, f(1) = {f_one!r}")
    assert abs(f_half - 2) <= 1e-12
    assert abs(f_one - 2) <= 1e-12


def test_criterion_02_interior_minimum():
    """interior argmin on [1/2, 1] with f < 1.95, golden-section and 1e6 grid agree"""
    t, f = closedform.f_argmin(0.5, 1.0)
    t_gs = closedform.golden_section(closedform.f_objective, 0.5, 1.0)
    grid = np.linspace(0.5, 1.0, 1_000_000)
    vals = 2 / 3 * (grid + np.sqrt(grid**2 + 3 / grid))
    k = int(np.argmin(vals))
    print(f"t* = {t!r}, f* = {f!r}; golden {t_gs!r}; grid {grid[k]!r} -> {vals[k]!r}")
    assert 0.5 < t < 1.0
    assert f < 2 - 0.05
    assert abs(t - t_gs) <= 1e-6 and abs(t - grid[k]) <= 1e-6
    assert abs(f - closedform.f_objective(t_gs)) <= 1e-6 and abs(f - vals[k]) <= 1e-6


def test_criterion_03_case_consistency():
    """|case1.d_sq - case2.d_sq| <= 1e-9 on 1000 log-spaced t in [1e-2, 1e2]"""
    ts = np.logspace(-2, 2, 1000)
    worst = max(closedform.case_consistency(t) for t in ts)
    print(f"max |d1 - d2| = {worst!r}")
    assert worst <= 1e-9


def test_criterion_04_global_equilateral(eq_cert):
    """equilateral optimum 2 +- 1e-6 and all three canonical optima matched"""
    rep = oracle.match_known_optima(eq_cert)
    print(f"optimum_sq = {eq_cert.optimum_sq!r}, matched {sorted(rep.ids)}, unmatched {rep.unmatched}")
    assert abs(eq_cert.optimum_sq - 2) <= 1e-6
    assert rep.ids == {o.id for o in oracle.CANONICAL_OPTIMA}


def test_criterion_05_min_side_variant(ms_cert):
    """min-side optimum 2 +- 1e-6 and every witness has eq_residual <= 1e-6"""
    print(f"optimum_sq = {ms_cert.optimum_sq!r}")
    for i, w in enumerate(ms_cert.witnesses):
        m = triangle_metrics(w.brick_obj(), w.placement())
        print(f"  witness {i}: brick {w.brick} lambdas {w.lambdas} sides^2 {m.squares} residual {m.eq_residual!r}")
    assert abs(ms_cert.optimum_sq - 2) <= 1e-6
    assert all(w.residual <= 1e-6 for w in ms_cert.witnesses)


def test_criterion_06_oracle_agreement(ms_cert):
    """oracle(50) <= 2 + 1e-9 and below the search; oracle(200) within 1e-3 of 2"""
    v50, _ = oracle.brute_force_max(SearchDomain(), "min-side", 50)
    v200, arg = oracle.brute_force_max(SearchDomain(), "min-side", 200)
    print(f"oracle(50) = {v50!r}, search = {ms_cert.optimum_sq!r}, oracle(200) = {v200!r}, gap {2 - v200!r}")
    print(f"oracle(200) argmax {arg}")
    assert v50 <= 2 + 1e-9
    assert ms_cert.optimum_sq > v50
    assert 2 - v200 <= 1e-3


def test_criterion_07_lemma_suite():
    """1000 random corners minimize at a tilt endpoint; identity holds on 1e5 inputs"""
    rep = closedform.lemma_check(n=1000, seed=0)
    rng = np.random.default_rng(0)
    n = 100_000
    l1, l2 = rng.uniform(0.1, 10.0, n), rng.uniform(0.1, 10.0, n)
    g = math.pi / 2 - rng.uniform(0.0, math.pi / 2, n)
    theta = rng.uniform(0.0, 1.0, n) * (math.pi / 2 - g)
    area = np.array(
        [closedform.rect_area(closedform.RectParams(*args)) for args in zip(l1, l2, g, theta)]
    )
    err = float(np.max(np.abs(area - closedform.rect_area_identity(l1, l2, g, theta))))
    print(f"lemma: {rep.passed}/{rep.n} pass; identity max error {err!r}")
    assert rep.ok and rep.passed == 1000
    assert err <= 1e-12


def test_criterion_08_thin_brick_necessity(tmp_path, capsys):
    """side-10 thin brick is valid and inadmissible; relaxed verify-bound exits 2"""
    brick, placement, _ = closedform.thin_brick_for_side(10.0)
    m = triangle_metrics(brick, placement)
    code = cli.main(["verify-bound", "--min-side", "0.1", "--out", str(tmp_path)])
    out = capsys.readouterr().out
    print(f"brick {brick.sides}, volume {brick.volume!r}, residual {m.eq_residual!r}, side {math.sqrt(m.min_sq)!r}")
    print(f"relaxed verify-bound exit {code}; {out}")
    assert abs(brick.volume - 1) <= 1e-12
    assert m.eq_residual <= 1e-9
    assert math.sqrt(m.min_sq) >= 10 - 1e-9
    assert min(brick.sides) < INV_SQRT2
    assert code == 2


def test_criterion_09_determinism(tmp_path, capsys):
    """two verify-bound runs with the same flags write byte-identical certificates"""
    codes = [cli.main(["verify-bound", "--out", str(tmp_path / run)]) for run in ("a", "b")]
    capsys.readouterr()
    same = {
        name: (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()
        for name in cli.CERT_NAMES.values()
    }
    print(f"exit codes {codes}; identical {same}")
    assert all(same.values())


def test_criterion_10_symmetry(eq_cert, ms_cert):
    """20 random admissible bricks: all 8 triples agree within 1e-8; canonicalization idempotent"""
    domain = SearchDomain()
    lo, up = domain.log_bounds
    rng = np.random.default_rng(0)
    triples = enumerate_skew_triples()
    produced, spreads, empty = [], [], 0
    for _ in range(20):
        while True:
            xy = rng.uniform(lo, up - lo, 2)
            if xy.sum() <= up:
                break
        brick = domain.brick(*np.exp(xy))
        vals = []
        for triple in triples:
            try:
                placement, d = max_equilateral_side(brick, triple)
            except NoSolution:
                vals.append(None)
                continue
            vals.append(d)
            produced.append(Witness.from_placement(brick, placement, "equilateral"))
        if all(v is None for v in vals):
            # No equilateral triangle on any triple: the triples agree.
            empty += 1
            spreads.append(0.0)
        elif any(v is None for v in vals):
            spreads.append(math.inf)
        else:
            spreads.append(max(vals) - min(vals))
    produced += list(eq_cert.witnesses) + list(ms_cert.witnesses)
    idem = all(
        oracle.canonicalize_witness(oracle.canonicalize_witness(w)) == oracle.canonicalize_witness(w)
        for w in produced
    )
    print(f"max spread {max(spreads)!r}; bricks without solutions {empty}/20; "
          f"canonicalization idempotent on {len(produced)} witnesses: {idem}")
    assert max(spreads) <= 1e-8
    assert idem


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
