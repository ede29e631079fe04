"""Command-line front end.

Exit codes: 0 success, 1 usage or configuration error, 2 a mathematical
check failed, 3 a known optimal arrangement was not found.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import closedform, oracle
from .certificate import Certificate, dumps, format_float
from .errors import DomainError, NoSolution
from .figure import Panel, canonical_panels, render_svg
from .geometry import INV_SQRT2, triangle_metrics
from .optimizer import SearchDomain, SearchSettings, global_max_equilateral, global_max_min_side

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_CATALOGUE = 0, 1, 2, 3
CERT_NAMES = {"min-side": "certificate_min_side.json", "equilateral": "certificate_equilateral.json"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for failed checks here.
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class CliConfig:
    command: str
    out: str | None = None
    format: str = "json"
    tol: float = 1e-8
    grid_n: int = 33
    starts: int = 16
    seed: int = 0
    max_iter: int = 2000
    side: float | None = None
    min_side: float = INV_SQRT2
    timing: bool = False
    t_values: str | None = None
    n: int = 1000
    samples: int = 10_000
    len_ab: float | None = None
    len_ac: float | None = None
    gamma: float | None = None

    def settings(self) -> SearchSettings:
        return SearchSettings(
            grid_n=self.grid_n, starts=self.starts, tol=self.tol, max_iter=self.max_iter, seed=self.seed
        )

    def domain(self) -> SearchDomain:
        return SearchDomain(min_side=self.min_side)


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="format", action="store_const", const="json")
    fmt.add_argument("--csv", dest="format", action="store_const", const="csv")
    fmt.add_argument("--format", dest="format", choices=("json", "csv", "svg"))
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--grid-n", type=int, default=33)
    p.add_argument("--starts", type=int, default=16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-iter", type=int, default=2000)
    p.add_argument("--min-side", type=float, default=INV_SQRT2)
    p.add_argument("--out", default=None, help="output file (directory for verify-bound)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="brick-triangle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify-bound", parents=[common], help="search both objectives and certify side^2 <= 2")
    p.add_argument("--timing", action="store_true", help="record wall time (breaks byte-identical output)")

    p = sub.add_parser("closed-form", parents=[common], help="tabulate the explicit families")
    p.add_argument("--t", dest="t_values", default=None, help="comma-separated t values; 't_star' allowed")

    p = sub.add_parser("lemma-check", parents=[common], help="rectangle-area lemma on random corners")
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--samples", type=int, default=10_000, help="tilt grid size per case")
    p.add_argument("--ab", dest="len_ab", type=float, default=None)
    p.add_argument("--ac", dest="len_ac", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)

    p = sub.add_parser("thin-brick", parents=[common], help="brick carrying an equilateral triangle of given side")
    p.add_argument("--side", type=float, required=True)

    sub.add_parser("figure", parents=[common], help="SVG of the maximal arrangements")
    return parser


def parse_config(argv=None) -> CliConfig:
    ns = build_parser().parse_args(argv)
    d = {k: v for k, v in vars(ns).items() if v is not None}
    d.setdefault("format", "svg" if ns.command == "figure" else "json")
    return CliConfig(**d)


# ---------------------------------------------------------------------------
# output helpers


def _write(cfg: CliConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    try:
        Path(cfg.out).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write {cfg.out}: {exc}") from exc


def _cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format_float(v)
    return str(v)


def _csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(list(rows[0]))
    for r in rows:
        w.writerow([_cell(v) for v in r.values()])
    return buf.getvalue()


def _table(cfg: CliConfig, rows: list[dict]) -> str:
    if cfg.format == "csv":
        return _csv(rows)
    if cfg.format == "json":
        return dumps(rows) + "\n"
    raise UsageError(f"format {cfg.format!r} is not available for {cfg.command}")


# ---------------------------------------------------------------------------
# commands


def cmd_verify_bound(cfg: CliConfig) -> int:
    if cfg.format == "svg":
        raise UsageError("verify-bound writes certificates; use --json or --csv")
    domain, settings = cfg.domain(), cfg.settings()
    certs = [
        global_max_min_side(domain, settings, record_timing=cfg.timing),
        global_max_equilateral(domain, settings, record_timing=cfg.timing),
    ]
    outdir = Path(cfg.out or ".")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
        for cert in certs:
            (outdir / CERT_NAMES[cert.objective]).write_text(cert.dumps(), encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot write certificates to {outdir}: {exc}") from exc

    rows, code = [], EXIT_OK
    for cert in certs:
        problems = oracle.validate_certificate(Certificate.loads(cert.dumps()))
        ids = sorted({m.optimum_id for m in cert.matched})
        rows.append(
            {
                "objective": cert.objective,
                "optimum_sq": cert.optimum_sq,
                "bound_sq": cert.bound_check.bound_sq,
                "satisfied": cert.bound_check.satisfied,
                "sharp": cert.bound_check.sharp,
                "witnesses": len(cert.witnesses),
                "matched": " ".join(ids),
                "valid": not problems,
            }
        )
        for msg in problems:
            print(f"{cert.objective}: {msg}", file=sys.stderr)
        if problems or not cert.bound_check.satisfied:
            code = EXIT_CHECK
    eq = certs[1]
    found = {m.optimum_id for m in eq.matched}
    missing = [o.id for o in oracle.CANONICAL_OPTIMA if o.id not in found]
    if code == EXIT_OK and missing:
        print(f"missing canonical optima: {', '.join(missing)}", file=sys.stderr)
        code = EXIT_CATALOGUE
    sys.stdout.write(_csv(rows) if cfg.format == "csv" else dumps(rows) + "\n")
    return code


def _parse_t(text: str | None) -> list[float]:
    if text is None or not text.strip():
        return [float(t) for t in np.linspace(0.5, 1.0, 101)]
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if tok in ("t_star", "tstar"):
            out.append(closedform.T_STAR)
            continue
        try:
            out.append(float(tok))
        except ValueError as exc:
            raise UsageError(f"bad t value {tok!r}") from exc
    return out


def cmd_closed_form(cfg: CliConfig) -> int:
    rows = []
    for t in _parse_t(cfg.t_values):
        c1, c2 = closedform.case1_config(t), closedform.case2_config(t)
        rows.append(
            {
                "t": t,
                "f": closedform.f_objective(t),
                "case1_a_sq": c1.a_sq,
                "case1_b_sq": c1.b_sq,
                "case1_c_sq": c1.c_sq,
                "case1_d_sq": c1.d_sq,
                "case2_a_sq": c2.a_sq,
                "case2_b_sq": c2.b_sq,
                "case2_c_sq": c2.c_sq,
                "case2_z": c2.z,
                "case2_d_sq": c2.d_sq,
                "consistency": abs(c1.d_sq - c2.d_sq),
            }
        )
    _write(cfg, _table(cfg, rows))
    return EXIT_OK


def cmd_lemma_check(cfg: CliConfig) -> int:
    rep = closedform.lemma_check(
        n=cfg.n, seed=cfg.seed, samples=cfg.samples, len_ab=cfg.len_ab, len_ac=cfg.len_ac, gamma=cfg.gamma
    )
    if cfg.format == "csv":
        exact = rep.len_ab * rep.len_ac * np.sin(rep.gamma)
        rows = [
            {
                "case": i,
                "len_ab": float(rep.len_ab[i]),
                "len_ac": float(rep.len_ac[i]),
                "gamma": float(rep.gamma[i]),
                "min_area": float(rep.min_areas[i]),
                "exact": float(exact[i]),
                "pass": bool(rep.passed_mask[i]),
            }
            for i in range(rep.n)
        ]
        text = _csv(rows)
    elif cfg.format == "json":
        text = dumps(
            {
                "n": rep.n,
                "passed": rep.passed,
                "seed": cfg.seed,
                "samples": cfg.samples,
                "min_area_lo": float(rep.min_areas.min()),
                "min_area_hi": float(rep.min_areas.max()),
                "failures": [list(f) for f in rep.failures],
            }
        ) + "\n"
    else:
        raise UsageError("lemma-check writes json or csv")
    _write(cfg, text)
    for f in rep.failures:
        print(f"FAIL |AB|={f[0]!r} |AC|={f[1]!r} gamma={f[2]!r}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_CHECK


def cmd_thin_brick(cfg: CliConfig) -> int:
    if cfg.side is None:
        raise UsageError("thin-brick needs --side")
    try:
        brick, placement, conf = closedform.thin_brick_for_side(cfg.side)
    except NoSolution as exc:
        print(f"no solution: {exc}", file=sys.stderr)
        return EXIT_CHECK
    if cfg.format == "svg":
        _write(cfg, render_svg([Panel(f"side {cfg.side:g}", brick, placement)]))
        return EXIT_OK
    m = triangle_metrics(brick, placement)
    record = {
        "side": float(cfg.side),
        "t": conf.t,
        "brick": list(brick.sides),
        "volume": brick.volume,
        "triple": placement.triple.to_dict(),
        "lambdas": list(placement.lambdas),
        "side_sq": [m.sq_ab, m.sq_bc, m.sq_ca],
        "residual": m.eq_residual,
        "min_brick_side": min(brick.sides),
        "admissible": brick.is_admissible(cfg.min_side),
        "violation": not brick.is_admissible(cfg.min_side),
    }
    _write(cfg, _table(cfg, [record]) if cfg.format == "csv" else dumps(record) + "\n")
    return EXIT_OK


def cmd_figure(cfg: CliConfig) -> int:
    if cfg.format != "svg":
        raise UsageError("figure requires svg output")
    _write(cfg, render_svg(canonical_panels()))
    return EXIT_OK


COMMANDS = {
    "verify-bound": cmd_verify_bound,
    "closed-form": cmd_closed_form,
    "lemma-check": cmd_lemma_check,
    "thin-brick": cmd_thin_brick,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
