"""Command-line driver for convergence studies and phase sweeps.

    python -m sladvect converge --scheme cip --scheme spline --regime coupled \\
        --levels 80,160,320 --out cip_spline.csv
    python -m sladvect phase --mu 0.4 --M 40 --out phase.csv --svg phase.svg

Settings may also come from a JSON file given with ``--config``; explicit
flags override it.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .grid import uniform_grid
from .norms import (
    DEFAULT_MTILDE,
    ErrorReport,
    ErrorRow,
    ReferenceSolution,
    measure,
    sample_points,
)
from .schemes import SCHEMES, benchmark_problem, run
from .spectral import PHASE_SCHEMES, phase_table

logger = logging.getLogger(__name__)

REGIMES = ("coupled", "fixed-dt", "fixed-h")
DEFAULT_LEVELS = (80, 160, 320)
FULL_LEVELS = (80, 160, 320, 640, 1280)
# node-steps per row above which a row is refused as unreachable
MAX_WORK = 2 * 10**8

CONVERGE_HEADER = (
    "scheme,regime,M,N,h,dt,l2,l2_rate,h1,h1_rate,h2,h2_rate,wh2,wh2_rate"
)
PHASE_HEADER = "scheme,k,kh,theta,theta_unwrapped,theta_exact,amplification"


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str = "converge"
    schemes: List[str] = field(default_factory=list)
    regime: str = "coupled"
    levels: List[int] = field(default_factory=list)
    fixed: float = 1e-4
    mtilde: int = DEFAULT_MTILDE
    mu: float = 0.4
    M: int = 40
    out: Optional[str] = None
    svg: Optional[str] = None
    full: bool = False
    jobs: int = 0
    max_work: int = MAX_WORK

    def __post_init__(self):
        if not self.schemes:
            self.schemes = ["cip", "spline"] if self.command == "converge" else list(PHASE_SCHEMES)
        if not self.levels and self.command == "converge":
            self.levels = list(FULL_LEVELS if self.full else DEFAULT_LEVELS)
        self.validate()

    def validate(self):
        if self.command not in ("converge", "phase"):
            raise ConfigError(f"unknown command {self.command!r}")
        for s in self.schemes:
            if s not in SCHEMES:
                raise ConfigError(f"unknown scheme {s!r}")
        if self.command == "converge":
            if self.regime not in REGIMES:
                raise ConfigError(f"unknown regime {self.regime!r}")
            if any(b <= a for a, b in zip(self.levels, self.levels[1:])):
                raise ConfigError("levels must be strictly increasing")
            if any(int(v) != v or v < 4 for v in self.levels):
                raise ConfigError("levels must be integers >= 4")
            if self.regime != "coupled":
                if not self.fixed or self.fixed <= 0:
                    raise ConfigError(f"regime {self.regime} needs a positive --fixed value")
                if abs(1.0 / self.fixed - round(1.0 / self.fixed)) > 1e-9 * (1.0 / self.fixed):
                    raise ConfigError("--fixed must be the reciprocal of an integer")
            if self.mtilde < 100:
                raise ConfigError("mtilde must be at least 100")
        else:
            if self.M < 4 or self.M % 2:
                raise ConfigError("--M must be an even integer >= 4")
            if not 0 <= self.mu <= 1:
                raise ConfigError("--mu must lie in [0, 1]")

    def resolution(self, level, horizon=1.0):
        """``(M, N)`` for one level of the study."""
        if self.regime == "coupled":
            return level, max(1, round(horizon * level))
        fixed_count = round(1.0 / self.fixed)
        if self.regime == "fixed-dt":
            return level, max(1, round(horizon * fixed_count))
        return fixed_count, level


def _compute_row(kind, problem, ref, M, N, mtilde, max_work):
    h = 1.0 / M
    dt = problem.horizon / N
    row = ErrorRow(M=M, N=N, h=h, dt=dt)
    if M * N > max_work:
        row.error = f"work M*N={M * N} exceeds limit {max_work}"
        return row
    try:
        state = run(kind, problem, uniform_grid(M), N)
        row.l2, row.h1, row.h2, row.wh2 = measure(state.interpolant(kind), ref, h, dt, mtilde)
    except (MemoryError, ValueError, ArithmeticError, RuntimeError) as exc:
        row.error = f"{type(exc).__name__}: {exc}"
    return row


def run_convergence(config, problem=None, ref=None):
    """Error reports (one per scheme) for the configured study."""
    problem = problem or benchmark_problem()
    if ref is None:
        ref = ReferenceSolution(problem)
    # warm the reference cache once; rows then share it read-only
    x = sample_points(config.mtilde)
    ref.eval(x)
    ref.eval_deriv2(x)

    tasks = [
        (kind, *config.resolution(level, problem.horizon))
        for kind in config.schemes
        for level in config.levels
    ]
    jobs = config.jobs or min(len(tasks), os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [
            pool.submit(_compute_row, kind, problem, ref, M, N, config.mtilde, config.max_work)
            for kind, M, N in tasks
        ]
        rows = [f.result() for f in futures]

    reports = []
    it = iter(rows)
    for kind in config.schemes:
        report = ErrorReport(kind, config.regime)
        report.rows = [next(it) for _ in config.levels]
        reports.append(report)
    return reports


def _fmt_err(v):
    return "%.4e" % v


def _fmt_rate(v):
    return "" if v is None else "%.3f" % v


def format_convergence_csv(reports):
    lines = [CONVERGE_HEADER]
    for rep in reports:
        rates = {c: rep.rates(c) for c in ("l2", "h1", "h2", "wh2")}
        for i, row in enumerate(rep.rows):
            if not row.ok:
                lines.append(f"# error scheme={rep.scheme} M={row.M} N={row.N}: {row.error}")
                continue
            fields = [rep.scheme, rep.regime, str(row.M), str(row.N), "%.10g" % row.h, "%.10g" % row.dt]
            for c in ("l2", "h1", "h2", "wh2"):
                fields += [_fmt_err(getattr(row, c)), _fmt_rate(rates[c][i])]
            lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def format_phase_csv(rows):
    lines = [PHASE_HEADER]
    for r in rows:
        lines.append(
            "%s,%d,%.6f,%.12e,%.12e,%.12e,%.12e"
            % (r.scheme, r.k, r.kh, r.theta, r.theta_unwrapped, r.theta_exact, r.amplification)
        )
    return "\n".join(lines) + "\n"


_COLORS = {
    "cip": "#d62728",
    "spline": "#1f77b4",
    "lagrange": "#2ca02c",
    "upwind": "#9467bd",
    "exact": "#000000",
}


def render_phase_svg(rows, mu, title=None):
    """Line chart of unwrapped phase shift against ``kh`` plus the exact line."""
    width, height = 800, 600
    left, right, top, bottom = 80, 180, 50, 60
    pw, ph = width - left - right, height - top - bottom

    series = {}
    for r in rows:
        series.setdefault(r.scheme, []).append((r.kh, r.theta_unwrapped))
    series["exact"] = [(0.0, 0.0), (0.5, 2 * math.pi * mu * 0.5)]

    ys = [y for pts in series.values() for _, y in pts]
    y_lo, y_hi = min(0.0, min(ys)), max(ys)
    if y_hi - y_lo < 1e-12:
        y_hi = y_lo + 1.0

    def sx(v):
        return left + pw * v / 0.5

    def sy(v):
        return top + ph * (1.0 - (v - y_lo) / (y_hi - y_lo))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="0 0 {width} {height}" width="{width}" height="{height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title is None:
        title = f"Phase shift per step, mu = {mu:g}"
    out.append(f'<text x="{left + pw / 2:.1f}" y="{top - 20}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="16">{title}</text>')
    for i in range(6):
        xv = 0.1 * i
        out.append(f'<line x1="{sx(xv):.2f}" y1="{top + ph}" x2="{sx(xv):.2f}" '
                   f'y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(xv):.2f}" y="{top + ph + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="12">{xv:.1f}</text>')
    for i in range(6):
        yv = y_lo + (y_hi - y_lo) * i / 5
        out.append(f'<line x1="{left - 5}" y1="{sy(yv):.2f}" x2="{left}" '
                   f'y2="{sy(yv):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(yv) + 4:.2f}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="12">{yv:.2f}</text>')
    out.append(f'<text x="{left + pw / 2:.1f}" y="{height - 15}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="14">kh</text>')
    out.append(f'<text x="20" y="{top + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
               f'font-size="14" transform="rotate(-90 20 {top + ph / 2:.1f})">theta</text>')

    for idx, (name, pts) in enumerate(series.items()):
        color = _COLORS.get(name, "#7f7f7f")
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        dash = ' stroke-dasharray="6,4"' if name == "exact" else ""
        out.append(f'<polyline points="{coords}" fill="none" stroke="{color}" '
                   f'stroke-width="2"{dash}/>')
        ly = top + 20 + 22 * idx
        out.append(f'<line x1="{left + pw + 15}" y1="{ly}" x2="{left + pw + 45}" y2="{ly}" '
                   f'stroke="{color}" stroke-width="2"{dash}/>')
        out.append(f'<text x="{left + pw + 52}" y="{ly + 4}" font-family="sans-serif" '
                   f'font-size="13">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def run_phase(config):
    rows = phase_table(config.schemes, config.M, config.mu)
    return rows, format_phase_csv(rows), render_phase_svg(rows, config.mu)


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _levels(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from exc


def build_parser():
    parser = argparse.ArgumentParser(prog="sladvect", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        # defaults are None so a config file can fill what the flags leave out
        p.add_argument("--config", help="JSON file with settings; flags take precedence")
        p.add_argument("--scheme", dest="schemes", action="append", choices=SCHEMES)
        p.add_argument("--out", help="CSV output path (default stdout)")

    conv = sub.add_parser("converge", help="convergence table for the benchmark problem")
    common(conv)
    conv.add_argument("--regime", choices=REGIMES)
    conv.add_argument("--levels", type=_levels, help="comma-separated M (or N for fixed-h)")
    conv.add_argument("--fixed", type=float, help="fixed dt or h for the fixed regimes")
    conv.add_argument("--mtilde", type=int)
    conv.add_argument("--full", action="store_true", default=None,
                      help="levels 80 to 1280")
    conv.add_argument("--jobs", type=int, help="worker threads (default: one per row)")

    ph = sub.add_parser("phase", help="one-step phase shifts of every scheme")
    common(ph)
    ph.add_argument("--mu", type=float)
    ph.add_argument("--M", type=int)
    ph.add_argument("--svg", help="SVG output path")
    return parser


def config_from_args(args):
    settings = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            settings.update(json.load(fh))
    for key, value in vars(args).items():
        if key in ("config", "verbose") or value is None:
            continue
        settings[key] = value
    known = ExperimentConfig.__dataclass_fields__
    unknown = set(settings) - set(known)
    if unknown:
        raise ConfigError(f"unknown settings: {', '.join(sorted(unknown))}")
    return ExperimentConfig(**settings)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        config = config_from_args(args)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        parser.error(str(exc))

    if config.command == "converge":
        reports = run_convergence(config)
        _write(config.out, format_convergence_csv(reports))
        failed = [r for rep in reports for r in rep.rows if not r.ok]
        for r in failed:
            logger.error("row M=%d N=%d failed: %s", r.M, r.N, r.error)
        return 1 if failed else 0

    _, csv_text, svg_text = run_phase(config)
    _write(config.out, csv_text)
    if config.svg:
        _write(config.svg, svg_text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
