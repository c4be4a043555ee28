"""
Command-line interface for trianglecf.

Usage:
    trianglecf classify --sides 1,1.5,2.239
    trianglecf eval --sides 1,1,1 --grid 512 --format csv
    trianglecf check --random 100 --seed 42
    trianglecf oracle --sides 1,1.06,1.127 --grid 50
    trianglecf formfactor --sides 1,1,1 --q 0,1,2,5

Exit codes: 0 success, 1 failed validation or quadrature, 2 bad input.
"""

from __future__ import annotations

import json
import math
import sys
from typing import Any, Iterable, Sequence

import click
import numpy as np

from . import __version__
from .cf_eval import CorrelationFunction
from .checks import Tolerances, random_triangles, run_checks
from .errors import NonPositiveSide, NonTriangle, QuadratureFailure
from .formfactor import form_factor
from .geometry import TriangleMetrics, derive_metrics
from .oracle import PlacedTriangle, gamma_oracle

__all__ = ["cli", "main", "format_number", "to_json", "to_csv"]

FORMAT_VERSION = 1


def format_number(x: float | int | None) -> str:
    """17 significant digits (round-trip exact); ``null`` for a missing value."""
    if x is None:
        return "null"
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    return f"{x:.17g}"


def to_json(obj: Any, indent: int = 0) -> str:
    """Deterministic JSON with every float written via :func:`format_number`.

    Lists of scalars stay on one line so each table row reads as one line.
    """
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {to_json(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(to_json(v) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + to_json(v, indent + 1) for v in obj) + "\n" + pad + "]"
    if isinstance(obj, str):
        return json.dumps(obj)
    if obj is None or isinstance(obj, (bool, int, float)):
        return format_number(obj)
    if isinstance(obj, np.floating):
        return format_number(float(obj))
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def to_csv(columns: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    lines = [",".join(columns)]
    lines += [",".join(format_number(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None:
        click.echo(text, nl=False)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def _parse_floats(text: str, what: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise click.BadParameter(f"could not parse {what} list {text!r}")


def _metrics(sides: str) -> TriangleMetrics:
    vals = _parse_floats(sides, "side")
    if len(vals) != 3:
        raise click.BadParameter(f"expected three sides, got {len(vals)}", param_hint="--sides")
    try:
        return derive_metrics(vals)
    except (NonTriangle, NonPositiveSide) as exc:
        raise click.BadParameter(str(exc), param_hint="--sides")


def _radii(m: TriangleMetrics, r_list: str | None, grid: int | None) -> list[float]:
    if (r_list is None) == (grid is None):
        raise click.UsageError("give exactly one of --r or --grid")
    if grid is not None:
        if grid < 2:
            raise click.BadParameter("need at least 2 points", param_hint="--grid")
        rs = [float(x) for x in np.linspace(0.0, m.c, grid)]
    else:
        rs = []
        for tok in r_list.split(","):
            tok = tok.strip()
            if not tok:
                continue
            if tok == "c":
                rs.append(m.c)
                continue
            try:
                rs.append(float(tok))
            except ValueError:
                raise click.BadParameter(f"bad radius {tok!r}", param_hint="--r")
    if any(not math.isfinite(r) or r < 0.0 for r in rs):
        raise click.BadParameter("radii must be finite and non-negative", param_hint="--r")
    return sorted(set(rs))


def _meta(command: str, m: TriangleMetrics, case: str, **inputs: Any) -> dict:
    return {
        "tool": "trianglecf",
        "version": __version__,
        "format_version": FORMAT_VERSION,
        "command": command,
        "inputs": {"sides": [m.a, m.b, m.c], **inputs},
        "case": case,
    }


def _table(fmt: str, meta: dict, columns: Sequence[str], rows: list[Sequence[Any]]) -> str:
    if fmt == "csv":
        return to_csv(columns, rows)
    return to_json({"meta": meta, "rows": [dict(zip(columns, row)) for row in rows]})


sides_option = click.option("--sides", required=True, help="Three side lengths, e.g. 1,1.5,1.611.")
format_option = click.option(
    "--format", "fmt", type=click.Choice(["csv", "json"]), default="json", show_default=True
)
out_option = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output file (default stdout).")


@click.group()
@click.version_option(__version__, prog_name="trianglecf")
def cli() -> None:
    """Isotropic correlation function of a triangle in closed form."""


@cli.command()
@sides_option
@out_option
def classify(sides: str, out: str | None) -> None:
    """Ordered metrics, shape case and breakpoint ladder as JSON."""
    m = _metrics(sides)
    cf = CorrelationFunction.from_metrics(m)
    body = {
        "meta": _meta("classify", m, cf.case.value),
        "triangle": {
            "sides": {"a": m.a, "b": m.b, "c": m.c},
            "angles_rad": {"alpha": m.alpha, "beta": m.beta, "gamma": m.gamma_ang},
            "angles_deg": {
                "alpha": math.degrees(m.alpha),
                "beta": math.degrees(m.beta),
                "gamma": math.degrees(m.gamma_ang),
            },
            "heights": {"h_a": m.h_a, "h_b": m.h_b, "h_c": m.h_c},
            "S": m.S,
            "L": m.L,
            "case": cf.case.value,
            "breakpoints": list(cf.ladder.points),
            "intervals": list(cf.ladder.labels),
        },
    }
    _emit(to_json(body), out)


@cli.command("eval")
@sides_option
@click.option("--r", "r_list", default=None, help="Comma-separated radii; 'c' means the longest side.")
@click.option("--grid", type=int, default=None, help="Uniform grid of N radii on [0, c].")
@format_option
@out_option
def eval_cmd(sides: str, r_list: str | None, grid: int | None, fmt: str, out: str | None) -> None:
    """Tabulate gamma and its first three derivatives."""
    m = _metrics(sides)
    rs = _radii(m, r_list, grid)
    cf = CorrelationFunction.from_metrics(m)
    rows = [(v.r, v.gamma, v.d1, v.d2, v.d3) for v in cf.profile(rs)]
    meta = _meta("eval", m, cf.case.value, radii=len(rs))
    _emit(_table(fmt, meta, ("r", "gamma", "d1", "d2", "d3"), rows), out)


@cli.command()
@click.option("--sides", default=None, help="Three side lengths.")
@click.option("--random", "n_random", type=int, default=None, help="Number of seeded random triangles.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--tol", type=float, default=1e-7, show_default=True, help="Oracle defect tolerance.")
@click.option("--no-oracle", is_flag=True, help="Skip the (slower) oracle comparisons.")
@out_option
def check(sides: str | None, n_random: int | None, seed: int, tol: float, no_oracle: bool, out: str | None) -> None:
    """Run the invariant suite; exit 1 if anything fails."""
    if (sides is None) == (n_random is None):
        raise click.UsageError("give exactly one of --sides or --random")
    if n_random is not None:
        if n_random < 1:
            raise click.BadParameter("must be positive", param_hint="--random")
        tris = random_triangles(n_random, seed)
    else:
        tris = [_metrics(sides)]
    tols = Tolerances(oracle=tol)
    try:
        reports = [run_checks(m, tols, oracle=not no_oracle) for m in tris]
    except QuadratureFailure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    ok = all(r.passed for r in reports)
    body = {
        "meta": {
            "tool": "trianglecf",
            "version": __version__,
            "format_version": FORMAT_VERSION,
            "command": "check",
            "inputs": {"sides": sides, "random": n_random, "seed": seed, "tol": tol, "oracle": not no_oracle},
        },
        "status": "pass" if ok else "fail",
        "rows": [r.to_dict() for r in reports],
    }
    _emit(to_json(body), out)
    if not ok:
        sys.exit(1)


@cli.command()
@sides_option
@click.option("--r", "r_list", default=None, help="Comma-separated radii; 'c' means the longest side.")
@click.option("--grid", type=int, default=None, help="Uniform grid of N radii on [0, c].")
@click.option("--tol", type=float, default=1e-7, show_default=True, help="Maximum allowed defect.")
@format_option
@out_option
def oracle(sides: str, r_list: str | None, grid: int | None, tol: float, fmt: str, out: str | None) -> None:
    """Geometric reference values and their defect against the closed form."""
    m = _metrics(sides)
    rs = _radii(m, r_list, grid)
    cf = CorrelationFunction.from_metrics(m)
    t = PlacedTriangle.from_metrics(m)
    try:
        rows = []
        for r in rs:
            g_or = gamma_oracle(t, r, min(tol * 1e-3, 1e-10))
            g_an = cf.correlation(r)
            rows.append((r, g_or, g_an, abs(g_or - g_an)))
    except QuadratureFailure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    meta = _meta("oracle", m, cf.case.value, radii=len(rs), tol=tol)
    _emit(_table(fmt, meta, ("r", "gamma_oracle", "gamma", "defect"), rows), out)
    worst = max((row[3] for row in rows), default=0.0)
    if worst > tol:
        click.echo(f"max defect {worst:.3g} exceeds tolerance {tol:.3g}", err=True)
        sys.exit(1)


@cli.command()
@sides_option
@click.option("--q", "q_list", default=None, help="Comma-separated q values.")
@click.option("--grid", type=int, default=None, help="Uniform grid of N q values on [0, qmax].")
@click.option("--qmax", type=float, default=None, help="Upper end of --grid (default 50/c).")
@format_option
@out_option
def formfactor(sides: str, q_list: str | None, grid: int | None, qmax: float | None, fmt: str, out: str | None) -> None:
    """Hankel transform F(q) = 2 pi int gamma(r) r J0(qr) dr."""
    m = _metrics(sides)
    if (q_list is None) == (grid is None):
        raise click.UsageError("give exactly one of --q or --grid")
    if grid is not None:
        if grid < 2:
            raise click.BadParameter("need at least 2 points", param_hint="--grid")
        qs = [float(x) for x in np.linspace(0.0, qmax if qmax is not None else 50.0 / m.c, grid)]
    else:
        qs = _parse_floats(q_list, "q")
    if any(not math.isfinite(q) or q < 0.0 for q in qs):
        raise click.BadParameter("q values must be finite and non-negative", param_hint="--q")
    qs = sorted(set(qs))
    cf = CorrelationFunction.from_metrics(m)
    try:
        rows = [(q, form_factor(cf, q)) for q in qs]
    except QuadratureFailure as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    meta = _meta("formfactor", m, cf.case.value, points=len(qs))
    _emit(_table(fmt, meta, ("q", "F"), rows), out)


def main() -> None:
    cli()
