"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 crossing assertion, 4 budget or size limit, 5 too few scales for the
dimension proxy.  Errors land on stderr as "TAG: detail" with a stable
machine-matchable tag.  Scale parameters cross this boundary only as
exact "p/q" strings; decimals are rejected so no binary-decimal drift can
leak into certificates.  All output files are written atomically.
"""

from __future__ import annotations

import functools
import io
import json
import os
import sys
import tempfile
from fractions import Fraction

import click

from .continuum import ToothSequenceSpec, build_shark_teeth
from .cover import (CoverCertificate, SeparationCertificate,
                    certificate_from_json_dict, check_cover,
                    check_separation, lower_separation, truncation_guard,
                    upper_cover)
from .dimension import ifs_bound_report, sdim_estimate, sweep, \
    write_profile_csv
from .errors import (BudgetExceeded, CrossingAssertionFailure, HostMismatch,
                     ParseError, SdimlabError, SizeLimit, TooFewScales,
                     TooLarge, VerificationFailure)
from .geom import PLGraph, parse_rational
from .ifs import IFSSpec, attractor_cloud, cloud_diameter
from .limits import from_env
from .render import render_cloud_svg, render_svg

_EXIT_FOR = {
    VerificationFailure: 1,
    HostMismatch: 1,
    ParseError: 2,
    CrossingAssertionFailure: 3,
    BudgetExceeded: 4,
    SizeLimit: 4,
    TooLarge: 4,
    TooFewScales: 5,
}


def _cli_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except SdimlabError as exc:
            click.echo(f"{exc.tag}: {exc}", err=True)
            sys.exit(_EXIT_FOR.get(type(exc), 2))
    return wrapper


def _positive_rational(text: str, what: str) -> Fraction:
    value = parse_rational(text)
    if value <= 0:
        raise ParseError(f"{what} must be positive, got {text!r}")
    return value


def _read_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _atomic_write(path: str, text: str) -> None:
    target = os.path.abspath(path)
    fd, tmp = tempfile.mkstemp(dir=os.path.dirname(target),
                               prefix="." + os.path.basename(target) + ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(text)
        os.replace(tmp, target)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_json(path: str, doc: dict) -> None:
    _atomic_write(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _check_distinct(out: str, *ins: str) -> None:
    for inp in ins:
        if inp and os.path.abspath(inp) == os.path.abspath(out):
            raise ParseError(f"output path {out!r} equals an input path")


def _load_graph(path: str) -> PLGraph:
    return PLGraph.from_json_dict(_read_json(path))


@click.group()
def main() -> None:
    """Certified connected-cover bounds for plane continua and IFS
    attractors."""


@main.command("build")
@click.option("--spec", "spec_path", required=True, metavar="FILE",
              help="Tooth sequence spec (JSON).")
@click.option("--out", "out_path", required=True, metavar="FILE",
              help="Graph file to write.")
@_cli_errors
def cmd_build(spec_path: str, out_path: str) -> None:
    """Build a shark-teeth truncation as an exact plane graph."""
    _check_distinct(out_path, spec_path)
    spec = ToothSequenceSpec.from_json_dict(_read_json(spec_path))
    graph = build_shark_teeth(spec, budget=from_env())
    _write_json(out_path, graph.to_json_dict())
    click.echo(f"{len(graph.vertices)} vertices, {len(graph.edges)} edges")


def _cover_out_paths(out_path: str, mode: str) -> dict[str, str]:
    if mode != "both":
        return {mode: out_path}
    stem, ext = os.path.splitext(out_path)
    if not ext:
        ext = ".json"
    return {"lower": f"{stem}.lower{ext}", "upper": f"{stem}.upper{ext}"}


@main.command("cover")
@click.option("--graph", "graph_path", required=True, metavar="FILE")
@click.option("--epsilon", required=True, metavar="P/Q",
              help="Scale as an exact rational.")
@click.option("--mode", type=click.Choice(["upper", "lower", "both"]),
              default="both", show_default=True)
@click.option("--out", "out_path", required=True, metavar="FILE",
              help="Certificate file; mode=both derives .lower/.upper names.")
@_cli_errors
def cmd_cover(graph_path: str, epsilon: str, mode: str, out_path: str) -> None:
    """Compute certified bounds at one scale and write the certificates.

    On hosts built by the shark-teeth builder the lower bound is guarded:
    its points clear the omitted-amplitude threshold, so the certificate
    holds for the ambient continuum, not just the truncation.
    """
    _check_distinct(out_path, graph_path)
    eps = _positive_rational(epsilon, "epsilon")
    graph = _load_graph(graph_path)
    budget = from_env()
    paths = _cover_out_paths(out_path, mode)
    shown = []
    if "lower" in paths:
        guard = (truncation_guard(graph, eps)
                 if graph.meta.get("builder") == "shark-teeth" else None)
        low = lower_separation(graph, eps, guard=guard, budget=budget)
        _check_distinct(paths["lower"], graph_path)
        _write_json(paths["lower"], low.to_json_dict())
        shown.append(f"lower={len(low.points)}")
    if "upper" in paths:
        up = upper_cover(graph, eps, budget=budget)
        _check_distinct(paths["upper"], graph_path)
        _write_json(paths["upper"], up.to_json_dict())
        shown.append(f"upper={len(up.elements)}")
    click.echo(" ".join(shown))


@main.command("verify")
@click.option("--graph", "graph_path", required=True, metavar="FILE")
@click.option("--cert", "cert_path", required=True, metavar="FILE")
@_cli_errors
def cmd_verify(graph_path: str, cert_path: str) -> None:
    """Recheck a certificate against its host graph from scratch."""
    graph = _load_graph(graph_path)
    cert = certificate_from_json_dict(_read_json(cert_path))
    budget = from_env()
    if isinstance(cert, CoverCertificate):
        click.echo(f"upper={check_cover(graph, cert, budget)}")
    else:
        assert isinstance(cert, SeparationCertificate)
        click.echo(f"lower={check_separation(graph, cert, budget)}")


@main.command("sweep")
@click.option("--graph", "graph_path", required=True, metavar="FILE")
@click.option("--eps-start", required=True, metavar="P/Q")
@click.option("--eps-factor", required=True, metavar="P/Q",
              help="Geometric step, strictly between 0 and 1.")
@click.option("--steps", required=True, type=int)
@click.option("--out", "out_path", required=True, metavar="FILE",
              help="Profile CSV to write.")
@_cli_errors
def cmd_sweep(graph_path: str, eps_start: str, eps_factor: str, steps: int,
              out_path: str) -> None:
    """Sweep a geometric scale schedule and write the profile CSV.

    The CSV lands on disk even when the schedule is too short for the
    dimension proxy; the proxy failure is then reported as exit code 5.
    """
    _check_distinct(out_path, graph_path)
    start = _positive_rational(eps_start, "eps-start")
    factor = _positive_rational(eps_factor, "eps-factor")
    if not factor < 1:
        raise ParseError(f"eps-factor must be below 1, got {eps_factor!r}")
    if steps < 1:
        raise ParseError(f"steps must be >= 1, got {steps}")
    graph = _load_graph(graph_path)
    schedule = [start * factor ** i for i in range(steps)]
    profile = sweep(graph, schedule, budget=from_env())
    buf = io.StringIO()
    write_profile_csv(profile, buf)
    _atomic_write(out_path, buf.getvalue())
    low, high = sdim_estimate(profile)
    click.echo(f"sdim proxy [{low:.6f}, {high:.6f}]")


@main.command("ifs")
@click.option("--spec", "spec_path", required=True, metavar="FILE",
              help="IFS spec (JSON).")
@click.option("--delta", type=float, default=0.1, show_default=True,
              help="Slack over the dimension bound.")
@click.option("--depth", type=int, default=None,
              help="Cloud depth for the diameter measurement "
                   "(default: fixture hint or a size-capped cloud).")
@click.option("--out", "out_path", required=True, metavar="FILE",
              help="Report file to write.")
@_cli_errors
def cmd_ifs(spec_path: str, delta: float, depth: int | None,
            out_path: str) -> None:
    """Dimension-bound report for an IFS: bound, k0, eps0, per-scale table."""
    _check_distinct(out_path, spec_path)
    spec = IFSSpec.from_json_dict(_read_json(spec_path))
    if delta <= 0:
        raise ParseError(f"delta must be positive, got {delta}")
    budget = from_env()
    diameter = None
    if depth is not None:
        if depth < 0:
            raise ParseError(f"depth must be >= 0, got {depth}")
        diameter = cloud_diameter(attractor_cloud(spec, depth, budget=budget))
        if diameter <= 0:
            raise ParseError(
                f"depth {depth} cloud is a single point; cannot measure "
                f"a diameter from it")
    report = ifs_bound_report(spec, delta, diameter=diameter, budget=budget)
    _atomic_write(out_path, report)
    click.echo(report, nl=False)


@main.command("render")
@click.option("--graph", "graph_path", default=None, metavar="FILE")
@click.option("--spec", "spec_path", default=None, metavar="FILE",
              help="IFS spec; rendered as a point cloud.")
@click.option("--depth", type=int, default=6, show_default=True,
              help="Cloud depth for IFS rendering.")
@click.option("--out", "out_path", required=True, metavar="FILE",
              help="SVG file to write.")
@_cli_errors
def cmd_render(graph_path: str | None, spec_path: str | None, depth: int,
               out_path: str) -> None:
    """Draw a graph (lines) or an IFS attractor cloud (markers) as SVG."""
    if (graph_path is None) == (spec_path is None):
        raise ParseError("pass exactly one of --graph and --spec")
    _check_distinct(out_path, graph_path or "", spec_path or "")
    if graph_path is not None:
        svg = render_svg(_load_graph(graph_path))
    else:
        spec = IFSSpec.from_json_dict(_read_json(spec_path))
        if depth < 0:
            raise ParseError(f"depth must be >= 0, got {depth}")
        svg = render_cloud_svg(attractor_cloud(spec, depth,
                                               budget=from_env()))
    _atomic_write(out_path, svg)


if __name__ == "__main__":
    main()
