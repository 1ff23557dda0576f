"""Command-line interface"""
import logging
from contextlib import contextmanager
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import click
import networkx as nx
from pydantic import ValidationError

from app.application.dto.polynomial_dto import PolynomialDTO, PolynomialReportDTO
from app.application.dto.report_dto import C2RowDTO
from app.application.dto.run_config import RunConfig
from app.domain.entities.multigraph import MultiGraph
from app.domain.exceptions import (
    BudgetExceededError,
    ConsistencyError,
    GraphInputError,
    PolynomialError,
    PreconditionError,
)
from app.infrastructure.config.settings import settings
from app.infrastructure.log_config import setup_logging
from app.infrastructure.storage import save_report
from app.presentation.cli.dependencies import UseCases, get_use_cases
from app.presentation.cli.formatters import dump, render

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")


class InputError(click.ClickException):
    """Usage or parse error"""
    exit_code = 2


@contextmanager
def handled_errors() -> Iterator[None]:
    """Map domain errors to exit codes: 2 for input, 1 for consistency failures"""
    try:
        yield
    except (GraphInputError, PreconditionError, PolynomialError, BudgetExceededError) as exc:
        raise InputError(str(exc)) from exc
    except ConsistencyError as exc:
        raise click.ClickException(f"internal consistency failure: {exc}") from exc


def parse_ids(raw: str, what: str) -> List[int]:
    try:
        return [int(token) for token in raw.split(",") if token.strip()]
    except ValueError:
        raise InputError(f"{what} expects comma-separated edge ids, got '{raw}'") from None


def parse_dodgson(raw: str) -> Tuple[List[int], List[int], List[int]]:
    """'I;J;K' edge lists; a bare pair 'i,j' means I = {i}, J = {j}"""
    parts = raw.split(";")
    if len(parts) == 1:
        ids = parse_ids(parts[0], "--dodgson")
        if len(ids) != 2:
            raise InputError("--dodgson without ';' takes exactly two edge ids 'i,j'")
        return [ids[0]], [ids[1]], []
    if len(parts) > 3:
        raise InputError("--dodgson takes at most three ';'-separated lists 'I;J;K'")
    parts += [""] * (3 - len(parts))
    rows, cols, zeroed = (parse_ids(part, "--dodgson") for part in parts)
    return rows, cols, zeroed


def graph_options(func):
    for option in reversed([
        click.option("--graph", "graph_refs", multiple=True, help="Graph file or built-in name (repeatable)"),
        click.option("--q", "qs", default=None, help="Comma-separated prime powers, e.g. 2,3,4"),
        click.option("--budget", type=int, default=settings.COUNT_BUDGET, show_default=True, help="Leaf budget per count"),
        click.option("--seed", type=int, default=settings.DEFAULT_SEED, show_default=True),
    ]):
        func = option(func)
    return func


def remember_save(ctx: click.Context, param: click.Parameter, value: bool) -> bool:
    ctx.meta["save"] = value
    return value


def output_options(func):
    for option in reversed([
        click.option("--format", "fmt", type=click.Choice(FORMATS), default=settings.DEFAULT_FORMAT, show_default=True),
        click.option("--out", type=click.Path(dir_okay=False), default=None, help="Also write the report here"),
        click.option("--save", is_flag=True, expose_value=False, callback=remember_save,
                     help="Also write the report into REPORT_DIR as <command>.<ext>"),
        click.option("--verbose", is_flag=True, help="Debug logging on stderr"),
    ]):
        func = option(func)
    return func


def start(subcommand: str, verbose: bool, **fields: Any) -> Tuple[RunConfig, UseCases]:
    setup_logging("DEBUG" if verbose else None)
    raw_qs = fields.pop("qs", None)
    try:
        qs = settings.get_qs(raw_qs) if raw_qs is not None else []
        config = RunConfig(subcommand=subcommand, qs=qs, **fields)
    except (ValueError, ValidationError) as exc:
        raise InputError(str(exc)) from exc
    logger.info("🚀 %s %s", settings.APP_NAME, subcommand)
    return config, get_use_cases(config.budget, config.seed)


def load_graphs(use_cases: UseCases, refs: Sequence[str], required: bool = True) -> List[MultiGraph]:
    if required and not refs:
        raise InputError("no graph given: pass a built-in name or a graph file")
    with handled_errors():
        return [use_cases.repository.get(ref) for ref in refs]


def emit(
    config: RunConfig,
    out: Optional[str],
    results: Sequence[Any],
    rows: Sequence[Dict[str, Any]],
    lines: Sequence[str],
) -> None:
    body = render(config.format, config, results, rows, lines)
    click.echo(body)
    if out or click.get_current_context().meta.get("save"):
        save_report(body, out, config.subcommand, config.format)


def fail_if(failed: bool) -> None:
    if failed:
        click.get_current_context().exit(1)


@click.group()
@click.version_option(settings.APP_VERSION, prog_name=settings.APP_NAME)
def cli() -> None:
    """Dual graph polynomials, F_q point counts, c2 and duality admissibility"""


@cli.command()
@click.argument("graphs", nargs=-1)
@graph_options
@output_options
@click.option("--dodgson", multiple=True, help="Dodgson minor 'I;J;K' (rows, columns, zeroed), repeatable")
@click.option("--check", is_flag=True, help="Cross-check tree-sum and determinant backends")
def poly(graphs, graph_refs, qs, budget, seed, fmt, out, verbose, dodgson, check) -> None:
    """Print Psi_G, phi_G and requested dual Dodgson polynomials"""
    refs = list(graphs) + list(graph_refs)
    config, uc = start("poly", verbose, graphs=refs, qs=qs, budget=budget, seed=seed, format=fmt)
    minors = [parse_dodgson(raw) for raw in dodgson]
    reports, rows, lines = [], [], []
    disagree = False
    with handled_errors():
        for graph in load_graphs(uc, refs):
            if not graph.is_connected():
                logger.warning("⚠️ %s is disconnected, its polynomials vanish", graph.name)
            phi = uc.polynomials.phi(graph)
            psi = uc.polynomials.psi(graph)
            polys = [PolynomialDTO.from_poly("psi", psi), PolynomialDTO.from_poly("phi", phi)]
            for rows_, cols_, zeroed in minors:
                label = "dodgson " + ";".join(",".join(map(str, part)) for part in (rows_, cols_, zeroed))
                polys.append(PolynomialDTO.from_poly(label, uc.polynomials.dual_dodgson(graph, rows_, cols_, zeroed)))
            agree = None
            if check:
                agree = phi == uc.polynomials.phi(graph, "tree-sum") and psi == uc.polynomials.psi(graph, "determinant")
                disagree = disagree or not agree
            report = PolynomialReportDTO(
                graph=graph.name,
                vertices=graph.vertex_count,
                edges=graph.edge_count,
                connected=graph.is_connected(),
                polynomials=polys,
                backends_agree=agree,
            )
            reports.append(report)
            lines.append(f"# {graph.name}")
            for p in polys:
                rows.append({"graph": graph.name, "label": p.label, "degree": p.degree, "text": p.text})
                lines.append(f"{p.label}: {p.text}")
            if agree is not None:
                lines.append(f"backends agree: {str(agree).lower()}")
    emit(config, out, reports, rows, lines)
    fail_if(disagree)


@cli.command()
@click.argument("graphs", nargs=-1)
@graph_options
@output_options
@click.option("--fourface", default=None, help="4-cycle 'e1,e2,e3,e4' for the 4-face c2 formula")
def c2(graphs, graph_refs, qs, budget, seed, fmt, out, verbose, fourface) -> None:
    """c2 in parametric and dual parametric space per graph and q"""
    refs = list(graphs) + list(graph_refs)
    config, uc = start("c2", verbose, graphs=refs, qs=qs, budget=budget, seed=seed, format=fmt)
    face = parse_ids(fourface, "--fourface") if fourface else None
    results, lines = [], []
    mismatch = False
    with handled_errors():
        for graph in load_graphs(uc, refs):
            for q in config.qs or settings.get_qs():
                parametric = uc.counting.c2_parametric(graph, q)
                dual = uc.counting.c2_dual(graph, q)
                row = C2RowDTO(graph=graph.name, q=q, c2_parametric=parametric, c2_dual=dual, equal=parametric == dual)
                if face is not None:
                    value = uc.congruences.c2_dual_fourface(graph, face, q)
                    row = row.model_copy(update={"fourface": value, "fourface_equal": value == dual})
                if graph.is_log_divergent() and not (row.equal and row.fourface_equal is not False):
                    mismatch = True
                results.append(row)
                extra = "" if row.fourface is None else f" fourface={row.fourface}"
                lines.append(
                    f"{graph.name} q={q} c2_parametric={parametric} c2_dual={dual} "
                    f"equal={str(row.equal).lower()}{extra}"
                )
    emit(config, out, results, [dump(r) for r in results], lines)
    fail_if(mismatch)


@cli.command()
@click.argument("graphs", nargs=-1)
@graph_options
@output_options
@click.option("--random", "random_count", type=int, default=0, help="Add N seeded random connected graphs")
@click.option("--edges", type=int, default=8, show_default=True, help="Maximum edges of random graphs")
def verify(graphs, graph_refs, qs, budget, seed, fmt, out, verbose, random_count, edges) -> None:
    """Run every applicable identity and congruence"""
    refs = list(graphs) + list(graph_refs)
    config, uc = start("verify", verbose, graphs=refs, qs=qs, budget=budget, seed=seed, format=fmt)
    loaded = load_graphs(uc, refs, required=random_count == 0)
    with handled_errors():
        loaded += uc.graphs.random_graphs(random_count, edges, seed)
        report = uc.suite.run(loaded, config.qs or settings.get_qs(), seed)
    rows = [dict(dump(r), kind="identity") for r in report.identities]
    rows += [dict(dump(r), kind="congruence") for r in report.congruences]
    lines = []
    for row in rows:
        status = "skip" if row["skipped"] else ("pass" if row["pass"] else "FAIL")
        q = f" q={row['q']}" if "q" in row else ""
        lines.append(f"{status} {row['statement']} {row['graph']}{q}")
    lines.append(f"passed={report.passed} failed={report.failed} skipped={report.skipped}")
    emit(config, out, [report], rows, lines)
    fail_if(not report.ok)


@cli.command()
@click.argument("graphs", nargs=-1)
@graph_options
@output_options
@click.option("--mode", type=click.Choice(["combinatorial", "pointcount"]), default=None,
              help="Defaults to pointcount when --q is given, else combinatorial")
def admissible(graphs, graph_refs, qs, budget, seed, fmt, out, verbose, mode) -> None:
    """Duality-admissibility certificate per graph"""
    refs = list(graphs) + list(graph_refs)
    config, uc = start("admissible", verbose, graphs=refs, qs=qs, budget=budget, seed=seed, format=fmt)
    mode = mode or ("pointcount" if config.qs else "combinatorial")
    certificates, rows, lines = [], [], []
    with handled_errors():
        for graph in load_graphs(uc, refs):
            if mode == "pointcount":
                certificate = uc.admissibility.check_admissible_pointcount(graph, config.qs or settings.get_qs())
            else:
                certificate = uc.admissibility.check_admissible_combinatorial(graph)
            certificates.append(certificate)
            for verdict in certificate.verdicts:
                rows.append(dict(dump(verdict), graph=graph.name, mode=mode))
            lines.append(
                f"{graph.name} {mode}: {'pass' if certificate.passed else 'FAIL'} "
                f"checked={certificate.checked}/{certificate.total_specs} "
                f"partial={str(certificate.partial).lower()}"
            )
            lines.extend(f"  girth>=5 {spec}" for spec in certificate.flagged_girth5)
            lines.extend(f"  failed {spec}" for spec in certificate.failures if mode == "pointcount")
    emit(config, out, certificates, rows, lines)
    fail_if(any(not c.passed for c in certificates))


@cli.command("girth-search")
@output_options
@click.option("--vmin", type=int, default=4, show_default=True)
@click.option("--vmax", type=int, default=None, help="Defaults to the exhaustive limit")
@click.option("--exhaustive-limit", type=int, default=settings.GIRTH_EXHAUSTIVE_LIMIT, show_default=True)
@click.option("--stretch", is_flag=True, help=f"Search exhaustively up to v={settings.GIRTH_STRETCH_LIMIT}")
def girth_search(fmt, out, verbose, vmin, vmax, exhaustive_limit, stretch) -> None:
    """Girth >= 5 graphs on v vertices with more than 2(v-1) edges"""
    if stretch:
        exhaustive_limit = max(exhaustive_limit, settings.GIRTH_STRETCH_LIMIT)
    if vmax is None:
        vmax = exhaustive_limit
    config, uc = start(
        "girth-search", verbose, format=fmt, vmin=vmin, vmax=vmax, exhaustive_limit=exhaustive_limit
    )
    with handled_errors():
        result = uc.search.girth5_search(vmin, vmax, exhaustive_limit)
    rows = [dump(level) for level in result.levels]
    lines = []
    for level in result.levels:
        lines.append(
            f"v={level.v} classes={level.classes} max_edges={level.max_edges} bound={level.edge_bound} "
            f"witnesses={len(level.witnesses)} exhaustive={str(level.exhaustive).lower()}"
        )
        for code in level.witnesses:
            lines.append(code)
            lines.append(uc.graphs.from_networkx(nx.from_graph6_bytes(code.encode("ascii"))).to_text())
    emit(config, out, [result], rows, lines)


@cli.command()
@output_options
def robertson(fmt, out, verbose) -> None:
    """Property table of the Robertson graph and its decompletion"""
    config, uc = start("robertson", verbose, format=fmt)
    with handled_errors():
        report = uc.admissibility.robertson_report()
    rows = [dump(report.completed), dump(report.decompleted)]
    lines = [
        f"{p.name}: V={p.vertices} N={p.edges} h={p.h} n={p.n} girth={p.girth} regular={p.regular_degree}"
        for p in (report.completed, report.decompleted)
    ]
    lines.append(f"sha256 {report.checksum}")
    lines.append("pass" if report.passed else "FAIL")
    emit(config, out, [report], rows, lines)
    fail_if(not report.passed)
