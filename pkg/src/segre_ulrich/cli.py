import importlib.metadata
import importlib.resources
import logging
from contextlib import contextmanager
from typing import Iterator, Optional

import typer
from dotenv import load_dotenv
from pydantic import BaseModel

from segre_ulrich.config import get_settings
from segre_ulrich.engine.beilinson import (
    alpha_table,
    build_monad,
    build_resolution,
    chi_consistency,
    evaluate_criteria,
)
from segre_ulrich.engine.sheaf import product_cohomology
from segre_ulrich.engine.ulrich import (
    classify_ulrich_lines,
    classify_ulrich_omega_boxes,
    is_ulrich,
    pullback_ulrich,
    verify_regularity,
)
from segre_ulrich.errors import (
    AtomProductError,
    BoundTooSmallError,
    MonadRankError,
    NotNaturalError,
    NotUlrichError,
)
from segre_ulrich.models import (
    AlphaTableResult,
    CohomResult,
    CriteriaResult,
    LineBundleModel,
    LinesResult,
    MonadResult,
    OmegaBoxesResult,
    OmegaBoxModel,
    PullbackResult,
    RegularityResult,
    ResolutionResult,
    UlrichCheckResult,
    VarietyInfoResult,
    VarietyModel,
)
from segre_ulrich.parser import format_sheaf, parse_sheaf, parse_twist, parse_variety
from segre_ulrich.render import OutputFormat, render
from segre_ulrich.utils.observability import configure_logging, setup_logfire, shutdown_logfire

PROJECT_NAME = "segre-ulrich"

logger = logging.getLogger(__name__)

app = typer.Typer(help=f"{PROJECT_NAME} CLI", no_args_is_help=True)
ulrich_app = typer.Typer(help="Ulrich checks, classifications and pullback constructions.", no_args_is_help=True)
variety_app = typer.Typer(help="Segre-Veronese variety data.", no_args_is_help=True)
app.add_typer(ulrich_app, name="ulrich")
app.add_typer(variety_app, name="variety")

SEMANTIC_ERRORS = (NotUlrichError, NotNaturalError, AtomProductError, MonadRankError, BoundTooSmallError)

VARIETY_OPTION = typer.Option(..., "--variety", help='Variety descriptor, e.g. "n=2,1;k=1,1".')
SHEAF_OPTION = typer.Option(..., "--sheaf", help='Sheaf expression, e.g. "2*O(0)xO(0) + Om(a=1;t=3)xO(1)".')
FORMAT_OPTION = typer.Option(OutputFormat.text, "--format", help="Output format.")
EXPAND_OPTION = typer.Option(
    None,
    "--expand-products/--no-expand-products",
    help="Compute Omega^p x Omega^q factor products exactly (env: SEGRE_ULRICH_EXPAND_PRODUCTS).",
)


@contextmanager
def engine_errors() -> Iterator[None]:
    """Map engine failures to exit codes: 1 for semantic failures, 2 for bad input."""
    try:
        yield
    except SEMANTIC_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(code=1)
    except ValueError as e:
        # pydantic's ValidationError is a ValueError too
        typer.echo(f"❌ {e}", err=True)
        raise typer.Exit(code=2)


def emit(command: str, result: BaseModel, fmt: OutputFormat) -> None:
    typer.echo(render(command, result, fmt))


@app.callback()
def main(
    ctx: typer.Context,
    log_level: Optional[str] = typer.Option(
        None,
        "--log-level",
        help="Logging level (e.g., debug, info, warning, error, critical). Logs go to stderr.",
    ),
) -> None:
    """Exact cohomology, Ulrich bundles and Beilinson monads on Segre-Veronese varieties."""
    load_dotenv()
    with engine_errors():
        settings = get_settings(log_level=log_level)
    configure_logging(settings.log_level)
    setup_logfire(service_name=PROJECT_NAME)
    ctx.call_on_close(shutdown_logfire)


@app.command()
def cohom(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    twist: Optional[str] = typer.Option(None, "--twist", help="Extra twist c_1,..,c_s applied before computing."),
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Cohomology vector h^0..h^d of a sheaf (Kunneth + Bott)."""
    with engine_errors():
        X = parse_variety(variety)
        V = parse_sheaf(sheaf, X)
        shift = parse_twist(twist, X.s) if twist else (0,) * X.s
        vector = product_cohomology(V, shift=shift)
    result = CohomResult(
        variety=VarietyModel.of(X),
        sheaf=format_sheaf(V),
        twist=list(shift),
        dims=list(vector.dims),
        euler_characteristic=vector.euler_characteristic,
    )
    emit("cohom", result, fmt)


@ulrich_app.command("check")
def ulrich_check(variety: str = VARIETY_OPTION, sheaf: str = SHEAF_OPTION, fmt: OutputFormat = FORMAT_OPTION) -> None:
    """Certificate for the Ulrich property; exits 1 when the sheaf is not Ulrich."""
    with engine_errors():
        X = parse_variety(variety)
        V = parse_sheaf(sheaf, X)
        certificate = is_ulrich(V, X)
    emit("ulrich check", UlrichCheckResult.of(X, V, certificate), fmt)
    if not certificate.verdict:
        raise typer.Exit(code=1)


@ulrich_app.command("classify-lines")
def ulrich_classify_lines(variety: str = VARIETY_OPTION, fmt: OutputFormat = FORMAT_OPTION) -> None:
    """All Ulrich line bundles O(a_1, ..., a_s)."""
    with engine_errors():
        X = parse_variety(variety)
        found = classify_ulrich_lines(X)
    bundles = [LineBundleModel(twist=list(a), sheaf=format_sheaf(X.line(*a))) for a in found]
    emit("ulrich classify-lines", LinesResult(variety=VarietyModel.of(X), bundles=bundles), fmt)


@ulrich_app.command("classify-omega")
def ulrich_classify_omega(variety: str = VARIETY_OPTION, fmt: OutputFormat = FORMAT_OPTION) -> None:
    """All Ulrich boxes Omega^{a_1}(l_1) x ... x Omega^{a_s}(l_s)."""
    with engine_errors():
        X = parse_variety(variety)
        boxes = classify_ulrich_omega_boxes(X)
    result = OmegaBoxesResult(variety=VarietyModel.of(X), boxes=[OmegaBoxModel.of(atom) for atom in boxes])
    emit("ulrich classify-omega", result, fmt)


@ulrich_app.command("pullback")
def ulrich_pullback(
    left_variety: str = typer.Option(..., "--left-variety", help="Variety of the left factor."),
    left_sheaf: str = typer.Option(..., "--left-sheaf", help="Ulrich sheaf on the left factor."),
    right_variety: Optional[str] = typer.Option(None, "--right-variety", help="Variety of the right factor."),
    right_sheaf: Optional[str] = typer.Option(None, "--right-sheaf", help="Ulrich sheaf on the right factor."),
    side: str = typer.Option("left", "--side", help="Which factor carries the shift: left or right."),
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Ulrich bundle on a product built from Ulrich bundles on the factors."""
    with engine_errors():
        if side not in ("left", "right"):
            raise ValueError(f"--side must be 'left' or 'right', got {side!r}")
        if (right_variety is None) != (right_sheaf is None):
            raise ValueError("--right-variety and --right-sheaf must be given together")
        X1 = parse_variety(left_variety)
        E = parse_sheaf(left_sheaf, X1)
        X2 = parse_variety(right_variety) if right_variety else None
        F = parse_sheaf(right_sheaf, X2) if right_sheaf and X2 else None
        V = pullback_ulrich(E, X1, F, X2, side="left" if side == "left" else "right")
        X = X1.times(X2) if X2 is not None else X1
        certificate = is_ulrich(V, X)
    result = PullbackResult(
        variety=VarietyModel.of(X),
        side="left" if side == "left" else "right",
        sheaf=format_sheaf(V),
        ulrich=certificate.verdict,
        h0=certificate.h0,
        degree_rank_product=certificate.degree_rank_product,
    )
    emit("ulrich pullback", result, fmt)


@app.command("alpha-table")
def alpha_table_command(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    expand: Optional[bool] = EXPAND_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """The grid alpha_i^a = h^i(V(-i h) x G^a) with its naturality flag."""
    settings = get_settings(expand_factor_products=expand)
    with engine_errors():
        X = parse_variety(variety)
        table = alpha_table(parse_sheaf(sheaf, X), X, settings.expand_factor_products)
    emit("alpha-table", AlphaTableResult.of(table), fmt)


@app.command()
def resolution(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    q: str = typer.Option("0", "--q", help="0, 1 or d (the literal letter d is accepted)."),
    expand: Optional[bool] = EXPAND_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Line-bundle resolution of V, V(-h) or V(-d h); refuses tables without natural cohomology."""
    settings = get_settings(expand_factor_products=expand)
    with engine_errors():
        X = parse_variety(variety)
        V = parse_sheaf(sheaf, X)
        q_value = X.d if q.strip() == "d" else int(q)
        table = alpha_table(V, X, settings.expand_factor_products)
        built = build_resolution(table, q_value)
    chi_ok = chi_consistency(built, table, settings.chi_twist_margin)
    emit("resolution", ResolutionResult.of(X, V, built, chi_ok), fmt)
    if not chi_ok:
        logger.error("resolution terms are not chi-consistent with %s", sheaf)
        raise typer.Exit(code=1)


@app.command()
def monad(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    q: int = typer.Option(..., "--q", help="Row of the alpha-table, 0 <= q <= d."),
    expand: Optional[bool] = EXPAND_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Monad B1 -> middle -> B2 whose homology is V(-q h)."""
    settings = get_settings(expand_factor_products=expand)
    with engine_errors():
        X = parse_variety(variety)
        V = parse_sheaf(sheaf, X)
        table = alpha_table(V, X, settings.expand_factor_products)
        shape = build_monad(table, q)
    chi_ok = chi_consistency(shape, table, settings.chi_twist_margin)
    emit("monad", MonadResult.of(X, V, shape, chi_ok), fmt)
    if not chi_ok:
        logger.error("monad terms are not chi-consistent with %s", sheaf)
        raise typer.Exit(code=1)


@app.command()
def regularity(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    grid: int = typer.Option(3, "--grid", help="Check every 0 <= j_r <= grid."),
    expand: Optional[bool] = EXPAND_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Regularity vanishings of an Ulrich bundle; exits 1 on any violation."""
    settings = get_settings(expand_factor_products=expand)
    with engine_errors():
        X = parse_variety(variety)
        V = parse_sheaf(sheaf, X)
        report = verify_regularity(V, X, grid, settings.expand_factor_products)
    emit("regularity", RegularityResult.of(X, V, report), fmt)
    if not report.passed:
        raise typer.Exit(code=1)


@app.command()
def criteria(
    variety: str = VARIETY_OPTION,
    sheaf: str = SHEAF_OPTION,
    expand: Optional[bool] = EXPAND_OPTION,
    fmt: OutputFormat = FORMAT_OPTION,
) -> None:
    """Evaluate the classification criteria for two-factor varieties."""
    settings = get_settings(expand_factor_products=expand)
    with engine_errors():
        X = parse_variety(variety)
        report = evaluate_criteria(parse_sheaf(sheaf, X), X, settings.expand_factor_products)
    emit("criteria", CriteriaResult.of(report), fmt)


@variety_app.command("info")
def variety_info(variety: str = VARIETY_OPTION, fmt: OutputFormat = FORMAT_OPTION) -> None:
    """Degree, dimension, canonical class and collection size."""
    with engine_errors():
        X = parse_variety(variety)
    emit("variety info", VarietyInfoResult.of(X), fmt)


@app.command()
def schema() -> None:
    """Print the JSON schema every --format json document validates against."""
    text = importlib.resources.files("segre_ulrich").joinpath("schemas/output-v1.schema.json").read_text("utf-8")
    typer.echo(text.rstrip("\n"))


@app.command()
def version() -> None:
    """Show the application version."""
    try:
        pkg_version = importlib.metadata.version(PROJECT_NAME)
        typer.echo(f"{PROJECT_NAME} version: {pkg_version}")
    except importlib.metadata.PackageNotFoundError:
        typer.echo(f"{PROJECT_NAME} version: unknown (package not installed or metadata missing?)")


if __name__ == "__main__":
    app()
