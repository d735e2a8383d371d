"""Render command results as JSON, CSV or aligned text.

CSV and text come from the same ``table_rows`` view so both formats list the same entries.
"""

import csv
import io
from enum import Enum
from functools import singledispatch

from pydantic import BaseModel
from rich import box
from rich.console import Console
from rich.table import Table

from segre_ulrich.models import (
    AlphaTableResult,
    CohomResult,
    CommandOutput,
    CriteriaResult,
    LinesResult,
    MonadResult,
    OmegaBoxesResult,
    PullbackResult,
    RegularityResult,
    ResolutionResult,
    TermModel,
    UlrichCheckResult,
    VarietyInfoResult,
)


class OutputFormat(str, Enum):
    text = "text"
    json = "json"
    csv = "csv"


Rows = tuple[str, list[str], list[list[str]]]


def _fmt(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


@singledispatch
def table_rows(result: BaseModel) -> Rows:
    """Title, header and rows of a result; one registration per result model."""
    fields = result.model_dump(mode="json")
    return type(result).__name__, ["field", "value"], [[key, _fmt(value)] for key, value in sorted(fields.items())]


@table_rows.register
def _(result: CohomResult) -> Rows:
    rows = [[str(i), str(h)] for i, h in enumerate(result.dims)]
    rows.append(["chi", str(result.euler_characteristic)])
    twist = f" twisted by ({_fmt(result.twist)})" if any(result.twist) else ""
    return f"Cohomology of {result.sheaf}{twist} on {result.variety.descriptor}", ["i", "h^i"], rows


@table_rows.register
def _(result: UlrichCheckResult) -> Rows:
    rows = [[str(t), *map(str, row)] for t, row in enumerate(result.table, start=1)]
    verdict = "Ulrich" if result.ulrich else "not Ulrich"
    if result.witness:
        w = result.witness
        verdict += f" (h^{w.i}(V(-{w.t}h)) = {w.dimension})"
    title = (
        f"{result.sheaf} on {result.variety.descriptor}: {verdict}; "
        f"h^0 = {result.h0}, rank*deg = {result.degree_rank_product}"
    )
    headers = ["t", *(f"h^{i}(V(-th))" for i in range(len(result.table[0]) if result.table else 0))]
    return title, headers, rows


@table_rows.register
def _(result: LinesResult) -> Rows:
    rows = [[_fmt(b.twist), b.sheaf] for b in result.bundles]
    return f"Ulrich line bundles on {result.variety.descriptor}", ["twist", "sheaf"], rows


@table_rows.register
def _(result: OmegaBoxesResult) -> Rows:
    rows = [[_fmt(b.powers), _fmt(b.twists), str(b.rank), b.sheaf] for b in result.boxes]
    return f"Ulrich Omega-boxes on {result.variety.descriptor}", ["powers", "twists", "rank", "sheaf"], rows


@table_rows.register
def _(result: PullbackResult) -> Rows:
    rows = [[result.side, result.sheaf, _fmt(result.ulrich), str(result.h0), str(result.degree_rank_product)]]
    return f"Pullback on {result.variety.descriptor}", ["side", "sheaf", "ulrich", "h0", "rank*deg"], rows


@table_rows.register
def _(result: AlphaTableResult) -> Rows:
    headers = ["i", *(_fmt(a) for a in result.indices)]
    rows = [[str(i), *map(str, row)] for i, row in enumerate(result.rows)]
    title = f"alpha-table of {result.sheaf} on {result.variety.descriptor} (natural: {_fmt(result.natural)})"
    return title, headers, rows


def _term_rows(part: str, terms: list[TermModel]) -> list[list[str]]:
    return [
        [part, str(term.weight), _fmt(s.index), _fmt(s.twist), str(s.multiplicity)]
        for term in terms
        for s in term.summands
    ]


_TERM_HEADERS = ["part", "weight", "index", "twist", "multiplicity"]


@table_rows.register
def _(result: ResolutionResult) -> Rows:
    rows = _term_rows("before", result.before) + _term_rows("after", result.after)
    title = f"{result.sequence}  (chi-consistent: {_fmt(result.chi_consistent)})"
    return title, _TERM_HEADERS, rows


@table_rows.register
def _(result: MonadResult) -> Rows:
    rows = _term_rows("B1", result.b1_chain) + _term_rows("middle", [result.middle]) + _term_rows("B2", result.b2_chain)
    title = (
        f"Monad for q={result.q} of {result.sheaf} on {result.variety.descriptor}: rank sum {result.rank_sum}, "
        f"splits {_fmt(result.splits)}, chi-consistent {_fmt(result.chi_consistent)}"
    )
    return title, _TERM_HEADERS, rows


@table_rows.register
def _(result: RegularityResult) -> Rows:
    rows = [[v.family, str(v.i), v.bundle, str(v.dimension)] for v in result.violations]
    title = (
        f"Regularity of {result.sheaf} on {result.variety.descriptor}, J={result.grid}: "
        f"{'pass' if result.passed else 'FAIL'} ({result.checks} checks, {result.skipped} skipped)"
    )
    return title, ["family", "i", "bundle", "dimension"], rows


@table_rows.register
def _(result: VarietyInfoResult) -> Rows:
    rows = [
        ["s", str(result.s)],
        ["d", str(result.d)],
        ["degree", str(result.degree)],
        ["canonical", _fmt(result.canonical)],
        ["collection_size", str(result.collection_size)],
        ["weight_group_sizes", _fmt(result.weight_group_sizes)],
    ]
    return f"Segre-Veronese variety {result.variety.descriptor}", ["field", "value"], rows


@table_rows.register
def _(result: CriteriaResult) -> Rows:
    rows = [
        [
            c.name,
            _fmt(c.applicable),
            _fmt(c.holds),
            _fmt(c.input_matches_conclusion),
            "; ".join(f"{k}={v}" for k, v in sorted(c.values.items())) or c.reason,
            c.conclusion,
        ]
        for c in result.criteria
    ]
    title = f"Criteria for {result.sheaf} on {result.variety.descriptor} (Ulrich: {_fmt(result.input_is_ulrich)})"
    return title, ["criterion", "applicable", "holds", "matches", "values", "conclusion"], rows


def render_text(result: BaseModel) -> str:
    title, headers, rows = table_rows(result)
    table = Table(box=box.SIMPLE)
    for header in headers:
        table.add_column(header, overflow="fold")
    for row in rows:
        table.add_row(*row)
    buffer = io.StringIO()
    console = Console(file=buffer, width=160, no_color=True, color_system=None, highlight=False, emoji=False)
    console.print(title, markup=False, soft_wrap=True)
    console.print(table)
    return buffer.getvalue().rstrip("\n")


def render_csv(result: BaseModel) -> str:
    _, headers, rows = table_rows(result)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return buffer.getvalue().rstrip("\n")


def render(command: str, result: BaseModel, fmt: OutputFormat) -> str:
    if fmt is OutputFormat.json:
        return CommandOutput(command=command, result=result).to_json()
    if fmt is OutputFormat.csv:
        return render_csv(result)
    return render_text(result)
