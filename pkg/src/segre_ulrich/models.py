"""Output models for the command line.

Every command builds one of the ``*Result`` models below; the renderer turns it into
JSON (wrapped in ``CommandOutput``), CSV or an aligned text table.
"""

import json
from typing import Any, ClassVar, List, Literal, Optional

from pydantic import BaseModel, Field

from segre_ulrich.engine.beilinson import AlphaTable, CriteriaReport, MonadShape, MonadTerm, Resolution
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf
from segre_ulrich.engine.ulrich import RegularityReport, UlrichCertificate
from segre_ulrich.engine.variety import SegreVeronese, weight_group_sizes
from segre_ulrich.parser import format_atom, format_sheaf

SCHEMA_VERSION = "1"


class VarietyModel(BaseModel):
    n: List[int]
    k: List[int]
    descriptor: str

    @classmethod
    def of(cls, X: SegreVeronese) -> "VarietyModel":
        return cls(n=list(X.n), k=list(X.k), descriptor=X.descriptor())


class CohomResult(BaseModel):
    """Cohomology vector of a (twisted) sheaf."""

    variety: VarietyModel
    sheaf: str
    twist: List[int]
    dims: List[int] = Field(..., description="h^0 .. h^d")
    euler_characteristic: int


class WitnessModel(BaseModel):
    t: int
    i: int
    dimension: int


class UlrichCheckResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    ulrich: bool
    witness: Optional[WitnessModel] = None
    table: List[List[int]] = Field(..., description="Row t-1 is h^0..h^d of V(-t h)")
    h0: int
    degree_rank_product: int

    @classmethod
    def of(cls, X: SegreVeronese, V: FormalSheaf, certificate: UlrichCertificate) -> "UlrichCheckResult":
        witness = certificate.witness
        return cls(
            variety=VarietyModel.of(X),
            sheaf=format_sheaf(V),
            ulrich=certificate.verdict,
            witness=WitnessModel(t=witness.t, i=witness.i, dimension=witness.dimension) if witness else None,
            table=[list(row) for row in certificate.table],
            h0=certificate.h0,
            degree_rank_product=certificate.degree_rank_product,
        )


class LineBundleModel(BaseModel):
    twist: List[int]
    sheaf: str


class LinesResult(BaseModel):
    variety: VarietyModel
    bundles: List[LineBundleModel]


class OmegaBoxModel(BaseModel):
    powers: List[int]
    twists: List[int]
    sheaf: str
    rank: int

    @classmethod
    def of(cls, atom: BoxAtom) -> "OmegaBoxModel":
        return cls(
            powers=[f.p for f in atom.factors],
            twists=[f.t for f in atom.factors],
            sheaf=format_atom(atom),
            rank=atom.rank,
        )


class OmegaBoxesResult(BaseModel):
    variety: VarietyModel
    boxes: List[OmegaBoxModel]


class PullbackResult(BaseModel):
    variety: VarietyModel
    side: Literal["left", "right"]
    sheaf: str
    ulrich: bool
    h0: int
    degree_rank_product: int


class DefectModel(BaseModel):
    i: int
    index: List[int]
    degree: int
    dimension: int


class AlphaTableResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    natural: bool
    indices: List[List[int]]
    rows: List[List[int]] = Field(..., description="rows[i][c] = alpha_i of column c")
    defects: List[DefectModel]

    @classmethod
    def of(cls, table: AlphaTable) -> "AlphaTableResult":
        return cls(
            variety=VarietyModel.of(table.variety),
            sheaf=format_sheaf(table.sheaf),
            natural=table.natural,
            indices=[list(a) for a in table.indices],
            rows=[list(row) for row in table.rows],
            defects=[
                DefectModel(i=d.i, index=list(d.index), degree=d.degree, dimension=d.dimension) for d in table.defects
            ],
        )


class SummandModel(BaseModel):
    index: List[int]
    twist: List[int]
    multiplicity: int


class TermModel(BaseModel):
    weight: int
    rank: int
    summands: List[SummandModel]

    @classmethod
    def of(cls, term: MonadTerm) -> "TermModel":
        return cls(
            weight=term.weight,
            rank=term.rank,
            summands=[
                SummandModel(index=list(s.index), twist=list(s.twist), multiplicity=s.multiplicity)
                for s in term.summands
            ],
        )


def format_term(term: MonadTerm) -> str:
    if term.is_zero:
        return "0"
    return " + ".join(
        "O({})".format(",".join(map(str, s.twist))) + (f"^{s.multiplicity}" if s.multiplicity > 1 else "")
        for s in term.summands
    )


def _target(q: int) -> str:
    return "V" if q == 0 else ("V(-h)" if q == 1 else f"V(-{q}h)")


class ResolutionResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    q: int
    before: List[TermModel]
    after: List[TermModel]
    sequence: str
    chi_consistent: bool

    @classmethod
    def of(cls, X: SegreVeronese, V: FormalSheaf, resolution: Resolution, chi_ok: bool) -> "ResolutionResult":
        parts = [
            "0",
            *map(format_term, resolution.before),
            _target(resolution.q),
            *map(format_term, resolution.after),
            "0",
        ]
        return cls(
            variety=VarietyModel.of(X),
            sheaf=format_sheaf(V),
            q=resolution.q,
            before=[TermModel.of(t) for t in resolution.before],
            after=[TermModel.of(t) for t in resolution.after],
            sequence=" -> ".join(parts),
            chi_consistent=chi_ok,
        )


class MonadResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    q: int
    b1_chain: List[TermModel]
    middle: TermModel
    b2_chain: List[TermModel]
    rank_sum: int
    segre_simplified: bool
    splits: bool
    chi_consistent: bool

    @classmethod
    def of(cls, X: SegreVeronese, V: FormalSheaf, shape: MonadShape, chi_ok: bool) -> "MonadResult":
        return cls(
            variety=VarietyModel.of(X),
            sheaf=format_sheaf(V),
            q=shape.q,
            b1_chain=[TermModel.of(t) for t in shape.b1_chain],
            middle=TermModel.of(shape.middle),
            b2_chain=[TermModel.of(t) for t in shape.b2_chain],
            rank_sum=shape.rank_sum,
            segre_simplified=shape.segre_simplified,
            splits=shape.splits,
            chi_consistent=chi_ok,
        )


class ViolationModel(BaseModel):
    family: str
    i: int
    bundle: str
    dimension: int


class RegularityResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    grid: int
    checks: int
    skipped: int
    passed: bool
    violations: List[ViolationModel]

    @classmethod
    def of(cls, X: SegreVeronese, V: FormalSheaf, report: RegularityReport) -> "RegularityResult":
        return cls(
            variety=VarietyModel.of(X),
            sheaf=format_sheaf(V),
            grid=report.grid,
            checks=report.checks,
            skipped=report.skipped,
            passed=report.passed,
            violations=[
                ViolationModel(family=v.family, i=v.i, bundle=format_atom(v.atom), dimension=v.dimension)
                for v in report.violations
            ],
        )


class VarietyInfoResult(BaseModel):
    variety: VarietyModel
    s: int
    d: int
    degree: int
    canonical: List[int]
    collection_size: int
    weight_group_sizes: List[int]

    @classmethod
    def of(cls, X: SegreVeronese) -> "VarietyInfoResult":
        sizes = weight_group_sizes(X)
        return cls(
            variety=VarietyModel.of(X),
            s=X.s,
            d=X.d,
            degree=X.degree,
            canonical=list(X.canonical),
            collection_size=sum(sizes),
            weight_group_sizes=sizes,
        )


class CriterionModel(BaseModel):
    name: str
    applicable: bool
    reason: str
    hypothesis: str
    values: dict[str, int]
    holds: Optional[bool]
    conclusion: str
    input_matches_conclusion: Optional[bool]


class CriteriaResult(BaseModel):
    variety: VarietyModel
    sheaf: str
    input_is_ulrich: bool
    criteria: List[CriterionModel]

    @classmethod
    def of(cls, report: CriteriaReport) -> "CriteriaResult":
        return cls(
            variety=VarietyModel.of(report.variety),
            sheaf=format_sheaf(report.sheaf),
            input_is_ulrich=report.input_is_ulrich,
            criteria=[CriterionModel(**r.model_dump()) for r in report.results],
        )


class CommandOutput(BaseModel):
    """Envelope of every JSON document the CLI prints."""

    schema_version: Literal["1"] = "1"
    command: str
    result: BaseModel

    model_config: ClassVar[dict[str, Any]] = {
        "json_schema_extra": {"example": {"schema_version": "1", "command": "variety info", "result": {}}}
    }

    def to_json(self) -> str:
        payload = {
            "schema_version": self.schema_version,
            "command": self.command,
            "result": self.result.model_dump(mode="json"),
        }
        return json.dumps(payload, sort_keys=True, indent=2)
