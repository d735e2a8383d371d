"""Alpha-tables, Beilinson resolutions and monads, and the classification criteria built on them.

The spectral sequence is never materialized. For a table with natural cohomology every
column has a single non-zero entry, so the terms of the complex computing V(-q h) are read
straight off row q: weight w = |a| sits in degree q - w with summand O(-a)^{alpha_q^a}.
"""

import logging
from typing import Optional, Sequence, Union

from pydantic import BaseModel, ConfigDict, Field

from segre_ulrich.engine.sheaf import (
    BoxAtom,
    FormalSheaf,
    euler_characteristic,
    product_cohomology,
    rank,
    twist,
)
from segre_ulrich.engine.ulrich import is_ulrich
from segre_ulrich.engine.variety import SegreVeronese, collection_indices, g_atom
from segre_ulrich.errors import InvalidSheafError, MonadRankError, NotNaturalError, NotUlrichError
from segre_ulrich.utils.observability import traced

logger = logging.getLogger(__name__)


class NaturalityDefect(BaseModel):
    """An off-row entry h^k(V(-i h) x G^a) != 0 with k != i."""

    model_config = ConfigDict(frozen=True)

    i: int
    index: tuple[int, ...]
    degree: int
    dimension: int


class AlphaTable(BaseModel):
    """alpha_i^a = h^i(V(-i h) x G^a) for i = 0..d and every collection index a."""

    model_config = ConfigDict(frozen=True)

    variety: SegreVeronese
    sheaf: FormalSheaf
    indices: tuple[tuple[int, ...], ...] = Field(..., description="Collection indices in column order")
    rows: tuple[tuple[int, ...], ...] = Field(..., description="rows[i][c] = alpha_i of column c")
    defects: tuple[NaturalityDefect, ...] = ()

    @property
    def natural(self) -> bool:
        return not self.defects

    def alpha(self, i: int, a: Sequence[int]) -> int:
        return self.rows[i][self.indices.index(tuple(a))]

    def weight_slice(self, i: int, weight: int) -> list[tuple[tuple[int, ...], int]]:
        return [(a, self.rows[i][c]) for c, a in enumerate(self.indices) if sum(a) == weight]


def alpha_table(V: FormalSheaf, X: SegreVeronese, expand: bool = False) -> AlphaTable:
    """Full alpha grid with its naturality scan."""
    if V.dims != X.n:
        raise InvalidSheafError(f"sheaf lives on factors {V.dims} but the variety has {X.n}")
    indices = collection_indices(X)
    rows: list[tuple[int, ...]] = []
    defects: list[NaturalityDefect] = []
    with traced("alpha_table", variety=X.descriptor()):
        for i in range(X.d + 1):
            row = []
            for index in indices:
                vector = product_cohomology(V, g_atom(X, index), X.twist_by_h(-i), expand)
                row.append(vector[i])
                defects.extend(
                    NaturalityDefect(i=i, index=index.a, degree=k, dimension=h)
                    for k, h in enumerate(vector.dims)
                    if h and k != i
                )
            rows.append(tuple(row))
    table = AlphaTable(
        variety=X,
        sheaf=V,
        indices=tuple(index.a for index in indices),
        rows=tuple(rows),
        defects=tuple(defects),
    )
    logger.info("alpha-table on %s: natural=%s, %d defects", X.descriptor(), table.natural, len(defects))
    return table


class MonadSummand(BaseModel):
    """O(-a_1, ..., -a_s) with its multiplicity."""

    model_config = ConfigDict(frozen=True)

    index: tuple[int, ...]
    multiplicity: int = Field(..., ge=1)

    @property
    def twist(self) -> tuple[int, ...]:
        return tuple(-a for a in self.index)


class MonadTerm(BaseModel):
    """All summands of one weight, i.e. one term of the complex."""

    model_config = ConfigDict(frozen=True)

    weight: int
    summands: tuple[MonadSummand, ...] = ()

    @property
    def rank(self) -> int:
        return sum(summand.multiplicity for summand in self.summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands


class Resolution(BaseModel):
    """An exact sequence of line-bundle terms around V(-q h), in sequence order."""

    model_config = ConfigDict(frozen=True)

    q: int
    before: tuple[MonadTerm, ...] = Field(..., description="Terms left of V(-q h)")
    after: tuple[MonadTerm, ...] = Field(..., description="Terms right of V(-q h)")

    def terms(self) -> tuple[MonadTerm, ...]:
        return self.before + self.after


class MonadShape(BaseModel):
    """B1 -> middle -> B2 with B1, B2 resolved by the weight chains."""

    model_config = ConfigDict(frozen=True)

    q: int
    b1_chain: tuple[MonadTerm, ...] = Field(..., description="Weights d .. q+1")
    middle: MonadTerm
    b2_chain: tuple[MonadTerm, ...] = Field(..., description="Weights q-1 .. 0")
    rank_sum: int
    segre_simplified: bool = Field(..., description="All k_i = 1 and the top collection entry vanishes")
    splits: bool = Field(..., description="B1 = B2 = 0, so V(-q h) is the middle term")

    def terms(self) -> tuple[MonadTerm, ...]:
        return self.b1_chain + (self.middle,) + self.b2_chain


Shape = Union[Resolution, MonadShape]


def _require_natural(table: AlphaTable) -> None:
    if not table.natural:
        first = table.defects[0]
        raise NotNaturalError(
            f"alpha-table is not natural: h^{first.degree}(V(-{first.i}h) x G^{first.index}) = {first.dimension}"
        )


def _weight_terms(table: AlphaTable, q: int) -> dict[int, MonadTerm]:
    terms = {}
    for weight in range(table.variety.d, -1, -1):
        summands = tuple(
            MonadSummand(index=a, multiplicity=alpha) for a, alpha in table.weight_slice(q, weight) if alpha
        )
        terms[weight] = MonadTerm(weight=weight, summands=summands)
    return terms


def alternating_rank(terms: Sequence[MonadTerm], q: int) -> int:
    return sum((-1) ** (q - term.weight) * term.rank for term in terms)


def _check_rank(table: AlphaTable, terms: Sequence[MonadTerm], q: int) -> int:
    found = alternating_rank(terms, q)
    expected = rank(table.sheaf)
    if found != expected:
        raise MonadRankError(expected, found)
    return found


def build_resolution(table: AlphaTable, q: int) -> Resolution:
    """Line-bundle resolution of V (q = 0), of V(-h) (q = 1), or coresolution of V(-d h) (q = d)."""
    d = table.variety.d
    if q not in (0, 1, d):
        raise ValueError(f"resolutions exist for q in (0, 1, {d}); use a monad for q = {q}")
    _require_natural(table)
    terms = _weight_terms(table, q)
    left = tuple(term for weight, term in terms.items() if weight >= q and not term.is_zero)
    right = tuple(term for weight, term in terms.items() if weight < q and not term.is_zero)
    if q == d:
        left, right = (), tuple(term for term in terms.values() if not term.is_zero)
    elif right:
        raise NotUlrichError(f"h^{q}(V(-{q}h)) != 0, so V(-{q}h) has no resolution of this shape")
    _check_rank(table, left + right, q)
    resolution = Resolution(q=q, before=left, after=right)
    logger.info("resolution q=%d on %s with %d terms", q, table.variety.descriptor(), len(resolution.terms()))
    return resolution


def build_monad(table: AlphaTable, q: int) -> MonadShape:
    """The monad for V(-q h); any 0 <= q <= d is accepted (q = 0 and q = d have an empty chain)."""
    X = table.variety
    if not 0 <= q <= X.d:
        raise ValueError(f"monad index q must lie in 0..{X.d}, got {q}")
    _require_natural(table)
    terms = _weight_terms(table, q)
    b1 = tuple(term for weight, term in terms.items() if weight > q and not term.is_zero)
    b2 = tuple(term for weight, term in terms.items() if weight < q and not term.is_zero)
    middle = terms[q]
    rank_sum = _check_rank(table, b1 + (middle,) + b2, q)
    top = table.alpha(q, X.n)
    shape = MonadShape(
        q=q,
        b1_chain=b1,
        middle=middle,
        b2_chain=b2,
        rank_sum=rank_sum,
        segre_simplified=X.is_segre and top == 0,
        splits=not b1 and not b2,
    )
    logger.info("monad q=%d on %s: middle rank %d, splits=%s", q, X.descriptor(), middle.rank, shape.splits)
    return shape


def chi_consistency(shape: Shape, table: AlphaTable, margin: int = 2) -> bool:
    """Euler characteristics of the terms must add up to chi(V((t-q) h)) at every sample twist t."""
    X = table.variety
    for t in range(-X.d - margin, X.d + margin + 1):
        shift = X.twist_by_h(t)
        lhs = sum(
            (-1) ** (shape.q - term.weight)
            * summand.multiplicity
            * euler_characteristic(X.line(*(c + s for c, s in zip(summand.twist, shift))))
            for term in shape.terms()
            for summand in term.summands
        )
        rhs = euler_characteristic(table.sheaf, X.twist_by_h(t - shape.q))
        if lhs != rhs:
            logger.warning("chi mismatch at t=%d: terms give %d, V gives %d", t, lhs, rhs)
            return False
    return True


class CriterionResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    applicable: bool
    reason: str = ""
    hypothesis: str
    values: dict[str, int] = Field(default_factory=dict)
    holds: Optional[bool] = None
    conclusion: str = ""
    input_matches_conclusion: Optional[bool] = None


class CriteriaReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    variety: SegreVeronese
    sheaf: FormalSheaf
    input_is_ulrich: bool
    results: tuple[CriterionResult, ...]


def _alpha(V: FormalSheaf, X: SegreVeronese, i: int, a: Sequence[int], expand: bool) -> int:
    return product_cohomology(V, BoxAtom.omega_box(X.n, a, a), X.twist_by_h(-i), expand)[i]


def _h1(V: FormalSheaf, c: Sequence[int]) -> int:
    return product_cohomology(V, shift=c)[1]


def _slice_indices(X: SegreVeronese, weight: int) -> list[tuple[int, int]]:
    return [(a, weight - a) for a in range(X.n[0] + 1) if 0 <= weight - a <= X.n[1]]


def _is_factor_pullback(V: FormalSheaf, X: SegreVeronese) -> bool:
    n = X.n[1]
    if any(term.atom.factors[1].p != 0 or term.atom.factors[1].t != 0 for term in V.terms):
        return False
    E = FormalSheaf.from_atoms((BoxAtom(factors=(term.atom.factors[0],)), term.multiplicity) for term in V.terms)
    return is_ulrich(twist(E, (-n * X.k[0],)), X.factor(0)).verdict


def _row_one_collapse(V: FormalSheaf, X: SegreVeronese, expand: bool) -> CriterionResult:
    (m, n), (k1, k2) = X.n, X.k
    hypothesis = "alpha_1^{0,2} = alpha_1^{1,1} = 0"
    conclusion = "k_2 = 1 and V = O(k_1-1, 1)"
    if not (m > 1 and n > 1):
        return CriterionResult(
            name="row-one-collapse", applicable=False, reason="needs n_1 > 1 and n_2 > 1", hypothesis=hypothesis
        )
    values = {"alpha_1^{0,2}": _alpha(V, X, 1, (0, 2), expand), "alpha_1^{1,1}": _alpha(V, X, 1, (1, 1), expand)}
    return CriterionResult(
        name="row-one-collapse",
        applicable=True,
        hypothesis=hypothesis,
        values=values,
        holds=not any(values.values()),
        conclusion=conclusion,
        input_matches_conclusion=k2 == 1 and V == X.line(k1 - 1, 1),
    )


def _twisted_h1(V: FormalSheaf, X: SegreVeronese, dual: bool) -> CriterionResult:
    (m, n), (k1, k2) = X.n, X.k
    name = "twisted-h1-vanishing-dual" if dual else "twisted-h1-vanishing"
    if dual:
        hypothesis, twist_used, target = "h^1(V x O(-1-k_1, -2k_2)) = 0", (-1 - k1, -2 * k2), (k1 - 1, 2 * k2 - 1)
    else:
        hypothesis, twist_used, target = "h^1(V x O(-2k_1, -1-k_2)) = 0", (-2 * k1, -1 - k2), (2 * k1 - 1, k2 - 1)
    if not (m > 1 and n == 1):
        return CriterionResult(name=name, applicable=False, reason="needs n_1 > 1 and n_2 = 1", hypothesis=hypothesis)
    h = X.twist_by_h(-1)
    values = {
        "a": _h1(V, (h[0] - k1, h[1] - 1)),
        "b": _h1(V, (h[0] - k1 + 1, h[1] - 1)),
        "c": _h1(V, (h[0] - 1, h[1])),
        "h1": _h1(V, twist_used),
    }
    return CriterionResult(
        name=name,
        applicable=True,
        hypothesis=hypothesis,
        values=values,
        holds=values["h1"] == 0,
        conclusion="V = O({}, {})".format(*target),
        input_matches_conclusion=V == X.line(*target),
    )


def _middle_row_splitting(V: FormalSheaf, X: SegreVeronese, expand: bool) -> CriterionResult:
    (m, n), (k1, k2) = X.n, X.k
    hypothesis = "alpha_m^{a,b} = 0 whenever a+b = m-1 or a+b = m+1"
    if n <= 1:
        return CriterionResult(
            name="middle-row-splitting", applicable=False, reason="needs n_2 > 1", hypothesis=hypothesis
        )
    values = {
        f"alpha_{m}^{{{a},{b}}}": _alpha(V, X, m, (a, b), expand)
        for weight in (m - 1, m + 1)
        for a, b in _slice_indices(X, weight)
    }
    targets = [X.line(0, m)] if m != n else [X.line(n, 0), X.line(0, m)]
    conclusion = "k_1 = k_2 = 1 and V = O(0, m)" if m != n else "k_1 = k_2 = 1 and V in {O(n, 0), O(0, m)}"
    return CriterionResult(
        name="middle-row-splitting",
        applicable=True,
        hypothesis=hypothesis,
        values=values,
        holds=not any(values.values()),
        conclusion=conclusion,
        input_matches_conclusion=k1 == k2 == 1 and V in targets,
    )


def _factor_pullback(V: FormalSheaf, X: SegreVeronese, expand: bool) -> CriterionResult:
    n = X.n[1]
    hypothesis = "alpha_n^{a,b} = 0 whenever a+b = n+1, or a > 1 and a+b = n"
    if X.k[1] != 1:
        return CriterionResult(name="factor-pullback", applicable=False, reason="needs k_2 = 1", hypothesis=hypothesis)
    cells = _slice_indices(X, n + 1) + [(a, b) for a, b in _slice_indices(X, n) if a > 1]
    values = {f"alpha_{n}^{{{a},{b}}}": _alpha(V, X, n, (a, b), expand) for a, b in cells}
    return CriterionResult(
        name="factor-pullback",
        applicable=True,
        hypothesis=hypothesis,
        values=values,
        holds=not any(values.values()),
        conclusion="V = E(n k_1) x O with E Ulrich on (P^m, O(k_1))",
        input_matches_conclusion=_is_factor_pullback(V, X),
    )


def evaluate_criteria(V: FormalSheaf, X: SegreVeronese, expand: bool = False) -> CriteriaReport:
    """Evaluate each classification criterion's hypothesis on V as a concrete vanishing.

    Inputs that are not Ulrich are still evaluated; the report says so.
    """
    if X.s != 2:
        raise InvalidSheafError(f"criteria are stated for two factors, the variety has {X.s}")
    if V.dims != X.n:
        raise InvalidSheafError(f"sheaf lives on factors {V.dims} but the variety has {X.n}")
    with traced("evaluate_criteria", variety=X.descriptor()):
        results = (
            _row_one_collapse(V, X, expand),
            _twisted_h1(V, X, dual=False),
            _twisted_h1(V, X, dual=True),
            _middle_row_splitting(V, X, expand),
            _factor_pullback(V, X, expand),
        )
    ulrich = is_ulrich(V, X).verdict
    if not ulrich:
        logger.info("criteria evaluated on a non-Ulrich input over %s", X.descriptor())
    return CriteriaReport(variety=X, sheaf=V, input_is_ulrich=ulrich, results=results)
