"""Tests for alpha-tables, resolutions, monads and the classification criteria."""

from typing import Literal

import pytest

from segre_ulrich.engine.beilinson import (
    AlphaTable,
    CriteriaReport,
    CriterionResult,
    MonadSummand,
    MonadTerm,
    Resolution,
    alpha_table,
    build_monad,
    build_resolution,
    chi_consistency,
    evaluate_criteria,
)
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf, rank
from segre_ulrich.engine.ulrich import (
    classify_ulrich_lines,
    classify_ulrich_omega_boxes,
    is_ulrich,
    pullback_ulrich,
    verify_regularity,
)
from segre_ulrich.engine.variety import SegreVeronese
from segre_ulrich.errors import AtomProductError, InvalidSheafError, MonadRankError, NotNaturalError
from segre_ulrich.models import ResolutionResult


def sequence(X: SegreVeronese, V: FormalSheaf, resolution: Resolution) -> str:
    return ResolutionResult.of(X, V, resolution, True).sequence


def test_alpha_table_of_o10(p1p1: SegreVeronese) -> None:
    table = alpha_table(p1p1.line(1, 0), p1p1)
    assert table.natural
    assert table.indices == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert table.rows == ((2, 0, 1, 0), (0, 1, 0, 0), (0, 0, 1, 2))
    assert table.alpha(0, (1, 0)) == 1
    assert table.weight_slice(2, 1) == [((0, 1), 0), ((1, 0), 1)]


def test_resolution_of_o10(p1p1: SegreVeronese) -> None:
    V = p1p1.line(1, 0)
    table = alpha_table(V, p1p1)
    resolution = build_resolution(table, 0)
    assert sequence(p1p1, V, resolution) == "0 -> O(-1,0) -> O(0,0)^2 -> V -> 0"
    assert chi_consistency(resolution, table)

    swapped = p1p1.line(0, 1)
    assert sequence(p1p1, swapped, build_resolution(alpha_table(swapped, p1p1), 0)) == (
        "0 -> O(0,-1) -> O(0,0)^2 -> V -> 0"
    )


def test_resolution_of_first_and_last_twist(p1p1: SegreVeronese) -> None:
    V = p1p1.line(1, 0)
    table = alpha_table(V, p1p1)
    first = build_resolution(table, 1)
    assert sequence(p1p1, V, first) == "0 -> O(0,-1) -> V(-h) -> 0"
    last = build_resolution(table, 2)
    assert last.before == ()
    assert sequence(p1p1, V, last) == "0 -> V(-2h) -> O(-1,-1)^2 -> O(-1,0) -> 0"
    assert chi_consistency(first, table)
    assert chi_consistency(last, table)


def test_corrupted_multiplicity_fails_chi(p1p1: SegreVeronese) -> None:
    table = alpha_table(p1p1.line(1, 0), p1p1)
    corrupted = Resolution(
        q=0,
        before=(
            MonadTerm(weight=1, summands=(MonadSummand(index=(1, 0), multiplicity=2),)),
            MonadTerm(weight=0, summands=(MonadSummand(index=(0, 0), multiplicity=2),)),
        ),
        after=(),
    )
    assert not chi_consistency(corrupted, table)


def test_resolution_rejects_other_rows(p2p1: SegreVeronese) -> None:
    table = alpha_table(p2p1.line(2, 0), p2p1)
    with pytest.raises(ValueError):
        build_resolution(table, 2)


def test_non_natural_table_is_refused(p1p1: SegreVeronese) -> None:
    table = alpha_table(p1p1.line(0, 0), p1p1)
    assert not table.natural
    assert any(defect.i == 1 and defect.index == (1, 1) and defect.degree == 2 for defect in table.defects)
    with pytest.raises(NotNaturalError):
        build_resolution(table, 0)
    with pytest.raises(NotNaturalError):
        build_monad(table, 1)


def test_alpha_table_of_o20_on_segre_plane(p2p2: SegreVeronese) -> None:
    table = alpha_table(p2p2.line(2, 0), p2p2)
    assert table.natural
    assert dict(table.weight_slice(0, 0)) == {(0, 0): 6}
    assert [table.alpha(0, (a, 0)) for a in range(3)] == [6, 8, 3]
    assert [table.alpha(1, (a, 1)) for a in range(3)] == [3, 3, 1]
    assert table.alpha(2, (0, 2)) == 1
    assert [table.alpha(3, (1, b)) for b in range(3)] == [1, 3, 3]
    assert [table.alpha(4, (2, b)) for b in range(3)] == [3, 8, 6]
    # top entry of the dual collection vanishes below the top row on Segre varieties
    assert all(table.alpha(i, (2, 2)) == 0 for i in range(4))


def test_monads_of_o20_on_segre_plane(p2p2: SegreVeronese) -> None:
    V = p2p2.line(2, 0)
    table = alpha_table(V, p2p2)
    for q in range(5):
        shape = build_monad(table, q)
        assert shape.rank_sum == 1
        assert chi_consistency(shape, table)

    split = build_monad(table, 2)
    assert split.splits
    assert split.segre_simplified
    assert split.middle.summands == (MonadSummand(index=(0, 2), multiplicity=1),)

    top = build_monad(table, 4)
    assert top.b1_chain == ()
    assert [term.weight for term in top.b2_chain] == [3, 2]
    assert not top.segre_simplified

    first = build_monad(table, 1)
    assert [term.weight for term in first.b1_chain] == [3, 2]
    assert first.middle.rank == 3
    assert not first.splits

    with pytest.raises(ValueError):
        build_monad(table, 5)


def test_resolution_of_o20_on_segre_plane(p2p2: SegreVeronese) -> None:
    V = p2p2.line(2, 0)
    resolution = build_resolution(alpha_table(V, p2p2), 0)
    assert sequence(p2p2, V, resolution) == "0 -> O(-2,0)^3 -> O(-1,0)^8 -> O(0,0)^6 -> V -> 0"


def test_rank_mismatch_is_reported(p1p1: SegreVeronese) -> None:
    table = alpha_table(p1p1.line(1, 0), p1p1)
    broken = AlphaTable(
        variety=table.variety,
        sheaf=table.sheaf,
        indices=table.indices,
        rows=((3, 0, 1, 0),) + table.rows[1:],
    )
    with pytest.raises(MonadRankError):
        build_monad(broken, 0)


def test_alpha_table_needs_expansion_for_omega_boxes(p2p2: SegreVeronese) -> None:
    V = FormalSheaf.of(BoxAtom.omega_box((2, 2), (1, 1), (3, 2)))
    with pytest.raises(AtomProductError):
        alpha_table(V, p2p2)
    table = alpha_table(V, p2p2, expand=True)
    assert len(table.rows) == 5
    assert len(table.indices) == 9


def by_name(report: CriteriaReport) -> dict[str, CriterionResult]:
    return {result.name: result for result in report.results}


def test_twisted_h1_criterion() -> None:
    X = SegreVeronese(n=(2, 1), k=(1, 2))
    report = evaluate_criteria(X.line(1, 1), X)
    assert report.input_is_ulrich
    result = by_name(report)["twisted-h1-vanishing"]
    assert result.applicable
    assert result.holds
    assert result.values["h1"] == 0
    assert result.input_matches_conclusion
    assert not by_name(report)["row-one-collapse"].applicable


def test_twisted_h1_criterion_on_non_ulrich_input() -> None:
    X = SegreVeronese(n=(2, 1), k=(2, 1))
    report = evaluate_criteria(X.line(3, 0), X)
    assert not report.input_is_ulrich
    result = by_name(report)["twisted-h1-vanishing"]
    assert result.holds
    assert result.input_matches_conclusion


def test_middle_row_splitting_criterion() -> None:
    X = SegreVeronese(n=(2, 2), k=(1, 1))
    result = by_name(evaluate_criteria(X.line(0, 2), X))["middle-row-splitting"]
    assert result.applicable
    assert result.holds
    assert result.input_matches_conclusion
    assert set(result.values) == {
        "alpha_2^{0,1}",
        "alpha_2^{1,0}",
        "alpha_2^{1,2}",
        "alpha_2^{2,1}",
    }

    Y = SegreVeronese(n=(3, 2), k=(1, 1))
    result = by_name(evaluate_criteria(Y.line(0, 3), Y))["middle-row-splitting"]
    assert result.holds
    assert result.input_matches_conclusion


def test_factor_pullback_recognition() -> None:
    X = SegreVeronese(n=(3, 2), k=(1, 1))
    result = by_name(evaluate_criteria(X.line(2, 0), X))["factor-pullback"]
    assert result.applicable
    assert result.input_matches_conclusion


def test_criteria_not_applicable_on_p1p1() -> None:
    X = SegreVeronese(n=(1, 1), k=(1, 2))
    report = evaluate_criteria(X.line(1, 1), X)
    assert [result.name for result in report.results] == [
        "row-one-collapse",
        "twisted-h1-vanishing",
        "twisted-h1-vanishing-dual",
        "middle-row-splitting",
        "factor-pullback",
    ]
    assert not any(result.applicable for result in report.results)
    assert all(result.holds is None for result in report.results)


def test_criteria_need_two_factors() -> None:
    X = SegreVeronese(n=(1, 1, 1), k=(1, 1, 1))
    with pytest.raises(InvalidSheafError):
        evaluate_criteria(X.line(1, 0, 0), X)


SWEEP_VARIETIES = [
    ((1, 1), (1, 1)),
    ((1, 1), (2, 3)),
    ((1, 1), (3, 2)),
    ((2, 1), (1, 1)),
    ((2, 1), (1, 2)),
    ((3, 1), (1, 3)),
    ((2, 2), (1, 1)),
    ((3, 2), (1, 1)),
    ((2, 2), (2, 2)),
]


def classified_bundles(X: SegreVeronese) -> list[FormalSheaf]:
    found = {FormalSheaf.of(atom) for atom in classify_ulrich_omega_boxes(X)}
    found.update(X.line(*a) for a in classify_ulrich_lines(X))
    return sorted(found, key=lambda V: V.terms[0].atom.sort_key)


def pullback_bundles() -> list[tuple[FormalSheaf, SegreVeronese]]:
    P1 = SegreVeronese(n=(1,), k=(1,))
    conic = SegreVeronese(n=(1,), k=(2,))
    plane = SegreVeronese(n=(2,), k=(2,))
    segre = SegreVeronese(n=(1, 1), k=(1, 1))
    omega_plane = FormalSheaf.of(BoxAtom.omega_box((2,), (1,), (3,)))
    cases: list[tuple[FormalSheaf, SegreVeronese, FormalSheaf, SegreVeronese, Literal["left", "right"]]] = [
        (segre.line(1, 0), segre, P1.line(0), P1, "left"),
        (conic.line(1), conic, P1.line(0), P1, "right"),
        (omega_plane, plane, P1.line(0), P1, "left"),
        (P1.line(0), P1, omega_plane, plane, "right"),
    ]
    return [(pullback_ulrich(E, X, F, Y, side), X.times(Y)) for E, X, F, Y, side in cases]


def assert_ulrich_pipeline(V: FormalSheaf, X: SegreVeronese) -> None:
    certificate = is_ulrich(V, X)
    assert certificate.verdict
    assert certificate.h0 == rank(V) * X.degree
    assert verify_regularity(V, X, 3, expand=True).passed

    table = alpha_table(V, X, expand=True)
    assert table.natural
    for q in range(X.d + 1):
        assert any(alpha for _, alpha in table.weight_slice(q, q)), q
        monad = build_monad(table, q)
        assert monad.rank_sum == rank(V)
        assert chi_consistency(monad, table)
    for q in sorted({0, 1, X.d}):
        assert chi_consistency(build_resolution(table, q), table)
    if X.is_segre:
        assert all(table.alpha(i, X.n) == 0 for i in range(X.d))


@pytest.mark.parametrize(("n", "k"), SWEEP_VARIETIES)
def test_classified_ulrich_bundles_have_natural_monads(n: tuple[int, ...], k: tuple[int, ...]) -> None:
    X = SegreVeronese(n=n, k=k)
    bundles = classified_bundles(X)
    assert bundles
    for V in bundles:
        assert_ulrich_pipeline(V, X)


def test_pullback_bundles_have_natural_monads() -> None:
    for V, X in pullback_bundles():
        assert_ulrich_pipeline(V, X)
