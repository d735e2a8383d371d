"""Tests for Segre-Veronese ambient data and the dual collection."""

from itertools import product

import pytest

from segre_ulrich.engine.bott import bott_dims
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf, kunneth_cohomology
from segre_ulrich.engine.variety import (
    SegreVeronese,
    collection_indices,
    degree,
    dual_collection,
    weight_group_sizes,
)


def test_basic_invariants(p2p1: SegreVeronese) -> None:
    assert p2p1.s == 2
    assert p2p1.d == 3
    assert p2p1.canonical == (-3, -2)
    assert p2p1.is_segre
    assert degree(p2p1) == 3
    assert p2p1.twist_by_h(-2) == (-2, -2)
    assert p2p1.descriptor() == "n=2,1;k=1,1"


def test_veronese_data() -> None:
    X = SegreVeronese(n=(1, 1), k=(2, 3))
    assert X.degree == 12
    assert not X.is_segre
    assert X.twist_by_h(2) == (4, 6)
    assert X.factor(1) == SegreVeronese(n=(1,), k=(3,))
    assert X.factor(0).times(X.factor(1)) == X


def test_validation() -> None:
    with pytest.raises(ValueError):
        SegreVeronese(n=(1, 2), k=(1,))
    with pytest.raises(ValueError):
        SegreVeronese(n=(0, 1), k=(1, 1))
    with pytest.raises(ValueError):
        SegreVeronese(n=(1, 1), k=(1, 0))


def test_collection_on_p1p1(p1p1: SegreVeronese) -> None:
    entries = dual_collection(p1p1)
    assert [e.index.a for e in entries] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [e.atom for e in entries] == [
        BoxAtom.line((1, 1), (0, 0)),
        BoxAtom.omega_box((1, 1), (0, 1), (0, 1)),
        BoxAtom.omega_box((1, 1), (1, 0), (1, 0)),
        BoxAtom.line((1, 1), (-1, -1)),
    ]
    assert entries[1].atom == BoxAtom.line((1, 1), (0, -1))


def test_collection_on_projective_plane() -> None:
    X = SegreVeronese(n=(2,), k=(1,))
    assert [index.a for index in collection_indices(X)] == [(0,), (1,), (2,)]
    assert [index.label() for index in collection_indices(X)] == ["0", "1", "2"]


def test_weight_group_sizes(p2p2: SegreVeronese) -> None:
    assert weight_group_sizes(p2p2) == [1, 2, 3, 2, 1]
    assert sum(weight_group_sizes(SegreVeronese(n=(3, 2, 1), k=(1, 1, 1)))) == 24


@pytest.mark.parametrize(("n", "k"), [((1, 1), (1, 1)), ((2, 1), (1, 2)), ((3, 2), (2, 1)), ((1, 1, 2), (1, 1, 1))])
def test_canonical_bundle_has_one_dimensional_top_cohomology(n: tuple[int, ...], k: tuple[int, ...]) -> None:
    X = SegreVeronese(n=n, k=k)
    for n_i, c in zip(X.n, X.canonical):
        assert bott_dims(n_i, 0, c) == (0,) * n_i + (1,)
    expected = [0] * X.d + [1]
    assert list(kunneth_cohomology(X.line(*X.canonical)).dims) == expected


@pytest.mark.parametrize("n", [(1, 1), (2, 1), (2, 2), (1, 1, 1)])
def test_line_bundle_acyclic_iff_one_factor_is(n: tuple[int, ...]) -> None:
    for c in product(range(-5, 3), repeat=len(n)):
        acyclic = kunneth_cohomology(FormalSheaf.line(n, c)).is_zero
        assert acyclic == any(-n_i <= c_i <= -1 for n_i, c_i in zip(n, c)), c
