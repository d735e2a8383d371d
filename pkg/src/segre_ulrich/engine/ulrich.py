"""Ulrich verification, exhaustive classification of line bundles and Omega-boxes,
pullback constructions from the factors, and the regularity vanishing checks.
"""

import logging
from itertools import combinations, product
from typing import Iterator, Literal, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field

from segre_ulrich.engine.sheaf import (
    BoxAtom,
    FormalSheaf,
    atom_dims,
    box_product,
    kunneth_cohomology,
    product_cohomology,
    rank,
    twist,
)
from segre_ulrich.engine.variety import SegreVeronese
from segre_ulrich.errors import (
    AtomProductError,
    BoundTooSmallError,
    InvalidSheafError,
    NotUlrichError,
)
from segre_ulrich.utils.observability import traced

logger = logging.getLogger(__name__)


class UlrichWitness(BaseModel):
    """A non-vanishing h^i(V(-t h)) that disproves the Ulrich property."""

    model_config = ConfigDict(frozen=True)

    t: int = Field(..., description="Twist V(-t h), 1 <= t <= d")
    i: int = Field(..., description="Cohomological degree")
    dimension: int = Field(..., ge=1)


class UlrichCertificate(BaseModel):
    model_config = ConfigDict(frozen=True)

    verdict: bool
    witness: Optional[UlrichWitness] = None
    table: tuple[tuple[int, ...], ...] = Field(..., description="Row t-1 holds h^0..h^d of V(-t h) for t = 1..d")
    h0: int
    degree_rank_product: int


def _require_on(V: FormalSheaf, X: SegreVeronese) -> None:
    if V.dims != X.n:
        raise InvalidSheafError(f"sheaf lives on factors {V.dims} but the variety has {X.n}")


def is_ulrich(V: FormalSheaf, X: SegreVeronese) -> UlrichCertificate:
    """Check h^*(V(-t h)) = 0 for t = 1..d."""
    _require_on(V, X)
    table = tuple(product_cohomology(V, shift=X.twist_by_h(-t)).dims for t in range(1, X.d + 1))
    witness = next(
        (UlrichWitness(t=t, i=i, dimension=h) for t, row in enumerate(table, start=1) for i, h in enumerate(row) if h),
        None,
    )
    return UlrichCertificate(
        verdict=witness is None,
        witness=witness,
        table=table,
        h0=kunneth_cohomology(V)[0],
        degree_rank_product=rank(V) * X.degree,
    )


def _is_ulrich_atom(atom: BoxAtom, X: SegreVeronese) -> bool:
    # Verdict only: the searches skip the certificate table and h^0.
    return all(not any(atom_dims(atom, X.twist_by_h(-t))) for t in range(1, X.d + 1))


def _shell(lower: Sequence[int], upper: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Points of the box widened by one in every direction that lie outside the original box."""
    for point in product(*(range(lo - 1, hi + 2) for lo, hi in zip(lower, upper))):
        if any(c < lo or c > hi for c, lo, hi in zip(point, lower, upper)):
            yield point


def classify_ulrich_lines(X: SegreVeronese) -> list[tuple[int, ...]]:
    """All twists a with O(a) Ulrich on X, in lexicographic order.

    The search box is 0 <= a_i <= d k_i + n_i; the shell just outside it is checked to be empty.
    """
    lower = [0] * X.s
    upper = [X.d * k_i + n_i for n_i, k_i in zip(X.n, X.k)]
    with traced("classify_ulrich_lines", variety=X.descriptor()):
        found = [
            a
            for a in product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper)))
            if _is_ulrich_atom(BoxAtom.line(X.n, a), X)
        ]
        stray = [a for a in _shell(lower, upper) if _is_ulrich_atom(BoxAtom.line(X.n, a), X)]
    if stray:
        raise BoundTooSmallError(f"Ulrich line bundles outside the search box on {X.descriptor()}: {stray}")
    logger.info("Ulrich line bundles on %s: %s", X.descriptor(), found)
    return sorted(found)


def _omega_ranges(X: SegreVeronese) -> list[list[tuple[int, int, int]]]:
    # Per slot: (power, lowest twist, highest twist).
    return [
        [(a, a - n_i, a + X.d * k_i + n_i) for a in range(n_i + 1)]
        for n_i, k_i in zip(X.n, X.k)
    ]


def classify_ulrich_omega_boxes(X: SegreVeronese) -> list[BoxAtom]:
    """All Ulrich Omega^{a_1}(l_1) x ... x Omega^{a_s}(l_s) on X within the twist windows
    [a_i - n_i, a_i + d k_i + n_i], deduplicated by canonical form and sorted.
    """
    slots = _omega_ranges(X)
    found: set[BoxAtom] = set()
    with traced("classify_ulrich_omega_boxes", variety=X.descriptor()):
        for choice in product(*slots):
            powers = [a for a, _, _ in choice]
            lower = [lo for _, lo, _ in choice]
            upper = [hi for _, _, hi in choice]
            for twists in product(*(range(lo, hi + 1) for lo, hi in zip(lower, upper))):
                atom = BoxAtom.omega_box(X.n, powers, twists)
                if atom not in found and _is_ulrich_atom(atom, X):
                    found.add(atom)
            for twists in _shell(lower, upper):
                atom = BoxAtom.omega_box(X.n, powers, twists)
                if _is_ulrich_atom(atom, X) and atom not in found:
                    raise BoundTooSmallError(
                        f"Ulrich Omega-box {atom.sort_key} outside the search box on {X.descriptor()}"
                    )
    result = sorted(found, key=lambda atom: atom.sort_key)
    logger.info("Ulrich Omega-boxes on %s: %s", X.descriptor(), [atom.sort_key for atom in result])
    return result


def pullback_ulrich(
    E: FormalSheaf,
    E_variety: SegreVeronese,
    F: Optional[FormalSheaf] = None,
    F_variety: Optional[SegreVeronese] = None,
    side: Literal["left", "right"] = "left",
) -> FormalSheaf:
    """E(d_F h_E) x F (side="left") or E x F(d_E h_F) (side="right") on the product variety.

    Both inputs must be Ulrich on their own varieties. Without F the result is E itself.
    """
    certificate = is_ulrich(E, E_variety)
    if not certificate.verdict:
        raise NotUlrichError(f"left factor is not Ulrich on {E_variety.descriptor()}", certificate)
    if F is None:
        return E
    if F_variety is None:
        raise InvalidSheafError("the right factor needs its variety")
    certificate = is_ulrich(F, F_variety)
    if not certificate.verdict:
        raise NotUlrichError(f"right factor is not Ulrich on {F_variety.descriptor()}", certificate)

    if side == "left":
        result = box_product(twist(E, E_variety.twist_by_h(F_variety.d)), F)
    else:
        result = box_product(E, twist(F, F_variety.twist_by_h(E_variety.d)))

    X = E_variety.times(F_variety)
    certificate = is_ulrich(result, X)
    if not certificate.verdict:
        raise NotUlrichError(f"pullback is not Ulrich on {X.descriptor()}", certificate)
    return result


Family = Literal["positive", "negative"]


class RegularityViolation(BaseModel):
    model_config = ConfigDict(frozen=True)

    family: Family
    i: int
    atom: BoxAtom = Field(..., description="The bundle tensored with the twisted V")
    dimension: int


class RegularityReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    grid: int
    checks: int
    skipped: int = Field(..., description="Checks needing an Omega x Omega product while expansion is off")
    violations: tuple[RegularityViolation, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def _slot_patterns(X: SegreVeronese) -> Iterator[tuple[int, ...]]:
    """Per-slot exterior powers: 0 for an O slot, 1..n_r for an Omega slot, over every subset of slots."""
    for size in range(X.s + 1):
        for slots in combinations(range(X.s), size):
            ranges = [range(1, X.n[r] + 1) if r in slots else range(0, 1) for r in range(X.s)]
            yield from product(*ranges)


def verify_regularity(
    V: FormalSheaf,
    X: SegreVeronese,
    J: int,
    expand: bool = False,
) -> RegularityReport:
    """Check the vanishings an Ulrich bundle must satisfy for every 0 <= j_r <= J:

    - H^i(V(-i h) x G_r(j)) = 0 for i > 0, with G_r = Omega^{a_r}(a_r + 1 + j_r) or O(j_r);
    - H^i(V(-(i+1) h) x G_r(-j)) = 0 for i < d, with G_r = Omega^{a_r}(a_r - j_r) or O(-j_r);

    over every choice of Omega slots, which covers permutations of the factors.
    """
    _require_on(V, X)
    certificate = is_ulrich(V, X)
    if not certificate.verdict:
        raise NotUlrichError(f"regularity checks need an Ulrich bundle on {X.descriptor()}", certificate)
    if J < 0:
        raise InvalidSheafError(f"grid bound must be >= 0, got {J}")

    checks = 0
    skipped = 0
    violations: list[RegularityViolation] = []
    with traced("verify_regularity", variety=X.descriptor(), grid=J):
        for powers in _slot_patterns(X):
            for j in product(range(J + 1), repeat=X.s):
                positive = BoxAtom.omega_box(X.n, powers, [a + 1 + j_r if a else j_r for a, j_r in zip(powers, j)])
                negative = BoxAtom.omega_box(X.n, powers, [a - j_r if a else -j_r for a, j_r in zip(powers, j)])
                families: tuple[tuple[Family, BoxAtom, range, int], ...] = (
                    ("positive", positive, range(1, X.d + 1), 0),
                    ("negative", negative, range(0, X.d), 1),
                )
                for family, atom, degrees, offset in families:
                    for i in degrees:
                        checks += 1
                        try:
                            vector = product_cohomology(V, atom, X.twist_by_h(-(i + offset)), expand)
                        except AtomProductError:
                            skipped += 1
                            continue
                        if vector[i]:
                            violations.append(
                                RegularityViolation(family=family, i=i, atom=atom, dimension=vector[i])
                            )
    if skipped:
        logger.warning("%d regularity checks skipped: they need factor-product expansion", skipped)
    logger.info("Regularity on %s: %d checks, %d violations", X.descriptor(), checks, len(violations))
    return RegularityReport(grid=J, checks=checks, skipped=skipped, violations=tuple(violations))
