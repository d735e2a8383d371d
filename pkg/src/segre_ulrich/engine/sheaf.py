"""Bundles on products of projective spaces: box atoms, formal direct sums and Kunneth cohomology."""

import logging
from collections import Counter
from typing import Iterable, Optional, Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator

from segre_ulrich.engine.bott import CohomologyVector, FactorSheaf, bott_dims, wedge_product_dims
from segre_ulrich.errors import ArityMismatchError, AtomProductError, InvalidSheafError

logger = logging.getLogger(__name__)


class BoxAtom(BaseModel):
    """Omega^{p_1}(t_1) x ... x Omega^{p_s}(t_s), one factor per P^{n_i}.

    Factors are stored canonically: Omega^n(t) becomes O(t-n-1).
    """

    model_config = ConfigDict(frozen=True)

    factors: tuple[FactorSheaf, ...] = Field(..., min_length=1)

    @field_validator("factors")
    @classmethod
    def canonical_factors(cls, v: tuple[FactorSheaf, ...]) -> tuple[FactorSheaf, ...]:
        return tuple(f.canonical() for f in v)

    @classmethod
    def line(cls, dims: Sequence[int], twists: Sequence[int]) -> "BoxAtom":
        if len(dims) != len(twists):
            raise ArityMismatchError(len(dims), len(twists), "line bundle")
        return cls(factors=tuple(FactorSheaf(n=n, p=0, t=t) for n, t in zip(dims, twists)))

    @classmethod
    def omega_box(cls, dims: Sequence[int], powers: Sequence[int], twists: Sequence[int]) -> "BoxAtom":
        if not len(dims) == len(powers) == len(twists):
            raise ArityMismatchError(len(dims), len(powers), "omega box")
        return cls(factors=tuple(FactorSheaf(n=n, p=p, t=t) for n, p, t in zip(dims, powers, twists)))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(f.n for f in self.factors)

    @property
    def rank(self) -> int:
        result = 1
        for f in self.factors:
            result *= f.rank
        return result

    @property
    def is_line_bundle(self) -> bool:
        return all(f.p == 0 for f in self.factors)

    @property
    def sort_key(self) -> tuple[tuple[int, int], ...]:
        return tuple((f.p, f.t) for f in self.factors)

    def twisted(self, c: Sequence[int]) -> "BoxAtom":
        if len(c) != len(self.factors):
            raise ArityMismatchError(len(self.factors), len(c), "twist")
        return BoxAtom(factors=tuple(f.twisted(c_i) for f, c_i in zip(self.factors, c)))


class SheafTerm(BaseModel):
    """A box atom with its multiplicity inside a direct sum."""

    model_config = ConfigDict(frozen=True)

    atom: BoxAtom
    multiplicity: int = Field(..., ge=1)


class FormalSheaf(BaseModel):
    """A finite direct sum of box atoms in canonical merged, sorted form."""

    model_config = ConfigDict(frozen=True)

    terms: tuple[SheafTerm, ...] = Field(..., min_length=1)

    @field_validator("terms")
    @classmethod
    def merged_and_sorted(cls, v: tuple[SheafTerm, ...]) -> tuple[SheafTerm, ...]:
        dims = {term.atom.dims for term in v}
        if len(dims) > 1:
            raise InvalidSheafError(f"direct summands live on different products: {sorted(dims)}")
        counts: Counter[BoxAtom] = Counter()
        for term in v:
            counts[term.atom] += term.multiplicity
        return tuple(
            SheafTerm(atom=atom, multiplicity=mult)
            for atom, mult in sorted(counts.items(), key=lambda item: item[0].sort_key)
        )

    @classmethod
    def from_atoms(cls, atoms: Iterable[tuple[BoxAtom, int]]) -> "FormalSheaf":
        return cls(terms=tuple(SheafTerm(atom=atom, multiplicity=mult) for atom, mult in atoms if mult))

    @classmethod
    def of(cls, atom: BoxAtom, multiplicity: int = 1) -> "FormalSheaf":
        return cls(terms=(SheafTerm(atom=atom, multiplicity=multiplicity),))

    @classmethod
    def line(cls, dims: Sequence[int], twists: Sequence[int]) -> "FormalSheaf":
        return cls.of(BoxAtom.line(dims, twists))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.terms[0].atom.dims

    @property
    def is_line_bundle(self) -> bool:
        return len(self.terms) == 1 and self.terms[0].multiplicity == 1 and self.terms[0].atom.is_line_bundle

    def atoms(self) -> list[BoxAtom]:
        return [term.atom for term in self.terms]


def twist(F: FormalSheaf, c: Sequence[int]) -> FormalSheaf:
    """Shift every factor twist of every atom by ``c``."""
    return FormalSheaf(terms=tuple(SheafTerm(atom=t.atom.twisted(c), multiplicity=t.multiplicity) for t in F.terms))


def rank(F: FormalSheaf) -> int:
    return sum(term.multiplicity * term.atom.rank for term in F.terms)


def box_product(left: FormalSheaf, right: FormalSheaf) -> FormalSheaf:
    """External tensor product of sheaves on two products of projective spaces."""
    return FormalSheaf.from_atoms(
        (BoxAtom(factors=a.atom.factors + b.atom.factors), a.multiplicity * b.multiplicity)
        for a in left.terms
        for b in right.terms
    )


def convolve(vectors: Sequence[Sequence[int]]) -> list[int]:
    """Kunneth: h^i of a box product is the sum over i_1+...+i_s = i of the factor products."""
    result = [1]
    for vector in vectors:
        combined = [0] * (len(result) + len(vector) - 1)
        for i, a in enumerate(result):
            if not a:
                continue
            for j, b in enumerate(vector):
                if b:
                    combined[i + j] += a * b
        result = combined
    return result


def _factor_dims(f: FactorSheaf, g: Optional[FactorSheaf], shift: int, expand: bool) -> tuple[int, ...]:
    if g is None:
        return bott_dims(f.n, f.p, f.t + shift)
    if f.p == 0 or g.p == 0:
        return bott_dims(f.n, f.p + g.p, f.t + g.t + shift)
    if not expand:
        raise AtomProductError(f.n, f.p, g.p)
    return wedge_product_dims(f.n, f.p, f.t + shift, g.p, g.t)


def atom_dims(
    atom: BoxAtom,
    shift: Optional[Sequence[int]] = None,
    other: Optional[BoxAtom] = None,
    expand: bool = False,
) -> list[int]:
    """Cohomology of ``atom(shift) x other`` as a list of length d+1."""
    shift = shift or (0,) * len(atom.factors)
    partners: Sequence[Optional[FactorSheaf]] = other.factors if other is not None else (None,) * len(atom.factors)
    return convolve([_factor_dims(f, g, c, expand) for f, g, c in zip(atom.factors, partners, shift)])


def product_cohomology(
    F: FormalSheaf,
    other: Optional[BoxAtom] = None,
    shift: Optional[Sequence[int]] = None,
    expand: bool = False,
) -> CohomologyVector:
    """Cohomology of ``F(shift) x other``.

    When both sides carry Omega^p, Omega^q with p, q > 0 in the same slot the product
    is not a single atom: it raises ``AtomProductError`` unless ``expand`` is set.
    """
    if other is not None and other.dims != F.dims:
        raise InvalidSheafError(f"cannot tensor a sheaf on {F.dims} with an atom on {other.dims}")
    if shift is not None and len(shift) != len(F.dims):
        raise ArityMismatchError(len(F.dims), len(shift), "twist")
    total = [0] * (sum(F.dims) + 1)
    for term in F.terms:
        for i, h in enumerate(atom_dims(term.atom, shift, other, expand)):
            total[i] += term.multiplicity * h
    return CohomologyVector(dims=tuple(total))


def kunneth_cohomology(F: FormalSheaf) -> CohomologyVector:
    """h^0 .. h^d of a formal sheaf via Kunneth and the Bott formula."""
    return product_cohomology(F)


def euler_characteristic(F: FormalSheaf, shift: Optional[Sequence[int]] = None) -> int:
    return product_cohomology(F, shift=shift).euler_characteristic
