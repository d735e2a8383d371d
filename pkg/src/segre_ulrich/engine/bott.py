"""Cohomology of twisted exterior powers of the cotangent bundle on a single projective space.

``bott_cohomology`` implements the windowed Bott formula for Omega^p(t) on P^n.
``bwb_cohomology`` handles any irreducible homogeneous bundle on P^n (Borel-Weil-Bott),
which is what the exact expansion of Omega^p(t) x Omega^q(s) products needs.
"""

import logging
from functools import lru_cache
from itertools import combinations
from math import prod
from typing import Sequence

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from segre_ulrich.engine.exactcomb import binom
from segre_ulrich.errors import InvalidSheafError

logger = logging.getLogger(__name__)


class CohomologyVector(BaseModel):
    """Dimensions h^0 .. h^d of a sheaf."""

    model_config = ConfigDict(frozen=True)

    dims: tuple[int, ...] = Field(..., min_length=1, description="h^0, h^1, ..., h^d")

    @field_validator("dims")
    @classmethod
    def nonnegative(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if any(h < 0 for h in v):
            raise ValueError(f"cohomology dimensions must be >= 0, got {v}")
        return v

    @classmethod
    def zero(cls, dim: int) -> "CohomologyVector":
        return cls(dims=(0,) * (dim + 1))

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def __len__(self) -> int:
        return len(self.dims)

    @property
    def is_zero(self) -> bool:
        return not any(self.dims)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * h for i, h in enumerate(self.dims))

    @property
    def support(self) -> tuple[int, ...]:
        """Degrees with non-zero cohomology."""
        return tuple(i for i, h in enumerate(self.dims) if h)

    def reversed(self) -> "CohomologyVector":
        return CohomologyVector(dims=self.dims[::-1])


class FactorSheaf(BaseModel):
    """Omega^p(t) on P^n. Omega^0 is O and Omega^n(n) is O(-1)."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=1, description="Dimension of the projective space")
    p: int = Field(..., ge=0, description="Exterior power of the cotangent bundle")
    t: int = Field(..., description="Twist")

    @model_validator(mode="after")
    def power_in_range(self) -> "FactorSheaf":
        if self.p > self.n:
            raise InvalidSheafError(f"Omega^{self.p} does not exist on P^{self.n}")
        return self

    @property
    def rank(self) -> int:
        return binom(self.n, self.p)

    @property
    def is_line_bundle(self) -> bool:
        return self.p in (0, self.n)

    def canonical(self) -> "FactorSheaf":
        """Rewrite Omega^n(t) as O(t-n-1); everything else is already canonical."""
        if self.p == self.n:
            return FactorSheaf(n=self.n, p=0, t=self.t - self.n - 1)
        return self

    def twisted(self, c: int) -> "FactorSheaf":
        return FactorSheaf(n=self.n, p=self.p, t=self.t + c)


@lru_cache(maxsize=65536)
def bott_dims(n: int, p: int, t: int) -> tuple[int, ...]:
    """Raw Bott dimensions of Omega^p(t) on P^n as a tuple of length n+1."""
    dims = [0] * (n + 1)
    if t > p:
        dims[0] = binom(t + n - p, t) * binom(t - 1, p)
    elif t == 0:
        dims[p] = 1
    elif t < p - n:
        dims[n] = binom(-t + p, -t) * binom(-t - 1, n - p)
    return tuple(dims)


def bott_cohomology(f: FactorSheaf) -> CohomologyVector:
    """Full cohomology vector of Omega^p(t) on P^n; at most one entry is non-zero."""
    return CohomologyVector(dims=bott_dims(f.n, f.p, f.t))


def serre_dual(f: FactorSheaf) -> FactorSheaf:
    """The factor sheaf whose cohomology is ``f``'s read backwards."""
    return FactorSheaf(n=f.n, p=f.n - f.p, t=-f.t)


def weyl_dimension(weight: Sequence[int]) -> int:
    """Dimension of the irreducible GL_N representation with non-increasing highest weight."""
    pairs = list(combinations(range(len(weight)), 2))
    numerator = prod(weight[i] - weight[j] + j - i for i, j in pairs)
    denominator = prod(j - i for i, j in pairs)
    return numerator // denominator


@lru_cache(maxsize=65536)
def _bwb_dims(n: int, weight: tuple[int, ...], twist: int) -> tuple[int, ...]:
    # Q-part weight, then the tautological line part O(twist) = S^(-twist).
    shifted = [w + n - i for i, w in enumerate(weight)] + [-twist]
    dims = [0] * (n + 1)
    if len(set(shifted)) < len(shifted):
        return tuple(dims)
    length = sum(1 for i, j in combinations(range(n + 1), 2) if shifted[i] < shifted[j])
    ordered = sorted(shifted, reverse=True)
    dims[length] = weyl_dimension([w - (n - i) for i, w in enumerate(ordered)])
    return tuple(dims)


def bwb_cohomology(n: int, weight: Sequence[int], twist: int) -> CohomologyVector:
    """Cohomology of S^weight(Q) x O(twist) on P^n, Q the rank-n universal quotient bundle.

    ``weight`` is a non-increasing integer sequence of length n (negative entries allowed,
    so duals such as Lambda^p Q^* are covered).
    """
    weight = tuple(weight)
    if len(weight) != n or any(a < b for a, b in zip(weight, weight[1:])):
        raise InvalidSheafError(f"weight {weight} is not a non-increasing sequence of length {n}")
    return CohomologyVector(dims=_bwb_dims(n, weight, twist))


def omega_weight(n: int, p: int) -> tuple[int, ...]:
    """Weight of Omega^p(p) = Lambda^p Q^* on P^n."""
    return (0,) * (n - p) + (-1,) * p


@lru_cache(maxsize=16384)
def wedge_product_dims(n: int, p: int, t: int, q: int, s: int) -> tuple[int, ...]:
    """Cohomology of Omega^p(t) x Omega^q(s) on P^n as a raw tuple."""
    total = [0] * (n + 1)
    for k in range(max(0, p + q - n), min(p, q) + 1):
        # Pieri: Lambda^p x Lambda^q splits over the partitions (2^k, 1^(p+q-2k)).
        partition = (2,) * k + (1,) * (p + q - 2 * k) + (0,) * (n - p - q + k)
        dual = tuple(-part for part in reversed(partition))
        for i, h in enumerate(_bwb_dims(n, dual, t + s - p - q)):
            total[i] += h
    logger.debug("Omega^%d(%d) x Omega^%d(%d) on P^%d -> %s", p, t, q, s, n, total)
    return tuple(total)


def wedge_product_cohomology(n: int, p: int, t: int, q: int, s: int) -> CohomologyVector:
    """Exact cohomology of Omega^p(t) x Omega^q(s) on P^n."""
    for power in (p, q):
        if not 0 <= power <= n:
            raise InvalidSheafError(f"Omega^{power} does not exist on P^{n}")
    return CohomologyVector(dims=wedge_product_dims(n, p, t, q, s))
