"""Segre-Veronese ambient data and the indexing of the Omega-box dual collection."""

from itertools import product

from pydantic import BaseModel, ConfigDict, Field, model_validator

from segre_ulrich.engine.exactcomb import multinomial_degree
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf
from segre_ulrich.errors import ArityMismatchError, InvalidSheafError


class SegreVeronese(BaseModel):
    """P^{n_1} x ... x P^{n_s} embedded by O(k_1, ..., k_s)."""

    model_config = ConfigDict(frozen=True)

    n: tuple[int, ...] = Field(..., min_length=1, description="Factor dimensions n_1..n_s")
    k: tuple[int, ...] = Field(..., min_length=1, description="Embedding degrees k_1..k_s")

    @model_validator(mode="after")
    def consistent(self) -> "SegreVeronese":
        if len(self.n) != len(self.k):
            raise ArityMismatchError(len(self.n), len(self.k), "degree list")
        if any(n_i < 1 for n_i in self.n) or any(k_i < 1 for k_i in self.k):
            raise InvalidSheafError(f"dimensions {self.n} and degrees {self.k} must all be >= 1")
        return self

    @property
    def s(self) -> int:
        return len(self.n)

    @property
    def d(self) -> int:
        return sum(self.n)

    @property
    def h(self) -> tuple[int, ...]:
        """Twist tuple of the polarization."""
        return self.k

    @property
    def canonical(self) -> tuple[int, ...]:
        return tuple(-n_i - 1 for n_i in self.n)

    @property
    def is_segre(self) -> bool:
        return all(k_i == 1 for k_i in self.k)

    @property
    def degree(self) -> int:
        return multinomial_degree(self.n, self.k)

    def twist_by_h(self, q: int) -> tuple[int, ...]:
        return tuple(q * k_i for k_i in self.k)

    def factor(self, i: int) -> "SegreVeronese":
        """The Veronese variety (P^{n_i}, O(k_i))."""
        return SegreVeronese(n=(self.n[i],), k=(self.k[i],))

    def times(self, other: "SegreVeronese") -> "SegreVeronese":
        return SegreVeronese(n=self.n + other.n, k=self.k + other.k)

    def line(self, *twists: int) -> FormalSheaf:
        return FormalSheaf.line(self.n, twists)

    def descriptor(self) -> str:
        return "n={};k={}".format(",".join(map(str, self.n)), ",".join(map(str, self.k)))


class CollectionIndex(BaseModel):
    """A tuple (a_1..a_s) with 0 <= a_i <= n_i indexing G^{a} = Omega^{a_1}(a_1) x ... x Omega^{a_s}(a_s)."""

    model_config = ConfigDict(frozen=True)

    a: tuple[int, ...]

    @property
    def weight(self) -> int:
        return sum(self.a)

    def label(self) -> str:
        return ",".join(map(str, self.a))


class CollectionEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    index: CollectionIndex
    atom: BoxAtom


def degree(X: SegreVeronese) -> int:
    return X.degree


def collection_indices(X: SegreVeronese) -> list[CollectionIndex]:
    """All prod(n_i + 1) indices, ordered by weight and then lexicographically."""
    tuples = product(*(range(n_i + 1) for n_i in X.n))
    return [CollectionIndex(a=a) for a in sorted(tuples, key=lambda a: (sum(a), a))]


def g_atom(X: SegreVeronese, index: CollectionIndex) -> BoxAtom:
    return BoxAtom.omega_box(X.n, index.a, index.a)


def dual_collection(X: SegreVeronese) -> list[CollectionEntry]:
    return [CollectionEntry(index=index, atom=g_atom(X, index)) for index in collection_indices(X)]


def weight_group_sizes(X: SegreVeronese) -> list[int]:
    sizes = [0] * (X.d + 1)
    for index in collection_indices(X):
        sizes[index.weight] += 1
    return sizes
