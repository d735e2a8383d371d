"""Exception hierarchy for segre-ulrich.

Every error raised on purpose by the engine, the parser or the CLI derives from
``SegreUlrichError``. Errors that describe bad input also derive from
``ValueError`` so callers that only know the standard library can still catch them.
"""

from typing import Any, Optional


class SegreUlrichError(Exception):
    """Base class for all segre-ulrich errors."""


class ExactArithmeticError(SegreUlrichError, ValueError):
    """An exact combinatorial function received arguments outside its domain."""


class InvalidSheafError(SegreUlrichError, ValueError):
    """A factor, atom, sheaf or variety violates its invariants."""


class ArityMismatchError(SegreUlrichError, ValueError):
    """The number of factors does not match the ambient product."""

    def __init__(self, expected: int, found: int, what: str = "sheaf") -> None:
        self.expected = expected
        self.found = found
        super().__init__(f"{what} has {found} factor(s) but the variety has {expected}")


class ExpressionSyntaxError(SegreUlrichError, ValueError):
    """A sheaf or variety expression could not be parsed."""

    def __init__(self, message: str, text: str, offset: int) -> None:
        self.text = text
        self.offset = offset
        super().__init__(f"{message} at byte {offset}")


class AtomProductError(SegreUlrichError):
    """A product Omega^p(t) x Omega^q(s) with p, q > 0 was needed but expansion is disabled."""

    def __init__(self, n: int, p: int, q: int) -> None:
        self.n = n
        self.p = p
        self.q = q
        super().__init__(
            f"Omega^{p} x Omega^{q} on P^{n} is not a single atom; "
            "enable factor-product expansion (--expand-products) to compute it"
        )


class NotUlrichError(SegreUlrichError):
    """An operation that requires an Ulrich bundle received something else."""

    def __init__(self, message: str, certificate: Optional[Any] = None) -> None:
        self.certificate = certificate
        super().__init__(message)


class BoundTooSmallError(SegreUlrichError):
    """A classification search found an Ulrich member on the boundary shell of its box."""


class NotNaturalError(SegreUlrichError):
    """A resolution or monad was requested from an alpha-table without natural cohomology."""


class MonadRankError(SegreUlrichError):
    """The alternating rank sum of a complex differs from the rank of the sheaf."""

    def __init__(self, expected: int, found: int) -> None:
        self.expected = expected
        self.found = found
        super().__init__(f"alternating rank sum {found} differs from rank {expected}")
