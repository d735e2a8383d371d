"""Exact integer combinatorics.

Python integers are arbitrary precision, so nothing here can overflow or wrap.
Arguments outside a function's domain raise ``ExactArithmeticError``.
"""

from functools import lru_cache
from math import comb, factorial, prod
from typing import Sequence

from segre_ulrich.errors import ExactArithmeticError


@lru_cache(maxsize=4096)
def binom(a: int, b: int) -> int:
    """Binomial coefficient with a zero convention outside ``0 <= b <= a``.

    A negative upper argument is always a caller bug (the Bott formula is windowed
    so it never produces one) and raises instead of being silently extended.
    """
    if a < 0:
        raise ExactArithmeticError(f"binom({a}, {b}): negative upper argument")
    if b < 0 or b > a:
        return 0
    return comb(a, b)


def multinomial(parts: Sequence[int]) -> int:
    """``(sum parts)! / prod(part!)``."""
    if any(part < 0 for part in parts):
        raise ExactArithmeticError(f"multinomial{tuple(parts)}: negative part")
    return factorial(sum(parts)) // prod(factorial(part) for part in parts)


def multinomial_degree(n: Sequence[int], k: Sequence[int]) -> int:
    """Degree ``prod k_i^n_i * d! / prod n_i!`` of the Segre-Veronese embedding."""
    if len(n) != len(k) or not n:
        raise ExactArithmeticError(f"dimension list {tuple(n)} and degree list {tuple(k)} must be non-empty and equal")
    if any(n_i < 1 for n_i in n) or any(k_i < 1 for k_i in k):
        raise ExactArithmeticError("factor dimensions and embedding degrees must be >= 1")
    return prod(k_i**n_i for n_i, k_i in zip(n, k)) * multinomial(n)


def e_rj(n_r: int, j: int) -> int:
    """``binom(n_r + 1, j)``: ranks of the exterior powers in the Koszul complex of P^{n_r}."""
    return binom(n_r + 1, j)
