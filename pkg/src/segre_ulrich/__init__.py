"""segre-ulrich: exact cohomology, Ulrich bundles and Beilinson monads on Segre-Veronese varieties."""

__version__ = "0.1.0"
