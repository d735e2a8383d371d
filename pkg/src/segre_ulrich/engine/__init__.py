"""Exact cohomology engine for Segre-Veronese varieties."""

from segre_ulrich.engine.beilinson import (
    AlphaTable,
    CriteriaReport,
    MonadShape,
    Resolution,
    alpha_table,
    build_monad,
    build_resolution,
    chi_consistency,
    evaluate_criteria,
)
from segre_ulrich.engine.bott import CohomologyVector, FactorSheaf, bott_cohomology, serre_dual
from segre_ulrich.engine.exactcomb import binom, multinomial_degree
from segre_ulrich.engine.sheaf import BoxAtom, FormalSheaf, kunneth_cohomology, rank, twist
from segre_ulrich.engine.ulrich import (
    UlrichCertificate,
    classify_ulrich_lines,
    classify_ulrich_omega_boxes,
    is_ulrich,
    pullback_ulrich,
    verify_regularity,
)
from segre_ulrich.engine.variety import SegreVeronese, degree, dual_collection

__all__ = [
    "AlphaTable",
    "BoxAtom",
    "CohomologyVector",
    "CriteriaReport",
    "FactorSheaf",
    "FormalSheaf",
    "MonadShape",
    "Resolution",
    "SegreVeronese",
    "UlrichCertificate",
    "alpha_table",
    "binom",
    "bott_cohomology",
    "build_monad",
    "build_resolution",
    "chi_consistency",
    "classify_ulrich_lines",
    "classify_ulrich_omega_boxes",
    "degree",
    "dual_collection",
    "evaluate_criteria",
    "is_ulrich",
    "kunneth_cohomology",
    "multinomial_degree",
    "pullback_ulrich",
    "rank",
    "serre_dual",
    "twist",
    "verify_regularity",
]
