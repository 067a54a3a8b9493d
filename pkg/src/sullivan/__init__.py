"""Exact computations with Sullivan algebras over Q: path and loop models,
shriek cocycles, and certificates for triviality of the loop (co)product."""

from .algebra import Generator, GeneratorTable, Poly
from .models import (
    CdgaPresentation,
    build_loop_model,
    build_multiplication_model,
    build_nice_model,
    cdga,
    check_quasi_iso,
    is_pure,
    is_semipure,
)
from .cohomology import cohomology_dims, induced_map
from .shriek import build_good_cocycle, check_goodness, check_pq_vanishing, verify_nontriviality
from .triviality import analyze_dlcop, analyze_dlp
from .reductions import pure_decompose, semipure_reduce

__version__ = "0.1.0"

__all__ = [
    "Generator", "GeneratorTable", "Poly", "CdgaPresentation", "cdga",
    "build_multiplication_model", "build_loop_model", "build_nice_model", "check_quasi_iso",
    "is_pure", "is_semipure", "cohomology_dims", "induced_map",
    "build_good_cocycle", "check_goodness", "check_pq_vanishing", "verify_nontriviality",
    "analyze_dlcop", "analyze_dlp", "pure_decompose", "semipure_reduce",
]
