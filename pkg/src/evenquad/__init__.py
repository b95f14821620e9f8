"""Exact pair-count decomposition of even numbers, a 75-type weak-ordering
taxonomy, prime-count bound checking, and batch range scanners."""

from .errors import BracketError, CoverageError, ResourceBudgetError
from .halfint import Half, parse_half
from .primes import PrimeTable
from .model import (Decomposition, IdentityReport, InteractionTallies,
                    check_identities, decompose, interactions,
                    odd_nonprime_count, prime_pair_weight)
from .taxonomy import (StructuralType, classify, classify_values,
                       enumerate_types, is_excluded, type_by_canonical)
from .bounds import (ALT_UPPER_C, DEFAULT_UPPER_C, BoundReport, DusartReport,
                     bound_value, check_bounds, check_dusart, dusart_scan,
                     find_root)
from .scan import ScanReport, census, goldbach_scan, scan_range, theorem_check

__version__ = "0.1.0"

__all__ = [
    "ALT_UPPER_C", "BoundReport", "BracketError", "CoverageError",
    "Decomposition", "DEFAULT_UPPER_C", "DusartReport", "Half",
    "IdentityReport", "InteractionTallies", "PrimeTable",
    "ResourceBudgetError", "ScanReport", "StructuralType", "bound_value",
    "census", "check_bounds", "check_dusart", "check_identities", "classify",
    "classify_values", "decompose", "dusart_scan", "enumerate_types",
    "find_root", "goldbach_scan", "interactions", "is_excluded",
    "odd_nonprime_count", "parse_half", "prime_pair_weight", "scan_range",
    "theorem_check", "type_by_canonical", "__version__",
]
