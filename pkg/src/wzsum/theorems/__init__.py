"""Catalog of executable statements and the runner that evaluates them."""

from . import checks  # noqa: F401  (registers the catalog)
from .core import (
    CATALOG,
    HARNESS_BUDGET,
    CheckContext,
    CheckReport,
    CheckSpec,
    CostClass,
    Part,
    UnknownCheck,
    Verdict,
    list_checks,
    run_checks,
    run_one,
    select,
)

__all__ = [
    "CATALOG", "HARNESS_BUDGET", "CheckContext", "CheckReport", "CheckSpec", "CostClass", "Part",
    "UnknownCheck", "Verdict", "list_checks", "run_checks", "run_one", "select",
]
