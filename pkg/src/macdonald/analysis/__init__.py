"""Structure of finite groups by explicit enumeration, and the checks built on it."""

from .checks import (
    Check,
    CheckList,
    axiom_checks,
    decomposition_checks,
    generators_ABC,
    negative_representative,
    order_checks,
    relation_pack,
    structure_checks,
    theta_checks,
)
from .expected import ExpectedStructure, expected_structure, snf_invariants
from .groups import *  # noqa: F401,F403
from .groups import __all__ as _groups_all

__all__ = [
    "Check",
    "CheckList",
    "axiom_checks",
    "decomposition_checks",
    "generators_ABC",
    "negative_representative",
    "order_checks",
    "relation_pack",
    "structure_checks",
    "theta_checks",
    "ExpectedStructure",
    "expected_structure",
    "snf_invariants",
    *_groups_all,
]
