"""Exact verification of induction/restriction structure for finite groups:
rectified adjunctions, the Frobenius algebra of an inclusion, and Mackey and
Green functors built from it."""

from .errors import InputError, InvariantBreach, ResourceError
from .exactla import GF, QQ, Field, Matrix
from .groups import Group, Subgroup, parse_group_text
from .corpus import CORPUS, by_name, load_group

__version__ = "0.1.0"

__all__ = [
    "CORPUS", "GF", "QQ", "Field", "Group", "InputError", "InvariantBreach", "Matrix", "ResourceError",
    "Subgroup", "by_name", "load_group", "parse_group_text",
]
