"""Finite-group audits of normal hulls, commutator calculus and Schur-type width bounds."""

__version__ = "0.1.0"

from .group import FiniteGroup, Subgroup, from_permutation_generators, generate_closure  # noqa: E402
from .families import build_family, parse_family  # noqa: E402
from .calculus import commutator_subgroup, normal_hull  # noqa: E402

__all__ = [
    "FiniteGroup",
    "Subgroup",
    "__version__",
    "build_family",
    "commutator_subgroup",
    "from_permutation_generators",
    "generate_closure",
    "normal_hull",
    "parse_family",
]
