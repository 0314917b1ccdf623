"""The audit corpus: family groups, selected direct products and their subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .families import parse_family
from .group import FiniteGroup, Subgroup, is_normal
from .subgroups import all_subgroups, enumerate_subgroups

DEFAULT_CORPUS_ORDER = 48

PRODUCTS = (
    "cyclic:2*cyclic:2",
    "cyclic:2*cyclic:4",
    "cyclic:3*cyclic:3",
    "cyclic:2*cyclic:6",
    "cyclic:4*cyclic:4",
    "cyclic:2*symmetric:3",
    "cyclic:3*symmetric:3",
    "cyclic:4*symmetric:3",
    "cyclic:5*symmetric:3",
    "symmetric:3*symmetric:3",
    "cyclic:2*quaternion8",
    "cyclic:3*quaternion8",
    "cyclic:3*dihedral:4",
    "cyclic:3*alternating:4",
    "quaternion8*symmetric:3",
)

# only used when the order cap is raised above 48
LARGE_PRODUCTS = (
    "dihedral:5*symmetric:3",
    "cyclic:5*alternating:4",
    "dihedral:4*dihedral:4",
    "symmetric:3*alternating:4",
    "cyclic:3*symmetric:4",
    "quaternion8*alternating:4",
    "alternating:4*alternating:4",
    "symmetric:3*symmetric:4",
)


def family_specs(max_order: int = DEFAULT_CORPUS_ORDER) -> list[str]:
    specs = [f"cyclic:{n}" for n in range(1, max_order + 1)]
    specs += [f"dihedral:{n}" for n in range(1, max_order // 2 + 1)]
    fact = 1
    for n in range(1, 9):
        fact *= n
        if fact <= max_order:
            specs.append(f"symmetric:{n}")
        if max(1, fact // 2) <= max_order:
            specs.append(f"alternating:{n}")
    if max_order >= 8:
        specs.append("quaternion8")
    return specs


def _product_order(spec: str) -> int:
    order = 1
    for term in spec.split("*"):
        name, _, param = term.partition(":")
        m = int(param) if param else 0
        order *= {
            "cyclic": lambda: m,
            "dihedral": lambda: 2 * m,
            "quaternion8": lambda: 8,
            "symmetric": lambda: _fact(m),
            "alternating": lambda: max(1, _fact(m) // 2),
        }[name]()
    return order


def _fact(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def corpus_specs(max_order: int = DEFAULT_CORPUS_ORDER) -> list[str]:
    specs = family_specs(max_order)
    specs += [p for p in PRODUCTS + LARGE_PRODUCTS if _product_order(p) <= max_order]
    return specs


@dataclass(eq=False)
class CorpusGroup:
    """A corpus group with its subgroups.

    By default every subgroup is listed, which includes all 2-generated
    ones; a few corpus groups (S3xS3, C2xQ8, Q8xS3) have subgroups that
    need three generators.  Set ``max_generators`` to restrict the list.
    """

    spec: str
    group: FiniteGroup
    max_generators: int | None = None

    @cached_property
    def subgroups(self) -> list[Subgroup]:
        if self.max_generators is None:
            return all_subgroups(self.group)
        return enumerate_subgroups(self.group, self.max_generators)

    @cached_property
    def normal_subgroups(self) -> list[Subgroup]:
        return [S for S in self.subgroups if is_normal(S)]


def corpus(max_order: int = DEFAULT_CORPUS_ORDER) -> list[CorpusGroup]:
    """Corpus groups in a fixed order: families first, then products."""
    return [CorpusGroup(spec, parse_family(spec, max_order=max(max_order, 1)))
            for spec in corpus_specs(max_order)]
