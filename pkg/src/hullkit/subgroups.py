"""Subgroup enumeration by joining cyclic subgroups."""

from __future__ import annotations

from itertools import combinations

from .group import FiniteGroup, Subgroup, generate_closure, is_normal, trivial_subgroup


def _sort_key(S: Subgroup):
    return (S.order, S.elements)


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    seen: dict[tuple[int, ...], Subgroup] = {}
    for x in range(G.order):
        S = generate_closure(G, [x] if x else [])
        seen.setdefault(S.elements, S)
    return sorted(seen.values(), key=_sort_key)


def enumerate_subgroups(G: FiniteGroup, max_generators: int = 2) -> list[Subgroup]:
    """All subgroups generated by at most ``max_generators`` elements.

    Sorted by order, then by element ids; each carries a generating set of
    at most ``max_generators`` elements as its witness.
    """
    if max_generators < 1:
        raise ValueError("max_generators must be at least 1")
    cyclic = cyclic_subgroups(G)
    found: dict[tuple[int, ...], Subgroup] = {S.elements: S for S in cyclic}
    level = list(found.values())
    for _ in range(max_generators - 1):
        new_level = {}
        for S in level:
            for Z in cyclic:
                if Z <= S:
                    continue
                J = generate_closure(G, S.generators + Z.generators)
                if J.elements not in found and J.elements not in new_level:
                    new_level[J.elements] = J
        if not new_level:
            break
        found.update(new_level)
        level = list(new_level.values())
    return sorted(found.values(), key=_sort_key)


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, as the closure of joins of cyclic subgroups."""
    return enumerate_subgroups(G, max_generators=max(1, G.order.bit_length()))


def subgroups_by_small_subsets(G: FiniteGroup, size: int = 3) -> list[Subgroup]:
    """Closures of every element subset of at most ``size`` elements (brute force)."""
    found: dict[tuple[int, ...], Subgroup] = {(0,): trivial_subgroup(G)}
    for k in range(1, size + 1):
        for subset in combinations(range(1, G.order), k):
            S = generate_closure(G, subset)
            found.setdefault(S.elements, S)
    return sorted(found.values(), key=_sort_key)


def normal_subgroups(G: FiniteGroup, subgroups: list[Subgroup] | None = None) -> list[Subgroup]:
    if subgroups is None:
        subgroups = all_subgroups(G)
    return [S for S in subgroups if is_normal(S)]
