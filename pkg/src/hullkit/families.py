"""Standard families of small groups, all built as permutation groups."""

from __future__ import annotations

from .group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    GroupTooLarge,
    from_permutation_generators,
)

FAMILIES = ("cyclic", "dihedral", "symmetric", "alternating", "quaternion8", "direct-product")


def _cycle(points: list[int], degree: int) -> tuple[int, ...]:
    p = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def _family_generators(name: str, m: int) -> tuple[int, list[tuple[int, ...]], int]:
    """Return (degree, generators, expected order)."""
    if name == "cyclic":
        if m < 1:
            raise GroupError("cyclic group needs a positive parameter")
        return m, [_cycle(list(range(m)), m)], m
    if name == "dihedral":
        # order 2m; m = 1, 2 need their own small actions
        if m < 1:
            raise GroupError("dihedral group needs a positive parameter")
        if m == 1:
            return 2, [(1, 0)], 2
        if m == 2:
            return 4, [(1, 0, 2, 3), (0, 1, 3, 2)], 4
        rot = _cycle(list(range(m)), m)
        ref = tuple((-i) % m for i in range(m))
        return m, [rot, ref], 2 * m
    if name == "symmetric":
        if m < 1:
            raise GroupError("symmetric group needs a positive parameter")
        gens = []
        if m >= 2:
            gens = [_cycle([0, 1], m), _cycle(list(range(m)), m)]
        order = 1
        for i in range(2, m + 1):
            order *= i
        return m, gens, order
    if name == "alternating":
        if m < 1:
            raise GroupError("alternating group needs a positive parameter")
        gens = [_cycle([0, 1, k], m) for k in range(2, m)]
        order = 1
        for i in range(3, m + 1):
            order *= i
        return m, gens, order
    if name == "quaternion8":
        # left-regular action of Q8 on {1,i,j,k,-1,-i,-j,-k}
        i_act = (1, 4, 3, 6, 5, 0, 7, 2)
        j_act = (2, 7, 4, 1, 6, 3, 0, 5)
        return 8, [i_act, j_act], 8
    raise GroupError(f"unknown family {name!r}")


def build_family(name: str, parameter: int = 0, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    degree, gens, order = _family_generators(name, parameter)
    if order > max_order:
        raise GroupTooLarge(max_order)
    label = name if name == "quaternion8" else f"{name}:{parameter}"
    G = from_permutation_generators(degree, gens, max_order=max_order, name=label)
    if G.order != order:
        raise AssertionError(f"{label} has order {G.order}, expected {order}")
    return G


def direct_product(A: FiniteGroup, B: FiniteGroup, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """A x B acting on the disjoint union of their points."""
    if A.perms is None or B.perms is None:
        raise GroupError("direct products are built from permutation groups")
    if A.order * B.order > max_order:
        raise GroupTooLarge(max_order)
    da, db = len(A.perms[0]), len(B.perms[0])
    gens = [tuple(p) + tuple(range(da, da + db)) for p in (A.perms[i] for i in A.generators)]
    gens += [tuple(range(da)) + tuple(da + x for x in q) for q in (B.perms[i] for i in B.generators)]
    G = from_permutation_generators(da + db, gens, max_order=max_order,
                                    name=f"{A.name}*{B.name}")
    assert G.order == A.order * B.order
    return G


def parse_family(spec: str, max_order: int = DEFAULT_ORDER_CAP) -> FiniteGroup:
    """Build from ``name:param`` terms joined by ``*`` for direct products.

    Examples: ``symmetric:4``, ``quaternion8``, ``symmetric:3*cyclic:2``.
    """
    factors = []
    for term in spec.split("*"):
        parts = term.strip().split(":")
        name = parts[0]
        if name == "quaternion8" and len(parts) == 1:
            factors.append(build_family(name, 0, max_order))
            continue
        if len(parts) != 2:
            raise GroupError(f"family term {term!r} must look like name:parameter")
        try:
            param = int(parts[1])
        except ValueError:
            raise GroupError(f"family parameter in {term!r} is not an integer") from None
        factors.append(build_family(name, param, max_order))
    G = factors[0]
    for F in factors[1:]:
        G = direct_product(G, F, max_order)
    return G
