"""Normal hulls, commutator subgroups and the commutator identity audits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .group import (
    FiniteGroup,
    InternalConsistencyError,
    Subgroup,
    commutator_array,
    conjugation_array,
    generate_closure,
    normality_witness,
    product_set,
    whole_group,
)
from .verdict import Verdict, check

MINIMAL_NORMAL_CLOSURE = "minimal-normal-closure"
CONJUGATE_GENERATION = "conjugate-generation"
CONSTRUCTIONS = (MINIMAL_NORMAL_CLOSURE, CONJUGATE_GENERATION)

DEFAULT_IDENTITY_CAP = 64
DEFAULT_SAMPLES = 10**6


@dataclass(frozen=True)
class HullResult:
    hull: Subgroup
    construction: str
    iterations: int


def commutator_generators(G: FiniteGroup, H: Subgroup, K: Subgroup) -> np.ndarray:
    """Distinct values of [h,k] for h in H, k in K."""
    return np.unique(commutator_array(G, H.array[:, None], K.array[None, :]))


def commutator_subgroup(G: FiniteGroup, H: Subgroup, K: Subgroup) -> Subgroup:
    """(H,K): the subgroup generated by all [h,k] with h in H, k in K."""
    return generate_closure(G, commutator_generators(G, H, K))


def normal_hull(G: FiniteGroup, H: Subgroup,
                construction: str = MINIMAL_NORMAL_CLOSURE) -> HullResult:
    """Smallest normal subgroup of G containing H.

    ``minimal-normal-closure`` grows H until it is closed under products and
    conjugation; only newly found elements get conjugated, and only by a
    generating set of G.  ``conjugate-generation`` takes the subgroup
    generated by every conjugate g*H*g^-1 in one pass.
    """
    if construction == CONJUGATE_GENERATION:
        conj = conjugation_array(G, np.arange(G.order)[:, None], H.array[None, :])
        return HullResult(generate_closure(G, np.unique(conj)), construction, 1)
    if construction != MINIMAL_NORMAL_CLOSURE:
        raise ValueError(f"unknown hull construction {construction!r}")

    gens = np.array(G.generators, dtype=np.intp)
    current = generate_closure(G, H.witness_generators())
    seeds = list(current.generators)
    frontier = current.array
    iterations = 0
    while True:
        iterations += 1
        if gens.size == 0:
            break
        conj = np.unique(conjugation_array(G, gens[:, None], frontier[None, :]))
        fresh = conj[~current.mask[conj]]
        if fresh.size == 0:
            break
        seeds.extend(fresh.tolist())
        grown = generate_closure(G, seeds)
        frontier = grown.array[~current.mask[grown.array]]
        current = grown
    hull = Subgroup(G, current.elements, tuple(sorted(set(H.witness_generators()))))
    witness = normality_witness(hull)
    if witness is not None:
        raise InternalConsistencyError("normal closure iteration ended on a non-normal set", witness)
    return HullResult(hull, construction, iterations)


def _first_difference(a: Subgroup | np.ndarray, b: Subgroup | np.ndarray) -> int | None:
    sa = set(np.asarray(getattr(a, "elements", a)).tolist())
    sb = set(np.asarray(getattr(b, "elements", b)).tolist())
    diff = sorted(sa ^ sb)
    return diff[0] if diff else None


def hull_decomposition_audit(G: FiniteGroup, H: Subgroup) -> Verdict:
    """Check that H*(G,H) is the normal hull of H, under both constructions."""
    C = commutator_subgroup(G, whole_group(G), H)
    normal_w = normality_witness(C)
    prod = product_set(H, C)
    pmask = np.zeros(G.order, dtype=bool)
    pmask[prod] = True
    closed = bool(pmask[G.table[np.ix_(prod, prod)]].all())
    hull_a = normal_hull(G, H, MINIMAL_NORMAL_CLOSURE).hull
    hull_b = normal_hull(G, H, CONJUGATE_GENERATION).hull
    eq_a = np.array_equal(prod, hull_a.array)
    eq_b = np.array_equal(prod, hull_b.array)
    agree = hull_a == hull_b
    data = {
        "hull_order": hull_a.order,
        "commutator_order": C.order,
        "product_set_size": int(prod.size),
        "commutator_normal": normal_w is None,
        "product_set_closed": closed,
        "constructions_agree": agree,
    }
    ok = normal_w is None and closed and eq_a and eq_b and agree
    witness = None
    if not ok:
        if normal_w is not None:
            witness = {"non_normal_conjugation": list(normal_w)}
        elif not agree:
            witness = {"element": _first_difference(hull_a, hull_b), "between": "constructions"}
        else:
            other = hull_a if not eq_a else hull_b
            witness = {"element": _first_difference(prod, other), "between": "H*(G,H) and hull"}
    return check("hull-decomposition", ok, data, witness)


def conjugation_identity_audits(G: FiniteGroup, cap: int = DEFAULT_IDENTITY_CAP,
                                samples: int = DEFAULT_SAMPLES, seed: int = 0) -> Verdict:
    """Elementwise commutator identities over triples (c, g, h).

    (1) c[g,h]c^-1 = [cg,h][h,c]
    (2) [g, chc^-1] = c[c^-1 g c, h]c^-1
    (3) ghg^-1 = [g,h]h

    Exhaustive when the order is at most ``cap``, otherwise ``samples``
    seeded uniform triples.  The variant ghg^-1 = [g,h]h^-1 is
    evaluated as an informational flag only.
    """
    t, inv = G.table, G.inverse
    n = G.order
    if n <= cap:
        mode = "exhaustive"
        g = np.arange(n)[:, None]
        h = np.arange(n)[None, :]
        batches = ((np.full((1, 1), c, dtype=np.intp), g, h) for c in range(n))
        count = n**3
    else:
        mode = "sampled"
        rng = np.random.default_rng(seed)
        cs, gs, hs = (rng.integers(0, n, size=samples) for _ in range(3))
        batches = iter([(cs, gs, hs)])
        count = samples

    names = ("c[g,h]c^-1 = [cg,h][h,c]", "[g,chc^-1] = c[c^-1gc,h]c^-1", "ghg^-1 = [g,h]h")
    variant_holds = True
    variant_witness = None
    for c, g, h in batches:
        gh = commutator_array(G, g, h)
        lhs1 = conjugation_array(G, c, gh)
        rhs1 = t[commutator_array(G, t[c, g], h), commutator_array(G, h, c)]
        lhs2 = commutator_array(G, g, conjugation_array(G, c, h))
        rhs2 = conjugation_array(G, c, commutator_array(G, conjugation_array(G, inv[c], g), h))
        lhs3 = conjugation_array(G, g, h)
        rhs3 = t[gh, h]
        for k, (lhs, rhs) in enumerate(((lhs1, rhs1), (lhs2, rhs2), (lhs3, rhs3))):
            lhs, rhs = np.broadcast_arrays(lhs, rhs)
            bad = lhs != rhs
            if bad.any():
                idx = tuple(np.argwhere(bad)[0])
                cc, gg, hh = (int(np.broadcast_to(a, bad.shape)[idx]) for a in (c, g, h))
                return check("conjugation-identities", False,
                             {"mode": mode, "triples": count},
                             {"identity": names[k], "c": cc, "g": gg, "h": hh})
        if variant_holds:
            lhs3, variant = np.broadcast_arrays(lhs3, t[gh, inv[h]])
            bad = lhs3 != variant
            if bad.any():
                variant_holds = False
                idx = tuple(np.argwhere(bad)[0])
                gg, hh = (int(np.broadcast_to(a, bad.shape)[idx]) for a in (g, h))
                variant_witness = {"g": gg, "h": hh}
    data = {"mode": mode, "triples": count,
            "inverse_variant_holds": variant_holds}
    if variant_witness is not None:
        data["inverse_variant_witness"] = variant_witness
    return check("conjugation-identities", True, data)


def inner_invariance_audit(G: FiniteGroup, H: Subgroup) -> Verdict:
    """(G, cHc^-1) = (G, H) for every c in G."""
    full = whole_group(G)
    base = commutator_subgroup(G, full, H)
    cache: dict[tuple[int, ...], Subgroup] = {}
    for c in range(G.order):
        conj = tuple(np.unique(conjugation_array(G, c, H.array)).tolist())
        if conj not in cache:
            cache[conj] = commutator_subgroup(G, full, Subgroup(G, conj, ()))
        if cache[conj] != base:
            return check("inner-invariance", False,
                         {"commutator_order": base.order},
                         {"conjugator": c,
                          "element": _first_difference(cache[conj], base)})
    return check("inner-invariance", True,
                 {"commutator_order": base.order, "conjugators": G.order,
                  "distinct_conjugates": len(cache)})


def commutator_normality_audit(G: FiniteGroup, H: Subgroup) -> Verdict:
    C = commutator_subgroup(G, whole_group(G), H)
    w = normality_witness(C)
    return check("commutator-normal", w is None, {"commutator_order": C.order},
                 None if w is None else {"g": w[0], "n": w[1]})
