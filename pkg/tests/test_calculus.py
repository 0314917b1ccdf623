import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import el, sub
from hullkit.calculus import (
    CONJUGATE_GENERATION,
    MINIMAL_NORMAL_CLOSURE,
    commutator_normality_audit,
    commutator_subgroup,
    conjugation_identity_audits,
    hull_decomposition_audit,
    inner_invariance_audit,
    normal_hull,
)
from hullkit.families import parse_family
from hullkit.group import conjugate_subgroup, generate_closure, trivial_subgroup, whole_group
from hullkit.subgroups import all_subgroups


def test_commutator_subgroup_examples(S3, S4):
    full = whole_group(S4)
    A4 = commutator_subgroup(S4, full, full)
    assert A4.order == 12
    assert A4 == sub(S4, "(1 2 3)", "(2 3 4)")
    assert set(A4.elements) == oracles.commutator_subgroup(S4, range(24), range(24))
    assert commutator_subgroup(S4, full, trivial_subgroup(S4)).order == 1
    A3 = sub(S3, "(1 2 3)")
    C = commutator_subgroup(S3, A3, whole_group(S3))
    assert C == A3
    assert set(C.elements) == oracles.commutator_subgroup(S3, A3.elements, range(6))


def test_hull_examples(S4):
    T = sub(S4, "(1 2)")
    for construction in (MINIMAL_NORMAL_CLOSURE, CONJUGATE_GENERATION):
        assert normal_hull(S4, T, construction).hull.order == 24
        V = normal_hull(S4, sub(S4, "(1 2)(3 4)"), construction).hull
        assert V.order == 4 and V == sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    assert set(V.elements) == oracles.normal_hull(S4, sub(S4, "(1 2)(3 4)").elements)
    A4 = sub(S4, "(1 2 3)", "(2 3 4)")
    assert normal_hull(S4, A4).hull == A4


def test_hull_construction_name_validated(S3):
    with pytest.raises(ValueError):
        normal_hull(S3, whole_group(S3), "something-else")


def test_hull_decomposition_examples(S4):
    v = hull_decomposition_audit(S4, sub(S4, "(1 2)"))
    assert v.passed and v.data["hull_order"] == 24 and v.data["commutator_order"] == 12
    assert hull_decomposition_audit(S4, whole_group(S4)).data["hull_order"] == 24
    v = hull_decomposition_audit(S4, sub(S4, "(1 2)(3 4)", "(1 3)(2 4)"))
    assert v.passed and v.data["hull_order"] == 4


def test_conjugation_identities_small(S3, D4, C6):
    v = conjugation_identity_audits(S3)
    assert v.passed and v.data["triples"] == 216 and v.data["mode"] == "exhaustive"
    # the h^-1 variant is not an identity
    assert v.data["inverse_variant_holds"] is False
    v = conjugation_identity_audits(D4)
    assert v.passed and v.data["triples"] == 512
    assert conjugation_identity_audits(C6).passed


def test_conjugation_identities_sampled():
    G = parse_family("symmetric:5")
    v = conjugation_identity_audits(G, samples=20000, seed=3)
    assert v.passed and v.data["mode"] == "sampled" and v.data["triples"] == 20000
    assert conjugation_identity_audits(G, samples=20000, seed=3).data == v.data


def test_inner_invariance_example(S3):
    T = sub(S3, "(1 2)")
    v = inner_invariance_audit(S3, T)
    assert v.passed and v.data["commutator_order"] == 3
    for c in range(6):
        conj = {oracles.conj(S3, c, h) for h in T.elements}
        assert oracles.commutator_subgroup(S3, range(6), conj) == set(sub(S3, "(1 2 3)").elements)


@pytest.mark.parametrize("spec", ["symmetric:4", "dihedral:6", "quaternion8", "cyclic:3*symmetric:3",
                                  "alternating:4"])
def test_hull_and_commutators_match_oracles(spec):
    G = parse_family(spec)
    full = whole_group(G)
    for H in all_subgroups(G):
        hull = set(oracles.normal_hull(G, H.elements))
        a = normal_hull(G, H, MINIMAL_NORMAL_CLOSURE)
        b = normal_hull(G, H, CONJUGATE_GENERATION)
        assert set(a.hull.elements) == hull == set(b.hull.elements)
        C = commutator_subgroup(G, full, H)
        assert set(C.elements) == oracles.commutator_subgroup(G, range(G.order), H.elements)
        assert commutator_normality_audit(G, H).passed
        assert hull_decomposition_audit(G, H).passed
        assert inner_invariance_audit(G, H).passed


def test_hull_is_minimal(S4):
    # every normal subgroup containing H contains the hull
    subs = all_subgroups(S4)
    normals = [N for N in subs if N.is_normal()]
    for H in subs:
        hull = normal_hull(S4, H).hull
        assert H <= hull and hull.is_normal()
        for N in normals:
            if H <= N:
                assert hull <= N


def test_abelian_hull_is_identity_map(C6):
    for H in all_subgroups(C6):
        assert normal_hull(C6, H).hull == H
        assert commutator_subgroup(C6, whole_group(C6), H).order == 1


FAMILIES = ["symmetric:3", "symmetric:4", "dihedral:5", "quaternion8", "alternating:4",
            "cyclic:2*symmetric:3", "dihedral:4"]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(FAMILIES), st.data())
def test_identities_on_random_triples(spec, data):
    G = parse_family(spec)
    c, g, h = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    comm = lambda a, b: oracles.comm(G, a, b)  # noqa: E731
    conj = lambda a, b: oracles.conj(G, a, b)  # noqa: E731
    mul = lambda a, b: oracles.mul(G, a, b)  # noqa: E731
    inv = lambda a: oracles.inv(G, a)  # noqa: E731
    assert conj(c, comm(g, h)) == mul(comm(mul(c, g), h), comm(h, c))
    assert comm(g, conj(c, h)) == conj(c, comm(conj(inv(c), g), h))
    assert conj(g, h) == mul(comm(g, h), h)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(FAMILIES), st.lists(st.integers(0, 10**6), max_size=2), st.integers(0, 10**6))
def test_commutator_invariant_under_inner_automorphisms(spec, raw, c):
    G = parse_family(spec)
    H = generate_closure(G, [x % G.order for x in raw])
    full = whole_group(G)
    conj = conjugate_subgroup(H, c % G.order)
    assert commutator_subgroup(G, full, conj) == commutator_subgroup(G, full, H)
    assert normal_hull(G, conj).hull == normal_hull(G, H).hull


def test_commutator_symmetry(S4):
    subs = all_subgroups(S4)
    for A, B in itertools.combinations(subs[::3], 2):
        assert commutator_subgroup(S4, A, B) == commutator_subgroup(S4, B, A)


def test_transposition_commutator_value(S3):
    g, h = el(S3, "(1 2)"), el(S3, "(1 3)")
    assert S3.labels[oracles.comm(S3, g, h)] == "(1 3 2)"
