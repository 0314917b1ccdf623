import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from hullkit.corpus import corpus, corpus_specs
from hullkit.families import build_family, direct_product, parse_family
from hullkit.formats import dump_cayley, dump_permgroup, parse_group_file
from hullkit.group import FormatError, GroupAxiomError, GroupError, GroupTooLarge, check_axioms
from hullkit.subgroups import all_subgroups, enumerate_subgroups, subgroups_by_small_subsets


# -- formats -----------------------------------------------------------------

def test_permgroup_file():
    G = parse_group_file("format: permgroup v1\ndegree: 3\n(1 2)\n(1 2 3)\n")
    assert G.order == 6


def test_trivial_cayley():
    G = parse_group_file("format: cayley v1\norder: 1\n0\n")
    assert G.order == 1


def test_comments_and_blank_lines():
    text = "# a group\n\nformat: cayley v1\n# order next\norder: 2\n0 1\n\n1 0\n"
    assert parse_group_file(text).order == 2


def _nonassociative_table():
    # a Latin square with identity 0 and two-sided inverses that is not associative
    return np.array([[0, 1, 2, 3, 4],
                     [1, 0, 3, 4, 2],
                     [2, 4, 0, 1, 3],
                     [3, 2, 4, 0, 1],
                     [4, 3, 1, 2, 0]])


def _first_nonassociative(t):
    n = len(t)
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a, b], c] != t[a, t[b, c]]:
                    return a, b, c
    return None


def test_nonassociative_table_names_witness():
    t = _nonassociative_table()
    expected = _first_nonassociative(t)
    assert expected is not None
    text = "format: cayley v1\norder: 5\n" + "\n".join(" ".join(map(str, r)) for r in t) + "\n"
    with pytest.raises(GroupAxiomError) as exc:
        parse_group_file(text)
    err = exc.value
    assert err.axiom == "associativity"
    assert tuple(err.witness) == expected
    assert err.line == 3 + expected[0]
    assert str(err).startswith(f"line {err.line}:")
    assert str(expected) in str(err) or all(str(x) in str(err) for x in expected)


@pytest.mark.parametrize("text, line", [
    ("format: nonsense v1\n", 1),
    ("format: permgroup v1\ndegree: x\n", 2),
    ("format: permgroup v1\ndegree: 3\n(1 2)\n(1 4)\n", 4),
    ("format: permgroup v1\ndegree: 3\n(1 1 2)\n", 3),
    ("format: cayley v1\norder: 2\n0 1\n", 3),
    ("format: cayley v1\norder: 2\n0 1\n1\n", 4),
    ("format: cayley v1\norder: 2\n0 1\n1 7\n", 4),
    ("format: cayley v1\norder: 2\n1 0\n0 1\n", 3),
])
def test_malformed_files_are_line_precise(text, line):
    with pytest.raises(FormatError) as exc:
        parse_group_file(text)
    assert exc.value.line == line
    assert str(exc.value).startswith(f"line {line}: ")


def test_identity_failure_named():
    with pytest.raises(GroupAxiomError) as exc:
        parse_group_file("format: cayley v1\norder: 2\n1 0\n0 1\n")
    assert exc.value.axiom == "identity"


def test_cayley_order_cap():
    with pytest.raises(GroupTooLarge):
        parse_group_file("format: cayley v1\norder: 3\n0 1 2\n1 2 0\n2 0 1\n", max_order=2)


@pytest.mark.parametrize("spec", ["symmetric:4", "dihedral:5", "quaternion8", "cyclic:1",
                                  "alternating:4*cyclic:2"])
def test_cayley_round_trip(spec):
    G = parse_family(spec)
    H = parse_group_file(dump_cayley(G))
    assert np.array_equal(H.table, G.table)
    assert np.array_equal(H.inverse, G.inverse)


@pytest.mark.parametrize("spec", ["symmetric:4", "dihedral:6", "quaternion8"])
def test_permgroup_round_trip(spec):
    G = parse_family(spec)
    H = parse_group_file(dump_permgroup(G))
    assert set(H.perms) == set(G.perms)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(corpus_specs(24)))
def test_round_trip_property(spec):
    G = parse_family(spec)
    assert np.array_equal(parse_group_file(dump_cayley(G)).table, G.table)


# -- families ----------------------------------------------------------------

@pytest.mark.parametrize("name, param, order", [
    ("symmetric", 4, 24), ("dihedral", 4, 8), ("cyclic", 1, 1), ("alternating", 4, 12),
    ("alternating", 5, 60), ("dihedral", 1, 2), ("dihedral", 2, 4), ("quaternion8", 0, 8),
    ("symmetric", 1, 1), ("alternating", 2, 1),
])
def test_family_orders(name, param, order):
    G = build_family(name, param)
    assert G.order == order
    assert check_axioms(G.table) is None


def test_family_errors():
    with pytest.raises(GroupError, match="unknown family"):
        build_family("mystery", 3)
    with pytest.raises(GroupTooLarge):
        build_family("symmetric", 5, max_order=100)
    with pytest.raises(GroupError):
        parse_family("cyclic:x")


def test_quaternion_structure(Q8):
    orders = sorted(Q8.element_orders().tolist())
    assert orders == [1, 2, 4, 4, 4, 4, 4, 4]
    assert not Q8.is_abelian
    assert len(all_subgroups(Q8)) == 6


def test_direct_product():
    A, B = build_family("symmetric", 3), build_family("cyclic", 2)
    P = direct_product(A, B)
    assert P.order == 12 and check_axioms(P.table) is None
    assert parse_family("symmetric:3*cyclic:2").order == 12
    with pytest.raises(GroupTooLarge):
        parse_family("symmetric:4*symmetric:3", max_order=100)


# -- subgroup enumeration ----------------------------------------------------

def test_enumeration_examples(S3):
    subs = enumerate_subgroups(S3, 2)
    assert sorted(S.order for S in subs) == [1, 2, 2, 2, 3, 6]
    assert len(enumerate_subgroups(parse_family("cyclic:1"), 2)) == 1
    V4 = parse_family("dihedral:2")
    assert len(enumerate_subgroups(V4, 2)) == 5
    with pytest.raises(ValueError):
        enumerate_subgroups(S3, 0)


def test_enumeration_by_brute_force_closure(S3):
    # brute force over every subset of S3
    from itertools import combinations

    found = set()
    for k in range(7):
        for subset in combinations(range(6), k):
            found.add(frozenset(oracles.closure(S3, subset)))
    assert {frozenset(S.elements) for S in enumerate_subgroups(S3, 2)} == found


def test_enumeration_matches_small_subsets(small_corpus):
    for cg in small_corpus:
        G = cg.group
        brute = {S.elements for S in subgroups_by_small_subsets(G, 3)}
        assert {S.elements for S in cg.subgroups} == brute, cg.spec
        two = {S.elements for S in enumerate_subgroups(G, 2)}
        assert two <= brute
        assert (0,) in two and tuple(range(G.order)) in brute


# corpus groups where some subgroup needs three generators (full enumeration oracle)
NOT_TWO_GENERATED = {
    "symmetric:3*symmetric:3": (59, 60),
    "cyclic:2*quaternion8": (18, 19),
    "quaternion8*symmetric:3": (60, 64),
}


def test_two_generator_coverage_on_corpus():
    gaps = {}
    for cg in corpus(48):
        two = {S.elements for S in enumerate_subgroups(cg.group, 2)}
        full = {S.elements for S in cg.subgroups}
        assert two <= full
        if two != full:
            gaps[cg.spec] = (len(two), len(full))
    assert gaps == NOT_TWO_GENERATED


def test_c2_cubed_needs_three_generators():
    G = parse_family("cyclic:2*cyclic:2*cyclic:2")
    assert len(enumerate_subgroups(G, 2)) < len(all_subgroups(G)) == 16


def test_corpus_shape():
    specs = corpus_specs(48)
    assert len(specs) == len(set(specs))
    groups = corpus(48)
    assert all(cg.group.order <= 48 for cg in groups)
    assert {"symmetric:4", "quaternion8", "cyclic:1", "dihedral:24"} <= set(specs)
    assert [cg.spec for cg in groups] == specs
    assert all(S.is_normal() for cg in groups[:5] for S in cg.normal_subgroups)
