import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from helpers import sub
from hullkit.calculus import normal_hull
from hullkit.families import parse_family
from hullkit.group import NotNormal, whole_group
from hullkit.subgroups import all_subgroups
from hullkit.theorem import (
    STEPS,
    ComponentedGroup,
    ProofTrace,
    StepRecord,
    TraceIncomplete,
    corollary_audit,
    run_proof_trace,
    width_bound_audit,
)


def test_s4_a4_transposition(S4):
    A4 = sub(S4, "(1 2 3)", "(2 3 4)")
    H = sub(S4, "(1 2)")
    trace = run_proof_trace(ComponentedGroup(S4, A4), H)
    assert [s.name for s in trace.steps] == list(STEPS)
    assert trace.passed
    assert trace.final.order == 24
    nums = trace.numbers()
    assert nums["width"] <= nums["bound"] == nums["n1"] + nums["n2"] + nums["d"]
    v = width_bound_audit(trace)
    assert v.passed and v.data["slack"] == nums["bound"] - nums["width"]
    assert corollary_audit(ComponentedGroup(S4, A4), H).passed


def test_s4_v4_double_transposition(S4):
    V4 = sub(S4, "(1 2)(3 4)", "(1 3)(2 4)")
    H = sub(S4, "(1 2)(3 4)")
    trace = run_proof_trace(ComponentedGroup(S4, V4), H)
    assert trace.passed and trace.final.order == 4 and trace.final == V4


def test_s4_full_component(S4):
    full = whole_group(S4)
    trace = run_proof_trace(ComponentedGroup(S4, full), full)
    assert trace.passed
    assert len(trace.step("s1").subgroups["(H,N)"]) == 12
    assert trace.final == full


def test_s3_a3_slack(S3):
    A3 = sub(S3, "(1 2 3)")
    trace = run_proof_trace(ComponentedGroup(S3, A3), sub(S3, "(1 2)"))
    assert trace.passed
    v = width_bound_audit(trace)
    assert v.passed and v.data["slack"] >= 0


def test_abelian_trace(C6):
    for N in all_subgroups(C6):
        for H in all_subgroups(C6):
            trace = run_proof_trace(ComponentedGroup(C6, N), H)
            assert trace.passed and trace.final == H
            s7 = trace.step("s7").data
            assert s7["width"] == s7["n1"] == s7["n2"] == 0
            assert corollary_audit(ComponentedGroup(C6, N), H).passed


def test_component_must_be_normal(S3):
    with pytest.raises(NotNormal):
        ComponentedGroup(S3, sub(S3, "(1 2)"))


def test_width_bound_needs_complete_trace(S3):
    trace = ProofTrace(S3, whole_group(S3), whole_group(S3))
    with pytest.raises(TraceIncomplete, match="dependent step skipped"):
        width_bound_audit(trace)
    trace.steps.append(StepRecord("s7", "width", "skipped"))
    with pytest.raises(TraceIncomplete):
        width_bound_audit(trace)


def test_failed_step_skips_dependents(S4, monkeypatch):
    import hullkit.theorem as theorem

    def broken(*args, **kwargs):
        return False, {"mode": "exhaustive", "quadruples": 0}, {"g0": 0, "g1": 0, "h": 0, "l": 0}

    monkeypatch.setattr(theorem, "_quadruple_identity", broken)
    trace = run_proof_trace(ComponentedGroup(S4, whole_group(S4)), sub(S4, "(1 2)"))
    status = {s.name: s.verdict for s in trace.steps}
    assert status["s1"] == "pass" and status["s2"] == "fail"
    assert status["s3"] == status["s4"] == status["s5"] == status["s7"] == "skipped"
    assert status["s6"] == "pass"
    assert not trace.passed


def test_quadruple_scan_sampled_when_large(S4):
    full = whole_group(S4)
    trace = run_proof_trace(ComponentedGroup(S4, full), full, quadruple_budget=100,
                            quadruple_samples=5000, seed=7)
    s2 = trace.step("s2").data
    assert s2["mode"] == "sampled" and s2["quadruples"] == 5000
    assert trace.passed


@pytest.mark.parametrize("spec", ["symmetric:4", "dihedral:4", "quaternion8", "dihedral:6",
                                  "cyclic:2*symmetric:3"])
def test_every_triple_matches_hull_oracle(spec):
    G = parse_family(spec)
    subs = all_subgroups(G)
    for N in (S for S in subs if S.is_normal()):
        cg = ComponentedGroup(G, N)
        for H in subs:
            trace = run_proof_trace(cg, H)
            assert trace.passed, [(s.name, s.verdict, s.witness) for s in trace.steps]
            assert set(trace.final.elements) == oracles.normal_hull(G, H.elements)
            assert trace.final == normal_hull(G, H).hull
            assert width_bound_audit(trace).passed
            assert corollary_audit(cg, H).passed
            # H1 = H (N,H) sits between H and its hull
            assert H <= trace.H1 <= trace.final


def test_trace_serialization(S4):
    trace = run_proof_trace(ComponentedGroup(S4, whole_group(S4)), sub(S4, "(1 2)"))
    full = trace.to_dict()
    short = trace.to_dict(element_sets=False)
    assert [s["step"] for s in full["steps"]] == list(STEPS)
    assert full["steps"][0]["subgroups"]["H1"] == list(trace.H1.elements)
    assert short["steps"][0]["subgroup_orders"]["H1"] == trace.H1.order


def test_corollary_by_oracle(S4):
    A4 = sub(S4, "(1 2 3)", "(2 3 4)")
    H = sub(S4, "(1 2)")
    NH = oracles.commutator_subgroup(S4, A4.elements, H.elements)
    enlarged = oracles.closure(S4, set(H.elements) | NH)
    left = oracles.commutator_subgroup(S4, H.elements, range(24))
    right = oracles.commutator_subgroup(S4, enlarged, range(24))
    assert left == right
    assert corollary_audit(ComponentedGroup(S4, A4), H).passed


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["symmetric:3", "dihedral:5", "alternating:4", "cyclic:3*symmetric:3",
                        "quaternion8"]), st.integers(0, 10**6), st.integers(0, 10**6))
def test_random_triples(spec, ni, hi):
    G = parse_family(spec)
    subs = all_subgroups(G)
    normals = [S for S in subs if S.is_normal()]
    N, H = normals[ni % len(normals)], subs[hi % len(subs)]
    trace = run_proof_trace(ComponentedGroup(G, N), H)
    assert trace.passed
    assert trace.final == normal_hull(G, H).hull
