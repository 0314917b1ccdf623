"""Step-by-step replay of the hull theorem on a finite group.

A distinguished normal subgroup N stands in for the identity component.
Each step computes its subgroups, checks its claim exhaustively (or on a
seeded sample for the four-variable identity) and records the numbers the
final width bound n1 + n2 + d is built from.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .calculus import commutator_generators, commutator_subgroup, normal_hull
from .group import (
    FiniteGroup,
    GroupError,
    InternalConsistencyError,
    NotNormal,
    Subgroup,
    commutator_array,
    conjugation_array,
    intersection,
    normality_witness,
    product_set,
    quotient,
    subgroup_from_elements,
    whole_group,
)
from .schur import schur_context, width
from .verdict import FAIL, PASS, SKIPPED, Verdict, check

QUADRUPLE_BUDGET = 2**20
QUADRUPLE_SAMPLES = 10**6

STEPS = ("s1", "s2", "s3", "s4", "s5", "s6", "s7")
DEPENDS = {
    "s1": (),
    "s2": ("s1",),
    "s3": ("s2",),
    "s4": ("s3",),
    "s5": ("s4",),
    "s6": ("s1",),
    "s7": ("s3", "s5"),
}


class TraceIncomplete(GroupError):
    def __init__(self):
        super().__init__("dependent step skipped")


@dataclass(frozen=True, eq=False)
class ComponentedGroup:
    G: FiniteGroup
    N: Subgroup

    def __post_init__(self):
        w = normality_witness(self.N)
        if w is not None:
            raise NotNormal(*w)

    @property
    def component_count(self) -> int:
        return self.G.order // self.N.order


@dataclass
class StepRecord:
    name: str
    title: str
    verdict: str
    subgroups: dict[str, tuple[int, ...]] = field(default_factory=dict)
    data: dict[str, Any] = field(default_factory=dict)
    witness: Any = None

    def to_dict(self, element_sets: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"step": self.name, "title": self.title, "verdict": self.verdict}
        if element_sets:
            out["subgroups"] = {k: list(v) for k, v in self.subgroups.items()}
        else:
            out["subgroup_orders"] = {k: len(v) for k, v in self.subgroups.items()}
        if self.data:
            out["data"] = self.data
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class ProofTrace:
    G: FiniteGroup
    N: Subgroup
    H: Subgroup
    steps: list[StepRecord] = field(default_factory=list)
    H1: Subgroup | None = None
    final: Subgroup | None = None

    def step(self, name: str) -> StepRecord:
        for s in self.steps:
            if s.name == name:
                return s
        raise KeyError(name)

    @property
    def passed(self) -> bool:
        return all(s.verdict == PASS for s in self.steps)

    def numbers(self) -> dict[str, Any]:
        out: dict[str, Any] = {}
        for s in self.steps:
            for key in ("n1", "n2", "d", "bound", "width", "slack"):
                if key in s.data:
                    out[key] = s.data[key]
        return out

    def to_dict(self, element_sets: bool = True) -> dict[str, Any]:
        return {"steps": [s.to_dict(element_sets) for s in self.steps]}


def _elements(S: Subgroup | np.ndarray) -> tuple[int, ...]:
    if isinstance(S, Subgroup):
        return S.elements
    return tuple(np.asarray(S).tolist())


def _first_outside(inner: np.ndarray, outer_mask: np.ndarray) -> int | None:
    bad = inner[~outer_mask[inner]]
    return int(bad[0]) if bad.size else None


def _quadruple_identity(G: FiniteGroup, N: Subgroup, H1: Subgroup, seed: int,
                        budget: int, samples: int) -> tuple[bool, dict, Any]:
    """g0 h [g1,l] g0^-1 = (g0 h g0^-1) [g0 g1, l] [l, g0] over N x N x H1 x H1."""
    t, inv = G.table, G.inverse
    total = N.order**2 * H1.order**2
    if total <= budget:
        mode = "exhaustive"
        # axes: g0, h, g1, l; two-variable pieces are computed once and broadcast
        g0 = N.array[:, None, None, None]
        h = H1.array[None, :, None, None]
        g1 = N.array[None, None, :, None]
        l = H1.array[None, None, None, :]
        inner = t[h, commutator_array(G, g1, l)]
        lhs = t[t[g0, inner], inv[g0]]
        rhs = t[t[conjugation_array(G, g0, h), commutator_array(G, t[g0, g1], l)],
                commutator_array(G, l, g0)]
    else:
        mode = "sampled"
        rng = np.random.default_rng(seed)
        g0 = N.array[rng.integers(0, N.order, size=samples)]
        g1 = N.array[rng.integers(0, N.order, size=samples)]
        h = H1.array[rng.integers(0, H1.order, size=samples)]
        l = H1.array[rng.integers(0, H1.order, size=samples)]
        lhs = conjugation_array(G, g0, t[h, commutator_array(G, g1, l)])
        rhs = t[t[conjugation_array(G, g0, h), commutator_array(G, t[g0, g1], l)],
                commutator_array(G, l, g0)]
    ok = lhs == rhs
    data = {"mode": mode, "quadruples": int(ok.size)}
    if ok.all():
        return True, data, None
    idx = tuple(np.argwhere(~ok)[0])
    pick = lambda a: int(np.broadcast_to(a, ok.shape)[idx])  # noqa: E731
    return False, data, {"g0": pick(g0), "g1": pick(g1), "h": pick(h), "l": pick(l)}


def run_proof_trace(cg: ComponentedGroup, H: Subgroup, seed: int = 0,
                    quadruple_budget: int = QUADRUPLE_BUDGET,
                    quadruple_samples: int = QUADRUPLE_SAMPLES) -> ProofTrace:
    G, N = cg.G, cg.N
    full = whole_group(G)
    trace = ProofTrace(G, N, H)
    status: dict[str, str] = {}
    env: dict[str, Any] = {}
    hull_H = normal_hull(G, H).hull

    def record(name: str, title: str, fn):
        blocked = [d for d in DEPENDS[name] if status.get(d) != PASS]
        if blocked:
            rec = StepRecord(name, title, SKIPPED, data={"blocked_by": blocked})
        else:
            rec = StepRecord(name, title, PASS)
            try:
                ok, witness = fn(rec)
            except InternalConsistencyError as exc:
                ok, witness = False, {"error": exc.invariant, "detail": repr(exc.witness)}
            if not ok:
                rec.verdict = FAIL
                rec.witness = witness
        status[name] = rec.verdict
        trace.steps.append(rec)

    def s1(rec: StepRecord):
        C1 = commutator_subgroup(G, H, N)
        w = normality_witness(C1, H.array)
        prod = product_set(H, C1)
        mask = np.zeros(G.order, dtype=bool)
        mask[prod] = True
        closed = bool(mask[G.table[np.ix_(prod, prod)]].all())
        rec.subgroups.update({"(H,N)": C1.elements, "H1": _elements(prod)})
        rec.data.update({"order_(H,N)": C1.order, "order_H1": int(prod.size),
                         "H_normalizes_(H,N)": w is None, "H1_closed": closed})
        if w is not None:
            return False, {"h": w[0], "x": w[1], "claim": "H normalizes (H,N)"}
        if not closed:
            return False, {"claim": "H*(H,N) is a subgroup"}
        H1 = subgroup_from_elements(G, prod, generators=H.witness_generators() + C1.generators,
                                    check=False)
        outside = _first_outside(H.array, H1.mask)
        if outside is not None:
            return False, {"element": outside, "claim": "H in H1"}
        outside = _first_outside(H1.array, hull_H.mask)
        if outside is not None:
            return False, {"element": outside, "claim": "H1 in hull(H)"}
        env["H1"] = trace.H1 = H1
        return True, None

    def s2(rec: StepRecord):
        H1 = env["H1"]
        ok, data, witness = _quadruple_identity(G, N, H1, seed, quadruple_budget, quadruple_samples)
        w = normality_witness(H1, N.array)
        rec.data.update(data)
        rec.data["N_normalizes_H1"] = w is None
        if not ok:
            return False, {"claim": "conjugation identity", **witness}
        if w is not None:
            return False, {"claim": "N normalizes H1", "g0": w[0], "x": w[1]}
        return True, None

    def s3(rec: StepRecord):
        H1 = env["H1"]
        d_gens = commutator_generators(G, N, H1)
        D = commutator_subgroup(G, N, H1)
        DG = normal_hull(G, D).hull
        gd_gens = commutator_generators(G, full, D)
        GD = commutator_subgroup(G, full, D)
        prod = product_set(D, GD)
        n1 = width(G, D, d_gens)
        n2 = width(G, GD, gd_gens)
        env.update(D=D, DG=DG, n1=n1, n2=n2)
        rec.subgroups.update({"D=(N,H1)": D.elements, "D^G": DG.elements, "(G,D)": GD.elements})
        rec.data.update({"order_D": D.order, "order_D^G": DG.order, "order_(G,D)": GD.order,
                         "n1": n1, "n2": n2, "D_inside_H1": bool(H1.mask[D.array].all())})
        if not np.array_equal(prod, DG.array):
            diff = sorted(set(prod.tolist()) ^ set(DG.elements))
            return False, {"claim": "D^G = D*(G,D)", "element": diff[0]}
        return True, None

    def s4(rec: StepRecord):
        H1, DG = env["H1"], env["DG"]
        q = quotient(G, DG)
        Gbar = q.target
        Hbar = q.image(H1)
        Nbar = q.image(N)
        t = Gbar.table
        clash = t[np.ix_(Nbar.array, Hbar.array)] != t[np.ix_(Hbar.array, Nbar.array)].T
        env.update(q=q, Hbar=Hbar)
        rec.subgroups.update({"image_H1": Hbar.elements, "image_N": Nbar.elements})
        rec.data.update({"quotient_order": Gbar.order})
        if clash.any():
            i, j = np.argwhere(clash)[0]
            return False, {"claim": "image of N centralizes image of H1",
                           "n": int(Nbar.array[i]), "h": int(Hbar.array[j])}
        ctx = schur_context(Gbar, Hbar)
        rec.data.update({"schur_index": ctx.n, "centralizer_order": ctx.C.order})
        return True, None

    def s5(rec: StepRecord):
        H1, DG, q, Hbar = env["H1"], env["DG"], env["q"], env["Hbar"]
        GH1 = commutator_subgroup(G, full, H1)
        Gbar = q.target
        comm_bar = commutator_subgroup(Gbar, whole_group(Gbar), Hbar)
        image = q.image(GH1)
        env["GH1"] = GH1
        outside = _first_outside(DG.array, GH1.mask)
        common = intersection(DG, GH1)
        d = GH1.order // common.order
        env["d"] = d
        rec.subgroups.update({"(G,H1)": GH1.elements})
        rec.data.update({"order_(G,H1)": GH1.order, "d": d, "order_(Gbar,Hbar)": comm_bar.order})
        if outside is not None:
            return False, {"claim": "D^G inside (G,H1)", "element": outside}
        if comm_bar != image:
            diff = sorted(set(comm_bar.elements) ^ set(image.elements))
            return False, {"claim": "(Gbar,Hbar) = image of (G,H1)", "element": diff[0]}
        if d != comm_bar.order:
            return False, {"claim": "d = |(Gbar,Hbar)|", "d": d, "order": comm_bar.order}
        return True, None

    def s6(rec: StepRecord):
        H1 = env["H1"]
        if "GH1" not in env:
            env["GH1"] = commutator_subgroup(G, full, H1)
        GH1 = env["GH1"]
        w = normality_witness(GH1)
        prod = product_set(GH1, H1)
        hull_H1 = normal_hull(G, H1).hull
        trace.final = subgroup_from_elements(G, prod, check=False)
        rec.subgroups.update({"(G,H1)*H1": _elements(prod), "hull(H)": hull_H.elements})
        rec.data.update({"order_final": int(prod.size), "order_hull": hull_H.order})
        if w is not None:
            return False, {"claim": "(G,H1) normal", "g": w[0], "x": w[1]}
        if not np.array_equal(prod, hull_H.array):
            diff = sorted(set(prod.tolist()) ^ set(hull_H.elements))
            return False, {"claim": "(G,H1)*H1 = hull(H)", "element": diff[0]}
        if hull_H1 != hull_H:
            return False, {"claim": "hull(H1) = hull(H)"}
        return True, None

    def s7(rec: StepRecord):
        H1, GH1 = env["H1"], env["GH1"]
        gens = commutator_generators(G, full, H1)
        exact = width(G, GH1, gens)
        bound = env["n1"] + env["n2"] + env["d"]
        rec.data.update({"n1": env["n1"], "n2": env["n2"], "d": env["d"],
                         "width": exact, "bound": bound, "slack": bound - exact})
        if exact > bound:
            return False, {"claim": "width <= n1+n2+d", "width": exact, "bound": bound}
        return True, None

    record("s1", "absorb (H,N) into H", s1)
    record("s2", "N normalizes H1", s2)
    record("s3", "hull of D=(N,H1) is D*(G,D)", s3)
    record("s4", "quotient by D^G centralizes", s4)
    record("s5", "finite index d of D^G in (G,H1)", s5)
    record("s6", "hull(H) = (G,H1)*H1", s6)
    record("s7", "width of (G,H1) <= n1+n2+d", s7)
    return trace


def width_bound_audit(trace: ProofTrace) -> Verdict:
    """Recompute the exact width of (G,H1) and compare it with n1+n2+d."""
    try:
        s7 = trace.step("s7")
    except KeyError:
        raise TraceIncomplete() from None
    if s7.verdict == SKIPPED or trace.H1 is None:
        raise TraceIncomplete()
    G, H1 = trace.G, trace.H1
    gens = commutator_generators(G, whole_group(G), H1)
    target = commutator_subgroup(G, whole_group(G), H1)
    exact = width(G, target, gens)
    bound = s7.data["n1"] + s7.data["n2"] + s7.data["d"]
    return check("width-bound", exact <= bound,
                 {"width": exact, "bound": bound, "slack": bound - exact},
                 {"width": exact, "bound": bound})


def corollary_audit(cg: ComponentedGroup, H: Subgroup) -> Verdict:
    """(H,G) = (H*(N,H), G) as element sets."""
    G, N = cg.G, cg.N
    full = whole_group(G)
    left = commutator_subgroup(G, H, full)
    NH = commutator_subgroup(G, N, H)
    prod = product_set(H, NH)
    enlarged = subgroup_from_elements(G, prod)
    right = commutator_subgroup(G, enlarged, full)
    data = {"order_(H,G)": left.order, "order_H*(N,H)": enlarged.order,
            "order_(H*(N,H),G)": right.order}
    if left == right:
        return check("corollary", True, data)
    extra = sorted(set(right.elements) - set(left.elements))
    witness: dict[str, Any] = {"element": (extra or sorted(set(left.elements) - set(right.elements)))[0]}
    if extra:
        # a generator [x,g] of the right side that the left side misses
        comm = commutator_array(G, enlarged.array[:, None], full.array[None, :])
        i, j = np.argwhere(~left.mask[comm])[0]
        witness = {"commutator": [int(enlarged.array[i]), int(full.array[j])],
                   "value": int(comm[i, j])}
    return check("corollary", False, data, witness)
