"""Composite audit runs over one pair, one triple, or the whole corpus.

Every function returns plain report records (dicts) so results can be
serialized as they are produced.  Records never carry wall-clock data
unless ``timings`` is set, which keeps reports byte-stable for a seed.
"""

from __future__ import annotations

import logging
import time
from typing import Any, Callable, Iterator

import numpy as np

from .calculus import (
    CONJUGATE_GENERATION,
    MINIMAL_NORMAL_CLOSURE,
    conjugation_identity_audits,
    hull_decomposition_audit,
    inner_invariance_audit,
    normal_hull,
)
from .corpus import DEFAULT_CORPUS_ORDER, CorpusGroup, corpus
from .group import FiniteGroup, InternalConsistencyError, Subgroup
from .schur import (
    SchurContext,
    core_power_audit,
    power_identity_check,
    random_words,
    reduce_word,
    schur_context,
)
from .theorem import ComponentedGroup, corollary_audit, run_proof_trace, width_bound_audit
from .verdict import FAIL, PASS, SKIPPED, Verdict, check, claim

log = logging.getLogger(__name__)

WORDS_PER_CONTEXT = 1000
MAX_WORD_LENGTH = 64


def subgroup_descriptor(H: Subgroup, index: int | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if index is not None:
        out["index"] = index
    out["order"] = H.order
    out["generators"] = [H.parent.labels[g] for g in H.witness_generators()]
    return out


class Recorder:
    """Collects verdict records, optionally timing each audit."""

    def __init__(self, timings: bool = False):
        self.timings = timings
        self.records: list[dict[str, Any]] = []
        self.claims: list[dict[str, Any]] = []

    def run(self, fn: Callable[[], Verdict | list[Verdict] | tuple[Verdict, ...]],
            **context) -> list[Verdict]:
        start = time.perf_counter()
        try:
            out = fn()
        except InternalConsistencyError as exc:
            out = Verdict(getattr(fn, "__name__", "audit"), FAIL,
                          witness={"error": exc.invariant, "detail": repr(exc.witness)})
        elapsed = time.perf_counter() - start
        verdicts = list(out) if isinstance(out, (list, tuple)) else [out]
        for v in verdicts:
            rec = {**context, **v.to_dict()}
            if self.timings:
                rec["wall_clock_s"] = round(elapsed / len(verdicts), 6)
            (self.claims if v.is_claim else self.records).append(rec)
        return verdicts


def hull_equivalence_audit(G: FiniteGroup, H: Subgroup) -> Verdict:
    a = normal_hull(G, H, MINIMAL_NORMAL_CLOSURE)
    b = normal_hull(G, H, CONJUGATE_GENERATION)
    data = {"hull_order": a.hull.order, "iterations": a.iterations}
    if a.hull == b.hull:
        return check("hull-equivalence", True, data)
    diff = sorted(set(a.hull.elements) ^ set(b.hull.elements))
    return check("hull-equivalence", False, data, {"element": diff[0]})


def reduce_words_audit(ctx: SchurContext, rng: np.random.Generator,
                       count: int = WORDS_PER_CONTEXT,
                       max_length: int = MAX_WORD_LENGTH) -> list[Verdict]:
    """Reduce seeded random words; products must match and lengths obey the bound."""
    n4 = ctx.n**4
    threshold = ctx.rewrite_threshold
    longest_in = longest_out = reduced = 0
    for w in random_words(ctx, count, max_length, rng):
        r = reduce_word(ctx, w)
        longest_in = max(longest_in, len(w))
        longest_out = max(longest_out, len(r))
        if r is not w:
            reduced += 1
        if r.product != w.product or len(r) > threshold:
            return [check("reduce-word", False, {"n": ctx.n},
                          {"factors": [list(f) for f in w.factors],
                           "product": w.product, "reduced_product": r.product,
                           "reduced_length": len(r)})]
    data = {"n": ctx.n, "words": count, "longest_input": longest_in,
            "longest_output": longest_out, "words_rewritten": reduced,
            "bound": threshold, "n4": n4, "sigma_times_n": len(ctx.sets.sigma) * ctx.n}
    return [check("reduce-word", True, data),
            claim("reduce-word-n4-suffices", longest_out <= n4,
                  {"n4": n4, "longest_output": longest_out})]


def schur_audits(ctx: SchurContext, seed_seq: np.random.SeedSequence,
                 words: int = WORDS_PER_CONTEXT) -> Callable[[], list[Verdict]]:
    def run() -> list[Verdict]:
        power_seed, word_seed = seed_seq.spawn(2)
        out = [core_power_audit(ctx)]
        out += list(power_identity_check(ctx, seed=int(power_seed.generate_state(1)[0])))
        out += ctx.sets.audits()
        out += reduce_words_audit(ctx, np.random.default_rng(word_seed), count=words)
        return out
    return run


def pair_audits(rec: Recorder, G: FiniteGroup, H: Subgroup, seed_seq: np.random.SeedSequence,
                words: int = WORDS_PER_CONTEXT, **context) -> None:
    rec.run(lambda: hull_equivalence_audit(G, H), **context)
    rec.run(lambda: hull_decomposition_audit(G, H), **context)
    rec.run(lambda: inner_invariance_audit(G, H), **context)
    try:
        ctx = schur_context(G, H)
    except InternalConsistencyError as exc:
        failed = Verdict("schur-context", FAIL,
                         witness={"error": exc.invariant, "detail": repr(exc.witness)})
        rec.run(lambda: failed, **context)
        return
    rec.run(lambda: check("schur-context", True,
                          {"n": ctx.n, "centralizer_order": ctx.C.order,
                           "core_order": ctx.K.order}), **context)
    rec.run(schur_audits(ctx, seed_seq, words), **context)


def triple_audits(rec: Recorder, G: FiniteGroup, N: Subgroup, H: Subgroup, seed: int,
                  element_sets: bool = False, **context) -> None:
    cg = ComponentedGroup(G, N)

    def trace_verdicts() -> list[Verdict]:
        trace = run_proof_trace(cg, H, seed=seed)
        status = PASS if trace.passed else FAIL
        steps = trace.to_dict(element_sets)["steps"]
        data = {"steps": steps, **trace.numbers()}
        failed = [s["step"] for s in steps if s["verdict"] != PASS]
        out = [Verdict("proof-trace", status, data, {"failed_steps": failed} if failed else None)]
        if trace.step("s7").verdict != SKIPPED:
            out.append(width_bound_audit(trace))
        else:
            out.append(Verdict("width-bound", SKIPPED, {}, {"reason": "dependent step skipped"}))
        return out

    rec.run(trace_verdicts, **context)
    rec.run(lambda: corollary_audit(cg, H), **context)


def audit_corpus_group(cg: CorpusGroup, group_index: int, seed: int, timings: bool = False,
                       words: int = WORDS_PER_CONTEXT) -> dict[str, Any]:
    G = cg.group
    rec = Recorder(timings)
    root = np.random.SeedSequence([seed, group_index])
    rec.run(lambda: conjugation_identity_audits(G, seed=int(root.generate_state(1)[0])),
            scope="group")
    subs = cg.subgroups
    for i, H in enumerate(subs):
        pair_audits(rec, G, H, np.random.SeedSequence([seed, group_index, i]), words,
                    scope="pair", subgroup=i)
    normal_index = [i for i, S in enumerate(subs) if S.is_normal()]
    for j in normal_index:
        for i, H in enumerate(subs):
            triple_audits(rec, G, subs[j], H, seed + group_index, scope="triple",
                          component=j, subgroup=i)
    return {
        "group": {"name": cg.spec, "order": G.order},
        "subgroups": [subgroup_descriptor(H, i) for i, H in enumerate(subs)],
        "normal_subgroups": normal_index,
        "audits": rec.records,
        "claims": rec.claims,
    }


def iter_corpus_audits(max_order: int = DEFAULT_CORPUS_ORDER, seed: int = 0,
                       timings: bool = False, words: int = WORDS_PER_CONTEXT,
                       ) -> Iterator[dict[str, Any]]:
    groups = corpus(max_order)
    for k, cg in enumerate(groups):
        log.info("auditing %s (order %d) [%d/%d]", cg.spec, cg.group.order, k + 1, len(groups))
        yield audit_corpus_group(cg, k, seed, timings, words)
