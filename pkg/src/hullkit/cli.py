"""Command-line entry point: ``hullkit <subcommand> [flags]``.

Exit status is 0 when every hard audit passes, 1 when any hard audit fails
or is skipped, and 2 for usage or input errors.  Claim audits never change
the exit status.
"""

from __future__ import annotations

import argparse
import logging
import os
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from .audits import (
    WORDS_PER_CONTEXT,
    Recorder,
    audit_corpus_group,
    hull_equivalence_audit,
    schur_audits,
    subgroup_descriptor,
    triple_audits,
)
from .calculus import (
    commutator_normality_audit,
    conjugation_identity_audits,
    hull_decomposition_audit,
    inner_invariance_audit,
)
from .corpus import DEFAULT_CORPUS_ORDER, corpus
from .families import parse_family
from .formats import parse_group_file
from .group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    GroupError,
    Subgroup,
    generate_closure,
    parse_cycles,
    whole_group,
)
from .report import build_report, exit_status, to_json, to_text
from .schur import commutator_width, schur_context
from .verdict import check

log = logging.getLogger("hullkit")

SEED_ENV = "HULLKIT_SEED"
U64_MAX = 2**64 - 1


class UsageError(Exception):
    pass


# -- argument parsing ---------------------------------------------------------

def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid seed {text!r}") from None
    if not 0 <= v <= U64_MAX:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-order", type=_positive, default=None,
                        help="order cap for built groups (audit-all: corpus order cap, default 48)")
    common.add_argument("--seed", type=_u64, default=None,
                        help=f"random seed (falls back to ${SEED_ENV}, then 0)")
    common.add_argument("--out", type=Path, default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--timings", action="store_true",
                        help="add wall-clock seconds to every audit record (breaks byte-stable reports)")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    group_flags = argparse.ArgumentParser(add_help=False)
    group_flags.add_argument("--group", required=True,
                             help="group file path or family:<spec>, e.g. family:symmetric:4")
    group_flags.add_argument("--subgroup", required=True,
                             help='generator list, e.g. "(1 2 3),(1 2)" or element ids "1,4"')

    parser = argparse.ArgumentParser(prog="hullkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("hull", parents=[common, group_flags],
                   help="normal hull by both constructions and the H*(G,H) decomposition")
    sub.add_parser("commutator", parents=[common, group_flags],
                   help="(G,H), its normality and invariance, and the elementwise identities")
    sub.add_parser("width", parents=[common, group_flags],
                   help="(G,H) and its exact width over the commutators [g,h]")
    p = sub.add_parser("schur", parents=[common, group_flags],
                       help="centralizer core, power identity and word reduction")
    p.add_argument("--words", type=_positive, default=WORDS_PER_CONTEXT,
                   help="random words to reduce (default %(default)s)")
    p = sub.add_parser("trace", parents=[common, group_flags],
                       help="step-by-step hull theorem trace for (G, N, H)")
    p.add_argument("--component", default=None,
                   help="generators of the normal subgroup N (default: all of G)")
    p = sub.add_parser("audit-all", parents=[common], help="run every audit over the corpus")
    p.add_argument("--jobs", type=_positive, default=1, help="worker processes (default 1)")
    p.add_argument("--words", type=_positive, default=WORDS_PER_CONTEXT,
                   help="random words per Schur context (default %(default)s)")
    p.add_argument("--summary-only", action="store_true",
                   help="with --format text, one line per group instead of per audit")
    return parser


# -- input resolution ---------------------------------------------------------

def load_group(spec: str, max_order: int) -> FiniteGroup:
    if spec.startswith("family:"):
        return parse_family(spec[len("family:"):], max_order=max_order)
    path = Path(spec)
    try:
        text = path.read_text()
    except OSError as exc:
        raise UsageError(f"cannot read group file {spec!r}: {exc.strerror}") from None
    return parse_group_file(text, max_order=max_order, name=path.stem)


def split_generators(text: str) -> list[str]:
    """Split on commas that are not inside parentheses."""
    items, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    items.append("".join(cur).strip())
    return [s for s in items if s]


def resolve_element(G: FiniteGroup, token: str) -> int:
    if G.perms is not None and token.startswith("("):
        p = parse_cycles(token, len(G.perms[0]))
        if p not in G.perm_index:
            raise UsageError(f"{token} is not an element of the group")
        return G.perm_index[p]
    if token in G.labels:
        return G.labels.index(token)
    if re.fullmatch(r"\d+", token) and int(token) < G.order:
        return int(token)
    raise UsageError(f"cannot resolve generator {token!r}")


def resolve_subgroup(G: FiniteGroup, text: str | None) -> Subgroup:
    if text is None:
        return whole_group(G)
    return generate_closure(G, [resolve_element(G, t) for t in split_generators(text)])


def resolve_seed(arg: int | None) -> int:
    if arg is not None:
        return arg
    env = os.environ.get(SEED_ENV)
    if env is None or env.strip() == "":
        return 0
    try:
        return _u64(env.strip())
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"{SEED_ENV}: {exc}") from None


# -- subcommands --------------------------------------------------------------

def _single(command: str, G: FiniteGroup, spec: str, H: Subgroup, rec: Recorder,
            component: Subgroup | None = None) -> dict[str, Any]:
    entry: dict[str, Any] = {
        "group": {"name": spec, "order": G.order},
        "subgroups": [subgroup_descriptor(H, 0)],
    }
    if component is not None:
        entry["component"] = subgroup_descriptor(component)
    entry["audits"] = rec.records
    entry["claims"] = rec.claims
    return entry


def _find(rec: Recorder, name: str) -> dict[str, Any] | None:
    return next((r for r in rec.records + rec.claims if r["name"] == name), None)


def run_hull(G, H, seed, args, rec):
    rec.run(lambda: hull_equivalence_audit(G, H))
    rec.run(lambda: hull_decomposition_audit(G, H))
    eq, dec = _find(rec, "hull-equivalence"), _find(rec, "hull-decomposition")
    agree = "agree" if eq["verdict"] == "pass" else "disagree"
    return f"hull order {eq['data']['hull_order']}, constructions {agree}, decomposition {dec['verdict']}"


def run_commutator(G, H, seed, args, rec):
    rec.run(lambda: commutator_normality_audit(G, H))
    rec.run(lambda: inner_invariance_audit(G, H))
    rec.run(lambda: hull_decomposition_audit(G, H))
    rec.run(lambda: conjugation_identity_audits(G, seed=seed))
    r = _find(rec, "commutator-normal")
    return f"(G,H) order {r['data']['commutator_order']}, normal {r['verdict']}"


def run_width(G, H, seed, args, rec):
    target, w = commutator_width(G, whole_group(G), H)
    labels = [G.labels[x] for x in target.elements]
    rec.run(lambda: check("commutator-width", True,
                          {"commutator_order": target.order, "width": w, "elements": labels}))
    return f"(G,H) order {target.order} = {{{', '.join(labels)}}}, width {w}"


def run_schur(G, H, seed, args, rec):
    ctx = schur_context(G, H)
    rec.run(lambda: check("schur-context", True,
                          {"n": ctx.n, "centralizer_order": ctx.C.order, "core_order": ctx.K.order}))
    rec.run(schur_audits(ctx, np.random.SeedSequence(seed), args.words))
    return (f"n {ctx.n}, centralizer order {ctx.C.order}, core order {ctx.K.order}, "
            f"|plainSet| {len(ctx.sets.plain)}, |sigmaSet| {len(ctx.sets.sigma)}")


def run_trace(G, H, seed, args, rec, N):
    triple_audits(rec, G, N, H, seed, element_sets=True)
    tr = _find(rec, "proof-trace")
    nums = tr["data"]
    parts = [f"trace {tr['verdict']}"]
    for k in ("n1", "n2", "d", "width", "bound", "slack"):
        if k in nums:
            parts.append(f"{k} {nums[k]}")
    final = next((s for s in nums["steps"] if s["step"] == "s6"), None)
    if final and "data" in final:
        parts.append(f"hull order {final['data']['order_hull']}")
    return ", ".join(parts)


SINGLE = {
    "hull": run_hull,
    "commutator": run_commutator,
    "width": run_width,
    "schur": run_schur,
}


def _audit_group_task(payload):
    max_order, index, seed, timings, words = payload
    cg = corpus(max_order)[index]
    return audit_corpus_group(cg, index, seed, timings, words)


def run_audit_all(args, seed: int) -> dict[str, Any]:
    max_order = args.max_order or DEFAULT_CORPUS_ORDER
    groups = corpus(max_order)
    params = {"max_order": max_order, "seed": seed, "words": args.words}
    if args.jobs > 1:
        tasks = [(max_order, k, seed, args.timings, args.words) for k in range(len(groups))]
        with ProcessPoolExecutor(args.jobs) as pool:
            # map preserves task order, so assembly order is the corpus order
            entries = list(pool.map(_audit_group_task, tasks))
    else:
        entries = []
        for k, cg in enumerate(groups):
            log.info("auditing %s (order %d) [%d/%d]", cg.spec, cg.group.order, k + 1, len(groups))
            entries.append(audit_corpus_group(cg, k, seed, args.timings, args.words))
    return build_report("audit-all", params, entries)


def execute(args: argparse.Namespace) -> tuple[dict[str, Any], str | None]:
    seed = resolve_seed(args.seed)
    if args.command == "audit-all":
        return run_audit_all(args, seed), None
    max_order = args.max_order or DEFAULT_ORDER_CAP
    G = load_group(args.group, max_order)
    H = resolve_subgroup(G, args.subgroup)
    rec = Recorder(args.timings)
    params: dict[str, Any] = {"group": args.group, "subgroup": args.subgroup, "seed": seed}
    N = None
    if args.command == "trace":
        N = resolve_subgroup(G, args.component)
        params["component"] = args.component
        headline = run_trace(G, H, seed, args, rec, N)
    else:
        headline = SINGLE[args.command](G, H, seed, args, rec)
    entry = _single(args.command, G, args.group, H, rec, N)
    return build_report(args.command, params, [entry]), headline


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(message)s", stream=sys.stderr)
    try:
        report, headline = execute(args)
    except (UsageError, GroupError) as exc:
        parser.exit(2, f"hullkit: error: {exc}\n")
    if args.format == "json":
        text = to_json(report)
    else:
        text = to_text(report, headline, detail=not getattr(args, "summary_only", False))
    if args.out is not None:
        args.out.write_text(text)
        if headline:
            print(headline)
        print(f"status: {report['summary']['status']}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return exit_status(report)


if __name__ == "__main__":
    sys.exit(main())
