"""Text formats for groups: ``permgroup v1`` and ``cayley v1``.

permgroup v1::

    format: permgroup v1
    degree: 4
    (1 2)
    (1 2 3 4)

cayley v1 (row g, column h holds g*h; id 0 must be the identity)::

    format: cayley v1
    order: 2
    0 1
    1 0

Blank lines and lines starting with ``#`` are ignored everywhere.
"""

from __future__ import annotations

import numpy as np

from .group import (
    DEFAULT_ORDER_CAP,
    FiniteGroup,
    FormatError,
    GroupAxiomError,
    GroupTooLarge,
    check_axioms,
    format_cycles,
    from_permutation_generators,
    from_table,
    parse_cycles,
)

PERMGROUP_HEADER = "format: permgroup v1"
CAYLEY_HEADER = "format: cayley v1"


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line))
    return out


def _keyed_int(entry: tuple[int, str], key: str) -> int:
    no, line = entry
    name, sep, value = line.partition(":")
    if not sep or name.strip() != key:
        raise FormatError(f"expected '{key}: <integer>'", no)
    try:
        v = int(value.strip())
    except ValueError:
        raise FormatError(f"'{key}' value is not an integer", no) from None
    if v < 1:
        raise FormatError(f"'{key}' must be positive", no)
    return v


def parse_group_file(text: str, max_order: int = DEFAULT_ORDER_CAP, name: str = "") -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty group file", 1)
    no, header = lines[0]
    header = " ".join(header.split())
    if header == PERMGROUP_HEADER:
        return _parse_permgroup(lines[1:], no, max_order, name)
    if header == CAYLEY_HEADER:
        return _parse_cayley(lines[1:], no, max_order, name)
    raise FormatError(f"unknown header {lines[0][1]!r}", no)


def _parse_permgroup(lines, header_line, max_order, name) -> FiniteGroup:
    if not lines:
        raise FormatError("missing 'degree:' line", header_line + 1)
    degree = _keyed_int(lines[0], "degree")
    gens = []
    for no, line in lines[1:]:
        try:
            gens.append(parse_cycles(line, degree))
        except FormatError as exc:
            raise FormatError(str(exc), no) from None
    return from_permutation_generators(degree, gens, max_order=max_order, name=name)


def _parse_cayley(lines, header_line, max_order, name) -> FiniteGroup:
    if not lines:
        raise FormatError("missing 'order:' line", header_line + 1)
    order = _keyed_int(lines[0], "order")
    if order > max_order:
        raise GroupTooLarge(max_order)
    rows = lines[1:]
    if len(rows) != order:
        last = rows[-1][0] if rows else lines[0][0]
        raise FormatError(f"expected {order} table rows, found {len(rows)}", last)
    table = np.empty((order, order), dtype=np.intp)
    for i, (no, line) in enumerate(rows):
        cells = line.split()
        if len(cells) != order:
            raise FormatError(f"row has {len(cells)} entries, expected {order}", no)
        try:
            table[i] = [int(c) for c in cells]
        except ValueError:
            raise FormatError("non-integer table entry", no) from None
        bad = [c for c in table[i] if not 0 <= c < order]
        if bad:
            raise FormatError(f"entry {bad[0]} outside 0..{order - 1}", no)
    failure = check_axioms(table)
    if failure is not None:
        axiom, witness = failure
        # name the row that holds the offending product
        row = rows[witness[0]][0]
        raise GroupAxiomError(axiom, witness, row)
    return from_table(table, name=name, check=False)


def dump_cayley(G: FiniteGroup) -> str:
    lines = [CAYLEY_HEADER, f"order: {G.order}"]
    lines += [" ".join(map(str, row)) for row in G.rows]
    return "\n".join(lines) + "\n"


def dump_permgroup(G: FiniteGroup) -> str:
    if G.perms is None:
        raise FormatError("group has no permutation representation")
    lines = [PERMGROUP_HEADER, f"degree: {len(G.perms[0])}"]
    lines += [format_cycles(G.perms[g]) for g in G.generators]
    return "\n".join(lines) + "\n"
