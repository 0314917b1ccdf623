"""Exact finite-group arithmetic over dense element ids.

Every group is stored as a full ``order x order`` product table with the
identity at id 0.  Permutation input is only a construction front end; all
later computations work on ids.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_ORDER_CAP = 5040

__all__ = [
    "DEFAULT_ORDER_CAP",
    "FiniteGroup",
    "Subgroup",
    "QuotientMap",
    "GroupError",
    "GroupTooLarge",
    "FormatError",
    "GroupAxiomError",
    "NotNormal",
    "InternalConsistencyError",
    "from_permutation_generators",
    "from_table",
    "check_axioms",
    "generate_closure",
    "trivial_subgroup",
    "whole_group",
    "subgroup_from_elements",
    "centralizer",
    "normal_core",
    "quotient",
    "conjugate_subgroup",
    "commutator_element",
    "commutator_array",
    "conjugation_array",
    "is_normal",
    "normality_witness",
    "product_set",
    "intersection",
    "power_array",
    "format_cycles",
    "parse_cycles",
]


class GroupError(ValueError):
    pass


class GroupTooLarge(GroupError):
    def __init__(self, cap: int):
        super().__init__(f"group too large: order exceeds cap {cap}")
        self.cap = cap


class FormatError(GroupError):
    def __init__(self, message: str, line: int | None = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line


class GroupAxiomError(FormatError):
    def __init__(self, axiom: str, witness: tuple[int, ...], line: int | None = None):
        super().__init__(f"{axiom} fails at {witness}", line)
        self.axiom = axiom
        self.witness = witness


class NotNormal(GroupError):
    def __init__(self, g: int, n: int):
        super().__init__(f"not normal: g={g}, n={n} gives g*n*g^-1 outside the subgroup")
        self.witness = (g, n)


class InternalConsistencyError(AssertionError):
    """A mathematical invariant that must hold was violated."""

    def __init__(self, invariant: str, witness=None):
        super().__init__(f"{invariant} (witness: {witness})")
        self.invariant = invariant
        self.witness = witness


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.intp)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its product table.

    ``table[a, b]`` is the id of ``a*b``; id 0 is the identity.  ``perms``
    holds the 0-based image tuples when the group was built from
    permutations (the product convention is left to right: ``a*b`` applies
    ``a`` first).
    """

    table: np.ndarray
    inverse: np.ndarray
    labels: tuple[str, ...]
    name: str = ""
    perms: tuple[tuple[int, ...], ...] | None = field(default=None, repr=False)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    @property
    def identity(self) -> int:
        return 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def elements(self) -> range:
        return range(self.order)

    # scalar helpers use plain lists, which beat numpy item access by a lot
    @functools.cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @functools.cached_property
    def inv_list(self) -> list[int]:
        return self.inverse.tolist()

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def inv(self, a: int) -> int:
        return self.inv_list[a]

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1"""
        rows = self.rows
        return rows[rows[g][x]][self.inv_list[g]]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 0
        rows = self.rows
        while e:
            if e & 1:
                result = rows[result][a]
            a = rows[a][a]
            e >>= 1
        return result

    def label(self, a: int) -> str:
        return self.labels[a]

    @functools.cached_property
    def perm_index(self) -> dict[tuple[int, ...], int]:
        if self.perms is None:
            raise GroupError(f"{self.name or 'group'} has no permutation labels")
        return {p: i for i, p in enumerate(self.perms)}

    @functools.cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in id order."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        gens: list[int] = []
        for x in range(self.order):
            if not mask[x]:
                gens.append(x)
                mask = _closure_mask(self, np.array(gens, dtype=np.intp))
        return tuple(gens)

    @functools.cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    def element_orders(self) -> np.ndarray:
        orders = np.ones(self.order, dtype=np.intp)
        x = np.arange(self.order)
        cur = x.copy()
        while True:
            pending = cur != 0
            if not pending.any():
                return orders
            orders[pending] += 1
            cur = np.where(pending, self.table[cur, x], 0)


def check_axioms(table: np.ndarray) -> tuple[str, tuple[int, ...]] | None:
    """Return ``(axiom, witness)`` for the first failing group axiom, else None.

    The identity must be id 0.  Associativity is checked exhaustively.
    """
    t = np.asarray(table)
    n = t.shape[0]
    if t.ndim != 2 or t.shape[1] != n or n == 0:
        return ("shape", (n,))
    bad = (t < 0) | (t >= n)
    if bad.any():
        a, b = map(int, np.argwhere(bad)[0])
        return ("closure", (a, b))
    for a in range(n):
        if t[0, a] != a:
            return ("identity", (0, a))
        if t[a, 0] != a:
            return ("identity", (a, 0))
    for a in range(n):
        # (a*b)*c vs a*(b*c) for every b, c
        left = t[t[a, :], :]
        right = t[a, t]
        diff = left != right
        if diff.any():
            b, c = map(int, np.argwhere(diff)[0])
            return ("associativity", (a, b, c))
    for a in range(n):
        hits = np.flatnonzero(t[a, :] == 0)
        if hits.size == 0:
            return ("inverse", (a,))
        b = int(hits[0])
        if t[b, a] != 0:
            return ("inverse", (a, b))
    return None


def from_table(table, labels: Sequence[str] | None = None, name: str = "",
               perms=None, check: bool = True) -> FiniteGroup:
    t = np.asarray(table, dtype=np.intp)
    if check:
        failure = check_axioms(t)
        if failure is not None:
            raise GroupAxiomError(*failure)
    n = t.shape[0]
    inverse = np.argmax(t == 0, axis=1)
    if labels is None:
        labels = [str(i) for i in range(n)]
    return FiniteGroup(_frozen(t), _frozen(inverse), tuple(labels), name,
                       None if perms is None else tuple(map(tuple, perms)))


# -- permutations -----------------------------------------------------------

def format_cycles(perm: Sequence[int]) -> str:
    """Cycle notation (1-based) of a 0-based image tuple; identity is ``()``."""
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start] or perm[start] == start:
            seen[start] = True
            continue
        cycle = []
        x = start
        while not seen[x]:
            seen[x] = True
            cycle.append(x + 1)
            x = perm[x]
        out.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse cycle notation such as ``(1 2)(3 4)`` into a 0-based image tuple.

    Cycles are composed left to right.  Points must lie in ``1..degree``.
    """
    s = text.strip()
    perm = list(range(degree))
    if s in ("", "()"):
        return tuple(perm)
    pos = 0
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        if s[pos] != "(":
            raise FormatError(f"expected '(' in cycle notation {text!r}")
        end = s.find(")", pos)
        if end < 0:
            raise FormatError(f"unbalanced parentheses in {text!r}")
        body = s[pos + 1:end].replace(",", " ").split()
        pos = end + 1
        try:
            points = [int(p) for p in body]
        except ValueError:
            raise FormatError(f"non-integer point in {text!r}") from None
        if len(set(points)) != len(points):
            raise FormatError(f"repeated point in cycle of {text!r}: not a bijection")
        for p in points:
            if not 1 <= p <= degree:
                raise FormatError(f"point {p} outside 1..{degree} in {text!r}")
        if len(points) < 2:
            continue
        cyc = {points[i] - 1: points[(i + 1) % len(points)] - 1 for i in range(len(points))}
        # left-to-right: apply the accumulated perm, then this cycle
        perm = [cyc.get(x, x) for x in perm]
    return tuple(perm)


def from_permutation_generators(degree: int, gens: Iterable[Sequence[int]],
                                max_order: int = DEFAULT_ORDER_CAP,
                                name: str = "") -> FiniteGroup:
    """Enumerate the group generated by permutations of ``0..degree-1``.

    Elements are numbered in breadth-first order from the identity, so id 0
    is the identity.  Labels are cycle notation on ``1..degree``.
    """
    if degree < 1:
        raise FormatError("degree must be positive")
    gens = [tuple(int(x) for x in g) for g in gens]
    for g in gens:
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise FormatError(f"generator {g} is not a bijection on {degree} points")
    ident = tuple(range(degree))
    gens = [g for g in dict.fromkeys(gens) if g != ident]
    perms = [ident]
    index = {ident: 0}
    # parent[i], via[i]: element i = perms[parent[i]] * gens[via[i]]
    parent = [0]
    via = [-1]
    i = 0
    while i < len(perms):
        p = perms[i]
        for k, s in enumerate(gens):
            q = tuple(s[x] for x in p)
            if q not in index:
                if len(perms) >= max_order:
                    raise GroupTooLarge(max_order)
                index[q] = len(perms)
                perms.append(q)
                parent.append(i)
                via.append(k)
        i += 1
    n = len(perms)
    table = np.empty((n, n), dtype=np.intp)
    table[:, 0] = np.arange(n)
    if n > 1:
        # right multiplication by each generator, read off the BFS tree
        arr = np.array(perms, dtype=np.intp)
        codes = {row.tobytes(): j for j, row in enumerate(arr)}
        right = np.empty((len(gens), n), dtype=np.intp)
        for k, s in enumerate(gens):
            images = np.array(s, dtype=np.intp)[arr]
            right[k] = [codes[row.tobytes()] for row in images]
        for j in range(1, n):
            table[:, j] = right[via[j]][table[:, parent[j]]]
    labels = [format_cycles(p) for p in perms]
    inverse = np.argmax(table == 0, axis=1)
    return FiniteGroup(_frozen(table), _frozen(inverse), tuple(labels), name, tuple(perms))


# -- subgroups --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` given by its sorted element ids.

    Two subgroups compare equal when they have the same parent object and
    the same element set; generators are only a witness.
    """

    parent: FiniteGroup
    elements: tuple[int, ...]
    generators: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @functools.cached_property
    def array(self) -> np.ndarray:
        return _frozen(np.array(self.elements, dtype=np.intp))

    @functools.cached_property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.parent.order, dtype=bool)
        m[list(self.elements)] = True
        m.setflags(write=False)
        return m

    @functools.cached_property
    def _set(self) -> frozenset[int]:
        return frozenset(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._set

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __le__(self, other: Subgroup) -> bool:
        return self._set <= other._set

    def __lt__(self, other: Subgroup) -> bool:
        return self._set < other._set

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, of={self.parent!r})"

    def index(self) -> int:
        return self.parent.order // self.order

    def witness_generators(self) -> tuple[int, ...]:
        """Generators if recorded, else the elements themselves."""
        return self.generators if self.generators else self.elements

    def is_normal(self) -> bool:
        return normality_witness(self) is None

    def labels(self) -> list[str]:
        return [self.parent.labels[x] for x in self.elements]


def _closure_mask(parent: FiniteGroup, gens: np.ndarray) -> np.ndarray:
    mask = np.zeros(parent.order, dtype=bool)
    mask[0] = True
    gens = np.unique(gens)
    gens = gens[gens != 0]
    if gens.size == 0:
        return mask
    frontier = np.array([0], dtype=np.intp)
    table = parent.table
    while frontier.size:
        new = table[np.ix_(frontier, gens)].ravel()
        new = np.unique(new[~mask[new]])
        mask[new] = True
        frontier = new
    return mask


def generate_closure(parent: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup of ``parent`` containing ``gens``."""
    g = np.fromiter((int(x) for x in gens), dtype=np.intp)
    if g.size and (g.min() < 0 or g.max() >= parent.order):
        raise GroupError("generator outside the parent group")
    mask = _closure_mask(parent, g)
    return Subgroup(parent, tuple(np.flatnonzero(mask).tolist()), tuple(np.unique(g).tolist()))


def subgroup_from_elements(parent: FiniteGroup, elements: Iterable[int],
                           generators: Iterable[int] | None = None,
                           check: bool = True) -> Subgroup:
    """Wrap an element set known (or checked) to be a subgroup."""
    elems = np.unique(np.fromiter((int(x) for x in elements), dtype=np.intp))
    if check:
        mask = np.zeros(parent.order, dtype=bool)
        mask[elems] = True
        if not mask[0]:
            raise GroupError("element set does not contain the identity")
        prods = parent.table[np.ix_(elems, elems)]
        if not mask[prods].all():
            raise GroupError("element set is not closed under the product")
    gens = tuple(elems.tolist()) if generators is None else tuple(sorted(set(generators)))
    return Subgroup(parent, tuple(elems.tolist()), gens)


def trivial_subgroup(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, (0,), ())


def whole_group(parent: FiniteGroup) -> Subgroup:
    return Subgroup(parent, tuple(range(parent.order)), parent.generators)


def _from_mask(parent: FiniteGroup, mask: np.ndarray, generators=None) -> Subgroup:
    elems = tuple(np.flatnonzero(mask).tolist())
    return Subgroup(parent, elems, elems if generators is None else tuple(generators))


def conjugation_array(G: FiniteGroup, g, x) -> np.ndarray:
    """Elementwise g*x*g^-1 with numpy broadcasting."""
    g = np.asarray(g, dtype=np.intp)
    x = np.asarray(x, dtype=np.intp)
    return G.table[G.table[g, x], G.inverse[g]]


def commutator_array(G: FiniteGroup, a, b) -> np.ndarray:
    """Elementwise [a,b] = a*b*a^-1*b^-1 with numpy broadcasting."""
    a = np.asarray(a, dtype=np.intp)
    b = np.asarray(b, dtype=np.intp)
    t = G.table
    return t[t[t[a, b], G.inverse[a]], G.inverse[b]]


def commutator_element(parent: FiniteGroup, g: int, h: int) -> int:
    """[g,h] = g*h*g^-1*h^-1."""
    rows, inv = parent.rows, parent.inv_list
    return rows[rows[rows[g][h]][inv[g]]][inv[h]]


def power_array(G: FiniteGroup, x, e: int) -> np.ndarray:
    x = np.asarray(x, dtype=np.intp)
    if e < 0:
        x, e = G.inverse[x], -e
    result = np.zeros_like(x)
    base = x
    t = G.table
    while e:
        if e & 1:
            result = t[result, base]
        base = t[base, base]
        e >>= 1
    return result


def centralizer(parent: FiniteGroup, H: Subgroup) -> Subgroup:
    """{g : g*h = h*g for all h in H}."""
    hs = np.array(H.witness_generators(), dtype=np.intp)
    if hs.size == 0:
        return whole_group(parent)
    t = parent.table
    mask = (t[:, hs] == t[hs, :].T).all(axis=1)
    return _from_mask(parent, mask)


def normality_witness(S: Subgroup, conjugators=None) -> tuple[int, int] | None:
    """First ``(g, n)`` with g*n*g^-1 outside S, or None if S is normalized."""
    G = S.parent
    gs = np.arange(G.order) if conjugators is None else np.asarray(conjugators, dtype=np.intp)
    if gs.size == 0:
        return None
    conj = conjugation_array(G, gs[:, None], S.array[None, :])
    bad = ~S.mask[conj]
    if not bad.any():
        return None
    i, j = np.argwhere(bad)[0]
    return int(gs[i]), int(S.array[j])


def is_normal(S: Subgroup) -> bool:
    return normality_witness(S) is None


def normal_core(parent: FiniteGroup, S: Subgroup) -> Subgroup:
    """Intersection of all conjugates g*S*g^-1."""
    g = np.arange(parent.order)
    # x lies in g S g^-1 for every g iff g^-1 x g lies in S for every g
    conj = conjugation_array(parent, parent.inverse[g][:, None], S.array[None, :])
    keep = S.mask[conj].all(axis=0)
    return Subgroup(parent, tuple(S.array[keep].tolist()), ())


def conjugate_subgroup(H: Subgroup, g: int) -> Subgroup:
    G = H.parent
    elems = conjugation_array(G, g, H.array)
    gens = conjugation_array(G, g, np.array(H.generators, dtype=np.intp)) if H.generators else ()
    return Subgroup(G, tuple(sorted(elems.tolist())), tuple(sorted(set(np.asarray(gens).tolist()))))


def product_set(A: Subgroup, B: Subgroup) -> np.ndarray:
    """Sorted ids of {a*b : a in A, b in B}."""
    return np.unique(A.parent.table[np.ix_(A.array, B.array)])


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    return _from_mask(A.parent, A.mask & B.mask)


# -- quotients --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class QuotientMap:
    source: FiniteGroup
    target: FiniteGroup
    kernel: Subgroup
    map: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.map[x])

    def image(self, H: Subgroup) -> Subgroup:
        elems = np.unique(self.map[H.array])
        gens = np.unique(self.map[np.array(H.generators, dtype=np.intp)]) if H.generators else ()
        return Subgroup(self.target, tuple(elems.tolist()), tuple(np.asarray(gens).tolist()))

    def preimage(self, S: Subgroup) -> Subgroup:
        return _from_mask(self.source, S.mask[self.map])


def quotient(parent: FiniteGroup, N: Subgroup) -> QuotientMap:
    """Coset group parent/N with its canonical projection.

    Cosets are numbered by their smallest element, so the identity coset is 0.
    """
    witness = normality_witness(N)
    if witness is not None:
        raise NotNormal(*witness)
    coset = np.full(parent.order, -1, dtype=np.intp)
    reps: list[int] = []
    for g in range(parent.order):
        if coset[g] < 0:
            coset[parent.table[g, N.array]] = len(reps)
            reps.append(g)
    r = np.array(reps, dtype=np.intp)
    table = coset[parent.table[np.ix_(r, r)]]
    labels = [parent.labels[x] + "N" if len(N) > 1 else parent.labels[x] for x in reps]
    target = FiniteGroup(_frozen(table), _frozen(np.argmax(table == 0, axis=1)), tuple(labels),
                         f"{parent.name}/N" if parent.name else "")
    return QuotientMap(parent, target, N, _frozen(coset))
