"""Finite groups as multiplication tables, with an optional orientation character.

Elements are indices ``0..n-1``; ``labels[i]`` keeps the normal form the
element was built from (an exponent tuple for the recipe constructors), and
indices follow the lexicographic order of those labels. All queries are
read-only, so a realized group can be shared freely.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .expr import evaluate

__all__ = [
    "GroupError",
    "FiniteGroup",
    "SignedGroup",
    "Subgroup",
    "element_order",
    "conjugacy_classes",
    "subgroup_generated",
    "normalizer",
    "centralizer",
    "is_normal",
    "quotient_by_normal",
    "anticonformal_involutions",
    "extend_hom",
    "automorphisms",
    "is_isomorphic",
    "invariants",
    "ISO_BOUND",
]

ISO_BOUND = 2000


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Subgroup:
    elements: tuple[int, ...]
    gens: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, g) -> bool:
        return g in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def __le__(self, other: "Subgroup") -> bool:
        return self._set <= other._set


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(
        self,
        table,
        labels: Sequence | None = None,
        names: dict[str, int] | None = None,
        generators: Sequence[int] | None = None,
        name: str = "G",
    ):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        n = table.shape[0]
        if table.shape != (n, n):
            raise GroupError("multiplication table must be square")
        self.table = table
        self.table.setflags(write=False)
        self.n = n
        self.labels = tuple(labels) if labels is not None else tuple(range(n))
        self.names = dict(names or {})
        self.name = name
        ident = [i for i in range(n) if np.array_equal(table[i], np.arange(n))]
        if len(ident) != 1:
            raise GroupError("table has no unique identity")
        self.identity = ident[0]
        inv = np.argmax(table == self.identity, axis=1)
        if not np.all(table[np.arange(n), inv] == self.identity):
            raise GroupError("table has elements without inverses")
        self.inverse = tuple(int(v) for v in inv)
        if generators is None:
            generators = sorted(set(self.names.values()))
        generators = [int(g) for g in generators]
        if kernels.closure_size(self.ktable, self.identity, generators) != n:
            generators = list(_subgroup_from_elements(self, range(n)).gens)
        self.generators = tuple(generators)

    # -- arithmetic -----------------------------------------------------

    @cached_property
    def ktable(self):
        return kernels.prepare(self.table)

    @cached_property
    def kinverse(self):
        return kernels.prepare_vector(np.asarray(self.inverse, dtype=np.int32))

    def mul(self, *elems: int) -> int:
        out = self.identity
        t = self.table
        for e in elems:
            out = int(t[out, e])
        return out

    def inv(self, g: int) -> int:
        return self.inverse[g]

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inverse[g], -k
        out = self.identity
        t = self.table
        for _ in range(k):
            out = int(t[out, g])
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul(g, x, self.inverse[g])

    @cached_property
    def orders(self) -> tuple[int, ...]:
        return tuple(kernels.element_orders(self.ktable, self.identity))

    def order_of(self, g: int) -> int:
        return self.orders[g]

    @property
    def order(self) -> int:
        return self.n

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.n}>"

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def is_associative(self) -> bool:
        return bool(kernels.is_associative(self.ktable))

    # -- words ------------------------------------------------------------

    def word(self, text: str, params: dict | None = None) -> int:
        """Evaluate a word such as ``"sigma*phihat^{p*q/2}"`` or ``"s (r s)^2"``."""
        return _WordParser(self, text, params or {}).parse()

    @cached_property
    def _shortest_words(self) -> dict[int, tuple[tuple[str, int], ...]]:
        names = sorted(self.names.items())
        words = {self.identity: ()}
        queue = deque([self.identity])
        while queue:
            x = queue.popleft()
            for nm, g in names:
                y = int(self.table[x, g])
                if y not in words:
                    words[y] = words[x] + ((nm, 1),)
                    queue.append(y)
        return words

    def word_of(self, g: int) -> str:
        """A shortest word in the named generators (``"1"`` for the identity)."""
        letters = self._shortest_words.get(g)
        if letters is None:
            return f"#{g}"
        if not letters:
            return "1"
        out: list[list] = []
        for nm, _ in letters:
            if out and out[-1][0] == nm:
                out[-1][1] += 1
            else:
                out.append([nm, 1])
        return "*".join(nm if k == 1 else f"{nm}^{k}" for nm, k in out)

    # -- structure --------------------------------------------------------

    def subgroup_table(self, elems: Sequence[int], gens: Sequence[int] | None = None,
                       name: str = "H") -> "FiniteGroup":
        """The subgroup on ``elems`` as a group in its own right (indices re-numbered)."""
        elems = sorted(int(e) for e in elems)
        pos = {e: i for i, e in enumerate(elems)}
        sub = self.table[np.ix_(elems, elems)]
        lookup = np.full(self.n, -1, dtype=np.int32)
        lookup[elems] = np.arange(len(elems), dtype=np.int32)
        new = lookup[sub]
        if (new < 0).any():
            raise GroupError("element set is not closed under multiplication")
        names = {nm: pos[g] for nm, g in self.names.items() if g in pos}
        generators = [pos[g] for g in gens] if gens is not None else None
        return FiniteGroup(new, [self.labels[e] for e in elems], names, generators, name)


class SignedGroup(FiniteGroup):
    """A group with an orientation character w and a distinguished element phi of order p."""

    def __init__(self, table, orientation: Sequence[int], phi: int, p: int, **kw):
        super().__init__(table, **kw)
        self.w = tuple(int(v) for v in orientation)
        self.phi = int(phi)
        self.p = int(p)

    def check(self) -> list[str]:
        """Return the violated invariants (empty when all hold)."""
        problems = []
        w = np.asarray(self.w)
        if len(w) != self.n or not set(np.unique(w)) <= {1, -1}:
            problems.append("orientation character is not a +-1 vector")
            return problems
        if not np.array_equal(w[self.table], np.outer(w, w)):
            problems.append("orientation character is not multiplicative")
        if int((w == 1).sum()) * 2 != self.n:
            problems.append("conformal subgroup does not have index 2")
        if self.orders[self.phi] != self.p:
            problems.append(f"phi has order {self.orders[self.phi]}, expected {self.p}")
        if self.w[self.phi] != 1:
            problems.append("phi is anticonformal")
        cyc = subgroup_generated(self, [self.phi])
        if not is_normal(self, cyc):
            problems.append("<phi> is not normal")
        return problems

    @cached_property
    def conformal(self) -> tuple[int, ...]:
        return tuple(g for g in range(self.n) if self.w[g] == 1)


# ---------------------------------------------------------------------------
# word parser

_TOKEN = re.compile(r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<int>-?\d+)|(?P<brace>\{[^}]*\})|(?P<op>[()*^]))")


class _WordParser:
    def __init__(self, group: FiniteGroup, text: str, params: dict):
        self.g = group
        self.text = text
        self.params = params
        self.tokens = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise GroupError(f"bad word {self.text!r} at position {pos}")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def parse(self) -> int:
        value = self.product()
        if self.i != len(self.tokens):
            raise GroupError(f"unexpected {self.peek()[1]!r} in word {self.text!r}")
        return value

    def product(self) -> int:
        value = self.g.identity
        while True:
            kind, tok = self.peek()
            if kind == "op" and tok == "*":
                self.take()
                continue
            if kind in ("name", "int", "brace") or (kind == "op" and tok == "("):
                value = self.g.mul(value, self.factor())
            else:
                return value

    def factor(self) -> int:
        kind, tok = self.take()
        if kind == "op" and tok == "(":
            base = self.product()
            if self.take() != ("op", ")"):
                raise GroupError(f"unbalanced parentheses in {self.text!r}")
        elif kind == "int" and tok == "1":
            base = self.g.identity
        elif kind == "name":
            if tok not in self.g.names:
                raise GroupError(f"unknown generator {tok!r} in {self.text!r}")
            base = self.g.names[tok]
        else:
            raise GroupError(f"unexpected {tok!r} in word {self.text!r}")
        if self.peek() == ("op", "^"):
            self.take()
            kind, tok = self.take()
            if kind == "int":
                exp = int(tok)
            elif kind == "brace":
                exp = int(evaluate(tok[1:-1], self.params))
            else:
                raise GroupError(f"bad exponent in {self.text!r}")
            base = self.g.power(base, exp)
        return base


# ---------------------------------------------------------------------------
# operations


def element_order(G: FiniteGroup, g: int) -> int:
    return G.orders[g]


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = tuple(sorted(set(int(g) for g in gens)))
    elems = tuple(kernels.closure(G.ktable, G.identity, gens))
    return Subgroup(elems, gens)


def _subgroup_from_elements(G: FiniteGroup, elems: Sequence[int]) -> Subgroup:
    """Wrap a known subgroup's element list, picking a small generating set."""
    elems = tuple(sorted(int(e) for e in elems))
    target = len(elems)
    # larger orders first; ties broken by index
    cands = sorted(elems, key=lambda e: (-G.orders[e], e))
    gens: list[int] = []
    span = {G.identity}
    for e in cands:
        if len(span) == target:
            break
        if e in span:
            continue
        gens.append(e)
        span = set(kernels.closure(G.ktable, G.identity, gens))
    return Subgroup(elems, tuple(sorted(gens)))


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes sorted by (size, least element)."""
    labels = kernels.conjugacy_labels(G.ktable, G.kinverse, G.generators)
    classes: dict[int, list[int]] = {}
    for x, lab in enumerate(labels):
        classes.setdefault(lab, []).append(x)
    return sorted((tuple(c) for c in classes.values()), key=lambda c: (len(c), c[0]))


def _member_mask(G: FiniteGroup, H: Subgroup):
    mask = np.zeros(G.n, dtype=np.int32)
    mask[list(H.elements)] = 1
    return kernels.prepare_vector(mask)


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    gens = H.gens or (G.identity,)
    elems = kernels.normalizer_elements(G.ktable, G.kinverse, _member_mask(G, H), gens)
    return _subgroup_from_elements(G, elems)


def centralizer(G: FiniteGroup, S: Iterable[int]) -> Subgroup:
    elems = kernels.centralizer_elements(G.ktable, list(S))
    return _subgroup_from_elements(G, elems)


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    return normalizer(G, H).order == G.n


def quotient_by_normal(G: FiniteGroup, N: Subgroup, name: str = "G/N") -> FiniteGroup:
    if not is_normal(G, N):
        raise GroupError("cannot form a quotient by a non-normal subgroup")
    coset_of = np.full(G.n, -1, dtype=np.int64)
    reps: list[int] = []
    nel = list(N.elements)
    for g in range(G.n):
        if coset_of[g] >= 0:
            continue
        idx = len(reps)
        reps.append(g)
        coset_of[G.table[g, nel]] = idx
    reps_arr = np.asarray(reps)
    table = coset_of[G.table[np.ix_(reps_arr, reps_arr)]]
    names = {nm: int(coset_of[g]) for nm, g in G.names.items()}
    gens = sorted({int(coset_of[g]) for g in G.generators})
    return FiniteGroup(table, [G.labels[r] for r in reps], names, gens, name)


def anticonformal_involutions(G: SignedGroup) -> list[int]:
    return [g for g in range(G.n) if G.w[g] == -1 and G.orders[g] == 2]


# ---------------------------------------------------------------------------
# homomorphisms and isomorphism


def extend_hom(src: FiniteGroup, gens: Sequence[int], tgt_mul, tgt_identity,
               images: Sequence, within: Iterable[int] | None = None):
    """Extend generator images to a homomorphism, or return None.

    ``tgt_mul(a, b)`` multiplies in the target. The map is built along the
    Cayley graph of ``<gens>``; every edge x -> x*g is checked, so the result
    is a homomorphism on ``<gens>`` exactly when None is not returned.
    Returns a dict element -> image.
    """
    img = {src.identity: tgt_identity}
    queue = deque([src.identity])
    t = src.table
    while queue:
        x = queue.popleft()
        fx = img[x]
        for g, fg in zip(gens, images):
            y = int(t[x, g])
            fy = tgt_mul(fx, fg)
            old = img.get(y)
            if old is None:
                img[y] = fy
                queue.append(y)
            elif old != fy:
                return None
    return img


def minimal_generators(G: FiniteGroup) -> list[int]:
    """A small generating set: greedy by decreasing element order, then pruned."""
    sub = _subgroup_from_elements(G, range(G.n))
    gens = list(sub.gens)
    for g in list(gens):
        rest = [h for h in gens if h != g]
        if rest and kernels.closure_size(G.ktable, G.identity, rest) == G.n:
            gens = rest
    return gens


@dataclass(frozen=True)
class Invariants:
    order: int
    abelian: bool
    center: int
    classes: int
    profile: tuple  # sorted (element order, class size, count)


def invariants(G: FiniteGroup) -> Invariants:
    cached = getattr(G, "_invariants", None)
    if cached is not None:
        return cached
    classes = conjugacy_classes(G)
    profile = Counter((G.orders[c[0]], len(c)) for c in classes)
    center = sum(1 for c in classes if len(c) == 1)
    inv = Invariants(G.n, G.is_abelian, center, len(classes),
                     tuple(sorted((o, s, k) for (o, s), k in profile.items())))
    G._invariants = inv
    return inv


def _class_size_map(G: FiniteGroup) -> list[int]:
    cached = getattr(G, "_class_sizes", None)
    if cached is None:
        cached = [0] * G.n
        for c in conjugacy_classes(G):
            for x in c:
                cached[x] = len(c)
        G._class_sizes = cached
    return cached


def _bijective_homs(G: FiniteGroup, H: FiniteGroup):
    """Yield (gens, images, map) for every isomorphism G -> H, by backtracking."""
    gens = minimal_generators(G)
    gsize = _class_size_map(G)
    hsize = _class_size_map(H)
    cands = [
        [h for h in range(H.n) if H.orders[h] == G.orders[g] and hsize[h] == gsize[g]]
        for g in gens
    ]
    hmul = lambda a, b: int(H.table[a, b])  # noqa: E731
    chosen: list[int] = []

    def rec(i):
        if i == len(gens):
            f = extend_hom(G, gens, hmul, H.identity, chosen)
            if f is not None and len(set(f.values())) == H.n:
                yield tuple(gens), tuple(chosen), f
            return
        for h in cands[i]:
            chosen.append(h)
            # consistency on the subgroup generated so far
            if extend_hom(G, gens[: i + 1], hmul, H.identity, chosen) is not None:
                yield from rec(i + 1)
            chosen.pop()

    yield from rec(0)


def is_isomorphic(G: FiniteGroup, H: FiniteGroup, bound: int = ISO_BOUND):
    """Return (True, {generator of G: image in H}) or (False, None).

    Cheap invariants (order, abelianness, centre, class profile) are compared
    first; then generator images are searched by backtracking.
    """
    if G.n > bound or H.n > bound:
        raise GroupError(f"isomorphism test limited to order {bound}")
    if invariants(G) != invariants(H):
        return False, None
    for gens, images, _ in _bijective_homs(G, H):
        return True, dict(zip(gens, images))
    return False, None


def automorphisms(G: FiniteGroup) -> list[tuple[int, ...]]:
    """All automorphisms of G as image tuples (index -> image), identity first."""
    out = [tuple(f[x] for x in range(G.n)) for _, _, f in _bijective_homs(G, G)]
    ident = tuple(range(G.n))
    out.sort(key=lambda a: (a != ident, a))
    return out
