"""Group recipes: constructor trees realized as signed multiplication tables.

A recipe is plain data (the same shape as the ledger's ``recipe`` field)::

    {"group": <tree>, "anticonformal": ["sigma"], "phi": "phihat^{q}",
     "aliases": {"phi": "phihat^{q}"}}

with ``<tree>`` one of::

    {"kind": "cyclic", "n": <int expr>, "gen": name}
    {"kind": "dihedral", "n": <int expr>, "rotation": name, "reflection": name}
    {"kind": "direct", "factors": [<tree>, ...]}
    {"kind": "semidirect", "normal": <tree>, "acting": <tree>,
     "action": {acting_gen: {normal_gen: word in the normal part}}}
    {"kind": "named", "group": "A4" | "S4" | "A5", "gens": {"tau": name, "alpha": name}}

Integer fields and ``{...}`` exponents are expressions in the parameters.
Actions are given extensionally and verified; generators left out of an
action map are fixed, acting generators left out act trivially.

Family expressions (``"D_p x C_2"``, ``"C_{2p} : C_2"``, ``"C_p :_2 S4"``)
describe isomorphism types; ``:`` (or ``⋊``) stands for any semidirect
product, optionally restricted to actions of a given order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .expr import evaluate
from .groups import (
    FiniteGroup,
    GroupError,
    SignedGroup,
    automorphisms,
    extend_hom,
    invariants,
    is_isomorphic,
    is_normal,
    minimal_generators,
    subgroup_generated,
)

__all__ = [
    "RecipeError",
    "realize",
    "build_plain",
    "cyclic",
    "dihedral",
    "direct",
    "semidirect",
    "named",
    "parse_family",
    "format_family",
    "family_order",
    "family_groups",
    "matches_family",
    "identify_family",
    "SPHERICAL_FAMILIES",
    "CATALOG",
]


class RecipeError(GroupError):
    pass


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, gen: str = "r") -> FiniteGroup:
    if n < 1:
        raise RecipeError(f"cyclic group of order {n}")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    names = {gen: 1 % n}
    return FiniteGroup(table, [(k,) for k in range(n)], names, name=f"C_{n}")


def dihedral(n: int, rotation: str = "r", reflection: str = "s") -> FiniteGroup:
    """D_n of order 2n; element 2k+e is r^k s^e."""
    if n < 1:
        raise RecipeError(f"dihedral group D_{n}")
    idx = np.arange(2 * n)
    k, e = idx // 2, idx % 2
    sign = np.where(e == 1, -1, 1)
    kk = (k[:, None] + sign[:, None] * k[None, :]) % n
    ee = e[:, None] ^ e[None, :]
    table = 2 * kk + ee
    names = {rotation: 2 % (2 * n), reflection: 1}
    return FiniteGroup(table, [(a, b) for a, b in zip(k, e)], names, name=f"D_{n}")


def _merge_names(*maps: dict, strict: bool = True) -> dict:
    out: dict = {}
    for m in maps:
        for nm, g in m.items():
            if nm in out:
                if strict:
                    raise RecipeError(f"generator name {nm!r} used twice")
                while nm in out:
                    nm += "'"
            out[nm] = g
    return out


def direct(A: FiniteGroup, B: FiniteGroup, strict: bool = False) -> FiniteGroup:
    na, nb = A.n, B.n
    idx = np.arange(na * nb)
    a, b = idx // nb, idx % nb
    table = A.table[a[:, None], a[None, :]] * nb + B.table[b[:, None], b[None, :]]
    names = _merge_names(
        {nm: g * nb + B.identity for nm, g in A.names.items()},
        {nm: A.identity * nb + g for nm, g in B.names.items()},
        strict=strict,
    )
    labels = [A.labels[x] + B.labels[y] for x, y in zip(a, b)]
    return FiniteGroup(table, labels, names, name=f"{A.name}x{B.name}")


def _compose(f: tuple, g: tuple) -> tuple:
    # (f o g)(x) = f(g(x))
    return tuple(f[x] for x in g)


def _semidirect_from_perms(N: FiniteGroup, A: FiniteGroup, perms: np.ndarray,
                           name: str = "", strict: bool = True) -> FiniteGroup:
    """N x| A with a n a^-1 = perms[a][n]; element n*|A| + a is the pair (n, a)."""
    nn, na = N.n, A.n
    idx = np.arange(nn * na)
    n_of, a_of = idx // na, idx % na
    moved = perms[a_of[:, None], n_of[None, :]]
    table = N.table[n_of[:, None], moved] * na + A.table[a_of[:, None], a_of[None, :]]
    names = _merge_names(
        {nm: g * na + A.identity for nm, g in N.names.items()},
        {nm: N.identity * na + g for nm, g in A.names.items()},
        strict=strict,
    )
    labels = [N.labels[x] + A.labels[y] for x, y in zip(n_of, a_of)]
    return FiniteGroup(table, labels, names, name=name or f"({N.name}):{A.name}")


def _action_perms(A: FiniteGroup, gens: Sequence[int], images: Sequence[tuple], nn: int):
    """Extend automorphisms on A's generators to a hom A -> Aut(N), as an (|A|, |N|) array."""
    ident = tuple(range(nn))
    hom = extend_hom(A, gens, _compose, ident, images)
    if hom is None:
        return None
    return np.array([hom[a] for a in range(A.n)], dtype=np.int32)


def _automorphism_from_images(N: FiniteGroup, images: dict[str, int]) -> tuple[int, ...]:
    gens = [N.names[nm] for nm in sorted(N.names)]
    if subgroup_generated(N, gens).order != N.n:
        raise RecipeError(f"named generators of {N.name} do not generate it")
    imgs = [images.get(nm, N.names[nm]) for nm in sorted(N.names)]
    f = extend_hom(N, gens, lambda a, b: int(N.table[a, b]), N.identity, imgs)
    if f is None:
        raise RecipeError(f"action on {N.name} does not respect its relations")
    perm = tuple(f[x] for x in range(N.n))
    if len(set(perm)) != N.n:
        raise RecipeError(f"action on {N.name} is not bijective")
    return perm


def semidirect(N: FiniteGroup, A: FiniteGroup, action: dict[str, dict[str, int]],
               name: str = "") -> FiniteGroup:
    """N x| A where ``action[a][x]`` is the image (an element of N) of N's generator x under a."""
    for nm in action:
        if nm not in A.names:
            raise RecipeError(f"acting generator {nm!r} not in {A.name}")
    agens = sorted(A.names)
    images = [_automorphism_from_images(N, action.get(nm, {})) for nm in agens]
    perms = _action_perms(A, [A.names[nm] for nm in agens], images, N.n)
    if perms is None:
        raise RecipeError(f"action of {A.name} on {N.name} is not a homomorphism")
    return _semidirect_from_perms(N, A, perms, name)


def _perm_group(gens: dict[str, tuple], name: str) -> FiniteGroup:
    ident = tuple(range(len(next(iter(gens.values())))))
    elems = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens.values():
                y = _compose(x, g)
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    order = sorted(elems)
    pos = {e: i for i, e in enumerate(order)}
    table = [[pos[_compose(a, b)] for b in order] for a in order]
    names = {nm: pos[g] for nm, g in gens.items()}
    return FiniteGroup(table, order, names, name=name)


# generators tau (involution) and alpha with alpha^k = tau^2 = (alpha tau)^m = 1
_NAMED = {"A4": (4, 3, 3, 12), "S4": (4, 3, 4, 24), "A5": (5, 5, 3, 60)}


@lru_cache(maxsize=None)
def _named_perms(kind: str) -> tuple[tuple, tuple]:
    degree, k, m, order = _NAMED[kind]
    alpha = tuple(list(range(1, k)) + [0] + list(range(k, degree)))  # a k-cycle
    for tau in permutations(range(degree)):
        if tau == tuple(range(degree)) or _compose(tau, tau) != tuple(range(degree)):
            continue
        at = _compose(alpha, tau)
        x, m_found = at, 1
        while x != tuple(range(degree)):
            x = _compose(x, at)
            m_found += 1
        if m_found != m:
            continue
        if _perm_group({"t": tau, "a": alpha}, kind).n == order:
            return tau, alpha
    raise RecipeError(f"no generators found for {kind}")  # pragma: no cover


def named(kind: str, tau: str = "tau", alpha: str = "alpha") -> FiniteGroup:
    kind = {"Σ4": "S4", "Sigma4": "S4"}.get(kind, kind)
    if kind not in _NAMED:
        raise RecipeError(f"unknown named group {kind!r}")
    t, a = _named_perms(kind)
    return _perm_group({tau: t, alpha: a}, kind)


# ---------------------------------------------------------------------------
# realization


def _int(value, params) -> int:
    out = evaluate(value, params)
    if not isinstance(out, int) or isinstance(out, bool):
        raise RecipeError(f"{value!r} does not evaluate to an integer")
    return out


def build_plain(tree: dict, params: dict) -> FiniteGroup:
    """Build the (unsigned) group described by a constructor tree."""
    kind = tree.get("kind")
    if kind == "cyclic":
        return cyclic(_int(tree["n"], params), tree.get("gen", "r"))
    if kind == "dihedral":
        return dihedral(_int(tree["n"], params), tree.get("rotation", "r"),
                        tree.get("reflection", "s"))
    if kind == "direct":
        factors = [build_plain(f, params) for f in tree["factors"]]
        out = factors[0]
        for f in factors[1:]:
            out = direct(out, f, strict=True)
        return out
    if kind == "semidirect":
        N = build_plain(tree["normal"], params)
        A = build_plain(tree["acting"], params)
        action = {
            a: {x: N.word(w, params) for x, w in imgs.items()}
            for a, imgs in tree.get("action", {}).items()
        }
        return semidirect(N, A, action)
    if kind == "named":
        gens = tree.get("gens", {})
        return named(tree["group"], gens.get("tau", "tau"), gens.get("alpha", "alpha"))
    raise RecipeError(f"unknown recipe kind {kind!r}")


def realize(recipe: dict, params: dict | None = None, name: str = "G") -> SignedGroup:
    """Realize a recipe as a SignedGroup, checking every invariant.

    The orientation character is -1 on the ``anticonformal`` generators and
    +1 on the other named generators; it must extend to a homomorphism onto
    {+1, -1}. ``phi`` must have order p and generate a normal subgroup.
    """
    params = dict(params or {})
    plain = build_plain(recipe["group"], params)
    base_names = sorted(plain.names)
    anti = set(recipe.get("anticonformal", []))
    unknown = anti - set(base_names)
    if unknown:
        raise RecipeError(f"anticonformal generators {sorted(unknown)} are not named generators")
    gens = [plain.names[nm] for nm in base_names]
    signs = [-1 if nm in anti else 1 for nm in base_names]
    w = extend_hom(plain, gens, lambda a, b: a * b, 1, signs)
    if w is None or len(w) != plain.n:
        raise RecipeError("anticonformal generators do not define an orientation character")
    orientation = [w[g] for g in range(plain.n)]
    if sum(1 for v in orientation if v == 1) * 2 != plain.n:
        raise RecipeError("conformal elements do not form an index-2 subgroup")
    names = dict(plain.names)
    for alias, word in recipe.get("aliases", {}).items():
        names[alias] = plain.word(word, params)
    plain.names = names
    p = _int(recipe.get("p", "p"), params)
    phi = plain.word(recipe.get("phi", "phi"), params)
    G = SignedGroup(plain.table, orientation, phi, p, labels=plain.labels, names=names,
                    generators=gens, name=name)
    if G.orders[phi] != p:
        raise RecipeError(f"phi has order {G.orders[phi]}, expected {p}")
    if G.w[phi] != 1:
        raise RecipeError("phi is anticonformal")
    if not is_normal(G, subgroup_generated(G, [phi])):
        raise RecipeError("<phi> is not normal")
    return G


# ---------------------------------------------------------------------------
# family expressions


@dataclass(frozen=True)
class Fam:
    op: str  # "C", "D", "named", "x", ":", "G"
    arg: object = None
    left: "Fam | None" = None
    right: "Fam | None" = None
    action_order: int | None = None


_FTOKEN = re.compile(
    r"\s*(?:(?P<brace>\{[^}]*\})|(?P<num>\d+)|(?P<sym>×|⋊|:|\(|\)|_)|(?P<word>[A-Za-zΣ][A-Za-z0-9]*))"
)


class _FamParser:
    def __init__(self, text: str, params: dict):
        self.text = text
        self.params = params
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _FTOKEN.match(text, pos)
            if not m:
                if text[pos:].strip() == "":
                    break
                raise RecipeError(f"bad family expression {text!r} at {pos}")
            self.toks.append((m.lastgroup, m.group(m.lastgroup)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Fam:
        out = self.expr()
        if self.i != len(self.toks):
            raise RecipeError(f"trailing input in family expression {self.text!r}")
        return out

    def expr(self) -> Fam:
        left = self.term()
        while True:
            kind, tok = self.peek()
            if (kind == "sym" and tok in ("×",)) or (kind == "word" and tok == "x"):
                self.take()
                left = Fam("x", left=left, right=self.term())
            elif kind == "sym" and tok in (":", "⋊"):
                self.take()
                order = None
                if self.peek() == ("sym", "_"):
                    self.take()
                    order = self.subscript()
                left = Fam(":", left=left, right=self.term(), action_order=order)
            else:
                return left

    def subscript(self) -> int:
        kind, tok = self.take()
        if kind == "num":
            return int(tok)
        if kind == "word":
            return int(evaluate(tok, self.params))
        if kind == "brace":
            body = re.sub(r"(\d)([A-Za-z(])", r"\1*\2", tok[1:-1])
            return int(evaluate(body, self.params))
        raise RecipeError(f"bad subscript in {self.text!r}")

    def term(self) -> Fam:
        kind, tok = self.take()
        if kind == "sym" and tok == "(":
            inner = self.expr()
            if self.take() != ("sym", ")"):
                raise RecipeError(f"unbalanced parentheses in {self.text!r}")
            return inner
        if kind == "word":
            m = re.fullmatch(r"([CD])(\d+)", tok)
            if m:
                return Fam(m.group(1), int(m.group(2)))
            if tok in ("C", "D"):
                if self.peek() == ("sym", "_"):
                    self.take()
                return Fam(tok, self.subscript())
            if tok in ("A4", "A5", "S4", "Σ4", "Sigma4"):
                return Fam("named", {"Σ4": "S4", "Sigma4": "S4"}.get(tok, tok))
            if tok in ("A", "S", "Σ", "Sigma") and self.peek() == ("sym", "_"):
                self.take()
                k = self.subscript()
                return Fam("named", ("S" if tok != "A" else "A") + str(k))
            if tok == "G":
                return Fam("G")
        raise RecipeError(f"unexpected {tok!r} in family expression {self.text!r}")


def parse_family(text: str, params: dict | None = None) -> Fam:
    return _FamParser(text, params or {}).parse()


def format_family(f: Fam) -> str:
    if f.op in ("C", "D"):
        return f"{f.op}_{f.arg}"
    if f.op == "named":
        return {"S4": "Σ_4", "A4": "A_4", "A5": "A_5"}[f.arg]
    if f.op == "G":
        return "G"

    def side(x: Fam, op: str) -> str:
        s = format_family(x)
        if x.op in ("x", ":") and (x.op != op or x is f.right):
            return f"({s})"
        return s

    if f.op == "x":
        return f"{side(f.left, 'x')}×{side(f.right, 'x')}"
    sub = f"_{f.action_order}" if f.action_order else ""
    return f"{side(f.left, ':')}⋊{sub}{side(f.right, ':')}"


def family_order(f: Fam) -> int:
    if f.op == "C":
        return f.arg
    if f.op == "D":
        return 2 * f.arg
    if f.op == "named":
        return _NAMED[f.arg][3]
    if f.op in ("x", ":"):
        return family_order(f.left) * family_order(f.right)
    raise RecipeError("the whole-group marker G has no intrinsic order")


def _dedupe(groups: list[FiniteGroup]) -> list[FiniteGroup]:
    out: list[FiniteGroup] = []
    for g in groups:
        if not any(invariants(g) == invariants(h) and is_isomorphic(g, h)[0] for h in out):
            out.append(g)
    return out


def _perm_order(perm: tuple) -> int:
    ident = tuple(range(len(perm)))
    x, k = perm, 1
    while x != ident:
        x = _compose(x, perm)
        k += 1
    return k


@lru_cache(maxsize=256)
def _family_groups_cached(f: Fam) -> tuple[FiniteGroup, ...]:
    if f.op == "C":
        return (cyclic(f.arg),)
    if f.op == "D":
        return (dihedral(f.arg),)
    if f.op == "named":
        return (named(f.arg),)
    if f.op == "x":
        return tuple(_dedupe([direct(a, b, strict=False) for a in _family_groups_cached(f.left)
                              for b in _family_groups_cached(f.right)]))
    if f.op == ":":
        out = []
        for N in _family_groups_cached(f.left):
            auts = automorphisms(N)
            for A in _family_groups_cached(f.right):
                agens = minimal_generators(A)
                cands = [[a for a in auts if A.orders[g] % _perm_order(a) == 0] for g in agens]
                out.extend(_all_actions(N, A, agens, cands, f.action_order))
        return tuple(_dedupe(out))
    raise RecipeError(f"cannot realize family node {f.op!r}")


def _all_actions(N, A, agens, cands, action_order):
    chosen: list[tuple] = []
    found = []

    def rec(i):
        if i == len(agens):
            perms = _action_perms(A, agens, chosen, N.n)
            if perms is None:
                return
            if action_order is not None:
                image = {tuple(p) for p in perms.tolist()}
                if len(image) != action_order:
                    return
            found.append(_semidirect_from_perms(N, A, perms, strict=False))
            return
        for a in cands[i]:
            chosen.append(a)
            rec(i + 1)
            chosen.pop()

    rec(0)
    return found


def family_groups(text: str, params: dict | None = None) -> tuple[FiniteGroup, ...]:
    """All isomorphism types (pairwise non-isomorphic) described by a family expression."""
    return _family_groups_cached(parse_family(text, params))


def matches_family(H: FiniteGroup, text: str, params: dict | None = None,
                   whole: FiniteGroup | None = None) -> bool:
    """True if H is isomorphic to some group in the family (``G`` means ``whole``)."""
    f = parse_family(text, params)
    if f.op == "G":
        if whole is None:
            raise RecipeError("family 'G' needs the ambient group")
        return H.n == whole.n
    if family_order(f) != H.n:
        return False
    inv = invariants(H)
    return any(invariants(c) == inv and is_isomorphic(H, c)[0]
               for c in _family_groups_cached(f))


# subgroups of these are the finite groups of (anti)conformal automorphisms of the sphere
SPHERICAL_FAMILIES = ("D_q", "C_q x C_2", "D_q : C_2", "A4 x C_2", "S4", "S4 x C_2", "A5 x C_2")

# identification order: the first family (over the single parameter m) that matches wins
CATALOG = (
    "C_m x C_2 x C_2 x C_2",
    "C_m x C_2 x C_2",
    "C_m x C_2",
    "C_m",
    "D_m x C_2 x C_2 x C_2",
    "D_m x C_2 x C_2",
    "D_m x C_2",
    "D_m",
    "A4",
    "S4",
    "A5",
    "A4 x C_2",
    "S4 x C_2",
    "A5 x C_2",
    "D_m x A4",
    "C_m x A4",
    "D_m x S4",
    "C_m x S4",
    "D_m x A5",
    "C_m x A5",
    "C_m :_2 S4",
    "D_m : C_2",
    "C_m : C_2",
    "(C_m x C_2) : C_2",
    "(C_m x C_2 x C_2) : C_2",
    "((C_2 x C_2) :_3 C_9) : C_2",
    "((C_2 x C_2) :_3 C_9) x C_2",
    "(((C_2 x C_2) :_3 C_9) : C_2) x C_2",
    "(C_m x C_2 x C_2) :_3 C_6",
)


def _catalog_instances(n: int, catalog=CATALOG):
    for template in catalog:
        if "m" not in template:
            f = parse_family(template)
            if family_order(f) == n:
                yield f
            continue
        base = family_order(parse_family(template, {"m": 1}))
        if n % base:
            continue
        m = n // base
        if m < 2 and template != "C_m":
            continue  # C_1 / D_1 factors only duplicate smaller templates
        yield parse_family(template, {"m": m})


def identify_family(G: FiniteGroup, catalog=CATALOG) -> str:
    """Name of the first catalog family isomorphic to G, or ``"unrecognized"``."""
    inv = invariants(G)
    for f in _catalog_instances(G.n, catalog):
        if any(invariants(c) == inv and is_isomorphic(G, c)[0]
               for c in _family_groups_cached(f)):
            return format_family(f)
    return "unrecognized"
