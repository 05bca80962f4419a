"""Surface-kernel epimorphisms from genus-0 NEC groups onto signed finite groups."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import prod
from typing import Mapping, Sequence

import numpy as np

from . import kernels
from .groups import SignedGroup, subgroup_generated
from .recipes import realize
from .signatures import (
    CanonicalPresentation,
    Generator,
    NecSignature,
    SignatureError,
    canonical_presentation,
    format_signature,
    kernel_surface_genus,
)

__all__ = [
    "EpiError",
    "EnumerationBudgetError",
    "SurfaceKernelEpi",
    "target_group",
    "check_surface_kernel",
    "enumerate_surface_kernel_epis",
    "kernel_genus",
    "theta1",
    "theta2",
    "theta3",
    "coset_action",
    "right_cosets",
]

DEFAULT_MAX_NODES = 10**8
DEFAULT_MAX_RESULTS = 10**6


class EpiError(ValueError):
    pass


class EnumerationBudgetError(EpiError):
    pass


@dataclass(frozen=True)
class SurfaceKernelEpi:
    signature: NecSignature
    target: SignedGroup
    images: tuple[int, ...]  # aligned with presentation.generators

    @property
    def presentation(self) -> CanonicalPresentation:
        return canonical_presentation(self.signature)

    @property
    def mapping(self) -> dict[Generator, int]:
        return dict(zip(self.presentation.generators, self.images))

    def image(self, name: str) -> int:
        for g, x in zip(self.presentation.generators, self.images):
            if g.name == name:
                return x
        raise KeyError(name)

    def to_record(self, recipe_ref: str | None = None) -> dict:
        """JSON-ready record with a stable field order."""
        G = self.target
        return {
            "signature": format_signature(self.signature),
            "group": recipe_ref or G.name,
            "images": {g.name: G.word_of(x) for g, x in zip(self.presentation.generators, self.images)},
        }


_TARGETS = {
    "D": {
        "group": {"kind": "dihedral", "n": "p", "rotation": "r", "reflection": "s"},
        "anticonformal": ["s"],
        "phi": "r",
    },
    "C": {
        "group": {"kind": "direct", "factors": [
            {"kind": "cyclic", "n": "p", "gen": "r"},
            {"kind": "cyclic", "n": 2, "gen": "s"},
        ]},
        "anticonformal": ["s"],
        "phi": "r",
    },
}

_target_cache: dict[tuple[str, int], SignedGroup] = {}


def target_group(kind: str, p: int) -> SignedGroup:
    """D_p (``"D"``) or C_2p = C_p x C_2 (``"C"``) with s anticonformal and phi = r."""
    kind = {"d": "D", "D_p": "D", "c": "C", "C_2p": "C"}.get(kind, kind)
    if kind not in _TARGETS:
        raise EpiError(f"unknown target {kind!r}")
    key = (kind, p)
    if key not in _target_cache:
        name = f"D_{p}" if kind == "D" else f"C_{2 * p}"
        _target_cache[key] = realize(_TARGETS[kind], {"p": p}, name=name)
    return _target_cache[key]


def _eval_word(G: SignedGroup, word, images: Mapping[Generator, int]) -> int:
    out = G.identity
    for gen, e in word:
        out = G.mul(out, G.power(images[gen], e))
    return out


def check_surface_kernel(sig: NecSignature, G: SignedGroup,
                         images: Mapping[Generator, int] | Sequence[int]) -> str | None:
    """Return None when the images define a surface-kernel epimorphism, else the first failure.

    Checked in order: every canonical relator, exact orders of the elliptic
    generators, reflections and reflection products, orientation of each
    image, and surjectivity.
    """
    pres = canonical_presentation(sig)
    if not isinstance(images, Mapping):
        images = dict(zip(pres.generators, images))
    missing = [g.name for g in pres.generators if g not in images]
    if missing:
        return f"no image for {', '.join(missing)}"
    for word, label in zip(pres.relators, pres.relator_labels):
        if _eval_word(G, word, images) != G.identity:
            return f"relator {label} is not sent to the identity"
    for g, m in zip(pres.generators, sig.proper_periods):
        o = G.orders[images[g]]
        if o != m:
            return f"torsion: {g} has image of order {o}, expected {m}"
    for i, cycle in enumerate(sig.period_cycles, start=1):
        cs = [Generator("c", i, j) for j in range(len(cycle) + 1)]
        for c in cs:
            o = G.orders[images[c]]
            if o != 2:
                return f"torsion: {c} has image of order {o}, expected 2"
        for j, n in enumerate(cycle, start=1):
            o = G.orders[G.mul(images[cs[j - 1]], images[cs[j]])]
            if o != n:
                return f"torsion: {cs[j - 1]} {cs[j]} has image of order {o}, expected {n}"
    for g in pres.generators:
        want = -1 if g.orientation_reversing else 1
        if G.w[images[g]] != want:
            kind = "anticonformal" if want == -1 else "conformal"
            return f"orientation: image of {g} must be {kind}"
    if subgroup_generated(G, images.values()).order != G.n:
        return "images do not generate the group"
    return None


def _search_args(sig: NecSignature, G: SignedGroup):
    if sig.genus != 0 or not sig.orientable or sig.k > 1:
        raise EpiError("enumeration supports genus-0 orientable signatures with at most one period cycle")
    links = sig.period_cycles[0] if sig.k else ()
    return (
        G.ktable,
        G.kinverse,
        kernels.prepare_vector(np.asarray(G.orders, dtype=np.int32)),
        kernels.prepare_vector(np.asarray(G.w, dtype=np.int32)),
        G.identity,
        list(sig.proper_periods),
        list(links),
        bool(sig.k),
    )


def search_space_estimate(sig: NecSignature, G: SignedGroup) -> int:
    """Upper bound on the number of leaves the depth-first search can visit."""
    refl = sum(1 for g in range(G.n) if G.w[g] == -1 and G.orders[g] == 2)
    xs = [sum(1 for g in range(G.n) if G.w[g] == 1 and G.orders[g] == m) for m in sig.proper_periods]
    est = prod(xs) if xs else 1
    if sig.k:
        est *= refl ** (len(sig.period_cycles[0]) + 1)
    return est


def _shard_worker(payload):
    table, inv, orders, w, identity, periods, links, has_cycle, limit, shard, nshards = payload
    return kernels.search_epis(kernels.prepare(np.asarray(table)), kernels.prepare_vector(np.asarray(inv)),
                               kernels.prepare_vector(np.asarray(orders)),
                               kernels.prepare_vector(np.asarray(w)), identity, periods, links,
                               has_cycle, limit, shard, nshards)


def enumerate_surface_kernel_epis(
    sig: NecSignature,
    G: SignedGroup,
    max_results: int = DEFAULT_MAX_RESULTS,
    max_nodes: int = DEFAULT_MAX_NODES,
    jobs: int = 1,
) -> list[SurfaceKernelEpi]:
    """Every surface-kernel epimorphism, sorted by image tuple.

    Raises EnumerationBudgetError when the search-space estimate exceeds
    ``max_nodes`` or more than ``max_results`` epimorphisms exist.
    """
    est = search_space_estimate(sig, G)
    if est > max_nodes:
        raise EnumerationBudgetError(f"search space estimate {est} exceeds {max_nodes}")
    args = _search_args(sig, G)
    limit = max_results + 1
    if jobs <= 1:
        found, _ = kernels.search_epis(*args, limit)
    else:
        payloads = [
            (np.asarray(G.table), np.asarray(G.inverse, dtype=np.int32),
             np.asarray(G.orders, dtype=np.int32), np.asarray(G.w, dtype=np.int32),
             *args[4:], limit, k, jobs)
            for k in range(jobs)
        ]
        found = []
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part, _ in pool.map(_shard_worker, payloads):
                found.extend(part)
    if len(found) > max_results:
        raise EnumerationBudgetError(f"more than {max_results} epimorphisms")
    found = sorted(set(found))
    return [SurfaceKernelEpi(sig, G, tuple(imgs)) for imgs in found]


def kernel_genus(epi: SurfaceKernelEpi) -> int:
    return kernel_surface_genus(epi.signature, epi.target.n)


def _validated(sig: NecSignature, G: SignedGroup, images: Sequence[int]) -> SurfaceKernelEpi:
    problem = check_surface_kernel(sig, G, images)
    if problem:
        raise EpiError(f"construction fails on {format_signature(sig)}: {problem}")
    return SurfaceKernelEpi(sig, G, tuple(images))


def _alternating(G: SignedGroup, count: int) -> list[int]:
    s, r = G.names["s"], G.names["r"]
    sr = G.mul(s, r)
    return [s if j % 2 == 0 else sr for j in range(count)]


def theta1(p: int, g: int) -> SurfaceKernelEpi:
    """Species -1 example onto D_p on (0,+,[p,p],{(p,...,p)}) with 2(g-p+1)/(p-1) link periods.

    Reflections alternate s, sr; x_1 -> r, e -> r^eps, x_2 -> r^mu with
    1 + eps + mu = 0 mod p, eps the least value closing the cycle relator.
    """
    num = 2 * (g - p + 1)
    if num % (p - 1) or num // (p - 1) < 1:
        raise EpiError(f"theta1 needs (p-1) | 2(g-p+1) with at least one link period (p={p}, g={g})")
    v = num // (p - 1)
    sig = NecSignature(0, True, (p, p), ((p,) * v,))
    G = target_group("D", p)
    r = G.names["r"]
    cs = _alternating(G, v + 1)
    for eps in range(p):
        e = G.power(r, eps)
        if G.mul(cs[0], G.inv(e), cs[-1], e) == G.identity:
            break
    else:
        raise EpiError(f"no connector image closes the period cycle (p={p}, g={g})")
    mu = (-1 - eps) % p
    return _validated(sig, G, [r, G.power(r, mu), e, *cs])


def theta2(p: int, g: int) -> SurfaceKernelEpi:
    """Species +1 example onto D_p on (0,+,[-],{(p,...,p)}): reflections alternate s, sr and e -> 1."""
    if g % 2:
        raise EpiError(f"theta2 needs even genus, got {g}")
    num = 2 * (g + p - 1)
    if num % (p - 1):
        raise EpiError(f"theta2 needs (p-1) | 2(g+p-1) (p={p}, g={g})")
    v = num // (p - 1)
    sig = NecSignature(0, True, (), ((p,) * v,))
    G = target_group("D", p)
    return _validated(sig, G, [G.identity, *_alternating(G, v + 1)])


def _least_exponents(count: int, total: int, p: int) -> list[int]:
    """Lexicographically least (a_1..a_count) in [1, p-1] with sum = total mod p."""
    out = []
    for i in range(count):
        left = count - i - 1
        for a in range(1, p):
            rest = (total - sum(out) - a) % p
            if left == 0 and rest != 0:
                continue
            if left == 1 and rest == 0:
                continue
            out.append(a)
            break
        else:
            raise EpiError(f"no exponents in [1, {p - 1}] sum to {total} mod {p}")
    return out


def theta3(p: int, g: int, target: str = "D", connector: int | str = 0) -> SurfaceKernelEpi:
    """Examples on (0,+,[p,...,p],{(-)}) with (p-1)(u-1) = g.

    The reflection goes to s, e to r^connector (a power of r, or a word),
    and the elliptic generators to powers of r whose product is the inverse
    of e's image. Onto D_p only e -> 1 closes the cycle relator.
    """
    if g % 2:
        raise EpiError(f"theta3 needs even genus, got {g}")
    if g % (p - 1):
        raise EpiError(f"theta3 needs (p-1) | g (p={p}, g={g})")
    u = g // (p - 1) + 1
    sig = NecSignature(0, True, (p,) * u, ((),))
    G = target_group(target, p)
    r, s = G.names["r"], G.names["s"]
    e = G.power(r, connector) if isinstance(connector, int) else G.word(connector)
    b = next((k for k in range(p) if G.power(r, k) == e), None)
    if b is None:
        raise EpiError(f"connector image {connector!r} is not a power of r")
    xs = [G.power(r, a) for a in _least_exponents(u, -b, p)]
    return _validated(sig, G, [*xs, e, s])


def right_cosets(G: SignedGroup, H) -> list[tuple[int, ...]]:
    """Right cosets Hg, ordered by least element."""
    elems = list(H.elements)
    seen: set[int] = set()
    out = []
    for g in range(G.n):
        if g in seen:
            continue
        coset = tuple(sorted(G.mul(h, g) for h in elems))
        seen.update(coset)
        out.append(coset)
    return out


def coset_action(epi: SurfaceKernelEpi, H) -> dict[Generator, tuple[int, ...]]:
    """Permutation of the right cosets of H induced by right multiplication with each image."""
    G = epi.target
    cosets = right_cosets(G, H)
    where = {x: i for i, c in enumerate(cosets) for x in c}
    out = {}
    for gen, x in zip(epi.presentation.generators, epi.images):
        out[gen] = tuple(where[G.mul(c[0], x)] for c in cosets)
    return out


def signature_ok_for_enumeration(sig: NecSignature) -> bool:
    try:
        _search_args(sig, target_group("D", 3))
    except (EpiError, SignatureError):
        return False
    return True
