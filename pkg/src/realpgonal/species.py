"""Species of symmetries coming from epimorphisms onto D_p or C_2p."""

from __future__ import annotations

from dataclasses import dataclass, field

from .epimorphisms import (
    SurfaceKernelEpi,
    coset_action,
    enumerate_surface_kernel_epis,
    target_group,
    DEFAULT_MAX_NODES,
)
from .groups import SignedGroup, subgroup_generated
from .signatures import format_signature, is_prime, real_cyclic_signatures

__all__ = [
    "SpeciesError",
    "SpeciesResult",
    "SchreierGraph",
    "target_kind",
    "species",
    "schreier_graph",
    "schreier_sign_test",
    "three_condition_sign",
    "allowed_species",
    "verify_theorem2",
]


class SpeciesError(ValueError):
    pass


@dataclass(frozen=True)
class SpeciesResult:
    ovals: int
    sign: str | None  # "+", "-" or None when there are no ovals

    def __post_init__(self):
        if (self.ovals == 0) != (self.sign is None):
            raise SpeciesError("sign must be None exactly when there are no ovals")
        if self.sign not in (None, "+", "-"):
            raise SpeciesError(f"bad sign {self.sign!r}")

    @property
    def value(self) -> int:
        return 0 if self.sign is None else (self.ovals if self.sign == "+" else -self.ovals)

    def __str__(self) -> str:
        return "0" if self.sign is None else f"{self.sign}{self.ovals}"


def target_kind(G: SignedGroup) -> str:
    """'D' or 'C' for the two targets allowed here, determined structurally."""
    p = G.p
    if G.n != 2 * p or not is_prime(p) or p == 2:
        raise SpeciesError(f"target of order {G.n} is neither D_p nor C_2p")
    return "C" if G.is_abelian else "D"


def _check_sigma(G: SignedGroup, sigma: int) -> None:
    if G.w[sigma] != -1 or G.orders[sigma] != 2:
        raise SpeciesError(f"{G.word_of(sigma)} is not an anticonformal involution")


def _connector(epi: SurfaceKernelEpi) -> int:
    return epi.image("e1")


def _reflections(epi: SurfaceKernelEpi) -> list[int]:
    return [x for g, x in zip(epi.presentation.generators, epi.images) if g.kind == "c"]


def _ovals(epi: SurfaceKernelEpi) -> int:
    G = epi.target
    cycle = epi.signature.period_cycles[0] if epi.signature.period_cycles else None
    if cycle is None:
        return 0
    if len(cycle) > 0:
        return 1
    return G.p if _connector(epi) == G.identity else 1


def three_condition_sign(epi: SurfaceKernelEpi) -> str:
    """Sign onto D_p: '-' iff proper periods, a non-trivial connector, or more than two reflection images."""
    G = epi.target
    if epi.signature.proper_periods:
        return "-"
    if epi.signature.period_cycles and _connector(epi) != G.identity:
        return "-"
    if len(set(_reflections(epi))) > 2:
        return "-"
    return "+"


def species(epi: SurfaceKernelEpi, sigma: int | None = None) -> SpeciesResult:
    G = epi.target
    kind = target_kind(G)
    if sigma is None:
        sigma = G.names["s"]
    _check_sigma(G, sigma)
    ovals = _ovals(epi)
    if ovals == 0:
        return SpeciesResult(0, None)
    return SpeciesResult(ovals, "+" if kind == "C" else three_condition_sign(epi))


@dataclass(frozen=True)
class SchreierGraph:
    """Right cosets of <sigma>; reflection edges flip a 2-colouring, rotation edges keep it."""

    vertices: int
    reflection_edges: tuple[tuple[int, int], ...]
    rotation_edges: tuple[tuple[int, int], ...] = field(default=())

    def loops(self) -> int:
        return sum(1 for a, b in self.reflection_edges if a == b)


def schreier_graph(epi: SurfaceKernelEpi, sigma: int | None = None) -> SchreierGraph:
    G = epi.target
    if sigma is None:
        sigma = G.names["s"]
    _check_sigma(G, sigma)
    action = coset_action(epi, subgroup_generated(G, [sigma]))
    refl, rot = [], []
    for gen, perm in action.items():
        bucket = refl if gen.orientation_reversing else rot
        for v, u in enumerate(perm):
            if gen.orientation_reversing and v > u:
                continue  # involution: each edge once
            bucket.append((v, u))
    n = len(next(iter(action.values())))
    return SchreierGraph(n, tuple(sorted(refl)), tuple(sorted(rot)))


def _has_odd_cycle(graph: SchreierGraph, reflections_only: bool) -> bool:
    """Odd cycle counted by reflection edges; loops ignored."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(graph.vertices)}
    edges = [(a, b, 1) for a, b in graph.reflection_edges]
    if not reflections_only:
        edges += [(a, b, 0) for a, b in graph.rotation_edges]
    for a, b, parity in edges:
        if a == b:
            continue
        adj[a].append((b, parity))
        adj[b].append((a, parity))
    colour: dict[int, int] = {}
    for start in range(graph.vertices):
        if start in colour:
            continue
        colour[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for u, parity in adj[v]:
                want = colour[v] ^ parity
                if u not in colour:
                    colour[u] = want
                    stack.append(u)
                elif colour[u] != want:
                    return True
    return False


def schreier_sign_test(epi: SurfaceKernelEpi, sigma: int | None = None,
                       reflections_only: bool = False) -> str:
    """'-' iff the coset graph has a non-loop cycle crossing an odd number of reflection edges.

    Orientation-preserving generators contribute colour-preserving edges by
    default. With ``reflections_only`` they are dropped and the test
    becomes plain bipartiteness of the reflection edges.
    """
    if target_kind(epi.target) != "D":
        raise SpeciesError("the coset graph test applies to D_p targets")
    return "-" if _has_odd_cycle(schreier_graph(epi, sigma), reflections_only) else "+"


def allowed_species(p: int, g: int) -> frozenset[int]:
    if g < (p - 1) ** 2 + 1:
        raise SpeciesError(f"genus {g} is below (p-1)^2+1 = {(p - 1) ** 2 + 1}")
    if g % 2:
        return frozenset({-1, -p})
    return frozenset({1, -1, p, -p})


def verify_theorem2(p: int, g: int, max_nodes: int = DEFAULT_MAX_NODES, jobs: int = 1) -> dict:
    """Sweep every epi onto D_p and C_2p over all admissible signatures.

    Every epi yields one record; a record is a FINDING when its species is
    outside the allowed set, a C_2p sign is not '+', there are no ovals, or
    the two D_p sign rules disagree.
    """
    allowed = allowed_species(p, g)
    records = []
    seen_species: set[int] = set()
    for sig, tag in real_cyclic_signatures(p, g):
        for kind in ("D", "C"):
            G = target_group(kind, p)
            for epi in enumerate_surface_kernel_epis(sig, G, max_nodes=max_nodes, jobs=jobs):
                sp = species(epi)
                problems = []
                if sp.value not in allowed:
                    problems.append("species outside the allowed set")
                if sp.ovals == 0:
                    problems.append("no ovals")
                if kind == "C" and sp.sign != "+":
                    problems.append("C_2p target with sign -")
                schreier = None
                if kind == "D":
                    schreier = schreier_sign_test(epi)
                    if schreier != sp.sign:
                        problems.append("three-condition sign differs from coset graph sign")
                seen_species.add(sp.value)
                rec = {
                    "signature": format_signature(sig),
                    "tag": tag,
                    "target": G.name,
                    "images": epi.to_record()["images"],
                    "species": sp.value,
                    "flag": "FINDING" if problems else "CONSISTENT",
                }
                if schreier is not None:
                    rec["schreier_sign"] = schreier
                if problems:
                    rec["problems"] = problems
                records.append(rec)
    findings = sum(r["flag"] == "FINDING" for r in records)
    return {
        "p": p,
        "genus": g,
        "allowed_species": sorted(allowed),
        "computed_species": sorted(seen_species),
        "epimorphisms": len(records),
        "findings": findings,
        "records": records,
    }

