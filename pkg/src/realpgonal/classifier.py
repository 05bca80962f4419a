"""Symmetry classes of signed groups and case-by-case verification of the ledger."""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .expr import ExprError, evaluate
from .signatures import is_prime
from .groups import (
    GroupError,
    SignedGroup,
    Subgroup,
    anticonformal_involutions,
    conjugacy_classes,
    is_normal,
    normalizer,
    quotient_by_normal,
    subgroup_generated,
)
from .recipes import (
    SPHERICAL_FAMILIES,
    RecipeError,
    family_order,
    identify_family,
    matches_family,
    parse_family,
    realize,
)

__all__ = [
    "ClassifierError",
    "SymmetryClass",
    "LedgerEntry",
    "Budget",
    "pair_type",
    "classify_symmetries",
    "ledger_entries",
    "get_entry",
    "spherical_quotient",
    "verify_case",
    "verify_all",
    "render_table",
    "dumps_report",
]

MATCH, MISMATCH = "MATCH", "MISMATCH"


class ClassifierError(ValueError):
    pass


def pair_type(G: SignedGroup, sigma: int) -> str:
    """'D_p' when sigma inverts phi, 'C_2p' when it centralizes it."""
    if G.w[sigma] != -1 or G.orders[sigma] != 2:
        raise ClassifierError(f"{G.word_of(sigma)} is not an anticonformal involution")
    image = G.conj(sigma, G.phi)
    if image == G.phi:
        return "C_2p"
    if image == G.inv(G.phi):
        return "D_p"
    raise ClassifierError(f"{G.word_of(sigma)} conjugates phi outside {{phi, phi^-1}}")


@dataclass(frozen=True)
class SymmetryClass:
    representative: int
    members: tuple[int, ...]
    pair_type: str
    n_sigma: Subgroup
    n_phi_sigma: Subgroup
    n_sigma_name: str | None = None
    n_phi_sigma_name: str | None = None


def classify_symmetries(G: SignedGroup, identify: bool = True) -> list[SymmetryClass]:
    """Conjugacy classes of anticonformal involutions, ordered by least member."""
    anti = set(anticonformal_involutions(G))
    out = []
    for cls in sorted((c for c in conjugacy_classes(G) if c[0] in anti), key=min):
        sigma = min(cls)
        types = {pair_type(G, s) for s in cls}
        if len(types) != 1:
            raise ClassifierError(f"pair type varies on the class of {G.word_of(sigma)}")
        ns = normalizer(G, subgroup_generated(G, [sigma]))
        nps = normalizer(G, subgroup_generated(G, [G.phi, sigma]))
        out.append(SymmetryClass(
            sigma, tuple(sorted(cls)), types.pop(), ns, nps,
            _identify(G, ns) if identify else None,
            _identify(G, nps) if identify else None,
        ))
    return out


def _identify(G: SignedGroup, H: Subgroup) -> str:
    if H.order == G.n:
        return "G"
    return identify_family(G.subgroup_table(H.elements, H.gens))


def spherical_quotient(G: SignedGroup) -> str | None:
    """The spherical family matching G/<phi>, or None."""
    Q = quotient_by_normal(G, subgroup_generated(G, [G.phi]))
    for template in SPHERICAL_FAMILIES:
        if "q" in template:
            base = family_order(parse_family(template, {"q": 1}))
            if Q.n % base:
                continue
            params = {"q": Q.n // base}
        else:
            params = {}
        if matches_family(Q, template, params):
            return template.replace("q", str(params["q"])) if params else template
    return None


# ---------------------------------------------------------------------------
# ledger


@dataclass(frozen=True)
class Budget:
    primes: tuple[int, ...] = (3, 5)
    q_values: tuple[int, ...] = (2, 3, 4, 5, 6)
    use_fallback: bool = True

    def to_dict(self) -> dict:
        return {"primes": list(self.primes), "q_values": list(self.q_values)}


@dataclass(frozen=True)
class LedgerEntry:
    id: str
    source: str
    clause: str
    params: tuple
    where: tuple[str, ...]
    recipes: tuple[tuple[str | None, dict], ...]
    expect: dict
    fallback: dict = field(default_factory=dict)

    @classmethod
    def from_dict(cls, d: dict) -> "LedgerEntry":
        try:
            if "recipes" in d:
                recipes = tuple((r.get("when"), r["recipe"]) for r in d["recipes"])
            else:
                recipes = ((None, d["recipe"]),)
            return cls(d["id"], d.get("source", ""), d.get("clause", ""), tuple(d["params"]),
                       tuple(d.get("where", ())), recipes, d["expect"], d.get("fallback", {}))
        except (KeyError, TypeError) as exc:
            raise ClassifierError(f"malformed ledger record {d.get('id', '?')!r}: {exc}") from None

    def admits(self, params: dict) -> bool:
        """Parameter ranges, p an odd prime, q >= 2, and every ``where`` condition."""
        try:
            for spec in self.params:
                if spec == "p":
                    ok = params["p"] % 2 == 1 and is_prime(params["p"])
                elif spec == "q":
                    ok = params["q"] >= 2
                elif "values" in spec:
                    ok = params[spec["name"]] in spec["values"]
                else:
                    ok = (evaluate(spec["lo"], params) <= params[spec["name"]]
                          <= evaluate(spec["hi"], params))
                if not ok:
                    return False
            return all(evaluate(c, params) for c in self.where)
        except (ExprError, KeyError):
            return False

    def _expand(self, specs, params: dict, budget: Budget):
        if not specs:
            if self.admits(params):
                yield dict(params)
            return
        spec, rest = specs[0], specs[1:]
        if spec == "p":
            values = budget.primes
        elif spec == "q":
            values = budget.q_values
        elif isinstance(spec, str):
            raise ClassifierError(f"{self.id}: unknown parameter {spec!r}")
        elif "values" in spec:
            values = spec["values"]
        else:
            values = range(evaluate(spec["lo"], params), evaluate(spec["hi"], params) + 1)
        name = spec if isinstance(spec, str) else spec["name"]
        for v in values:
            params[name] = v
            yield from self._expand(rest, params, budget)
            del params[name]

    def domain(self, budget: Budget) -> list[dict]:
        """Every admissible parameter tuple within the budget, in a fixed order."""
        out = list(self._expand(list(self.params), {}, budget))
        if not out and self.fallback and budget.use_fallback and budget.primes:
            fb = Budget(tuple([self.fallback.get("p")] if "p" in self.fallback else budget.primes),
                        tuple([self.fallback["q"]] if "q" in self.fallback else budget.q_values),
                        use_fallback=False)
            out = self.domain(fb)
        return out

    def recipe_for(self, params: dict) -> dict:
        for when, recipe in self.recipes:
            if when is None or evaluate(when, params):
                return recipe
        raise ClassifierError(f"{self.id}: no recipe applies to {params}")


DEFAULT_LEDGER = "ledger.json"


@lru_cache(maxsize=8)
def _load(path: str | None) -> tuple[LedgerEntry, ...]:
    try:
        if path is None:
            text = resources.files("realpgonal").joinpath("data", DEFAULT_LEDGER).read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        doc = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ClassifierError(f"cannot read ledger: {exc}") from None
    if not isinstance(doc, dict) or "entries" not in doc:
        raise ClassifierError("ledger file has no 'entries' list")
    entries = tuple(LedgerEntry.from_dict(d) for d in doc["entries"])
    ids = [e.id for e in entries]
    if len(set(ids)) != len(ids):
        raise ClassifierError("duplicate case ids in ledger")
    return entries


def ledger_entries(path: str | None = None) -> list[LedgerEntry]:
    return list(_load(str(path) if path is not None else None))


def get_entry(case_id: str, path: str | None = None) -> LedgerEntry:
    for e in ledger_entries(path):
        if e.id == case_id:
            return e
    raise ClassifierError(f"unknown case id {case_id!r}")


# ---------------------------------------------------------------------------
# verification


def _claim(text: str, expected, computed, ok: bool, witness=None) -> dict:
    rec = {"claim": text, "expected": expected, "computed": computed,
           "status": MATCH if ok else MISMATCH}
    if not ok:
        rec["witness"] = witness if witness is not None else {"computed": computed}
    return rec


def _subgroup_info(G: SignedGroup, H: Subgroup, name: str) -> dict:
    return {"order": H.order, "family": name, "generators": [G.word_of(g) for g in H.gens]}


def _class_info(G: SignedGroup, c: SymmetryClass) -> dict:
    return {"representative": G.word_of(c.representative), "size": len(c.members),
            "pair_type": c.pair_type}


def _structure_claims(G: SignedGroup, classes: list[SymmetryClass]) -> list[dict]:
    out = []
    problems = G.check()
    out.append(_claim("orientation character and <phi> satisfy the signed-group invariants",
                      [], problems, not problems, {"violations": problems}))
    normal = is_normal(G, subgroup_generated(G, [G.phi]))
    out.append(_claim("<phi> is normal of order p", True, normal and G.orders[G.phi] == G.p,
                      normal and G.orders[G.phi] == G.p))
    fam = spherical_quotient(G)
    out.append(_claim("G/<phi> lies in the spherical list", True, fam or "unrecognized",
                      fam is not None, {"quotient_order": G.n // G.p}))
    return out


def verify_case(case_id: str, params: dict, ledger: str | None = None) -> dict:
    """Realize one ledger entry at ``params`` and check every claim it makes."""
    entry = get_entry(case_id, ledger)
    params = {k: int(v) for k, v in params.items()}
    missing = [s if isinstance(s, str) else s["name"] for s in entry.params
               if (s if isinstance(s, str) else s["name"]) not in params]
    if missing:
        raise ClassifierError(f"{case_id}: missing parameters {missing}")
    if not entry.admits(params):
        raise ClassifierError(f"{case_id}: parameters {params} violate {list(entry.where)}")
    frag = {"case": case_id, "params": dict(sorted(params.items())), "claims": []}
    claims = frag["claims"]
    try:
        G = realize(entry.recipe_for(params), params, name=case_id)
    except (RecipeError, GroupError, ExprError) as exc:
        claims.append(_claim("group realizes", True, False, False, {"error": str(exc)}))
        return frag
    claims.append(_claim("group realizes", True, True, True))
    frag["group_order"] = G.n
    classes = classify_symmetries(G, identify=False)
    claims.extend(_structure_claims(G, classes))

    exp = entry.expect
    want = evaluate(exp["classes"], params)
    claims.append(_claim("number of symmetry classes", want, len(classes), len(classes) == want,
                         {"classes": [_class_info(G, c) for c in classes]}))

    where = {m: i for i, c in enumerate(classes) for m in c.members}
    hits = []
    for r in exp.get("representatives", []):
        if "when" in r and not evaluate(r["when"], params):
            continue
        word = r["word"]
        try:
            x = G.word(word, params)
        except (GroupError, ExprError) as exc:
            claims.append(_claim(f"representative {word} is a symmetry", True, False, False,
                                 {"error": str(exc)}))
            continue
        idx = where.get(x)
        claims.append(_claim(
            f"representative {word} is a symmetry", True, idx is not None, idx is not None,
            {"element": G.word_of(x), "order": G.orders[x], "orientation": G.w[x]}))
        if idx is None:
            continue
        hits.append((word, idx))
        c = classes[idx]
        fam_text = r["normalizer"]
        m_sigma = matches_family(G.subgroup_table(c.n_sigma.elements, c.n_sigma.gens), fam_text,
                                 params, whole=G) if fam_text != "G" else c.n_sigma.order == G.n
        m_phi = matches_family(G.subgroup_table(c.n_phi_sigma.elements, c.n_phi_sigma.gens),
                               fam_text, params, whole=G) if fam_text != "G" else c.n_phi_sigma.order == G.n
        via = "N(<sigma>)" if m_sigma else "N(<phi,sigma>)" if m_phi else None
        n_s = _subgroup_info(G, c.n_sigma, _identify(G, c.n_sigma))
        n_ps = _subgroup_info(G, c.n_phi_sigma, _identify(G, c.n_phi_sigma))
        rec = _claim(f"normalizer for {word}", fam_text,
                     {"N(<sigma>)": n_s["family"], "N(<phi,sigma>)": n_ps["family"]},
                     via is not None, {"N(<sigma>)": n_s, "N(<phi,sigma>)": n_ps})
        rec["matched_via"] = via
        claims.append(rec)
    if len(hits) > 1:
        seen: dict[int, str] = {}
        clash = []
        for word, idx in hits:
            if idx in seen and seen[idx] != word:
                clash.append([seen[idx], word])
            seen.setdefault(idx, word)
        claims.append(_claim("representatives are pairwise non-conjugate", True, not clash,
                             not clash, {"conjugate_pairs": clash}))
    return frag


def _task(args):
    case_id, params, ledger = args
    try:
        return verify_case(case_id, params, ledger)
    except Exception as exc:  # reported, never swallowed
        return {"case": case_id, "params": dict(sorted(params.items())), "claims": [],
                "error": f"{type(exc).__name__}: {exc}"}


def verify_all(budget: Budget | None = None, ledger: str | None = None, jobs: int = 1,
               cases: list[str] | None = None) -> dict:
    budget = budget or Budget()
    tasks = []
    entries = ledger_entries(ledger)
    for e in entries:
        if cases and e.id not in cases:
            continue
        for params in e.domain(budget):
            tasks.append((e.id, params, ledger))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_task, tasks, chunksize=1))
    else:
        results = [_task(t) for t in tasks]
    claims = [c for r in results for c in r["claims"]]
    summary = {
        "entries": sorted({r["case"] for r in results}, key=[e.id for e in entries].index),
        "tuples": len(results),
        "claims": len(claims),
        "match": sum(c["status"] == MATCH for c in claims),
        "mismatch": sum(c["status"] == MISMATCH for c in claims),
        "errors": sum("error" in r for r in results),
    }
    return {"budget": budget.to_dict(), "summary": summary, "results": results}


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=1, ensure_ascii=False) + "\n"


def _fmt_params(params: dict) -> str:
    return ",".join(f"{k}={v}" for k, v in params.items())


def render_table(report: dict) -> str:
    """One line per claim: case, parameters, status, claim, and the computed value."""
    results = report["results"] if "results" in report else [report]
    rows = []
    for r in results:
        if "error" in r:
            rows.append((r["case"], _fmt_params(r["params"]), "ERROR", r["error"], ""))
        for c in r["claims"]:
            computed = c["computed"]
            if isinstance(computed, dict):
                computed = "; ".join(f"{k} {v}" for k, v in computed.items())
            rows.append((r["case"], _fmt_params(r["params"]), c["status"], c["claim"], str(computed)))
    widths = [max([len(h)] + [len(row[i]) for row in rows])
              for i, h in enumerate(("case", "params", "status", "claim", "computed"))]
    head = ("case", "params", "status", "claim", "computed")
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths)).rstrip()]
    lines += ["  ".join(x.ljust(w) for x, w in zip(row, widths)).rstrip() for row in rows]
    if "summary" in report:
        s = report["summary"]
        lines.append(f"{s['tuples']} parameter tuples over {len(s['entries'])} entries; "
                     f"{s['claims']} claims: {s['match']} MATCH, {s['mismatch']} MISMATCH, "
                     f"{s['errors']} errors")
    return "\n".join(lines) + "\n"
