"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 when a
verification run records a MISMATCH or FINDING.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from . import kernels
from .classifier import (
    Budget,
    ClassifierError,
    classify_symmetries,
    dumps_report,
    get_entry,
    render_table,
    verify_all,
    verify_case,
)
from .epimorphisms import EpiError, enumerate_surface_kernel_epis, target_group, theta1, theta2, theta3
from .expr import ExprError
from .groups import GroupError, SignedGroup
from .recipes import RecipeError, realize
from .signatures import (
    SignatureError,
    area,
    cyclic_p_gonal_signature,
    format_signature,
    parse_signature,
    real_cyclic_signatures,
    validate,
)
from .species import SpeciesError, schreier_sign_test, species, target_kind, verify_theorem2

DOMAIN_ERRORS = (SignatureError, EpiError, SpeciesError, ClassifierError, RecipeError,
                 GroupError, ExprError)
EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_DISAGREE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, data, text: str) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=1, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _params(args) -> dict:
    out = {}
    for name in ("p", "q"):
        if getattr(args, name, None) is not None:
            out[name] = getattr(args, name)
    for item in getattr(args, "param", None) or []:
        m = re.fullmatch(r"\s*([A-Za-z_]\w*)\s*=\s*(-?\d+)\s*", item)
        if not m:
            raise UsageError(f"--param expects name=integer, got {item!r}")
        out[m.group(1)] = int(m.group(2))
    return out


def _group(spec: str, args) -> SignedGroup:
    """D_p / C_2p shorthands, a ledger case id, or a JSON recipe file."""
    m = re.fullmatch(r"([CD])_?\{?(\d+)\}?", spec.strip())
    if m:
        n = int(m.group(2))
        if m.group(1) == "D":
            return target_group("D", n)
        if n % 2:
            raise UsageError(f"C_{n} is not of the form C_2p")
        return target_group("C", n // 2)
    params = _params(args)
    path = Path(spec)
    if path.suffix == ".json" or path.exists():
        try:
            recipe = json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read recipe {spec!r}: {exc}") from None
        params = {**recipe.pop("params", {}), **params}
        return realize(recipe, params, name=path.stem)
    entry = get_entry(spec, args.ledger)
    return realize(entry.recipe_for(params), params, name=spec)


# ---------------------------------------------------------------------------
# subcommands


def cmd_area(args) -> int:
    sig = parse_signature(args.signature)
    a = area(sig)
    problems = validate(sig)
    data = {"signature": format_signature(sig), "area": str(a), "unit": "2π", "violations": problems}
    text = f"{a} * 2π"
    if problems:
        text += "\n" + "\n".join(f"warning: {v}" for v in problems)
    _emit(args, data, text)
    return EXIT_OK


def cmd_signatures(args) -> int:
    p, g = args.p, args.genus
    rows = []
    try:
        rows.append((format_signature(cyclic_p_gonal_signature(p, g)), "fuchsian"))
    except SignatureError:
        pass
    rows += [(format_signature(s), tag) for s, tag in real_cyclic_signatures(p, g)]
    if not rows:
        raise SignatureError(f"no signatures for p={p}, g={g}")
    data = {"p": p, "genus": g, "signatures": [{"signature": s, "tag": t} for s, t in rows]}
    _emit(args, data, "\n".join(f"{s}  {t}" for s, t in rows))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    sig = parse_signature(args.signature)
    G = _group(args.group, args)
    epis = enumerate_surface_kernel_epis(sig, G, max_results=args.limit, jobs=args.jobs)
    records = [e.to_record(args.group) for e in epis]
    lines = [f"{len(epis)} surface-kernel epimorphisms {format_signature(sig)} -> {G.name}"]
    for r in records:
        lines.append("  " + ", ".join(f"{k}={v}" for k, v in r["images"].items()))
    _emit(args, {"signature": format_signature(sig), "group": args.group, "count": len(epis),
                 "epimorphisms": records}, "\n".join(lines))
    return EXIT_OK


def cmd_species(args) -> int:
    if args.construction == "theta1":
        epi = theta1(args.p, args.genus)
    elif args.construction == "theta2":
        epi = theta2(args.p, args.genus)
    else:
        connector: int | str = 0
        if args.connector not in (None, "1", "identity"):
            connector = int(args.connector) if re.fullmatch(r"-?\d+", args.connector) else args.connector
        epi = theta3(args.p, args.genus, args.target.upper(), connector)
    sp = species(epi)
    data = {"construction": args.construction, **epi.to_record(), "species": sp.value,
            "ovals": sp.ovals, "sign": sp.sign}
    if target_kind(epi.target) == "D":
        data["coset_graph_sign"] = schreier_sign_test(epi)
    _emit(args, data, str(sp.value))
    return EXIT_OK


def cmd_classify(args) -> int:
    G = _group(args.group, args)
    classes = classify_symmetries(G)
    data = {"group": G.name, "order": G.n, "classes": [
        {"representative": G.word_of(c.representative), "size": len(c.members),
         "pair_type": c.pair_type,
         "N(<sigma>)": {"order": c.n_sigma.order, "family": c.n_sigma_name},
         "N(<phi,sigma>)": {"order": c.n_phi_sigma.order, "family": c.n_phi_sigma_name}}
        for c in classes]}
    lines = [f"{G.name}: order {G.n}, {len(classes)} symmetry classes"]
    for c in data["classes"]:
        lines.append(f"  {c['representative']}  size {c['size']}  {c['pair_type']}  "
                     f"N(<sigma>) {c['N(<sigma>)']['family']} (order {c['N(<sigma>)']['order']})  "
                     f"N(<phi,sigma>) {c['N(<phi,sigma>)']['family']} "
                     f"(order {c['N(<phi,sigma>)']['order']})")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def _disagree(claims) -> bool:
    return any(c["status"] != "MATCH" for c in claims)


def cmd_verify(args) -> int:
    frag = verify_case(args.case, _params(args), args.ledger)
    if args.json:
        sys.stdout.write(dumps_report(frag))
    else:
        sys.stdout.write(render_table(frag))
    return EXIT_DISAGREE if _disagree(frag["claims"]) else EXIT_OK


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def cmd_verify_all(args) -> int:
    budget = Budget(args.primes, tuple(range(2, args.q_max + 1)))
    report = verify_all(budget, args.ledger, jobs=args.jobs, cases=args.case or None)
    sys.stdout.write(dumps_report(report) if args.json else render_table(report))
    s = report["summary"]
    return EXIT_DISAGREE if s["mismatch"] or s["errors"] else EXIT_OK


def cmd_theorem2(args) -> int:
    report = verify_theorem2(args.p, args.genus, jobs=args.jobs)
    if args.json:
        sys.stdout.write(json.dumps(report, indent=1, ensure_ascii=False) + "\n")
    else:
        lines = [f"p={report['p']} g={report['genus']}: {report['epimorphisms']} epimorphisms, "
                 f"species {report['computed_species']} (allowed {report['allowed_species']}), "
                 f"{report['findings']} findings"]
        for r in report["records"]:
            if r["flag"] == "FINDING":
                lines.append(f"  FINDING {r['signature']} -> {r['target']}: species {r['species']}; "
                             + "; ".join(r["problems"]))
        sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_DISAGREE if report["findings"] else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes")
    common.add_argument("--ledger", metavar="FILE", help="ledger file overriding the bundled one")

    ap = argparse.ArgumentParser(
        prog="realpgonal",
        description="Signatures, epimorphisms, species and symmetry classes of real cyclic p-gonal surfaces.",
        parents=[common])
    ap.add_argument("--version", action="version", version=f"%(prog)s (kernels: {kernels.BACKEND})")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("area", parents=[common], help="area of a signature in units of 2π")
    s.add_argument("signature")
    s.set_defaults(func=cmd_area)

    s = sub.add_parser("signatures", parents=[common], help="signatures for given p and genus")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--genus", type=int, required=True)
    s.set_defaults(func=cmd_signatures)

    s = sub.add_parser("enumerate", parents=[common], help="surface-kernel epimorphisms onto a group")
    s.add_argument("signature")
    s.add_argument("--group", required=True, help="D_p, C_2p, a ledger case id or a recipe .json")
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--param", action="append", metavar="NAME=VALUE")
    s.add_argument("--limit", type=int, default=100000, help="maximum number of epimorphisms")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("species", parents=[common], help="species of an explicit construction")
    s.add_argument("--construction", choices=("theta1", "theta2", "theta3"), required=True)
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--genus", type=int, required=True)
    s.add_argument("--target", choices=("d", "c", "D", "C"), default="d")
    s.add_argument("--connector", metavar="W", help="image of e: 1, an exponent of r, or a word")
    s.set_defaults(func=cmd_species)

    s = sub.add_parser("classify", parents=[common], help="symmetry classes and normalizers")
    s.add_argument("--group", required=True, help="D_p, C_2p, a ledger case id or a recipe .json")
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--param", action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", parents=[common], help="check one ledger case")
    s.add_argument("--case", required=True)
    s.add_argument("--p", type=int)
    s.add_argument("--q", type=int)
    s.add_argument("--param", action="append", metavar="NAME=VALUE")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("verify-all", parents=[common], help="check every ledger case in a budget")
    s.add_argument("--primes", type=_int_list, default=(3, 5), help="comma-separated primes")
    s.add_argument("--q-max", type=int, default=6)
    s.add_argument("--case", action="append", help="restrict to these case ids")
    s.set_defaults(func=cmd_verify_all)

    s = sub.add_parser("theorem2", parents=[common], help="sweep species over all epimorphisms")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--genus", type=int, required=True)
    s.set_defaults(func=cmd_theorem2)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"realpgonal: {exc}\n")
        return EXIT_USAGE
    except DOMAIN_ERRORS as exc:
        sys.stderr.write(f"realpgonal: {exc}\n")
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
