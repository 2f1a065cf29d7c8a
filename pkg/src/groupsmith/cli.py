"""Command-line front end with machine-readable reports.

Every subcommand emits one report: text for reading, json for tooling
(schema: tool_version, command, params, result, assertions, timing_ms),
csv where a histogram or table is the natural payload. Exit codes: 0 ok,
1 falsified mathematical assertion, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .constructions import (
    WreathGroup,
    dihedral_group,
    lemma7_subgroup,
    lemma8_construct,
    named_group,
    prop1_embedding,
)
from .core import (
    Element,
    Subgroup,
    find_odd_abelian_normal,
    find_odd_central,
    subgroup_generated,
    verify_group_axioms,
)
from .dihedral import (
    minus_one_is_square_mod_p,
    odd_primes_below,
    theorem1_trace,
)
from .equations import (
    PositiveEquation,
    adjoin_nth_root,
    evaluate,
    levin_solve,
    parse_equation,
    solve_in_group,
)
from .errors import CapExceeded, Falsification, ParseError, PreconditionError
from .search import min_overgroup_search


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupsmith",
        description="economical root adjunction, positive-equation solving, "
        "and overgroup lower-bound verification for finite groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument(
            "--format", choices=["text", "json", "csv"], default="text",
            help="report format (default text)",
        )

    p = sub.add_parser("construct", help="build a named group and check the axioms")
    p.add_argument("--group", required=True, help="group spec, e.g. S3, D7, Z6, Z2xZ3")
    common(p)

    p = sub.add_parser("adjoin-sqrt", help="economical overgroup where an element is a square")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    common(p)

    p = sub.add_parser("adjoin-nth-root", help="wreath overgroup with an n-th root")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)

    p = sub.add_parser("solve-positive", help="solve positive equations in a wreath product")
    p.add_argument("--group", required=True)
    p.add_argument("--equation", help='equation text, e.g. "(1 2)*x*()*x*"')
    p.add_argument("--random", type=int, default=0, help="solve this many random equations")
    p.add_argument("--degree", type=int, default=2, help="degree of random equations")
    p.add_argument("--seed", type=int, default=0, help="seed for random equations")
    p.add_argument("--cap", type=int, default=None, help="search-space cap")
    common(p)

    p = sub.add_parser("lemma7-check", help="closed form vs generated closure in G wr Z2")
    p.add_argument("--group", required=True)
    p.add_argument("--element", help="one element; default checks every element")
    common(p)

    p = sub.add_parser("lemma8-check", help="inversion subgroup normality and quotient")
    p.add_argument("--group", required=True)
    p.add_argument(
        "--normal-gens",
        help="comma-separated generators of N; default: smallest odd abelian normal",
    )
    common(p)

    p = sub.add_parser("prop1-embed", help="strategy chain for an order <= |G|^2 overgroup")
    p.add_argument("--group", required=True)
    p.add_argument("--element", required=True)
    common(p)

    p = sub.add_parser("theorem1-verify", help="replay the lower-bound proof at a prime p")
    p.add_argument("--p", type=int, required=True)
    common(p)

    p = sub.add_parser("residue-check", help="-1 as a square mod p versus p mod 4")
    p.add_argument("--max-p", type=int, required=True)
    common(p)

    p = sub.add_parser("search", help="minimum overgroup order inside S_m")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--kind", choices=["natural", "regular"], default="natural")
    p.add_argument("--cap", type=int, default=1000)
    p.add_argument("--workers", type=int, default=None, help="default: available parallelism")
    common(p)

    return parser


# -- handlers ------------------------------------------------------------------


def _render_root(root: Element) -> str:
    return root.group.render(root)


def cmd_construct(args):
    G = named_group(args.group)
    rep = verify_group_axioms(G)
    assertions = [
        {"name": "identity-law", "status": "pass" if rep.identity_ok else "fail"},
        {"name": "unique-inverses", "status": "pass" if rep.inverses_ok else "fail"},
        {"name": "latin-square", "status": "pass" if rep.latin_ok else "fail"},
        {
            "name": f"associativity-{rep.assoc_mode}",
            "status": "pass" if rep.assoc_ok else "fail",
        },
    ]
    if not rep.ok:
        raise Falsification(f"group axioms failed for {G.name}: {rep.detail}")
    result = {
        "group": G.name,
        "order": G.order,
        "backend": G.backend,
        "abelian": G.is_abelian(),
        "center_order": G.center().order,
        "generators": [G.render(g) for g in G.generators],
    }
    return result, assertions


def cmd_adjoin_sqrt(args):
    G = named_group(args.group)
    g = G.parse(args.element)
    res = prop1_embedding(G, g)
    result = {
        "group": G.name,
        "element": G.render(g),
        "strategy": res.strategy,
        "overgroup_order": res.overgroup_order,
        "order_bound": G.order**2,
        "meets_bound": res.meets_bound,
        "root": _render_root(res.root),
    }
    assertions = [{"name": "root-squares-to-embedded-element", "status": "pass"}]
    return result, assertions


def cmd_adjoin_nth_root(args):
    G = named_group(args.group)
    g = G.parse(args.element)
    res = adjoin_nth_root(G, g, args.n)
    result = {
        "group": G.name,
        "element": G.render(g),
        "n": args.n,
        "wreath": res.wreath.name,
        "wreath_order": res.wreath.order,
        "root": _render_root(res.root),
    }
    assertions = [{"name": "root-power-verified", "status": "pass"}]
    return result, assertions


def cmd_solve_positive(args):
    G = named_group(args.group)
    equations: list[PositiveEquation] = []
    if args.equation:
        equations.append(parse_equation(G, args.equation))
    if args.random:
        if args.degree < 1:
            raise PreconditionError("--degree must be at least 1")
        rng = random.Random(args.seed)
        pool = list(G.elements())
        for _ in range(args.random):
            coeffs = tuple(pool[rng.randrange(len(pool))] for _ in range(args.degree))
            equations.append(PositiveEquation(coeffs))
    if not equations:
        raise PreconditionError("give --equation and/or --random N")
    rows = []
    assertions = []
    for i, eq in enumerate(equations):
        kwargs = {"cap": args.cap} if args.cap else {}
        x = levin_solve(eq, G, **kwargs)
        H = x.group
        embed = H.diag_embed if isinstance(H, WreathGroup) else (lambda e: e)
        verified = evaluate(eq, H, embed, x) == H.identity
        in_group = solve_in_group(eq, G)
        rows.append(
            {
                "equation": eq.render(),
                "solved_in": H.name,
                "solution": H.render(x),
                "verified": verified,
                "in_group_solution": G.render(in_group) if in_group is not None else None,
            }
        )
        assertions.append(
            {"name": f"solution-verified-{i}", "status": "pass" if verified else "fail"}
        )
        if not verified:
            raise Falsification(f"solver returned an unverified solution for {eq.render()}")
    result = {"group": G.name, "count": len(rows), "solutions": rows}
    return result, assertions


def cmd_lemma7_check(args):
    G = named_group(args.group)
    targets = [G.parse(args.element)] if args.element else list(G.elements())
    rows = []
    assertions = []
    for g in targets:
        res = lemma7_subgroup(G, g)
        rows.append(
            {
                "element": G.render(g),
                "subgroup_order": res.order,
                "commutator_order": res.commutator_part.order,
                "order_formula": 2 * G.order * res.commutator_part.order,
            }
        )
        assertions.append(
            {"name": f"formula-equals-closure[{G.render(g)}]", "status": "pass"}
        )
    result = {"group": G.name, "checked": len(rows), "subgroups": rows}
    return result, assertions


def cmd_lemma8_check(args):
    G = named_group(args.group)
    if args.normal_gens:
        gens = [G.parse(s) for s in args.normal_gens.split(",")]
        N = subgroup_generated(G, gens)
        if not isinstance(N, Subgroup):
            raise PreconditionError("generated subgroup outgrew the cap")
    else:
        N = find_odd_central(G) or find_odd_abelian_normal(G)
        if N is None:
            raise PreconditionError(
                f"{G.name} has no nontrivial odd abelian normal subgroup; "
                "pass --normal-gens"
            )
    res = lemma8_construct(G, N)
    result = {
        "group": G.name,
        "n_order": N.order,
        "n_elements": [G.render(e) for e in N.elements],
        "wreath_order": res.wreath.order,
        "k_order": res.subgroup_k.order,
        "k_normal": res.normal,
    }
    assertions = [{"name": "k-is-subgroup", "status": "pass"}]
    if res.normal:
        result["quotient_order"] = res.quotient.order
        result["embed_injective"] = res.embed_injective
        for g in G.elements():
            res.root_image(g)
        assertions.append({"name": "k-normal-in-wreath", "status": "pass"})
        assertions.append({"name": "root-images-square-correctly", "status": "pass"})
    else:
        member, conj = res.witness
        result["witness"] = {
            "member": res.wreath.render(member),
            "conjugator": res.wreath.render(conj),
        }
        assertions.append(
            {
                "name": "k-normal-in-wreath",
                "status": "fail",
                "witness": f"{res.wreath.render(member)} conjugated by "
                f"{res.wreath.render(conj)} leaves K",
            }
        )
    return result, assertions


def cmd_prop1_embed(args):
    G = named_group(args.group)
    g = G.parse(args.element)
    res = prop1_embedding(G, g)
    result = {
        "group": G.name,
        "group_order": G.order,
        "element": G.render(g),
        "strategy": res.strategy,
        "overgroup_order": res.overgroup_order,
        "order_bound": G.order**2,
        "meets_bound": res.meets_bound,
        "root": _render_root(res.root),
    }
    if res.lemma7 is not None:
        result["commutator_order"] = res.lemma7.commutator_part.order
    if res.lemma8 is not None:
        result["normal_subgroup_order"] = res.lemma8.subgroup_k.order
    assertions = [{"name": "root-squares-to-embedded-element", "status": "pass"}]
    return result, assertions


def cmd_theorem1_verify(args):
    G = dihedral_group(args.p)
    g = G.parse("s*r^0")
    res = lemma7_subgroup(G, g)
    W = res.wreath
    diag_copy = Subgroup(W, [W.diag_embed(a) for a in G.elements()], _trusted=True)
    report = theorem1_trace(res.subgroup, diag_copy, res.root)
    return report.to_dict(), report.assertions


def cmd_residue_check(args):
    rows = []
    mismatches = 0
    for p in odd_primes_below(args.max_p):
        sq = minus_one_is_square_mod_p(p)
        if sq != (p % 4 == 1):
            mismatches += 1
        rows.append({"p": p, "p_mod_4": p % 4, "minus_one_square": sq})
    assertions = [
        {
            "name": "residue-criterion-matches-mod-4",
            "status": "pass" if mismatches == 0 else "fail",
        }
    ]
    if mismatches:
        raise Falsification(f"{mismatches} primes defy the mod-4 criterion")
    result = {"max_p": args.max_p, "primes_checked": len(rows), "mismatches": 0, "rows": rows}
    return result, assertions


def cmd_search(args):
    workers = args.workers if args.workers is not None else (os.cpu_count() or 1)
    rep = min_overgroup_search(args.p, args.m, kind=args.kind, cap=args.cap, workers=workers)
    status = "pass"
    if rep.verdict.startswith("not-applicable"):
        status = "skip"
    elif rep.verdict.startswith("inconclusive"):
        status = "skip"
    assertions = [
        {"name": "theorem1-bound-in-universe", "status": status, "witness": rep.verdict}
    ]
    return rep.to_dict(), assertions


HANDLERS = {
    "construct": cmd_construct,
    "adjoin-sqrt": cmd_adjoin_sqrt,
    "adjoin-nth-root": cmd_adjoin_nth_root,
    "solve-positive": cmd_solve_positive,
    "lemma7-check": cmd_lemma7_check,
    "lemma8-check": cmd_lemma8_check,
    "prop1-embed": cmd_prop1_embed,
    "theorem1-verify": cmd_theorem1_verify,
    "residue-check": cmd_residue_check,
    "search": cmd_search,
}


# -- report emission -----------------------------------------------------------


def _params_of(args: argparse.Namespace) -> dict:
    skip = {"command", "format"}
    return {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }


def _emit_text(report: dict, out) -> None:
    print(f"groupsmith {report['tool_version']} :: {report['command']}", file=out)
    for k, v in report["params"].items():
        print(f"  param {k} = {v}", file=out)

    def walk(value, indent):
        pad = " " * indent
        if isinstance(value, dict):
            for k, v in value.items():
                if isinstance(v, (dict, list)):
                    print(f"{pad}{k}:", file=out)
                    walk(v, indent + 2)
                else:
                    print(f"{pad}{k}: {v}", file=out)
        elif isinstance(value, list):
            for v in value:
                if isinstance(v, (dict, list)):
                    walk(v, indent)
                else:
                    print(f"{pad}- {v}", file=out)

    print("result:", file=out)
    walk(report["result"], 2)
    for a in report["assertions"]:
        mark = {"pass": "ok", "fail": "FAIL", "skip": "--"}.get(a["status"], "?")
        witness = f"  ({a['witness']})" if "witness" in a else ""
        print(f"  [{mark}] {a['name']}{witness}", file=out)
    print(f"timing_ms: {report['timing_ms']}", file=out)


def _emit_csv(report: dict, out) -> None:
    command = report["command"]
    if command == "search":
        print("order,count", file=out)
        for label, count in report["result"]["histogram"].items():
            print(f"{label},{count}", file=out)
    elif command == "residue-check":
        print("p,p_mod_4,minus_one_square", file=out)
        for row in report["result"]["rows"]:
            print(f"{row['p']},{row['p_mod_4']},{row['minus_one_square']}", file=out)
    else:
        raise PreconditionError(f"csv output is not defined for {command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format == "csv" and args.command not in ("search", "residue-check"):
        print(
            f"groupsmith: usage: csv output is not defined for {args.command!r}",
            file=sys.stderr,
        )
        return 2
    started = time.perf_counter()
    try:
        result, assertions = HANDLERS[args.command](args)
    except Falsification as exc:
        print(f"groupsmith: falsified: {exc}", file=sys.stderr)
        return 1
    except (ParseError, PreconditionError) as exc:
        print(f"groupsmith: usage: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"groupsmith: resource-cap: {exc}", file=sys.stderr)
        return 3
    report = {
        "tool_version": __version__,
        "command": args.command,
        "params": _params_of(args),
        "result": result,
        "assertions": assertions,
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    elif args.format == "csv":
        _emit_csv(report, sys.stdout)
    else:
        _emit_text(report, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
