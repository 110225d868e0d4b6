"""Command-line frontend.

Commands: show, check, classify, verify, corpus list, export-lattice.
Exit codes: 0 success / predicate true / all suites pass, 1 predicate false
or suite failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .permgroup import (FiniteGroup, GroupError, ParseError, Permutation,
                        group_from_spec)
from . import classes, harness, structure, submodular

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_ERROR = 2


def _load_spec(text: str) -> dict:
    """Inline JSON, a JSON file path, or builder shorthand like 'sym:4'."""
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            return json.load(fh)
    name, _, args = text.partition(":")
    if not name:
        raise ParseError(f"cannot interpret group spec {text!r}")
    arglist = [int(a) for a in args.split(",") if a] if args else []
    return {"kind": "named", "name": name, "args": arglist}


def _group(text: str) -> FiniteGroup:
    return group_from_spec(_load_spec(text))


def _subgroup(G: FiniteGroup, gens: list[str]):
    L = G.lattice()
    ordinals = []
    for cyc in gens:
        p = Permutation.parse(cyc, G.degree)
        idx = G.element_index.get(p)
        if idx is None:
            raise GroupError(f"generator {cyc!r} is not an element of {G.name}")
        ordinals.append(idx)
    return L.subgroups[L.generated(ordinals)]


def _ks(raw: str) -> list[int]:
    try:
        out = sorted({int(x) for x in raw.split(",") if x})
    except ValueError as exc:
        raise GroupError(f"bad k list {raw!r}") from exc
    if not out or min(out) < 1:
        raise GroupError("k values must be integers >= 1")
    return out


def cmd_show(args) -> int:
    G = _group(args.group)
    L = G.lattice()
    inv = G.basic_invariants()
    print(f"group {G.name}: order {G.order}, primes {list(G.prime_divisors())}")
    print(f"  abelian={inv.is_abelian} cyclic={inv.is_cyclic} "
          f"exponent={G.exponent()}")
    print(f"  soluble={structure.is_soluble(G)} "
          f"supersoluble={structure.is_supersoluble(G)} "
          f"nilpotent={structure.is_nilpotent(G)} "
          f"ore_dispersive={structure.is_ore_dispersive(G)}")
    print(f"  subgroups: {len(L)}")
    normals = structure.normal_subgroups(G)
    print(f"  normal subgroups ({len(normals)}): orders "
          f"{[n.order for n in normals]}")
    for cf in structure.chief_factors(G):
        print(f"  chief factor {cf.above.order}/{cf.below.order}: order "
              f"{cf.order}, complemented={cf.complemented}, "
              f"|centralizer|={cf.centralizer.order}")
    for k in _ks(args.k):
        marks = {c: submodular.in_class(L, c, k) for c in submodular.CLASS_IDS}
        print(f"  k={k}: " + " ".join(f"{c}={v}" for c, v in marks.items()))
    return EXIT_TRUE


PREDICATES = ("modular", "submodular", "k-submodular", "n-modular-embedded",
              "p-subnormal", "kp-subnormal", "k-lm")


def cmd_check(args) -> int:
    G = _group(args.group)
    L = G.lattice()
    pred = args.predicate
    if pred == "k-lm":
        ok, cex = submodular.is_k_LM_group(L, args.k)
        print(f"{G.name} is {'' if ok else 'not '}a {args.k}-LM group")
        if cex is not None:
            a, b = cex
            print(f"  counterexample pair: orders "
                  f"{L.subgroups[a].order}, {L.subgroups[b].order}; "
                  f"generators {L.subgroups[a].gen_cycles()} / "
                  f"{L.subgroups[b].gen_cycles()}")
        return EXIT_TRUE if ok else EXIT_FALSE
    if not args.gens:
        raise GroupError(f"predicate {pred!r} needs --gens")
    H = _subgroup(G, args.gens)
    if pred == "modular":
        ok = submodular.is_modular_subgroup(L, H)
    elif pred == "submodular":
        ok = submodular.is_submodular(L, H)
    elif pred == "k-submodular":
        ok, witness = submodular.is_k_submodular(L, H, args.k)
        if witness is not None:
            print("witness chain:")
            for step in witness.steps:
                lo, up = L.subgroups[step.lower], L.subgroups[step.upper]
                tag = "normal" if step.kind == "normal" else f"n={step.n}"
                print(f"  |{lo.order}| -> |{up.order}|  [{tag}]")
    elif pred == "n-modular-embedded":
        ok = submodular.is_n_modularly_embedded(L, L.top, H, args.n)
    elif pred == "p-subnormal":
        ok = classes.is_P_subnormal(G, H)
    elif pred == "kp-subnormal":
        ok = classes.is_KP_subnormal(G, H)
    else:
        raise GroupError(f"unknown predicate {pred!r}")
    print(f"{pred}({H.gen_cycles()}, |H|={H.order}) in {G.name}: {ok}")
    return EXIT_TRUE if ok else EXIT_FALSE


def cmd_classify(args) -> int:
    G = _group(args.group)
    L = G.lattice()
    for k in _ks(args.k):
        for c in submodular.CLASS_IDS:
            print(f"k={k} class {c}: {submodular.in_class(L, c, k)}")
    return EXIT_TRUE


def cmd_verify(args) -> int:
    suites = [s for s in args.suite.split(",") if s]
    for s in suites:
        if s not in harness.SUITE_IDS:
            raise GroupError(f"unknown suite {s!r}")
    corpus = harness.build_corpus(harness.CorpusConfig(cap=args.cap))
    reports = harness.run_suites(suites, _ks(args.k), corpus, jobs=args.jobs)
    if args.out:
        harness.report_to_file(reports, args.out)
    all_ok = True
    for rep in reports:
        s = rep.summary()
        print(f"suite {rep.suite} k={rep.k_set}: "
              f"{s['passed']}/{s['total']} records pass, "
              f"suite_pass={rep.passed}")
        all_ok = all_ok and rep.passed
    return EXIT_TRUE if all_ok else EXIT_FALSE


def cmd_corpus(args) -> int:
    if args.action != "list":
        raise GroupError(f"unknown corpus action {args.action!r}")
    corpus = harness.build_corpus(harness.CorpusConfig(cap=args.cap))
    for e in corpus:
        print(f"{e.name:24s} {' '.join(e.tags())}")
    print(f"total: {len(corpus)} entries")
    return EXIT_TRUE


def cmd_export_lattice(args) -> int:
    G = _group(args.group)
    if not args.emit_dot:
        raise GroupError("export-lattice requires --emit-dot")
    dot = submodular.lattice_dot(G.lattice(), k=args.k)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dot + "\n")
    else:
        print(dot)
    return EXIT_TRUE


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="grouplab",
        description="finite-group engine for submodularity analysis")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("show", help="summarize a group")
    p.add_argument("group", help="spec: JSON, file path, or builder:args")
    p.add_argument("--k", default="1,2,3", help="comma-separated k values")
    p.set_defaults(fn=cmd_show)

    p = sub.add_parser("check", help="evaluate a subgroup predicate")
    p.add_argument("predicate", choices=PREDICATES)
    p.add_argument("group")
    p.add_argument("--gens", action="append", default=[],
                   help="subgroup generator in cycle notation (repeatable)")
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--n", type=int, default=1)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("classify", help="class memberships of a group")
    p.add_argument("group")
    p.add_argument("--k", default="1,2,3")
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", required=True,
                   help="comma-separated suite ids, e.g. T3.1,T3.2")
    p.add_argument("--k", default="1,2,3")
    p.add_argument("--cap", type=int, default=harness.DEFAULT_CORPUS_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", help="write JSON report to this path")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("corpus", help="corpus inspection")
    p.add_argument("action", choices=["list"])
    p.add_argument("--cap", type=int, default=harness.DEFAULT_CORPUS_CAP)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("export-lattice", help="emit the subgroup lattice")
    p.add_argument("group")
    p.add_argument("--emit-dot", action="store_true")
    p.add_argument("--k", type=int, default=None,
                   help="shade subgroups k-submodular in the group")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_export_lattice)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "check" and args.k < 1:
            raise GroupError("k must be >= 1")
        return args.fn(args)
    except (GroupError, ParseError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
