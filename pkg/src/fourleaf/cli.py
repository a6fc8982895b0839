"""Command-line surface.

Exit codes: 0 = success / tree found / preconditions hold;
2 = preconditions fail / refuted / violations found; 1 = usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .certificates import Disconnected, InducedStarFound, LowSigmaWitness
from .conditions import find_induced_star, sigma_k
from .families import GenerationFailed, random_theorem_instance, sharpness_graph
from .graph import (
    FormatError,
    Graph,
    encode_graph6,
    format_edge_list,
    is_connected,
    parse_edge_list,
    parse_graph6,
)
from .oracle import exhaustive_sweep, min_leaf_spanning_tree, random_sweep
from .solver import Refuted, Solved, solve

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_REFUTED = 2


def _add_input_flags(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="FILE", help="edge-list file (n, then 'u v' lines)")
    src.add_argument("--graph6", metavar="STR", help="inline graph6 string")
    src.add_argument("--family", choices=("sharpness", "random"), help="generated instance")
    p.add_argument("--m", type=int, help="block size for --family sharpness")
    p.add_argument("--n", type=int, help="vertex count for --family random")
    p.add_argument("--seed", type=int, default=0, help="rng seed")


def _add_format_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("human", "records"), default="human")


def _load_graph(args) -> Graph:
    if args.input:
        with open(args.input, "r", encoding="ascii") as fh:
            return parse_edge_list(fh.read())
    if args.graph6:
        return parse_graph6(args.graph6)
    if args.family == "sharpness":
        if args.m is None:
            raise FormatError("--family sharpness requires --m")
        return sharpness_graph(args.m)
    if args.family == "random":
        if args.n is None:
            raise FormatError("--family random requires --n")
        return random_theorem_instance(args.n, args.seed)
    raise FormatError("no input source")


def _emit(records_mode: bool, record: dict, human: str) -> None:
    print(json.dumps(record) if records_mode else human)


def _certificate_record(cert) -> dict:
    if isinstance(cert, InducedStarFound):
        return {
            "certificate": "induced-star",
            "center": cert.star.center,
            "star_leaves": list(cert.star.leaves),
        }
    if isinstance(cert, LowSigmaWitness):
        return {
            "certificate": "low-sigma",
            "vertices": list(cert.vertices),
            "degree_sum": cert.degree_sum,
        }
    if isinstance(cert, Disconnected):
        return {"certificate": "disconnected", "component": sorted(cert.witness)}
    return {"certificate": "unknown"}


def _certificate_human(cert) -> str:
    if isinstance(cert, InducedStarFound):
        return (
            f"induced K_(1,5): center {cert.star.center}, "
            f"leaves {list(cert.star.leaves)}"
        )
    if isinstance(cert, LowSigmaWitness):
        return (
            f"independent 5-set {list(cert.vertices)} with degree sum "
            f"{cert.degree_sum} <= n-2"
        )
    if isinstance(cert, Disconnected):
        return f"disconnected: component {sorted(cert.witness)}"
    return repr(cert)


def cmd_check(args) -> int:
    g = _load_graph(args)
    rec_mode = args.format == "records"
    connected, comp = is_connected(g)
    star = find_induced_star(g, 5)
    rep = sigma_k(g, 5)
    holds = connected and star is None and rep.meets(g.n - 1)
    record = {
        "type": "check",
        "graph6": encode_graph6(g),
        "n": g.n,
        "connected": connected,
        "k15_free": star is None,
        "sigma5": rep.value,
        "sigma5_witness": list(rep.witness) if rep.witness else None,
        "threshold": g.n - 1,
        "holds": holds,
    }
    if star is not None:
        record["star_center"] = star.center
        record["star_leaves"] = list(star.leaves)
    if not connected:
        record["component"] = sorted(comp or ())
    human = [
        f"n = {g.n}",
        f"connected: {connected}" + ("" if connected else f" (component {sorted(comp or ())})"),
        "K_(1,5)-free: " + ("yes" if star is None else
                            f"no (center {star.center}, leaves {list(star.leaves)})"),
        f"sigma_5 = {'infinite' if rep.is_infinite else rep.value} (needs >= {g.n - 1})"
        + (f", witness {list(rep.witness)}" if rep.witness else ""),
        "preconditions " + ("hold" if holds else "fail"),
    ]
    _emit(rec_mode, record, "\n".join(human))
    return EXIT_OK if holds else EXIT_REFUTED


def cmd_solve(args) -> int:
    g = _load_graph(args)
    rec_mode = args.format == "records"
    res = solve(g, collect_trace=args.trace is not None)
    if args.trace:
        with open(args.trace, "w", encoding="ascii") as fh:
            for tr in res.trace:
                fh.write(json.dumps({
                    "tag": tr.claim_tag,
                    "removed": [list(e) for e in tr.removed],
                    "added": [list(e) for e in tr.added],
                    "phi_before": list(tr.phi_before),
                    "phi_after": list(tr.phi_after),
                }) + "\n")
    if isinstance(res, Solved):
        t = res.tree
        edges = sorted(t.edges)
        record = {
            "type": "tree",
            "graph6": encode_graph6(g),
            "leaves": t.leaf_count,
            "branch_vertices": len(t.branch_vertices()),
            "edges": [list(e) for e in edges],
            "moves": res.moves,
        }
        human = (
            f"spanning tree with {t.leaf_count} leaves, "
            f"{len(t.branch_vertices())} branch vertices\n"
            + "\n".join(f"{u} {v}" for u, v in edges)
        )
        _emit(rec_mode, record, human)
        return EXIT_OK
    record = {"type": "refuted", "graph6": encode_graph6(g)}
    record.update(_certificate_record(res.certificate))
    _emit(rec_mode, record, "refuted: " + _certificate_human(res.certificate))
    return EXIT_REFUTED


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    rec_mode = args.format == "records"
    stop = None if args.full else 2
    rep = min_leaf_spanning_tree(g, budget=args.budget, stop_at=stop)
    record = {
        "type": "oracle",
        "graph6": encode_graph6(g),
        "min_leaves": rep.min_leaves,
        "exact": rep.exact,
        "trees_enumerated": rep.trees_enumerated,
        "witness_edges": [list(e) for e in sorted(rep.witness.edges)],
    }
    human = (
        f"min leaves = {rep.min_leaves} ({'exact' if rep.exact else 'upper bound'}), "
        f"{rep.trees_enumerated} trees enumerated"
    )
    _emit(rec_mode, record, human)
    return EXIT_OK


def cmd_validate(args) -> int:
    rec_mode = args.format == "records"
    if args.exhaustive is not None:
        summary = exhaustive_sweep(
            args.exhaustive, workers=args.workers, oracle_budget=args.budget
        )
    else:
        summary = random_sweep(
            args.random, args.samples, args.seed,
            workers=args.workers, oracle_budget=args.budget,
        )
    if rec_mode:
        sys.stdout.write(summary.to_records())
    else:
        print(
            f"n={summary.n} scanned={summary.graphs_scanned} "
            f"connected={summary.connected} held={summary.hypotheses_held} "
            f"trees={summary.solver_trees} refuted={summary.solver_refutations} "
            f"violations={len(summary.violations)}"
        )
        for v in summary.violations[:20]:
            print(f"  violation {v.kind}: {v.graph6} {v.detail}")
    return EXIT_OK if not summary.violations else EXIT_REFUTED


def cmd_gen(args) -> int:
    g = _load_graph(args)
    if args.format == "records":
        print(json.dumps({"type": "graph", "n": g.n, "graph6": encode_graph6(g)}))
    elif args.edge_list:
        sys.stdout.write(format_edge_list(g))
    else:
        print(encode_graph6(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fourleaf",
        description="Spanning trees with at most 4 leaves in K_(1,5)-free graphs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="test the solver preconditions")
    _add_input_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("solve", help="find a <=4-leaf spanning tree or refute")
    _add_input_flags(p)
    _add_format_flag(p)
    p.add_argument("--trace", metavar="PATH", help="write accepted moves as JSON lines")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="exact minimum-leaf spanning tree")
    _add_input_flags(p)
    _add_format_flag(p)
    p.add_argument("--budget", type=int, default=10_000_000, help="max trees to enumerate")
    p.add_argument("--full", action="store_true", help="disable the 2-leaf early exit")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("validate", help="exhaustive or randomized sweeps")
    grp = p.add_mutually_exclusive_group(required=True)
    grp.add_argument("--exhaustive", type=int, metavar="N", help="all labeled N-vertex graphs")
    grp.add_argument("--random", type=int, metavar="N", help="random N-vertex instances")
    p.add_argument("--samples", type=int, default=100, help="sample count for --random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=100_000, help="oracle budget per graph")
    p.add_argument("--workers", type=int, default=None)
    _add_format_flag(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("gen", help="emit a family instance")
    _add_input_flags(p)
    _add_format_flag(p)
    p.add_argument("--edge-list", action="store_true", help="emit edge-list text instead of graph6")
    p.set_defaults(func=cmd_gen)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, FileNotFoundError, GenerationFailed, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
