"""Command-line entry point: ``indsub <subcommand> ...``; results as JSON on stdout.

Exit status: 0 success, 2 usage or input error, 1 internal invariant breach.
"""

from __future__ import annotations

import argparse
import copy
import dataclasses
import json
import sys
import time
from typing import Any

from . import config
from .altenum import chi_naive, chi_orbit
from .counting import (ColoredGraph, count_cp_hom, count_cp_indsub_prop, count_emb, count_hom,
                       count_indsub, count_indsub_prop, count_strong_emb, count_sub)
from .errors import CapExceededError, GraphError, GraphFormatError, InvariantError
from .graph import Graph, complete_bipartite, count_cliques, wreath
from .graph_io import format_permutations, read_coloring, read_graph
from .groups import closure, orbit, sylow_exponent, sylow_generators
from .properties import BUILTINS, Property, builtin, table_property, witness_set
from .reductions.classify import classify_p_edge_transitive
from .reductions.pipeline import pipeline_clique_decision, pipeline_exact
from .verify import ALIASES, SUITES, run_suite


class UsageError(Exception):
    pass


# -- helpers -------------------------------------------------------------------------

def _num(x: int | None) -> str | None:
    return None if x is None else str(x)


def _load(path: str | None, what: str) -> Graph:
    if path is None:
        raise UsageError(f"--{what} FILE is required")
    return read_graph(path)


def _resolve_property(args) -> Property:
    name = args.property
    if name is None:
        raise UsageError("--property NAME is required")
    if name == "F_subgraph_free":
        return builtin(name, _load(args.forbidden, "forbidden"))
    if name == "table":
        H = _load(args.table_pattern, "table-pattern")
        bits = args.table_bits or ""
        if set(bits) - {"0", "1"}:
            raise UsageError("--table-bits must be a string of 0/1, bit S at position S")
        return table_property(H, [int(b) for b in bits])
    if name not in BUILTINS:
        raise UsageError(f"unknown property {name!r}; known: "
                         f"{', '.join(sorted(BUILTINS) + ['F_subgraph_free', 'table'])}")
    return builtin(name)


def _add_property_args(p: argparse.ArgumentParser, flag: str = "--property") -> None:
    p.add_argument(flag, dest="property", help="built-in name, F_subgraph_free or table")
    p.add_argument("--forbidden", help="graph file F for F_subgraph_free")
    p.add_argument("--table-pattern", help="pattern H for a table property")
    p.add_argument("--table-bits", help="truth table over the edge subsets of H, e.g. 0110")


def _count_result(value: int, mod: int | None) -> dict:
    if mod:
        return {"residue": _num(value), "modulus": mod}
    return {"value": _num(value), "modulus": None}


# -- subcommands ---------------------------------------------------------------------

PLAIN_COUNTERS = {"hom": count_hom, "emb": count_emb, "stremb": count_strong_emb,
                  "sub": count_sub, "indsub": count_indsub}


def cmd_count(args) -> dict:
    mod = args.mod
    if args.what in PLAIN_COUNTERS:
        H, G = _load(args.pattern, "pattern"), _load(args.host, "host")
        return _count_result(PLAIN_COUNTERS[args.what](H, G, mod=mod), mod)
    if args.what == "indsub-prop":
        if args.k is None:
            raise UsageError("--k is required for indsub-prop")
        return _count_result(count_indsub_prop(_resolve_property(args), args.k, _load(args.host, "host"), mod),
                             mod)
    H, G = _load(args.pattern, "pattern"), _load(args.host, "host")
    if args.coloring is None:
        raise UsageError("--coloring FILE is required for colour-prescribed counts")
    CG = ColoredGraph(G, H, read_coloring(args.coloring))
    if args.what == "cp-hom":
        mask = H.full_mask if args.mask is None else int(args.mask, 0)
        return _count_result(count_cp_hom(mask, CG, mod=mod), mod) | {"mask": mask}
    return _count_result(count_cp_indsub_prop(_resolve_property(args), CG, mod=mod), mod)


def cmd_chi(args) -> dict:
    phi = _resolve_property(args)
    H = _load(args.graph, "graph")
    mods = args.mod or []
    if args.method == "orbit":
        res = chi_orbit(phi, H, mods)
    else:
        res = chi_naive(phi, H, mods, jobs=args.jobs)
    return {"value": _num(res.value), "residues": {str(p): _num(r) for p, r in res.residues.items()},
            "method": res.method, "phi_evaluations": res.phi_evaluations}


def cmd_property(args) -> dict:
    phi = _resolve_property(args)
    return {"property": phi.name, "value": phi(_load(args.graph, "graph"))}


def cmd_witness_set(args) -> dict:
    phi = _resolve_property(args)
    ws = witness_set(phi, args.bound)
    return {"property": phi.name, "bound": ws.bound, "members": ws.members}


def cmd_sylow(args) -> dict:
    gens = sylow_generators(args.p, args.k)
    group = closure(gens)
    W = wreath(args.p, args.k)
    b = args.p ** (args.k - 1)
    edge_orbit = orbit(group, (0, b), "edge")
    vertex_orbit = orbit(group, 0, "vertex")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(format_permutations(gens))
    return {
        "p": args.p, "k": args.k, "degree": group.n,
        "order": _num(group.order), "e": sylow_exponent(args.p, args.k),
        "order_matches": group.order == args.p ** sylow_exponent(args.p, args.k),
        "transitive_on_vertices": len(vertex_orbit) == group.n,
        "transitive_on_edges": edge_orbit == set(W.edges),
        "generators": format_permutations(gens).splitlines(),
    }


def cmd_classify(args) -> dict:
    return classify_p_edge_transitive(args.max_n).to_dict()


def cmd_pipeline(args) -> dict:
    phi = _resolve_property(args)
    G = _load(args.host, "host")
    mod = args.mod
    if args.clique is not None:
        decision, tr = pipeline_clique_decision(phi, G, args.clique, mod=mod, seed=args.seed,
                                                repetitions=args.repetitions)
        reference = count_cliques(G, args.clique) > 0
        out = tr.to_dict()
        out.update(final=decision, reference=reference, match=decision == reference)
        return out
    if args.t is None:
        raise UsageError("--t or --clique is required")
    value, tr = pipeline_exact(phi, args.t, G, mod=mod)
    reference = count_hom(complete_bipartite(args.t, args.t), G)
    if mod:
        reference %= mod
    out = tr.to_dict()
    out.update(final=_num(value), reference=_num(reference), match=value == reference)
    return out


def cmd_verify(args) -> dict:
    if args.suite != "all" and args.suite not in SUITES and args.suite not in ALIASES:
        names = sorted(SUITES) + sorted(ALIASES) + ["all"]
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(names)}")
    reports = run_suite(args.suite, args.seed)
    return {"passed": sum(r.passed for r in reports), "failed": sum(r.failed for r in reports),
            "suites": [r.to_dict() for r in reports]}


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", action="append", default=[], metavar="NAME=VALUE",
                        help=f"override a size cap; names: {', '.join(f.name for f in dataclasses.fields(config.Caps))}")
    common.add_argument("--jobs", type=int, default=1, help="worker threads where supported")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--no-timing", action="store_true", help="omit elapsed_ms (byte-identical output)")
    common.add_argument("--format", choices=("json", "tsv"), default="json")

    parser = argparse.ArgumentParser(prog="indsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="brute-force counts")
    p.add_argument("--what", required=True,
                   choices=sorted(PLAIN_COUNTERS) + ["cp-hom", "cp-indsub-prop", "indsub-prop"])
    p.add_argument("--pattern")
    p.add_argument("--host")
    p.add_argument("--coloring")
    p.add_argument("--mask", help="edge subset of the pattern for cp-hom (default: all edges)")
    p.add_argument("--k", type=int)
    p.add_argument("--mod", type=int)
    _add_property_args(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("chi", parents=[common], help="alternating enumerator")
    _add_property_args(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--method", choices=("naive", "orbit"), default="naive")
    p.add_argument("--mod", type=int, action="append", help="report the residue mod P (repeatable)")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("property", parents=[common], help="evaluate a property on a graph")
    _add_property_args(p, "--name")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_property)

    p = sub.add_parser("witness-set", parents=[common], help="prime powers t with Phi(IS_2t) != Phi(K_t,t)")
    _add_property_args(p)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_witness_set)

    p = sub.add_parser("sylow", parents=[common], help="Sylow p-subgroup of S_{p^k}")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--out", help="also write the generators, one image array per line")
    p.set_defaults(func=cmd_sylow)

    p = sub.add_parser("classify", parents=[common], help="scan p-edge-transitive graphs")
    p.add_argument("--max-n", type=int, default=6)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("pipeline", parents=[common], help="run a reduction through simulated oracles")
    _add_property_args(p)
    p.add_argument("--host", required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--clique", type=int, help="decide k-cliques instead of counting K_t,t homs")
    p.add_argument("--mod", type=int)
    p.add_argument("--repetitions", type=int, help="override the 2^k repetitions in mod-p mode")
    p.set_defaults(func=cmd_pipeline)

    p = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    p.add_argument("--suite", required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def _apply_caps(overrides: list[str]) -> None:
    names = {f.name for f in dataclasses.fields(config.Caps)}
    for item in overrides:
        name, sep, value = item.partition("=")
        if not sep or name not in names:
            raise UsageError(f"bad --cap {item!r}; expected NAME=VALUE with NAME in {sorted(names)}")
        try:
            setattr(config.caps, name, int(value))
        except ValueError:
            raise UsageError(f"cap value must be an integer: {item!r}") from None


def _emit(result: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(result, sort_keys=True) + "\n")
        return
    for key in sorted(result):
        value = result[key]
        text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
        sys.stdout.write(f"{key}\t{text}\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = copy.copy(config.caps)
    try:
        _apply_caps(args.cap)
        start = time.perf_counter()
        result: dict[str, Any] = args.func(args)
        if not args.no_timing:
            result["elapsed_ms"] = round((time.perf_counter() - start) * 1000, 3)
    except InvariantError as e:
        print(f"indsub: invariant violated: {e}", file=sys.stderr)
        return 1
    except (UsageError, GraphError, GraphFormatError, CapExceededError, KeyError, OSError, ValueError) as e:
        print(f"indsub: error: {e}", file=sys.stderr)
        return 2
    finally:
        for f in dataclasses.fields(config.Caps):
            setattr(config.caps, f.name, getattr(saved, f.name))
    _emit(result, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
