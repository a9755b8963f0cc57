"""Command-line front end.

Every subcommand prints one JSON report to standard output.  Reports embed a
SHA-256 digest of each input file and contain no timestamps, so identical
configurations produce byte-identical output.  Exit status is 0 whenever the
analysis completed (whatever the verdict), 1 on bad input or internal errors,
and 2 when an enumeration budget was exhausted (verdict unknown).  A
reduction chain that fails one of its hypotheses aborts and exits 1, since
an unverified chain is an error of the chain specification, not a verdict.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from typing import Optional

from . import acceptance
from .graphs import (
    GraphError,
    SimpleGraph,
    SpanningTree,
    graph_from_dict,
    graph_to_dict,
    to_dot,
)
from .lc import (
    OrbitBudgetError,
    WitnessBudgetError,
    certify_nonlocal,
    find_local_representative,
    lc_equivalent,
    lc_orbit,
)
from .polyforms import enumerate_polyforms, polyform_embedding
from .reduction import CertStore, load_chain_spec, reduction_chain
from .surface import (
    AdjacencyRelation,
    EmbeddingError,
    adjacency_relation,
    dump_setup,
    load_setup,
    phi_graph,
    surface_stabilizer,
    transform_to_graph_state,
    validate_embedding,
)
from .graphs import first_spanning_tree

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_BUDGET = 2


def _sha256(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True, default=str))


def _input_record(path: str) -> dict:
    return {"path": os.path.basename(path), "sha256": _sha256(path)}


def _parse_tree(emb, tree_csv: Optional[str]) -> SpanningTree:
    if tree_csv is None:
        return first_spanning_tree(emb.graph)
    try:
        indices = frozenset(int(tok) for tok in tree_csv.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise GraphError(f"--tree must be a CSV of edge indices: {exc}") from exc
    return SpanningTree(emb.graph, indices)


def _locality_dot(graph: SimpleGraph, relation: AdjacencyRelation) -> str:
    def style(u, v) -> str:
        return "" if relation.related(u, v) else "style=dashed"

    return to_dot(graph, name="phi", edge_style=style)


def _load_graph_file(path: str) -> SimpleGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_dict(json.load(fh))


def _write_out(path: Optional[str], content: str) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(content)


def cmd_phi(args) -> int:
    emb = validate_embedding(load_setup(args.setup))
    tree = _parse_tree(emb, args.tree)
    graph = phi_graph(emb, tree)
    relation = adjacency_relation(emb)
    dot = _locality_dot(graph, relation)
    result = {
        "qubits": emb.n_qubits,
        "tree_edges": sorted(tree.tree_edges),
        "hadamard_qubits": sorted(emb.qubit_ids[k] for k in tree.deleted_edges),
        "graph": graph_to_dict(graph),
    }
    if args.format == "dot":
        result["dot"] = dot
        _write_out(args.out, dot)
    else:
        _write_out(args.out, json.dumps(graph_to_dict(graph), indent=2, sort_keys=True))
    _emit({"command": "phi", "inputs": {"setup": _input_record(args.setup)}, "result": result})
    return EXIT_OK


def cmd_verify_thm1(args) -> int:
    emb = validate_embedding(load_setup(args.setup))
    tree = _parse_tree(emb, args.tree)
    _, degeneracy = surface_stabilizer(emb)
    res = transform_to_graph_state(emb, tree)
    _emit(
        {
            "command": "verify-thm1",
            "inputs": {"setup": _input_record(args.setup)},
            "result": {
                "degeneracy": degeneracy,
                "hadamard_qubits": sorted(res.hadamard_qubits),
                "graph": graph_to_dict(res.graph),
                "verified": res.verified,
            },
        }
    )
    return EXIT_OK


def cmd_lc_orbit(args) -> int:
    graph = _load_graph_file(args.graph)
    try:
        orbit = lc_orbit(graph, budget=args.budget, track_paths=args.paths)
    except OrbitBudgetError as exc:
        _emit(
            {
                "command": "lc-orbit",
                "inputs": {"graph": _input_record(args.graph)},
                "result": {"status": "budget-exceeded", "budget": exc.budget},
            }
        )
        return EXIT_BUDGET
    result = {
        "status": "complete",
        "vertices": orbit.n_vertices,
        "orbit_size": orbit.size,
        "generations": orbit.generations,
        "seed_key": format(orbit.seed_key, "x"),
        "orbit_digest": orbit.digest(),
    }
    if args.out:
        lines = []
        for key in orbit.members:
            if orbit.witness_paths is not None:
                path = orbit.witness_paths[int(key)]
                lines.append(f"{int(key):x} {','.join(str(v) for v in path)}")
            else:
                lines.append(f"{int(key):x}")
        _write_out(args.out, "\n".join(lines) + "\n")
        result["dump"] = os.path.basename(args.out)
    _emit({"command": "lc-orbit", "inputs": {"graph": _input_record(args.graph)}, "result": result})
    return EXIT_OK


def cmd_lc_equiv(args) -> int:
    g = _load_graph_file(args.g)
    h = _load_graph_file(args.h)
    try:
        witness = lc_equivalent(g, h)
    except WitnessBudgetError as exc:
        _emit(
            {
                "command": "lc-equiv",
                "inputs": {"g": _input_record(args.g), "h": _input_record(args.h)},
                "result": {"status": "budget-exceeded", "free_dimensions": exc.free_dim},
            }
        )
        return EXIT_BUDGET
    result: dict = {"status": "complete", "equivalent": witness is not None}
    if witness is not None:
        result["witness"] = witness.diagonals()
    _emit(
        {
            "command": "lc-equiv",
            "inputs": {"g": _input_record(args.g), "h": _input_record(args.h)},
            "result": result,
        }
    )
    return EXIT_OK


def cmd_locality(args) -> int:
    emb = validate_embedding(load_setup(args.setup))
    graph = phi_graph(emb)
    relation = adjacency_relation(emb)
    inputs = {"setup": _input_record(args.setup)}
    try:
        rep = find_local_representative(graph, relation, budget=args.budget)
        if rep is not None:
            result = {
                "verdict": "local",
                "local_graph": graph_to_dict(rep.graph),
                "complementations": list(rep.path),
            }
            if args.format == "dot":
                result["dot"] = _locality_dot(rep.graph, relation)
            _emit({"command": "locality", "inputs": inputs, "result": result})
            return EXIT_OK
        _, orbit = certify_nonlocal(graph, relation, budget=args.budget)
        result = {
            "verdict": "nonlocal",
            "orbit_size": orbit.size,
            "orbit_digest": orbit.digest(),
        }
        _emit({"command": "locality", "inputs": inputs, "result": result})
        return EXIT_OK
    except OrbitBudgetError as exc:
        _emit(
            {
                "command": "locality",
                "inputs": inputs,
                "result": {"verdict": "unknown", "reason": "budget", "budget": exc.budget},
            }
        )
        return EXIT_BUDGET


def cmd_reduce(args) -> int:
    spec = load_chain_spec(args.chain)
    store = CertStore(args.certs) if args.certs else None
    report = reduction_chain(spec, budget=args.budget, store=store)
    _emit(
        {
            "command": "reduce",
            "inputs": {"chain": _input_record(args.chain)},
            "result": {
                "ok": report.ok,
                "verdicts": dict(sorted(report.verdicts.items())),
                "base_orbits": report.base_orbits,
                "steps_verified": len(report.step_reports),
                "failures": report.failures,
            },
        }
    )
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_enumerate(args) -> int:
    shapes = enumerate_polyforms(args.n, args.lattice)
    written = []
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for i, shape in enumerate(shapes):
            emb = polyform_embedding(shape, args.lattice)
            path = os.path.join(args.out, f"{args.lattice}_{args.n}_{i}.json")
            dump_setup(emb, path)
            written.append(os.path.basename(path))
    _emit(
        {
            "command": "enumerate",
            "inputs": {},
            "result": {
                "lattice": args.lattice,
                "cells": args.n,
                "count": len(shapes),
                "shapes": [[list(c) for c in shape] for shape in shapes],
                "files": written,
            },
        }
    )
    return EXIT_OK


def cmd_selftest(args) -> int:
    numbers = None
    if args.only:
        numbers = [int(tok) for tok in args.only.split(",")]
    results = acceptance.run_all(numbers)
    for res in results:
        print(res.line())
    failed = [res.number for res in results if not res.passed]
    print(f"selftest: {len(results) - len(failed)}/{len(results)} criteria passed")
    return EXIT_OK if not failed else EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricgs",
        description="Surface-code setups, equivalent graph states, locality verdicts.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, setup=False):
        p.add_argument("--budget", type=int, default=10**8, help="orbit member budget")
        p.add_argument("--workers", type=int, default=1, help="reserved; must be >= 1")
        if setup:
            p.add_argument("--setup", required=True, help="setup JSON file")

    p = sub.add_parser("phi", help="map a setup to its tree graph")
    common(p, setup=True)
    p.add_argument("--tree", help="CSV of spanning-tree edge indices")
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.add_argument("--out", help="write the graph/DOT here as well")
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("verify-thm1", help="span check of the rotated stabilizer")
    common(p, setup=True)
    p.add_argument("--tree", help="CSV of spanning-tree edge indices")
    p.set_defaults(func=cmd_verify_thm1)

    p = sub.add_parser("lc-orbit", help="enumerate a graph's complementation class")
    common(p)
    p.add_argument("--graph", required=True, help="graph JSON file")
    p.add_argument("--paths", action="store_true", help="track complementation paths")
    p.add_argument("--out", help="dump hex keys (and paths) to this file")
    p.set_defaults(func=cmd_lc_orbit)

    p = sub.add_parser("lc-equiv", help="pairwise equivalence witness")
    common(p)
    p.add_argument("--g", required=True, help="first graph JSON file")
    p.add_argument("--h", required=True, help="second graph JSON file")
    p.set_defaults(func=cmd_lc_equiv)

    p = sub.add_parser("locality", help="local / nonlocal / unknown verdict")
    common(p, setup=True)
    p.add_argument("--format", choices=("dot", "json"), default="json")
    p.set_defaults(func=cmd_locality)

    p = sub.add_parser("reduce", help="verify a reduction chain")
    common(p)
    p.add_argument("--chain", required=True, help="chain specification JSON")
    p.add_argument("--certs", help="certificate store directory")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("enumerate", help="enumerate polyform setups")
    common(p)
    p.add_argument("--lattice", choices=("square", "triangular"), required=True)
    p.add_argument("--n", type=int, required=True, help="number of cells")
    p.add_argument("--out", help="directory for the setup files")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    common(p)
    p.add_argument("--only", help="CSV of criterion numbers to run")
    p.set_defaults(func=cmd_selftest)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.workers < 1:
        parser.error("--workers must be at least 1")
    if args.budget < 1:
        parser.error("--budget must be at least 1")
    try:
        return args.func(args)
    except (GraphError, EmbeddingError, ValueError, OSError, json.JSONDecodeError) as exc:
        _emit({"command": args.command, "error": str(exc)})
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
