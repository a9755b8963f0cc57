"""The acceptance suite: one callable check per shipped guarantee.

Each criterion returns a :class:`CriterionResult`; ``run_all`` executes the
whole battery.  The same functions back the ``selftest`` CLI subcommand and
``tests/test_acceptance.py``, so "the suite is green" means the same thing
everywhere.

Scale note: the cross-oracle criterion compares the pairwise algebraic test
against orbit membership.  All pairs are checked exhaustively through 5
vertices.  At 6 vertices there are 26704 connected labeled graphs, i.e.
~3.6e8 ordered pairs, which is far outside a desk-scale run; the 6-vertex
part therefore covers every graph against its class representative, every
pair of class representatives, and a large seeded sample of cross pairs.
``tests/test_acceptance.py`` exposes the literal all-pairs version behind
the ``slow`` marker.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import numpy as np

from . import polyforms
from .fixture_files import fixture_path
from .graphs import Multigraph, SimpleGraph, enumerate_spanning_trees, phi
from .lc import canonical_key, certify_nonlocal, graph_from_key, lc_equivalent, lc_orbit
from .pauli import (
    Tableau,
    apply_hadamard,
    conjugate_by_pauli,
    graph_state_vector,
    is_stabilized,
)
from .reduction import (
    LeafGraph,
    classify,
    epsilon_swap,
    leaf_delete_commute_check,
    load_chain_spec,
    reduction_chain,
)
from .surface import (
    adjacency_relation,
    homology_rank,
    load_setup,
    loop_operators,
    one_point_double_plaquette,
    phi_graph,
    single_plaquette,
    square_torus,
    surface_stabilizer,
    transform_to_graph_state,
)

SEED = 987123


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    elapsed: float
    details: str

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"criterion {self.number:2d} [{status}] {self.elapsed:7.2f}s  {self.title}: {self.details}"


def _result(number: int, title: str, started: float, passed: bool, details: str) -> CriterionResult:
    return CriterionResult(number, title, passed, time.time() - started, details)


# -- helpers ----------------------------------------------------------------


def random_connected_multigraph(rng: np.random.Generator, max_edges: int = 12) -> Multigraph:
    """A random connected multigraph with at most ``max_edges`` edges."""
    n = int(rng.integers(2, 9))
    edges = []
    for v in range(1, n):
        edges.append((int(rng.integers(0, v)), v))
    extra = int(rng.integers(0, max_edges - (n - 1) + 1))
    for _ in range(extra):
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u != v:
            edges.append((u, v))
    perm = rng.permutation(len(edges))
    return Multigraph(list(range(n)), [edges[i] for i in perm])


def connected_graphs(n: int) -> list[SimpleGraph]:
    """All connected labeled simple graphs on vertices 0..n-1."""
    out = []
    for key in range(1 << (n * (n - 1) // 2)):
        g = graph_from_key(key, list(range(n)))
        if g.is_connected():
            out.append(g)
    return out


def orbit_partition(graphs_list: list[SimpleGraph]) -> dict[int, int]:
    """Map each canonical key to the smallest key of its orbit."""
    rep_of: dict[int, int] = {}
    for g in graphs_list:
        k = canonical_key(g)
        if k in rep_of:
            continue
        orbit = lc_orbit(g)
        rep = int(min(int(x) for x in orbit.members))
        for member in orbit.members:
            rep_of[int(member)] = rep
    return rep_of


def leaf_graph_pool(rng: np.random.Generator) -> list[LeafGraph]:
    """Leaf-seeded graphs: exhaustive up to 5 vertices, sampled at 6 and 7."""
    pool = []
    for n in (3, 4, 5):
        for g in connected_graphs(n):
            for a in range(n):
                if g.degree(a) == 1:
                    pool.append(LeafGraph(g, a, g.neighbors(a)[0]))
    for n, count in ((6, 24), (7, 8)):
        made = 0
        while made < count:
            nbits = (n - 1) * (n - 2) // 2
            key = int(rng.integers(0, 1 << nbits))
            core = graph_from_key(key, list(range(n - 1)))
            if not core.is_connected():
                continue
            inner = int(rng.integers(0, n - 1))
            g = SimpleGraph.from_edges(
                list(range(n)), core.edges() + [(inner, n - 1)]
            )
            pool.append(LeafGraph(g, n - 1, inner))
            made += 1
    return pool


# -- criteria ---------------------------------------------------------------


def criterion_1_single_plaquette() -> CriterionResult:
    t0 = time.time()
    plq = single_plaquette(4)
    res = transform_to_graph_state(plq)
    degrees = sorted(res.graph.degree(v) for v in res.graph.labels)
    star_ok = degrees == [1, 1, 1, 3]
    tab, _ = surface_stabilizer(plq)
    state = graph_state_vector(res.graph)
    for q in sorted(res.hadamard_qubits):
        state = apply_hadamard(state, q)
    oracle_ok = is_stabilized(state, tab, tol=1e-10)
    passed = star_ok and res.verified and oracle_ok and (time.time() - t0) < 1.0
    return _result(
        1,
        "single plaquette: star graph, span check, dense oracle",
        t0,
        passed,
        f"star={star_ok} span_verified={res.verified} oracle={oracle_ok}",
    )


def criterion_2_disconnection_and_hexagon() -> CriterionResult:
    t0 = time.time()
    dbl = one_point_double_plaquette()
    trees = enumerate_spanning_trees(dbl.graph)
    disconnected = all(not phi(dbl.graph, t).is_connected() for t in trees)
    hexagon = single_plaquette(6)
    hex_trees = enumerate_spanning_trees(hexagon.graph)
    star6 = all(
        sorted(phi(hexagon.graph, t).degree(v) for v in range(6)) == [1] * 5 + [5]
        for t in hex_trees
    )
    passed = disconnected and star6 and (time.time() - t0) < 1.0
    return _result(
        2,
        "one-point double plaquette disconnects; hexagon gives a 6-star",
        t0,
        passed,
        f"trees={len(trees)} all_disconnected={disconnected} hexagon_trees={len(hex_trees)} all_stars={star6}",
    )


def criterion_3_bipartite() -> CriterionResult:
    t0 = time.time()
    rng = np.random.default_rng(SEED)
    failures = 0
    for _ in range(500):
        m = random_connected_multigraph(rng, max_edges=12)
        tree = enumerate_spanning_trees(m)[0]
        if not phi(m, tree).is_bipartite():
            failures += 1
    return _result(
        3,
        "tree-map output bipartite on 500 random connected multigraphs",
        t0,
        failures == 0,
        f"failures={failures}/500",
    )


def tree_independence_pool() -> list[tuple[str, Multigraph]]:
    pool: list[tuple[str, Multigraph]] = [
        ("plaquette4", single_plaquette(4).graph),
        ("hexagon", single_plaquette(6).graph),
        ("double_onepoint", one_point_double_plaquette().graph),
        ("torus_2x2", square_torus(2).graph),
    ]
    for n in (1, 2, 3):
        for i, emb in enumerate(polyforms.polyform_enumerate(n, "square")):
            pool.append((f"sq{n}.{i}", emb.graph))
    for n in (1, 2, 3, 4):
        for i, emb in enumerate(polyforms.polyform_enumerate(n, "triangular")):
            pool.append((f"tri{n}.{i}", emb.graph))
    return [(name, m) for name, m in pool if m.n_edges <= 10]


def criterion_4_tree_independence() -> CriterionResult:
    t0 = time.time()
    checked = 0
    failures = []
    for name, m in tree_independence_pool():
        trees = enumerate_spanning_trees(m)
        graphs_by_tree = [phi(m, t) for t in trees]
        for g1, g2 in itertools.combinations(graphs_by_tree, 2):
            checked += 1
            if lc_equivalent(g1, g2) is None:
                failures.append(name)
    return _result(
        4,
        "all spanning-tree pairs give equivalent graphs (setups <= 10 edges)",
        t0,
        not failures,
        f"pairs={checked} failing_setups={sorted(set(failures))}",
    )


def criterion_5_cross_oracle(full_six: bool = False) -> CriterionResult:
    t0 = time.time()
    rng = np.random.default_rng(SEED)
    mismatches = 0
    pairs = 0

    def agree(g1: SimpleGraph, g2: SimpleGraph, same_class: bool) -> bool:
        witness = lc_equivalent(g1, g2)
        return (witness is not None) == same_class

    for n in (2, 3, 4, 5):
        pool = connected_graphs(n)
        rep_of = orbit_partition(pool)
        for g1, g2 in itertools.combinations_with_replacement(pool, 2):
            same = rep_of[canonical_key(g1)] == rep_of[canonical_key(g2)]
            pairs += 1
            if not agree(g1, g2, same):
                mismatches += 1

    pool6 = connected_graphs(6)
    rep_of6 = orbit_partition(pool6)
    labels6 = list(range(6))
    if full_six:
        for g1, g2 in itertools.combinations_with_replacement(pool6, 2):
            same = rep_of6[canonical_key(g1)] == rep_of6[canonical_key(g2)]
            pairs += 1
            if not agree(g1, g2, same):
                mismatches += 1
    else:
        reps = sorted(set(rep_of6.values()))
        rep_graphs = {r: graph_from_key(r, labels6) for r in reps}
        # every graph against its class representative
        for g in pool6:
            pairs += 1
            if not agree(rep_graphs[rep_of6[canonical_key(g)]], g, True):
                mismatches += 1
        # every pair of distinct representatives
        for r1, r2 in itertools.combinations(reps, 2):
            pairs += 1
            if not agree(rep_graphs[r1], rep_graphs[r2], False):
                mismatches += 1
        # seeded random member pairs
        keys = [canonical_key(g) for g in pool6]
        for _ in range(20000):
            k1, k2 = rng.integers(0, len(keys), size=2)
            g1, g2 = pool6[int(k1)], pool6[int(k2)]
            pairs += 1
            if not agree(g1, g2, rep_of6[keys[int(k1)]] == rep_of6[keys[int(k2)]]):
                mismatches += 1

    scope = "all pairs n<=6" if full_six else "all pairs n<=5; structured n=6"
    return _result(
        5,
        "pairwise algebraic test agrees with orbit membership",
        t0,
        mismatches == 0,
        f"{scope}; pairs={pairs} mismatches={mismatches}",
    )


def criterion_6_tetriamond(budget: int = 10**8) -> CriterionResult:
    t0 = time.time()
    emb = polyforms.polyform_embedding(polyforms.triangle_tetriamond_cells(), "triangular")
    graph = phi_graph(emb)
    is_nonlocal, orbit = certify_nonlocal(graph, adjacency_relation(emb), budget=budget)
    elapsed = time.time() - t0
    passed = is_nonlocal and orbit.complete and elapsed <= 60.0
    return _result(
        6,
        "9-qubit triangular setup: full orbit, no local representative",
        t0,
        passed,
        f"orbit={orbit.size} nonlocal={is_nonlocal} complete={orbit.complete}",
    )


def criterion_7_eight_qubit_base(budget: int = 10**8) -> CriterionResult:
    t0 = time.time()
    emb = load_setup(fixture_path("reduced_8qubit.json"))
    is_nonlocal, orbit = certify_nonlocal(
        phi_graph(emb), adjacency_relation(emb), budget=budget
    )
    return _result(
        7,
        "8-qubit reduced system: exhaustive orbit, verdict nonlocal",
        t0,
        is_nonlocal and orbit.complete,
        f"orbit={orbit.size} nonlocal={is_nonlocal}",
    )


def criterion_8_pentomino_chain() -> CriterionResult:
    t0 = time.time()
    spec = load_chain_spec(fixture_path("chain/pentomino_chain.json"))
    report = reduction_chain(spec)
    elapsed = time.time() - t0
    pent_nonlocal = report.verdicts.get("s0") == "nonlocal"
    passed = report.ok and pent_nonlocal and elapsed <= 300.0
    largest = max(e.n_qubits for e in spec.systems.values())
    enumerated = max(e.n_qubits for n, e in spec.systems.items() if n in spec.base)
    return _result(
        8,
        "16-qubit pentomino nonlocal via the reduction chain",
        t0,
        passed,
        f"chain_ok={report.ok} verdict_s0={report.verdicts.get('s0')} "
        f"largest_system={largest}q enumerated_only={enumerated}q",
    )


def criterion_9_polyomino_counts() -> CriterionResult:
    t0 = time.time()
    counts = [len(polyforms.enumerate_polyforms(n, "square")) for n in range(1, 6)]
    return _result(
        9,
        "free polyomino counts for 1..5 cells",
        t0,
        counts == [1, 1, 2, 5, 12],
        f"counts={counts}",
    )


def criterion_10_stabilizer_arithmetic() -> CriterionResult:
    t0 = time.time()
    _, deg_plaquette = surface_stabilizer(single_plaquette(4))
    torus = square_torus(2)
    stab, deg_torus = surface_stabilizer(torus)
    h_rank = homology_rank(torus)
    pairs = loop_operators(2)
    algebra_ok = all(
        not p.z_loop.commutes_with(p.x_loop)
        and all(p.z_loop.commutes_with(q.x_loop) for q in pairs if q is not p)
        and all(p.z_loop.commutes_with(g) and p.x_loop.commutes_with(g) for g in stab.generators)
        for p in pairs
    )
    sector = Tableau(torus.n_qubits, list(stab.generators) + [p.z_loop for p in pairs])
    flips_ok = True
    for p in pairs:
        conj = conjugate_by_pauli(sector, p.x_loop)
        for old, new in zip(sector.generators, conj.generators):
            expected = -1 if old == p.z_loop else 1
            if new.sign != expected:
                flips_ok = False
    passed = deg_plaquette == 1 and deg_torus == 4 and h_rank == 2 and algebra_ok and flips_ok
    return _result(
        10,
        "degeneracies, homology rank and loop-operator algebra",
        t0,
        passed,
        f"plaquette_deg={deg_plaquette} torus_deg={deg_torus} homology={h_rank} "
        f"algebra={algebra_ok} sign_flips={flips_ok}",
    )


def criterion_11_leaf_suites() -> CriterionResult:
    t0 = time.time()
    rng = np.random.default_rng(SEED)

    # Leaf exchange fixes every class as a set.
    closure_fail = 0
    partition_fail = 0
    subgraph_fail = 0
    pool = leaf_graph_pool(rng)
    for leaf in pool:
        orbit = lc_orbit(leaf.graph, engine="python")
        a, b = leaf.outer, leaf.inner
        minus_a = lc_orbit(leaf.graph.delete_vertex(a), engine="python")
        minus_b = lc_orbit(epsilon_swap(leaf).graph.delete_vertex(b), engine="python")
        for key in orbit.members:
            member = orbit.member_graph(key)
            if not orbit.contains(canonical_key(member.permute_pair(a, b))):
                closure_fail += 1
            if classify(member, a, b) is None:
                partition_fail += 1
            in_a = minus_a.contains(canonical_key(member.delete_vertex(a)))
            in_b = minus_b.contains(canonical_key(member.delete_vertex(b)))
            if not (in_a or in_b):
                subgraph_fail += 1

    # Deleting the outer vertex commutes with sequences avoiding it.
    commute_fail = 0
    runs = 0
    while runs < 200:
        n = int(rng.integers(3, 9))
        nbits = (n - 1) * (n - 2) // 2
        core = graph_from_key(int(rng.integers(0, 1 << nbits)), list(range(n - 1)))
        if not core.is_connected():
            continue
        inner = int(rng.integers(0, n - 1))
        leaf = LeafGraph(
            SimpleGraph.from_edges(list(range(n)), core.edges() + [(inner, n - 1)]),
            n - 1,
            inner,
        )
        seq = [int(v) for v in rng.integers(0, n - 1, size=int(rng.integers(0, 7)))]
        runs += 1
        if not leaf_delete_commute_check(leaf, seq):
            commute_fail += 1

    passed = not (closure_fail or partition_fail or subgraph_fail or commute_fail)
    return _result(
        11,
        "leaf-exchange closure, partition, subgraph property, delete-commute",
        t0,
        passed,
        f"classes={len(pool)} closure_fail={closure_fail} partition_fail={partition_fail} "
        f"subgraph_fail={subgraph_fail} commute_fail={commute_fail}/200",
    )


CRITERIA: list[Callable[[], CriterionResult]] = [
    criterion_1_single_plaquette,
    criterion_2_disconnection_and_hexagon,
    criterion_3_bipartite,
    criterion_4_tree_independence,
    criterion_5_cross_oracle,
    criterion_6_tetriamond,
    criterion_7_eight_qubit_base,
    criterion_8_pentomino_chain,
    criterion_9_polyomino_counts,
    criterion_10_stabilizer_arithmetic,
    criterion_11_leaf_suites,
]


def run_all(numbers: Optional[Iterable[int]] = None) -> list[CriterionResult]:
    wanted = set(numbers) if numbers is not None else None
    results = []
    for i, func in enumerate(CRITERIA, start=1):
        if wanted is not None and i not in wanted:
            continue
        results.append(func())
    return results
