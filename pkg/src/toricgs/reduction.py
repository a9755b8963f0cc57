"""Leaf-graph machinery and the surface-code reduction argument.

A *leaf* is a degree-1 vertex (outer) with its unique neighbour (inner).
Exchanging the two across a whole local-complementation class is realized by
two complementations; deleting the outer vertex commutes with any
complementation sequence that avoids it.  Together these facts let a
nonlocality verdict for a system with qubits E be inherited from the two
systems with qubits E - {a} and E - {b}, provided

1. the big system's vicinity relation, restricted to the surviving qubits,
   is contained in the reduced system's vicinity relation,
2. the big system has an LC-equivalent leaf graph with outer a / inner b
   whose two leaf deletions are LC-equivalent to the reduced systems, and
3. both reduced systems are certified nonlocal.

Certificates are content-addressed records keyed by the system digest:
an exhaustive orbit scan, an earlier verified reduction step, or a verified
relabeling of an already certified system (an explicit embedding
isomorphism, so the verdict transports along the qubit bijection).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .graphs import (
    GraphError,
    SimpleGraph,
    local_complement,
    local_complement_sequence,
)
from .lc import LcOrbit, certify_nonlocal, lc_equivalent, lc_orbit
from .surface import (
    AdjacencyRelation,
    Embedding,
    adjacency_relation,
    phi_graph,
    setup_from_dict,
    validate_embedding,
)


class CertificateError(ValueError):
    """A required nonlocality certificate is missing or does not verify."""


def _freeze_value(value):
    if isinstance(value, list):
        return tuple(_freeze_value(v) for v in value)
    return value


@dataclass(frozen=True)
class LeafGraph:
    """A simple graph with a designated leaf: outer vertex a, inner vertex b."""

    graph: SimpleGraph
    outer: object
    inner: object

    def __post_init__(self):
        if self.graph.degree(self.outer) != 1:
            raise GraphError(f"outer vertex {self.outer!r} must have degree 1")
        if self.graph.neighbors(self.outer) != (self.inner,):
            raise GraphError(
                f"inner vertex {self.inner!r} must be the unique neighbour of the leaf"
            )


def epsilon_swap(leaf: LeafGraph) -> LeafGraph:
    """Exchange outer and inner vertex by two local complementations.

    Applies the complementation at the inner vertex first, then at the outer
    one; the result equals the input graph with the two labels exchanged and
    the leaf now hanging off the old inner vertex.
    """
    g = local_complement(local_complement(leaf.graph, leaf.inner), leaf.outer)
    swapped = LeafGraph(g, outer=leaf.inner, inner=leaf.outer)
    assert g == leaf.graph.permute_pair(leaf.outer, leaf.inner), (
        "leaf exchange must equal a relabeling of the input"
    )
    return swapped


def classify(h: SimpleGraph, a, b) -> Optional[str]:
    """Partition position of ``h`` relative to the vertex pair (a, b).

    "A": leaf with outer a / inner b; "B": leaf with outer b / inner a;
    "C": edge {a, b} present and all other vertices see a and b alike;
    "D": the same symmetry without the {a, b} edge; None otherwise.
    """
    if a == b:
        raise GraphError("the two vertices must differ")
    ia, ib = h.position(a), h.position(b)
    if h.degree(a) == 1 and h.has_edge(a, b):
        return "A"
    if h.degree(b) == 1 and h.has_edge(a, b):
        return "B"
    others = ~((1 << ia) | (1 << ib))
    symmetric = (h.rows[ia] & others) == (h.rows[ib] & others)
    if symmetric:
        return "C" if h.has_edge(a, b) else "D"
    return None


def leaf_delete_commute_check(leaf: LeafGraph, seq: Sequence) -> bool:
    """Complement-then-delete versus delete-then-complement, for one sequence.

    ``seq`` must avoid the outer vertex.  Returns True iff both orders give
    the same graph on the remaining vertices.
    """
    if leaf.outer in seq:
        raise GraphError("the sequence must avoid the outer vertex")
    after = local_complement_sequence(leaf.graph, seq).delete_vertex(leaf.outer)
    before = local_complement_sequence(leaf.graph.delete_vertex(leaf.outer), seq)
    return after == before


@dataclass(frozen=True)
class StrictnessReport:
    holds: bool
    violating_edges: tuple[tuple, ...]


def is_stricter(
    rel1: AdjacencyRelation, rel2: AdjacencyRelation, sub_qubits: Iterable
) -> StrictnessReport:
    """Check that rel1, restricted to ``sub_qubits``, is contained in rel2."""
    sub = set(sub_qubits)
    if not sub <= set(rel1.qubits):
        raise GraphError("sub_qubits must be qubits of the first relation")
    if set(rel2.qubits) != sub:
        raise GraphError("the second relation must live exactly on sub_qubits")
    violations = []
    for u, v in rel1.graph.edges():
        if u in sub and v in sub and not rel2.related(u, v):
            violations.append((u, v))
    return StrictnessReport(not violations, tuple(violations))


def scan_leaf_graphs(
    g: SimpleGraph, outer, inner=None, budget: int = 10**6
) -> list[tuple[LeafGraph, tuple]]:
    """All orbit members with a leaf at ``outer`` (optionally pinned inner).

    Members come back in breadth-first discovery order together with their
    complementation paths, so the first entry is the one an early-exit search
    would report.  Intended as the audit/discovery helper for reduction
    steps; the verifier itself takes the leaf graph as explicit input.
    """
    orbit = lc_orbit(g, budget=budget, track_paths=True, engine="python")
    found = []
    for key, path in sorted(orbit.witness_paths.items(), key=lambda kv: (len(kv[1]), kv[1])):
        member = orbit.member_graph(key)
        if member.degree(outer) != 1:
            continue
        nb = member.neighbors(outer)[0]
        if inner is not None and nb != inner:
            continue
        found.append((LeafGraph(member, outer, nb), path))
    return found


# ---------------------------------------------------------------------------
# Certificates


@dataclass(frozen=True)
class Certificate:
    """Content-addressed nonlocality record for one system digest."""

    system: str  # embedding digest
    kind: str  # "exhaustive" | "step" | "relabel"
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"system": self.system, "kind": self.kind, "payload": self.payload}

    @classmethod
    def from_dict(cls, data: dict) -> "Certificate":
        return cls(data["system"], data["kind"], dict(data.get("payload", {})))


class CertStore:
    """Flat-file certificate store, one JSON file per system digest."""

    def __init__(self, directory):
        self.directory = str(directory)
        os.makedirs(self.directory, exist_ok=True)

    def _path(self, digest: str) -> str:
        return os.path.join(self.directory, f"{digest}.json")

    def save(self, cert: Certificate) -> None:
        with open(self._path(cert.system), "w", encoding="utf-8") as fh:
            json.dump(cert.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def load(self, digest: str) -> Optional[Certificate]:
        path = self._path(digest)
        if not os.path.exists(path):
            return None
        with open(path, "r", encoding="utf-8") as fh:
            return Certificate.from_dict(json.load(fh))


def exhaustive_certificate(
    e: Embedding, budget: int = 10**8
) -> tuple[bool, Certificate, LcOrbit]:
    """Fully enumerate the orbit of the instance and scan for local members."""
    g = phi_graph(e)
    rel = adjacency_relation(e)
    is_nonlocal, orbit = certify_nonlocal(g, rel, budget=budget)
    cert = Certificate(
        e.digest(),
        "exhaustive",
        {
            "n_qubits": e.n_qubits,
            "orbit_size": orbit.size,
            "orbit_digest": orbit.digest(),
        },
    )
    return is_nonlocal, cert, orbit


def verify_relabeling(
    system: Embedding, source: Embedding, edge_map: dict, vertex_map: dict
) -> bool:
    """Check that (edge_map, vertex_map) is an isomorphism of embeddings.

    ``edge_map`` sends qubit ids of ``system`` to qubit ids of ``source``;
    ``vertex_map`` sends vertices accordingly.  Faces must correspond as edge
    sets and the closed flags must agree.  A verified relabeling transports
    nonlocality verdicts: local graphs map to local graphs under any qubit
    bijection that preserves the embedding.
    """
    validate_embedding(system)
    validate_embedding(source)
    if system.closed != source.closed:
        return False
    if sorted(edge_map) != sorted(system.qubit_ids):
        return False
    if sorted(edge_map[q] for q in edge_map) != sorted(source.qubit_ids):
        return False
    if sorted(vertex_map) != sorted(system.graph.vertices):
        return False
    if sorted(vertex_map[v] for v in vertex_map) != sorted(source.graph.vertices):
        return False
    src_pos = {q: k for k, q in enumerate(source.qubit_ids)}
    mapped_pos = {}
    for k in range(system.graph.n_edges):
        q = system.qubit_ids[k]
        u, v = system.graph.endpoints(k)
        k_src = src_pos[edge_map[q]]
        su, sv = source.graph.endpoints(k_src)
        if {vertex_map[u], vertex_map[v]} != {su, sv}:
            return False
        mapped_pos[k] = k_src
    sys_faces = sorted(sorted(mapped_pos[k] for k in w) for w in system.faces)
    src_faces = sorted(sorted(w) for w in source.faces)
    return sys_faces == src_faces


# ---------------------------------------------------------------------------
# Reduction steps and chains


@dataclass(frozen=True)
class StepReport:
    system_digest: str
    ok: bool
    strictness_a: StrictnessReport
    strictness_b: StrictnessReport
    leaf_in_class: bool
    reduced_a_match: bool
    reduced_b_match: bool
    cert_a_ok: bool
    cert_b_ok: bool
    failures: tuple[str, ...]


def verify_reduction_step(
    big: Embedding,
    a: int,
    b: int,
    reduced_a: Embedding,
    reduced_b: Embedding,
    leaf: LeafGraph,
    certificates: dict[str, Certificate],
    max_free: int = 28,
) -> StepReport:
    """Check the three reduction hypotheses for one system.

    Hypothesis 1 is the strictness containment for both reduced relations.
    Hypothesis 2 asks that ``leaf`` belongs to the LC class of the big
    system's tree graph (decided by the pairwise algebraic test, so no orbit
    enumeration happens here) and that its two leaf deletions match the
    reduced systems' tree graphs.  Hypothesis 3 requires nonlocality
    certificates for both reduced systems.  Each failed hypothesis is named
    in ``failures``.
    """
    validate_embedding(big)
    validate_embedding(reduced_a)
    validate_embedding(reduced_b)
    failures = []
    big_ids = set(big.qubit_ids)
    if set(reduced_a.qubit_ids) != big_ids - {a}:
        raise GraphError("reduced_a must keep exactly the qubits of big minus a")
    if set(reduced_b.qubit_ids) != big_ids - {b}:
        raise GraphError("reduced_b must keep exactly the qubits of big minus b")
    if leaf.outer != a or leaf.inner != b:
        raise GraphError("leaf declaration must have outer = a and inner = b")
    if tuple(leaf.graph.labels) != tuple(big.qubit_ids):
        raise GraphError("leaf graph must be labeled by the big system's qubits")

    rel_big = adjacency_relation(big)
    s_a = is_stricter(rel_big, adjacency_relation(reduced_a), reduced_a.qubit_ids)
    s_b = is_stricter(rel_big, adjacency_relation(reduced_b), reduced_b.qubit_ids)
    if not s_a.holds:
        failures.append(f"strictness violated towards reduced_a: {s_a.violating_edges}")
    if not s_b.holds:
        failures.append(f"strictness violated towards reduced_b: {s_b.violating_edges}")

    member = lc_equivalent(phi_graph(big), leaf.graph, max_free=max_free) is not None
    if not member:
        failures.append("leaf graph is not LC-equivalent to the big system")
    drop_a = leaf.graph.delete_vertex(a)
    red_a_ok = lc_equivalent(drop_a, phi_graph(reduced_a), max_free=max_free) is not None
    if not red_a_ok:
        failures.append("leaf minus outer does not match reduced_a")
    drop_b = epsilon_swap(leaf).graph.delete_vertex(b)
    red_b_ok = lc_equivalent(drop_b, phi_graph(reduced_b), max_free=max_free) is not None
    if not red_b_ok:
        failures.append("swapped leaf minus outer does not match reduced_b")

    cert_a = certificates.get(reduced_a.digest())
    cert_b = certificates.get(reduced_b.digest())
    if cert_a is None:
        failures.append("missing nonlocality certificate for reduced_a")
    if cert_b is None:
        failures.append("missing nonlocality certificate for reduced_b")

    return StepReport(
        system_digest=big.digest(),
        ok=not failures,
        strictness_a=s_a,
        strictness_b=s_b,
        leaf_in_class=member,
        reduced_a_match=red_a_ok,
        reduced_b_match=red_b_ok,
        cert_a_ok=cert_a is not None,
        cert_b_ok=cert_b is not None,
        failures=tuple(failures),
    )


@dataclass(frozen=True)
class ChainStep:
    system: str
    a: int
    b: int
    reduced_a: str
    reduced_b: str
    leaf: LeafGraph


@dataclass(frozen=True)
class Relabeling:
    system: str
    source: str
    edge_map: dict
    vertex_map: dict


@dataclass(frozen=True)
class ChainSpec:
    systems: dict[str, Embedding]
    steps: tuple[ChainStep, ...]
    base: tuple[str, ...]
    relabelings: tuple[Relabeling, ...]


@dataclass
class ChainReport:
    verdicts: dict[str, str]  # system name -> "nonlocal" | "unverified"
    step_reports: list[StepReport]
    base_orbits: dict[str, dict]
    certificates: dict[str, Certificate]
    ok: bool
    failures: list[str]


def load_chain_spec(path) -> ChainSpec:
    base_dir = os.path.dirname(os.path.abspath(path))
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    systems = {}
    for name, entry in data["systems"].items():
        if "file" in entry:
            with open(os.path.join(base_dir, entry["file"]), "r", encoding="utf-8") as fh:
                systems[name] = setup_from_dict(json.load(fh))
        else:
            systems[name] = setup_from_dict(entry)
    steps = []
    for s in data.get("steps", []):
        leaf_data = s["leaf"]
        leaf_graph = SimpleGraph.from_edges(
            [int(v) for v in leaf_data["vertices"]],
            [(int(u), int(v)) for u, v in leaf_data["edges"]],
        )
        steps.append(
            ChainStep(
                system=s["system"],
                a=int(s["a"]),
                b=int(s["b"]),
                reduced_a=s["reduced_a"],
                reduced_b=s["reduced_b"],
                leaf=LeafGraph(leaf_graph, int(leaf_data["outer"]), int(leaf_data["inner"])),
            )
        )
    relabelings = [
        Relabeling(
            system=r["system"],
            source=r["source"],
            edge_map={int(k): int(v) for k, v in r["edge_map"]},
            vertex_map={_freeze_value(k): _freeze_value(v) for k, v in r["vertex_map"]},
        )
        for r in data.get("relabel", [])
    ]
    return ChainSpec(
        systems=systems,
        steps=tuple(steps),
        base=tuple(data.get("base", [])),
        relabelings=tuple(relabelings),
    )


def reduction_chain(
    spec: ChainSpec,
    budget: int = 10**8,
    max_free: int = 28,
    store: Optional[CertStore] = None,
) -> ChainReport:
    """Verify a whole reduction chain from its exhaustive base upward.

    Base systems are certified by full orbit enumeration.  Relabelings and
    steps are then resolved until a fixed point: a relabeling fires once its
    source is certified, a step once both its reduced systems are.  Any
    hypothesis failure aborts the chain with that failure named.
    """
    certificates: dict[str, Certificate] = {}
    report = ChainReport({}, [], {}, certificates, ok=True, failures=[])
    digests = {name: emb.digest() for name, emb in spec.systems.items()}

    for name in spec.base:
        emb = spec.systems[name]
        is_nonlocal, cert, orbit = exhaustive_certificate(emb, budget=budget)
        report.base_orbits[name] = {
            "orbit_size": orbit.size,
            "orbit_digest": orbit.digest(),
            "nonlocal": is_nonlocal,
        }
        if not is_nonlocal:
            report.ok = False
            report.failures.append(f"base system {name} has a local representative")
            break
        certificates[digests[name]] = cert
        if store:
            store.save(cert)

    done_steps: set[int] = set()
    done_relabels: set[int] = set()
    while report.ok:
        progressed = False
        for i, r in enumerate(spec.relabelings):
            if i in done_relabels or digests[r.system] in certificates:
                continue
            if digests[r.source] not in certificates:
                continue
            if not verify_relabeling(
                spec.systems[r.system], spec.systems[r.source], r.edge_map, r.vertex_map
            ):
                report.ok = False
                report.failures.append(
                    f"relabeling of {r.system} onto {r.source} does not verify"
                )
                break
            cert = Certificate(
                digests[r.system],
                "relabel",
                {"source": digests[r.source], "edge_map": {str(k): v for k, v in r.edge_map.items()}},
            )
            certificates[digests[r.system]] = cert
            if store:
                store.save(cert)
            done_relabels.add(i)
            progressed = True
        if not report.ok:
            break
        for i, s in enumerate(spec.steps):
            if i in done_steps or digests[s.system] in certificates:
                continue
            if (
                digests[s.reduced_a] not in certificates
                or digests[s.reduced_b] not in certificates
            ):
                continue
            step_report = verify_reduction_step(
                spec.systems[s.system],
                s.a,
                s.b,
                spec.systems[s.reduced_a],
                spec.systems[s.reduced_b],
                s.leaf,
                certificates,
                max_free=max_free,
            )
            report.step_reports.append(step_report)
            if not step_report.ok:
                report.ok = False
                report.failures.extend(
                    f"step for {s.system}: {msg}" for msg in step_report.failures
                )
                break
            cert = Certificate(
                digests[s.system],
                "step",
                {
                    "a": s.a,
                    "b": s.b,
                    "reduced_a": digests[s.reduced_a],
                    "reduced_b": digests[s.reduced_b],
                },
            )
            certificates[digests[s.system]] = cert
            if store:
                store.save(cert)
            done_steps.add(i)
            progressed = True
        if not progressed:
            break

    for name, digest in digests.items():
        report.verdicts[name] = "nonlocal" if digest in certificates else "unverified"
    if report.ok and any(v != "nonlocal" for v in report.verdicts.values()):
        report.ok = False
        missing = [n for n, v in report.verdicts.items() if v != "nonlocal"]
        report.failures.append(f"systems left unverified: {missing}")
    return report
