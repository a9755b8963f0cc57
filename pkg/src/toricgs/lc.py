"""Local-complementation classes: orbit enumeration, pairwise test, locality.

A labeled graph on n vertices is identified by its canonical key: the
upper-triangle bits of the adjacency matrix packed row-major into one
integer.  Orbits under local complementation are closed breadth-first over
those keys.  Two engines produce identical member sets:

* a pure-Python engine that can track complementation paths and evaluate an
  arbitrary stop predicate, used for small instances and witness recovery;
* a vectorized numpy engine that processes whole BFS generations as uint64
  key arrays, used for exhaustive certification runs (keys must fit 64 bits,
  i.e. n <= 11; larger orbits are out of enumeration range anyway).

The pairwise equivalence test is algebraic: two adjacency matrices are
LC-equivalent iff diagonal matrices A, B, C, D over GF(2) exist with
(Gamma B + D) Gamma' + (Gamma A + C) = 0 and the pointwise determinant
condition a_i d_i + b_i c_i = 1.  The linear part is solved exactly; the
affine solution space is then walked in Gray-code order so that each
candidate differs from the previous one by a single basis vector.
"""

from __future__ import annotations

import hashlib
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from . import gf2
from .graphs import GraphError, SimpleGraph

DEFAULT_ORBIT_BUDGET = 10**8
DEFAULT_WITNESS_BUDGET = 24  # max free dimensions, i.e. 2^24 candidates
_VECTOR_MAX_N = 11  # packed keys must fit in uint64


class OrbitBudgetError(RuntimeError):
    """Orbit enumeration exceeded the member budget; verdict unknown."""

    def __init__(self, budget: int, reached: int):
        super().__init__(f"orbit budget of {budget} keys exceeded (reached {reached})")
        self.budget = budget
        self.reached = reached


class WitnessBudgetError(RuntimeError):
    """Solution-space enumeration too large; equivalence undecided."""

    def __init__(self, free_dim: int, budget: int):
        super().__init__(
            f"witness search space has {free_dim} free dimensions (budget {budget})"
        )
        self.free_dim = free_dim
        self.budget = budget


def canonical_key(g: SimpleGraph) -> int:
    """Pack the upper adjacency triangle row-major into one integer."""
    return _pack_rows(g.rows, g.n)


def _pack_rows(rows: Sequence[int], n: int) -> int:
    key = 0
    shift = 0
    for i in range(n):
        key |= (rows[i] >> (i + 1)) << shift
        shift += n - 1 - i
    return key


def _unpack_key(key: int, n: int) -> list[int]:
    rows = [0] * n
    shift = 0
    for i in range(n):
        width = n - 1 - i
        chunk = (key >> shift) & ((1 << width) - 1)
        rows[i] |= chunk << (i + 1)
        for dj in range(width):
            if (chunk >> dj) & 1:
                rows[i + 1 + dj] |= 1 << i
        shift += width
    return rows


def graph_from_key(key: int, labels: Sequence) -> SimpleGraph:
    return SimpleGraph(labels, _unpack_key(key, len(labels)))


def _edge_mask(g: SimpleGraph, labels: Sequence) -> int:
    """Canonical-key bitmask of ``g``'s edges in the vertex order ``labels``."""
    if set(g.labels) != set(labels):
        raise GraphError("vertex sets differ")
    pos = {lab: i for i, lab in enumerate(labels)}
    rows = [0] * len(labels)
    for u, v in g.edges():
        i, j = pos[u], pos[v]
        rows[i] |= 1 << j
        rows[j] |= 1 << i
    return _pack_rows(rows, len(labels))


@dataclass
class LcOrbit:
    """An enumerated (or partially enumerated) local-complementation class."""

    labels: tuple
    seed_key: int
    members: Union[list[int], np.ndarray]  # ascending keys
    complete: bool
    generations: int
    witness_paths: Optional[dict[int, tuple]] = None
    hit_key: Optional[int] = None
    hit_path: Optional[tuple] = None

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return len(self.members)

    def contains(self, key: int) -> bool:
        if isinstance(self.members, np.ndarray):
            if key >> 64:
                return False
            i = int(np.searchsorted(self.members, np.uint64(key)))
            return i < len(self.members) and int(self.members[i]) == key
        i = bisect_left(self.members, key)
        return i < len(self.members) and self.members[i] == key

    def member_graph(self, key: int) -> SimpleGraph:
        return graph_from_key(key, self.labels)

    def digest(self) -> str:
        """Engine-independent fingerprint of the full member set."""
        h = hashlib.sha256()
        for k in self.members:
            h.update(format(int(k), "x").encode())
            h.update(b",")
        return h.hexdigest()


def _orbit_python(
    g: SimpleGraph,
    stop: Optional[Callable[[SimpleGraph], bool]],
    budget: int,
    track_paths: bool,
) -> LcOrbit:
    n = g.n
    seed_rows = tuple(g.rows)
    seed_key = _pack_rows(seed_rows, n)
    visited = {seed_key}
    paths: Optional[dict[int, tuple]] = {seed_key: ()} if track_paths else None

    if stop is not None and stop(g):
        members = sorted(visited)
        return LcOrbit(g.labels, seed_key, members, False, 0, paths, seed_key, ())

    frontier = [(seed_rows, ())]
    generations = 0
    while frontier:
        generations += 1
        nxt = []
        for rows, path in frontier:
            for v in range(n):
                m = rows[v]
                if m == 0:
                    continue
                new_rows = list(rows)
                mm = m
                while mm:
                    low = mm & -mm
                    u = low.bit_length() - 1
                    new_rows[u] ^= m ^ low
                    mm ^= low
                key = _pack_rows(new_rows, n)
                if key in visited:
                    continue
                visited.add(key)
                new_path = path + (v,) if (track_paths or stop is not None) else ()
                if paths is not None:
                    paths[key] = new_path
                if stop is not None and stop(SimpleGraph(g.labels, new_rows)):
                    return LcOrbit(
                        g.labels, seed_key, sorted(visited), False, generations,
                        paths, key, new_path,
                    )
                if len(visited) > budget:
                    raise OrbitBudgetError(budget, len(visited))
                nxt.append((tuple(new_rows), new_path))
        frontier = nxt
    return LcOrbit(g.labels, seed_key, sorted(visited), True, generations, paths)


def _unpack_keys_vec(keys: np.ndarray, n: int) -> np.ndarray:
    """uint64 key array -> (n, F) uint32 adjacency row array."""
    rows = np.zeros((n, len(keys)), dtype=np.uint32)
    shift = 0
    for i in range(n):
        width = n - 1 - i
        chunk = ((keys >> np.uint64(shift)) & np.uint64((1 << width) - 1)).astype(
            np.uint32
        )
        rows[i] |= chunk << np.uint32(i + 1)
        for dj in range(width):
            rows[i + 1 + dj] |= ((chunk >> np.uint32(dj)) & np.uint32(1)) << np.uint32(i)
        shift += width
    return rows


def _pack_rows_vec(rows: np.ndarray, n: int) -> np.ndarray:
    """(n, F) uint32 adjacency rows -> uint64 key array."""
    keys = np.zeros(rows.shape[1], dtype=np.uint64)
    shift = 0
    for i in range(n):
        keys |= (rows[i] >> np.uint32(i + 1)).astype(np.uint64) << np.uint64(shift)
        shift += n - 1 - i
    return keys


def _orbit_vector(
    g: SimpleGraph, budget: int, local_mask: Optional[int]
) -> LcOrbit:
    n = g.n
    if n > _VECTOR_MAX_N:
        raise ValueError("vector engine requires n <= 11 (64-bit keys)")
    if n == 0:
        members = np.array([0], dtype=np.uint64)
        hit = 0 if local_mask is not None else None
        return LcOrbit(g.labels, 0, members, local_mask is None, 0, None, hit)
    seed_key = _pack_rows(g.rows, n)
    visited = np.array([seed_key], dtype=np.uint64)
    frontier = visited.copy()
    not_local = None
    if local_mask is not None:
        not_local = ~np.uint64(local_mask)
        if seed_key & local_mask == seed_key:
            return LcOrbit(g.labels, seed_key, visited, False, 0, None, seed_key)
    generations = 0
    while len(frontier):
        generations += 1
        rows = _unpack_keys_vec(frontier, n)
        out_keys = []
        for v in range(n):
            m = rows[v]
            new_rows = rows.copy()
            for u in range(n):
                if u == v:
                    continue
                sel = (m >> np.uint32(u)) & np.uint32(1)
                new_rows[u] ^= (m ^ np.uint32(1 << u)) * sel
            out_keys.append(_pack_rows_vec(new_rows, n))
        cand = np.unique(np.concatenate(out_keys))
        pos = np.searchsorted(visited, cand)
        pos_c = np.minimum(pos, len(visited) - 1)
        fresh = cand[(visited[pos_c] != cand)]
        if len(fresh) == 0:
            break
        if len(visited) + len(fresh) > budget:
            raise OrbitBudgetError(budget, len(visited) + len(fresh))
        if not_local is not None:
            hits = fresh[(fresh & not_local) == 0]
            if len(hits):
                visited = np.sort(np.concatenate([visited, fresh]))
                return LcOrbit(
                    g.labels, seed_key, visited, False, generations, None,
                    int(hits[0]),
                )
        visited = np.sort(np.concatenate([visited, fresh]))
        frontier = fresh
    return LcOrbit(g.labels, seed_key, visited, True, generations, None)


def lc_orbit(
    g: SimpleGraph,
    stop: Optional[Callable[[SimpleGraph], bool]] = None,
    budget: int = DEFAULT_ORBIT_BUDGET,
    track_paths: bool = False,
    engine: str = "auto",
) -> LcOrbit:
    """Breadth-first closure of ``{g}`` under all local complementations.

    If ``stop`` fires on a member, enumeration halts there and the orbit
    records the hit (with its complementation path when ``track_paths`` or a
    stop predicate is given).  Exceeding ``budget`` raises
    :class:`OrbitBudgetError`; that outcome means "instance too large", never
    "not found".
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if engine == "auto":
        engine = (
            "python"
            if stop is not None or track_paths or g.n > _VECTOR_MAX_N
            else "vector"
        )
    if engine == "vector":
        if stop is not None or track_paths:
            raise ValueError("the vector engine does not support stop/paths")
        return _orbit_vector(g, budget, None)
    if engine != "python":
        raise ValueError(f"unknown engine {engine!r}")
    return _orbit_python(g, stop, budget, track_paths)


@dataclass(frozen=True)
class LcWitness:
    """Diagonals (a, b, c, d) certifying LC-equivalence of a graph pair."""

    n: int
    a: int
    b: int
    c: int
    d: int

    def diagonals(self) -> dict[str, list[int]]:
        return {
            "a": gf2.bits(self.a, self.n),
            "b": gf2.bits(self.b, self.n),
            "c": gf2.bits(self.c, self.n),
            "d": gf2.bits(self.d, self.n),
        }

    def determinant_ok(self) -> bool:
        full = (1 << self.n) - 1
        return ((self.a & self.d) ^ (self.b & self.c)) == full


def _require_same_labels(g: SimpleGraph, h: SimpleGraph) -> None:
    if g.labels != h.labels:
        raise GraphError("graphs must share the same ordered labeled vertex set")


def _diagonal_system_rows(g: SimpleGraph, h: SimpleGraph) -> list[int]:
    """Linear system rows over the 4n diagonal unknowns (a | b | c | d).

    Entry (i, j) of the matrix identity contributes the equation
    Gamma_ij a_j + sum_k Gamma_ik Gamma'_kj b_k + [i=j] c_i + Gamma'_ij d_i = 0.
    Adjacency symmetry turns the b block into a single AND of bitmask rows.
    """
    n = g.n
    rows = []
    for i in range(n):
        gi = g.rows[i]
        hi = h.rows[i]
        ci = 1 << (2 * n + i)
        di = 1 << (3 * n + i)
        for j in range(n):
            row = (gi & h.rows[j]) << n  # b_k for k adjacent to i in G, j in H
            if (gi >> j) & 1:
                row |= 1 << j  # a_j
            if i == j:
                row |= ci
            if (hi >> j) & 1:
                row |= di
            if row:
                rows.append(row)
    return rows


def _witness_from_packed(n: int, w: int) -> LcWitness:
    mask = (1 << n) - 1
    return LcWitness(n, w & mask, (w >> n) & mask, (w >> 2 * n) & mask, (w >> 3 * n) & mask)


def lc_equivalent(
    g: SimpleGraph, h: SimpleGraph, max_free: int = DEFAULT_WITNESS_BUDGET
) -> Optional[LcWitness]:
    """Decide LC-equivalence of two labeled graphs via the diagonal system.

    Returns the first witness in deterministic order, or ``None`` when no
    solution of the linear system satisfies the determinant condition.
    Raises :class:`WitnessBudgetError` when the affine solution space is too
    large to scan (never guesses).
    """
    _require_same_labels(g, h)
    n = g.n
    if n == 0:
        return LcWitness(0, 0, 0, 0, 0)
    mask = (1 << n) - 1
    if g.rows == h.rows:
        return LcWitness(n, mask, 0, 0, mask)

    rows = _diagonal_system_rows(g, h)
    basis = gf2.nullspace(gf2.BitMatrix(rows, 4 * n))
    k = len(basis)
    if k > max_free:
        raise WitnessBudgetError(k, max_free)

    # Gray-code walk: candidate i and i+1 differ by exactly one basis vector.
    cand = 0
    if _nonlinear_ok(cand, n, mask):
        return _witness_from_packed(n, cand)
    for i in range(1, 1 << k):
        cand ^= basis[(i & -i).bit_length() - 1]
        if _nonlinear_ok(cand, n, mask):
            return _witness_from_packed(n, cand)
    return None


def _nonlinear_ok(w: int, n: int, mask: int) -> bool:
    a = w & mask
    b = (w >> n) & mask
    c = (w >> 2 * n) & mask
    d = (w >> 3 * n) & mask
    return ((a & d) ^ (b & c)) == mask


def verify_witness(g: SimpleGraph, h: SimpleGraph, w: LcWitness) -> bool:
    """Independent recheck: substitute the witness into the matrix identity."""
    _require_same_labels(g, h)
    n = g.n
    if w.n != n or not w.determinant_ok():
        return False
    gamma = g.adjacency_matrix()
    gamma_p = h.adjacency_matrix()

    def diag(bits_word: int) -> gf2.BitMatrix:
        return gf2.BitMatrix([(1 << i) * ((bits_word >> i) & 1) for i in range(n)], n)

    gb = gamma.matmul(diag(w.b))
    left = gf2.BitMatrix(
        [gb.rows[i] ^ diag(w.d).rows[i] for i in range(n)], n
    ).matmul(gamma_p)
    ga = gamma.matmul(diag(w.a))
    residual = [
        left.rows[i] ^ ga.rows[i] ^ diag(w.c).rows[i] for i in range(n)
    ]
    return all(r == 0 for r in residual)


@dataclass(frozen=True)
class LocalRepresentative:
    """A local orbit member together with its complementation path."""

    graph: SimpleGraph
    path: tuple


def find_local_representative(
    g: SimpleGraph,
    adjacency,
    budget: int = DEFAULT_ORBIT_BUDGET,
    want_path: bool = True,
) -> Optional[LocalRepresentative]:
    """Search the orbit of ``g`` for a member whose edges all lie in ``adjacency``.

    ``adjacency`` is the allowed-edge graph (an ``AdjacencyRelation`` or a
    plain :class:`SimpleGraph` over the same vertices).  Returns the first
    local member in breadth-first order, or ``None`` after exhausting the
    orbit.  Budget exhaustion raises :class:`OrbitBudgetError` (unknown, not
    nonlocal).

    The heavy enumeration runs vectorized; when a local member exists the hit
    generation is small, so the path (shortest, lexicographically least) is
    recovered with the Python engine afterwards.
    """
    adj_graph: SimpleGraph = getattr(adjacency, "graph", adjacency)
    mask = _edge_mask(adj_graph, g.labels)

    def is_local(member: SimpleGraph) -> bool:
        key = _pack_rows(member.rows, member.n)
        return key & ~mask == 0

    if g.n > _VECTOR_MAX_N:
        orbit = lc_orbit(g, stop=is_local, budget=budget, engine="python")
        if orbit.hit_key is None:
            return None
        return LocalRepresentative(orbit.member_graph(orbit.hit_key), orbit.hit_path)

    orbit = _orbit_vector(g, budget, mask)
    if orbit.hit_key is None:
        return None
    if not want_path:
        return LocalRepresentative(orbit.member_graph(orbit.hit_key), ())
    recovered = lc_orbit(g, stop=is_local, budget=budget, engine="python")
    assert recovered.hit_key is not None
    return LocalRepresentative(
        recovered.member_graph(recovered.hit_key), recovered.hit_path
    )


def certify_nonlocal(
    g: SimpleGraph, adjacency, budget: int = DEFAULT_ORBIT_BUDGET
) -> tuple[bool, LcOrbit]:
    """Exhaustively enumerate the orbit and scan it for local members.

    Returns ``(nonlocal, orbit)`` where ``nonlocal`` is True iff no member is
    a subgraph of the adjacency graph.  Raises :class:`OrbitBudgetError` when
    the orbit exceeds the budget.
    """
    adj_graph: SimpleGraph = getattr(adjacency, "graph", adjacency)
    mask = _edge_mask(adj_graph, g.labels)
    if g.n <= _VECTOR_MAX_N:
        orbit = _orbit_vector(g, budget, mask)
        return orbit.hit_key is None, orbit
    key_mask = mask

    def is_local(member: SimpleGraph) -> bool:
        return _pack_rows(member.rows, member.n) & ~key_mask == 0

    orbit = lc_orbit(g, stop=is_local, budget=budget, engine="python")
    return orbit.hit_key is None, orbit
