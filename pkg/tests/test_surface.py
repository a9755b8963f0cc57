"""Embeddings, stabilizers, vicinity, loop operators and the transform."""

import json

import pytest

from toricgs.fixture_files import fixture_path, list_fixtures
from toricgs.graphs import Multigraph, enumerate_spanning_trees
from toricgs.pauli import apply_hadamard, graph_state_vector, is_stabilized
from toricgs.polyforms import polyform_enumerate
from toricgs.surface import (
    DegeneracyError,
    Embedding,
    EmbeddingError,
    adjacency_relation,
    contract_embedding,
    dump_setup,
    homology_rank,
    load_setup,
    loop_operators,
    one_point_double_plaquette,
    phi_graph,
    sector_tableau,
    single_plaquette,
    square_torus,
    surface_stabilizer,
    transform_to_graph_state,
    validate_embedding,
)


# -- validation ---------------------------------------------------------------


def test_torus_2x2_is_valid_genus_one():
    emb = square_torus(2)
    validate_embedding(emb)
    assert emb.graph.n_vertices == 4 and emb.graph.n_edges == 8 and len(emb.faces) == 4


def test_single_plaquette_is_valid_open():
    validate_embedding(single_plaquette(4))


def test_edge_on_three_faces_rejected():
    m = Multigraph(range(3), [(0, 1), (1, 2), (2, 0)])
    tri = (0, 1, 2)
    with pytest.raises(EmbeddingError):
        validate_embedding(Embedding(m, (tri, tri, tri), closed=True))


def test_open_face_must_be_simple_cycle():
    m = Multigraph(range(3), [(0, 1), (1, 2)])
    with pytest.raises(EmbeddingError):
        validate_embedding(Embedding(m, ((0, 1),), closed=False))


def test_closed_surface_needs_two_faces_per_edge():
    m = Multigraph(range(4), [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(EmbeddingError):
        validate_embedding(Embedding(m, ((0, 1, 2, 3),), closed=True))
    # the same square with the face repeated is a valid sphere embedding
    validate_embedding(
        Embedding(m, ((0, 1, 2, 3), (0, 1, 2, 3)), closed=True)
    )


def test_disconnected_carrier_rejected():
    m = Multigraph(range(4), [(0, 1), (2, 3)])
    with pytest.raises(EmbeddingError):
        validate_embedding(Embedding(m, ((0,), (1,)), closed=False))


# -- stabilizers and degeneracy -----------------------------------------------


def test_single_plaquette_rank_and_degeneracy():
    tab, deg = surface_stabilizer(single_plaquette(4))
    assert tab.rank == 4 and deg == 1


def test_torus_degeneracy_and_homology():
    for side in (2, 3):
        emb = square_torus(side)
        tab, deg = surface_stabilizer(emb)
        assert deg == 4
        assert homology_rank(emb) == 2
        # dependent generators were dropped: v-1 stars + f-1 faces
        assert tab.rank == emb.graph.n_edges - 2


def test_tetriamond_degeneracy_one():
    emb = load_setup(fixture_path("tetriamond.json"))
    _, deg = surface_stabilizer(emb)
    assert emb.n_qubits == 9 and deg == 1


def test_stabilizers_commute_for_all_enumerated_polyforms():
    for lattice, n_max in (("square", 4), ("triangular", 4)):
        for n in range(1, n_max + 1):
            for emb in polyform_enumerate(n, lattice):
                tab, _ = surface_stabilizer(emb)
                gens = tab.generators
                for i in range(len(gens)):
                    for j in range(i + 1, len(gens)):
                        assert gens[i].commutes_with(gens[j])


def test_homology_rank_requires_closed():
    with pytest.raises(EmbeddingError):
        homology_rank(single_plaquette(4))


# -- vicinity -----------------------------------------------------------------


def test_interior_qubit_has_eight_neighbours():
    rel = adjacency_relation(square_torus(3))
    for q in range(rel.graph.n):
        assert rel.graph.degree(q) == 8


def test_single_plaquette_relation_is_complete():
    rel = adjacency_relation(single_plaquette(4))
    assert rel.graph.edge_count() == 6  # K4


def test_one_point_connection_relates_only_through_shared_star():
    emb = one_point_double_plaquette()
    rel = adjacency_relation(emb)
    # edges 0..3 belong to the first square, 4..7 to the second; only the
    # edges meeting the shared vertex see across
    cross = [(u, v) for u, v in rel.graph.edges() if (u < 4) != (v < 4)]
    shared_vertex_edges = {0, 3, 4, 7}
    assert cross and all(
        u in shared_vertex_edges and v in shared_vertex_edges for u, v in cross
    )


def test_adjacency_relation_is_irreflexive_and_symmetric():
    for emb in polyform_enumerate(3, "square") + [square_torus(2)]:
        rel = adjacency_relation(emb)
        for i, row in enumerate(rel.graph.rows):
            assert not (row >> i) & 1
        for u, v in rel.graph.edges():
            assert rel.related(v, u)


# -- loop operators -----------------------------------------------------------


def test_loop_operator_algebra():
    pairs = loop_operators(2)
    assert len(pairs) == 2
    z1, x1 = pairs[0].z_loop, pairs[0].x_loop
    z2, x2 = pairs[1].z_loop, pairs[1].x_loop
    assert not z1.commutes_with(x1) and not z2.commutes_with(x2)
    assert z1.commutes_with(x2) and z2.commutes_with(x1)
    assert x1.commutes_with(x2) and z1.commutes_with(z2)


def test_face_boundary_z_cycle_is_in_stabilizer_span():
    emb = square_torus(2)
    tab, _ = surface_stabilizer(emb)
    rows = tab.bit_matrix()
    from toricgs import gf2

    face_mask = 0
    for k in emb.faces[0]:
        face_mask ^= 1 << k
    boundary_row = face_mask << emb.n_qubits  # z block
    assert gf2.in_row_span(rows, boundary_row) is not None


def test_loop_z_commutes_with_every_star():
    emb = square_torus(3)
    tab, _ = surface_stabilizer(emb)
    for pair in loop_operators(3):
        for gen in tab.generators:
            assert pair.z_loop.commutes_with(gen)


# -- the transform ------------------------------------------------------------


def test_plaquette_transform_star_and_oracle():
    emb = single_plaquette(4)
    res = transform_to_graph_state(emb)
    assert res.verified
    assert sorted(res.graph.degree(v) for v in res.graph.labels) == [1, 1, 1, 3]
    tab, _ = surface_stabilizer(emb)
    state = graph_state_vector(res.graph)
    for q in sorted(res.hadamard_qubits):
        state = apply_hadamard(state, q)
    assert is_stabilized(state, tab)


def test_one_point_double_plaquette_transform():
    res = transform_to_graph_state(one_point_double_plaquette())
    assert res.verified and not res.graph.is_connected()


def test_torus_transform_all_trees_verified():
    emb = square_torus(2)
    for tree in enumerate_spanning_trees(emb.graph)[:10]:
        assert transform_to_graph_state(emb, tree).verified


def test_torus_sector_state_oracle():
    # The rank-8 sector tableau pins one state; the rotated graph state
    # reproduces it on the dense oracle.
    emb = square_torus(2)
    tree = enumerate_spanning_trees(emb.graph)[0]
    res = transform_to_graph_state(emb, tree)
    assert res.verified
    state = graph_state_vector(res.graph)
    for q in sorted(res.hadamard_qubits):
        state = apply_hadamard(state, q)
    assert is_stabilized(state, sector_tableau(emb, tree))


def test_transform_exhaustive_small_polyforms():
    for lattice in ("square", "triangular"):
        for n in range(1, 5):
            for emb in polyform_enumerate(n, lattice):
                for tree in enumerate_spanning_trees(emb.graph):
                    assert transform_to_graph_state(emb, tree).verified


def test_degenerate_open_instance_raises():
    # ring of 8 cells around a hole: the hole's cycle is not spanned by faces
    from toricgs.polyforms import polyform_embedding

    ring = [(x, y) for x in range(3) for y in range(3) if (x, y) != (1, 1)]
    emb = polyform_embedding(ring, "square")
    validate_embedding(emb)
    _, deg = surface_stabilizer(emb)
    assert deg == 2
    with pytest.raises(DegeneracyError):
        transform_to_graph_state(emb)


# -- qubit ids, contraction, files --------------------------------------------


def test_contract_embedding_keeps_qubit_ids():
    emb = load_setup(fixture_path("pentomino_plus.json"))
    reduced = contract_embedding(emb, 0)
    assert reduced.qubit_ids == tuple(range(1, 16))
    validate_embedding(reduced)
    assert phi_graph(reduced).labels == tuple(range(1, 16))


def test_setup_round_trip(tmp_path):
    emb = square_torus(2)
    path = tmp_path / "torus.json"
    dump_setup(emb, path)
    again = load_setup(path)
    assert again.to_dict() == emb.to_dict()
    assert again.digest() == emb.digest()


def test_malformed_setup_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"vertices": [0, 1], "edges": [[0, 1]]}))
    with pytest.raises(EmbeddingError):
        load_setup(path)


def test_bundled_fixtures_all_validate():
    for rel in list_fixtures():
        if rel.endswith(".graph.json") or rel.endswith("pentomino_chain.json"):
            continue
        validate_embedding(load_setup(fixture_path(rel)))


def test_sphere_embedding_genus_zero():
    sphere = Embedding(
        Multigraph([0, 1], [(0, 1), (0, 1)]), ((0, 1), (0, 1)), closed=True
    )
    validate_embedding(sphere)
    _, deg = surface_stabilizer(sphere)
    assert deg == 1  # 4^0
    assert transform_to_graph_state(sphere).verified


def test_three_by_three_torus_transform():
    emb = square_torus(3)
    res = transform_to_graph_state(emb)
    assert res.verified
    assert len(res.hadamard_qubits) == 18 - 9 + 1  # non-tree edges
