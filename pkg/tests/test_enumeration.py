import itertools

import networkx as nx
import pytest

from helpers import brute_nonfacial_dual_4_cycles, from_nx_planar, same_graph, to_nx
from irpoly.enumeration import (
    NONFACIAL_4_CYCLE,
    NOT_3_CONNECTED,
    NOT_4_VALENT,
    EdgePair,
    EnumerationOverflow,
    TwistError,
    antiprism,
    census_graphs,
    check_validity,
    edge_twist,
    enumerate_polyhedra,
    face_edge_pairs,
    find_edge_pair,
    nonfacial_dual_4_cycles,
    twisted_antiprism,
)
from irpoly.fixtures import elongated_square_bipyramid
from irpoly.planar import canonical_code, cube, face_vector, trace_faces
from reference_data import CENSUS_TABLE


@pytest.mark.parametrize("n", range(3, 13))
def test_antiprisms_valid(n):
    g = antiprism(n)
    assert g.vertex_count == 2 * n
    assert len(g.faces) == 2 * n + 2
    assert check_validity(g)


@pytest.mark.parametrize("n", range(4, 13))
def test_twisted_antiprisms_valid(n):
    g = twisted_antiprism(n)
    assert len(g.faces) == 2 * n + 3
    assert g.is_regular(4)
    assert check_validity(g)
    assert canonical_code(g) != canonical_code(antiprism(n))


def test_constructor_preconditions():
    with pytest.raises(ValueError):
        antiprism(2)
    with pytest.raises(ValueError):
        twisted_antiprism(3)


@pytest.mark.parametrize("g", [antiprism(4), antiprism(6), twisted_antiprism(5)], ids=["A4", "A6", "A5*"])
def test_twist_invariants(g):
    fs = trace_faces(g)
    for p in face_edge_pairs(g):
        h = edge_twist(g, p)
        assert h.vertex_count == g.vertex_count + 1
        assert h.edge_count == g.edge_count + 2
        assert trace_faces(h).face_count == fs.face_count + 1
        assert h.is_regular(4)
        # the new vertex is joined to the four ends of the removed edges
        new = h.vertex_count - 1
        assert set(h.rotation[new]) == set(p.e1) | set(p.e2)
        assert not h.has_edge(*p.e1) and not h.has_edge(*p.e2)


def test_twist_rejects_bad_pairs():
    g = antiprism(4)
    square = next(f for f in g.faces if len(f) == 4)
    with pytest.raises(TwistError):
        edge_twist(g, EdgePair((square[0], square[1]), (square[1], square[2]), square))
    with pytest.raises(TwistError):
        find_edge_pair(g, (0, 1), (4, 5))
    p = find_edge_pair(g, (square[1], square[0]), (square[3], square[2]))
    assert p.e1 == (square[0], square[1])


def test_twisted_antiprism_is_twist_of_adjacent_edges():
    n = 6
    g = antiprism(n)
    top = next(f for f in g.faces if len(f) == n)
    adjacent = edge_twist(g, EdgePair((top[0], top[1]), (top[2], top[3]), top))
    assert canonical_code(adjacent) == canonical_code(twisted_antiprism(n))
    opposite = edge_twist(g, EdgePair((top[0], top[1]), (top[3], top[4]), top))
    assert canonical_code(opposite) != canonical_code(twisted_antiprism(n))


def test_cube_not_4_valent():
    r = check_validity(cube())
    assert not r
    assert r.reason == NOT_4_VALENT


def _octahedra_joined_by_two_edges():
    a = nx.octahedral_graph()
    b = nx.relabel_nodes(nx.octahedral_graph(), {v: v + 6 for v in range(6)})
    h = nx.union(a, b)
    h.remove_edge(0, 1)
    h.remove_edge(6, 7)
    h.add_edge(0, 6)
    h.add_edge(1, 7)
    return h


def test_two_connected_rejected():
    h = _octahedra_joined_by_two_edges()
    assert nx.node_connectivity(h) == 2
    g = from_nx_planar(h)
    r = check_validity(g)
    assert not r
    assert r.reason == NOT_3_CONNECTED
    cut = set(r.witness)
    rest = h.copy()
    rest.remove_nodes_from(cut)
    assert not nx.is_connected(rest)


def test_separating_belt_rejected():
    g = elongated_square_bipyramid()
    assert g.is_regular(4)
    assert face_vector(g) == {3: 8, 4: 4}
    assert nx.node_connectivity(to_nx(g)) >= 3
    r = check_validity(g)
    assert not r
    assert r.reason == NONFACIAL_4_CYCLE
    # the witness is the belt of four quadrilaterals
    faces = g.faces
    assert sorted(len(faces[i]) for i in r.witness) == [4, 4, 4, 4]


def _as_sets(cycles):
    return {frozenset(frozenset(e) for e in ((a, b), (b, c), (c, d), (d, a))) for a, b, c, d in cycles}


def test_dual_4_cycles_match_exhaustive_search():
    graphs = [elongated_square_bipyramid(), antiprism(4), antiprism(5)]
    for g in census_graphs(13):
        graphs.extend(edge_twist(g, p) for p in face_edge_pairs(g))
    assert len(graphs) > 50
    nonempty = 0
    for g in graphs:
        mine = _as_sets(nonfacial_dual_4_cycles(g))
        assert mine == brute_nonfacial_dual_4_cycles(g)
        nonempty += bool(mine)
    assert nonempty > 0


def test_census_graphs_pass_independent_checks():
    for g in census_graphs(14):
        h = to_nx(g)
        assert nx.check_planarity(h)[0]
        assert nx.node_connectivity(h) >= 3
        assert all(d == 4 for _, d in h.degree())


def test_counts_to_16():
    counts = enumerate_polyhedra(16)
    assert counts == {f: CENSUS_TABLE[f][0] for f in range(8, 17)}
    assert counts[9] == 0


def test_census_pairwise_non_isomorphic():
    graphs = census_graphs(15)
    by_f = {}
    for g in graphs:
        by_f.setdefault(g.vertex_count, []).append(g)
    for group in by_f.values():
        for a, b in itertools.combinations(group, 2):
            assert not same_graph(a, b)


def test_closure_is_a_fixed_point():
    graphs = census_graphs(15)
    again = enumerate_polyhedra(15, seeds=graphs)
    assert again == enumerate_polyhedra(15)


def test_triangle_count_relation():
    for g in census_graphs(16):
        fv = face_vector(g)
        assert fv.get(3, 0) == 8 + sum(p * (k - 4) for k, p in fv.items() if k >= 5)
        assert sum(fv.values()) == g.vertex_count + 2


def test_sink_order_and_min_faces():
    seen = []
    counts = enumerate_polyhedra(14, seen.append, min_faces=12)
    assert set(counts) == {12, 13, 14}
    assert len(seen) == 2 + 2 + 9
    keys = [(g.vertex_count, canonical_code(g)) for g in seen]
    assert keys == sorted(keys)


def test_enumeration_limits():
    with pytest.raises(ValueError):
        enumerate_polyhedra(7)
    with pytest.raises(EnumerationOverflow):
        enumerate_polyhedra(16, max_graphs=10)


def test_progress_lines(capsys):
    enumerate_polyhedra(10, progress=True)
    err = capsys.readouterr().err.splitlines()
    assert err == ["level=8 found=1", "level=9 found=0", "level=10 found=1"]
