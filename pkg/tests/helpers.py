"""Independent oracles built on networkx, plus shared fixtures."""

import itertools

import networkx as nx

from irpoly.enumeration import antiprism, twisted_antiprism
from irpoly.fixtures import rhombicuboctahedron
from irpoly.planar import PlanarGraph, cube


def small_fixtures():
    return {
        "A3": antiprism(3),
        "A4": antiprism(4),
        "A5": antiprism(5),
        "A7": antiprism(7),
        "A4*": twisted_antiprism(4),
        "A6*": twisted_antiprism(6),
        "cube": cube(),
        "rhombicuboctahedron": rhombicuboctahedron(),
    }


def to_nx(g: PlanarGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


def from_nx_planar(h: nx.Graph) -> PlanarGraph:
    """Rotation system from networkx's own planar embedding."""
    ok, emb = nx.check_planarity(h)
    assert ok
    index = {v: i for i, v in enumerate(sorted(h.nodes))}
    rot = [tuple(index[w] for w in emb.neighbors_cw_order(v)) for v in sorted(h.nodes)]
    return PlanarGraph(tuple(rot))


def same_graph(g: PlanarGraph, h: PlanarGraph) -> bool:
    """Graph isomorphism; for 3-connected planar graphs this coincides with
    isomorphism of the embeddings up to reflection (unique embedding)."""
    return nx.is_isomorphic(to_nx(g), to_nx(h))


def brute_nonfacial_dual_4_cycles(g: PlanarGraph):
    """Dual 4-cycles found by exhaustive search over face quadruples."""
    faces = [frozenset(f) for f in g.faces]
    edge_sets = []
    for f in g.faces:
        k = len(f)
        edge_sets.append({frozenset((f[i], f[(i + 1) % k])) for i in range(k)})
    adjacent = {}
    for a, b in itertools.combinations(range(len(faces)), 2):
        adjacent[a, b] = adjacent[b, a] = bool(edge_sets[a] & edge_sets[b])
    vertex_stars = [frozenset(i for i, f in enumerate(faces) if v in f) for v in range(g.vertex_count)]
    out = set()
    for quad in itertools.combinations(range(len(faces)), 4):
        for a, b, c, d in ((quad[0], quad[1], quad[2], quad[3]),
                           (quad[0], quad[1], quad[3], quad[2]),
                           (quad[0], quad[2], quad[1], quad[3])):
            if adjacent[a, b] and adjacent[b, c] and adjacent[c, d] and adjacent[d, a]:
                cyc = frozenset(frozenset(e) for e in ((a, b), (b, c), (c, d), (d, a)))
                if frozenset(quad) not in vertex_stars:
                    out.add(cyc)
    return out
