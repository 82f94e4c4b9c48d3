import pytest

from localcode.builders import repetition_matrix
from localcode.complexes import ClassicalCode, css_dimension, css_distance, validate
from localcode.f2 import SparseBitMatrix, rank
from localcode.products import (
    ActedBipartiteGraph,
    GroupTable,
    balanced_product_codes,
    balanced_product_graphs,
    balanced_product_square_complex,
    cayley_action_graph,
    cayley_product_map,
    check_cayley_iso,
    code_graph,
    complete_graph_incidence,
    cycle_graph_incidence,
    cyclic_group,
    dihedral_group,
    direct_product_group,
    left_right_cayley,
    plain_graph,
    square_complexes_isomorphic_by,
    tanner_code,
    tensor_code_complex,
    trivial_group,
)


def doubled_repetition_with_swap():
    """Two disjoint cyclic rep-3 blocks with the free Z2 swap action."""
    z2 = cyclic_group(2)
    edges = set()
    for blk in range(2):
        for r in range(3):
            edges.add((blk * 3 + r, blk * 3 + r))
            edges.add((blk * 3 + (r + 1) % 3, blk * 3 + r))
    swap = tuple((v + 3) % 6 for v in range(6))
    ident = tuple(range(6))
    return ActedBipartiteGraph(
        group=z2,
        n_left=6,
        n_right=6,
        edges=frozenset(edges),
        action_left=(ident, swap),
        action_right=(ident, swap),
    )


def test_group_tables_validate():
    for g in (cyclic_group(1), cyclic_group(7), dihedral_group(4),
              direct_product_group(cyclic_group(2), cyclic_group(2))):
        g.validate()
    assert dihedral_group(3).order == 6
    # a non-associative table is rejected
    bad = GroupTable(((0, 1), (1, 1)))
    with pytest.raises(ValueError):
        bad.validate()


def test_acted_graph_validation_rejects_non_free():
    z2 = cyclic_group(2)
    ident = tuple(range(2))
    g = ActedBipartiteGraph(
        group=z2, n_left=2, n_right=2,
        edges=frozenset({(0, 0), (1, 1)}),
        action_left=(ident, ident),  # identity acting for the nontrivial element
        action_right=(ident, (1, 0)),
    )
    with pytest.raises(ValueError, match="free|homomorphism"):
        g.validate()


def test_acted_graph_validation_rejects_non_invariant_edges():
    z2 = cyclic_group(2)
    ident = tuple(range(2))
    swap = (1, 0)
    g = ActedBipartiteGraph(
        group=z2, n_left=2, n_right=2,
        edges=frozenset({(0, 0)}),  # orbit partner (1,1) missing
        action_left=(ident, swap),
        action_right=(ident, swap),
    )
    with pytest.raises(ValueError, match="invariant"):
        g.validate()


def test_balanced_product_trivial_group_is_cartesian():
    ga = plain_graph(2, 1, [(0, 0), (1, 0)])
    gb = plain_graph(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)])
    sq = balanced_product_graphs(ga, gb)
    assert sq.n_vertices == (2 + 1) * (3 + 2)
    assert len(sq.faces) == 2 * 4
    sq.validate()


def test_balanced_product_z2_halves_counts():
    g = doubled_repetition_with_swap()
    sq = balanced_product_graphs(g, g)
    # each class pair has |V_A(i)| |V_B(j)| / |G| orbits
    assert sq.n_vertices == 4 * (6 * 6 // 2)
    assert len(sq.faces) == 12 * 12 // 2
    x = balanced_product_codes(g, g)
    t = tensor_code_complex(g.h_matrix(), g.swap().h_matrix())
    assert x.sizes == tuple(s // 2 for s in t.sizes)
    assert validate(x).ok


def test_balanced_product_rejects_mismatched_groups():
    ga = code_graph(repetition_matrix(3))
    z2 = cyclic_group(2)
    gb = ActedBipartiteGraph(
        group=z2, n_left=1, n_right=1, edges=frozenset({(0, 0)}),
        action_left=(tuple([0]), tuple([0])), action_right=(tuple([0]), tuple([0])),
    )
    with pytest.raises(ValueError, match="group"):
        balanced_product_codes(ga, gb)


def test_balanced_product_non_free_rejected():
    z2 = cyclic_group(2)
    ident = tuple(range(3))
    g = ActedBipartiteGraph(
        group=z2, n_left=3, n_right=3,
        edges=frozenset({(i, i) for i in range(3)}),
        action_left=(ident, ident), action_right=(ident, ident),
    )
    with pytest.raises(ValueError, match="free"):
        balanced_product_graphs(g, g)


def test_hypergraph_product_via_trivial_group():
    g = code_graph(repetition_matrix(3))
    x = balanced_product_codes(g, g)
    assert x.sizes == (6, 13, 6)
    assert css_dimension(x) == 1
    assert css_distance(x) == (3, 3)


def test_balanced_product_equals_tensor_for_trivial_group():
    ha = repetition_matrix(3)
    hb = repetition_matrix(4, cyclic=True)
    x = balanced_product_codes(code_graph(ha), code_graph(hb))
    t = tensor_code_complex(ha, hb.transpose())
    assert x.delta0 == t.delta0 and x.delta1 == t.delta1


def test_balanced_product_single_square():
    one = SparseBitMatrix.identity(1)
    x = balanced_product_codes(code_graph(one), code_graph(one))
    assert x.sizes == (1, 2, 1)
    assert validate(x).ok


def test_square_matches_code_adjacency():
    g = code_graph(repetition_matrix(3))
    sq = balanced_product_square_complex(g, g)
    x = balanced_product_codes(g, g)
    adj = sq.adjacency_complex()
    assert adj.delta0 == x.delta0 and adj.delta1 == x.delta1


def test_left_right_cayley_counts():
    z3 = cyclic_group(3)
    sq = left_right_cayley([1], z3, [1])
    assert sq.n_vertices == 12 and len(sq.faces) == 3
    z5 = cyclic_group(5)
    sq5 = left_right_cayley([1, 4], z5, [2, 3])
    assert len(sq5.faces) == 20
    by_class = {}
    for u, v in sq5.edges:
        key = frozenset((sq5.cls[u], sq5.cls[v]))
        by_class[key] = by_class.get(key, 0) + 1
    assert all(count == 10 for count in by_class.values())
    # A = B = G gives |G|^3 faces
    z4 = cyclic_group(4)
    assert len(left_right_cayley(list(range(4)), z4, list(range(4))).faces) == 64


def test_left_right_cayley_rejects_empty_generators():
    with pytest.raises(ValueError):
        left_right_cayley([], cyclic_group(3), [1])


def test_cayley_iso_corpus():
    corpus = [
        (cyclic_group(3), [1], [1]),
        (cyclic_group(3), [1, 2], [1, 2]),
        (cyclic_group(4), [1, 3], [2]),
        (cyclic_group(5), [1, 4], [2, 3]),
        (cyclic_group(6), [1, 5], [2, 3]),
        (cyclic_group(7), [1, 2, 4], [3, 5, 6]),
        (cyclic_group(8), [1, 7], [2, 6]),
        (dihedral_group(3), [1, 3], [2, 4]),
        (dihedral_group(4), [1, 7], [4, 5]),
        (dihedral_group(6), [1, 6], [2, 7]),
        (direct_product_group(cyclic_group(2), cyclic_group(2)), [1, 2], [3]),
        (cyclic_group(12), [1, 11], [3, 4]),
    ]
    for group, a, b in corpus:
        assert group.order <= 24
        assert check_cayley_iso(a, group, b).ok


def test_cayley_iso_negative_control():
    z3 = cyclic_group(3)
    direct = left_right_cayley([1], z3, [1])
    product, phi = cayley_product_map([1], z3, [1])
    corrupted = type(direct)(
        cls=direct.cls,
        edges=direct.edges,
        faces=frozenset(list(direct.faces)[:-1]),  # drop one face
    )
    rep = square_complexes_isomorphic_by(phi, product, corrupted)
    assert not rep.ok and "faces" in rep.detail


def test_orbit_sizes_divide():
    g = doubled_repetition_with_swap()
    sq = balanced_product_graphs(g, g)
    # a free diagonal action makes every orbit full-sized
    assert sq.n_vertices * g.group.order == 4 * 36


def test_tanner_code_no_constraints():
    empty_local = ClassicalCode(SparseBitMatrix.zero(0, 3))
    tc = tanner_code(complete_graph_incidence(4), empty_local)
    assert tc.m == 0 and tc.n == 6
    assert tc.n - rank(tc.h) == 6


def test_tanner_code_k4_even_weight():
    even3 = ClassicalCode(SparseBitMatrix.from_dense([[1, 1, 1]]))
    tc = tanner_code(complete_graph_incidence(4), even3)
    assert tc.n - rank(tc.h) == 3  # cycle space of K4


def test_tanner_code_cycle_repetition():
    rep2 = ClassicalCode(SparseBitMatrix.from_dense([[1, 1]]))
    tc = tanner_code(cycle_graph_incidence(6), rep2)
    assert tc.n - rank(tc.h) == 1


def test_tanner_code_length_mismatch():
    rep2 = ClassicalCode(SparseBitMatrix.from_dense([[1, 1]]))
    with pytest.raises(ValueError, match="degree"):
        tanner_code(complete_graph_incidence(4), rep2)
