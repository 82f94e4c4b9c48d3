import random
from fractions import Fraction

import pytest

from localcode.f2 import BitVector, GuardExceeded, popcount
from localcode.generalized import (
    BoundaryGraph,
    boundary_graph_product,
    check_boundary_expansion,
    check_functional_inequalities,
    derive_corollary_bounds,
    generalized_repetition,
    generalized_surface,
    graph_to_boundary_complex,
    repetition_boundary_graph,
    rep_constants,
    surface_constants,
    _check_level1_by_coset,
)


def test_repetition_counts():
    y = generalized_repetition(5, 2)
    assert y.levels == ((5, 0), (4, 2))
    assert generalized_repetition(5, 3).interior(0) == 7
    assert generalized_repetition(3, 4).interior(0) == 5


def test_repetition_parameter_validation():
    with pytest.raises(ValueError):
        generalized_repetition(4, 2)
    with pytest.raises(ValueError):
        generalized_repetition(5, 1)


def test_surface_counts():
    y = generalized_surface(3, 2, 2)
    assert y.interior(0) == 9
    assert y.interior(1) == 12
    # the mixed-branching count follows the per-arm formula (3 bits) x (4 bits)
    y23 = generalized_surface(3, 2, 3)
    assert y23.interior(0) == 3 * 4
    assert y23.interior(1) == 2 * 4 + 3 * 3
    # no branching: a plain surface-code patch with boundary
    y22 = generalized_surface(5, 2, 2)
    assert y22.interior(0) == 25


def test_boundary_complex_interior_chains():
    for y in (generalized_repetition(7, 3), generalized_surface(3, 2, 3)):
        y.validate()  # delta delta = 0 on interiors, augmentation annihilated


def test_weight_split():
    y = generalized_surface(3, 2, 2)
    rng = random.Random(0)
    total = sum(y.levels[1])
    for _ in range(50):
        bits = rng.randrange(1 << total)
        wi, wb = y.split_weight(1, bits)
        assert wi + wb == popcount(bits)


def test_repetition_expansion_lemma_exhaustive():
    for length in (3, 5, 7):
        for branches in (2, 3, 4):
            y = generalized_repetition(length, branches)
            res = check_boundary_expansion(y, 0, Fraction(2, length), Fraction(1))
            assert res.passed, (length, branches)


def test_repetition_expansion_is_tight_somewhere():
    # the sweep reports the exact best constants; they dominate the stated ones
    y = generalized_repetition(5, 3)
    res = check_boundary_expansion(y, 0, Fraction(2, 5), Fraction(1))
    assert res.max_beta is not None and res.max_beta >= Fraction(2, 5)
    assert res.max_eta is not None and res.max_eta >= 1
    # pushing beta above the sweep value must fail
    res_bad = check_boundary_expansion(y, 0, res.max_beta + Fraction(1, 100), Fraction(1))
    assert not res_bad.passed and res_bad.witness is not None


def test_surface_expansion_lemma_level0():
    # the 2**25 sweep for (5, 2, 2) runs in the acceptance suite
    for params in ((3, 2, 2), (3, 2, 3)):
        length = params[0]
        y = generalized_surface(*params)
        res = check_boundary_expansion(
            y, 0, Fraction(1, length), Fraction(length - 1, 4 * length)
        )
        assert res.passed, params


def test_surface_expansion_lemma_level1_exhaustive():
    for params in ((3, 2, 2), (3, 2, 3)):
        length = params[0]
        y = generalized_surface(*params)
        res = check_boundary_expansion(y, 1, Fraction(2, 3 * length), Fraction(1, 2))
        assert res.passed, params


def test_surface_level1_sampled_matches_seed():
    y = generalized_surface(5, 2, 2)
    r1 = check_boundary_expansion(y, 1, Fraction(2, 15), Fraction(1, 2), mode="sampled", seed=3, trials=2000)
    r2 = check_boundary_expansion(y, 1, Fraction(2, 15), Fraction(1, 2), mode="sampled", seed=3, trials=2000)
    assert r1.passed and r2.passed
    assert r1.max_beta == r2.max_beta and r1.max_eta == r2.max_eta


def test_level1_table_agrees_with_coset_search():
    y = generalized_surface(3, 2, 2)
    rng = random.Random(1)
    for _ in range(8):
        beta = Fraction(rng.randint(1, 8), rng.randint(1, 8))
        eta = Fraction(rng.randint(1, 8), rng.randint(1, 8))
        table = check_boundary_expansion(y, 1, beta, eta)
        literal = _check_level1_by_coset(
            y, beta, eta, "exhaustive", seed=0, trials=0, force=False
        )
        assert table.passed == literal.passed, (beta, eta)


def test_zero_vector_is_vacuous():
    y = generalized_surface(3, 2, 2)
    w = derive_corollary_bounds(y, BitVector.zeros(y.interior(1)))
    assert w.f0.is_zero() and w.f1.is_zero()
    assert all(w.audits.values())


def test_corollary_witnesses_surface_exhaustive():
    y = generalized_surface(3, 2, 2)
    n1 = y.interior(1)
    for bits in range(1 << n1):
        w = derive_corollary_bounds(y, BitVector(n1, bits))
        assert all(w.audits.values()), (bits, w.audits)


def test_corollary_witnesses_repetition_exhaustive():
    y = generalized_repetition(7, 4)
    n0 = y.interior(0)
    assert n0 == 13
    for bits in range(1 << n0):
        w = derive_corollary_bounds(y, BitVector(n0, bits))
        assert w.f0.weight() <= popcount(bits)
        assert all(w.audits.values()), bits


def test_functional_inequalities_repetition_graph():
    g = repetition_boundary_graph(5, 2)
    res = check_functional_inequalities(g, Fraction(1, 5), Fraction(1, 5))
    assert res.passed
    assert res.max_c >= Fraction(1, 5) and res.max_c_boundary >= Fraction(1, 5)


def test_functional_inequalities_constant_h_vacuous():
    g = repetition_boundary_graph(3, 2)
    res = check_functional_inequalities(g, Fraction(1000), Fraction(1000))
    # constants fail for nonconstant h, but the constant functions never bind
    assert res.witness is None or res.witness.weight() not in (0, g.n)


def test_product_of_repetition_graphs():
    g = repetition_boundary_graph(3, 2)
    p = boundary_graph_product(g, g)
    assert p.n == 9
    assert max(p.boundary_mult) == 2  # corners double-count
    res = check_functional_inequalities(p, Fraction(1, 3), Fraction(1, 3))
    assert res.passed


def test_product_identity_factor():
    g = repetition_boundary_graph(5, 3)
    single = BoundaryGraph(n=1, edges=frozenset(), boundary_mult=(0,))
    p = boundary_graph_product(g, single)
    assert p.n == g.n and len(p.edges) == len(g.edges)
    assert p.boundary_mult == g.boundary_mult


def test_product_vertex_count():
    g = repetition_boundary_graph(5, 3)
    assert boundary_graph_product(g, g).n == 49


def test_functional_inequality_product_lemma_random_pairs():
    # five here; the acceptance suite runs twenty
    rng = random.Random(2024)
    pairs = 0
    while pairs < 5:
        g1 = _random_boundary_graph(rng, rng.randint(3, 5))
        g2 = _random_boundary_graph(rng, rng.randint(3, 4))
        if g1.n * g2.n > 20:
            continue
        m1 = check_functional_inequalities(g1, Fraction(0), Fraction(0))
        m2 = check_functional_inequalities(g2, Fraction(0), Fraction(0))
        if m1.max_c is None or m2.max_c is None:
            continue
        c = min(m1.max_c, m2.max_c)
        cb_vals = [v for v in (m1.max_c_boundary, m2.max_c_boundary) if v is not None]
        cb = min(cb_vals) if len(cb_vals) == 2 else c
        prod = boundary_graph_product(g1, g2)
        res = check_functional_inequalities(prod, c, min(c, cb))
        assert res.passed, (g1, g2)
        pairs += 1


def _random_boundary_graph(rng, n):
    """Random connected graph with at least one boundary vertex."""
    edges = {(i - 1, i) for i in range(1, n)}
    for _ in range(rng.randint(0, n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    mult = [0] * n
    for v in rng.sample(range(n), rng.randint(1, n)):
        mult[v] = rng.randint(1, 2)
    return BoundaryGraph(n=n, edges=frozenset(edges), boundary_mult=tuple(mult))


def test_functional_inequality_implies_level0_expansion():
    # measured graph constants transfer to the edge-check complex with
    # eta = C_bnd |V| / (2 |V_bnd|)
    for g in (repetition_boundary_graph(5, 2), repetition_boundary_graph(3, 3)):
        m = check_functional_inequalities(g, Fraction(0), Fraction(0))
        y = graph_to_boundary_complex(g)
        eta0 = m.max_c_boundary * g.n / (2 * g.boundary_total)
        res = check_boundary_expansion(y, 0, m.max_c, eta0)
        assert res.passed


def test_repetition_graph_complex_matches_constructor():
    g = repetition_boundary_graph(5, 2)
    y = graph_to_boundary_complex(g)
    yr = generalized_repetition(5, 2)
    assert y.levels == yr.levels


def test_guard_on_large_functional_sweep():
    big = BoundaryGraph(n=23, edges=frozenset((i, i + 1) for i in range(22)), boundary_mult=(1,) * 23)
    with pytest.raises(GuardExceeded):
        check_functional_inequalities(big, Fraction(1), Fraction(1))
