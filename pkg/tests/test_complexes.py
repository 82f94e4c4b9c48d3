import random
from fractions import Fraction

import pytest

from localcode.builders import hypergraph_product, repetition_matrix, toric_complex, two_block_code
from localcode.complexes import (
    ChainComplex3,
    ClassicalCode,
    Guards,
    bpt_bounds,
    check_small_set_expansion,
    classical_params,
    classical_soundness,
    css_dimension,
    css_distance,
    energy_barrier,
    measure,
    min_peak_dijkstra,
    surface_code,
    validate,
    _reachable_at_energy,
)
from localcode.f2 import (
    BitVector,
    GuardExceeded,
    SparseBitMatrix,
    image_echelon,
    kernel_basis,
    span_iter,
)


def lift_classical_side_x(h):
    """Two-term code as a 3-term complex with no stabilizers: 0 -> n -> m."""
    return ChainComplex3(SparseBitMatrix.zero(h.cols, 0), h)


def nontrivial_logicals(x):
    z = kernel_basis(x.delta1)
    stab = image_echelon(x.delta0)
    return {v for v in span_iter([b.bits for b in z]) if v and not stab.contains(v)}


def test_validate_surface():
    diag = validate(surface_code(4))
    assert diag.ok and diag.witness is None
    assert diag.max_degree == 4


def test_validate_identity_composition_fails():
    x = ChainComplex3(SparseBitMatrix.identity(1), SparseBitMatrix.identity(1))
    diag = validate(x)
    assert not diag.ok and diag.witness == (0, 0)


def test_validate_zero_delta1():
    h = repetition_matrix(4)
    x = ChainComplex3(h.transpose(), SparseBitMatrix.zero(0, 4))
    assert validate(x).ok


def test_surface_code_parameters():
    sc = surface_code(4)
    assert sc.sizes == (6, 13, 6)
    assert css_dimension(sc) == 1
    assert css_distance(sc) == (3, 3)


def test_surface_code_l6():
    sc = surface_code(6)
    assert sc.sizes[1] == 4 * 4 + 3 * 3
    assert css_dimension(sc) == 1
    assert css_distance(sc) == (4, 4)


def test_dimension_no_checks():
    x = ChainComplex3(SparseBitMatrix.zero(5, 0), SparseBitMatrix.zero(0, 5))
    assert css_dimension(x) == 5
    assert css_distance(x) == (1, 1)


def test_dimension_hypergraph_product():
    x = hypergraph_product(repetition_matrix(3), repetition_matrix(3))
    assert x.sizes == (6, 13, 6)
    assert css_dimension(x) == 1
    assert css_distance(x) == (3, 3)


def test_distance_requires_logicals():
    sc = surface_code(2)  # [[5,1,2]]
    x = ChainComplex3(sc.delta0, SparseBitMatrix(4, 5, {(r, c) for r in range(4) for c in range(5)} and set()))
    # k = 0 complex: identity-based
    y = ChainComplex3(SparseBitMatrix.identity(2), SparseBitMatrix.zero(0, 2))
    with pytest.raises(ValueError):
        css_distance(y)


def test_distance_duality_via_transpose():
    sc = surface_code(4)
    dx, dz = css_distance(sc)
    dxt, dzt = css_distance(sc.transpose())
    assert (dx, dz) == (dzt, dxt)


def test_energy_barrier_repetition_line():
    x = lift_classical_side_x(repetition_matrix(6))
    assert energy_barrier(x, "x") == 1


def test_energy_barrier_no_checks_side():
    x = ChainComplex3(SparseBitMatrix.zero(4, 0), SparseBitMatrix.zero(0, 4))
    assert energy_barrier(x, "x") == 0


def test_energy_barrier_surface_vs_dijkstra():
    sc = surface_code(4)
    ex = energy_barrier(sc, "x")
    ez = energy_barrier(sc, "z")
    assert ex == min_peak_dijkstra(sc.delta1, nontrivial_logicals(sc))
    xt = sc.transpose()
    assert ez == min_peak_dijkstra(xt.delta1, nontrivial_logicals(xt))
    assert (ex, ez) == (1, 1)


def test_energy_barrier_toric_vs_dijkstra():
    x = toric_complex(2)  # [[8,2,2]] with periodic structure
    e = energy_barrier(x, "x")
    assert e == min_peak_dijkstra(x.delta1, nontrivial_logicals(x))
    assert e == 2  # strings on a torus keep two violated endpoints


def test_energy_threshold_monotonicity():
    sc = surface_code(4)
    targets = nontrivial_logicals(sc)

    def is_target(state, synd):
        return state in targets

    reachable = [
        _reachable_at_energy(sc.delta1, eps, is_target=is_target) for eps in range(4)
    ]
    assert reachable == sorted(reachable)  # reachable at eps implies at eps + 1


def test_energy_barrier_guard():
    h = SparseBitMatrix.zero(1, 23)
    x = ChainComplex3(SparseBitMatrix.zero(23, 0), h)
    with pytest.raises(GuardExceeded):
        energy_barrier(x, "x")
    assert energy_barrier(x, "x", guards=Guards(barrier_n=23)) == 0


def test_classical_params_repetition():
    rep = classical_params(ClassicalCode(repetition_matrix(5)))
    assert (rep.n, rep.k, rep.d, rep.energy_barrier) == (5, 1, 5, 1)


def test_classical_params_identity_has_no_codewords():
    with pytest.raises(ValueError):
        classical_params(ClassicalCode(SparseBitMatrix.identity(3)))


def test_classical_params_two_blocks():
    rep = classical_params(two_block_code())
    assert (rep.k, rep.d) == (2, 3)


def test_soundness_repetition4():
    code = ClassicalCode(repetition_matrix(4))
    assert classical_soundness(code) == Fraction(2, 3)


def test_soundness_single_allones_row():
    code = ClassicalCode(SparseBitMatrix.from_dense([[1, 1]]))
    # every x off the code has one violated check and distance 1:
    # n|Hx|/(m dist) = 2 for both, so the exact minimum is 2
    assert classical_soundness(code) == Fraction(2)


def test_soundness_vacuous_cases():
    with pytest.raises(ValueError):
        classical_soundness(ClassicalCode(SparseBitMatrix.zero(2, 3)))


def test_soundness_barrier_inequality():
    # A walk with peak energy E keeps every state within nE/(sm) of the code,
    # so crossing between codewords forces d <= 2 nE/(sm) + 1, i.e.
    # E >= s (m/n) (d-1)/2.  The looser d/2 version fails exactly: the two
    # disjoint triangles have s = 2, d = 3, barrier 2 < 3.
    for code in (ClassicalCode(repetition_matrix(4)), two_block_code()):
        rep = classical_params(code)
        s = classical_soundness(code)
        assert rep.energy_barrier >= s * Fraction(code.m, code.n) * Fraction(rep.d - 1, 2)
    blocks = classical_params(two_block_code())
    s2 = classical_soundness(two_block_code())
    assert blocks.energy_barrier == 2
    assert s2 * Fraction(1, 1) * Fraction(blocks.d, 2) == 3  # the d/2 form overclaims


def test_small_set_surjective_delta0_passes():
    # delta0 surjective, delta1 = 0: every vector is a coboundary
    d0 = SparseBitMatrix.identity(3)
    x = ChainComplex3(d0, SparseBitMatrix.zero(0, 3))
    res = check_small_set_expansion(x, Fraction(1), Fraction(10), Fraction(1, 3), "coboundary")
    assert res.passed


def test_small_set_isolated_qubit_fails():
    # qubit 2 touches no checks at either level and is not a coboundary
    d0 = SparseBitMatrix(3, 1, [(0, 0), (1, 0)])
    d1 = SparseBitMatrix(1, 3, [(0, 0), (0, 1)])
    x = ChainComplex3(d0, d1)
    assert validate(x).ok
    res = check_small_set_expansion(
        x, Fraction(1, 3), Fraction(1, 100), Fraction(1, 3), "coboundary"
    )
    assert not res.passed
    assert res.witness is not None and res.witness.weight() == 1
    assert res.max_beta == 0


def test_small_set_surface_sweep_reports_max_beta():
    sc = surface_code(4)
    alpha = Fraction(2, 13)
    res = check_small_set_expansion(sc, alpha, Fraction(1, 2), Fraction(1, 6), "coboundary")
    assert res.passed
    assert res.max_beta is not None and res.max_beta >= Fraction(1, 2)
    res_b = check_small_set_expansion(sc, alpha, Fraction(1, 2), Fraction(1, 6), "boundary")
    assert res_b.passed


def test_bpt_quantum_and_classical_values():
    q = bpt_bounds(10, 3, 2, "quantum")
    assert (q.d_bound, q.e_bound) == (200, 240)
    c = bpt_bounds(10, 3, 2, "classical")
    assert (c.d_bound, c.e_bound) == (1000, 200)


def test_bpt_precondition():
    with pytest.raises(ValueError):
        bpt_bounds(4, 3, 3, "quantum")  # needs l >= 2(r-1)^2 = 8


def test_bpt_tradeoff_comparisons():
    q = bpt_bounds(10, 3, 2, "quantum")
    assert q.k_bound_holds(k=1, d=3)
    assert not q.k_bound_holds(k=10**9, d=200)
    c = bpt_bounds(10, 3, 2, "classical")
    assert c.k_bound_holds(k=5, d=10)


def test_measure_reports_methods():
    rep = measure(surface_code(4))
    assert rep.n == 13 and rep.k == 1 and rep.d == 3
    assert rep.energy_barrier == 1
    assert "d" in rep.methods and "energy_barrier" in rep.methods


def test_measure_skips_guarded_fields():
    x = toric_complex(4)  # 32 qubits: distance and barrier guards trip
    rep = measure(x)
    assert rep.k == 2
    assert rep.d is None and "skipped" in rep.methods["d"]
