import dataclasses
import random

import pytest

from localcode.builders import single_square, toric_square_complex
from localcode.complexes import css_dimension, validate
from localcode.f2 import BitVector, SparseBitMatrix, image_echelon, kernel_basis
from localcode.subdivision import (
    check_size_bounds,
    clean_vector,
    directional_degrees,
    lift,
    project,
    subdivide,
    verify_chain_map,
    verify_dimension_preservation,
)


@pytest.fixture(scope="module")
def square_sub():
    return subdivide(single_square(), 3)


def test_single_square_counts(square_sub):
    assert square_sub.complex.sizes == (4, 8, 4)
    regions = [square_sub.region[v] for v in range(square_sub.n_vertices)]
    assert (regions.count("S"), regions.count("T"), regions.count("U")) == (9, 6, 1)
    assert len(square_sub.s_components) == 1
    assert len(square_sub.t_components) == 2
    assert len(square_sub.u_components) == 1


def test_corner_coordinates(square_sub):
    sq = square_sub.base_square
    for v in range(sq.n_vertices):
        expect = {"00": (0, 0), "10": (3, 0), "01": (0, 3), "11": (3, 3)}[sq.cls[v]]
        assert square_sub.coords[v] == expect


def test_even_subdivision_rejected():
    with pytest.raises(ValueError):
        subdivide(single_square(), 4)
    with pytest.raises(ValueError):
        subdivide(single_square(), 1)


def test_parity_complex_validates(subdivision_corpus):
    for name, sub, _ in subdivision_corpus:
        diag = validate(sub.complex)
        assert diag.ok, name
        assert diag.max_degree <= 4, name


def test_region_sizes_partition(subdivision_corpus):
    for name, sub, _ in subdivision_corpus:
        l = sub.l
        per_face = (l + 1) ** 2
        for v in range(sub.n_vertices):
            i, j = sub.coords[v]
            reg = sub.region[v]
            if i < l and j < l:
                assert reg == "S"
            elif i == l and j == l:
                assert reg == "U"
            else:
                assert reg == "T"


def test_chain_map_commutes(subdivision_corpus):
    for name, sub, _ in subdivision_corpus:
        assert verify_chain_map(sub).ok, name


def test_chain_map_negative_control(square_sub):
    sub = dataclasses.replace(square_sub)
    sub._lift_mats = {}
    f1 = square_sub.lift_matrix(1)
    corrupted = SparseBitMatrix(f1.rows, f1.cols, list(f1.entries)[:-1])
    sub._lift_mats[1] = corrupted
    sub._lift_mats[0] = square_sub.lift_matrix(0)
    sub._lift_mats[2] = square_sub.lift_matrix(2)
    rep = verify_chain_map(sub)
    assert not rep.ok and rep.failing_level is not None


def test_lift_linearity_and_zero(square_sub):
    for lvl in (0, 1, 2):
        nb = square_sub.base.sizes[lvl]
        assert lift(square_sub, lvl, BitVector.zeros(nb)).is_zero()


def test_lift_unit_vector_fills_component(square_sub):
    up = lift(square_sub, 1, BitVector.from_support(2, [0]))
    members = square_sub.t_components[0]
    assert len(members) == 3  # the component has 3 vertices
    qubits = [square_sub.level_index[v] for v in members if square_sub.level[v] == 1]
    assert sorted(up.support()) == sorted(qubits)


def test_lift_all_ones_level0(square_sub):
    up = lift(square_sub, 0, BitVector.ones(square_sub.base.sizes[0]))
    assert up == BitVector.ones(square_sub.complex.sizes[0])


def test_project_inverts_lift(subdivision_corpus):
    rng = random.Random(9)
    for name, sub, _ in subdivision_corpus[:6]:
        for lvl in (0, 1, 2):
            nb = sub.base.sizes[lvl]
            for _ in range(20):
                c = BitVector(nb, rng.randrange(1 << min(nb, 30)) & ((1 << nb) - 1))
                assert project(sub, lvl, lift(sub, lvl, c)) == c, (name, lvl)


def test_project_rejects_s_support(square_sub):
    v = next(
        v
        for v in range(square_sub.n_vertices)
        if square_sub.level[v] == 1 and square_sub.region[v] == "S"
    )
    c = BitVector.from_support(8, [square_sub.level_index[v]])
    assert project(square_sub, 1, c) is None


def test_project_constant_component(square_sub):
    members = square_sub.t_components[1]
    qubits = [square_sub.level_index[v] for v in members if square_sub.level[v] == 1]
    c = BitVector.from_support(8, qubits)
    assert project(square_sub, 1, c) == BitVector.from_support(2, [1])


def test_lift_weight_relations(subdivision_corpus):
    rng = random.Random(77)
    for name, sub, deg2 in subdivision_corpus:
        if not deg2:
            continue
        l = sub.l
        dmax = check_size_bounds(sub).delta_max
        f2 = sub.lift_matrix(2)
        f1 = sub.lift_matrix(1)
        f0 = sub.lift_matrix(0)
        for _ in range(40):
            c2 = rng.randrange(1 << sub.base.sizes[2])
            assert bin(f2.apply(c2)).count("1") == bin(c2).count("1")
            c1 = rng.randrange(1 << sub.base.sizes[1])
            w1 = bin(c1).count("1")
            lifted = bin(f1.apply(c1)).count("1")
            assert l * w1 <= lifted <= dmax * l * w1 // 2
            c0 = rng.randrange(1 << sub.base.sizes[0])
            assert l * l * bin(c0).count("1") <= bin(f0.apply(c0)).count("1")


def test_t_component_qubit_counts(subdivision_corpus):
    for name, sub, deg2 in subdivision_corpus:
        if not deg2:
            continue
        for members in sub.t_components:
            qubits = sum(1 for v in members if sub.level[v] == 1)
            assert qubits >= sub.l, name


def test_size_bound_claim(subdivision_corpus):
    for name, sub, deg2 in subdivision_corpus:
        rep = check_size_bounds(sub)
        assert rep.component_formula_ok, name  # holds without degree hypotheses
        if deg2:
            assert rep.ok_lower and rep.ok_upper, name


def test_size_bound_fails_for_degree_one():
    # the claim's hypotheses matter: a single square misses both bounds
    rep = check_size_bounds(subdivide(single_square(), 3))
    assert not rep.ok_lower and not rep.ok_upper


def test_clean_lifted_codeword_is_fixed_point():
    sq = toric_square_complex(2)
    sub = subdivide(sq, 3)
    z_base = kernel_basis(sub.base.delta1)
    nontrivial = next(z for z in z_base if not image_echelon(sub.base.delta0).contains(z.bits))
    c1 = lift(sub, 1, nontrivial)
    res = clean_vector(sub, c1)
    assert res.c1_prime == c1 and res.c1_dprime == c1
    assert res.tilde_c1 == nontrivial


def test_clean_coboundary_inside_s(square_sub):
    # a coboundary supported inside one S component cleans to zero
    v = next(
        v
        for v in range(square_sub.n_vertices)
        if square_sub.level[v] == 0 and square_sub.coords[v] == (0, 0)
    )
    c0 = 1 << square_sub.level_index[v]
    c1 = BitVector(8, square_sub.complex.delta0.apply(c0))
    assert all(square_sub.region[w] == "S" for w in range(square_sub.n_vertices)
               if square_sub.level[w] == 1 and c1.get(square_sub.level_index[w]))
    res = clean_vector(square_sub, c1)
    assert res.c1_prime.is_zero()


def test_clean_full_sweep_audits(square_sub):
    keys = (
        "ineq_c1_prime",
        "ineq_dc1_prime",
        "ineq_c1_dprime",
        "ineq_dc1_dprime",
        "ineq_c1_t_expansion",
        "ineq_dc1_t_leakage",
        "ineq_dc1_dprime_term",
    )
    for bits in range(1 << 8):
        res = clean_vector(square_sub, BitVector(8, bits))
        assert res.tilde_c1 is not None
        for key in keys:
            assert res.ledger[key], (bits, key)


def test_clean_cocycles_stay_in_class(subdivision_corpus):
    for name, sub, _ in subdivision_corpus[:8]:
        img = image_echelon(sub.complex.delta0)
        for z in kernel_basis(sub.complex.delta1)[:10]:
            res = clean_vector(sub, z)
            assert img.contains(res.c1_dprime.bits ^ z.bits), name
            assert sub.base.delta1.apply(res.tilde_c1.bits) == 0, name


def test_dimension_preservation(subdivision_corpus):
    for name, sub, _ in subdivision_corpus:
        rep = verify_dimension_preservation(sub)
        assert rep.ok, (name, rep.failed)
        assert rep.k_base == rep.k_sub


def test_dimension_preservation_negative_control():
    sub = subdivide(toric_square_complex(2), 3)
    broken_d0 = SparseBitMatrix(
        sub.complex.delta0.rows,
        sub.complex.delta0.cols,
        list(sub.complex.delta0.entries)[:-1],
    )
    tampered = dataclasses.replace(
        sub, complex=dataclasses.replace(sub.complex, delta0=broken_d0)
    )
    tampered._lift_mats = {}
    tampered._s_local = {}
    rep = verify_dimension_preservation(tampered)
    assert not rep.ok


def test_directional_degrees():
    degs = directional_degrees(toric_square_complex(3))
    assert all(d == (2, 2) for d in degs.values())
    degs1 = directional_degrees(single_square())
    assert all(d == (1, 1) for d in degs1.values())
