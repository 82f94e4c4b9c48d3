import pytest

from localcode.builders import repetition_code, repetition_matrix
from localcode.classical import (
    classical_clean,
    lift_classical,
    project_classical,
    subdivide_classical,
    verify_classical_chain_map,
    verify_classical_lemma,
)
from localcode.complexes import ClassicalCode, Guards
from localcode.f2 import BitVector, SparseBitMatrix, rank


def pair_code():
    """Two bits, two identical-support checks through distinct rows."""
    return ClassicalCode(SparseBitMatrix(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]))


def tadpole_code():
    """Three bits with checks {0,1,2}, {0,1}, {2}; every bit in two checks."""
    return ClassicalCode(
        SparseBitMatrix(3, 3, [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 2)])
    )


def even_quad_code():
    """Four bits with checks {0,1,2,3}, {0,1}, {2,3}."""
    return ClassicalCode(
        SparseBitMatrix(3, 4, [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (2, 2), (2, 3)])
    )


LEMMA_BASES = [
    ("pair", pair_code()),
    ("cyclic3", repetition_code(3, cyclic=True)),
    ("cyclic4", repetition_code(4, cyclic=True)),
    ("tadpole", tadpole_code()),
    ("even_quad", even_quad_code()),
]


def test_subdivision_counts():
    base = pair_code()  # 2 bits x 2 checks, fully connected: 4 Tanner edges
    sub = subdivide_classical(base, 3)
    assert sub.code.n == 2 + 4 and sub.code.m == 2 + 4
    sub5 = subdivide_classical(base, 5)
    assert sub5.code.n == 2 + 4 * 2 and sub5.code.m == 2 + 4 * 2


def test_even_l_rejected():
    with pytest.raises(ValueError):
        subdivide_classical(pair_code(), 4)


def test_chain_map_identity():
    for _, base in LEMMA_BASES:
        for l in (3, 5):
            assert verify_classical_chain_map(subdivide_classical(base, l))


def test_component_sizes():
    base = repetition_code(3, cyclic=True)
    for l in (3, 5):
        sub = subdivide_classical(base, l)
        for members in sub.t_components:
            assert len(members) == 1 + 2 * (l - 1) // 2  # degree-2 bits
            assert len(members) >= l


def test_lift_project_roundtrip():
    sub = subdivide_classical(repetition_code(3, cyclic=True), 5)
    for bits in range(1 << 3):
        c = BitVector(3, bits)
        assert project_classical(sub, lift_classical(sub, c)) == c


def test_codeword_bijection():
    for _, base in LEMMA_BASES:
        sub = subdivide_classical(base, 3)
        k_base = base.n - rank(base.h)
        k_sub = sub.code.n - rank(sub.code.h)
        assert k_base == k_sub
        # lifted codewords are codewords, with weight at least l-fold
        from localcode.f2 import kernel_basis

        for z in kernel_basis(base.h):
            up = lift_classical(sub, z)
            assert sub.code.h.apply(up.bits) == 0
            assert up.weight() >= sub.l * z.weight()


def test_lemma_on_corpus():
    for name, base in LEMMA_BASES:
        for l in (3, 5):
            rep = verify_classical_lemma(subdivide_classical(base, l))
            assert rep.ok, (name, l, rep)
            assert rep.d_sub >= l * rep.d_base


def test_lemma_formula_monotone_in_soundness():
    # with perfect base soundness the bound approaches (n'/m') * beta
    sub = subdivide_classical(repetition_code(3, cyclic=True), 3)
    rep = verify_classical_lemma(sub)
    from fractions import Fraction

    limit = Fraction(sub.code.n, sub.code.m) * Fraction(2, sub.l)
    assert rep.soundness_bound < limit


def test_clean_consistent_vector_unchanged():
    sub = subdivide_classical(repetition_code(3, cyclic=True), 3)
    c = lift_classical(sub, BitVector.from_list([1, 0, 1]))
    res = classical_clean(sub, c)
    assert res.c0_prime == c and res.c0_t.is_zero()
    assert res.tilde_c0 == BitVector.from_list([1, 0, 1])


def test_clean_single_flip():
    base = ClassicalCode(repetition_matrix(4, cyclic=True))
    sub = subdivide_classical(base, 5)
    comp = sub.t_components[0]
    assert len(comp) == 5
    c = BitVector.from_support(sub.code.n, [comp[1]])
    res = classical_clean(sub, c)
    assert res.c0_prime.is_zero()
    assert res.c0_t.weight() == 1


def test_clean_audits_exhaustive_tiny():
    sub = subdivide_classical(pair_code(), 3)
    for bits in range(1 << sub.code.n):
        res = classical_clean(sub, BitVector(sub.code.n, bits))
        for key in ("ineq_b_weight", "ineq_c_expansion", "ineq_d_leakage", "ineq_dc0_prime"):
            assert res.ledger[key], (bits, key)


def test_clean_audits_random_cyclic4():
    import random

    sub = subdivide_classical(repetition_code(4, cyclic=True), 5)
    rng = random.Random(12)
    for _ in range(300):
        c = BitVector(sub.code.n, rng.randrange(1 << sub.code.n))
        res = classical_clean(sub, c)
        for key in ("ineq_b_weight", "ineq_c_expansion", "ineq_d_leakage", "ineq_dc0_prime"):
            assert res.ledger[key]
