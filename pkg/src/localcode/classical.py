"""Subdivision of classical codes along their Tanner graphs.

Every edge (bit, check) of the base bipartite graph becomes a path with
(l-1)/2 new bits alternating with (l-1)/2 new checks, ending at the base
check:

    bit -- k1 -- b1 -- k2 -- b2 -- ... -- k_t -- b_t -- check    (t = (l-1)/2)

A base bit together with the new bits and checks on its half-paths forms a
T component (a generalized repetition code whose boundary checks are the
base checks); base checks are the U region.  Lifting repeats a bit value
over its T component and places check values at the base checks, which
commutes with the parity maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .complexes import ClassicalCode, classical_params, classical_soundness, Guards, DEFAULT_GUARDS
from .f2 import BitVector, SparseBitMatrix, kernel_basis, popcount, rank


@dataclass
class ClassicalSubdivision:
    base: ClassicalCode
    l: int
    code: ClassicalCode
    edge_list: list[tuple[int, int]]          # base (bit, check) pairs, sorted
    t_components: list[list[int]]             # per base bit: its subdivided bit ids
    new_check_edge: list[int]                 # per new check: owning edge index
    base_check_row: list[int]                 # per base check: its row in the new code

    @property
    def n_new_bits_per_edge(self) -> int:
        return (self.l - 1) // 2

    def lift_bits_matrix(self) -> SparseBitMatrix:
        ents = []
        for bit, members in enumerate(self.t_components):
            for m in members:
                ents.append((m, bit))
        return SparseBitMatrix(self.code.n, self.base.n, ents)

    def lift_checks_matrix(self) -> SparseBitMatrix:
        ents = [(row, c) for c, row in enumerate(self.base_check_row)]
        return SparseBitMatrix(self.code.m, self.base.m, ents)


def subdivide_classical(code: ClassicalCode, l: int) -> ClassicalSubdivision:
    """Subdivide every Tanner edge into an l-bit path (counting both arms)."""
    if l % 2 == 0 or l < 3:
        raise ValueError("subdivision parameter must be odd and at least 3")
    n, m = code.n, code.m
    t = (l - 1) // 2
    edge_list = sorted((c, r) for r, c in code.h.entries)

    def new_bit(ei: int, s: int) -> int:
        return n + ei * t + (s - 1)

    def new_check(ei: int, s: int) -> int:
        return ei * t + (s - 1)

    n_new_checks = len(edge_list) * t
    ents = []
    for ei, (bit, check) in enumerate(edge_list):
        prev = bit
        for s in range(1, t + 1):
            ents.append((new_check(ei, s), prev))
            ents.append((new_check(ei, s), new_bit(ei, s)))
            prev = new_bit(ei, s)
        ents.append((n_new_checks + check, prev))
    h_sub = SparseBitMatrix(n_new_checks + m, n + len(edge_list) * t, ents)

    t_components: list[list[int]] = [[bit] for bit in range(n)]
    for ei, (bit, _) in enumerate(edge_list):
        t_components[bit].extend(new_bit(ei, s) for s in range(1, t + 1))
    return ClassicalSubdivision(
        base=code,
        l=l,
        code=ClassicalCode(h_sub),
        edge_list=edge_list,
        t_components=t_components,
        new_check_edge=[ei for ei in range(len(edge_list)) for _ in range(t)],
        base_check_row=[n_new_checks + c for c in range(m)],
    )


def lift_classical(sub: ClassicalSubdivision, c: BitVector) -> BitVector:
    if c.length != sub.base.n:
        raise ValueError(f"expected length {sub.base.n}")
    return sub.lift_bits_matrix().apply_vec(c)


def project_classical(sub: ClassicalSubdivision, c: BitVector) -> Optional[BitVector]:
    """Inverse of the bit lift: defined when c is constant on every component."""
    if c.length != sub.code.n:
        raise ValueError(f"expected length {sub.code.n}")
    out = 0
    for bit, members in enumerate(sub.t_components):
        vals = {c.get(v) for v in members}
        if len(vals) != 1:
            return None
        if vals.pop():
            out |= 1 << bit
    return BitVector(sub.base.n, out)


def verify_classical_chain_map(sub: ClassicalSubdivision) -> bool:
    """H_sub F_bits = F_checks H as an exact matrix identity."""
    left = sub.code.h.matmul(sub.lift_bits_matrix())
    right = sub.lift_checks_matrix().matmul(sub.base.h)
    return left == right


@dataclass
class ClassicalLemmaReport:
    ok: bool
    k_base: int
    k_sub: int
    d_base: int
    d_sub: int
    distance_ok: bool
    soundness_base: Fraction
    soundness_sub: Fraction
    soundness_bound: Fraction
    soundness_ok: bool


def verify_classical_lemma(
    sub: ClassicalSubdivision,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> ClassicalLemmaReport:
    """Dimension is preserved, distance grows by l, soundness obeys the bound.

    The soundness bound is evaluated with the exact measured soundness of
    the base code and the graph degree:

        s_sub >= (n_sub / m_sub) / ( l/2 + (n/m) (1/s_base) (dmax/2) l )

    using the repetition-code expansion constants 2/l and 1.
    """
    base, code, l = sub.base, sub.code, sub.l
    k_base = base.n - rank(base.h)
    k_sub = code.n - rank(code.h)

    def exact_distance(c: ClassicalCode) -> int:
        kern = kernel_basis(c.h)
        from .f2 import span_iter

        best = c.n + 1
        for v in span_iter([k.bits for k in kern]):
            if v:
                best = min(best, popcount(v))
        return best

    d_base = exact_distance(base)
    d_sub = exact_distance(code)
    distance_ok = d_sub >= l * d_base

    s_base = classical_soundness(base, force=force, guards=guards)
    s_sub = classical_soundness(code, force=force, guards=guards)
    deg: dict[int, int] = {}
    for r, c in base.h.entries:
        deg[("r", r)] = deg.get(("r", r), 0) + 1
        deg[("c", c)] = deg.get(("c", c), 0) + 1
    dmax = max(deg.values())
    beta_rep = Fraction(2, l)
    eta_rep = Fraction(1)
    bound = Fraction(code.n, code.m) / (
        1 / beta_rep + (1 / eta_rep) * Fraction(base.n, base.m) * (1 / s_base) * Fraction(dmax, 2) * l
    )
    soundness_ok = s_sub >= bound
    return ClassicalLemmaReport(
        ok=(k_base == k_sub) and distance_ok and soundness_ok,
        k_base=k_base,
        k_sub=k_sub,
        d_base=d_base,
        d_sub=d_sub,
        distance_ok=distance_ok,
        soundness_base=s_base,
        soundness_sub=s_sub,
        soundness_bound=bound,
        soundness_ok=soundness_ok,
    )


@dataclass
class ClassicalCleaningResult:
    c0_prime: BitVector
    c0_t: BitVector
    tilde_c0: BitVector
    ledger: dict


def classical_clean(sub: ClassicalSubdivision, c0: BitVector) -> ClassicalCleaningResult:
    """Majority vote per T component, then read off the base bit vector.

    Realizes the repetition-code expansion witness on every component; the
    ledger audits the weight and leakage inequalities the witness satisfies.
    """
    code = sub.code
    if c0.length != code.n:
        raise ValueError(f"expected length {code.n}")
    l = sub.l
    beta_rep = Fraction(2, l)
    eta_rep = Fraction(1)

    flips = 0
    for members in sub.t_components:
        count = sum(c0.get(v) for v in members)
        majority = 1 if 2 * count > len(members) else 0
        for v in members:
            if c0.get(v) != majority:
                flips |= 1 << v
    c0_t = BitVector(code.n, flips)
    c0_prime = c0 ^ c0_t
    tilde = project_classical(sub, c0_prime)
    assert tilde is not None

    synd = code.h.apply(c0.bits)
    synd_t = code.h.apply(c0_t.bits)
    synd_prime = code.h.apply(c0_prime.bits)
    n_new_checks = code.m - sub.base.m
    t_mask = (1 << n_new_checks) - 1

    checks_c0_t_region = popcount(synd & t_mask)
    ledger = {
        "weight_c0": c0.weight(),
        "weight_c0_t": c0_t.weight(),
        "weight_c0_prime": c0_prime.weight(),
        "checks_c0": popcount(synd),
        "checks_c0_t_region": checks_c0_t_region,
        "checks_c0_prime": popcount(synd_prime),
        # corollary audits, summed over components
        "ineq_b_weight": c0_t.weight() <= c0.weight(),
        "ineq_c_expansion": beta_rep * c0_t.weight() <= checks_c0_t_region,
        "ineq_d_leakage": eta_rep * popcount(synd_t >> n_new_checks) <= checks_c0_t_region,
        "ineq_dc0_prime": eta_rep * popcount(synd_prime) <= popcount(synd),
    }
    return ClassicalCleaningResult(c0_prime=c0_prime, c0_t=c0_t, tilde_c0=tilde, ledger=ledger)
