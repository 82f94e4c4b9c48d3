"""Three-term chain complexes, CSS/classical code oracles, and size-bound checks.

A 3-term complex  F2^X(0) --delta0--> F2^X(1) --delta1--> F2^X(2)  with
delta1 @ delta0 = 0 is the same datum as a CSS code with qubits on X(1),
Z-checks delta0^T and X-checks delta1.  All oracles here are exact and
exhaustive, guarded by size limits; nothing is estimated.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .f2 import (
    BitVector,
    Echelon,
    GuardExceeded,
    SparseBitMatrix,
    image_echelon,
    kernel_basis,
    min_weight_nontrivial,
    popcount,
    rank,
    span_iter,
)


@dataclass(frozen=True)
class Guards:
    """Size ceilings for the exhaustive oracles.

    These are configuration constants, not tolerances: exceeding one is a
    loud failure unless force=True is passed to the oracle.
    """

    distance_n: int = 28        # |X(1)| and coset-search dimension for distances
    barrier_n: int = 22         # 2**n reachability search for energy barriers
    soundness_n: int = 20       # full 2**n scan for soundness
    small_set_n: int = 22       # outer/inner enumerations for small-set expansion


DEFAULT_GUARDS = Guards()


def _guard(value: int, limit: int, what: str, force: bool) -> None:
    if value > limit and not force:
        raise GuardExceeded(f"{what}: size {value} exceeds guard {limit}; pass force=True to override")


@dataclass(frozen=True)
class ChainComplex3:
    """delta0: |X(1)| x |X(0)|, delta1: |X(2)| x |X(1)|, with delta1 delta0 = 0."""

    delta0: SparseBitMatrix
    delta1: SparseBitMatrix
    labels: Optional[dict[int, list[str]]] = None

    def __post_init__(self) -> None:
        if self.delta1.cols != self.delta0.rows:
            raise ValueError(
                f"chain mismatch: delta1 has {self.delta1.cols} cols, delta0 has {self.delta0.rows} rows"
            )

    @property
    def sizes(self) -> tuple[int, int, int]:
        return (self.delta0.cols, self.delta0.rows, self.delta1.rows)

    def transpose(self) -> "ChainComplex3":
        """Reverse the chain direction: (d0, d1) -> (d1^T, d0^T)."""
        return ChainComplex3(self.delta1.transpose(), self.delta0.transpose())


@dataclass(frozen=True)
class ClassicalCode:
    """Classical linear code given by a parity-check matrix H (m x n)."""

    h: SparseBitMatrix

    def __post_init__(self) -> None:
        if self.h.cols < 1:
            raise ValueError("code length must be at least 1")

    @property
    def n(self) -> int:
        return self.h.cols

    @property
    def m(self) -> int:
        return self.h.rows


@dataclass
class CodeReport:
    """Exact measured parameters; every populated field carries a method tag."""

    n: int
    k: int
    d: Optional[int] = None
    d_x: Optional[int] = None
    d_z: Optional[int] = None
    energy_barrier: Optional[int] = None
    e_x: Optional[int] = None
    e_z: Optional[int] = None
    soundness: Optional[Fraction] = None
    methods: dict[str, str] = field(default_factory=dict)


@dataclass
class Diagnostics:
    ok: bool
    witness: Optional[tuple[int, int]]
    max_row_degree: dict[str, int]
    max_col_degree: dict[str, int]

    @property
    def max_degree(self) -> int:
        return max(
            max(self.max_row_degree.values(), default=0),
            max(self.max_col_degree.values(), default=0),
        )


def validate(x: ChainComplex3) -> Diagnostics:
    """Check delta1 delta0 = 0 and report degree bounds (LDPC audit).

    The witness is the first (row, col) of the product with a nonzero entry.
    """
    prod = x.delta1.matmul(x.delta0)
    witness = min(prod.entries) if prod.entries else None
    return Diagnostics(
        ok=witness is None,
        witness=witness,
        max_row_degree={"delta0": x.delta0.max_row_degree(), "delta1": x.delta1.max_row_degree()},
        max_col_degree={"delta0": x.delta0.max_col_degree(), "delta1": x.delta1.max_col_degree()},
    )


def css_dimension(x: ChainComplex3) -> int:
    """Number of logical qubits, computed two independent ways and compared."""
    n1 = x.sizes[1]
    r0 = rank(x.delta0)
    r1 = rank(x.delta1)
    k = n1 - r0 - r1
    k_alt = len(kernel_basis(x.delta1)) - r0
    assert k == k_alt, "rank bookkeeping disagrees"
    return k


def css_distance(
    x: ChainComplex3,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> tuple[int, int]:
    """Exact (d_x, d_z) by exhaustive coset search over the logical classes.

    d_x minimizes over ker(delta1) minus im(delta0); d_z is the same
    computation on the transposed complex.
    """
    if css_dimension(x) < 1:
        raise ValueError("code has no logical qubits; distance undefined")
    _guard(x.sizes[1], guards.distance_n, "css_distance", force)

    def one_side(c: ChainComplex3) -> int:
        z = kernel_basis(c.delta1)
        b_ech = image_echelon(c.delta0)
        b = [BitVector(c.sizes[1], row) for row, _ in b_ech.pivot_rows.values()]
        return min_weight_nontrivial(z, b, force=force, max_dim=guards.distance_n)

    return one_side(x), one_side(x.transpose())


def _reachable_at_energy(
    h: SparseBitMatrix,
    eps: int,
    *,
    is_target,
) -> bool:
    """BFS over {x : |Hx| <= eps} from 0; True when some target state is reached."""
    n = h.cols
    cols = h.col_masks()
    visited = bytearray(1 << n)
    visited[0] = 1
    frontier = [(0, 0)]  # (state, syndrome)
    if is_target(0, 0):
        return True
    while frontier:
        nxt = []
        for state, synd in frontier:
            for i in range(n):
                s2 = state ^ (1 << i)
                if visited[s2]:
                    continue
                y2 = synd ^ cols[i]
                if popcount(y2) > eps:
                    continue
                visited[s2] = 1
                if is_target(s2, y2):
                    return True
                nxt.append((s2, y2))
        frontier = nxt
    return False


def _min_peak_energy(
    h: SparseBitMatrix,
    *,
    is_target,
    force: bool,
    guards: Guards,
) -> int:
    """Minimum over single-bit-flip walks from 0 to a target of the peak |Hx|.

    Binary search on the energy threshold; reachability is monotone in the
    threshold, so the least feasible threshold is the barrier.
    """
    _guard(h.cols, guards.barrier_n, "energy_barrier", force)
    lo, hi = 0, h.rows
    if not _reachable_at_energy(h, hi, is_target=is_target):
        raise ValueError("no nontrivial target reachable at any energy")
    while lo < hi:
        mid = (lo + hi) // 2
        if _reachable_at_energy(h, mid, is_target=is_target):
            hi = mid
        else:
            lo = mid + 1
    return lo


def energy_barrier(
    x: ChainComplex3,
    side: str,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> int:
    """Exact energy barrier for creating a nontrivial logical on one side.

    side "x": walks in F2^X(1) with energy |delta1 c|, targets
    ker(delta1) minus im(delta0).  side "z" is side "x" of the transposed
    complex.  The reachability formulation is insensitive to whether walks
    may revisit states.
    """
    if side == "z":
        return energy_barrier(x.transpose(), "x", force=force, guards=guards)
    if side != "x":
        raise ValueError(f"side must be 'x' or 'z', got {side!r}")
    if css_dimension(x) < 1:
        raise ValueError("code has no logical qubits; energy barrier undefined")

    stab = image_echelon(x.delta0)

    def is_target(state: int, synd: int) -> bool:
        # Nontrivial logical: zero syndrome but not a stabilizer (element of
        # im delta0).  Membership is tested against the image echelon rather
        # than an enumerated list.
        return state != 0 and synd == 0 and not stab.contains(state)

    return _min_peak_energy(x.delta1, is_target=is_target, force=force, guards=guards)


def classical_params(
    code: ClassicalCode,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> CodeReport:
    """Exact n, k, d, and energy barrier of a classical code."""
    n = code.n
    r = rank(code.h)
    k = n - r
    report = CodeReport(n=n, k=k, methods={"k": "n - rank(H)"})
    if k == 0:
        raise ValueError("code has dimension 0; d and energy barrier undefined")

    kern = kernel_basis(code.h)
    if len(kern) > guards.distance_n and not force:
        raise GuardExceeded(f"distance enumeration over 2^{len(kern)} exceeds guard")
    basis_bits = [v.bits for v in kern]
    best = n + 1
    for c in span_iter(basis_bits):
        if c:
            w = popcount(c)
            if w < best:
                best = w
    report.d = best
    report.methods["d"] = "exhaustive codeword enumeration"

    def is_target(state: int, synd: int) -> bool:
        return state != 0 and synd == 0

    report.energy_barrier = _min_peak_energy(
        code.h, is_target=is_target, force=force, guards=guards
    )
    report.methods["energy_barrier"] = "threshold binary search + bounded-energy BFS"
    return report


def classical_soundness(
    code: ClassicalCode,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> Fraction:
    """Largest s with (1/m)|Hx| >= (s/n) dist(x, C) for all x, as an exact rational.

    Computed by a full 2**n scan: s = min over x with dist(x, C) > 0 of
    n |Hx| / (m dist(x, C)).
    """
    n, m = code.n, code.m
    if code.h.is_zero():
        raise ValueError("H = 0: every vector is a codeword, soundness is vacuous")
    _guard(n, guards.soundness_n, "classical_soundness", force)
    kern = kernel_basis(code.h)
    if len(kern) == n:
        raise ValueError("code is all of F2^n, soundness is vacuous")
    codewords = list(span_iter([v.bits for v in kern]))
    cols = code.h.col_masks()

    best: Optional[Fraction] = None
    state = 0
    synd = 0
    for i in range(1 << n):
        if i:
            bit = (i & -i).bit_length() - 1
            state ^= 1 << bit
            synd ^= cols[bit]
        dist = min(popcount(state ^ c) for c in codewords)
        if dist == 0:
            continue
        s = Fraction(n * popcount(synd), m * dist)
        if best is None or s < best:
            best = s
    assert best is not None
    return best


@dataclass
class ExpansionResult:
    passed: bool
    witness: Optional[BitVector]
    # Maximal feasible beta at the requested (alpha, gamma); None when some
    # small vector admits no witness at all (beta* = 0 with a witness above).
    max_beta: Optional[Fraction]


def check_small_set_expansion(
    x: ChainComplex3,
    alpha: Fraction,
    beta: Fraction,
    gamma: Fraction,
    side: str,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
) -> ExpansionResult:
    """Exhaustive small-set (co)boundary expansion check.

    Coboundary side: every c1 with |c1| <= alpha |X(1)| must admit c0 with
    beta |c1 + delta0 c0| <= |delta1 c1| and gamma |c0| <= |c1|.  Boundary
    side is the same test on the transposed complex.  Returns the first
    violating c1 (if any) and the maximal feasible beta at (alpha, gamma).
    """
    if side == "boundary":
        return check_small_set_expansion(
            x.transpose(), alpha, beta, gamma, "coboundary", force=force, guards=guards
        )
    if side != "coboundary":
        raise ValueError(f"side must be 'boundary' or 'coboundary', got {side!r}")

    n0, n1, _ = x.sizes
    _guard(n1, guards.small_set_n, "check_small_set_expansion (outer)", force)
    _guard(n0, guards.small_set_n, "check_small_set_expansion (inner)", force)

    d0cols = x.delta0.col_masks()
    d1cols = x.delta1.col_masks()
    max_weight = int(alpha * n1)  # |c1| <= alpha*n1

    witness: Optional[BitVector] = None
    max_beta: Optional[Fraction] = None

    c1 = 0
    s1 = 0
    for i in range(1 << n1):
        if i:
            bit = (i & -i).bit_length() - 1
            c1 ^= 1 << bit
            s1 ^= d1cols[bit]
        w1 = popcount(c1)
        if w1 > max_weight:
            continue
        checks = popcount(s1)
        # Least achievable |c1 + delta0 c0| over c0 with gamma |c0| <= |c1|.
        best_res = w1  # c0 = 0 is always admissible
        cur = c1
        c0 = 0
        for j in range(1, 1 << n0):
            bit = (j & -j).bit_length() - 1
            c0 ^= 1 << bit
            cur ^= d0cols[bit]
            if gamma * popcount(c0) <= w1:
                r = popcount(cur)
                if r < best_res:
                    best_res = r
                    if r == 0:
                        break
        if best_res == 0:
            continue  # c1 cleanable to zero: no constraint on beta
        if checks == 0:
            # A small non-cleanable vector with zero violated checks defeats
            # every positive beta.
            if witness is None:
                witness = BitVector(n1, c1)
            max_beta = Fraction(0)
            break
        bound = Fraction(checks, best_res)
        if max_beta is None or bound < max_beta:
            max_beta = bound
        if beta * best_res > checks and witness is None:
            witness = BitVector(n1, c1)
    passed = witness is None
    return ExpansionResult(passed=passed, witness=witness, max_beta=max_beta)


@dataclass(frozen=True)
class BptBounds:
    """Upper bounds for codes living in [L]^D with checks inside r^D boxes."""

    kind: str
    l: int
    d_dim: int
    r: int
    d_bound: int
    e_bound: int

    def k_bound_holds(self, k: int, d: int) -> bool:
        """Dimension-distance tradeoff, compared with exact integer arithmetic."""
        if self.kind == "quantum":
            # k <= 2 D r^2 L^D / (d / (2Dr))^(2/(D-1))
            lhs = k ** (self.d_dim - 1) * d * d
            rhs = (2 * self.d_dim * self.r**2 * self.l**self.d_dim) ** (self.d_dim - 1) * (
                2 * self.d_dim * self.r
            ) ** 2
            return lhs <= rhs
        # classical: k <= D r L^D / d^(1/D)
        lhs = k**self.d_dim * d
        rhs = (self.d_dim * self.r * self.l**self.d_dim) ** self.d_dim
        return lhs <= rhs


def bpt_bounds(l: int, d_dim: int, r: int, kind: str) -> BptBounds:
    """Distance and energy-barrier upper bounds for geometrically local codes."""
    if kind == "quantum":
        if l < 2 * (r - 1) ** 2:
            raise ValueError(f"quantum bounds require L >= 2(r-1)^2 = {2 * (r - 1) ** 2}, got L={l}")
        return BptBounds(
            kind=kind,
            l=l,
            d_dim=d_dim,
            r=r,
            d_bound=r * l ** (d_dim - 1),
            e_bound=6 * r**2 * l ** (d_dim - 2),
        )
    if kind == "classical":
        return BptBounds(
            kind=kind,
            l=l,
            d_dim=d_dim,
            r=r,
            d_bound=l**d_dim,
            e_bound=r * l ** (d_dim - 1),
        )
    raise ValueError(f"kind must be 'quantum' or 'classical', got {kind!r}")


def surface_code(l: int) -> ChainComplex3:
    """Planar surface code on an (l+1) x (l+1) grid of coordinates, l even.

    Qubits sit at coordinates with i, j both even or both odd; the two
    mixed-parity classes carry the checks.  Parameters are
    [[ (l/2+1)^2 + (l/2)^2, 1, l/2+1 ]].
    """
    if l % 2 != 0 or l < 2:
        raise ValueError("surface code layout needs even l >= 2")
    qubits: dict[tuple[int, int], int] = {}
    checks0: dict[tuple[int, int], int] = {}
    checks2: dict[tuple[int, int], int] = {}
    for i in range(l + 1):
        for j in range(l + 1):
            pi, pj = i % 2, j % 2
            if pi == pj:
                qubits[(i, j)] = len(qubits)
            elif pi == 1:
                checks0[(i, j)] = len(checks0)
            else:
                checks2[(i, j)] = len(checks2)
    ents0 = []
    ents2 = []
    for (i, j), q in qubits.items():
        for ni, nj in ((i + 1, j), (i - 1, j), (i, j + 1), (i, j - 1)):
            if (ni, nj) in checks0:
                ents0.append((q, checks0[(ni, nj)]))
            elif (ni, nj) in checks2:
                ents2.append((checks2[(ni, nj)], q))
    d0 = SparseBitMatrix(len(qubits), len(checks0), ents0)
    d1 = SparseBitMatrix(len(checks2), len(qubits), ents2)
    return ChainComplex3(d0, d1)


def measure(
    x: ChainComplex3,
    *,
    force: bool = False,
    guards: Guards = DEFAULT_GUARDS,
    with_barrier: bool = True,
) -> CodeReport:
    """Full CSS report: n, k, and where the guards allow, exact d and barriers."""
    n = x.sizes[1]
    k = css_dimension(x)
    report = CodeReport(n=n, k=k, methods={"k": "n - rank(delta0) - rank(delta1)"})
    if k < 1:
        report.methods["d"] = "skipped: k = 0"
        return report
    try:
        dx, dz = css_distance(x, force=force, guards=guards)
        report.d_x, report.d_z = dx, dz
        report.d = min(dx, dz)
        report.methods["d"] = "exhaustive coset search"
    except GuardExceeded as exc:
        report.methods["d"] = f"skipped: {exc}"
    if with_barrier:
        try:
            ex = energy_barrier(x, "x", force=force, guards=guards)
            ez = energy_barrier(x, "z", force=force, guards=guards)
            report.e_x, report.e_z = ex, ez
            report.energy_barrier = min(ex, ez)
            report.methods["energy_barrier"] = "threshold binary search + bounded-energy BFS"
        except GuardExceeded as exc:
            report.methods["energy_barrier"] = f"skipped: {exc}"
    return report


def min_peak_dijkstra(h: SparseBitMatrix, targets: set[int]) -> int:
    """Independent oracle: min-max walk energy by Dijkstra over the full cube.

    Exponential in n; used to cross-check the threshold+BFS barrier oracle
    on small instances.
    """
    n = h.cols
    cols = h.col_masks()
    best = {0: 0}
    heap = [(0, 0)]
    while heap:
        peak, state = heapq.heappop(heap)
        if state in targets:
            return peak
        if best.get(state, 1 << 60) < peak:
            continue
        synd = h.apply(state)
        for i in range(n):
            s2 = state ^ (1 << i)
            e2 = popcount(synd ^ cols[i])
            p2 = max(peak, e2)
            if p2 < best.get(s2, 1 << 60):
                best[s2] = p2
                heapq.heappush(heap, (p2, s2))
    raise ValueError("no target reachable")
