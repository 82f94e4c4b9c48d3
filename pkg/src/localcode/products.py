"""Balanced products of group-acted bipartite graphs and codes.

The balanced product quotients a Cartesian/tensor product by a diagonal
group action.  Groups are given extensionally as multiplication tables,
actions as explicit permutations, and actions must be free on vertices:
the size bookkeeping and the Cayley correspondence both presume free
orbits.  Everything is deterministic; orbit representatives are the
lexicographically smallest pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .complexes import ChainComplex3, ClassicalCode, validate
from .f2 import SparseBitMatrix


@dataclass(frozen=True)
class GroupTable:
    """Finite group as an order x order multiplication table of element indices."""

    mul: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def identity(self) -> int:
        for e in range(self.order):
            if all(self.mul[e][g] == g for g in range(self.order)):
                return e
        raise ValueError("no identity element")

    def inverse(self, g: int) -> int:
        e = self.identity
        for h in range(self.order):
            if self.mul[g][h] == e:
                return h
        raise ValueError(f"no inverse for element {g}")

    def validate(self) -> None:
        """Full group-law check; exhaustive associativity is fine up to order 256."""
        n = self.order
        if n == 0 or n > 256:
            raise ValueError("group order must be in 1..256")
        m = np.array(self.mul, dtype=np.int16)
        if m.shape != (n, n) or m.min() < 0 or m.max() >= n:
            raise ValueError("malformed multiplication table")
        a = np.arange(n)
        left = m[m[a[:, None, None], a[None, :, None]], a[None, None, :]]
        right = m[a[:, None, None], m[a[None, :, None], a[None, None, :]]]
        if not np.array_equal(left, right):
            raise ValueError("multiplication table is not associative")
        self.identity  # raises when absent
        for g in range(n):
            self.inverse(g)


def cyclic_group(n: int) -> GroupTable:
    return GroupTable(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n; element i + n*j is rotation^i * reflection^j."""

    def mul(x: int, y: int) -> int:
        i1, j1 = x % n, x // n
        i2, j2 = y % n, y // n
        # reflection conjugates rotation: s r^i = r^-i s
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        j = j1 ^ j2
        return i + n * j

    order = 2 * n
    return GroupTable(tuple(tuple(mul(x, y) for y in range(order)) for x in range(order)))


def trivial_group() -> GroupTable:
    return cyclic_group(1)


def direct_product_group(g1: GroupTable, g2: GroupTable) -> GroupTable:
    n1, n2 = g1.order, g2.order

    def mul(x: int, y: int) -> int:
        a1, a2 = x // n2, x % n2
        b1, b2 = y // n2, y % n2
        return g1.mul[a1][b1] * n2 + g2.mul[a2][b2]

    order = n1 * n2
    return GroupTable(tuple(tuple(mul(x, y) for y in range(order)) for x in range(order)))


@dataclass(frozen=True)
class ActedBipartiteGraph:
    """Bipartite graph with a G-action permuting each side and preserving edges.

    When read as a code, the left side indexes bits, the right side checks,
    and the edge set is the support of the parity-check matrix (simple
    graphs only, so entries are 0/1).
    """

    group: GroupTable
    n_left: int
    n_right: int
    edges: frozenset[tuple[int, int]]
    action_left: tuple[tuple[int, ...], ...]   # one permutation of the left side per group element
    action_right: tuple[tuple[int, ...], ...]

    def validate(self) -> None:
        g = self.group
        for l, r in self.edges:
            if not (0 <= l < self.n_left and 0 <= r < self.n_right):
                raise ValueError(f"edge ({l},{r}) out of range")
        if len(self.action_left) != g.order or len(self.action_right) != g.order:
            raise ValueError("need one permutation per group element on each side")
        for perms, n in ((self.action_left, self.n_left), (self.action_right, self.n_right)):
            for p in perms:
                if sorted(p) != list(range(n)):
                    raise ValueError("action entry is not a permutation")
        # homomorphism: perm(g) o perm(h) = perm(gh)
        for a in range(g.order):
            for b in range(g.order):
                ab = g.mul[a][b]
                for perms in (self.action_left, self.action_right):
                    pa, pb, pab = perms[a], perms[b], perms[ab]
                    if any(pa[pb[v]] != pab[v] for v in range(len(pab))):
                        raise ValueError(f"action is not a homomorphism at ({a},{b})")
        e = g.identity
        for gi in range(g.order):
            if gi == e:
                continue
            if any(self.action_left[gi][v] == v for v in range(self.n_left)) or any(
                self.action_right[gi][v] == v for v in range(self.n_right)
            ):
                raise ValueError(f"action is not free: element {gi} fixes a vertex")
        for l, r in self.edges:
            for gi in range(g.order):
                if (self.action_left[gi][l], self.action_right[gi][r]) not in self.edges:
                    raise ValueError(f"edges not invariant under element {gi}")

    def swap(self) -> "ActedBipartiteGraph":
        """Exchange the two sides (transposes the carried parity matrix)."""
        return ActedBipartiteGraph(
            group=self.group,
            n_left=self.n_right,
            n_right=self.n_left,
            edges=frozenset((r, l) for l, r in self.edges),
            action_left=self.action_right,
            action_right=self.action_left,
        )

    def h_matrix(self) -> SparseBitMatrix:
        """Parity-check matrix, rows = right side (checks), cols = left side (bits)."""
        return SparseBitMatrix(self.n_right, self.n_left, ((r, l) for l, r in self.edges))

    def degrees(self) -> tuple[list[int], list[int]]:
        dl = [0] * self.n_left
        dr = [0] * self.n_right
        for l, r in self.edges:
            dl[l] += 1
            dr[r] += 1
        return dl, dr


def plain_graph(n_left: int, n_right: int, edges: Iterable[tuple[int, int]]) -> ActedBipartiteGraph:
    """Bipartite graph acted on trivially (group of order 1)."""
    return ActedBipartiteGraph(
        group=trivial_group(),
        n_left=n_left,
        n_right=n_right,
        edges=frozenset(edges),
        action_left=(tuple(range(n_left)),),
        action_right=(tuple(range(n_right)),),
    )


def code_graph(h: SparseBitMatrix) -> ActedBipartiteGraph:
    """Tanner graph of a parity-check matrix with the trivial action."""
    return plain_graph(h.cols, h.rows, ((c, r) for r, c in h.entries))


CLASSES = ("00", "10", "01", "11")


@dataclass(frozen=True)
class SquareComplex:
    """Four-partite square complex: vertices, edges, and square faces.

    Vertices are global indices; `cls` maps each vertex to its class 00, 10,
    01, or 11.  Faces are (v00, v10, v01, v11) tuples; edges only connect
    classes differing in exactly one subscript.
    """

    cls: tuple[str, ...]
    edges: frozenset[tuple[int, int]]
    faces: frozenset[tuple[int, int, int, int]]
    labels: Optional[tuple[str, ...]] = None

    @property
    def n_vertices(self) -> int:
        return len(self.cls)

    def class_members(self, c: str) -> list[int]:
        return [v for v in range(len(self.cls)) if self.cls[v] == c]

    def validate(self) -> None:
        ok_pairs = {
            frozenset(("00", "10")),
            frozenset(("00", "01")),
            frozenset(("10", "11")),
            frozenset(("01", "11")),
        }
        for u, v in self.edges:
            if frozenset((self.cls[u], self.cls[v])) not in ok_pairs:
                raise ValueError(f"edge ({u},{v}) joins classes {self.cls[u]},{self.cls[v]}")
        for f in self.faces:
            v00, v10, v01, v11 = f
            if (self.cls[v00], self.cls[v10], self.cls[v01], self.cls[v11]) != CLASSES:
                raise ValueError(f"face {f} has wrong class pattern")
            for a, b in ((v00, v10), (v01, v11), (v00, v01), (v10, v11)):
                if _norm_edge(a, b) not in self.edges:
                    raise ValueError(f"face {f} is missing edge ({a},{b})")

    def max_degree(self) -> int:
        deg: dict[int, int] = {}
        for u, v in self.edges:
            deg[u] = deg.get(u, 0) + 1
            deg[v] = deg.get(v, 0) + 1
        return max(deg.values(), default=0)

    def vertex_degrees(self) -> dict[int, int]:
        deg = {v: 0 for v in range(self.n_vertices)}
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency_complex(self) -> ChainComplex3:
        """Chain complex read off the vertex classes.

        X(0) = V00, X(1) = V10 u V01, X(2) = V11, with both maps given by
        the adjacency relation.  For complexes arising from balanced
        products this is the associated code (simple-graph entries).
        """
        v00 = self.class_members("00")
        v10 = self.class_members("10")
        v01 = self.class_members("01")
        v11 = self.class_members("11")
        idx0 = {v: i for i, v in enumerate(v00)}
        idx1 = {v: i for i, v in enumerate(v10 + v01)}
        idx2 = {v: i for i, v in enumerate(v11)}
        e0, e1 = [], []
        for u, v in self.edges:
            for a, b in ((u, v), (v, u)):
                if a in idx0 and b in idx1:
                    e0.append((idx1[b], idx0[a]))
                elif a in idx1 and b in idx2:
                    e1.append((idx2[b], idx1[a]))
        d0 = SparseBitMatrix(len(idx1), len(idx0), e0)
        d1 = SparseBitMatrix(len(idx2), len(idx1), e1)
        x = ChainComplex3(d0, d1)
        diag = validate(x)
        if not diag.ok:
            raise ValueError(f"adjacency does not chain: witness {diag.witness}")
        return x


def _norm_edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a <= b else (b, a)


class _OrbitIndex:
    """Orbits of the diagonal action on one product class, keyed by smallest pair."""

    def __init__(
        self,
        ga: ActedBipartiteGraph,
        gb: ActedBipartiteGraph,
        side_a: str,
        side_b: str,
    ):
        perms_a = ga.action_left if side_a == "left" else ga.action_right
        perms_b = gb.action_left if side_b == "left" else gb.action_right
        na = ga.n_left if side_a == "left" else ga.n_right
        nb = gb.n_left if side_b == "left" else gb.n_right
        order = ga.group.order
        self.rep_of: dict[tuple[int, int], tuple[int, int]] = {}
        reps = []
        for a in range(na):
            for b in range(nb):
                if (a, b) in self.rep_of:
                    continue
                orbit = sorted((perms_a[g][a], perms_b[g][b]) for g in range(order))
                if len(set(orbit)) != order:
                    raise ValueError("diagonal action is not free on this class")
                rep = orbit[0]
                for p in orbit:
                    self.rep_of[p] = rep
                reps.append(rep)
        reps.sort()
        self.reps = reps
        self.index = {rep: i for i, rep in enumerate(reps)}

    def __len__(self) -> int:
        return len(self.reps)

    def id_of(self, a: int, b: int) -> int:
        return self.index[self.rep_of[(a, b)]]


def balanced_product_graphs(ga: ActedBipartiteGraph, gb: ActedBipartiteGraph) -> SquareComplex:
    """Cartesian product of two acted bipartite graphs, quotiented diagonally.

    Classes: V00 = left x left, V10 = right x left, V01 = left x right,
    V11 = right x right (each up to the diagonal action).
    """
    if ga.group != gb.group:
        raise ValueError("factors must share the same group table")
    ga.validate()
    gb.validate()
    orbits = {
        "00": _OrbitIndex(ga, gb, "left", "left"),
        "10": _OrbitIndex(ga, gb, "right", "left"),
        "01": _OrbitIndex(ga, gb, "left", "right"),
        "11": _OrbitIndex(ga, gb, "right", "right"),
    }
    offsets = {}
    cls: list[str] = []
    for c in CLASSES:
        offsets[c] = len(cls)
        cls.extend([c] * len(orbits[c]))

    def vid(c: str, a: int, b: int) -> int:
        return offsets[c] + orbits[c].id_of(a, b)

    edges: set[tuple[int, int]] = set()
    # horizontal: an edge of A times a vertex of B
    for a0, a1 in ga.edges:
        for b in range(gb.n_left):
            edges.add(_norm_edge(vid("00", a0, b), vid("10", a1, b)))
        for b in range(gb.n_right):
            edges.add(_norm_edge(vid("01", a0, b), vid("11", a1, b)))
    # vertical: a vertex of A times an edge of B
    for b0, b1 in gb.edges:
        for a in range(ga.n_left):
            edges.add(_norm_edge(vid("00", a, b0), vid("01", a, b1)))
        for a in range(ga.n_right):
            edges.add(_norm_edge(vid("10", a, b0), vid("11", a, b1)))
    faces: set[tuple[int, int, int, int]] = set()
    for a0, a1 in ga.edges:
        for b0, b1 in gb.edges:
            faces.add(
                (vid("00", a0, b0), vid("10", a1, b0), vid("01", a0, b1), vid("11", a1, b1))
            )
    sq = SquareComplex(cls=tuple(cls), edges=frozenset(edges), faces=frozenset(faces))
    sq.validate()
    return sq


def tensor_code_complex(ma: SparseBitMatrix, mb: SparseBitMatrix) -> ChainComplex3:
    """Independent Kronecker-style tensor of two 2-term complexes.

    Factor A maps F2^A0 -> F2^A1 (ma: A1 x A0), factor B maps F2^B0 -> F2^B1.
    Levels: X(0) = A0 x B0, X(1) = A1 x B0 u A0 x B1, X(2) = A1 x B1, with
    indices ordered lexicographically and the A1 x B0 block first.
    """
    a0, a1 = ma.cols, ma.rows
    b0, b1 = mb.cols, mb.rows

    def i0(a: int, b: int) -> int:
        return a * b0 + b

    def i1_left(a: int, b: int) -> int:
        return a * b0 + b

    def i1_right(a: int, b: int) -> int:
        return a1 * b0 + a * b1 + b

    def i2(a: int, b: int) -> int:
        return a * b1 + b

    e0 = []
    for r, c in ma.entries:
        for b in range(b0):
            e0.append((i1_left(r, b), i0(c, b)))
    for r, c in mb.entries:
        for a in range(a0):
            e0.append((i1_right(a, r), i0(a, c)))
    e1 = []
    for r, c in mb.entries:
        for a in range(a1):
            e1.append((i2(a, r), i1_left(a, c)))
    for r, c in ma.entries:
        for b in range(b1):
            e1.append((i2(r, b), i1_right(c, b)))
    d0 = SparseBitMatrix(a1 * b0 + a0 * b1, a0 * b0, e0)
    d1 = SparseBitMatrix(a1 * b1, a1 * b0 + a0 * b1, e1)
    return ChainComplex3(d0, d1)


def balanced_product_codes(
    ga: ActedBipartiteGraph, gb: ActedBipartiteGraph
) -> ChainComplex3:
    """Balanced product code of two acted Tanner graphs.

    The first factor enters as bits -> checks and the second transposed
    (checks -> bits), which is the orientation that makes the trivial-group
    case the hypergraph product: two length-3 repetition codes give the
    [[13,1,3]] surface code.  Entries of the quotient maps are inherited
    from the tensor product through orbit representatives, and consistency
    across every representative is checked explicitly.
    """
    if ga.group != gb.group:
        raise ValueError("factors must share the same group table")
    ga.validate()
    gb.validate()
    gbt = gb.swap()

    # 2-term factor complexes: A = H_A (left->right), B = H_B^T (right->left).
    ma = ga.h_matrix()
    mb = gbt.h_matrix()

    order = ga.group.order
    perms_a = {"0": ga.action_left, "1": ga.action_right}
    perms_b = {"0": gbt.action_left, "1": gbt.action_right}

    orb = {
        (i, j): _OrbitIndex(
            ga, gbt, "left" if i == "0" else "right", "left" if j == "0" else "right"
        )
        for i in "01"
        for j in "01"
    }
    n0 = len(orb[("0", "0")])
    n1a = len(orb[("1", "0")])
    n1b = len(orb[("0", "1")])
    n2 = len(orb[("1", "1")])

    def lvl1(i: str, j: str, a: int, b: int) -> int:
        if (i, j) == ("1", "0"):
            return orb[("1", "0")].id_of(a, b)
        return n1a + orb[("0", "1")].id_of(a, b)

    def inherit(
        rows_ab,  # iterable of ((i,j) class, a, b) row cells hit by a column cell
        col_cls: tuple[str, str],
        col_cell: tuple[int, int],
    ) -> set[tuple[str, str, int, int]]:
        return {(i, j, a, b) for (i, j, a, b) in rows_ab}

    # Build delta0': for each X(0) orbit, pull the tensor column at every
    # representative and check the induced orbit column is the same.
    ents0: set[tuple[int, int]] = set()
    ma_cols = {c: [r for r, cc in ma.entries if cc == c] for c in range(ma.cols)}
    mb_cols = {c: [r for r, cc in mb.entries if cc == c] for c in range(mb.cols)}

    for rep in orb[("0", "0")].reps:
        col_id = orb[("0", "0")].index[rep]
        expected: Optional[set[int]] = None
        for g in range(order):
            a = perms_a["0"][g][rep[0]]
            b = perms_b["0"][g][rep[1]]
            rows = set()
            for r in ma_cols.get(a, ()):
                rows.add(lvl1("1", "0", r, b))
            for r in mb_cols.get(b, ()):
                rows.add(lvl1("0", "1", a, r))
            if expected is None:
                expected = rows
            elif rows != expected:
                raise ValueError(f"quotient map ill-defined at X(0) orbit {rep}")
        assert expected is not None
        ents0.update((r, col_id) for r in expected)

    ents1: set[tuple[int, int]] = set()
    for rep in orb[("1", "0")].reps:
        col_id = lvl1("1", "0", *rep)
        expected = None
        for g in range(order):
            a = perms_a["1"][g][rep[0]]
            b = perms_b["0"][g][rep[1]]
            rows = {orb[("1", "1")].id_of(a, r) for r in mb_cols.get(b, ())}
            if expected is None:
                expected = rows
            elif rows != expected:
                raise ValueError(f"quotient map ill-defined at X(1) orbit {rep}")
        assert expected is not None
        ents1.update((r, col_id) for r in expected)
    for rep in orb[("0", "1")].reps:
        col_id = lvl1("0", "1", *rep)
        expected = None
        for g in range(order):
            a = perms_a["0"][g][rep[0]]
            b = perms_b["1"][g][rep[1]]
            rows = {orb[("1", "1")].id_of(r, b) for r in ma_cols.get(a, ())}
            if expected is None:
                expected = rows
            elif rows != expected:
                raise ValueError(f"quotient map ill-defined at X(1) orbit {rep}")
        assert expected is not None
        ents1.update((r, col_id) for r in expected)

    d0 = SparseBitMatrix(n1a + n1b, n0, ents0)
    d1 = SparseBitMatrix(n2, n1a + n1b, ents1)
    x = ChainComplex3(d0, d1)
    diag = validate(x)
    if not diag.ok:
        raise ValueError(f"balanced product does not chain: witness {diag.witness}")
    return x


def balanced_product_square_complex(
    ga: ActedBipartiteGraph, gb: ActedBipartiteGraph
) -> SquareComplex:
    """Square complex whose vertex classes match balanced_product_codes levels.

    V00 = X(0), V10 u V01 = X(1), V11 = X(2); built by applying the graph
    product with the second factor's sides swapped.
    """
    return balanced_product_graphs(ga, gb.swap())


def cayley_action_graph(generators: Sequence[int], group: GroupTable, side: str) -> ActedBipartiteGraph:
    """Bipartite double cover of a Cayley graph, with the commuting free action.

    side "left": edges (g, a g) for the listed generators, acted on by
    right translation x -> x g^-1.  side "right": edges (g, g b), acted on
    by left translation x -> g x.
    """
    if not generators:
        raise ValueError("generator set must be nonempty")
    n = group.order
    if side == "left":
        edges = frozenset((g, group.mul[a][g]) for g in range(n) for a in generators)
        perms = tuple(
            tuple(group.mul[x][group.inverse(g)] for x in range(n)) for g in range(n)
        )
    elif side == "right":
        edges = frozenset((g, group.mul[g][b]) for g in range(n) for b in generators)
        perms = tuple(tuple(group.mul[g][x] for x in range(n)) for g in range(n))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return ActedBipartiteGraph(
        group=group,
        n_left=n,
        n_right=n,
        edges=edges,
        action_left=perms,
        action_right=perms,
    )


def left_right_cayley(
    a_set: Sequence[int], group: GroupTable, b_set: Sequence[int]
) -> SquareComplex:
    """Square complex on four copies of G with A acting left, B acting right.

    Vertices: each class is a copy of G.  Faces: (g, ag, gb, agb) for all
    g in G, a in A, b in B, so |F| = |G| |A| |B|.
    """
    if not a_set or not b_set:
        raise ValueError("generator sets A and B must be nonempty")
    n = group.order
    offset = {c: i * n for i, c in enumerate(CLASSES)}
    cls = tuple(c for c in CLASSES for _ in range(n))
    mul = group.mul
    edges: set[tuple[int, int]] = set()
    for g in range(n):
        for a in a_set:
            edges.add(_norm_edge(offset["00"] + g, offset["10"] + mul[a][g]))
            edges.add(_norm_edge(offset["01"] + g, offset["11"] + mul[a][g]))
        for b in b_set:
            edges.add(_norm_edge(offset["00"] + g, offset["01"] + mul[g][b]))
            edges.add(_norm_edge(offset["10"] + g, offset["11"] + mul[g][b]))
    faces: set[tuple[int, int, int, int]] = set()
    for g in range(n):
        for a in a_set:
            for b in b_set:
                ag = mul[a][g]
                gb = mul[g][b]
                agb = mul[ag][b]
                faces.add(
                    (offset["00"] + g, offset["10"] + ag, offset["01"] + gb, offset["11"] + agb)
                )
    sq = SquareComplex(cls=cls, edges=frozenset(edges), faces=frozenset(faces))
    sq.validate()
    return sq


@dataclass
class IsoReport:
    ok: bool
    detail: str = ""


def square_complexes_isomorphic_by(
    phi: dict[int, int], source: SquareComplex, target: SquareComplex
) -> IsoReport:
    """Is phi a class-preserving bijection carrying edges and faces onto each other?"""
    if source.n_vertices != target.n_vertices:
        return IsoReport(False, f"vertex counts differ: {source.n_vertices} vs {target.n_vertices}")
    if sorted(phi.values()) != list(range(target.n_vertices)):
        return IsoReport(False, "vertex map is not a bijection")
    for v, w in phi.items():
        if source.cls[v] != target.cls[w]:
            return IsoReport(False, f"vertex {v} changes class under the map")
    mapped_edges = frozenset(_norm_edge(phi[u], phi[v]) for u, v in source.edges)
    if mapped_edges != target.edges:
        missing = target.edges - mapped_edges
        extra = mapped_edges - target.edges
        return IsoReport(
            False, f"edges differ: missing {sorted(missing)[:3]}, extra {sorted(extra)[:3]}"
        )
    mapped_faces = frozenset(tuple(phi[v] for v in f) for f in source.faces)
    if mapped_faces != target.faces:
        missing_f = target.faces - mapped_faces
        return IsoReport(False, f"faces differ: first missing {sorted(missing_f)[:1]}")
    return IsoReport(True)


def cayley_product_map(
    a_set: Sequence[int], group: GroupTable, b_set: Sequence[int]
) -> tuple[SquareComplex, dict[int, int]]:
    """Balanced product of the two Cayley action graphs and the map [(x,y)] -> xy."""
    ga = cayley_action_graph(a_set, group, "left")
    gb = cayley_action_graph(b_set, group, "right")
    product = balanced_product_graphs(ga, gb)
    n = group.order
    orbits = {
        "00": _OrbitIndex(ga, gb, "left", "left"),
        "10": _OrbitIndex(ga, gb, "right", "left"),
        "01": _OrbitIndex(ga, gb, "left", "right"),
        "11": _OrbitIndex(ga, gb, "right", "right"),
    }
    direct_offset = {c: i * n for i, c in enumerate(CLASSES)}
    phi: dict[int, int] = {}
    pos = 0
    for c in CLASSES:
        for x, y in orbits[c].reps:
            phi[pos] = direct_offset[c] + group.mul[x][y]
            pos += 1
    return product, phi


def check_cayley_iso(a_set: Sequence[int], group: GroupTable, b_set: Sequence[int]) -> IsoReport:
    """Verify Cay2(A, G, B) equals Cay(A, G) x_G Cay(G, B) structurally.

    Builds both square complexes and pushes the product through the map
    [(x, y)] -> x y, checking it is a class-preserving vertex bijection
    that carries edges to edges and faces to faces, both ways.
    """
    direct = left_right_cayley(a_set, group, b_set)
    product, phi = cayley_product_map(a_set, group, b_set)
    return square_complexes_isomorphic_by(phi, product, direct)


@dataclass(frozen=True)
class RegularGraphIncidence:
    """Delta-regular graph as an ordered list of incident edge ids per vertex."""

    n_edges: int
    vertex_edges: tuple[tuple[int, ...], ...]

    @property
    def degree(self) -> int:
        if not self.vertex_edges:
            return 0
        return len(self.vertex_edges[0])

    def validate(self) -> None:
        deg = self.degree
        for v, inc in enumerate(self.vertex_edges):
            if len(inc) != deg:
                raise ValueError(f"vertex {v} has degree {len(inc)}, expected {deg}")
            for e in inc:
                if not 0 <= e < self.n_edges:
                    raise ValueError(f"edge id {e} out of range")


def tanner_code(graph: RegularGraphIncidence, local: ClassicalCode) -> ClassicalCode:
    """Tanner code: bits on edges, the local code imposed around each vertex.

    The fixed edge order at each vertex decides which local-code coordinate
    an incident edge occupies.
    """
    graph.validate()
    if local.n != graph.degree:
        raise ValueError(f"local code length {local.n} != graph degree {graph.degree}")
    m_local = local.h.rows
    ents = []
    for v, inc in enumerate(graph.vertex_edges):
        for r, c in local.h.entries:
            ents.append((v * m_local + r, inc[c]))
    return ClassicalCode(SparseBitMatrix(len(graph.vertex_edges) * m_local, graph.n_edges, ents))


def cycle_graph_incidence(n: int) -> RegularGraphIncidence:
    """n-cycle with edges numbered so edge i joins vertices i and i+1."""
    return RegularGraphIncidence(
        n_edges=n,
        vertex_edges=tuple(((v - 1) % n, v) for v in range(n)),
    )


def complete_graph_incidence(n: int) -> RegularGraphIncidence:
    """K_n; edges ordered lexicographically, each vertex lists its edges by peer."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    eid = {p: i for i, p in enumerate(pairs)}
    vertex_edges = tuple(
        tuple(eid[(min(v, u), max(v, u))] for u in range(n) if u != v) for v in range(n)
    )
    return RegularGraphIncidence(n_edges=len(pairs), vertex_edges=vertex_edges)
