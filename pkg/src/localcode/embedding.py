"""Random sphere embeddings of subdivided complexes into the integer lattice.

Base vertices go to (approximately) uniform points on a sphere whose radius
follows the vertex count; subdivided vertices interpolate along edges and
across faces, and everything is rounded to the nearest lattice point with a
small seeded perturbation.  All arithmetic before rounding is
integer-scaled, so a fixed seed reproduces byte-identical output on any
platform.  Locality a and density b are measured, not guaranteed.

Face interpolation splits each face into two affine triangles along the
diagonal that maximizes the smaller triangle area.  Bilinear blending of
four random corners develops fold curves where the patch crushes a 2-D band
of grid points onto a curve, piling tens of vertices into single cells;
affine triangles cannot fold.  The unit-cell pileups that remain (thin
triangles, crossing patches) are spread by a radius-2 seeded lattice
perturbation of every point.  Both choices are measured back into a and b.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .complexes import ChainComplex3
from .f2 import SparseBitMatrix
from .subdivision import SubdividedComplex, subdivide
from .products import SquareComplex

SCALE = 1 << 20
DIRECTION_RANGE = 1 << 20
PERTURB_RADIUS = 2
_PERTURB_SALT = 0x9E3779B9


def iroot(x: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer."""
    if x < 0 or k < 1:
        raise ValueError("need x >= 0 and k >= 1")
    if x == 0:
        return 0
    if k == 1:
        return x
    r = int(round(x ** (1.0 / k)))
    while r > 0 and r**k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def _round_div(num: int, den: int) -> int:
    """Round num/den to the nearest integer, halves toward +infinity."""
    return (2 * num + den) // (2 * den)


@dataclass
class LatticeEmbedding:
    dimension: int
    seed: int
    points: dict[int, tuple[int, ...]]
    a: float
    a_sq: int
    b: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset, repr=False)

    @property
    def n_points(self) -> int:
        return len(self.points)


def _sphere_point(rng: random.Random, d_dim: int, radius_scaled: int) -> tuple[int, ...]:
    """Integer-scaled point near the sphere of the given scaled radius."""
    while True:
        u = tuple(rng.randint(-DIRECTION_RANGE, DIRECTION_RANGE) for _ in range(d_dim))
        norm_sq = sum(x * x for x in u)
        if norm_sq > 0:
            break
    norm_scaled = math.isqrt(norm_sq * SCALE * SCALE)
    return tuple((x * radius_scaled * SCALE) // norm_scaled for x in u)


def _measure(
    points: dict[int, tuple[int, ...]], edges: Iterable[tuple[int, int]]
) -> tuple[int, int]:
    """(max squared edge length, max occupancy)."""
    a_sq = 0
    for u, v in edges:
        d2 = sum((a - b) ** 2 for a, b in zip(points[u], points[v]))
        if d2 > a_sq:
            a_sq = d2
    counts: dict[tuple[int, ...], int] = {}
    for p in points.values():
        counts[p] = counts.get(p, 0) + 1
    return a_sq, max(counts.values(), default=0)


def _cross_norm_sq(p: Sequence[int], q: Sequence[int], r: Sequence[int]) -> int:
    """Squared area measure of a triangle (any ambient dimension >= 2)."""
    u = [b - a for a, b in zip(p, q)]
    v = [b - a for a, b in zip(p, r)]
    total = 0
    for i in range(len(u)):
        for j in range(i + 1, len(u)):
            total += (u[i] * v[j] - u[j] * v[i]) ** 2
    return total


def _perturb(points: dict[int, tuple[int, ...]], seed: int) -> dict[int, tuple[int, ...]]:
    rng = random.Random(seed ^ _PERTURB_SALT)
    return {
        v: tuple(c + rng.randint(-PERTURB_RADIUS, PERTURB_RADIUS) for c in p)
        for v, p in points.items()
    }


def embed_subdivided(sub: SubdividedComplex, d_dim: int, seed: int) -> LatticeEmbedding:
    """Sphere embedding of an already-subdivided square complex."""
    if d_dim < 3:
        raise ValueError("square-complex embedding needs dimension at least 3")
    n_base = sub.base_square.n_vertices
    radius_scaled = iroot(n_base * SCALE ** (d_dim - 2), d_dim - 2)
    rng = random.Random(seed)
    base_pts = [_sphere_point(rng, d_dim, radius_scaled) for _ in range(n_base)]

    l = sub.l
    edge_ends = sub.base_edge_list  # canonical (start, end) per subdivided edge id
    faces = sorted(sub.base_square.faces)
    # Diagonal per face: the split whose smaller triangle is largest.
    diagonal: list[int] = []
    for v00, v10, v01, v11 in faces:
        p00, p10, p01, p11 = (base_pts[w] for w in (v00, v10, v01, v11))
        split1 = min(_cross_norm_sq(p00, p10, p01), _cross_norm_sq(p10, p11, p01))
        split2 = min(_cross_norm_sq(p00, p10, p11), _cross_norm_sq(p00, p11, p01))
        diagonal.append(1 if split1 >= split2 else 2)

    points: dict[int, tuple[int, ...]] = {}
    for v in range(sub.n_vertices):
        key = sub.owner[v]
        if key[0] == "v":
            p = base_pts[key[1]]
            points[v] = tuple(_round_div(c, SCALE) for c in p)
        elif key[0] == "e":
            _, eidx, t = key
            pa = base_pts[edge_ends[eidx][0]]
            pb = base_pts[edge_ends[eidx][1]]
            points[v] = tuple(
                _round_div((l - t) * a + t * b, SCALE * l) for a, b in zip(pa, pb)
            )
        else:
            _, fidx, i, j = key
            v00, v10, v01, v11 = faces[fidx]
            p00, p10, p01, p11 = (base_pts[w] for w in (v00, v10, v01, v11))
            if diagonal[fidx] == 1:
                if i + j <= l:
                    num = tuple(
                        (l - i - j) * a + i * b + j * c for a, b, c in zip(p00, p10, p01)
                    )
                else:
                    num = tuple(
                        (i + j - l) * a + (l - j) * b + (l - i) * c
                        for a, b, c in zip(p11, p10, p01)
                    )
            else:
                if i >= j:
                    num = tuple(
                        (l - i) * a + (i - j) * b + j * c for a, b, c in zip(p00, p10, p11)
                    )
                else:
                    num = tuple(
                        (l - j) * a + (j - i) * b + i * c for a, b, c in zip(p00, p01, p11)
                    )
            points[v] = tuple(_round_div(x, SCALE * l) for x in num)

    points = _perturb(points, seed)
    a_sq, b = _measure(points, sub.edges)
    return LatticeEmbedding(
        dimension=d_dim,
        seed=seed,
        points=points,
        a=math.sqrt(a_sq),
        a_sq=a_sq,
        b=b,
        edges=sub.edges,
    )


def embed_square(square: SquareComplex, l: int, d_dim: int, seed: int) -> LatticeEmbedding:
    """Subdivide a square complex and embed; vertices follow the subdivision order."""
    return embed_subdivided(subdivide(square, l), d_dim, seed)


def embed_graph(
    n_vertices: int,
    edges: Sequence[tuple[int, int]],
    l: int,
    d_dim: int,
    seed: int,
) -> LatticeEmbedding:
    """Sphere embedding of an l-subdivided graph (each edge becomes l segments).

    Vertex ids: base vertices first, then l-1 interior vertices per edge in
    sorted edge order.  l = 1 embeds the base graph unchanged.
    """
    if d_dim < 2:
        raise ValueError("graph embedding needs dimension at least 2")
    if l < 1:
        raise ValueError("subdivision parameter must be at least 1")
    radius_scaled = iroot(n_vertices * SCALE ** (d_dim - 1), d_dim - 1)
    rng = random.Random(seed)
    base_pts = [_sphere_point(rng, d_dim, radius_scaled) for _ in range(n_vertices)]

    sorted_edges = sorted((min(u, v), max(u, v)) for u, v in edges)
    points: dict[int, tuple[int, ...]] = {
        v: tuple(_round_div(c, SCALE) for c in base_pts[v]) for v in range(n_vertices)
    }
    sub_edges: set[tuple[int, int]] = set()
    nxt = n_vertices
    for u, v in sorted_edges:
        chain = [u]
        for t in range(1, l):
            points[nxt] = tuple(
                _round_div((l - t) * a + t * b, SCALE * l)
                for a, b in zip(base_pts[u], base_pts[v])
            )
            chain.append(nxt)
            nxt += 1
        chain.append(v)
        for a, b in zip(chain, chain[1:]):
            sub_edges.add((a, b) if a < b else (b, a))

    points = _perturb(points, seed)
    a_sq, b = _measure(points, sub_edges)
    return LatticeEmbedding(
        dimension=d_dim,
        seed=seed,
        points=points,
        a=math.sqrt(a_sq),
        a_sq=a_sq,
        b=b,
        edges=frozenset(sub_edges),
    )


@dataclass
class EmbeddingAudit:
    a: float
    a_sq: int
    b: int
    occupancy_histogram: dict[int, int]
    matches_stored: bool


def verify_embedding(emb: LatticeEmbedding, edges: Iterable[tuple[int, int]]) -> EmbeddingAudit:
    """Recompute locality and density from scratch and compare with stored values."""
    a_sq, b = _measure(emb.points, edges)
    counts: dict[tuple[int, ...], int] = {}
    for p in emb.points.values():
        counts[p] = counts.get(p, 0) + 1
    hist: dict[int, int] = {}
    for c in counts.values():
        hist[c] = hist.get(c, 0) + 1
    return EmbeddingAudit(
        a=math.sqrt(a_sq),
        a_sq=a_sq,
        b=b,
        occupancy_histogram=hist,
        matches_stored=(a_sq == emb.a_sq and b == emb.b),
    )


@dataclass
class StackedCode:
    complex: ChainComplex3
    embedding: LatticeEmbedding
    copies: int
    k_per_block: int


def stack(code: ChainComplex3, emb: LatticeEmbedding, copies_per_axis: int) -> StackedCode:
    """Direct sum of copies_per_axis**D translated copies.

    Blocks are disjoint both algebraically (block-diagonal maps) and
    geometrically (each copy shifted into its own grid cell), so distance,
    energy barrier, and density all carry over from a single block while
    the dimension multiplies.
    """
    if copies_per_axis < 1:
        raise ValueError("need at least one copy per axis")
    from .complexes import css_dimension

    d_dim = emb.dimension
    n_copies = copies_per_axis**d_dim
    lo = [min(p[i] for p in emb.points.values()) for i in range(d_dim)]
    hi = [max(p[i] for p in emb.points.values()) for i in range(d_dim)]
    side = max(h - l for l, h in zip(lo, hi)) + 1

    n0, n1, n2 = code.sizes
    ents0, ents1 = [], []
    for copy in range(n_copies):
        for r, c in code.delta0.entries:
            ents0.append((copy * n1 + r, copy * n0 + c))
        for r, c in code.delta1.entries:
            ents1.append((copy * n2 + r, copy * n1 + c))
    stacked = ChainComplex3(
        SparseBitMatrix(n_copies * n1, n_copies * n0, ents0),
        SparseBitMatrix(n_copies * n2, n_copies * n1, ents1),
    )

    points: dict[int, tuple[int, ...]] = {}
    edges: set[tuple[int, int]] = set()
    n_pts = len(emb.points)
    for copy in range(n_copies):
        offsets = []
        rem = copy
        for _ in range(d_dim):
            offsets.append((rem % copies_per_axis) * side)
            rem //= copies_per_axis
        for v, p in emb.points.items():
            points[copy * n_pts + v] = tuple(c + o for c, o in zip(p, offsets))
        for u, v in emb.edges:
            edges.add((copy * n_pts + u, copy * n_pts + v))
    a_sq, b = _measure(points, edges)
    new_emb = LatticeEmbedding(
        dimension=d_dim,
        seed=emb.seed,
        points=points,
        a=math.sqrt(a_sq),
        a_sq=a_sq,
        b=b,
        edges=frozenset(edges),
    )
    return StackedCode(
        complex=stacked,
        embedding=new_emb,
        copies=n_copies,
        k_per_block=css_dimension(code),
    )
