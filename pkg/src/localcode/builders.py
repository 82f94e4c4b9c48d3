"""Named constructions for the CLI build command and the test corpus."""

from __future__ import annotations

from .complexes import ChainComplex3, ClassicalCode, surface_code
from .f2 import SparseBitMatrix
from .products import (
    ActedBipartiteGraph,
    GroupTable,
    SquareComplex,
    balanced_product_codes,
    balanced_product_square_complex,
    cayley_action_graph,
    code_graph,
    cyclic_group,
    dihedral_group,
    left_right_cayley,
)


def repetition_matrix(n: int, cyclic: bool = False) -> SparseBitMatrix:
    """Parity checks of the repetition code: equality between consecutive bits."""
    m = n if cyclic else n - 1
    ents = []
    for r in range(m):
        ents.append((r, r))
        ents.append((r, (r + 1) % n))
    return SparseBitMatrix(m, n, ents)


def repetition_code(n: int, cyclic: bool = False) -> ClassicalCode:
    return ClassicalCode(repetition_matrix(n, cyclic))


def hypergraph_product(ha: SparseBitMatrix, hb: SparseBitMatrix) -> ChainComplex3:
    """Balanced product with the trivial group of two plain parity matrices."""
    return balanced_product_codes(code_graph(ha), code_graph(hb))


def hypergraph_product_square(ha: SparseBitMatrix, hb: SparseBitMatrix) -> SquareComplex:
    return balanced_product_square_complex(code_graph(ha), code_graph(hb))


def group_from_spec(spec) -> GroupTable:
    """Group from a spec: {"cyclic": n}, {"dihedral": n}, or an explicit table."""
    if isinstance(spec, dict) and "cyclic" in spec:
        return cyclic_group(spec["cyclic"])
    if isinstance(spec, dict) and "dihedral" in spec:
        return dihedral_group(spec["dihedral"])
    if isinstance(spec, dict) and "mul" in spec:
        return GroupTable(tuple(tuple(r) for r in spec["mul"]))
    raise ValueError("group spec must give 'cyclic', 'dihedral', or 'mul'")


def cayley_pair(
    group: GroupTable, a_set: list[int], b_set: list[int]
) -> tuple[ActedBipartiteGraph, ActedBipartiteGraph]:
    return (
        cayley_action_graph(a_set, group, "left"),
        cayley_action_graph(b_set, group, "right"),
    )


def cayley_square_complex(group: GroupTable, a_set: list[int], b_set: list[int]) -> SquareComplex:
    return left_right_cayley(a_set, group, b_set)


def cayley_balanced_square(group: GroupTable, a_set: list[int], b_set: list[int]) -> SquareComplex:
    ga, gb = cayley_pair(group, a_set, b_set)
    return balanced_product_square_complex(ga, gb)


def single_square() -> SquareComplex:
    """One square face: the smallest valid base complex."""
    return SquareComplex(
        cls=("00", "10", "01", "11"),
        edges=frozenset({(0, 1), (0, 2), (1, 3), (2, 3)}),
        faces=frozenset({(0, 1, 2, 3)}),
    )


def toric_complex(n: int) -> ChainComplex3:
    """Balanced product of two cyclic repetition codes: the n x n toric layout."""
    return hypergraph_product(repetition_matrix(n, cyclic=True), repetition_matrix(n, cyclic=True))


def toric_square_complex(n: int) -> SquareComplex:
    return hypergraph_product_square(
        repetition_matrix(n, cyclic=True), repetition_matrix(n, cyclic=True)
    )


def surface_code_complex(l: int) -> ChainComplex3:
    return surface_code(l)


def two_block_code() -> ClassicalCode:
    """[6, 2, 3]: two disjoint cyclic length-3 repetition blocks."""
    ents = []
    for blk in range(2):
        for r in range(3):
            ents.append((blk * 3 + r, blk * 3 + r))
            ents.append((blk * 3 + r, blk * 3 + (r + 1) % 3))
    return ClassicalCode(SparseBitMatrix(6, 6, ents))


def k4_cycle_code() -> ClassicalCode:
    """Cycle space of K4: bits on the 6 edges, one even-weight check per vertex."""
    from .products import complete_graph_incidence, tanner_code

    even3 = ClassicalCode(SparseBitMatrix.from_dense([[1, 1, 1]]))
    return tanner_code(complete_graph_incidence(4), even3)
