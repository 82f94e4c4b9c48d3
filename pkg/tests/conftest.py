"""Shared corpus fixtures for the test suite."""

from __future__ import annotations

import pytest

from localcode.builders import (
    single_square,
    toric_square_complex,
    hypergraph_product_square,
    repetition_matrix,
)
from localcode.products import balanced_product_graphs, cayley_action_graph, cyclic_group, dihedral_group
from localcode.subdivision import subdivide


def _cayley_square(group, a_set, b_set):
    ga = cayley_action_graph(a_set, group, "left")
    gb = cayley_action_graph(b_set, group, "right")
    return balanced_product_graphs(ga, gb)


@pytest.fixture(scope="session")
def square_corpus():
    """(name, square complex, all directional degrees >= 2) entries.

    The degree flag gates the size-bound and T-component claims, whose
    hypotheses need branching at least 2 everywhere.
    """
    return [
        ("single_square", single_square(), False),
        ("hgp_rep3", hypergraph_product_square(repetition_matrix(3), repetition_matrix(3)), False),
        ("toric2", toric_square_complex(2), True),
        ("toric3", toric_square_complex(3), True),
        ("cayley_z3", _cayley_square(cyclic_group(3), [1, 2], [1, 2]), True),
        ("cayley_z5", _cayley_square(cyclic_group(5), [1, 4], [2, 3]), True),
        ("cayley_d4", _cayley_square(dihedral_group(4), [1, 7], [4, 5]), True),
    ]


@pytest.fixture(scope="session")
def subdivision_corpus(square_corpus):
    """Every corpus base subdivided at l = 3 and l = 5."""
    out = []
    for name, sq, deg2 in square_corpus:
        for l in (3, 5):
            out.append((f"{name}_l{l}", subdivide(sq, l), deg2))
    return out
