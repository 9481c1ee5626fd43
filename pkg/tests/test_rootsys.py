"""Root systems: admissibility, Cartan matrices, root enumeration, pieces."""
from __future__ import annotations

import pytest
import sympy.liealgebras.cartan_matrix as sym_cm

from pvlab.rootsys import (InadmissibleType, SimpleType, build_root_system, cartan_matrix,
                           check_admissible, connected_components, induced_piece,
                           pairing, split_pieces)

# Total root counts |Sigma| for every supported (family, rank), frozen from an
# independent chain-closure enumeration.
ROOT_COUNTS = {
    ("A", 1): 2, ("A", 2): 6, ("A", 3): 12, ("A", 4): 20, ("A", 5): 30,
    ("A", 6): 42, ("A", 7): 56, ("A", 8): 72, ("A", 9): 90,
    ("B", 2): 8, ("B", 3): 18, ("B", 4): 32, ("B", 5): 50, ("B", 6): 72,
    ("B", 7): 98, ("B", 8): 128, ("B", 9): 162,
    ("C", 3): 18, ("C", 4): 32, ("C", 5): 50, ("C", 6): 72, ("C", 7): 98,
    ("C", 8): 128, ("C", 9): 162,
    ("D", 4): 24, ("D", 5): 40, ("D", 6): 60, ("D", 7): 84, ("D", 8): 112,
    ("D", 9): 144,
    ("E", 6): 72, ("E", 7): 126, ("E", 8): 240,
    ("F", 4): 48, ("G", 2): 12,
}


@pytest.mark.parametrize("family,rank", sorted(ROOT_COUNTS))
def test_root_counts(family, rank):
    rs = build_root_system(SimpleType(family, rank))
    assert len(rs.roots) == ROOT_COUNTS[(family, rank)]
    assert len(rs.positive) == len(rs.roots) // 2


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 4), ("C", 5), ("D", 6),
                                         ("E", 6), ("E", 7), ("E", 8), ("F", 4)])
def test_cartan_matrix_matches_sympy(family, rank):
    ours = cartan_matrix(SimpleType(family, rank))
    theirs = sym_cm.CartanMatrix(f"{family}{rank}").tolist()
    assert ours == theirs


def test_g2_orientation():
    # Node 1 long, node 2 short; sympy uses the opposite convention, so this
    # is pinned directly rather than cross-checked.
    assert cartan_matrix(SimpleType("G", 2)) == [[2, -3], [-1, 2]]


@pytest.mark.parametrize("family,rank,minrank", [("A", 0, 1), ("B", 1, 2), ("C", 2, 3),
                                                 ("D", 3, 4), ("E", 5, 6), ("E", 9, 6),
                                                 ("F", 3, 4), ("G", 1, 2)])
def test_inadmissible_ranks(family, rank, minrank):
    with pytest.raises(InadmissibleType):
        check_admissible(SimpleType(family, rank))
    assert check_admissible(SimpleType(family, minrank)) == SimpleType(family, minrank)


def test_unknown_family():
    with pytest.raises(InadmissibleType):
        check_admissible(SimpleType("Q", 3))


def test_root_closure_b3():
    rs = build_root_system(SimpleType("B", 3))
    roots = set(rs.roots)
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            assert rs.is_root(s) == (s in roots)


def test_norms_by_family():
    rs = build_root_system(SimpleType("B", 3))
    # alpha_3 is the short root in B_n.
    assert rs.norm2((0, 0, 1)) < rs.norm2((1, 0, 0))
    rs = build_root_system(SimpleType("C", 3))
    # alpha_3 is the long root in C_n.
    assert rs.norm2((0, 0, 1)) > rs.norm2((1, 0, 0))
    rs = build_root_system(SimpleType("G", 2))
    assert rs.norm2((1, 0)) > rs.norm2((0, 1))


def test_pairing_is_cartan_integer():
    t = SimpleType("F", 4)
    rs = build_root_system(t)
    cm = cartan_matrix(t)
    for i in range(1, 5):
        alpha = tuple(1 if j == i else 0 for j in range(1, 5))
        for j in range(1, 5):
            assert pairing(rs, alpha, j) == cm[i - 1][j - 1]


def test_adjacency_d9():
    rs = build_root_system(SimpleType("D", 9))
    assert rs.adjacent(7, 8) and rs.adjacent(7, 9)
    assert not rs.adjacent(8, 9)
    assert sorted(rs.neighbors(7)) == [6, 8, 9]


def test_connected_components_relabel():
    rs = build_root_system(SimpleType("D", 9))
    comps = connected_components(rs, (1, 2, 6, 7, 8, 9))
    assert [(nodes, t) for nodes, t in comps] == [
        ((1, 2), SimpleType("A", 2)),
        ((6, 7, 8, 9), SimpleType("D", 4)),
    ]


def test_split_pieces_and_induced():
    rs = build_root_system(SimpleType("D", 9))
    pieces = split_pieces(rs, (4, 5, 6, 7, 8, 9))
    assert len(pieces) == 1
    piece = pieces[0]
    assert piece.nodes == (4, 5, 6, 7, 8, 9)
    assert piece.type == SimpleType("D", 6)
    same = induced_piece(rs, (4, 5, 6, 7, 8, 9))
    assert same.type == piece.type and same.nodes == piece.nodes
