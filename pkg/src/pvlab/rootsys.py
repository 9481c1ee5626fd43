"""Root systems of the finite simple types, in the simple-root basis.

Roots are integer coordinate vectors over the simple roots (never Euclidean
vectors), so every pairing is an exact Cartan-matrix contraction.  Classical
types are numbered along the chain with the short root of B at node n, the
long root of C at node n and the fork tips of D at nodes n-1, n; exceptional
types follow Bourbaki (E branch node 2 attached to node 4), except that our
G2 takes alpha_1 long so that the triple bond points from node 1 to node 2.
"""
from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple

Root = tuple[int, ...]

_RANK_RANGE = {
    "A": (1, 512),
    "B": (2, 512),
    "C": (3, 512),
    "D": (4, 512),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


class InadmissibleType(ValueError):
    """Family/rank combination outside the finite simple types."""


class SimpleType(NamedTuple):
    family: str
    rank: int

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def check_admissible(t: SimpleType) -> SimpleType:
    lo, hi = _RANK_RANGE.get(t.family, (None, None))
    if lo is None or not (lo <= t.rank <= hi):
        raise InadmissibleType(f"no simple type {t.family}{t.rank}")
    return t


def _bond_list(t: SimpleType) -> list[tuple[int, int, int, int]]:
    """Edges of the Dynkin graph as (i, j, C[i][j], C[j][i]), 1-based."""
    fam, n = t
    chain = lambda a, b: (a, b, -1, -1)  # noqa: E731
    if fam == "A":
        return [chain(i, i + 1) for i in range(1, n)]
    if fam == "B":  # short root at n
        return [chain(i, i + 1) for i in range(1, n - 1)] + [(n - 1, n, -2, -1)]
    if fam == "C":  # long root at n
        return [chain(i, i + 1) for i in range(1, n - 1)] + [(n - 1, n, -1, -2)]
    if fam == "D":
        return [chain(i, i + 1) for i in range(1, n - 2)] + [chain(n - 2, n - 1), chain(n - 2, n)]
    if fam == "E":
        spine = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        return [chain(a, b) for a, b in zip(spine, spine[1:])] + [chain(2, 4)]
    if fam == "F":
        return [chain(1, 2), (2, 3, -2, -1), chain(3, 4)]
    if fam == "G":  # alpha_1 long (see module docstring)
        return [(1, 2, -3, -1)]
    raise InadmissibleType(f"unknown family {fam!r}")


def cartan_matrix(t: SimpleType) -> list[list[int]]:
    check_admissible(t)
    n = t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j, cij, cji in _bond_list(t):
        c[i - 1][j - 1] = cij
        c[j - 1][i - 1] = cji
    return c


def _root_lengths(cartan: list[list[int]]) -> list[int]:
    """Relative squared lengths d_i of the simple roots (smallest = 1).

    Determined up to scale by the symmetry d_i * C[j][i] = d_j * C[i][j];
    propagated along the (connected) Dynkin graph.
    """
    from fractions import Fraction

    n = len(cartan)
    d: list = [None] * n
    d[0] = Fraction(1)
    todo = [0]
    while todo:
        i = todo.pop()
        for j in range(n):
            if j != i and cartan[i][j] != 0 and d[j] is None:
                d[j] = d[i] * cartan[j][i] / cartan[i][j]
                todo.append(j)
    scale = min(x for x in d)
    out = [x / scale for x in d]
    assert all(x.denominator == 1 for x in out)
    return [int(x) for x in out]


class RootSystem:
    """A finite root system with exact integer data.

    Attributes
    ----------
    type : SimpleType
    cartan : list of rows, cartan[i][j] = alpha_i(H_{alpha_j})
    positive : positive roots sorted by (height, coordinates)
    roots : positive roots followed by their negatives (same order)
    lengths : relative squared lengths of the simple roots
    """

    def __init__(self, t: SimpleType) -> None:
        check_admissible(t)
        self.type = t
        self.rank = t.rank
        self.cartan = cartan_matrix(t)
        self.lengths = _root_lengths(self.cartan)
        self.positive = _positive_roots(self.cartan)
        self.roots = self.positive + [tuple(-v for v in r) for r in self.positive]
        self._index = {r: i for i, r in enumerate(self.roots)}
        # symmetrized Gram matrix (twice the inner product, in d-units)
        n = self.rank
        self._gram = [[self.lengths[j] * self.cartan[i][j] if i != j else 2 * self.lengths[i]
                       for j in range(n)] for i in range(n)]

    def is_root(self, v: Root) -> bool:
        return v in self._index

    def index(self, root: Root) -> int:
        return self._index[root]

    def norm2(self, root: Root) -> int:
        """Squared length of a root (relative scale; shortest simple root = 2)."""
        g = self._gram
        n = self.rank
        return sum(root[i] * root[j] * g[i][j] for i in range(n) for j in range(n) if root[i] and root[j])

    def adjacent(self, i: int, j: int) -> bool:
        """Dynkin-graph adjacency of simple roots i, j (1-based)."""
        return i != j and self.cartan[i - 1][j - 1] != 0

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(1, self.rank + 1) if self.adjacent(i, j)]


def _positive_roots(cartan: list[list[int]]) -> list[Root]:
    """Positive roots by chain closure, level by level over the height."""
    n = len(cartan)
    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        grown: list[Root] = []
        for g in frontier:
            for i in range(n):
                pairing = sum(g[j] * cartan[j][i] for j in range(n) if g[j])
                down = 0
                cur = list(g)
                while True:
                    cur[i] -= 1
                    t = tuple(cur)
                    if all(v == 0 for v in cur) or t not in roots:
                        break
                    down += 1
                up = down - pairing  # chain closure: the string is unbroken
                if up > 0:
                    t = list(g)
                    t[i] += 1
                    t = tuple(t)
                    if t not in roots:
                        roots.add(t)
                        grown.append(t)
        frontier = grown
    return sorted(roots, key=lambda r: (sum(r), r))


@lru_cache(maxsize=None)
def build_root_system(t: SimpleType) -> RootSystem:
    """Build (and cache) the root system of a simple type.

    Examples
    ========
    >>> rs = build_root_system(SimpleType("A", 2))
    >>> len(rs.roots)
    6
    >>> rs.positive
    [(0, 1), (1, 0), (1, 1)]
    """
    return RootSystem(t)


def pairing(rs: RootSystem, root: Root, node: int) -> int:
    """Cartan integer root(H_{alpha_node}) for a 1-based node index."""
    j = node - 1
    return sum(m * rs.cartan[i][j] for i, m in enumerate(root) if m)


class DiagramPiece(NamedTuple):
    """A connected induced sub-diagram, relabelled to a standard standalone type.

    ``relabel`` maps ambient 1-based node indices to 1-based indices of the
    standalone type, so that the induced Cartan matrix is the standard one.
    """

    nodes: tuple[int, ...]
    type: SimpleType
    relabel: dict[int, int]


def connected_components(rs: RootSystem, nodes) -> list[tuple[tuple[int, ...], SimpleType]]:
    """Partition ``nodes`` into Dynkin-graph components with induced type labels."""
    pieces = split_pieces(rs, nodes)
    return [(p.nodes, p.type) for p in pieces]


def split_pieces(rs: RootSystem, nodes) -> list[DiagramPiece]:
    nodes = sorted(set(nodes))
    seen: set[int] = set()
    out: list[DiagramPiece] = []
    for start in nodes:
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            a = todo.pop()
            for b in rs.neighbors(a):
                if b in nodes and b not in comp:
                    comp.add(b)
                    todo.append(b)
        seen |= comp
        out.append(induced_piece(rs, tuple(sorted(comp))))
    return out


def induced_piece(rs: RootSystem, nodes: tuple[int, ...]) -> DiagramPiece:
    """Classify a connected induced sub-diagram and relabel it.

    The relabelling follows the module's numbering conventions for the
    detected type (short/long root last for B/C, fork tips last for D,
    Bourbaki branch labels for E).
    """
    nodes = tuple(sorted(set(nodes)))
    k = len(nodes)
    C = rs.cartan
    adj = {a: [b for b in nodes if b != a and C[a - 1][b - 1] != 0] for a in nodes}
    if k == 1:
        return DiagramPiece(nodes, SimpleType("A", 1), {nodes[0]: 1})
    branch_points = [a for a in nodes if len(adj[a]) == 3]

    if not branch_points:
        ends = sorted(a for a in nodes if len(adj[a]) == 1)
        path = [ends[0]]
        while len(path) < k:
            prev = path[-2] if len(path) > 1 else None
            path.append(next(b for b in adj[path[-1]] if b != prev))
        mult = [max(abs(C[a - 1][b - 1]), abs(C[b - 1][a - 1])) for a, b in zip(path, path[1:])]
        if all(m == 1 for m in mult):
            family = SimpleType("A", k)
        elif 3 in mult:
            family = SimpleType("G", 2)
            if rs.lengths[path[0] - 1] < rs.lengths[path[1] - 1]:
                path.reverse()  # long root first
        else:
            j = mult.index(2)
            if rs.lengths[path[j] - 1] < rs.lengths[path[j + 1] - 1]:
                path.reverse()  # make the long side come first
                j = k - 2 - j
            nlong, nshort = j + 1, k - j - 1
            if nshort == 1:
                family = SimpleType("B", k)
            elif nlong == 1:
                family = SimpleType("C", k)
                path.reverse()  # long root last for C
            elif nlong == 2 and nshort == 2:
                family = SimpleType("F", 4)
            else:  # pragma: no cover - cannot occur inside simple ambients
                raise ValueError(f"unrecognized path piece {nodes}")
        return DiagramPiece(nodes, family, {a: i + 1 for i, a in enumerate(path)})

    center = branch_points[0]
    branches = []
    for nb in sorted(adj[center]):
        br = [nb]
        prev = center
        while True:
            nxt = [b for b in adj[br[-1]] if b != prev]
            if not nxt:
                break
            prev = br[-1]
            br.append(nxt[0])
        branches.append(br)
    branches.sort(key=lambda br: (len(br), br[-1]))
    (c_br, b_br, a_br) = branches  # lengths ascending; ties by far-node index
    relabel: dict[int, int] = {}
    if len(b_br) == 1:  # D_{len(a)+3}
        family = SimpleType("D", k)
        relabel[center] = k - 2
        if len(a_br) == 1:  # D4: all three tips equivalent; label by index
            tips = sorted((a_br[0], b_br[0], c_br[0]))
            relabel[tips[0]] = 1
            relabel[tips[1]] = 3
            relabel[tips[2]] = 4
        else:
            for i, node in enumerate(reversed(a_br)):
                relabel[node] = i + 1
            tips = sorted((c_br[0], b_br[0]))
            relabel[tips[0]] = k - 1
            relabel[tips[1]] = k
    elif len(b_br) == 2 and len(c_br) == 1 and 2 <= len(a_br) <= 4:
        family = SimpleType("E", k)
        relabel[center] = 4
        relabel[c_br[0]] = 2
        relabel[b_br[0]] = 3
        relabel[b_br[1]] = 1
        for i, node in enumerate(a_br):
            relabel[node] = 5 + i
    else:  # pragma: no cover - cannot occur inside simple ambients
        raise ValueError(f"unrecognized branched piece {nodes}")
    return DiagramPiece(nodes, family, relabel)
