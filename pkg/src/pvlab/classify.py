"""Q-irreducibility of weighted diagrams, by pattern and by oracle.

A weighted diagram with at least two circled nodes is Q-irreducible for
exactly nine families of circle placements, encoded here as block profiles
(the sizes of the uncircled stretches between and around the circles), so
that each family is matched up to the diagram symmetry of its type.  The
pattern path answers from that table alone; the oracle path computes the
verdict from scratch on :func:`~pvlab.pvcore.build_parabolic_pv` instances,
and ``mode="both"`` cross-validates the two.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from . import pvcore
from .diagram import DiagramError, WeightedDiagram, circled_adjacent_pairs, render_compact
from .grading import components
from .rootsys import SimpleType, build_root_system, connected_components

__all__ = [
    "FamilyMatch",
    "Verdicts",
    "Witnesses",
    "ClassificationReport",
    "AdjacentSplit",
    "NoAdjacentCircles",
    "MismatchError",
    "family_match",
    "adjacent_split",
    "classify",
    "enumerate_reports",
    "MODES",
]

MODES = ("pattern", "oracle", "both")


class NoAdjacentCircles(DiagramError):
    pass


class MismatchError(Exception):
    """Pattern and oracle disagree; carries both sides' evidence."""

    def __init__(self, diagram: WeightedDiagram, family: FamilyMatch | None,
                 verdicts: Verdicts, witnesses: Witnesses) -> None:
        self.diagram = diagram
        self.family = family
        self.verdicts = verdicts
        self.witnesses = witnesses
        pattern = "hit " + family.family if family else "miss"
        super().__init__(
            f"{render_compact(diagram)}: pattern {pattern} vs oracle "
            f"q_irreducible={verdicts.q_irreducible}")


@dataclass(frozen=True)
class FamilyMatch:
    """A hit in the table of non-irreducible Q-irreducible families.

    ``params`` are the block sizes read off the diagram (empty for the
    three exceptional rows, whose circle sets are fixed).
    """

    family: str
    params: tuple[int, ...]
    diagram: WeightedDiagram


@dataclass(frozen=True)
class Verdicts:
    """The six verdict slots; ``None`` where the method cannot tell."""

    prehomogeneous: bool | None
    regular: bool | None
    n_invariants: int | None
    one_irreducible: bool | None
    q_irreducible: bool
    completely_q_reducible: bool | None


@dataclass(frozen=True)
class Witnesses:
    """Oracle evidence: the point used, a regular proper component sum
    (as circled-node labels), and the isotropy form determinant."""

    generic_point: tuple[int, ...] | None
    regular_gamma: tuple[int, ...] | None
    isotropy_dim: int | None
    form_determinant: Fraction | None


_NO_WITNESSES = Witnesses(None, None, None, None)


@dataclass(frozen=True)
class ClassificationReport:
    diagram: WeightedDiagram
    verdicts: Verdicts
    family: FamilyMatch | None
    witnesses: Witnesses
    method: str
    seed: int


# ---------------------------------------------------------------------------
# pattern table


def _chain_blocks(n: int, c1: int, c2: int) -> tuple[int, int, int]:
    """Uncircled block sizes (before, between, after) on a chain 1..n."""
    return c1 - 1, c2 - c1 - 1, n - c2


def _match_a(d: WeightedDiagram) -> FamilyMatch | None:
    if len(d.circled) != 2:
        return None
    p1, p2, p3 = _chain_blocks(d.type.rank, *d.circled)
    if p1 == p3 and p2 > p1:
        return FamilyMatch("A", (p1, p2, p1), d)
    return None


def _match_b(d: WeightedDiagram) -> FamilyMatch | None:
    if len(d.circled) != 2:
        return None
    p1, p2, p3 = _chain_blocks(d.type.rank, *d.circled)
    if p2 > p1 and 2 * p3 == p1:
        return FamilyMatch("B", (p1, p2, p3), d)
    return None


def _match_c(d: WeightedDiagram) -> FamilyMatch | None:
    # No parity condition on p2: both parities verify as Q-irreducible
    # (e.g. C6[2,5] with p2 = 2 and C7[2,6] with p2 = 3).
    if len(d.circled) != 2:
        return None
    p1, p2, p3 = _chain_blocks(d.type.rank, *d.circled)
    if p2 > p1 and 2 * p3 == p1 + 1 and p3 > 0:
        return FamilyMatch("C", (p1, p2, p3), d)
    return None


def _match_d(d: WeightedDiagram) -> FamilyMatch | None:
    n = d.type.rank
    c = d.circled
    tips = {n - 1, n}
    if len(c) == 3:
        if set(c) == {2} | tips and n - 4 > 1:
            return FamilyMatch("D3", (1, n - 4), d)
        return None
    if len(c) != 2:
        return None
    circled_tips = [a for a in c if a in tips]
    if not circled_tips:
        c1, c2 = c
        if c2 > n - 3:
            return None  # trailing theta splits at the fork: wrong row shape
        p1, p2, p3 = c1 - 1, c2 - c1 - 1, n - c2
        if p2 > p1 and 2 * p3 == p1 + 1 and p3 >= 2 and p2 % 2 == 0:
            return FamilyMatch("D1", (p1, p2, p3), d)
        return None
    if len(circled_tips) == 1:
        chain = min(c)
        if chain <= n - 2:
            p1, p2 = chain - 1, n - 1 - chain
            if p1 == p2 - 1 and p2 >= 2 and p2 % 2 == 0:
                return FamilyMatch("D2", (p1, p2), d)
    return None


_E_ROWS = {
    ("E", 6): ({(1, 2), (2, 6)}, "E6"),
    ("E", 7): ({(2, 5)}, "E7"),
    ("E", 8): ({(1, 2)}, "E8"),
}


def _match_e(d: WeightedDiagram) -> FamilyMatch | None:
    row = _E_ROWS.get((d.type.family, d.type.rank))
    if row and d.circled in row[0]:
        return FamilyMatch(row[1], (), d)
    return None


_MATCHERS = {"A": _match_a, "B": _match_b, "C": _match_c, "D": _match_d, "E": _match_e}


def family_match(d: WeightedDiagram) -> FamilyMatch | None:
    """The family row matched by ``d``, or None.

    Only non-irreducible diagrams are tabulated, so at least two circled
    nodes are required.
    """
    if len(d.circled) < 2:
        raise ValueError("family_match needs at least two circled nodes")
    matcher = _MATCHERS.get(d.type.family)
    return matcher(d) if matcher else None


# ---------------------------------------------------------------------------
# adjacent-circle split


class AdjacentSplit(NamedTuple):
    """The two halves around the first adjacent circled pair.

    ``psi1``/``psi2`` are the node sets of the connected halves (each keeps
    one circle of the pair); ``gamma1``/``gamma2`` their circled nodes; the
    ``components*`` tuples index the level-1 components of the full
    instance, so restricting to them realizes each half under the same
    acting algebra.
    """

    pair: tuple[int, int]
    psi1: tuple[int, ...]
    psi2: tuple[int, ...]
    gamma1: tuple[int, ...]
    gamma2: tuple[int, ...]
    components1: tuple[int, ...]
    components2: tuple[int, ...]


def adjacent_split(d: WeightedDiagram) -> AdjacentSplit:
    """Split around the first (lowest) pair of adjacent circled nodes.

    The instance is regular exactly when both component restrictions are,
    which both prunes classification (a Q-irreducible diagram never has two
    adjacent circles) and gives an independently testable equivalence.
    """
    pairs = circled_adjacent_pairs(d)
    if not pairs:
        raise NoAdjacentCircles(render_compact(d))
    a1, a2 = pairs[0]
    rs = build_root_system(d.type)
    nodes = list(range(1, d.type.rank + 1))

    def half(keep: int, drop: int) -> tuple[int, ...]:
        for comp, _ in connected_components(rs, [x for x in nodes if x != drop]):
            if keep in comp:
                return comp
        raise AssertionError("node vanished from its own diagram")

    psi1 = half(a1, a2)
    psi2 = half(a2, a1)
    gamma1 = tuple(a for a in d.circled if a in psi1)
    gamma2 = tuple(a for a in d.circled if a in psi2)
    comps1 = tuple(i for i, a in enumerate(d.circled) if a in psi1)
    comps2 = tuple(i for i, a in enumerate(d.circled) if a in psi2)
    return AdjacentSplit((a1, a2), psi1, psi2, gamma1, gamma2, comps1, comps2)


# ---------------------------------------------------------------------------
# classification


def _oracle_verdicts(d: WeightedDiagram, seed: int) -> tuple[Verdicts, Witnesses]:
    pv = pvcore.build_parabolic_pv(d)
    oracle = pvcore._SubsetOracle(pv, seed)
    full = tuple(range(len(pv.components)))
    rep = oracle.regular(full)
    witness = oracle.regular_proper_subset(full) if rep.regular else None
    q_irr = rep.regular and witness is None
    verdicts = Verdicts(
        prehomogeneous=rep.prehomogeneous,
        regular=rep.regular,
        n_invariants=rep.n_fundamental_invariants,
        one_irreducible=q_irr and rep.n_fundamental_invariants == 1,
        q_irreducible=q_irr,
        completely_q_reducible=oracle.completely_q_reducible(full),
    )
    gamma = tuple(d.circled[i] for i in witness) if witness else None
    witnesses = Witnesses(
        generic_point=rep.generic_point.vector,
        regular_gamma=gamma,
        isotropy_dim=rep.isotropy_dim,
        form_determinant=rep.form_determinant,
    )
    return verdicts, witnesses


def _pattern_verdicts(match: FamilyMatch | None) -> Verdicts:
    if match is None:
        return Verdicts(None, None, None, False, False, None)
    return Verdicts(True, True, 1, True, True, True)


def classify(d: WeightedDiagram, mode: str = "both", seed: int = 0) -> ClassificationReport:
    """Full verdicts for one diagram.

    ``pattern`` answers from the family table (irreducible diagrams fall
    back to a single regularity computation, where Q-irreducible just means
    regular); ``oracle`` computes everything on the built instance; ``both``
    does the latter and raises :class:`MismatchError` if the table
    disagrees.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    irreducible = len(d.circled) == 1
    match = None if irreducible else family_match(d)
    if mode == "pattern" and not irreducible:
        return ClassificationReport(d, _pattern_verdicts(match), match, _NO_WITNESSES,
                                    "pattern", seed)
    if irreducible:
        rep = pvcore.is_regular(pvcore.build_parabolic_pv(d), seed)
        verdicts = Verdicts(
            prehomogeneous=rep.prehomogeneous,
            regular=rep.regular,
            n_invariants=rep.n_fundamental_invariants,
            one_irreducible=rep.regular and rep.n_fundamental_invariants == 1,
            q_irreducible=rep.regular,
            completely_q_reducible=rep.regular,
        )
        witnesses = Witnesses(rep.generic_point.vector, None, rep.isotropy_dim,
                              rep.form_determinant)
        return ClassificationReport(d, verdicts, None, witnesses, mode, seed)
    verdicts, witnesses = _oracle_verdicts(d, seed)
    if mode == "both" and (match is not None) != verdicts.q_irreducible:
        raise MismatchError(d, match, verdicts, witnesses)
    return ClassificationReport(d, verdicts, match, witnesses, mode, seed)


def enumerate_reports(types: Iterable[SimpleType], mode: str = "both", seed: int = 0,
                      include_irreducible: bool = False) -> list[ClassificationReport]:
    """One report per circled subset of each type, in deterministic order.

    Subsets run by size then lexicographically; sizes start at 2 unless
    ``include_irreducible`` adds the single-circle diagrams first.
    """
    reports = []
    for t in types:
        nodes = range(1, t.rank + 1)
        low = 1 if include_irreducible else 2
        for size in range(low, t.rank + 1):
            for subset in itertools.combinations(nodes, size):
                reports.append(classify(WeightedDiagram(t, subset), mode, seed))
    return reports
