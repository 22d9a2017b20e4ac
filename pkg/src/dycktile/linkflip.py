"""Arc pairings of a word, letter flips with weights, and link patterns.

The pairing of a word w works in rounds.  First every U that finds a
later matching D is joined to it by a simple arc (iterated adjacent-UD
cancellation, which is ordinary bracket matching with U opening and D
closing).  What survives is a block of D's followed by a block of U's.
The leftover U's are then joined in adjacent pairs starting from the
right end by dashed arcs; an odd count leaves the leftmost U unpaired.

A flip rewrites w along a subset S of its arcs: a simple arc (i, j)
swaps its letters U...D -> D...U, a dashed arc turns both U's into D's.
Flips carry multiplicative weights; with L the word length and
m = (j - i + 1)/2 the arc size, the first weight is -q^m for a simple
arc and -q^(m + r - 1), r = L - j + 1, for a dashed arc, while the
second weight is -q per arc of either kind.  These weights are the
entries of the two incidence matrices.

A link pattern completes the picture: prepend one U for every unpaired
letter (positions 0, -1, -2, ... so the original word keeps 1..L),
re-run the pairing on the extended word (now everything pairs), and if
the last letter of w is a D, re-flag its arc as dashed.  Outer arcs are
those not strictly nested inside another arc; every dashed arc is
outer.  Each dashed arc collects an arrow chain: the non-dashed outer
arcs strictly between it and the nearest dashed arc on its left (or
the start of the word), listed right to left.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .pathword import PathWord
from .qpoly import ONE, PolyQ

Arc = tuple[int, int]


@dataclass(frozen=True)
class ArcSet:
    simple_arcs: frozenset[Arc]
    dashed_arcs: frozenset[Arc]
    unpaired_d: tuple[int, ...]
    unpaired_u: tuple[int, ...]

    def all_arcs(self) -> tuple[Arc, ...]:
        """Every arc, sorted by opening index."""
        return tuple(sorted(self.simple_arcs | self.dashed_arcs))

    def __contains__(self, arc: Arc) -> bool:
        return arc in self.simple_arcs or arc in self.dashed_arcs


def arc_size(arc: Arc) -> int:
    i, j = arc
    size, rem = divmod(j - i + 1, 2)
    assert rem == 0 and size > 0, "malformed arc %r" % (arc,)
    return size


def _pair_positions(positions: Sequence[int], letters: Sequence[str]):
    """Bracket matching plus right-to-left pairing of leftover U's.

    Returns (simple, dashed, unpaired_d, unpaired_u) over the given
    position labels.
    """
    stack: list[int] = []
    simple: list[Arc] = []
    unpaired_d: list[int] = []
    for pos, s in zip(positions, letters):
        if s == "U":
            stack.append(pos)
        elif stack:
            simple.append((stack.pop(), pos))
        else:
            unpaired_d.append(pos)
    leftover = stack
    unpaired_u: list[int] = []
    if len(leftover) % 2:
        unpaired_u.append(leftover[0])
        leftover = leftover[1:]
    dashed = [(leftover[k], leftover[k + 1]) for k in range(0, len(leftover), 2)]
    return simple, dashed, unpaired_d, unpaired_u


def pair_arcs(w: PathWord) -> ArcSet:
    """The arc pairing of w, positions numbered 1..L."""
    simple, dashed, ud, uu = _pair_positions(range(1, w.length + 1), w.steps)
    return ArcSet(frozenset(simple), frozenset(dashed), tuple(ud), tuple(uu))


def flip(w: PathWord, arcs: Iterable[Arc]) -> PathWord:
    """Rewrite w along a subset of its arcs."""
    pairing = pair_arcs(w)
    letters = list(w.steps)
    for arc in arcs:
        i, j = arc
        if arc in pairing.simple_arcs:
            letters[i - 1] = "D"
            letters[j - 1] = "U"
        elif arc in pairing.dashed_arcs:
            letters[i - 1] = "D"
            letters[j - 1] = "D"
        else:
            raise ValueError("%r is not an arc of %s" % (arc, w.steps or "''"))
    return PathWord("".join(letters))


def weight_I(w: PathWord, arcs: Iterable[Arc]) -> PolyQ:
    """Size-sensitive flip weight: product of -q^m and -q^(m+r-1) factors."""
    pairing = pair_arcs(w)
    acc = ONE
    for arc in arcs:
        m = arc_size(arc)
        if arc in pairing.simple_arcs:
            acc = acc.scale_by_monomial(-1, m)
        elif arc in pairing.dashed_arcs:
            r = w.length - arc[1] + 1
            acc = acc.scale_by_monomial(-1, m + r - 1)
        else:
            raise ValueError("%r is not an arc of %s" % (arc, w.steps or "''"))
    return acc


def weight_II(w: PathWord, arcs: Iterable[Arc]) -> PolyQ:
    """Size-blind flip weight: -q per arc."""
    pairing = pair_arcs(w)
    acc = ONE
    for arc in arcs:
        if arc not in pairing:
            raise ValueError("%r is not an arc of %s" % (arc, w.steps or "''"))
        acc = acc.scale_by_monomial(-1, 1)
    return acc


@dataclass(frozen=True)
class ExtArc:
    """An arc of the extended word; open may be <= 0 (prepended U)."""

    open: int
    close: int
    dashed: bool

    @property
    def pair(self) -> Arc:
        return (self.open, self.close)


@dataclass(frozen=True)
class LinkPattern:
    word: PathWord
    prepended_u_count: int
    arcs: tuple[ExtArc, ...]

    def outer_arcs(self) -> tuple[ExtArc, ...]:
        """Arcs not strictly nested inside any other arc."""
        return tuple(
            a
            for a in self.arcs
            if not any(b.open < a.open and a.close < b.close for b in self.arcs)
        )

    def arrow_chains(self) -> tuple[tuple[ExtArc, ...], ...]:
        """One chain per dashed arc: (a0, a1, ..., am), a1.. right to left."""
        outer = self.outer_arcs()
        dashed = sorted((a for a in self.arcs if a.dashed), key=lambda a: a.open)
        chains = []
        prev_close: int | None = None
        for a0 in dashed:
            # everything strictly after the previous dashed arc, before a0
            members = [
                b
                for b in outer
                if not b.dashed
                and b.close < a0.open
                and (prev_close is None or b.open > prev_close)
            ]
            members.sort(key=lambda b: b.open, reverse=True)
            chains.append((a0, *members))
            prev_close = a0.close
        return tuple(chains)

    def to_json(self) -> dict:
        arcs = [
            {"open": a.open, "close": a.close, "dashed": a.dashed, "outer": a in set(self.outer_arcs())}
            for a in self.arcs
        ]
        index = {a: k for k, a in enumerate(self.arcs)}
        chains = [[index[a] for a in chain] for chain in self.arrow_chains()]
        return {
            "word": self.word.steps,
            "prepended_u_count": self.prepended_u_count,
            "arcs": arcs,
            "arrow_chains": chains,
        }


def link_pattern(w: PathWord) -> LinkPattern:
    """Extend w so everything pairs, then flag dashes, outers, arrows."""
    base = pair_arcs(w)
    p = len(base.unpaired_d) + len(base.unpaired_u)
    positions = list(range(1 - p, 1)) + list(range(1, w.length + 1))
    letters = "U" * p + w.steps
    simple, dashed, ud, uu = _pair_positions(positions, letters)
    assert not ud and not uu, "extension must pair every position"
    dashed_set = set(dashed)
    simple_set = set(simple)
    if w.steps and w.steps[-1] == "D":
        closing = [a for a in simple_set if a[1] == w.length]
        assert len(closing) == 1, "final D must close exactly one simple arc"
        simple_set.remove(closing[0])
        dashed_set.add(closing[0])
    arcs = tuple(
        ExtArc(i, j, (i, j) in dashed_set)
        for i, j in sorted(simple_set | dashed_set)
    )
    return LinkPattern(w, p, arcs)
