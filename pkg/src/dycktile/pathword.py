"""Lattice path words over the step alphabet {U, D}.

A word encodes a path from the origin: U raises the height by one, D
lowers it by one.  Everything else in the package is parameterized by
pairs of such words, so this module owns the height function, the
Dyck/ballot classification, the sign epsilon that splits each length
into two bases, the dominance order ("mu is weakly above lambda"), the
basis enumeration used by the incidence matrices, and the chord
structure of Dyck words.

The sign of a length-L word ending at height h is the epsilon in
{0, 1} with h = L + 2*epsilon (mod 4); the two signs partition all
2^L words of a given length.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator


@dataclass(frozen=True)
class PathWord:
    """An immutable step word; the empty word is a valid Dyck path."""

    steps: str = ""

    def __post_init__(self):
        bad = set(self.steps) - {"U", "D"}
        if bad:
            raise ValueError("steps must be over {U, D}, got %r" % "".join(sorted(bad)))

    @property
    def length(self) -> int:
        return len(self.steps)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Heights h(0..L) with h(0) = 0."""
        hs = [0]
        for s in self.steps:
            hs.append(hs[-1] + (1 if s == "U" else -1))
        return tuple(hs)

    def height(self, i: int) -> int:
        return self.heights[i]

    @property
    def end_height(self) -> int:
        return self.heights[-1]

    @property
    def epsilon(self) -> int:
        """Sign epsilon with end height = length + 2 epsilon (mod 4)."""
        return ((self.end_height - self.length) // 2) % 2

    def concat(self, other: "PathWord") -> "PathWord":
        return PathWord(self.steps + other.steps)

    def mirror(self) -> "PathWord":
        """Left-right reversal with U and D exchanged."""
        swap = {"U": "D", "D": "U"}
        return PathWord("".join(swap[s] for s in reversed(self.steps)))

    def __str__(self) -> str:
        return self.steps

    def __len__(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class Classification:
    is_dyck: bool
    is_ballot: bool
    epsilon: int
    end_height: int


@dataclass(frozen=True)
class Chord:
    """A matched U-D pair of a Dyck word, 1-based step indices."""

    open: int
    close: int
    length: int


def classify(w: PathWord) -> Classification:
    """Dyck/ballot flags and the type-D sign of a word.

    A ballot word stays weakly above height zero; a Dyck word is a
    ballot word that returns to zero.
    """
    ballot = min(w.heights) >= 0
    return Classification(
        is_dyck=ballot and w.end_height == 0,
        is_ballot=ballot,
        epsilon=w.epsilon,
        end_height=w.end_height,
    )


def is_above(mu: PathWord, lam: PathWord) -> bool:
    """True iff mu is weakly above lam at every vertex."""
    if mu.length != lam.length:
        raise ValueError(
            "words must have equal length, got %d and %d" % (mu.length, lam.length)
        )
    return all(hm >= hl for hm, hl in zip(mu.heights, lam.heights))


def all_words(n: int) -> Iterator[PathWord]:
    """All 2^n words of length n, lexicographic with U before D."""
    for steps in itertools.product("UD", repeat=n):
        yield PathWord("".join(steps))


def enumerate_type_d(n: int, epsilon: int) -> list[PathWord]:
    """The length-n sign-epsilon basis, highest path first.

    Lexicographic order with U before D starts at U...U (the highest
    path of the sign-0 basis) and ends at the lowest path.
    """
    if n < 1:
        raise ValueError("basis needs n >= 1, got %d" % n)
    if epsilon not in (0, 1):
        raise ValueError("epsilon must be 0 or 1, got %r" % (epsilon,))
    return [w for w in all_words(n) if w.epsilon == epsilon]


def dyck_words(n: int) -> list[PathWord]:
    """All Dyck words of length n (empty list when n is odd)."""
    return [w for w in all_words(n) if classify(w).is_dyck]


def truncate_last(w: PathWord) -> PathWord:
    """Drop the final step."""
    if w.length == 0:
        raise ValueError("cannot truncate the empty word")
    return PathWord(w.steps[:-1])


def chords(w: PathWord) -> tuple[Chord, ...]:
    """The U-D matching of a Dyck word, sorted by opening index.

    The length of a chord is one plus the number of chords strictly
    nested inside it.
    """
    if not classify(w).is_dyck:
        raise ValueError("chords are defined for Dyck words, got %r" % w.steps)
    stack: list[int] = []
    pairs: list[tuple[int, int]] = []
    for i, s in enumerate(w.steps, start=1):
        if s == "U":
            stack.append(i)
        else:
            pairs.append((stack.pop(), i))
    out = []
    for o, c in pairs:
        inside = sum(1 for o2, c2 in pairs if o < o2 and c2 < c)
        out.append(Chord(o, c, 1 + inside))
    return tuple(sorted(out, key=lambda ch: ch.open))
