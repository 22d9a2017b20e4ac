"""Signed incidence matrices on a fixed-sign word basis, and their inverses.

Fix a length n and a sign epsilon.  Entry (lam, mu) of the matrix is
the flip weight of the unique arc subset S of mu with flip(mu, S) =
lam, and zero when no subset works.  Kind "I" uses the size-sensitive
weight, kind "II" the size-blind one.  Both matrices are
lower-unitriangular in the basis order of enumerate_type_d (highest
word first), because flips only move words downward.

The uniqueness of S is an assumption the definition leans on; build()
checks it exhaustively while filling each column (arc sets are small,
at most L/2 arcs).  Inversion is exact forward substitution over
PolyQ followed by an internal product check.  Inverse entries only
hold nonnegative coefficients; that positivity is re-proved downstream
by the tiling bridge and asserted in the tests, not here.
"""

from __future__ import annotations

import csv
import io
import itertools
from dataclasses import dataclass
from functools import cached_property

from .linkflip import pair_arcs, flip, weight_I, weight_II
from .pathword import PathWord, enumerate_type_d
from .qpoly import ONE, ZERO, PolyQ


@dataclass(frozen=True)
class IncidenceMatrix:
    basis: tuple[PathWord, ...]
    entries: tuple[tuple[PolyQ, ...], ...]  # entries[row][col]

    @cached_property
    def _index(self) -> dict[str, int]:
        return {w.steps: k for k, w in enumerate(self.basis)}

    @property
    def size(self) -> int:
        return len(self.basis)

    def entry(self, lam: PathWord, mu: PathWord) -> PolyQ:
        """Entry in row lam, column mu."""
        try:
            i = self._index[lam.steps]
            j = self._index[mu.steps]
        except KeyError as exc:
            raise ValueError("word %s is not in the basis" % exc.args[0])
        return self.entries[i][j]

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "basis": [w.steps for w in self.basis],
            "entries": [[p.to_json() for p in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "IncidenceMatrix":
        basis = tuple(PathWord(s) for s in data["basis"])
        entries = tuple(
            tuple(PolyQ.from_json(p) for p in row) for row in data["entries"]
        )
        return cls(basis, entries)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + [w.steps for w in self.basis])
        for w, row in zip(self.basis, self.entries):
            writer.writerow([w.steps] + [str(p) for p in row])
        return buf.getvalue()

    def to_latex(self) -> str:
        lines = ["\\begin{pmatrix}"]
        for row in self.entries:
            lines.append(" & ".join(_latex_poly(p) for p in row) + r" \\")
        lines.append("\\end{pmatrix}")
        return "\n".join(lines)

    def to_text(self) -> str:
        cells = [[str(p) for p in row] for row in self.entries]
        labels = [w.steps for w in self.basis]
        width = max(
            max(len(c) for row in cells for c in row),
            max(len(s) for s in labels),
        )
        head = " " * width + "  " + "  ".join(s.rjust(width) for s in labels)
        lines = [head]
        for label, row in zip(labels, cells):
            lines.append(label.rjust(width) + "  " + "  ".join(c.rjust(width) for c in row))
        return "\n".join(lines)


def _latex_poly(p: PolyQ) -> str:
    if not p:
        return "0"
    parts = []
    for i, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if i == 0:
            term = str(mag)
        else:
            var = "q" if i == 1 else "q^{%d}" % i
            term = var if mag == 1 else "%d%s" % (mag, var)
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+" if c > 0 else "-") + term)
    return "".join(parts)


def build(n: int, epsilon: int, kind: str) -> IncidenceMatrix:
    """The incidence matrix of the length-n sign-epsilon basis."""
    if kind not in ("I", "II"):
        raise ValueError("kind must be 'I' or 'II', got %r" % (kind,))
    weigh = weight_I if kind == "I" else weight_II
    basis = tuple(enumerate_type_d(n, epsilon))
    index = {w.steps: k for k, w in enumerate(basis)}
    size = len(basis)
    grid: list[list[PolyQ]] = [[ZERO] * size for _ in range(size)]
    for j, mu in enumerate(basis):
        arcs = pair_arcs(mu).all_arcs()
        for k in range(len(arcs) + 1):
            for S in itertools.combinations(arcs, k):
                lam = flip(mu, S)
                i = index[lam.steps]  # flips preserve the sign
                assert grid[i][j] == ZERO, (
                    "two flip subsets of %s give %s" % (mu.steps, lam.steps)
                )
                grid[i][j] = weigh(mu, S)
    return IncidenceMatrix(basis, tuple(tuple(row) for row in grid))


def invert(m: IncidenceMatrix) -> IncidenceMatrix:
    """Exact inverse of a lower-unitriangular matrix."""
    size = m.size
    for k in range(size):
        if m.entries[k][k] != ONE:
            raise ValueError("matrix is not unitriangular at %s" % m.basis[k].steps)
    inv: list[list[PolyQ]] = [[ZERO] * size for _ in range(size)]
    for j in range(size):
        inv[j][j] = ONE
        for i in range(j + 1, size):
            acc = ZERO
            for k in range(j, i):
                if m.entries[i][k] and inv[k][j]:
                    acc = acc + m.entries[i][k] * inv[k][j]
            inv[i][j] = -acc
    out = IncidenceMatrix(m.basis, tuple(tuple(row) for row in inv))
    _assert_product_is_identity(m, out)
    return out


def _assert_product_is_identity(a: IncidenceMatrix, b: IncidenceMatrix) -> None:
    size = a.size
    for i in range(size):
        for j in range(size):
            acc = ZERO
            for k in range(size):
                if a.entries[i][k] and b.entries[k][j]:
                    acc = acc + a.entries[i][k] * b.entries[k][j]
            expect = ONE if i == j else ZERO
            assert acc == expect, "product check failed at (%d, %d)" % (i, j)
