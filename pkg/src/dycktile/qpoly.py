"""Polynomials in the formal variable q with integer coefficients.

Everything downstream (tiling generating functions, incidence matrices,
tree factorizations) lives in Z[q], and the identities we verify demand
exact arithmetic, canonical equality, and a notion of exact division
that fails loudly when a claimed quotient does not exist.  That contract
is small enough that a coefficient tuple beats pulling in a CAS.

A polynomial is represented by an immutable tuple of ints, where index i
holds the coefficient of q^i and trailing zeros are stripped, so the
zero polynomial is the empty tuple and equal values always compare equal.

The classical q-analogues provided here:

    q_int(n)                   [n] = 1 + q + ... + q^(n-1)
    q_factorial(n)             [n]! = [1][2]...[n]
    q_double_factorial_even(m) [2m]!! = [2][4]...[2m]
    q_binomial(n, m)           [n]! / ([n-m]! [m]!)
    q2_binomial(n, m)          [2n]!! / ([2(n-m)]!! [2m]!!)

Both binomials are computed numerator-first and divided exactly once,
so an inexact division raises instead of silently truncating.
"""

from __future__ import annotations

from typing import Iterable, Iterator


class InexactDivisionError(ArithmeticError):
    """Raised when a polynomial quotient does not exist in Z[q]."""


class PolyQ:
    """An element of Z[q], hashable and canonical."""

    __slots__ = ("coeffs",)

    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = list(coeffs)
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(int(c) for c in cs))

    # -- basic structure ------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has -1."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        """Coefficient of q^i (zero when i is out of range)."""
        if i < 0:
            raise ValueError("exponents are nonnegative, got %d" % i)
        return self.coeffs[i] if i < len(self.coeffs) else 0

    def is_nonnegative(self) -> bool:
        """True when every coefficient is >= 0."""
        return all(c >= 0 for c in self.coeffs)

    def eval_at_one(self) -> int:
        """Value at q = 1, i.e. the sum of the coefficients."""
        return sum(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, PolyQ):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("PolyQ", self.coeffs))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return PolyQ(out)

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __sub__(self, other: "PolyQ") -> "PolyQ":
        return self + (-other)

    def __mul__(self, other: "PolyQ") -> "PolyQ":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return PolyQ(out)

    def scale_by_monomial(self, c: int, k: int) -> "PolyQ":
        """Multiply by c * q^k."""
        if k < 0:
            raise ValueError("monomial exponent must be >= 0, got %d" % k)
        if c == 0 or not self.coeffs:
            return ZERO
        return PolyQ((0,) * k + tuple(c * a for a in self.coeffs))

    def subs_q_power(self, k: int) -> "PolyQ":
        """Substitute q -> q^k (k >= 1)."""
        if k < 1:
            raise ValueError("power must be >= 1, got %d" % k)
        out = [0] * (k * len(self.coeffs))
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return PolyQ(out)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, data: dict) -> "PolyQ":
        return cls(data["coeffs"])

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                term = str(mag)
            else:
                var = "q" if i == 1 else "q^%d" % i
                term = var if mag == 1 else "%d%s" % (mag, var)
            if not parts:
                parts.append(term if c > 0 else "-" + term)
            else:
                parts.append(("+ " if c > 0 else "- ") + term)
        return " ".join(parts)

    def __repr__(self) -> str:
        return "PolyQ(%r)" % (self.coeffs,)


ZERO = PolyQ()
ONE = PolyQ((1,))
Q = PolyQ((0, 1))


def exact_div(num: PolyQ, den: PolyQ) -> PolyQ:
    """Exact quotient num / den in Z[q].

    Raises InexactDivisionError when den does not divide num (nonzero
    remainder, or a leading-coefficient division that leaves Z).
    """
    if not den:
        raise ValueError("division by the zero polynomial")
    if not num:
        return ZERO
    rem = list(num.coeffs)
    d = list(den.coeffs)
    lead = d[-1]
    if len(rem) < len(d):
        raise InexactDivisionError("%s does not divide %s" % (den, num))
    out = [0] * (len(rem) - len(d) + 1)
    for shift in range(len(out) - 1, -1, -1):
        c = rem[shift + len(d) - 1]
        if c % lead != 0:
            raise InexactDivisionError("%s does not divide %s" % (den, num))
        f = c // lead
        out[shift] = f
        if f:
            for j, dj in enumerate(d):
                rem[shift + j] -= f * dj
    if any(rem):
        raise InexactDivisionError("%s does not divide %s" % (den, num))
    return PolyQ(out)


def prod(factors: Iterable[PolyQ]) -> PolyQ:
    """Product of a sequence of polynomials (empty product is 1)."""
    acc = ONE
    for f in factors:
        acc = acc * f
    return acc


def q_int(n: int) -> PolyQ:
    """The q-integer [n] = 1 + q + ... + q^(n-1); [0] = 0."""
    if n < 0:
        raise ValueError("q_int needs n >= 0, got %d" % n)
    return PolyQ((1,) * n)


def q_factorial(n: int) -> PolyQ:
    """[n]! = [1][2]...[n], with [0]! = 1."""
    if n < 0:
        raise ValueError("q_factorial needs n >= 0, got %d" % n)
    return prod(q_int(i) for i in range(1, n + 1))


def q_double_factorial_even(m: int) -> PolyQ:
    """[2m]!! = [2][4]...[2m], with [0]!! = 1."""
    if m < 0:
        raise ValueError("q_double_factorial_even needs m >= 0, got %d" % m)
    return prod(q_int(2 * i) for i in range(1, m + 1))


def q_binomial(n: int, m: int) -> PolyQ:
    """Gaussian binomial [n choose m]_q, zero when m > n."""
    if n < 0 or m < 0:
        raise ValueError("q_binomial needs n, m >= 0")
    if m > n:
        return ZERO
    return exact_div(q_factorial(n), q_factorial(m) * q_factorial(n - m))


def q2_binomial(n: int, m: int) -> PolyQ:
    """Even-double-factorial binomial [2n]!! / ([2(n-m)]!! [2m]!!).

    Equals q_binomial(n, m) with q replaced by q^2.
    """
    if n < 0 or m < 0:
        raise ValueError("q2_binomial needs n, m >= 0")
    if m > n:
        return ZERO
    den = q_double_factorial_even(m) * q_double_factorial_even(n - m)
    return exact_div(q_double_factorial_even(n), den)
