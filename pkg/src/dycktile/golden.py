"""Frozen 8x8 reference matrices for the length-4, sign-0 basis.

Transcribed by hand from the worked example tables; every other matrix
fact is checked against enumeration, but these four are the bit-exact
anchor.  Both the test suite and `dycktile verify` compare against
them, so they live in the package rather than next to the tests.
"""

from dycktile.qpoly import ONE as one, ZERO as zero, PolyQ


def q(k):
    return PolyQ((0,) * k + (1,))


BASIS_4_0 = ["UUUU", "UUDD", "UDUD", "UDDU", "DUUD", "DUDU", "DDUU", "DDDD"]

M_4_0 = [
    [one, zero, zero, zero, zero, zero, zero, zero],
    [-q(1), one, zero, zero, zero, zero, zero, zero],
    [zero, -q(1), one, zero, zero, zero, zero, zero],
    [zero, zero, -q(1), one, zero, zero, zero, zero],
    [zero, zero, -q(1), zero, one, zero, zero, zero],
    [zero, -q(2), q(2), -q(1), -q(1), one, zero, zero],
    [-q(3), q(3), zero, zero, zero, -q(1), one, zero],
    [q(4), zero, zero, zero, zero, zero, -q(1), one],
]

M_INV_4_0 = [
    [one, zero, zero, zero, zero, zero, zero, zero],
    [q(1), one, zero, zero, zero, zero, zero, zero],
    [q(2), q(1), one, zero, zero, zero, zero, zero],
    [q(3), q(2), q(1), one, zero, zero, zero, zero],
    [q(3), q(2), q(1), zero, one, zero, zero, zero],
    [q(3) + q(4), q(2) + q(3), q(2), q(1), q(1), one, zero, zero],
    [q(3) + q(5), q(4), q(3), q(2), q(2), q(1), one, zero],
    [q(6), q(5), q(4), q(3), q(3), q(2), q(1), one],
]

N_4_0 = [
    [one, zero, zero, zero, zero, zero, zero, zero],
    [-q(1), one, zero, zero, zero, zero, zero, zero],
    [zero, -q(1), one, zero, zero, zero, zero, zero],
    [zero, zero, -q(1), one, zero, zero, zero, zero],
    [zero, zero, -q(1), zero, one, zero, zero, zero],
    [zero, -q(1), q(2), -q(1), -q(1), one, zero, zero],
    [-q(1), q(2), zero, zero, zero, -q(1), one, zero],
    [q(2), zero, zero, zero, zero, zero, -q(1), one],
]

N_INV_4_0 = [
    [one, zero, zero, zero, zero, zero, zero, zero],
    [q(1), one, zero, zero, zero, zero, zero, zero],
    [q(2), q(1), one, zero, zero, zero, zero, zero],
    [q(3), q(2), q(1), one, zero, zero, zero, zero],
    [q(3), q(2), q(1), zero, one, zero, zero, zero],
    [q(2) + q(4), q(1) + q(3), q(2), q(1), q(1), one, zero, zero],
    [q(1) + q(5), q(4), q(3), q(2), q(2), q(1), one, zero],
    [q(6), q(5), q(4), q(3), q(3), q(2), q(1), one],
]
