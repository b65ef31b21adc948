"""The affine map of a diagram, slope pullback and matrix reconstruction.

Slopes are measured in the basis ``(l1, l2)``: the slope ``p/q``
corresponds to the direction ``q*l1 + p*l2``.  Infinity is ``p/q = 1/0``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NonIntegralResult, SingularInput
from .lattice import IntVec2, Mat2, primitive_part, solve


@dataclass(frozen=True, order=True)
class ExtendedSlope:
    """Reduced fraction ``p/q`` with ``q >= 0``; ``(1, 0)`` is infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        g = gcd(p, q)
        p, q = p // g, q // g
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text.lower() in ("inf", "infinity", "oo", "1/0"):
            return cls(1, 0)
        if "/" in text:
            p, q = text.split("/", 1)
            return cls(int(p), int(q))
        return cls(int(text), 1)

    @property
    def is_infinite(self):
        return self.q == 0

    def direction(self):
        """Coordinates ``(q, p)`` of the direction in the (l1, l2) basis."""
        return IntVec2(self.q, self.p)

    def __str__(self):
        if self.q == 0:
            return "inf"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


ZERO = ExtendedSlope(0, 1)
INFINITY = ExtendedSlope(1, 0)


@dataclass(frozen=True)
class Affine:
    """``x -> A x + b`` with b one of the corners 0, l1, l2, l1+l2."""

    A: Mat2
    b: IntVec2

    def __call__(self, x):
        return self.A @ x + self.b

    @property
    def is_linear(self):
        return self.b == (0, 0)


def affine_of(D):
    return Affine(D.matrix, D.translation)


def degree(D):
    return D.matrix.det()


def preimage_slope(A, s):
    """Slope of the preimage components of a curve of slope s, with the
    degree by which they map onto it.

    With ``u`` the direction of s, ``A^-1 u`` scaled to a primitive integer
    vector gives the preimage direction; the scale factor is the degree.
    """
    w = solve(A, s.direction())
    v, k = primitive_part(w)
    assert k.denominator == 1
    return ExtendedSlope(v.y, v.x), int(k)


def matrix_from_pullback_data(s0, d, sinf, e):
    """Rebuild the presentation matrix, up to sign, from pullback data.

    ``s0, d`` are the preimage slope and degree for slope 0; ``sinf, e``
    those for slope infinity.  The result has a positive top-left entry, or
    when that is zero, a positive lower-left entry.
    """
    q, p = s0.q, s0.p
    s, r = sinf.q, sinf.p
    B = [[Fraction(q, d), Fraction(s, e)], [Fraction(p, d), Fraction(r, e)]]
    D = B[0][0] * B[1][1] - B[0][1] * B[1][0]
    if D == 0:
        raise SingularInput(f"slopes {s0} and {sinf} give a singular matrix")
    if D < 0:
        B[0][1], B[1][1], D = -B[0][1], -B[1][1], -D
    inv = [B[1][1] / D, -B[0][1] / D, -B[1][0] / D, B[0][0] / D]
    if any(x.denominator != 1 for x in inv):
        raise NonIntegralResult(
            f"inverse {[str(x) for x in inv]} is not integral; the pullback "
            "data is inconsistent"
        )
    A = Mat2(*(int(x) for x in inv))
    if A.a < 0 or (A.a == 0 and A.c < 0):
        A = -A
    return A
