"""Exact planar predicates on segments with integer or rational endpoints."""

from fractions import Fraction
from typing import NamedTuple


class Isometry(NamedTuple):
    """The plane isometry ``x -> sign * x + shift``."""

    sign: int
    shift: tuple

    def __call__(self, p):
        s = self.sign
        return (s * p[0] + self.shift[0], s * p[1] + self.shift[1])

    def inverse(self):
        if self.sign == 1:
            return Isometry(1, (-self.shift[0], -self.shift[1]))
        return self

    def is_identity(self):
        return self.sign == 1 and self.shift[0] == 0 and self.shift[1] == 0

    def fixes(self, p):
        return self(p) == (p[0], p[1])


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def _dot(u, v):
    return u[0] * v[0] + u[1] * v[1]


def _at(p, d, t):
    return (p[0] + t * d[0], p[1] + t * d[1])


def _norm(pt):
    return tuple(Fraction(c) if not isinstance(c, int) else c for c in pt)


def _on_segment(x, p, q):
    d = _sub(q, p)
    w = _sub(x, p)
    if cross(d, w) != 0:
        return False
    t = _dot(w, d)
    return 0 <= t <= _dot(d, d)


def segment_intersection(p, q, r, s):
    """Intersection of the closed segments ``[p, q]`` and ``[r, s]``.

    Returns ``()`` when disjoint, a 1-tuple with the crossing point, or a
    2-tuple with the endpoints of a collinear overlap.  Degenerate segments
    (``p == q``) are points.  All arithmetic is exact.
    """
    d1, d2 = _sub(q, p), _sub(s, r)
    if d1 == (0, 0) and d2 == (0, 0):
        return (tuple(p),) if tuple(p) == tuple(r) else ()
    if d1 == (0, 0):
        return (tuple(p),) if _on_segment(p, r, s) else ()
    if d2 == (0, 0):
        return (tuple(r),) if _on_segment(r, p, q) else ()

    rp = _sub(r, p)
    denom = cross(d1, d2)
    if denom != 0:
        t = Fraction(cross(rp, d2), denom)
        u = Fraction(cross(rp, d1), denom)
        if 0 <= t <= 1 and 0 <= u <= 1:
            return (_norm(_at(p, d1, t)),)
        return ()
    if cross(rp, d1) != 0:
        return ()
    L = _dot(d1, d1)
    t0 = Fraction(_dot(rp, d1), L)
    t1 = Fraction(_dot(_sub(s, p), d1), L)
    lo, hi = max(min(t0, t1), 0), min(max(t0, t1), 1)
    if lo > hi:
        return ()
    if lo == hi:
        return (_norm(_at(p, d1, lo)),)
    return (_norm(_at(p, d1, lo)), _norm(_at(p, d1, hi)))


def clip_to_unit_square(a, b):
    """Clip the segment ``[a, b]`` (in rational coordinates) to ``[0,1]^2``.

    Liang-Barsky with exact arithmetic; returns the clipped endpoints or
    None when the intersection is empty.
    """
    t0, t1 = Fraction(0), Fraction(1)
    dx, dy = b[0] - a[0], b[1] - a[1]
    for p, q in ((-dx, a[0]), (dx, 1 - a[0]), (-dy, a[1]), (dy, 1 - a[1])):
        if p == 0:
            if q < 0:
                return None
            continue
        r = Fraction(q) / p
        if p < 0:
            t0 = max(t0, r)
        else:
            t1 = min(t1, r)
        if t0 > t1:
            return None
    return (a[0] + t0 * dx, a[1] + t0 * dy), (a[0] + t1 * dx, a[1] + t1 * dy)
