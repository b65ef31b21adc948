"""Exact 2x2 integer lattice algebra.

Everything here works on Python ints (unbounded) and ``Fraction``; no
fixed-width arithmetic is used anywhere, since repeated twisting grows
matrix entries without bound.

A matrix used as a presentation matrix has the basis vectors as its
*columns*: ``Mat2.from_columns(l1, l2)`` is ``[l1 l2]``.
"""

from fractions import Fraction
from math import gcd
from typing import NamedTuple

from .errors import NonPositiveDeterminant, SingularMatrix, ZeroVector


class IntVec2(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return IntVec2(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return IntVec2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return IntVec2(-self.x, -self.y)

    def scale(self, k):
        return IntVec2(k * self.x, k * self.y)

    def mod2(self):
        return (self.x % 2, self.y % 2)


class RatVec2(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x, y):
        return cls(Fraction(x), Fraction(y))


class Mat2(NamedTuple):
    """Row-major 2x2 matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def from_columns(cls, col1, col2):
        return cls(col1[0], col2[0], col1[1], col2[1])

    @classmethod
    def identity(cls):
        return cls(1, 0, 0, 1)

    @classmethod
    def diag(cls, p, q):
        return cls(p, 0, 0, q)

    @property
    def col1(self):
        return IntVec2(self.a, self.c)

    @property
    def col2(self):
        return IntVec2(self.b, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def adjugate(self):
        return Mat2(self.d, -self.b, -self.c, self.a)

    def __neg__(self):
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k):
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __matmul__(self, other):
        if isinstance(other, Mat2):
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
            )
        x, y = other
        vec = RatVec2 if isinstance(other, RatVec2) else IntVec2
        return vec(self.a * x + self.b * y, self.c * x + self.d * y)

    def unimodular_inverse(self):
        """Inverse of a matrix with determinant +-1, as an integer matrix."""
        D = self.det()
        if D not in (1, -1):
            raise ValueError(f"matrix {self} is not unimodular")
        adj = self.adjugate()
        return adj if D == 1 else -adj

    def rows(self):
        return ((self.a, self.b), (self.c, self.d))


class Divisors(NamedTuple):
    """Elementary divisors ``(m, n)`` in the *n divides m* convention.

    ``m * n == |det|``; the Smith form is ``diag(m, n)`` with the larger
    invariant first, so pictures of the fundamental domain come out wide.
    """

    m: int
    n: int


class SpherePoint(NamedTuple):
    """Canonical representative of a class of Z^2 under x -> +-x + 2*Lambda."""

    mu: IntVec2
    basis: Mat2


def det(M):
    return M.det()


def solve(M, v):
    """Return ``M^-1 v`` as a RatVec2."""
    D = M.det()
    if D == 0:
        raise SingularMatrix(f"matrix {M} is singular")
    adj = M.adjugate()
    x, y = adj @ (v[0], v[1])
    return RatVec2(Fraction(x, D), Fraction(y, D))


def lattice_coords(v, basis):
    """Integer coordinates of ``v`` in the column basis, or None."""
    D = basis.det()
    if D == 0:
        raise SingularMatrix(f"matrix {basis} is singular")
    x, y = basis.adjugate() @ (v[0], v[1])
    if x % D or y % D:
        return None
    return IntVec2(x // D, y // D)


def in_lattice(v, basis):
    return lattice_coords(v, basis) is not None


def content(*entries):
    g = 0
    for e in entries:
        g = gcd(g, e)
    return g


def elementary_divisors(M):
    D = M.det()
    if D == 0:
        raise SingularMatrix(f"matrix {M} is singular")
    n = content(*M)
    return Divisors(abs(D) // n, n)


def _smith_reduce(M):
    """Return ``(U, V, d1, d2)`` with ``U @ M @ V == diag(d1, d2)``.

    U and V are unimodular (determinant +-1), ``d1 | d2`` and both are
    nonnegative.  Plain row/column gcd elimination.
    """
    S = [[M.a, M.b], [M.c, M.d]]
    U = [[1, 0], [0, 1]]
    V = [[1, 0], [0, 1]]

    def swap_rows():
        S.reverse()
        U.reverse()

    def swap_cols():
        for X in (S, V):
            for row in X:
                row.reverse()

    def add_row(dst, src, k):
        for X in (S, U):
            X[dst] = [X[dst][i] + k * X[src][i] for i in range(2)]

    def add_col(dst, src, k):
        for X in (S, V):
            for row in X:
                row[dst] += k * row[src]

    while any(S[0] + S[1]):
        i, j = min(
            ((i, j) for i in range(2) for j in range(2) if S[i][j]),
            key=lambda ij: (abs(S[ij[0]][ij[1]]), ij),
        )
        if i:
            swap_rows()
        if j:
            swap_cols()
        p = S[0][0]
        add_row(1, 0, -(S[1][0] // p))
        add_col(1, 0, -(S[0][1] // p))
        if S[1][0] or S[0][1]:
            continue
        if S[1][1] % p:
            add_row(0, 1, 1)
            continue
        break

    for r in range(2):
        if S[r][r] < 0:
            S[r] = [-e for e in S[r]]
            U[r] = [-e for e in U[r]]
    return (
        Mat2(U[0][0], U[0][1], U[1][0], U[1][1]),
        Mat2(V[0][0], V[0][1], V[1][0], V[1][1]),
        S[0][0],
        S[1][1],
    )


_QUARTER_TURN = Mat2(0, -1, 1, 0)
_FLIP = Mat2(1, 0, 0, -1)


def smith_decomposition(M):
    """Factor ``M = P @ diag(m, n) @ Q`` with ``det P == det Q == 1``.

    ``(m, n)`` are the elementary divisors of M.  When the columns of M are
    already divisible by m and n respectively, Q is the identity.
    """
    D = M.det()
    if D <= 0:
        raise NonPositiveDeterminant(f"det {M} = {D} is not positive")
    m, n = elementary_divisors(M)
    c1, c2 = M.col1, M.col2
    if c1.x % m == 0 and c1.y % m == 0 and c2.x % n == 0 and c2.y % n == 0:
        P = Mat2.from_columns((c1.x // m, c1.y // m), (c2.x // n, c2.y // n))
        return P, Mat2.identity()

    U, V, d1, d2 = _smith_reduce(M)
    assert (d2, d1) == (m, n)
    # diag(n, m) = J diag(m, n) J^-1 with J a quarter turn.
    P = U.unimodular_inverse() @ _QUARTER_TURN
    Q = _QUARTER_TURN.unimodular_inverse() @ V.unimodular_inverse()
    if P.det() < 0:
        P, Q = P @ _FLIP, _FLIP @ Q
    return P, Q


def primitive_part(w):
    """Scale a nonzero rational vector to a primitive integer vector.

    Returns ``(v, k)`` with ``k > 0`` and ``k * w == +-v``; the sign of v is
    fixed so that its first nonzero coordinate is positive.
    """
    x, y = Fraction(w[0]), Fraction(w[1])
    if x == 0 and y == 0:
        raise ZeroVector("primitive_part of the zero vector")
    den = x.denominator * y.denominator // gcd(x.denominator, y.denominator)
    X, Y = int(x * den), int(y * den)
    g = gcd(X, Y)
    X, Y = X // g, Y // g
    k = Fraction(den, g)
    if X < 0 or (X == 0 and Y < 0):
        X, Y = -X, -Y
    return IntVec2(X, Y), k


def _torus_reduce(mu, basis, D):
    # floor(t / 2) with t = basis^-1 mu, computed as integer floor division
    ax, ay = basis.adjugate() @ mu
    kx, ky = ax // (2 * D), ay // (2 * D)
    return IntVec2(
        mu[0] - 2 * (basis.a * kx + basis.b * ky),
        mu[1] - 2 * (basis.c * kx + basis.d * ky),
    )


def sphere_reduce(mu, basis):
    """Canonical representative of ``mu`` modulo ``x -> +-x + 2*Lambda``.

    Lambda is spanned by the columns of ``basis``.  Both mu and -mu are
    reduced into the half-open parallelogram spanned by twice the basis
    and the lexicographically smaller result is kept.
    """
    D = basis.det()
    if D <= 0:
        raise NonPositiveDeterminant(f"det {basis} = {D} is not positive")
    mu = IntVec2(*mu)
    u = _torus_reduce(mu, basis, D)
    v = _torus_reduce(-mu, basis, D)
    return SpherePoint(min(u, v), basis)


def residues(basis):
    """A complete residue system of Z^2 modulo the lattice of ``basis``.

    Uses an upper triangular basis ``(a, 0), (b, c)`` of the lattice, so the
    residues are ``{(x, y) : 0 <= x < a, 0 <= y < c}``.
    """
    D = abs(basis.det())
    if D == 0:
        raise SingularMatrix(f"matrix {basis} is singular")
    # second coordinates of the lattice form c*Z; the lattice meets the
    # x-axis in a*Z with a*c == |det|
    c = gcd(basis.c, basis.d)
    a = D // c
    return [IntVec2(x, y) for y in range(c) for x in range(a)]

