"""Actions on diagrams and normal forms.

* ``matrix_twist`` transforms a whole diagram by a matrix of positive
  determinant; ``translation_twist`` shifts the circled corner.
* ``normalize_divisors`` conjugates a diagram so that its first basis vector
  is divisible by m and its second by n, (m, n) the elementary divisors.
* ``choose_segments`` picks straight push segments for four given terminal
  classes, working from the bottom and top edges of F1 inwards.
* ``euclidean_equivalence`` is a bounded search for an affine conjugacy
  between the Euclidean parts of two diagrams.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .diagram import (
    ALL_DOTS,
    DotIndex,
    GreenSegment,
    PresentationDiagram,
    domain_coords,
    in_domain,
    serialize,
)
from .errors import DuplicateTerminalClass, NonPositiveDeterminant, NormalizationObstructed
from .geometry import segment_intersection
from .lattice import (
    IntVec2,
    Mat2,
    elementary_divisors,
    in_lattice,
    lattice_coords,
    residues,
    smith_decomposition,
    sphere_reduce,
)

MINUS_ONE = Mat2(-1, 0, 0, -1)


def matrix_twist(D, M):
    """Apply the linear map M to the whole diagram.

    Basis vectors and push terminals are multiplied by M; the selector and
    initial marked points, being expressed in the basis, do not change.
    """
    if M.det() <= 0:
        raise NonPositiveDeterminant(f"twist matrix {M} must have positive determinant")
    return PresentationDiagram(
        M @ D.lambda1,
        M @ D.lambda2,
        D.selector,
        tuple(GreenSegment(p.initial, M @ p.terminal) for p in D.pushes),
    )


def translation_twist(D, v):
    """Post-compose with the translation by ``v`` in Z^2.

    Only ``v mod 2`` matters; it is added to the selector in Z_2^2 (v read in
    standard coordinates, the selector in basis coordinates).
    """
    c1, c2 = D.selector
    return D.replace(selector=((c1 + v[0]) % 2, (c2 + v[1]) % 2))


def projective_canonical(D):
    """The smaller of D and -D, comparing serialized text."""
    neg = matrix_twist(D, MINUS_ONE)
    return min(D, neg, key=serialize)


def projective_equal(D1, D2):
    return serialize(projective_canonical(D1)) == serialize(projective_canonical(D2))


# ---------------------------------------------------------------------------
# elementary-divisor normal form


def _relocate(seg_start, seg_end, start_coords, basis):
    """Find a half-turn/translation of the new lattice moving the segment
    into F1.  ``start_coords`` are the basis coordinates of the start."""
    for dot in ALL_DOTS:
        target = (dot.i, dot.j)
        if (target[0] - start_coords[0]) % 2 or (target[1] - start_coords[1]) % 2:
            continue
        for sign in (1, -1):
            # gamma(x) = sign * x + 2 * mu with gamma(start) = dot
            half = ((target[0] - sign * start_coords[0]) // 2,
                    (target[1] - sign * start_coords[1]) // 2)
            mu = basis @ half
            end = IntVec2(sign * seg_end[0] + 2 * mu.x, sign * seg_end[1] + 2 * mu.y)
            if in_domain(end, basis):
                return GreenSegment(dot, end)
    return None


def normalize_divisors(D):
    """Conjugate D so that ``m | l1`` and ``n | l2``.

    With ``A = P diag(m, n) Q`` the new matrix is ``Q A Q^-1``; the selector
    and the segments are carried along by Q, and each segment is then moved
    back into the new domain by an element of the new lattice group.  Raises
    NormalizationObstructed when some segment has no such image.
    """
    A = D.matrix
    P, Q = smith_decomposition(A)
    if Q == Mat2.identity():
        return D
    Qinv = Q.unimodular_inverse()
    A2 = Q @ A @ Qinv
    sel = Q @ D.selector
    pushes = []
    for push in D.pushes:
        start, end = D.segment(push)
        start2, end2 = Q @ start, Q @ end
        coords = Q @ (push.initial.i, push.initial.j)
        moved = _relocate(start2, end2, coords, A2)
        if moved is None:
            raise NormalizationObstructed(
                f"push from {push.initial.token} maps to {tuple(start2)} -> "
                f"{tuple(end2)}, which has no lift inside the new domain"
            )
        pushes.append(moved)
    return PresentationDiagram(A2.col1, A2.col2, (sel.x % 2, sel.y % 2), tuple(pushes))


# ---------------------------------------------------------------------------
# choosing segments

_HALF = Fraction(1, 2)
# the four initial points in domain coordinates
_LOWER = ((DotIndex(0, 0), (Fraction(0), Fraction(0))), (DotIndex(1, 0), (_HALF, Fraction(0))))
_UPPER = ((DotIndex(0, 1), (Fraction(0), Fraction(1))), (DotIndex(1, 1), (_HALF, Fraction(1))))


def _in_left_half(s, t):
    if 0 < s < 1 and 0 < t < 1:
        return True
    if s == 0 and 0 <= t <= 1:
        return True
    return t in (0, 1) and 0 <= s <= _HALF


def domain_representative(x, basis):
    """Domain coordinates of the unique point of the class of x lying in
    the interior of F1 or the left half of its boundary."""
    s, t = domain_coords(x, basis)
    found = set()
    # the group acts on domain coordinates as (s, t) -> +-(s, t) + (a, 2b)
    for sign in (1, -1):
        s0 = (sign * s) % 1
        t0 = (sign * t) % 2
        if t0 <= 1 and _in_left_half(s0, t0):
            found.add((s0, t0))
    if len(found) != 1:
        raise AssertionError(f"class of {x} has representatives {found}")
    return found.pop()


def _meet(a0, a1, b0, b1):
    return bool(segment_intersection(a0, a1, b0, b1))


def _pick_pair(dots, remaining, key, assigned):
    """Attach free dots of one edge to points chosen by ``key``; swap the two
    terminals when the two new segments meet."""
    chosen = []
    for dot, pos in dots:
        if dot in assigned or not remaining:
            continue
        pt = min(remaining, key=key)
        remaining.remove(pt)
        assigned[dot] = pt
        chosen.append((dot, pos))
    if len(chosen) == 2:
        (d0, p0), (d1, p1) = chosen
        if _meet(p0, assigned[d0], p1, assigned[d1]):
            assigned[d0], assigned[d1] = assigned[d1], assigned[d0]


def choose_segments(basis, terminal_classes):
    """Straight push segments from 0, l1, l2, l1+l2 to the four classes.

    Terminals are first moved to the interior of F1 or the left half of its
    boundary.  Classes of marked points get trivial pushes.  Bottom-edge
    points attach to 0 (the nearest one) and then l1 (the one nearest to it);
    likewise on the top edge with l2 and l1+l2.  Remaining dots of the lower
    pair take the points of least l2-coordinate, those of the upper pair the
    points of greatest l2-coordinate; a crossing pair is exchanged for two
    opposite sides of the quadrilateral it spans.
    """
    if basis.det() <= 0:
        raise NonPositiveDeterminant(f"det {basis} is not positive")
    classes = [sphere_reduce(getattr(x, "mu", x), basis) for x in terminal_classes]
    if len(classes) != 4 or len(set(classes)) != 4:
        raise DuplicateTerminalClass(f"need four distinct terminal classes, got {classes}")
    pts = [domain_representative(c.mu, basis) for c in classes]

    assigned = {}
    for dot, pos in _LOWER + _UPPER:
        if pos in pts:
            assigned[dot] = pos
    remaining = [p for p in pts if p not in assigned.values()]

    for dots, edge in ((_LOWER, 0), (_UPPER, 1)):
        on_edge = sorted(p for p in remaining if p[1] == edge)
        (first, _), (second, _) = dots
        if on_edge and first not in assigned:
            assigned[first] = on_edge.pop(0)
            remaining.remove(assigned[first])
        if on_edge and second not in assigned:
            assigned[second] = on_edge.pop()
            remaining.remove(assigned[second])

    _pick_pair(_LOWER, remaining, lambda p: (p[1], p[0]), assigned)
    _pick_pair(_UPPER, remaining, lambda p: (-p[1], p[0]), assigned)
    assert not remaining and len(assigned) == 4

    l1x2, l2 = basis.col1.scale(2), basis.col2
    out = []
    for dot, _ in _LOWER + _UPPER:
        s, t = assigned[dot]
        x = s * l1x2.x + t * l2.x
        y = s * l1x2.y + t * l2.y
        out.append(GreenSegment(dot, IntVec2(int(x), int(y))))
    return tuple(out)


def presentation_from_classes(basis, selector, terminal_classes):
    """Diagram with the given basis and selector whose pushes are chosen by
    ``choose_segments``."""
    pushes = choose_segments(basis, terminal_classes)
    return PresentationDiagram(basis.col1, basis.col2, tuple(selector), pushes)


# ---------------------------------------------------------------------------
# equivalence of Euclidean data


@dataclass(frozen=True)
class Equivalent:
    C: Mat2
    d: IntVec2
    sign: int

    def __str__(self):
        return (
            f"equivalent: C = {[list(r) for r in self.C.rows()]}, "
            f"d = {tuple(self.d)}, sign = {self.sign:+d}"
        )


@dataclass(frozen=True)
class Distinct:
    reason: str

    def __str__(self):
        return f"distinct: {self.reason} differs"


@dataclass(frozen=True)
class Unknown:
    bound: int

    def __str__(self):
        return f"unknown: no conjugating matrix with entries bounded by {self.bound}"


def _sl2_candidates(bound):
    mats = [
        Mat2(*e)
        for e in product(range(-bound, bound + 1), repeat=4)
        if e[0] * e[3] - e[1] * e[2] == 1
    ]
    mats.sort(key=lambda M: (M != Mat2.identity(), max(map(abs, M)), sum(map(abs, M)), M))
    return mats


def witness_holds(D1, D2, C, d, sign):
    """Check ``Psi Phi Psi^-1 = sign * Phi' + 2*lambda`` for ``Psi(x) = Cx + d``
    with lambda in the lattice of D2."""
    A, b = D1.matrix, D1.translation
    A2, b2 = D2.matrix, D2.translation
    if C.det() != 1 or C @ A != (A2 if sign == 1 else -A2) @ C:
        return False
    lin = C @ A @ C.unimodular_inverse()
    rest = C @ b + d - lin @ d - b2.scale(sign)
    return rest.x % 2 == 0 and rest.y % 2 == 0 and in_lattice((rest.x // 2, rest.y // 2), A2)


def euclidean_equivalence(D1, D2, bound):
    """Search for an affine ``Psi(x) = Cx + d`` conjugating the affine map of
    D1 to plus or minus that of D2, up to a translation by twice the lattice
    of D2.

    Returns Distinct when an invariant (determinant, elementary divisors,
    absolute trace) differs, Equivalent with the first witness found in a
    fixed enumeration order, or Unknown when the bounded search fails.
    """
    A, A2 = D1.matrix, D2.matrix
    if A.det() != A2.det():
        return Distinct("determinant")
    if elementary_divisors(A) != elementary_divisors(A2):
        return Distinct("elementary divisors")
    if abs(A.trace()) != abs(A2.trace()):
        return Distinct("trace")
    b, b2 = D1.translation, D2.translation
    lattice2 = A2.scale(2)
    reps = sorted(residues(lattice2), key=lambda v: (abs(v.x) + abs(v.y), v))
    for C in _sl2_candidates(bound):
        CA = C @ A
        for sign in (1, -1):
            if CA != (A2 if sign == 1 else -A2) @ C:
                continue
            lin = A2 if sign == 1 else -A2
            base = C @ b - b2.scale(sign)
            for d in reps:
                rest = base + d - lin @ d
                if lattice_coords(rest, lattice2) is not None:
                    return Equivalent(C, d, sign)
    return Unknown(bound)
