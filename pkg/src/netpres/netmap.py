"""Finite dynamics of the map presented by a diagram.

The map is ``f = h o g``: g is induced by ``x -> A x + b`` on the quotient
sphere of the lattice spanned by the basis, h pushes each marked point along
its segment.  Only the action on the four push terminals P is needed.

Marked points of the sphere are labelled by the parity of their
(l1, l2)-coordinates.  A terminal t in standard coordinates is sent by g to
the marked point whose coordinates are ``t + c`` (c the translation
selector), so its label is ``(t + c) mod 2``.
"""

from dataclasses import dataclass
from itertools import permutations

from .errors import InternalInconsistency
from .lattice import elementary_divisors, in_lattice, sphere_reduce

PARITIES = ((0, 0), (1, 0), (0, 1), (1, 1))


def terminal_points(D):
    """Sphere classes of the four push terminals, in push order."""
    A = D.matrix
    return tuple(sphere_reduce(p.terminal, A) for p in D.pushes)


def critical_value_classes(D):
    """Labels of the marked points that are critical values of g.

    The critical points of g are the classes of Z^2 outside ``A Z^2``; the
    label of the image of mu is ``(mu + c) mod 2``.  Label rho is missed
    exactly when the whole coset ``(rho - c) + 2 Z^2`` lies in ``A Z^2``.
    """
    A = D.matrix
    c1, c2 = D.selector
    even_inside = in_lattice((2, 0), A) and in_lattice((0, 2), A)
    out = []
    for rho in PARITIES:
        r = ((rho[0] - c1) % 2, (rho[1] - c2) % 2)
        if not (even_inside and in_lattice(r, A)):
            out.append(rho)
    return tuple(sorted(out))


def _label(t, selector):
    return ((t[0] + selector[0]) % 2, (t[1] + selector[1]) % 2)


def map_on_P(D):
    """The map f restricted to the terminal classes, as a dict."""
    A = D.matrix
    P = terminal_points(D)
    image_of_label = {}
    for push, point in zip(D.pushes, P):
        image_of_label[push.initial.parity] = point
    out = {}
    for push, point in zip(D.pushes, P):
        label = _label(push.terminal, D.selector)
        if label not in image_of_label:
            raise InternalInconsistency(f"no push starts in class {label}")
        out[point] = image_of_label[label]
    assert set(out.values()) <= set(out) and len(out) == 4, A
    return out


@dataclass(frozen=True)
class Portrait:
    points: tuple
    edges: dict
    cv_classes: tuple
    critical_values: frozenset
    postcritical: frozenset

    @property
    def is_net(self):
        return len(self.postcritical) == 4

    def cycles(self):
        """Cycle lengths of the map on P, sorted (points not on a cycle are
        ignored)."""
        seen, lengths = set(), []
        for x in self.points:
            orbit = []
            while x not in orbit:
                orbit.append(x)
                x = self.edges[x]
            cyc = orbit[orbit.index(x):]
            if not seen & set(cyc):
                lengths.append(len(cyc))
                seen |= set(cyc)
        return sorted(lengths)


def portrait(D):
    edges = map_on_P(D)
    P = terminal_points(D)
    by_label = {p.initial.parity: pt for p, pt in zip(D.pushes, P)}
    cv_classes = critical_value_classes(D)
    cvs = frozenset(by_label[rho] for rho in cv_classes)
    post = set(cvs)
    frontier = list(cvs)
    while frontier:
        y = edges[frontier.pop()]
        if y not in post:
            post.add(y)
            frontier.append(y)
    return Portrait(P, edges, cv_classes, cvs, frozenset(post))


def is_net(D):
    return portrait(D).is_net


def portraits_isomorphic(a, b):
    """Whether some bijection of the points carries edges to edges and
    critical values to critical values."""
    if len(a.critical_values) != len(b.critical_values):
        return False
    for image in permutations(b.points):
        sigma = dict(zip(a.points, image))
        if all(sigma[a.edges[x]] == b.edges[sigma[x]] for x in a.points) and {
            sigma[x] for x in a.critical_values
        } == set(b.critical_values):
            return True
    return False


def portrait_json(D):
    """Schema-stable dictionary for ``info --json``."""
    pt = portrait(D)
    m, n = elementary_divisors(D.matrix)
    return {
        "degree": D.matrix.det(),
        "m": m,
        "n": n,
        "is_net": pt.is_net,
        "postcritical_count": len(pt.postcritical),
        "cv_classes": [list(c) for c in pt.cv_classes],
        "edges": [
            {"from": list(x.mu), "to": list(pt.edges[x].mu)} for x in pt.points
        ],
    }
