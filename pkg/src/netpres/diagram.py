"""Presentation diagrams: data model, text format and validation.

A diagram is a lattice basis ``(l1, l2)`` of a sublattice of Z^2, a circled
corner ``b = c1*l1 + c2*l2`` with ``(c1, c2)`` in {0,1}^2, and four push
segments.  Each push starts at one of the six marked lattice points
``i*l1 + j*l2`` (``0 <= i <= 2``, ``0 <= j <= 1``) of the fundamental
parallelogram F1 spanned by ``2*l1`` and ``l2`` and ends at an integer
point of F1.

File format (line oriented, ``#`` starts a comment)::

    netmap v1
    lambda1 = (0, -1)
    lambda2 = (2, 1)
    translate = l2
    push 0 -> (1, 0)
    push l1 -> (1, -1)
    push l2 -> l2
    push l1+l2 -> (2, 0)
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import NonPositiveDeterminant, ParseError, SemanticError
from .geometry import Isometry, segment_intersection
from .lattice import IntVec2, Mat2

DOT_TOKENS = {
    (0, 0): "0",
    (1, 0): "l1",
    (2, 0): "2l1",
    (0, 1): "l2",
    (1, 1): "l1+l2",
    (2, 1): "2l1+l2",
}
TRANSLATE_TOKENS = {(0, 0): "0", (1, 0): "l1", (0, 1): "l2", (1, 1): "l1+l2"}


class DotIndex(NamedTuple):
    """The marked point ``i*l1 + j*l2``."""

    i: int
    j: int

    @property
    def parity(self):
        return (self.i % 2, self.j)

    @property
    def token(self):
        return DOT_TOKENS[(self.i, self.j)]

    def point(self, l1, l2):
        return IntVec2(self.i * l1[0] + self.j * l2[0], self.i * l1[1] + self.j * l2[1])

    def sort_key(self):
        return (self.j, self.i)


ALL_DOTS = tuple(sorted((DotIndex(*ij) for ij in DOT_TOKENS), key=DotIndex.sort_key))


class GreenSegment(NamedTuple):
    initial: DotIndex
    terminal: IntVec2


@dataclass(frozen=True)
class PresentationDiagram:
    lambda1: IntVec2
    lambda2: IntVec2
    selector: tuple
    pushes: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambda1", IntVec2(*self.lambda1))
        object.__setattr__(self, "lambda2", IntVec2(*self.lambda2))
        sel = tuple(self.selector)
        if len(sel) != 2 or any(c not in (0, 1) for c in sel):
            raise SemanticError(f"translation selector {sel} not in {{0,1}}^2")
        object.__setattr__(self, "selector", sel)
        pushes = []
        for p in self.pushes:
            initial = DotIndex(*p[0])
            if tuple(initial) not in DOT_TOKENS:
                raise SemanticError(f"{tuple(initial)} is not a marked point")
            pushes.append(GreenSegment(initial, IntVec2(*p[1])))
        if len(pushes) != 4:
            raise SemanticError(f"expected 4 pushes, found {len(pushes)}")
        pushes.sort(key=lambda g: (g.initial.sort_key(), g.terminal))
        object.__setattr__(self, "pushes", tuple(pushes))

    @property
    def matrix(self):
        return Mat2.from_columns(self.lambda1, self.lambda2)

    @property
    def translation(self):
        """The circled corner ``b`` in standard coordinates."""
        c1, c2 = self.selector
        return self.lambda1.scale(c1) + self.lambda2.scale(c2)

    def dot(self, index):
        return DotIndex(*index).point(self.lambda1, self.lambda2)

    def segment(self, push):
        """Endpoints of a push in standard coordinates."""
        return self.dot(push.initial), push.terminal

    def push_for_class(self, parity):
        for p in self.pushes:
            if p.initial.parity == tuple(parity):
                return p
        return None

    def replace(self, **changes):
        fields = dict(
            lambda1=self.lambda1,
            lambda2=self.lambda2,
            selector=self.selector,
            pushes=self.pushes,
        )
        fields.update(changes)
        return PresentationDiagram(**fields)


# ---------------------------------------------------------------------------
# text format

_DOT_RE = re.compile(r"(2l1\+l2|l1\+l2|2l1|l2|l1|0)(?![\w+])")
_INT_RE = re.compile(r"[+-]?\d+")
_WORD_RE = re.compile(r"[A-Za-z_][\w]*")
_TOKEN_TO_DOT = {tok: ij for ij, tok in DOT_TOKENS.items()}
_TOKEN_TO_SELECTOR = {tok: ij for ij, tok in TRANSLATE_TOKENS.items()}


class _Line:
    def __init__(self, text, lineno):
        self.text = text
        self.lineno = lineno
        self.pos = 0

    def _skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def fail(self, expected):
        self._skip()
        found = self.text[self.pos:].split(None, 1)
        found = repr(found[0]) if found else "end of line"
        raise ParseError(
            f"expected {expected}, found {found}",
            self.lineno,
            self.pos + 1,
            expected,
        )

    def match(self, regex, expected):
        self._skip()
        m = regex.match(self.text, self.pos)
        if not m:
            self.fail(expected)
        self.pos = m.end()
        return m.group(0)

    def symbol(self, sym):
        self._skip()
        if not self.text.startswith(sym, self.pos):
            self.fail(repr(sym))
        self.pos += len(sym)

    def peek(self, sym):
        self._skip()
        return self.text.startswith(sym, self.pos)

    def integer(self):
        return int(self.match(_INT_RE, "integer"))

    def pair(self):
        self.symbol("(")
        x = self.integer()
        self.symbol(",")
        y = self.integer()
        self.symbol(")")
        return IntVec2(x, y)

    def end(self):
        self._skip()
        if self.pos != len(self.text):
            self.fail("end of line")


def parse(text):
    """Parse the diagram file format into a PresentationDiagram."""
    statements = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            statements.append(_Line(body, lineno))
    if not statements:
        raise ParseError("empty input, expected 'netmap v1'", 1, 1, "'netmap v1'")

    head = statements[0]
    word = head.match(_WORD_RE, "'netmap'")
    if word != "netmap":
        head.pos = 0
        head.fail("'netmap'")
    version = head.match(_WORD_RE, "'v1'")
    if version != "v1":
        raise ParseError(f"unsupported version {version!r}", head.lineno, 8, "'v1'")
    head.end()

    lambdas = {}
    selector = None
    raw_pushes = []
    for line in statements[1:]:
        key = line.match(_WORD_RE, "'lambda1', 'lambda2', 'translate' or 'push'")
        if key in ("lambda1", "lambda2"):
            line.symbol("=")
            vec = line.pair()
            line.end()
            if key in lambdas:
                raise SemanticError(f"line {line.lineno}: duplicate {key}")
            lambdas[key] = vec
        elif key == "translate":
            line.symbol("=")
            line._skip()
            col = line.pos + 1
            tok = line.match(_DOT_RE, "one of 0, l1, l2, l1+l2")
            if tok not in _TOKEN_TO_SELECTOR:
                raise ParseError(
                    f"{tok!r} is not a corner", line.lineno, col, "0, l1, l2 or l1+l2"
                )
            line.end()
            if selector is not None:
                raise SemanticError(f"line {line.lineno}: duplicate translate")
            selector = _TOKEN_TO_SELECTOR[tok]
        elif key == "push":
            start = line.match(_DOT_RE, "marked point (0, l1, 2l1, l2, l1+l2, 2l1+l2)")
            line.symbol("->")
            if line.peek("("):
                target = line.pair()
            else:
                target = line.match(_DOT_RE, "'(' or marked point")
            line.end()
            raw_pushes.append((line.lineno, _TOKEN_TO_DOT[start], target))
        else:
            line.pos = 0
            line.fail("'lambda1', 'lambda2', 'translate' or 'push'")

    for key in ("lambda1", "lambda2"):
        if key not in lambdas:
            raise SemanticError(f"missing {key}")
    if selector is None:
        raise SemanticError("missing translate")
    if len(raw_pushes) != 4:
        raise SemanticError(f"expected 4 pushes, found {len(raw_pushes)}")

    l1, l2 = lambdas["lambda1"], lambdas["lambda2"]
    seen = {}
    pushes = []
    for lineno, start, target in raw_pushes:
        initial = DotIndex(*start)
        if initial.parity in seen:
            raise SemanticError(
                f"line {lineno}: duplicate initial class {initial.token} "
                f"(already used on line {seen[initial.parity]})"
            )
        seen[initial.parity] = lineno
        if isinstance(target, str):
            target = DotIndex(*_TOKEN_TO_DOT[target]).point(l1, l2)
        pushes.append(GreenSegment(initial, target))
    return PresentationDiagram(l1, l2, selector, tuple(pushes))


def serialize(D):
    lines = [
        "netmap v1",
        f"lambda1 = ({D.lambda1.x}, {D.lambda1.y})",
        f"lambda2 = ({D.lambda2.x}, {D.lambda2.y})",
        f"translate = {TRANSLATE_TOKENS[D.selector]}",
    ]
    for p in D.pushes:
        if p.terminal == D.dot(p.initial):
            target = p.initial.token
        else:
            target = f"({p.terminal.x}, {p.terminal.y})"
        lines.append(f"push {p.initial.token} -> {target}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# geometry of the fundamental domain


def domain_coords(x, basis):
    """Coordinates ``(s, t)`` of x in the frame ``(2*l1, l2)``.

    F1 is exactly the unit square in these coordinates.
    """
    D = 2 * basis.det()
    a, b, c, d = 2 * basis.a, basis.b, 2 * basis.c, basis.d
    return (Fraction(d * x[0] - b * x[1], D), Fraction(a * x[1] - c * x[0], D))


def in_domain(x, basis):
    s, t = domain_coords(x, basis)
    return 0 <= s <= 1 and 0 <= t <= 1


def neighbor_isometries(basis):
    """The nine elements of the group generated by half-turns about the
    lattice whose images of F1 meet F1.

    Identity, translations by ``+-2*l1``, then the half-turns about the six
    marked points.
    """
    if basis.det() <= 0:
        raise NonPositiveDeterminant(f"det {basis} is not positive")
    l1, l2 = basis.col1, basis.col2
    out = [
        Isometry(1, (0, 0)),
        Isometry(1, (2 * l1.x, 2 * l1.y)),
        Isometry(1, (-2 * l1.x, -2 * l1.y)),
    ]
    for dot in ALL_DOTS:
        mu = dot.point(l1, l2)
        out.append(Isometry(-1, (2 * mu.x, 2 * mu.y)))
    return out


# ---------------------------------------------------------------------------
# validation


class Violation(NamedTuple):
    code: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple = ()

    @property
    def ok(self):
        return not self.violations

    def codes(self):
        return [v.code for v in self.violations]

    def __str__(self):
        if self.ok:
            return "valid"
        return "\n".join(f"{v.code}: {v.message}" for v in self.violations)


def _describe(gamma):
    if gamma.sign == 1:
        return f"translation by {gamma.shift}"
    return f"half-turn about ({Fraction(gamma.shift[0], 2)}, {Fraction(gamma.shift[1], 2)})"


def _fmt_points(pts):
    return ", ".join("(" + ", ".join(str(c) for c in p) + ")" for p in pts)


def disjointness_violations(basis, segments):
    """Quotient-disjointness and embeddedness of segments lying in F1.

    ``segments`` is a list of ``(label, start, end)``.  Two different
    segments may not meet anywhere in the quotient sphere; a segment may
    meet its own image under a non-identity isometry only in an endpoint
    fixed by that isometry.
    """
    isos = neighbor_isometries(basis)
    out = []
    for a in range(len(segments)):
        la, p, q = segments[a]
        for b in range(a + 1, len(segments)):
            lb, r, s = segments[b]
            for g in isos:
                hit = segment_intersection(p, q, g(r), g(s))
                if hit:
                    out.append(
                        Violation(
                            "not-disjoint",
                            f"pushes from {la} and {lb} meet in the quotient at "
                            f"{_fmt_points(hit)} ({_describe(g)})",
                        )
                    )
                    break
    for la, p, q in segments:
        for g in isos[1:]:
            hit = segment_intersection(p, q, g(p), g(q))
            ends = {tuple(p), tuple(q)}
            bad = [x for x in hit if x not in ends or not g.fixes(x)]
            if bad or len(hit) > 1:
                out.append(
                    Violation(
                        "not-embedded",
                        f"push from {la} meets its own image under {_describe(g)} "
                        f"at {_fmt_points(hit)}",
                    )
                )
                break
    return out


def validate(D):
    """Check a diagram; returns a ValidationReport (never raises).

    Checks, in order: degree at least 2, terminals inside F1, one push per
    class of marked points, quotient-disjointness, embeddedness.
    """
    out = []
    A = D.matrix
    deg = A.det()
    if deg < 2:
        out.append(Violation("degree", f"det[l1 l2] = {deg}, need at least 2"))
    if deg != 0:
        for p in D.pushes:
            if not in_domain(p.terminal, A):
                s, t = domain_coords(p.terminal, A)
                out.append(
                    Violation(
                        "outside-domain",
                        f"push from {p.initial.token} ends at {tuple(p.terminal)}, "
                        f"domain coordinates ({s}, {t}) not in [0,1]^2",
                    )
                )
    classes = sorted(p.initial.parity for p in D.pushes)
    if classes != [(0, 0), (0, 1), (1, 0), (1, 1)]:
        out.append(
            Violation(
                "initial-classes",
                f"initial points cover classes {classes}, need each of the four once",
            )
        )
    if deg > 0 and not any(v.code == "outside-domain" for v in out):
        segs = [(p.initial.token,) + D.segment(p) for p in D.pushes]
        out.extend(disjointness_violations(A, segs))
    return ValidationReport(tuple(out))
