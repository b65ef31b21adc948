"""SVG drawing of a presentation diagram.

Unit grid lines, the parallelogram F1, the six marked points, a ring around the
circled corner and every lift of every push that runs inside F1.  Geometry
is exact; numbers are only rounded (to three decimals) when written out, so
the output is byte-for-byte reproducible.
"""

from dataclasses import dataclass
from fractions import Fraction

from .diagram import ALL_DOTS, domain_coords, neighbor_isometries
from .geometry import clip_to_unit_square

PUSH_COLOR = "#1a9641"


@dataclass(frozen=True)
class RenderOptions:
    cell: int = 40
    margin: int = 1
    grid: bool = True

    def __post_init__(self):
        if self.cell <= 0:
            raise ValueError("cell size must be positive")
        if self.margin < 0:
            raise ValueError("margin must be nonnegative")


def _num(q):
    q = Fraction(q)
    n = round(q * 1000)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 1000}.{n % 1000:03d}"


def push_lifts(D):
    """Lifts of each push meeting F1 in more than a point.

    Yields ``(push, start, end, arrow)`` in standard coordinates; ``arrow``
    is true when ``end`` is the (image of the) terminal.  Degenerate pushes
    yield a single entry with ``start == end``.
    """
    A = D.matrix
    l1x2, l2 = A.col1.scale(2), A.col2
    isos = neighbor_isometries(A)

    def to_plane(st):
        s, t = st
        return (s * l1x2.x + t * l2.x, s * l1x2.y + t * l2.y)

    for push in D.pushes:
        start, end = D.segment(push)
        if start == end:
            yield push, start, end, False
            continue
        for g in isos:
            a, b = domain_coords(g(start), A), domain_coords(g(end), A)
            clipped = clip_to_unit_square(a, b)
            if clipped is None or clipped[0] == clipped[1]:
                continue
            yield push, to_plane(clipped[0]), to_plane(clipped[1]), clipped[1] == b


def render_svg(D, opts=RenderOptions()):
    A = D.matrix
    l1, l2 = A.col1, A.col2
    corners = [(0, 0), (2 * l1.x, 2 * l1.y), (2 * l1.x + l2.x, 2 * l1.y + l2.y), (l2.x, l2.y)]
    xmin = min(c[0] for c in corners) - opts.margin
    xmax = max(c[0] for c in corners) + opts.margin
    ymin = min(c[1] for c in corners) - opts.margin
    ymax = max(c[1] for c in corners) + opts.margin
    cell = opts.cell

    def view(p):
        return _num((p[0] - xmin) * cell), _num((ymax - p[1]) * cell)

    width, height = (xmax - xmin) * cell, (ymax - ymin) * cell
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" '
        f'markerHeight="6" orient="auto"><path d="M 0 0 L 10 5 L 0 10 z" fill="{PUSH_COLOR}"/></marker>',
        "</defs>",
    ]
    if opts.grid:
        for x in range(xmin, xmax + 1):
            (x0, y0), (x1, y1) = view((x, ymin)), view((x, ymax))
            out.append(f'<line class="grid" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#cccccc" stroke-width="1"/>')
        for y in range(ymin, ymax + 1):
            (x0, y0), (x1, y1) = view((xmin, y)), view((xmax, y))
            out.append(f'<line class="grid" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" stroke="#cccccc" stroke-width="1"/>')

    path = " ".join(
        ("M" if k == 0 else "L") + " {} {}".format(*view(c)) for k, c in enumerate(corners)
    )
    out.append(f'<path class="domain" d="{path} Z" fill="none" stroke="black" stroke-width="2"/>')

    for push, a, b, arrow in push_lifts(D):
        if a == b:
            cx, cy = view(a)
            out.append(
                f'<circle class="push degenerate" cx="{cx}" cy="{cy}" r="{_num(Fraction(cell, 5))}" '
                f'fill="none" stroke="{PUSH_COLOR}" stroke-width="3"/>'
            )
            continue
        (x0, y0), (x1, y1) = view(a), view(b)
        tail = ' marker-end="url(#arrow)"' if arrow else ""
        out.append(
            f'<line class="push" x1="{x0}" y1="{y0}" x2="{x1}" y2="{y1}" '
            f'stroke="{PUSH_COLOR}" stroke-width="3"{tail}/>'
        )

    for dot in ALL_DOTS:
        cx, cy = view(dot.point(l1, l2))
        out.append(f'<circle class="dot" cx="{cx}" cy="{cy}" r="{_num(Fraction(cell, 8))}" fill="black"/>')
    cx, cy = view(D.translation)
    out.append(
        f'<circle class="translate" cx="{cx}" cy="{cy}" r="{_num(Fraction(cell, 3))}" '
        'fill="none" stroke="black" stroke-width="2"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
