"""Presentation diagrams for NET maps: parsing, validation, dynamics,
slope pullback, twisting and rendering."""

from importlib import resources

from .diagram import PresentationDiagram, GreenSegment, DotIndex, parse, serialize, validate
from .euclid import ExtendedSlope, matrix_from_pullback_data, preimage_slope
from .lattice import IntVec2, Mat2, elementary_divisors, smith_decomposition
from .netmap import critical_value_classes, is_net, portrait
from .render import RenderOptions, render_svg
from .twist import (
    choose_segments,
    euclidean_equivalence,
    matrix_twist,
    normalize_divisors,
    projective_canonical,
    translation_twist,
)

__version__ = "0.1.0"

REFERENCE_DIAGRAMS = ("rabbit", "lodge")


def reference_text(name):
    """Text of a bundled reference diagram (``rabbit`` or ``lodge``)."""
    return resources.files(__package__).joinpath("data", f"{name}.netmap").read_text("utf-8")


def reference_diagram(name):
    return parse(reference_text(name))
