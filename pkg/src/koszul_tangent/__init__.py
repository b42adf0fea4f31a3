"""Tangent-level cycle classes of first-order deformations.

A codimension-p subvariety given generically by a regular sequence, lifted to
the dual numbers, is sent through its Koszul complex and local fundamental
class to a generalized fraction in local cohomology.  The package evaluates
the Cousin differential of that class at a chosen point and builds the
corrector deformation that cancels it.
"""

from .chern import fundamental_class, truncate
from .cousin import boundary, boundary_of_sum, rewrite_denominator, sum_boundaries
from .dual import DualPoly, parse_dual
from .errors import (
    GroebnerLimitError,
    KoszulError,
    LocalizationError,
    OracleMismatchError,
    ParseError,
    PreconditionError,
    StructuralError,
    UnsupportedCaseError,
)
from .forms import DiffForm, contract_eps, d, wedge
from .groebner import Ideal, check_regular, groebner, ideal_member, is_unit_mod
from .koszul import build_koszul, permute_comparison
from .localcoh import FormalSum, LocalCohClass, add_classes, class_is_zero, permute_denominators
from .poly import Frac, Poly, frac, parse_poly
from .scene import parse_scene, render_scene
from .tangent import (
    DeformationScene,
    classify_case,
    correct,
    generator_diagnostic,
    pi,
    verify_milnor_cycle,
)

__version__ = "0.1.0"
