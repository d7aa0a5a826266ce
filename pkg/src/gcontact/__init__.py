"""Exact symbolic toolkit for generalised contact geometry.

Forms have Gaussian-rational polynomial coefficients over a frame algebra,
either coordinate frames or left-invariant frames of a nilpotent Lie algebra.
"""

from .blades import BACKEND
from .courant import (
    TwistError, check_courant_axioms, contact_algebroid, dorfman_contact, dorfman_h,
    pairing_contact, pairing_tm, random_mc_twists, reduce_bracket_oracle,
    reduce_differential_oracle, standard_algebroid, validate_maurer_cartan,
)
from .document import Document, DocumentError, load_document, parse_form
from .forms import DimensionError, Polyform, Vector, blade, eps
from .frame import (
    FrameAlgebra, ModeError, NilParseError, coordinate_frame, extend_circle, format_nil,
    parse_nil, validate_frame,
)
from .poly import Poly
from .report import Report
from .scalar import I, ONE, ZERO, Scalar
from .sections import ContactSection, GenSection, SplitMix64, Twists
from .spinor import (
    MixedPair, ParityError, annihilator, check_annihilator_involutive, clifford_contact,
    clifford_tm, geometric_type, mukai, mukai_mixed, pure_spinor_pairing, solve_dirac_relators,
    solve_involutive, twisted_differential, validate_mixed_pair,
)
from .structures import (
    BbaTransform, CechDatum, GenContactMetric, SekiyaQuadruple, assemble_jinv, check_admissible,
    check_cokahler, check_einstein_pairing, complex_quadruple, compose_transforms,
    cosymplectic_quadruple, lift_product, t_dualize_circle, t_dualize_metric,
    t_dualize_quadruple, transform_mixed_pair, transform_sekiya, transform_section,
    transform_twists, validate_cech, validate_metric, validate_sekiya,
)

__version__ = "0.1.0"
