"""Exact C(Gamma)-valued integration on valued fields with local residue field."""
from .errors import DepthLimitError, DomainError, PrecisionError, SingularMatrixError, ValintError
from .gamma_values import GammaValue, GaussQ
from .lift_integrate import (AffineImageTerm, FFunction, LiftedTerm, fubini_report, lift,
                             repeated_integral, integral_closed_form)
from .linalg import Matrix
from .local_field import Ball, KElem, LaurentFF, LocalFieldSpec, PAdic
from .matrix_integrals import (GLFunction, IwasawaFactors, det_abs, gl_integral, gl_translate,
                               gl_weight, iwasawa, lift_group, mn_integral)
from .step_functions import Box, StepFunction
from .valued_field import FElem, ValuedFieldSpec

__all__ = [
    "AffineImageTerm", "Ball", "Box", "DepthLimitError", "DomainError", "FElem", "FFunction",
    "GLFunction", "GammaValue", "GaussQ", "IwasawaFactors", "KElem", "LaurentFF", "LiftedTerm",
    "LocalFieldSpec", "Matrix", "PAdic", "PrecisionError", "SingularMatrixError",
    "StepFunction", "ValintError", "ValuedFieldSpec", "det_abs", "fubini_report",
    "gl_integral", "gl_translate", "gl_weight", "integral_closed_form", "iwasawa", "lift",
    "lift_group", "mn_integral", "repeated_integral",
]
