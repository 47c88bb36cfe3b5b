"""Gradient estimation for black-box scalar fields.

Gradients are assembled from complex-step or central-difference directional
derivatives taken along uniformly distributed directions: a single
orthonormal frame, an average over many frames (multi-axis), or a whole
sphere sample (multi-vector). Indicator fields use value-weighted probe sums.
"""

from .directional import central_diff, complex_step, complex_step_line_avg, directional_derivative
from .directions import (
    DirectionSet,
    OrthonormalFrame,
    RotationMatrix,
    find_orthonormal_frames,
    polygon_set,
    polyhedron_set,
    random_rotation,
    rotate_set,
    validate_set,
)
from .estimators import (
    EstimatorConfig,
    GradientEstimate,
    estimate,
    hart_multisample,
    multi_axis,
    multi_vector,
    single_axis,
)
from .exceptions import CapabilityError, DegenerateGradientError, DimensionError, EvaluationError
from .fields import ScalarField, corpus_field, parse_field_spec, unit_gradient

__version__ = "0.1.0"
