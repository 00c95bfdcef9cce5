"""Numerical workbench for null thin shells obtained by matching two
constant-curvature spacetime regions across a totally geodesic null
hypersurface with an arbitrary jump function.

The package computes the shell's energy-momentum content from the jump
function, assembles the Lipschitz and regularized-distributional forms of
the matched metric, and verifies the construction numerically (curvature,
junction conditions, pullback identities, mollifier products).
"""

from . import distribution_lab, expressions, jets, jump_functions, matching_engine
from . import metric_assembly, shell_physics, tensor_core
from .distribution_lab import (Mollifier, PairingResult, TestBump, extrapolate,
                               heaviside_pairing, make_mollifier,
                               model_product_pairing, one_minus_theta_product,
                               theta_delta_mass, weak_metric_check)
from .errors import (ArityError, ConformalFactorZero, ConstraintViolation,
                     DomainError, EmptySelection, InsufficientOrder,
                     MissingColumn, NonPositiveDerivative, NotTransversal,
                     NotWaveType, NullShellError, ParseError, QuadratureFailure,
                     SingularLeafMetric, SingularMetric, StepSizeError,
                     WrongDimension, UnknownIdentifier)
from .jets import JetScalar, JetSpace, jet_space
from .jump_functions import (AdmissibilityReport, JumpFunction, PressureProfile,
                             check_admissibility, from_pressure, make_builtin,
                             parse_jump_expression)
from .matching_engine import (BoundaryFrame, TransverseCoefficients,
                              boundary_frame, chart_map,
                              pullback_plus_metric, rigging_minus, rigging_plus,
                              shell_xi_aligning_report, transverse_coefficients,
                              verify_geodesic_extension, verify_junction,
                              verify_xi_aligning)
from .metric_assembly import (discontinuous_coordinates, hscript,
                              lipschitz_conformal_factor, lipschitz_metric,
                              lipschitz_metric_field,
                              regularized_distributional_metric, rosen_form)
from .shell_physics import (LeafGeometry, ShellClass, ShellContent,
                            ads_leaf_geometry, classify_shell, energy_momentum,
                            example_closed_forms, flat_leaf_geometry,
                            jump_tensor_ads, jump_tensor_general,
                            jump_tensor_minkowski, shell_content, shell_scalars)
from .tensor_core import (CurvatureReport, MetricField, christoffel_at,
                          conformal_metric_field, constant_curvature_residual,
                          curvature_report, flat_metric_field,
                          metric_from_function, riemann_at, signature_of)

__version__ = "0.1.0"
