"""Correlation harvesting by two static detectors outside (1+1)D black holes."""

from ._backend import backend_name, get_backend
from .contour_quadrature import (ContourSpec, QuadratureConfig, QuadResult,
                                 closed_form_minkowski_response, direct_ieps_integral,
                                 pole_local_contour_integral, strip_double_integral)
from .correlations import (CorrelationReport, concurrence, correlation_report,
                           mutual_information, signalling_estimator)
from .detector_matrix import (L_element, M_element, PairState, Scenario, Switching,
                              edr_ratio, longtime_rate, pair_state, tolman_beta,
                              transition_probability)
from .geometry import (NullCoords, SpacetimeParams, StaticDetector, metric_f,
                       proper_distance, pullback, radius_from_proper_distance,
                       redshift_gamma, shell_admissible, tortoise)
from .special_functions import WBranch, erfc, lambert_w
from .wightman import VacuumKind, commutator_kernel, kernel, strip_clearance

__version__ = "0.1.0"
