"""Free-compression norms, the limit body K_{k,t}, and minimum output entropy
of random quantum channels."""
from .entropy import binary_entropy, entropy_of_two_level, renyi_entropy, renyi_two_level
from .errors import BranchError, ConditioningError, DomainError, NotFoundError
from .kkt_geometry import (ascent_derivative, exposed_point, lemma_gap, membership,
                           support_necessary_test)
from .spectral_measure import AtomicMeasure, cauchy_transform, f_transform_bundle, max_multiplicity, power_sums
from .tnorm import gradient, hessian, min_shift, phi, solve_w, tnorm
from .violation import (asymptotic_check, entropy_diff, gamma_hw, gamma_opt, min_over_t, threshold_k,
                        x_opt)

__version__ = "0.1.0"
