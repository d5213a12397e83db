"""bergman_lab: a numerical laboratory for weighted Bergman spaces on the
unit ball of C^n.

Radial doubling weights and their derived transforms, nonisotropic ball
geometry (caps, Carleson blocks, tubes, admissible regions, tents),
symbolic holomorphic test families, norm formulas with exact radial and
spherical paths, Carleson-measure quotients, and the Volterra operator
trichotomy, wired to a deterministic batch CLI.
"""

__version__ = "0.1.0"

from .errors import (AccuracyError, BergmanLabError, ConfigError,
                     DegenerateRegionError, DomainError,
                     UnsupportedRegimeError)
from .weights import RadialWeight, classify, omega_hat, omega_nstar, \
    omega_star, block_mass, weighted_ball_volume
from .geometry import (Admissible, BallPoint, Block, Cap, Tent, Tube,
                       cap_measure, contains_many)
from .holo import (KernelDerivative, KernelPiece, KernelPower, Monomial,
                   Poly, Sum, SumFun, dilate, evaluate, radial_derivative,
                   random_polynomial, test_function)
from .quadrature import (DEFAULT_SPEC, QuadratureSpec, RadialRule,
                         RegionRule, SphericalRule, integrate_ball,
                         integrate_radial, integrate_region)
from .norms import (NormReport, area_norm, bergman_norm_p, hardy_means,
                    lp_equiv, lp_identity_rhs, maxfun_norm,
                    maximal_function, nontangential_max)
from .carleson import (CarlesonReport, Measure, carleson_quotient,
                       embedding_lower_bound, maximal_embedding_probe)
from .volterra import (SymbolReport, apply_Tg, c_kappa_seminorm,
                       dilation_approx_profile, space_seminorms,
                       tg_compact_profile, tg_verdict)

__all__ = [name for name in dir() if not name.startswith("_")]
