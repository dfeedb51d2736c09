"""Sums of primes from a Beatty sequence: certified arithmetic, sieves, kernels and counts."""

__version__ = "0.1.0"

from .beatty import BeattyConfig, contains, generate_up_to, membership_mask
from .errors import (AmbiguityError, BadArguments, BgoldError, CapacityError,
                     DegenerateError, PrecisionExhausted)
from .irrational import (IrrationalSpec, LinearForm, RationalApprox, cf_expand,
                         extreme_discrepancy, frac_affine_certified, parse_spec,
                         star_discrepancy, type_exponent_estimate)
from .mangoldt import LambdaTable, build_tables, lambda_split, load_tables, save_tables
from .psi import (PiecewisePoly, SmoothedIndicator, psi_conv_build, psi_conv_eval,
                  psi_conv_min, psi_eval, sharp_lower_bound, smoothed_build,
                  truncated_series_eval, truncated_series_grid)
from .repcounts import (RepCountTable, WeightedIndicator, gk_bulk, gk_naive, main_term,
                        no_representation_witness, rk_prime_count)
from .singular import SingularValue, euler_product, identity_partial_sum, singular_series_table
