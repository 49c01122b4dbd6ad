"""Discrete potentials on the unit circle: min-max-min and polarization problems,
the inverse Bernstein inequality for polynomials with unimodular zeros, and
closed-form Riesz polarization constants."""

__version__ = "0.1.0"

from .config import (Configuration, canonicalize, equally_spaced, gaps, random_configuration,
                     rotate, separation)
from .errors import (DegenerateArc, DegenerateConfiguration, EmptyDomain, InvalidInput,
                     MoveTooLarge, SingularPoint)
from .kernels import KernelSpec, pm_polynomial, validate_kernel_contract
from .potential import (arc_extrema, eval_potential, khrushchev_m, minmaxmin_value,
                        polarization_value, restricted_polarization_value, restricted_set_E)
from .optimize import optimize_khrushchev, optimize_minmaxmin, optimize_polarization
from .transport import run_transport, solve_delta
