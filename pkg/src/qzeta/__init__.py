"""qzeta: a numerical laboratory for a q-deformation of the Riemann zeta
function, its values at non-positive integers, q-Bernoulli numbers, and the
classical Euler-Maclaurin reference zeta, with reproducible partial-sum
experiments exposed through a service API and CLI.
"""

from .bernoulli import (bernoulli_number, bernoulli_poly, fourier_partial_sum,
                        periodic_bernoulli)
from .classical import EMConfig, euler_maclaurin_sum, hurwitz_em, zeta_em
from .kernel import (ExtrapolationResult, QParam, SeriesResult,
                     binom_series_coeff, compensated_sum, geometric_h_grid,
                     pochhammer, q_integer, richardson_extrapolate)
from .qbernoulli import (functional_equation_residual, generating_series,
                         q_bernoulli, recursion_residual)
from .qzeta import (DEFAULT_POLICY, EvalPolicy, NonConvergenceError,
                    PoleDescriptor, PoleProximityError, f_q_continued,
                    f_q_direct, hurwitz_zeta_q, hurwitz_zeta_q_nonpositive,
                    jackson_integral_form, lattice_delta, pole_set,
                    residue_at_one, tilde_zeta_q, zeta_q, zeta_q_nonpositive)

__version__ = "0.1.0"

__all__ = [
    "QParam", "SeriesResult", "ExtrapolationResult", "EvalPolicy",
    "DEFAULT_POLICY", "PoleDescriptor", "PoleProximityError",
    "NonConvergenceError",
    "q_integer", "pochhammer", "binom_series_coeff", "compensated_sum",
    "richardson_extrapolate", "geometric_h_grid",
    "f_q_direct", "f_q_continued", "zeta_q", "zeta_q_nonpositive",
    "residue_at_one", "pole_set", "tilde_zeta_q", "jackson_integral_form",
    "hurwitz_zeta_q", "hurwitz_zeta_q_nonpositive", "lattice_delta",
    "bernoulli_number", "bernoulli_poly", "periodic_bernoulli",
    "fourier_partial_sum",
    "q_bernoulli", "recursion_residual", "generating_series",
    "functional_equation_residual",
    "EMConfig", "zeta_em", "hurwitz_em", "euler_maclaurin_sum",
    "__version__",
]
