"""Closed-form constants and the bound reports built from them.

All ratios are quoted against the semiclassical values

  L_cl(d, sigma)  = (2 sigma/(d + 2 sigma)) |B_d| / (2 pi)^d
  K_cl(d, sigma)  = (d/(d + 2 sigma)) ((2 pi)^d / |B_d|)^(2 sigma / d)
  L_cl(alpha, d)  = Gamma(alpha + 1) / ((4 pi)^(d/2) Gamma(alpha + d/2 + 1))

and the kinetic and potential sides are exact duals of each other:

  l_ratio = k_ratio^(-d / (2 sigma)).

Every formula is evaluated in log space so that large dimensions (d in the
thousands) stay exact to roundoff instead of overflowing; the same applies
to the closed-form minimum of the weighted deficit,

  deficit_min(beta) = (beta-1)^(beta-1)/beta^beta * ((pi/beta)/sin(pi/beta))^beta

attained by f = 1/(1 + mu* t^beta) with
mu* = ((beta-1)/beta * (pi/beta)/sin(pi/beta))^beta = (beta-1)*deficit_min.

Bound constructors return BoundReport records.  Methods:

  rumin_original    k = d/(d+4) at sigma = 1 (uniform splitting)
  momentum_optimal  optimized splitting; fractional_first relabels the same
                    formula for sigma != 1
  low_momentum_avg  conversion of an averaging-objective value (sigma = 1);
                    fractional_second relabels it for sigma != 1
  lifted_1d         the d = 1 low-momentum value transported to every d at
                    sigma = 1 by the operator-valued lifting argument
  best_of           max k (equivalently min l) over the applicable methods
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .functionals import ProblemSpec
from .specfun import log_gamma, unit_ball_volume
from .trial import ProfileFamily, WeightFamily

__all__ = [
    "UNIVERSAL_L_RATIO",
    "LIFTED_1D_L_RATIO",
    "CONJECTURED_1D_L_RATIO",
    "DeficitMin",
    "BoundReport",
    "k_cl",
    "l_cl",
    "l_cl_general",
    "deficit_min",
    "dual_convert",
    "bound_rumin_original",
    "bound_momentum_optimal",
    "bound_from_c",
    "bound_best_of",
    "product_identity_check",
    "large_d_limit_probe",
]

# Established dimension-free bound on L/L_cl at sigma = 1 (rounded headline
# and the sharper printed value it rounds from).
UNIVERSAL_L_RATIO = 1.456
LIFTED_1D_L_RATIO = 1.455786

# Conjectured sharp value of L/L_cl in d = 1 (the two-thirds-power pair);
# conjecture only, never used as a gate, shown in reports for reference.
CONJECTURED_1D_L_RATIO = 2.0 / math.sqrt(3.0)


class DeficitMin(NamedTuple):
    value: float
    mu_star: float


@dataclass(frozen=True)
class BoundReport:
    """One bound on (k_ratio, l_ratio) for a problem, with its provenance.

    k_ratio multiplies K_cl from below, l_ratio multiplies L_cl from above;
    the two always satisfy l = k^(-d/(2 sigma)).  c_value and trial are set
    when the bound came out of an averaging objective.
    """

    problem: ProblemSpec
    method: str
    k_ratio: float
    l_ratio: float
    c_value: float | None = None
    trial: tuple[ProfileFamily, WeightFamily] | None = None

    def __post_init__(self):
        if not (self.k_ratio > 0.0 and self.l_ratio > 0.0):
            raise ValueError(f"ratios must be positive, got k={self.k_ratio!r}, l={self.l_ratio!r}")
        dual = dual_convert(self.problem, self.k_ratio)
        if abs(dual - self.l_ratio) > 1e-12 * max(1.0, abs(self.l_ratio)):
            raise ValueError(f"k/l pair violates duality: l={self.l_ratio!r}, k^-tau={dual!r}")

    def to_json(self) -> dict:
        trial = None
        if self.trial is not None:
            prof, weight = self.trial
            trial = {"profile": prof.to_json(), "weight": weight.to_json()}
        return {
            "d": self.problem.d,
            "sigma": self.problem.sigma,
            "method": self.method,
            "k_ratio": self.k_ratio,
            "l_ratio": self.l_ratio,
            "c_value": self.c_value,
            "trial": trial,
        }


def k_cl(problem: ProblemSpec) -> float:
    """Semiclassical kinetic constant K_cl(d, sigma)."""
    d, sigma = problem.d, problem.sigma
    log_ratio = d * math.log(2.0 * math.pi) - math.log(unit_ball_volume(d))
    return d / (d + 2.0 * sigma) * math.exp(2.0 * sigma / d * log_ratio)


def l_cl(problem: ProblemSpec) -> float:
    """Semiclassical eigenvalue-sum constant L_cl(d, sigma)."""
    d, sigma = problem.d, problem.sigma
    return 2.0 * sigma / (d + 2.0 * sigma) * math.exp(math.log(unit_ball_volume(d)) - d * math.log(2.0 * math.pi))


def l_cl_general(alpha: float, d: int) -> float:
    """L_cl for Riesz exponent alpha >= 0 in dimension d."""
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha!r}")
    if int(d) != d or d < 1:
        raise ValueError(f"d must be a positive integer, got {d!r}")
    return math.exp(log_gamma(alpha + 1.0) - 0.5 * d * math.log(4.0 * math.pi) - log_gamma(alpha + 0.5 * d + 1.0))


def deficit_min(beta: float) -> DeficitMin:
    """Closed-form minimum of J_beta over normalized profiles, with the
    optimal scale mu*; needs beta > 1.  Evaluated in log space, so beta
    close to 1 (where the minimum blows up like 1/(beta-1) while mu* -> 1)
    and large beta are both exact to roundoff."""
    if not beta > 1.0:
        raise ValueError(f"deficit_min requires beta > 1, got {beta!r}")
    log_sine_term = math.log(math.pi / beta) - math.log(math.sin(math.pi / beta))
    log_min = (beta - 1.0) * math.log(beta - 1.0) - beta * math.log(beta) + beta * log_sine_term
    log_mu = beta * (math.log(beta - 1.0) - math.log(beta) + log_sine_term)
    return DeficitMin(value=math.exp(log_min), mu_star=math.exp(log_mu))


def dual_convert(problem: ProblemSpec, k_ratio: float) -> float:
    """l_ratio = k_ratio^(-d/(2 sigma)), in log space."""
    if not k_ratio > 0.0:
        raise ValueError(f"k_ratio must be positive, got {k_ratio!r}")
    return math.exp(-problem.tau * math.log(k_ratio))


def _log_k_momentum_optimal(d: int, sigma: float) -> float:
    x = 2.0 * math.pi * sigma / (d + 2.0 * sigma)
    log_bracket = 2.0 * math.log(d + 2.0 * sigma) + math.log(math.sin(x)) - math.log(2.0 * math.pi * sigma * d)
    return math.log(d) - math.log(d + 4.0 * sigma) + (1.0 + 2.0 * sigma / d) * log_bracket


def bound_momentum_optimal(problem: ProblemSpec) -> BoundReport:
    """Kinetic bound with the optimized momentum splitting,

    k = d/(d+4 sigma) * ((d+2 sigma)^2 sin(2 pi sigma/(d+2 sigma))
        / (2 pi sigma d))^(1+2 sigma/d).
    """
    log_k = _log_k_momentum_optimal(problem.d, problem.sigma)
    method = "momentum_optimal" if problem.sigma == 1.0 else "fractional_first"
    return BoundReport(problem=problem, method=method,
                       k_ratio=math.exp(log_k), l_ratio=math.exp(-problem.tau * log_k))


def bound_rumin_original(problem: ProblemSpec) -> BoundReport:
    """Uniform-splitting baseline k = d/(d+4), l = ((d+4)/d)^(d/2); sigma = 1 only."""
    if problem.sigma != 1.0:
        raise ValueError("rumin_original is stated for sigma = 1")
    d = problem.d
    return BoundReport(problem=problem, method="rumin_original",
                       k_ratio=d / (d + 4.0), l_ratio=math.exp(0.5 * d * math.log1p(4.0 / d)))


def bound_from_c(problem: ProblemSpec, c_value: float,
                 trial: tuple[ProfileFamily, WeightFamily] | None = None) -> BoundReport:
    """Convert an averaging-objective value C into a kinetic bound,

    k = d/(d+2 sigma) * (2 sigma/(d+2 sigma))^(4 sigma/d) * C^(-2 sigma/d).
    """
    if not (c_value > 0.0 and math.isfinite(c_value)):
        raise ValueError(f"c_value must be positive and finite, got {c_value!r}")
    d, sigma = problem.d, problem.sigma
    log_k = (math.log(d) - math.log(d + 2.0 * sigma)
             + 4.0 * sigma / d * (math.log(2.0 * sigma) - math.log(d + 2.0 * sigma))
             - 2.0 * sigma / d * math.log(c_value))
    method = "low_momentum_avg" if sigma == 1.0 else "fractional_second"
    return BoundReport(problem=problem, method=method, k_ratio=math.exp(log_k),
                       l_ratio=math.exp(-problem.tau * log_k), c_value=c_value, trial=trial)


def _bound_lifted_1d(problem: ProblemSpec) -> BoundReport:
    # the d = 1 value transports to every dimension at sigma = 1
    log_l = math.log(LIFTED_1D_L_RATIO)
    return BoundReport(problem=problem, method="lifted_1d",
                       k_ratio=math.exp(-log_l / problem.tau), l_ratio=LIFTED_1D_L_RATIO)


def bound_best_of(problem: ProblemSpec, c_value: float | None = None,
                  trial: tuple[ProfileFamily, WeightFamily] | None = None) -> BoundReport:
    """Best (largest k, smallest l) over every method applicable to the problem.

    Always includes the optimized momentum splitting; sigma = 1 adds the
    uniform baseline and the lifted d = 1 value; a c_value adds its
    conversion.  Duality makes max-k and min-l the same choice.
    """
    candidates = [bound_momentum_optimal(problem)]
    if problem.sigma == 1.0:
        candidates.append(bound_rumin_original(problem))
        candidates.append(_bound_lifted_1d(problem))
    if c_value is not None:
        candidates.append(bound_from_c(problem, c_value, trial))
    best = max(candidates, key=lambda rep: rep.k_ratio)
    return BoundReport(problem=problem, method="best_of", k_ratio=best.k_ratio,
                       l_ratio=best.l_ratio, c_value=best.c_value, trial=best.trial)


def product_identity_check(d1: int, d: int) -> float:
    """Relative residual of L_cl(1, d1) * L_cl(1 + d1/2, d - d1) = L_cl(1, d).

    Exactly zero in exact arithmetic for every 1 <= d1 < d; the return value
    is the roundoff-level residual of the log-space evaluation.
    """
    if not (1 <= d1 < d):
        raise ValueError(f"need 1 <= d1 < d, got d1={d1!r}, d={d!r}")
    lhs = l_cl_general(1.0, d1) * l_cl_general(1.0 + 0.5 * d1, d - d1)
    rhs = l_cl_general(1.0, d)
    return abs(lhs - rhs) / rhs


def large_d_limit_probe(d: int, sigma: float = 1.0) -> float:
    """l_ratio of the optimized momentum splitting at large d, in log space.

    Approaches e from below as d -> inf at sigma = 1 (log l =
    1 - (5 - pi^2/3) sigma/d + O(1/d^2)), which is the dimension-free
    envelope of that method.
    """
    problem = ProblemSpec(d=d, sigma=sigma)
    return math.exp(-problem.tau * _log_k_momentum_optimal(problem.d, problem.sigma))
