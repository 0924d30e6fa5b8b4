"""Adaptive panel quadrature with an embedded Gauss-Legendre pair.

Every integral in the package funnels through integrate(): profile
normalization cross-checks, the weighted deficit functionals, the averaging
objective, and the potential integrals of the verification harness.  The
scheme is plain adaptive bisection: each panel carries a 15-point
Gauss-Legendre value and a 7-point embedded estimate, the difference is the
panel's error estimate, and the worst panel is split until the summed error
meets the tolerance or the subdivision budget runs out.  Budget exhaustion
is reported through QuadResult.converged, never raised, so callers decide
whether a slow integral is fatal.

Semi-infinite ranges are folded to (0,1) by the rational substitution
t = a + u/(1-u), dt = du/(1-u)^2.  Gauss nodes are interior, so neither
u = 1 nor an endpoint singularity of the integrand is ever evaluated.

Integrands must be vectorized: they receive a float ndarray of nodes and
must return an ndarray of the same shape.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

__all__ = ["QuadSpec", "QuadResult", "NonFiniteIntegrandError", "integrate"]

TRANSFORMS = ("none", "semi_infinite_rational")

# Embedded pair: value from the 15-point rule, error from disagreement with
# the 7-point rule.  leggauss is exact to machine precision for the nodes.
_X7, _W7 = np.polynomial.legendre.leggauss(7)
_X15, _W15 = np.polynomial.legendre.leggauss(15)


class NonFiniteIntegrandError(ValueError):
    """Integrand produced nan or inf at a quadrature node."""


@dataclass(frozen=True)
class QuadSpec:
    """Tolerance and budget knobs for integrate().

    Convergence means summed panel error <= max(abs_tol, rel_tol*|value|).
    transform states how an infinite upper endpoint is handled; "none"
    refuses it.
    """

    abs_tol: float = 1e-11
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000
    transform: str = "semi_infinite_rational"

    def __post_init__(self):
        if not (self.abs_tol > 0.0):
            raise ValueError(f"abs_tol must be > 0, got {self.abs_tol!r}")
        if self.rel_tol < 0.0:
            raise ValueError(f"rel_tol must be >= 0, got {self.rel_tol!r}")
        if self.max_subdivisions < 1:
            raise ValueError(f"max_subdivisions must be >= 1, got {self.max_subdivisions!r}")
        if self.transform not in TRANSFORMS:
            raise ValueError(f"transform must be one of {TRANSFORMS}, got {self.transform!r}")

    def tightened(self, factor: float) -> "QuadSpec":
        """Same spec with both tolerances divided by factor."""
        return QuadSpec(self.abs_tol / factor, self.rel_tol / factor,
                        self.max_subdivisions, self.transform)


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    subdivisions_used: int
    converged: bool


DEFAULT_SPEC = QuadSpec()


def _panel(func, lo: float, hi: float):
    """15/7 pair on one panel -> (value, error, values_finite)."""
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    y15 = func(mid + half * _X15)
    y7 = func(mid + half * _X7)
    if not (np.all(np.isfinite(y15)) and np.all(np.isfinite(y7))):
        bad = np.asarray(mid + half * _X15)[~np.isfinite(np.asarray(y15))]
        where = bad[0] if bad.size else mid
        raise NonFiniteIntegrandError(f"integrand non-finite near node {where!r}")
    v15 = half * float(np.dot(_W15, y15))
    v7 = half * float(np.dot(_W7, y7))
    return v15, abs(v15 - v7)


def integrate(func, lo: float, hi: float, spec: QuadSpec | None = None) -> QuadResult:
    """Integrate func over (lo, hi), hi possibly math.inf.

    func maps an ndarray of nodes to an ndarray of values.  Endpoints are
    never evaluated.  Raises NonFiniteIntegrandError on nan/inf at a node;
    a blown subdivision budget comes back as converged=False.
    """
    if spec is None:
        spec = DEFAULT_SPEC
    if math.isnan(lo) or math.isnan(hi):
        raise ValueError("integration endpoints must not be nan")
    if not math.isfinite(lo):
        raise ValueError(f"lower endpoint must be finite, got {lo!r}")
    if hi < lo:
        raise ValueError(f"need lo <= hi, got ({lo!r}, {hi!r})")
    if lo == hi:
        return QuadResult(0.0, 0.0, 0, True)

    if math.isinf(hi):
        if spec.transform != "semi_infinite_rational":
            raise ValueError("infinite upper endpoint requires transform='semi_infinite_rational'")
        base = func
        shift = lo

        def func(u, _f=base, _a=shift):
            w = 1.0 / (1.0 - u)
            return _f(_a + u * w) * w * w

        lo, hi = 0.0, 1.0

    # Heap of (-error, seq, lo, hi, value, error); seq breaks ties so the
    # refinement order, and hence the result, is deterministic.
    seq = 0
    v, e = _panel(func, lo, hi)
    heap = [(-e, seq, lo, hi, v, e)]
    total_v, total_e = v, e
    frozen_v = frozen_e = 0.0  # panels too narrow to split further
    splits = 0

    while True:
        target = max(spec.abs_tol, spec.rel_tol * abs(total_v + frozen_v))
        if total_e + frozen_e <= target or not heap:
            break
        if splits >= spec.max_subdivisions:
            return QuadResult(total_v + frozen_v, total_e + frozen_e, splits, False)
        _, _, plo, phi, pv, pe = heapq.heappop(heap)
        total_v -= pv
        total_e -= pe
        mid = 0.5 * (plo + phi)
        if not (plo < mid < phi):
            frozen_v += pv
            frozen_e += pe
            continue
        splits += 1
        for qlo, qhi in ((plo, mid), (mid, phi)):
            v, e = _panel(func, qlo, qhi)
            seq += 1
            heapq.heappush(heap, (-e, seq, qlo, qhi, v, e))
            total_v += v
            total_e += e

    return QuadResult(total_v + frozen_v, total_e + frozen_e, splits, True)
