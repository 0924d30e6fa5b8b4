"""Trial families: momentum profiles f and averaging weights phi.

A profile f lives on (0, inf) with f(0+) = 1 and int f(t)^2 dt = 1; the
kinetic bounds come out of how fast 1 - f can vanish at 0 while keeping the
L2 normalization.  Kinds:

  rational_power   f(t) = (1 + mu t^a)^(-p), needs 2pa > 1 for L2;
                   normalization fixes mu = (B(1/a, 2p - 1/a)/a)^a
                   (substitute u = mu t^a and integrate termwise)
  deficit_optimal  f(t) = 1/(1 + mu* t^beta), the exact minimizer of the
                   weighted deficit int (1-f)^2 t^(-beta) dt at exponent
                   beta; stored as the a = beta, p = 1 member with the
                   closed-form scale
  indicator        f = 1 on (0,1], 0 beyond; already normalized

A weight phi lives on (0,1] with int phi = 1.  Kinds:

  bump_simple      phi(t) = 5 (1 - t^(1/4)), normalization exact
  bump_rich        phi(t) = c (1 - t^q)^r / (1 + t), c by quadrature
  bump_poly        phi(t) = c (1 - t^q)^r, c = q / B(1/q, r + 1)
  uniform          phi = 1 on (0,1]

Families are immutable; construct them through normalize_profile /
normalize_weight so the stored scale constants always match the stated
normalization.  Serialization uses a flat JSON object with keys drawn from
{"kind","a","p","mu","q","r","c"}, absent fields omitted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import quad
from .specfun import log_beta

__all__ = [
    "ConstraintViolationError",
    "ProfileFamily",
    "WeightFamily",
    "normalize_profile",
    "normalize_weight",
    "eval_profile",
    "one_minus_profile",
    "eval_weight",
    "profile_from_json",
    "weight_from_json",
]

PROFILE_KINDS = ("rational_power", "indicator", "deficit_optimal")
WEIGHT_KINDS = ("bump_simple", "bump_rich", "bump_poly", "uniform")

_EXP_OVERFLOW = 709.0


class ConstraintViolationError(ValueError):
    """Family parameters violate an admissibility constraint."""


@dataclass(frozen=True)
class ProfileFamily:
    kind: str
    a: float | None = None
    p: float | None = None
    mu: float | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for key in ("a", "p", "mu"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


@dataclass(frozen=True)
class WeightFamily:
    kind: str
    q: float | None = None
    r: float | None = None
    c: float | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        for key in ("q", "r", "c"):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def normalize_profile(kind: str, a: float | None = None, p: float | None = None) -> ProfileFamily:
    """Build a profile with the L2 normalization constant filled in.

    rational_power and deficit_optimal compute mu in closed form; the
    indicator needs no parameters.  Raises ConstraintViolationError when
    the parameters leave L2 (2pa <= 1) or are out of domain.
    """
    if kind == "indicator":
        if a is not None or p is not None:
            raise ConstraintViolationError("indicator profile takes no parameters")
        return ProfileFamily(kind="indicator")
    if kind == "deficit_optimal":
        # the a = beta, p = 1 member; mu comes out of the same closed form
        if a is None or not (a > 1.0):
            raise ConstraintViolationError(f"deficit_optimal requires exponent a > 1, got {a!r}")
        if p is not None and p != 1.0:
            raise ConstraintViolationError("deficit_optimal fixes p = 1")
        return ProfileFamily(kind="deficit_optimal", a=float(a), p=1.0, mu=_mu_closed_form(float(a), 1.0))
    if kind == "rational_power":
        if a is None or p is None or not (a > 0.0 and p > 0.0):
            raise ConstraintViolationError(f"rational_power requires a > 0 and p > 0, got a={a!r}, p={p!r}")
        if 2.0 * p * a <= 1.0:
            raise ConstraintViolationError(f"rational_power needs 2pa > 1 for L2, got 2pa={2.0 * p * a!r}")
        return ProfileFamily(kind="rational_power", a=float(a), p=float(p), mu=_mu_closed_form(float(a), float(p)))
    raise ConstraintViolationError(f"unknown profile kind {kind!r}")


def _mu_closed_form(a: float, p: float) -> float:
    # int f^2 = mu^(-1/a) B(1/a, 2p - 1/a)/a, so int f^2 = 1 at
    # mu = (B(1/a, 2p - 1/a)/a)^a; evaluated in log space.
    log_mu = a * (log_beta(1.0 / a, 2.0 * p - 1.0 / a) - np.log(a))
    if log_mu > _EXP_OVERFLOW:
        raise ConstraintViolationError(f"normalization scale overflows: log mu = {log_mu!r}")
    return float(np.exp(log_mu))


def eval_profile(fam: ProfileFamily, t):
    """f(t) for t >= 0 (scalar or ndarray)."""
    t = np.asarray(t, dtype=float)
    if fam.kind == "indicator":
        return np.where(t <= 1.0, 1.0, 0.0)
    with np.errstate(over="ignore"):
        return np.exp(-fam.p * np.log1p(fam.mu * t**fam.a))


def one_minus_profile(fam: ProfileFamily, t):
    """1 - f(t) without cancellation at small t.

    Near 0 the direct difference loses all digits once mu t^a drops under
    machine epsilon; expm1/log1p keep the t^a leading order exact.
    """
    t = np.asarray(t, dtype=float)
    if fam.kind == "indicator":
        return np.where(t <= 1.0, 0.0, 1.0)
    with np.errstate(over="ignore"):
        return -np.expm1(-fam.p * np.log1p(fam.mu * t**fam.a))


def normalize_weight(kind: str, q: float | None = None, r: float | None = None,
                     quad_spec: quad.QuadSpec | None = None) -> WeightFamily:
    """Build a weight with int_0^1 phi = 1.

    bump_simple and uniform carry exact constants, bump_poly a Beta-function
    closed form, bump_rich a quadrature value.  Raises
    ConstraintViolationError on bad parameters or a degenerate (zero /
    non-finite) unnormalized integral.
    """
    if kind == "bump_simple":
        if q is not None or r is not None:
            raise ConstraintViolationError("bump_simple takes no parameters")
        return WeightFamily(kind="bump_simple", c=5.0)
    if kind == "uniform":
        if q is not None or r is not None:
            raise ConstraintViolationError("uniform takes no parameters")
        return WeightFamily(kind="uniform", c=1.0)
    if kind not in ("bump_rich", "bump_poly"):
        raise ConstraintViolationError(f"unknown weight kind {kind!r}")
    if q is None or r is None or not (q > 0.0) or not (r >= 0.0):
        raise ConstraintViolationError(f"{kind} requires q > 0 and r >= 0, got q={q!r}, r={r!r}")
    q, r = float(q), float(r)
    if kind == "bump_poly":
        # int_0^1 (1 - t^q)^r dt = B(1/q, r+1)/q via u = t^q
        c = float(np.exp(np.log(q) - log_beta(1.0 / q, r + 1.0)))
        return WeightFamily(kind="bump_poly", q=q, r=r, c=c)
    res = quad.integrate(lambda t: (1.0 - t**q) ** r / (1.0 + t), 0.0, 1.0, quad_spec)
    if not res.converged:
        raise ConstraintViolationError(f"weight normalization integral did not converge: {res!r}")
    if not (res.value > 0.0) or not np.isfinite(res.value):
        raise ConstraintViolationError(f"weight normalization integral degenerate: {res.value!r}")
    return WeightFamily(kind="bump_rich", q=q, r=r, c=1.0 / res.value)


def eval_weight(fam: WeightFamily, t):
    """phi(t), zero outside [0, 1] (scalar or ndarray)."""
    t = np.asarray(t, dtype=float)
    inside = (t >= 0.0) & (t <= 1.0)
    if fam.kind == "uniform":
        return np.where(inside, 1.0, 0.0)
    if fam.kind == "bump_simple":
        u = np.clip(t, 0.0, 1.0)
        return np.where(inside, 5.0 * (1.0 - u**0.25), 0.0)
    u = np.clip(t, 0.0, 1.0)
    base = fam.c * (1.0 - u**fam.q) ** fam.r
    if fam.kind == "bump_rich":
        base = base / (1.0 + u)
    return np.where(inside, base, 0.0)


_PROFILE_FIELDS = {"rational_power": ("a", "p", "mu"), "deficit_optimal": ("a", "p", "mu"), "indicator": ()}
_WEIGHT_FIELDS = {"bump_simple": ("c",), "uniform": ("c",), "bump_rich": ("q", "r", "c"), "bump_poly": ("q", "r", "c")}


def _from_json(obj: dict, cls, fields_by_kind: dict, label: str):
    if not isinstance(obj, dict):
        raise ValueError(f"{label} JSON must be an object, got {type(obj).__name__}")
    kind = obj.get("kind")
    if kind not in fields_by_kind:
        raise ValueError(f"unknown {label} kind {kind!r}")
    fields = fields_by_kind[kind]
    extra = set(obj) - {"kind", *fields}
    if extra:
        raise ValueError(f"unexpected {label} fields {sorted(extra)!r} for kind {kind!r}")
    missing = [f for f in fields if f not in obj]
    if missing:
        raise ValueError(f"missing {label} fields {missing!r} for kind {kind!r}")
    vals = {}
    for f in fields:
        v = obj[f]
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise ValueError(f"{label} field {f!r} must be a number, got {v!r}")
        vals[f] = float(v)
    return cls(kind=kind, **vals)


def profile_from_json(obj: dict) -> ProfileFamily:
    """Inverse of ProfileFamily.to_json; rejects unknown kinds and fields."""
    return _from_json(obj, ProfileFamily, _PROFILE_FIELDS, "profile")


def weight_from_json(obj: dict) -> WeightFamily:
    """Inverse of WeightFamily.to_json; rejects unknown kinds and fields."""
    return _from_json(obj, WeightFamily, _WEIGHT_FIELDS, "weight")
