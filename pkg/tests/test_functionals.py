import math

import numpy as np
import pytest
from scipy import integrate as sci

from ltbounds import constants, functionals, quad, trial

P11 = functionals.ProblemSpec(d=1, sigma=1.0)
P3HALF = functionals.ProblemSpec(d=3, sigma=0.5)

# frozen values, cross-checked against independent adaptive quadrature
C_SIMPLE = 0.3813773716772532    # deficit-optimal profile, bump_simple weight, (1, 1)
C_RICH = 0.3735546490692244      # (a, p) = (4.5, 0.25), bump_rich (0.36, 2.1), (1, 1)
C_FRACTIONAL = 0.04673623537366185  # (10, 0.25), bump_poly (2, 4), (3, 1/2)


def test_problem_spec_validation():
    assert functionals.ProblemSpec(d=3, sigma=0.5).tau == 3.0
    with pytest.raises(ValueError):
        functionals.ProblemSpec(d=0, sigma=1.0)
    with pytest.raises(ValueError):
        functionals.ProblemSpec(d=2, sigma=-1.0)
    with pytest.raises(ValueError):
        functionals.ProblemSpec(d=2, sigma=math.inf)


@pytest.mark.parametrize("beta", [1.5, 2.0, 4.0])
def test_deficit_functional_attains_closed_form(beta):
    """At the closed-form minimizer the functional equals tau * min J_beta."""
    fam = trial.normalize_profile("deficit_optimal", a=beta)
    problem = functionals.ProblemSpec(d=1, sigma=1.0 / (2.0 * (beta - 1.0)))
    value = functionals.deficit_functional(fam, problem)
    want = problem.tau * constants.deficit_min(beta).value
    np.testing.assert_allclose(value, want, rtol=1e-10)


def test_weighted_deficit_against_independent_quadrature():
    fam = trial.normalize_profile("rational_power", a=2.0, p=1.0)

    def integrand(t, beta):
        return float(trial.one_minus_profile(fam, np.array([t]))[0]) ** 2 * t**-beta

    for beta in (1.2, 1.5, 2.5):
        want, err = sci.quad(integrand, 0.0, math.inf, args=(beta,), limit=400)
        got = functionals.weighted_deficit(fam, beta)
        np.testing.assert_allclose(got, want, rtol=1e-8)


def test_weighted_deficit_dominated_by_minimum():
    # optimality of the closed form: every admissible family sits above it
    for beta in (1.5, 2.0, 3.0):
        floor = constants.deficit_min(beta).value
        for a in (1.2, 2.0, 3.5):
            for p in (0.6, 1.0, 1.6):
                fam = trial.normalize_profile("rational_power", a=a, p=p)
                if 2.0 * a <= beta - 1.0:
                    continue
                assert functionals.weighted_deficit(fam, beta) >= floor - 1e-12


def test_weighted_deficit_divergence_guards():
    fam = trial.normalize_profile("rational_power", a=0.7, p=1.0)
    with pytest.raises(functionals.DivergentError):
        functionals.weighted_deficit(fam, 2.5)  # 2a = 1.4 <= beta - 1
    with pytest.raises(functionals.DivergentError):
        functionals.weighted_deficit(fam, 1.0)  # beta must exceed 1


def test_averaged_profile_matches_direct_integral():
    fam = trial.normalize_profile("rational_power", a=4.5, p=0.25)
    w = trial.normalize_weight("bump_simple")
    for t in (0.7, 1.0, 3.2):
        want, _ = sci.quad(
            lambda s: float(trial.eval_weight(w, np.array([s]))[0])
            * float(trial.eval_profile(fam, np.array([s * t]))[0]), 0.0, 1.0, limit=200)
        np.testing.assert_allclose(functionals.averaged_profile(fam, w, t), want, rtol=1e-9)


def test_averaged_profile_limits():
    fam = trial.normalize_profile("rational_power", a=4.5, p=0.25)
    w = trial.normalize_weight("bump_simple")
    np.testing.assert_allclose(functionals.averaged_profile(fam, w, 0.0), 1.0, rtol=1e-10)
    g = [functionals.averaged_profile(fam, w, t) for t in (0.0, 0.5, 1.0, 2.0, 8.0)]
    assert all(x > y for x, y in zip(g, g[1:]))
    with pytest.raises(ValueError):
        functionals.averaged_profile(fam, w, -1.0)


def test_weight_l2_values():
    # int (5(1 - t^(1/4)))^2 = 25 (1 - 8/5 + 2/3) = 5/3; uniform = 1
    np.testing.assert_allclose(functionals.weight_l2(trial.normalize_weight("bump_simple")),
                               5.0 / 3.0, rtol=1e-10)
    np.testing.assert_allclose(functionals.weight_l2(trial.normalize_weight("uniform")),
                               1.0, rtol=1e-12)


def test_averaging_objective_frozen_trials():
    simple = functionals.averaging_objective(
        trial.normalize_profile("deficit_optimal", a=1.5),
        trial.normalize_weight("bump_simple"), P11)
    np.testing.assert_allclose(simple, C_SIMPLE, atol=1e-9)

    rich = functionals.averaging_objective(
        trial.normalize_profile("rational_power", a=4.5, p=0.25),
        trial.normalize_weight("bump_rich", q=0.36, r=2.1), P11)
    np.testing.assert_allclose(rich, C_RICH, atol=1e-9)

    frac = functionals.averaging_objective(
        trial.normalize_profile("rational_power", a=10.0, p=0.25),
        trial.normalize_weight("bump_poly", q=2.0, r=4.0), P3HALF)
    np.testing.assert_allclose(frac, C_FRACTIONAL, atol=1e-9)


def test_averaging_objective_indicator_uniform_exact():
    # piecewise-polynomial case with a closed form: 8/15
    value = functionals.averaging_objective(
        trial.normalize_profile("indicator"), trial.normalize_weight("uniform"), P11)
    np.testing.assert_allclose(value, 8.0 / 15.0, rtol=1e-10)


def test_averaging_objective_inadmissible_profile():
    fam = trial.normalize_profile("rational_power", a=0.7, p=1.0)
    with pytest.raises(functionals.DivergentError):
        functionals.averaging_objective(fam, trial.normalize_weight("uniform"), P3HALF)


def test_averaging_objective_random_pairs_respect_floor():
    # small version of the acceptance sweep: objective never drops below 1/3
    rng = np.random.default_rng(7)
    tau = P11.tau
    for _ in range(10):
        a = rng.uniform(tau / 2.0 + 0.1, 6.0)
        p = rng.uniform(max(0.55 / a, 0.05), 2.5)
        fam = trial.normalize_profile("rational_power", a=a, p=p)
        w = trial.normalize_weight("bump_poly", q=rng.uniform(0.2, 2.0), r=rng.uniform(0.6, 5.0))
        assert functionals.averaging_objective(fam, w, P11) >= 1.0 / 3.0 - 1e-6


def test_averaging_objective_quad_spec_passthrough():
    fam = trial.normalize_profile("rational_power", a=4.5, p=0.25)
    w = trial.normalize_weight("bump_rich", q=0.36, r=2.1)
    loose = functionals.averaging_objective(fam, w, P11, quad.QuadSpec(abs_tol=1e-7, rel_tol=1e-6))
    np.testing.assert_allclose(loose, C_RICH, atol=1e-5)
