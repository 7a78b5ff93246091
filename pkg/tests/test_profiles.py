"""Energy weight profiles: closed-form derivatives and coefficient conditions."""

import dataclasses
import math

import numpy as np
import pytest

from fharmonic import (Condition, FProfile, ProfileValidationError,
                       SingularDerivativeError, check_condition, evaluate,
                       validate_derivatives)
from fharmonic.profiles import constant_profile


def test_linear_evaluate():
    f, f1, f2 = evaluate(FProfile.linear(), 1.7)
    assert f == 1.7
    assert f1 == 1.0
    assert f2 == 0.0


def test_pnorm4_at_2():
    # (1/4)(2t)^2 differentiated by hand: F(2)=4, F'(2)=4, F''(2)=2
    f, f1, f2 = evaluate(FProfile.pnorm(4.0), 2.0)
    assert abs(f - 4.0) < 1e-12
    assert abs(f1 - 4.0) < 1e-12
    assert abs(f2 - 2.0) < 1e-12


def test_sqrt_shift_at_half():
    f, f1, f2 = evaluate(FProfile.sqrt_shift(), 0.5)
    assert abs(f - 1.2247) < 1e-4
    assert abs(f1 - 0.40825) < 1e-4
    assert abs(f2 - (-0.13608)) < 1e-4


def test_exp_affine_closed_form():
    p = FProfile.exp_affine(2.0, 0.5, 1.0, 3.0)
    t = 0.8
    e = math.exp(0.5 * t)
    f, f1, f2 = evaluate(p, t)
    assert abs(f - (2.0 * e + t + 3.0)) < 1e-12
    assert abs(f1 - (e + 1.0)) < 1e-12
    assert abs(f2 - 0.5 * e) < 1e-12


def test_pnorm2_equals_linear():
    t = np.linspace(0.0, 20.0, 101)
    fa, fa1, fa2 = evaluate(FProfile.pnorm(2.0), t)
    fb, fb1, fb2 = evaluate(FProfile.linear(), t)
    np.testing.assert_allclose(fa, fb, atol=1e-14)
    np.testing.assert_allclose(fa1, fb1, atol=1e-14)
    np.testing.assert_allclose(fa2, fb2, atol=1e-14)


def test_scalar_vs_array_agree():
    p = FProfile.sqrt_shift()
    t = np.array([0.1, 1.0, 7.5])
    fa, fa1, fa2 = evaluate(p, t)
    for i, ti in enumerate(t):
        f, f1, f2 = evaluate(p, float(ti))
        assert isinstance(f, float)
        assert (f, f1, f2) == (fa[i], fa1[i], fa2[i])


def test_negative_density_rejected():
    with pytest.raises(ValueError):
        evaluate(FProfile.linear(), -0.5)
    with pytest.raises(ValueError):
        evaluate(FProfile.linear(), np.array([0.2, -0.1]))


def test_pnorm_singular_second_derivative_at_zero():
    with pytest.raises(SingularDerivativeError):
        evaluate(FProfile.pnorm(3.0), 0.0)
    # p = 4 is regular at the origin
    f, f1, f2 = evaluate(FProfile.pnorm(4.0), 0.0)
    assert (f, f1, f2) == (0.0, 0.0, 2.0)


def test_pnorm_exponent_range():
    with pytest.raises(ProfileValidationError):
        FProfile.pnorm(1.5)


def test_validation_rejects_decreasing_profile():
    # alpha < 0, beta < 0 gives F' = alpha*beta*e^{beta t} > 0; flip one sign
    with pytest.raises(ProfileValidationError):
        FProfile.exp_affine(1.0, -1.0)


def test_validation_rejects_negative_profile():
    # F(t) = t - 1 is negative near zero even though F' = 1 > 0
    with pytest.raises(ProfileValidationError):
        FProfile.exp_affine(-1.0, 0.0, 1.0, 0.0)


def test_from_config_dispatch():
    assert FProfile.from_config("Linear", {}).kind == "Linear"
    assert FProfile.from_config("PNorm", {"p": 3.0}).params == (3.0,)
    assert FProfile.from_config("SqrtShift", {}).kind == "SqrtShift"
    p = FProfile.from_config("ExpAffine", {"alpha": 9.0, "beta": 1.0 / 9.0})
    assert p.params == (9.0, 1.0 / 9.0, 0.0, 0.0)
    with pytest.raises(ProfileValidationError):
        FProfile.from_config("Cubic", {})
    with pytest.raises(ProfileValidationError):
        FProfile.from_config("Linear", {"p": 2.0})


def test_profile_is_frozen():
    p = FProfile.linear()
    with pytest.raises(dataclasses.FrozenInstanceError):
        p.kind = "PNorm"


def test_condition_constructors_guard_ranges():
    with pytest.raises(ValueError):
        Condition.stability_identity(2)
    with pytest.raises(ValueError):
        Condition.index_identity(2)
    with pytest.raises(ValueError):
        Condition.homothetic(1, 1.0)
    with pytest.raises(ValueError):
        Condition.homothetic(3, 0.0)


def test_linear_stability_value_is_formula_not_remark():
    # value must come out of the formula: F''(m/2) + (2-m) F'(m/2) = 2 - m
    for m in (3, 4, 7):
        chk = check_condition(FProfile.linear(), Condition.stability_identity(m))
        assert abs(chk.value - (2.0 - m)) < 1e-12
        assert not chk.holds


def test_linear_index_condition_m3():
    chk = check_condition(FProfile.linear(), Condition.index_identity(3))
    assert abs(chk.value - 1.0 / 3.0) < 1e-12
    assert chk.holds


def test_index_family_value_one_third():
    # alpha = m/(m-2), beta = (m-2)/m, gamma = 1 at m = 3: the exponential
    # terms cancel and the value collapses to gamma/3, exact to roundoff
    p = FProfile.exp_affine(3.0, 1.0 / 3.0, 1.0, 0.0)
    chk = check_condition(p, Condition.index_identity(3))
    assert abs(chk.value - 1.0 / 3.0) < 1e-4
    assert chk.holds


def test_homothetic_family_value():
    # alpha = m^2/(m-2), beta = (m-2)/m^2 at m = 3, density t = m k^2/2
    p = FProfile.exp_affine(9.0, 1.0 / 9.0, 0.0, 0.0)
    chk = check_condition(p, Condition.homothetic(3, 1.5))
    assert abs(chk.value - 0.2625) < 1e-4
    assert chk.holds


def test_stability_family_value():
    # alpha = 1/(2-m), beta = 2-m, delta = 1 at m = 3
    p = FProfile.exp_affine(-1.0, -1.0, 0.0, 1.0)
    chk = check_condition(p, Condition.stability_identity(3))
    assert abs(chk.value - (-0.4463)) < 1e-4
    assert not chk.holds


def test_homothetic_strict_comparator():
    # Linear at m = 2 gives value exactly 0; strict > must report False
    chk = check_condition(FProfile.linear(), Condition.homothetic(2, 0.5))
    assert chk.value == 0.0
    assert not chk.holds


def test_unknown_condition_kind_rejected():
    bad = Condition("spectral_gap", 3)
    with pytest.raises(ValueError):
        check_condition(FProfile.linear(), bad)


def test_fd_cross_check_sqrt_shift():
    worst = validate_derivatives(FProfile.sqrt_shift(), 0.1, 5.0, samples=50)
    assert worst <= 1e-5


def test_fd_cross_check_pnorm3():
    worst = validate_derivatives(FProfile.pnorm(3.0), 0.5, 4.0, samples=50)
    assert worst <= 1e-5


def test_fd_cross_check_bad_range():
    with pytest.raises(ValueError):
        validate_derivatives(FProfile.linear(), 2.0, 1.0)


def test_constant_profile_bypasses_validation():
    p = constant_profile(2.5)
    f, f1, f2 = evaluate(p, 3.0)
    assert f == 2.5
    assert f1 == 0.0
    assert f2 == 0.0
