import math

import numpy as np
import pytest

from mtlfilter.errors import InvalidParam, KernelShapeError
from mtlfilter.formula import TimeInterval
from mtlfilter.kernel import (
    FUTURE, PAST, SINGULAR, centered_gaussian, centered_window, gaussian_window, make_window,
    mass, parse_kernel_spec, rect_window, sigmoid_window,
)

I14 = TimeInterval(1, 4)


def test_discrete_rect_height_is_one_over_point_count():
    k = rect_window(I14, PAST, "discrete")
    assert k.eval(1) == 0.25 and k.eval(4) == 0.25 and k.eval(0) == 0 and k.eval(2.5) == 0
    assert list(k.integer_lags()) == [1, 2, 3, 4]


def test_future_window_uses_negative_lags():
    k = rect_window(I14, FUTURE, "continuous")
    assert k.eval(-2) == pytest.approx(1 / 3) and k.eval(2) == 0
    assert k.window(10) == (11, 14)


def test_unnormalized_rect_is_indicator():
    k = rect_window(I14, PAST, "continuous", normalized=False)
    assert k.eval(1) == 1 and k.eval(4) == 1 and k.eval(4.01) == 0


def test_singular_window_is_a_delta():
    k = rect_window(TimeInterval(3, 3), PAST, "discrete")
    assert k.shape == SINGULAR and k.eval(3) == 1 and k.eval(2) == 0
    kc = rect_window(TimeInterval(3, 3), FUTURE, "continuous")
    assert math.isinf(kc.eval(-3)) and mass(kc) == 1


@pytest.mark.parametrize("time_kind", ["discrete", "continuous"])
@pytest.mark.parametrize("recip", [3, 8])
def test_gaussian_mass(time_kind, recip):
    k = gaussian_window(TimeInterval(1, 6), PAST, recip, time_kind)
    assert abs(mass(k) - 1) <= 1e-9


@pytest.mark.parametrize("steepness", [5, 50, 1000])
def test_sigmoid_mass(steepness):
    k = sigmoid_window(TimeInterval(1, 6), PAST, steepness)
    assert abs(mass(k) - 1) <= 1e-9


def test_sigmoid_approaches_rect_away_from_edges():
    rect = rect_window(TimeInterval(1, 6), PAST)
    sig = sigmoid_window(TimeInterval(1, 6), PAST, 1000)
    s = np.concatenate([np.linspace(-2, 0.99, 50), np.linspace(1.01, 5.99, 200), np.linspace(6.01, 9, 50)])
    assert np.max(np.abs(sig.eval(s) - rect.eval(s))) < 1e-3


def test_centered_windows():
    assert centered_window(2).eval(0.9) == 0.5
    assert centered_gaussian(1.0).eval(0) == pytest.approx(1 / math.sqrt(2 * math.pi))
    assert abs(mass(centered_gaussian(0.3)) - 1) < 1e-9


def test_kernel_spec_parsing():
    assert parse_kernel_spec("rect") == ("rect", None)
    assert parse_kernel_spec("gauss:8") == ("gaussian", 8.0)
    assert parse_kernel_spec("sigmoid:50") == ("sigmoid_edge", 50.0)
    for bad in ("box", "gauss:", "gauss:-1", "sigmoid:x"):
        with pytest.raises(InvalidParam):
            parse_kernel_spec(bad)


def test_smooth_kernel_has_no_boolean_form():
    with pytest.raises(KernelShapeError):
        make_window("gauss:8", I14, PAST, "continuous", normalized=False)
    assert make_window("gauss:8", TimeInterval(2, 2), PAST, "continuous").shape == SINGULAR
