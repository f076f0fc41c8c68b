import numpy as np
import pytest

from mtlfilter.piecewise import Piecewise, envelope, real_roots, shift_poly
from mtlfilter.timeset import Piece, TimeSet


def test_shift_poly():
    # p(s) = 1 + 2s + 3s^2 ; p(s + 1) = 6 + 8s + 3s^2
    assert np.allclose(shift_poly([1, 2, 3], 1.0), [6, 8, 3])


def test_real_roots_inside_only():
    assert real_roots([-1, 0, 1], 0, 2) == [1.0]
    assert real_roots([1, 0, 1], -5, 5) == []


def test_envelope_switches_at_crossing():
    pieces = envelope([[0, 1], [1, 0]], 3.0)  # min(s, 1)
    assert [off for off, _ in pieces] == [0.0, 1.0]
    assert np.allclose(pieces[1][1], [1.0])


def test_from_timeset_keeps_point_values():
    s = TimeSet([Piece(1, 1, True, True), Piece(2, 3, False, True)], 5)
    f = Piecewise.from_timeset(s)
    assert [f.value_at(t) for t in (0.5, 1, 1.5, 2, 2.5, 3, 4)] == [0, 1, 0, 0, 1, 1, 0]
    assert f.is_boolean() and f.true_set() == s


def test_integral_and_limits():
    f = Piecewise([0.0, 2.0], [0.0, 1.0], [[0.0, 0.5], [1.0]], 4.0)  # ramp then flat
    assert f.integral_to(2) == pytest.approx(1.0)
    assert f.integral_to(10) == pytest.approx(3.0)
    assert f.left_limit(2.0) == pytest.approx(1.0)


def test_knots_represent_jumps_and_isolated_points():
    s = TimeSet([Piece(1, 1, True, True), Piece(2, 3, True, False)], 4)
    rows = Piecewise.from_timeset(s).knots()
    assert rows == [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (1.0, 0.0), (2.0, 0.0), (2.0, 1.0),
                    (3.0, 1.0), (3.0, 0.0), (4, 0.0)]


def test_to_piecewise_linear_needs_continuity():
    f = Piecewise([0.0, 1.0, 2.0], [0.0, 1.0, 1.0], [[0, 1], [1], [1, -0.5]], 4.0)
    pl = f.to_piecewise_linear()
    assert pl(0.5) == 0.5 and pl(3) == 0.5
    with pytest.raises(ValueError):
        Piecewise.from_timeset(TimeSet.from_cadlag([(1, 2)], 4)).to_piecewise_linear()


def test_build_simplifies_redundant_breaks():
    f = Piecewise.build([1.0, 2.0, 3.0], 4.0, lambda t: 0.5, lambda lo, hi: [(0.0, [0.5])])
    assert f.xs == [0.0]
