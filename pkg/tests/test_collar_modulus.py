import math

import pytest

from hypcollar import collar_modulus as cm
from hypcollar import graph_modulus as gm
from hypcollar import hypgeom as hg


def test_half_collar_spec_constraint():
    # the opposite boundary must clear the standard collar of alpha
    cm.HalfCollarSpec(1.5, 1.2)  # r(0.75) ~ 1.03 < 1.2, fine
    with pytest.raises(hg.HypothesisError):
        cm.HalfCollarSpec(1.5, 0.3)
    with pytest.raises(ValueError):
        cm.HalfCollarSpec(-1.0, 1.0)


def test_nonstandard_lambda_requires_long_alpha():
    with pytest.raises(hg.HypothesisError):
        cm.nonstandard_half_collar_lambda(cm.HalfCollarSpec(0.5, math.inf))
    with pytest.raises(hg.HypothesisError):
        cm.glued_collar_lambda(cm.GluedCollarSpec(1.5, math.inf, math.inf, 0.0))


def test_envelope_vertical_modulus_closed_form():
    for l, g in ((4.0, math.inf), (8.0, 1.0), (12.0, math.inf)):
        spec = cm.HalfCollarSpec(l, g)
        numeric = gm.vertical_modulus(cm.half_collar_envelope(spec))
        closed = cm.half_collar_envelope_vertical_modulus(spec)
        assert numeric == pytest.approx(closed, rel=1e-6)


def test_envelope_encloses_true_graphs():
    # envelope pair must lie inside the true graph pair: g <= g_env < f_env <= f
    for l in (2.0, 6.0, 12.0):
        spec = cm.HalfCollarSpec(l, math.inf)
        true_pair = cm.nonstandard_half_collar_graphs(spec)
        env = cm.half_collar_envelope(spec)
        for i in range(201):
            x = -0.5 + i / 200.0
            assert env.f(x) <= true_pair.f(x) + 1e-12
            assert env.g(x) >= true_pair.g(x) - 1e-12
            assert env.f(x) > env.g(x)


def test_bounds_ordering_and_positivity():
    for l, g in ((2.0, math.inf), (6.0, 1.0), (10.0, math.inf)):
        b = cm.nonstandard_half_collar_lambda(cm.HalfCollarSpec(l, g))
        assert 0.0 < b.lower <= b.upper


def test_glued_zero_twist_doubles_gap():
    # with zero twist the glued channel is two mirror half-collars stacked:
    # the gap doubles pointwise, so the vertical modulus halves
    l = 8.0
    half = gm.vertical_modulus(
        cm.nonstandard_half_collar_graphs(cm.HalfCollarSpec(l, math.inf))
    )
    glued = gm.vertical_modulus(
        cm.glued_collar_graphs(cm.GluedCollarSpec(l, math.inf, math.inf, 0.0))
    )
    assert glued == pytest.approx(0.5 * half, rel=1e-8)


def test_nonstandard_beats_standard_for_long_alpha():
    # the gain of the nonstandard half-collar over the standard one grows
    # at least linearly in l
    ratios = []
    for l in (8.0, 12.0, 16.0, 20.0):
        b = cm.nonstandard_half_collar_lambda(cm.HalfCollarSpec(l, math.inf))
        std = hg.standard_half_collar_lambda(l)
        assert b.lower / std >= l / 200.0
        ratios.append(b.lower / std)
    assert all(y > x for x, y in zip(ratios, ratios[1:]))


def test_lambda_scales_with_opposite_boundary():
    # for long alpha, lambda is comparable to l(eta) ~ tanh(l_gamma)
    l = 12.0
    a = cm.nonstandard_half_collar_lambda(cm.HalfCollarSpec(l, 0.5))
    b = cm.nonstandard_half_collar_lambda(cm.HalfCollarSpec(l, 0.25))
    want = math.tanh(0.5) / math.tanh(0.25)
    assert a.geometric_mean / b.geometric_mean == pytest.approx(want, rel=0.25)


def test_glued_twist_validation():
    with pytest.raises(ValueError):
        cm.GluedCollarSpec(8.0, math.inf, math.inf, 0.7)
    spec = cm.GluedCollarSpec(8.0, math.inf, math.inf, 0.5)
    assert spec.twist == 0.5


def test_glued_result_fields():
    res = cm.glued_collar_lambda(cm.GluedCollarSpec(8.0, math.inf, math.inf, 0.25))
    assert 0.0 < res.bounds.lower <= res.bounds.upper
    assert res.proxy > 0.0
    # the proxy is a two-sided surrogate for the lower bound
    assert 0.01 < res.bounds.lower / res.proxy < 100.0


def test_glued_twist_improves_lower_bound():
    # twisting misaligns the two envelope spikes and widens the channel
    l = 12.0
    lows = [
        cm.glued_collar_lambda(
            cm.GluedCollarSpec(l, math.inf, math.inf, t)
        ).bounds.lower
        for t in (0.0, 0.25, 0.5)
    ]
    assert lows[0] < lows[1] < lows[2]


def test_glued_twist_sign_symmetry():
    l = 10.0
    a = cm.glued_collar_lambda(cm.GluedCollarSpec(l, math.inf, math.inf, 0.25))
    b = cm.glued_collar_lambda(cm.GluedCollarSpec(l, math.inf, math.inf, -0.25))
    assert a.bounds.lower == pytest.approx(b.bounds.lower, rel=1e-6)
    assert a.bounds.upper == pytest.approx(b.bounds.upper, rel=1e-6)
