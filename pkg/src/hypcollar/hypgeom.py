"""Closed-form hyperbolic trigonometry for pairs of pants and collars.

Lengths are plain floats.  A length of ``math.inf`` is accepted only where a
boundary curve is allowed to degenerate to a puncture/flare (the ``l_gamma``
arguments); everywhere else lengths must be finite and positive.
"""

import math

INF = math.inf


class HypothesisError(ValueError):
    """A geometric hypothesis of one of the closed-form bounds is violated."""


def _require_positive(name, x, allow_inf=False):
    if not isinstance(x, (int, float)):
        raise TypeError("%s must be a number, got %r" % (name, x))
    if math.isnan(x) or x <= 0:
        raise ValueError("%s must be positive, got %r" % (name, x))
    if math.isinf(x) and not allow_inf:
        raise ValueError("%s must be finite, got %r" % (name, x))
    return float(x)


def collar_width(x):
    """Half-width r(x) = arcsinh(1 / sinh x) of the standard collar.

    Satisfies sinh(r(x)) * sinh(x) = 1, so r is an involution.
    """
    x = _require_positive("x", x)
    if x > 700.0:
        # 1/sinh x underflows the direct route; arcsinh(t) = t + O(t^3).
        return 2.0 * math.exp(-x)
    return math.asinh(1.0 / math.sinh(x))


def eta_length(l_alpha, l_gamma):
    """Half-length of the orthogeodesic arc eta in a pair of pants.

    eta is the shortest arc from the boundary alpha to itself separating the
    other two boundaries; its half-length satisfies
    tanh(eta) = tanh(l_gamma) / cosh(l_alpha / 2), with tanh(inf) = 1 when the
    opposite boundary degenerates.
    """
    l_alpha = _require_positive("l_alpha", l_alpha)
    l_gamma = _require_positive("l_gamma", l_gamma, allow_inf=True)
    t = 1.0 if math.isinf(l_gamma) else math.tanh(l_gamma)
    u = 0.5 * l_alpha
    if u > 700.0:
        # 1/cosh(u) = 2 e^{-u} / (1 + e^{-2u}); atanh(s) = s for tiny s.
        return t * 2.0 * math.exp(-u)
    return math.atanh(t / math.cosh(u))


def ortho_between_boundaries(l_alpha, l_alpha1, l_alpha2):
    """Length of the orthogeodesic between boundaries alpha and alpha1.

    Right-angled hexagon relation for a pair of pants with boundary lengths
    (l_alpha, l_alpha1, l_alpha2):

        cosh l = coth(l_alpha1/2) coth(l_alpha/2)
                 + cosh(l_alpha2/2) / (sinh(l_alpha1/2) sinh(l_alpha/2))
    """
    a = 0.5 * _require_positive("l_alpha", l_alpha)
    a1 = 0.5 * _require_positive("l_alpha1", l_alpha1)
    if math.isnan(l_alpha2) or l_alpha2 < 0:
        raise ValueError("l_alpha2 must be >= 0, got %r" % (l_alpha2,))
    a2 = 0.5 * float(l_alpha2)
    arg = (1.0 / math.tanh(a1)) * (1.0 / math.tanh(a)) + math.cosh(a2) / (
        math.sinh(a1) * math.sinh(a)
    )
    return math.acosh(arg)


def flute_ortho_delta(l_n, l_next):
    """Length of the arc delta_n between consecutive flute boundaries.

    Each leg delta_n^i satisfies sinh(len) * sinh(l/2) = 1, i.e. its length is
    collar_width(l/2); the two legs concatenate.
    """
    return collar_width(0.5 * _require_positive("l_n", l_n)) + collar_width(
        0.5 * _require_positive("l_next", l_next)
    )


def saccheri_summit(l_delta, sigma):
    """Summit length of a Saccheri quadrilateral.

    Base l_delta, both legs of length sigma/2 at right angles:
        sinh(s/2) = sinh(l_delta/2) * cosh(sigma/2).
    """
    l_delta = _require_positive("l_delta", l_delta)
    if math.isnan(sigma) or sigma < 0 or math.isinf(sigma):
        raise ValueError("sigma must be finite and >= 0, got %r" % (sigma,))
    return 2.0 * math.asinh(math.sinh(0.5 * l_delta) * math.cosh(0.5 * sigma))


def standard_half_collar_lambda(l):
    """Extremal distance across the standard half-collar of a geodesic.

    lambda(l) = arctan(1 / sinh(l/2)) / l.  Behaves like 1/(l e^{l/2}) for
    large l and like (pi/2)/l for small l.
    """
    l = _require_positive("l", l)
    u = 0.5 * l
    if u > 700.0:
        return 2.0 * math.exp(-u) / l
    return math.atan(1.0 / math.sinh(u)) / l


def normalize_twist(t):
    """Reduce a twist parameter modulo 1 into the interval (-1/2, 1/2]."""
    if not isinstance(t, (int, float)) or math.isnan(t) or math.isinf(t):
        raise ValueError("twist must be a finite number, got %r" % (t,))
    u = float(t) % 1.0
    if u > 0.5:
        u -= 1.0
    return u


def validate_twist(t):
    """Check that t already lies in the canonical interval (-1/2, 1/2]."""
    if not isinstance(t, (int, float)) or math.isnan(t) or math.isinf(t):
        raise ValueError("twist must be a finite number, got %r" % (t,))
    if not (-0.5 < t <= 0.5):
        raise ValueError("twist must lie in (-1/2, 1/2], got %r" % (t,))
    return float(t)
