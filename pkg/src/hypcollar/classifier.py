"""Parabolicity classifier for flute-type surfaces, exhaustions and covers.

Every verdict cites the criterion (divergent series) it used.  Series of the
form sum C * n^-p * (ln n)^-q * (ln ln n)^-r are classified exactly
(divergent iff p < 1, or p = 1 and q < 1, or p = q = 1 and r <= 1); these
arise whenever the length spec is logarithmic.  Everything else falls back to
partial sums with a log-log slope fit, which can be inconclusive and is never
allowed to certify a non-parabolic verdict.
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .hypgeom import normalize_twist, standard_half_collar_lambda
from .surfaces import (
    AbelianCover,
    AlternatingLogAffine,
    BiInfiniteFlute,
    BoundedBoundary,
    CantorTree,
    Constant,
    ExplicitPrefixThenTail,
    Flute,
    FluteSpec,
    Ladder,
    Linear,
    LochNess,
    LogAffine,
    ScaledPowerDecay,
    SpecError,
    is_concave,
    log_affine,
    sigma_sequence,
)
from .hypgeom import HypothesisError

_TOL = 1e-12


# ---------------------------------------------------------------------------
# series classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeriesBehavior:
    """Verdict on a positive series: diverges / converges / inconclusive."""

    verdict: str  # "diverges" | "converges" | "inconclusive"
    method: str  # "bertrand-exact" | "partial-sum"
    detail: str = ""

    @property
    def exact(self):
        return self.method == "bertrand-exact"


@dataclass(frozen=True)
class SeriesTerms:
    """Structured terms C * e^{-kappa l_n} * n^{-poly} / l_n^{length_factor}."""

    lengths: object
    kappa: float
    poly_exponent: float = 0.0
    length_factor: bool = False


@dataclass(frozen=True)
class _Exponents:
    """Terms comparable (bounded ratio) to n^-p (ln n)^-q (ln ln n)^-r."""

    p: float
    q: float = 0.0
    r: float = 0.0

    def diverges(self):
        if self.p == -math.inf:
            return True
        if self.p == math.inf:
            return False
        if self.p < 1.0 - _TOL:
            return True
        if self.p > 1.0 + _TOL:
            return False
        if self.q < 1.0 - _TOL:
            return True
        if self.q > 1.0 + _TOL:
            return False
        return self.r <= 1.0 + _TOL


def _exponents_single(spec, kappa, poly, length_factor):
    """Exponent triple for one non-alternating shape, or None."""
    if isinstance(spec, Constant):
        return _Exponents(p=poly)
    if isinstance(spec, LogAffine):
        p = poly + kappa * spec.log_coef_sum
        q = kappa * spec.loglog_coef
        r = 0.0
        if length_factor:
            if spec.log_coef_sum != 0:
                q += 1.0
            elif spec.loglog_coef != 0:
                r += 1.0
        return _Exponents(p=p, q=q, r=r)
    if isinstance(spec, Linear):
        if kappa > 0 and spec.slope > 0:
            return _Exponents(p=math.inf)
        p = poly + (1.0 if length_factor and spec.slope > 0 else 0.0)
        return _Exponents(p=p)
    if isinstance(spec, ScaledPowerDecay):
        # e^{-kappa l_n} -> 1; the 1/l_n factor grows geometrically
        if length_factor:
            return _Exponents(p=-math.inf)
        return _Exponents(p=poly)
    return None


def _exponent_forms(terms):
    """List of exponent triples for the branches of the term family."""
    spec = terms.lengths
    if isinstance(spec, ExplicitPrefixThenTail):
        spec = spec.tail
    if isinstance(spec, AlternatingLogAffine):
        forms = []
        for branch in (spec.even, spec.odd):
            f = _exponents_single(
                branch, terms.kappa, terms.poly_exponent, terms.length_factor
            )
            if f is None:
                return None
            forms.append(f)
        return forms
    f = _exponents_single(
        spec, terms.kappa, terms.poly_exponent, terms.length_factor
    )
    return None if f is None else [f]


def _term_value(terms, n):
    l = terms.lengths.term(n)
    v = -terms.kappa * l - terms.poly_exponent * math.log(n)
    if terms.length_factor:
        v -= math.log(l)
    return math.exp(v)


def _partial_sum_slope(term_fn, n_lo=10_000, n_hi=1_000_000, points=60):
    ns = np.unique(np.geomspace(n_lo, n_hi, points).astype(np.int64))
    logs = []
    for n in ns:
        t = term_fn(int(n))
        if t <= 0 or not math.isfinite(t):
            return None
        logs.append(math.log(t))
    slope = np.polyfit(np.log(ns.astype(float)), np.array(logs), 1)[0]
    return float(-slope)


def _heuristic(term_fn):
    p_hat = _partial_sum_slope(term_fn)
    if p_hat is None:
        return SeriesBehavior("inconclusive", "partial-sum", "non-power terms")
    detail = "fitted exponent %.4f" % p_hat
    if p_hat < 0.9:
        return SeriesBehavior("diverges", "partial-sum", detail)
    if p_hat > 1.1:
        return SeriesBehavior("converges", "partial-sum", detail)
    return SeriesBehavior("inconclusive", "partial-sum", detail)


def classify_series(terms):
    """Classify sum of C e^{-kappa l_n} n^{-m} / l_n^{e} for a length spec.

    Exact for logarithmic/constant/linear shapes; otherwise a partial-sum
    heuristic over n <= 10^6 with an ambiguity band around exponent 1.
    """
    forms = _exponent_forms(terms)
    if forms is not None:
        div = any(f.diverges() for f in forms)
        detail = ", ".join(
            "p=%g q=%g r=%g" % (f.p, f.q, f.r) for f in forms
        )
        return SeriesBehavior(
            "diverges" if div else "converges", "bertrand-exact", detail
        )
    return _heuristic(lambda n: _term_value(terms, n))


# ---------------------------------------------------------------------------
# sigma series (half-twist incompleteness test)
# ---------------------------------------------------------------------------


def _telescoping_branches(lengths):
    """Detect l_{2k} = a ln(k+s+1) + b ln(k+s), l_{2k+1} = (a+b) ln(k+s+1).

    For this shape the alternating sums sigma telescope:
    sigma_{2k} = a ln(k+s+1) + const and sigma_{2k+1} = b ln(k+s+1) + const,
    so the sigma series is Bertrand-classifiable.  Returns (a, b) or None.
    """
    spec = lengths
    if isinstance(spec, ExplicitPrefixThenTail):
        if len(spec.values) != 1:
            return None
        spec = spec.tail
    if not isinstance(spec, AlternatingLogAffine):
        return None
    ev, od = spec.even, spec.odd
    if ev.loglog_coef or od.loglog_coef or ev.const != od.const:
        return None
    if len(ev.log_terms) != 2 or len(od.log_terms) != 1:
        return None
    (a1, s1), (a2, s2) = sorted(ev.log_terms, key=lambda t: -t[1])
    (ao, so) = od.log_terms[0]
    if not (
        math.isclose(s1, s2 + 1.0, rel_tol=0, abs_tol=1e-12)
        and math.isclose(so, s1, rel_tol=0, abs_tol=1e-12)
        and math.isclose(ao, a1 + a2, rel_tol=1e-12, abs_tol=1e-12)
    ):
        return None
    # safety net: the even-branch difference sigma_{2k} - a ln(k+s+1) must be
    # constant in k if the closed form really applies
    sig = sigma_sequence(lengths, 41)
    d1 = sig[23] - a1 * math.log(12 + s1)
    d2 = sig[39] - a1 * math.log(20 + s1)
    if not math.isclose(d1, d2, rel_tol=0, abs_tol=1e-9):
        return None
    return (a1, a2)


def classify_sigma_series(lengths, kappa=0.5):
    """Behaviour of sum e^{-kappa sigma_n} for the alternating sums sigma."""
    if isinstance(lengths, Constant):
        # sigma alternates between l and 0: constant subsequence of terms.
        return SeriesBehavior("diverges", "bertrand-exact", "p=0 (sigma hits 0)")
    branches = _telescoping_branches(lengths)
    if branches is not None:
        a, b = branches
        forms = [_Exponents(p=kappa * a), _Exponents(p=kappa * b)]
        div = any(f.diverges() for f in forms)
        return SeriesBehavior(
            "diverges" if div else "converges",
            "bertrand-exact",
            "sigma branches p=%g, p=%g" % (kappa * a, kappa * b),
        )
    sig = sigma_sequence(lengths, 200_000)
    return _heuristic_list([math.exp(-kappa * s) for s in sig])


def _heuristic_list(values):
    ns = np.unique(np.geomspace(1000, len(values), 60).astype(np.int64))
    logs = []
    for n in ns:
        t = values[n - 1]
        if t <= 0 or not math.isfinite(t):
            return SeriesBehavior("inconclusive", "partial-sum", "non-power terms")
        logs.append(math.log(t))
    slope = np.polyfit(np.log(ns.astype(float)), np.array(logs), 1)[0]
    p_hat = float(-slope)
    detail = "fitted exponent %.4f" % p_hat
    if p_hat < 0.9:
        return SeriesBehavior("diverges", "partial-sum", detail)
    if p_hat > 1.1:
        return SeriesBehavior("converges", "partial-sum", detail)
    return SeriesBehavior("inconclusive", "partial-sum", detail)


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Classification outcome with the criterion that produced it."""

    kind: str  # "Parabolic" | "NotParabolic" | "Unknown"
    criterion: str
    reason: Optional[str] = None  # for NotParabolic
    series: Optional[SeriesBehavior] = None
    hypotheses_assumed: Tuple[str, ...] = ()

    def as_dict(self):
        return {
            "kind": self.kind,
            "reason": self.reason,
            "criterion": self.criterion,
            "series": None
            if self.series is None
            else {
                "verdict": self.series.verdict,
                "method": self.series.method,
                "detail": self.series.detail,
            },
            "hypotheses_assumed": list(self.hypotheses_assumed),
        }


def _has_bounded_subsequence(spec):
    if isinstance(spec, ExplicitPrefixThenTail):
        return _has_bounded_subsequence(spec.tail)
    if isinstance(spec, AlternatingLogAffine):
        return spec.has_bounded_branch
    return getattr(spec, "is_bounded", False)


def _constant_twist(twists):
    if isinstance(twists, Constant):
        return normalize_twist(twists.value)
    return None


def classify_flute(flute):
    """Parabolicity of a tight flute from its length/twist sequences."""
    lengths = flute.lengths
    if _has_bounded_subsequence(lengths):
        return Verdict(
            "Parabolic",
            criterion="bounded-lengths",
            series=SeriesBehavior("diverges", "bertrand-exact",
                                  "bounded length subsequence"),
        )
    t = _constant_twist(flute.twists)
    if t is not None and t == 0.0:
        beh = classify_series(SeriesTerms(lengths, kappa=0.5))
        if beh.verdict == "diverges":
            return Verdict("Parabolic", criterion="zero-twist-series", series=beh)
        if beh.verdict == "converges" and beh.exact:
            return Verdict(
                "NotParabolic",
                criterion="zero-twist-series",
                reason="SeriesConvergesUnderIff",
                series=beh,
            )
        return Verdict("Unknown", criterion="zero-twist-series", series=beh)
    if t is not None and abs(t) == 0.5:
        beh = classify_series(SeriesTerms(lengths, kappa=0.25))
        if beh.verdict == "diverges":
            return Verdict("Parabolic", criterion="half-twist-series", series=beh)
        sig = classify_sigma_series(lengths, kappa=0.5)
        if sig.verdict == "converges" and sig.exact:
            return Verdict(
                "NotParabolic",
                criterion="half-twist-incompleteness",
                reason="Incomplete",
                series=sig,
            )
        conc = is_concave(lengths)
        if conc.proven and beh.verdict == "converges" and beh.exact:
            return Verdict(
                "NotParabolic",
                criterion="half-twist-series",
                reason="SeriesConvergesUnderIff",
                series=beh,
            )
        return Verdict("Unknown", criterion="half-twist-series", series=beh)
    # general twists: sufficiency only
    if t is not None:
        kappa = 0.5 * (1.0 - abs(t))
        beh = classify_series(SeriesTerms(lengths, kappa=kappa))
    else:
        def term(n):
            tn = abs(normalize_twist(flute.twists.term(n)))
            return math.exp(-0.5 * (1.0 - tn) * lengths.term(n))

        beh = _heuristic(term)
    if beh.verdict == "diverges":
        return Verdict("Parabolic", criterion="twisted-flute-series", series=beh)
    return Verdict("Unknown", criterion="twisted-flute-series", series=beh)


def _count_poly_exponent(spec):
    if isinstance(spec, (LochNess,)):
        return 0.0
    if isinstance(spec, (Ladder, BiInfiniteFlute)):
        return 0.0  # constant factor 2
    if isinstance(spec, BoundedBoundary):
        return spec.count_exponent
    raise SpecError("no level-count exponent for %r" % (spec,))


_TWIST_HYPOTHESES = frozenset(
    {"not-pair-of-pants", "uniform-orthogeodesic-distance"}
)


def classify_exhaustion(spec, use_twists=False, hypotheses_asserted=()):
    """Parabolicity test along an exhaustion by finite subsurfaces.

    With use_twists=False the untwisted collar criterion is used (always
    safe); with use_twists=True the caller must assert the hypotheses
    'not-pair-of-pants' and 'uniform-orthogeodesic-distance' which the data
    model cannot check.
    """
    if isinstance(spec, Flute):
        return classify_flute(spec.flute)
    if isinstance(spec, AbelianCover):
        return classify_cover(spec)
    if isinstance(spec, CantorTree):
        return _classify_cantor(spec)
    if use_twists:
        missing = _TWIST_HYPOTHESES - set(hypotheses_asserted)
        if missing:
            raise HypothesisError(
                "twisted exhaustion criterion requires asserted hypotheses: "
                + ", ".join(sorted(missing))
            )
    assumed = ()
    if isinstance(spec, (LochNess, Ladder)):
        if spec.beta_bound >= 1.5:
            assumed = ("orthogeodesic-length-at-least-1",)
    else:
        assumed = ("orthogeodesic-length-at-least-1",)

    if isinstance(spec, BiInfiniteFlute):
        kpos = _twist_kappa(spec.twists_pos) if use_twists else 0.5
        kneg = _twist_kappa(spec.twists_neg_effective) if use_twists else 0.5
        if kpos is None or kneg is None:
            beh = _heuristic(lambda n: _bi_term(spec, n, use_twists))
        else:
            f1 = _exponent_forms(SeriesTerms(spec.lengths_pos, kappa=kpos))
            f2 = _exponent_forms(SeriesTerms(spec.neg, kappa=kneg))
            if f1 is None or f2 is None:
                beh = _heuristic(lambda n: _bi_term(spec, n, use_twists))
            else:
                # 1/(A_n + B_n) is comparable to the fastest-decaying branch
                dominant = max(
                    (f for f in f1 + f2), key=lambda f: (f.p, f.q, f.r)
                )
                beh = SeriesBehavior(
                    "diverges" if dominant.diverges() else "converges",
                    "bertrand-exact",
                    "dominant p=%g q=%g" % (dominant.p, dominant.q),
                )
        criterion = (
            "twisted-collar-series" if use_twists else "untwisted-collar-series"
        )
        if beh.verdict == "diverges":
            return Verdict("Parabolic", criterion=criterion, series=beh,
                           hypotheses_assumed=tuple(
                               sorted(set(assumed) | (set(hypotheses_asserted)
                                                      if use_twists else set()))))
        return Verdict("Unknown", criterion=criterion, series=beh,
                       hypotheses_assumed=tuple(assumed))

    if isinstance(spec, (LochNess, Ladder, BoundedBoundary)):
        poly = _count_poly_exponent(spec)
        kappa = _twist_kappa(spec.twists) if use_twists else 0.5
        if kappa is None:
            beh = _heuristic(
                lambda n: math.exp(
                    -0.5
                    * (1.0 - abs(normalize_twist(spec.twists.term(n))))
                    * spec.lengths.term(n)
                )
                / max(1.0, float(n) ** poly)
            )
        else:
            beh = classify_series(
                SeriesTerms(spec.lengths, kappa=kappa, poly_exponent=poly)
            )
        criterion = (
            "twisted-collar-series" if use_twists else "untwisted-collar-series"
        )
        assumed_all = tuple(
            sorted(set(assumed) | (set(hypotheses_asserted) if use_twists else set()))
        )
        if beh.verdict == "diverges":
            return Verdict(
                "Parabolic", criterion=criterion, series=beh,
                hypotheses_assumed=assumed_all,
            )
        return Verdict(
            "Unknown", criterion=criterion, series=beh,
            hypotheses_assumed=assumed_all,
        )
    raise SpecError("unknown exhaustion spec %r" % (spec,))


def _twist_kappa(twists):
    t = _constant_twist(twists)
    if t is None:
        return None
    return 0.5 * (1.0 - abs(t))


def _bi_term(spec, n, use_twists):
    def one(lengths, twists):
        k = 0.5
        if use_twists:
            k = 0.5 * (1.0 - abs(normalize_twist(twists.term(n))))
        return math.exp(k * lengths.term(n))

    return 1.0 / (
        one(spec.lengths_pos, spec.twists_pos)
        + one(spec.neg, spec.twists_neg_effective)
    )


def _classify_cantor(spec):
    """Tree criterion: sum over levels of lambda(l_n) / 2^n.

    lambda is the standard half-collar extremal distance, which behaves like
    1/l_n for the small lengths trees require, so divergence is decidable for
    the scaled-power-decay shape l_n = c n / base^n.
    """
    lengths = spec.level_lengths
    if isinstance(lengths, ScaledPowerDecay):
        # terms comparable to (base/2)^n / n
        if lengths.base > 2.0:
            beh = SeriesBehavior("diverges", "bertrand-exact",
                                 "terms grow geometrically")
            return Verdict("Parabolic", criterion="tree-collar-series", series=beh)
        if lengths.base == 2.0:
            beh = SeriesBehavior("diverges", "bertrand-exact", "p=1 q=0")
            return Verdict("Parabolic", criterion="tree-collar-series", series=beh)
        beh = SeriesBehavior("converges", "bertrand-exact",
                             "terms decay geometrically")
        return Verdict("Unknown", criterion="tree-collar-series", series=beh)
    # lengths bounded below: lambda bounded, terms <= C 2^-n
    beh = _heuristic(
        lambda n: standard_half_collar_lambda(lengths.term(n)) / 2.0**n
        if n < 500
        else 0.0
    )
    if beh.verdict == "diverges":
        return Verdict("Parabolic", criterion="tree-collar-series", series=beh)
    return Verdict("Unknown", criterion="tree-collar-series", series=beh)


def classify_cover(cov):
    """Sufficiency criteria for normal covers with free abelian deck group."""
    if cov.rank == 1:
        kappa = _twist_kappa(cov.tau)
        if kappa is None:
            beh = _heuristic(
                lambda n: math.exp(
                    -0.5
                    * (1.0 - abs(normalize_twist(cov.tau.term(n))))
                    * cov.L.term(n)
                )
            )
        else:
            beh = classify_series(SeriesTerms(cov.L, kappa=kappa))
        crit = "cover-rank1-series"
    elif cov.rank == 2 and cov.config == "disjoint-pair":
        kappa = _twist_kappa(cov.tau)
        if kappa is None:
            beh = _heuristic(
                lambda n: math.exp(
                    -0.5
                    * (1.0 - abs(normalize_twist(cov.tau.term(n))))
                    * cov.L.term(n)
                )
                / n
            )
        else:
            beh = classify_series(
                SeriesTerms(cov.L, kappa=kappa, poly_exponent=1.0)
            )
        crit = "cover-rank2-disjoint-series"
    elif cov.rank == 2 and cov.config == "intersecting-pair":
        if isinstance(cov.eps, Constant):
            beh = classify_series(
                SeriesTerms(cov.ell, kappa=0.0, length_factor=True)
            )
        else:
            beh = _heuristic(
                lambda n: math.atan(math.sinh(cov.eps.term(n))) / cov.ell.term(n)
            )
        crit = "cover-collar-width-series"
    else:
        beh = classify_series(
            SeriesTerms(
                cov.L,
                kappa=0.5,
                poly_exponent=float(cov.rank - 1),
                length_factor=True,
            )
        )
        crit = "cover-rank%d-series" % cov.rank
    if beh.verdict == "diverges":
        return Verdict("Parabolic", criterion=crit, series=beh)
    return Verdict("Unknown", criterion=crit, series=beh)


# ---------------------------------------------------------------------------
# named example families and sweeps
# ---------------------------------------------------------------------------


def two_parameter_flute(a, b, l1=None):
    """Half-twisted flute with l_{2k} = a ln(k+1) + b ln k, l_{2k+1} = (a+b) ln(k+1).

    l_1 may be any value in (0, a ln 2); the default is a ln(2) / 2.
    """
    if not (a > 0 and b > 0):
        raise SpecError("need a > 0 and b > 0")
    if l1 is None:
        l1 = 0.5 * a * math.log(2.0)
    if not (0 < l1 < a * math.log(2.0)):
        raise SpecError("need 0 < l1 < a ln 2")
    b2 = float(b)
    lengths = ExplicitPrefixThenTail(
        values=(float(l1),),
        tail=AlternatingLogAffine(
            even=LogAffine(log_terms=((float(a), 1.0), (b2, 0.0))),
            odd=LogAffine(log_terms=((float(a) + b2, 1.0),)),
        ),
    )
    return FluteSpec(lengths=lengths, twists=Constant(0.5))


def scaled_flute(s):
    """The one-parameter family two_parameter_flute(s, 2 s)."""
    if not s > 0:
        raise SpecError("need s > 0")
    return two_parameter_flute(s, 2.0 * s)


def sweep_two_parameter(a_values, b_values):
    """Classify two_parameter_flute on a grid; rows of (a, b, verdict)."""
    rows = []
    for a in a_values:
        for b in b_values:
            v = classify_flute(two_parameter_flute(a, b))
            rows.append(
                {
                    "a": a,
                    "b": b,
                    "kind": v.kind,
                    "reason": v.reason or "",
                    "criterion": v.criterion,
                }
            )
    return rows


def sweep_scaled(s_values):
    """Classify scaled_flute along a list of scales."""
    rows = []
    for s in s_values:
        v = classify_flute(scaled_flute(s))
        rows.append(
            {
                "s": s,
                "kind": v.kind,
                "reason": v.reason or "",
                "criterion": v.criterion,
            }
        )
    return rows
