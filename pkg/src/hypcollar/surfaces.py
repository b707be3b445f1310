"""Data models for flute-type surfaces, exhaustions and abelian covers.

Length and twist sequences are given by small structured specs so that the
classifier can reason about their growth exactly; only a few shapes are
supported (logarithmic growth, alternating logarithmic, linear, constant,
explicit prefixes, and the scaled power decay used by trees).
"""

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .hypgeom import validate_twist


class SpecError(ValueError):
    """A sequence or surface spec is malformed."""


# ---------------------------------------------------------------------------
# sequence specs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LogAffine:
    """l_n = sum_i a_i ln(n + s_i) + b ln ln(n + n1) + c.

    `log_terms` is a tuple of (coefficient, shift) pairs.  The common single
    log case is log_affine(a, b, c, n0, n1).
    """

    log_terms: Tuple[Tuple[float, float], ...] = ()
    loglog_coef: float = 0.0
    loglog_shift: float = 1.0
    const: float = 0.0

    def term(self, n):
        if n < 1:
            raise SpecError("indices start at n = 1")
        v = self.const
        for a, s in self.log_terms:
            arg = n + s
            if arg <= 0:
                raise SpecError("log argument nonpositive at n = %d" % n)
            v += a * math.log(arg)
        if self.loglog_coef:
            arg = n + self.loglog_shift
            if arg <= 1:
                raise SpecError("log log argument <= 1 at n = %d" % n)
            v += self.loglog_coef * math.log(math.log(arg))
        return v

    @property
    def log_coef_sum(self):
        return sum(a for a, _ in self.log_terms)

    @property
    def is_bounded(self):
        return all(a == 0 for a, _ in self.log_terms) and self.loglog_coef == 0


def log_affine(a=0.0, b=0.0, c=0.0, n0=0.0, n1=1.0):
    """Shorthand for the single-log LogAffine a ln(n+n0) + b ln ln(n+n1) + c."""
    return LogAffine(
        log_terms=((float(a), float(n0)),) if a else (),
        loglog_coef=float(b),
        loglog_shift=float(n1),
        const=float(c),
    )


@dataclass(frozen=True)
class Constant:
    """l_n = value for all n."""

    value: float

    def term(self, n):
        if n < 1:
            raise SpecError("indices start at n = 1")
        return self.value

    @property
    def is_bounded(self):
        return True


@dataclass(frozen=True)
class Linear:
    """l_n = slope * n + intercept."""

    slope: float
    intercept: float = 0.0

    def term(self, n):
        if n < 1:
            raise SpecError("indices start at n = 1")
        return self.slope * n + self.intercept

    @property
    def is_bounded(self):
        return self.slope == 0


@dataclass(frozen=True)
class AlternatingLogAffine:
    """Interleaving of two specs: l_{2k} = even(k), l_{2k+1} = odd(k).

    Terms are defined for global index n >= 2 (so it is normally wrapped in an
    ExplicitPrefixThenTail supplying l_1).
    """

    even: LogAffine
    odd: LogAffine

    def term(self, n):
        if n < 2:
            raise SpecError(
                "alternating specs start at n = 2; supply a prefix for n = 1"
            )
        if n % 2 == 0:
            return self.even.term(n // 2)
        return self.odd.term((n - 1) // 2)

    @property
    def is_bounded(self):
        return self.even.is_bounded and self.odd.is_bounded

    @property
    def has_bounded_branch(self):
        return self.even.is_bounded or self.odd.is_bounded


@dataclass(frozen=True)
class ExplicitPrefixThenTail:
    """Explicit first values, then a tail spec evaluated at the global index."""

    values: Tuple[float, ...]
    tail: object

    def term(self, n):
        if n < 1:
            raise SpecError("indices start at n = 1")
        if n <= len(self.values):
            return self.values[n - 1]
        return self.tail.term(n)

    @property
    def is_bounded(self):
        return self.tail.is_bounded


@dataclass(frozen=True)
class ScaledPowerDecay:
    """l_n = coef * n / base^n (small lengths decaying geometrically)."""

    coef: float
    base: float

    def __post_init__(self):
        if not (self.coef > 0 and self.base > 1):
            raise SpecError("need coef > 0 and base > 1")

    def term(self, n):
        if n < 1:
            raise SpecError("indices start at n = 1")
        return self.coef * n / self.base**n

    @property
    def is_bounded(self):
        return True


def sequence_terms(spec, n_max, start=1):
    """List [spec.term(start), ..., spec.term(n_max)]."""
    return [spec.term(n) for n in range(start, n_max + 1)]


def validate_lengths(spec, window=64, start=1):
    """Check the first `window` terms are positive finite lengths."""
    for n in range(start, start + window):
        v = spec.term(n)
        if not (v > 0 and math.isfinite(v)):
            raise SpecError("length term %d is not a positive float: %r" % (n, v))
    return True


# ---------------------------------------------------------------------------
# derived sequences
# ---------------------------------------------------------------------------


def sigma_sequence(lengths, n_max, start=1):
    """The alternating partial sums sigma_n = l_n - sigma_{n-1}, sigma_1 = l_1.

    Identity: sigma_n + sigma_{n-1} = l_n for every n >= 2 (exactly, by
    construction of the recurrence).
    """
    sigma = []
    prev = 0.0
    for n in range(start, n_max + 1):
        s = lengths.term(n) - prev
        sigma.append(s)
        prev = s
    return sigma


@dataclass(frozen=True)
class ConcavityVerdict:
    """Outcome of a concavity test: 'yes', 'yes-on-window' or 'no'."""

    kind: str
    witness: Optional[int] = None

    @property
    def proven(self):
        return self.kind == "yes"


def is_concave(lengths, window=200):
    """Is the length sequence non-decreasing with 2 l_n >= l_{n+1} + l_{n-1}?

    Analytic 'yes' is only issued for shapes where it holds for all n
    (constants; LogAffine with nonnegative coefficients).  Otherwise the
    conditions are checked on the first `window` terms and the verdict is
    'yes-on-window' (which consumers must not treat as a proof) or 'no' with
    a witness index.
    """
    if isinstance(lengths, Constant):
        return ConcavityVerdict("yes")
    if isinstance(lengths, LogAffine):
        if all(a >= 0 for a, _ in lengths.log_terms) and lengths.loglog_coef >= 0:
            return ConcavityVerdict("yes")
    if isinstance(lengths, Linear) and lengths.slope >= 0:
        return ConcavityVerdict("yes")
    terms = sequence_terms(lengths, window)
    for i in range(1, len(terms)):
        if terms[i] < terms[i - 1] - 1e-12:
            return ConcavityVerdict("no", witness=i + 1)
    for i in range(1, len(terms) - 1):
        if 2.0 * terms[i] < terms[i - 1] + terms[i + 1] - 1e-12:
            return ConcavityVerdict("no", witness=i + 1)
    return ConcavityVerdict("yes-on-window")


# ---------------------------------------------------------------------------
# surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FluteSpec:
    """A tight flute: cyclinder end exhausted by curves alpha_n.

    `lengths` gives l(alpha_n) and `twists` the Fenchel-Nielsen twists t_n
    (canonical interval (-1/2, 1/2], where 1/2 is the half twist).
    """

    lengths: object
    twists: object = Constant(0.0)

    def __post_init__(self):
        validate_lengths(self.lengths)
        for n in range(1, 33):
            validate_twist(self.twists.term(n))


@dataclass(frozen=True)
class ExhaustionSpec:
    """Base marker for exhaustions X_1 c X_2 c ... by finite subsurfaces."""


@dataclass(frozen=True)
class Flute(ExhaustionSpec):
    flute: FluteSpec

    def boundary_counts(self, n):
        return 1


@dataclass(frozen=True)
class BiInfiniteFlute(ExhaustionSpec):
    """Flute ends in both directions; level n has boundary {alpha_n, alpha_-n}."""

    lengths_pos: object
    lengths_neg: object = None
    twists_pos: object = Constant(0.0)
    twists_neg: object = None

    def __post_init__(self):
        validate_lengths(self.lengths_pos)
        if self.lengths_neg is not None:
            validate_lengths(self.lengths_neg)

    @property
    def neg(self):
        return self.lengths_neg if self.lengths_neg is not None else self.lengths_pos

    @property
    def twists_neg_effective(self):
        return self.twists_neg if self.twists_neg is not None else self.twists_pos

    def boundary_counts(self, n):
        return 2


@dataclass(frozen=True)
class LochNess(ExhaustionSpec):
    """One flute-like end with handles; |boundary X_n| = 1.

    beta_bound is a uniform upper bound for the lengths of the curves beta_n
    cutting off the handles; it guarantees a definite orthogeodesic length
    between consecutive boundary curves when small enough (< 1.5).
    """

    lengths: object
    twists: object = Constant(0.0)
    beta_bound: float = 1.0

    def __post_init__(self):
        validate_lengths(self.lengths)

    def boundary_counts(self, n):
        return 1


@dataclass(frozen=True)
class Ladder(ExhaustionSpec):
    """Bi-infinite chain of handles; |boundary X_n| = 2."""

    lengths: object
    twists: object = Constant(0.0)
    beta_bound: float = 1.0

    def __post_init__(self):
        validate_lengths(self.lengths)

    def boundary_counts(self, n):
        return 2


@dataclass(frozen=True)
class CantorTree(ExhaustionSpec):
    """Binary-tree surface; level n has 2^n boundary curves of equal length."""

    level_lengths: object

    def __post_init__(self):
        validate_lengths(self.level_lengths)

    def boundary_counts(self, n):
        return 2**n


@dataclass(frozen=True)
class BoundedBoundary(ExhaustionSpec):
    """Exhaustion with |boundary X_n| growing like n^p (p = 0: bounded).

    All boundary curves of level n share the length bound L_n and the twist
    bound tau_n.
    """

    lengths: object
    twists: object = Constant(0.0)
    count_exponent: float = 0.0

    def __post_init__(self):
        validate_lengths(self.lengths)
        if self.count_exponent < 0:
            raise SpecError("count exponent must be >= 0")

    def boundary_counts(self, n):
        return max(1, round(n**self.count_exponent))


@dataclass(frozen=True)
class AbelianCover(ExhaustionSpec):
    """Normal cover of a closed surface with free abelian deck group.

    config is 'single' (rank 1, one nonseparating curve), 'disjoint-pair'
    (rank 2, two disjoint curves) or 'intersecting-pair' (rank 2, two curves
    meeting once); for rank >= 3 config is ignored.  L gives the level-n
    length bound, tau the twist bound; eps/ell are the collar widths and
    lengths used by the intersecting configuration.
    """

    rank: int
    config: str = "single"
    L: object = None
    tau: object = Constant(0.0)
    eps: object = None
    ell: object = None

    def __post_init__(self):
        if self.rank < 1:
            raise SpecError("rank must be >= 1")
        if self.rank <= 2 and self.config not in (
            "single", "disjoint-pair", "intersecting-pair",
        ):
            raise SpecError("unknown cover configuration %r" % (self.config,))
        if self.config == "intersecting-pair":
            if self.eps is None or self.ell is None:
                raise SpecError("intersecting-pair needs eps and ell specs")
        elif self.L is None:
            raise SpecError("cover needs an L spec")

    def boundary_counts(self, n):
        if self.config == "intersecting-pair" and self.rank == 2:
            return 1
        if self.rank == 1:
            return 2
        if self.rank == 2:
            return 4 * n
        return 2 * self.rank * n ** (self.rank - 1)


def boundary_data(spec, n):
    """(length, twist) pairs for the boundary curves of exhaustion level n."""
    if isinstance(spec, Flute):
        fl = spec.flute
        return [(fl.lengths.term(n), fl.twists.term(n))]
    if isinstance(spec, BiInfiniteFlute):
        return [
            (spec.lengths_pos.term(n), spec.twists_pos.term(n)),
            (spec.neg.term(n), spec.twists_neg_effective.term(n)),
        ]
    if isinstance(spec, (LochNess, Ladder, BoundedBoundary)):
        k = spec.boundary_counts(n)
        return [(spec.lengths.term(n), spec.twists.term(n))] * k
    if isinstance(spec, CantorTree):
        return [(spec.level_lengths.term(n), 0.0)] * spec.boundary_counts(n)
    if isinstance(spec, AbelianCover):
        if spec.config == "intersecting-pair" and spec.rank == 2:
            return [(spec.ell.term(n), 0.0)]
        return [(spec.L.term(n), spec.tau.term(n))] * spec.boundary_counts(n)
    raise SpecError("unknown exhaustion spec %r" % (spec,))
