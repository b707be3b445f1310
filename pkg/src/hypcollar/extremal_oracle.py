"""Independent discrete oracle for moduli of curve families.

A domain is discretised on a square lattice (staircase approximation); the
Dirichlet problem u = 0 / 1 on the two electrodes with insulating remaining
boundary is solved with conjugate gradients, and the modulus of the family of
curves connecting the electrodes is the discrete Dirichlet energy.  Values at
two meshes (h and h/2) are combined by Richardson extrapolation assuming
first-order convergence.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse.linalg import cg

CG_TOL = 1e-10
CG_MAXITER = 200_000


class OracleError(ArithmeticError):
    """The discrete solve failed (no interior, disconnected, or CG stalled)."""


class ResolutionError(ValueError):
    """The mesh is too coarse to separate the domain's features."""


@dataclass(frozen=True)
class GridDomain:
    """A planar domain with two electrodes, ready for discretisation.

    Either give vectorised point predicates (`inside`, `electrode_a`,
    `electrode_b` taking numpy arrays x, y), or a strip profile
    (`f_of_x`, `g_of_x` scalar callables) in which case the region is
    g(x) < y < f(x) with electrode a on the upper graph and b on the lower.
    `periodic_x` identifies x and x + periodic_x.
    """

    h: float
    bbox: Tuple[float, float, float, float]
    inside: Optional[Callable] = None
    electrode_a: Optional[Callable] = None
    electrode_b: Optional[Callable] = None
    f_of_x: Optional[Callable[[float], float]] = None
    g_of_x: Optional[Callable[[float], float]] = None
    periodic_x: Optional[float] = None
    min_feature: Optional[float] = None
    name: str = ""

    def __post_init__(self):
        if not self.h > 0:
            raise ValueError("mesh size must be positive")
        strip = self.f_of_x is not None and self.g_of_x is not None
        preds = (
            self.inside is not None
            and self.electrode_a is not None
            and self.electrode_b is not None
        )
        if not (strip or preds):
            raise ValueError("give either predicates or a strip profile")


@dataclass(frozen=True)
class ModulusEstimate:
    """Result of the discrete solve at the meshes used."""

    value: float
    meshes: tuple
    raw_values: tuple
    error_bar: float
    extrapolated: bool


# node classes
_OUT, _IN, _A, _B = 0, 1, 2, 3


def _classify_strip(dom, h):
    x0, y0, x1, y1 = dom.bbox
    if dom.periodic_x:
        nx = int(round(dom.periodic_x / h))
        if not math.isclose(nx * h, dom.periodic_x, rel_tol=1e-9):
            raise ResolutionError("mesh must divide the period")
        xs = x0 + h * np.arange(nx)
    else:
        nx = int(math.floor((x1 - x0) / h)) + 1
        xs = x0 + h * np.arange(nx)
    ny = int(math.floor((y1 - y0) / h)) + 1
    ys = y0 + h * np.arange(ny)
    fcol = np.array([dom.f_of_x(x) for x in xs])
    gcol = np.array([dom.g_of_x(x) for x in xs])
    if np.min(fcol - gcol) < 3.0 * h:
        raise ResolutionError(
            "gap %.3g is thinner than 3 mesh cells (h = %.3g); refine the mesh"
            % (float(np.min(fcol - gcol)), h)
        )
    Y = ys[None, :]
    F = fcol[:, None]
    G = gcol[:, None]
    cls = np.full((len(xs), ny), _OUT, dtype=np.int8)
    cls[(Y > G) & (Y < F)] = _IN
    cls[Y >= F] = _A
    cls[Y <= G] = _B
    return cls


def _classify_predicates(dom, h):
    x0, y0, x1, y1 = dom.bbox
    if dom.periodic_x:
        nx = int(round(dom.periodic_x / h))
        xs = x0 + h * np.arange(nx)
    else:
        nx = int(math.floor((x1 - x0) / h)) + 1
        xs = x0 + h * np.arange(nx)
    ny = int(math.floor((y1 - y0) / h)) + 1
    ys = y0 + h * np.arange(ny)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    cls = np.full(X.shape, _OUT, dtype=np.int8)
    a = dom.electrode_a(X, Y)
    b = dom.electrode_b(X, Y) & ~a
    inn = dom.inside(X, Y) & ~a & ~b
    cls[inn] = _IN
    cls[a] = _A
    cls[b] = _B
    return cls


def _solve_at(dom, h):
    if dom.f_of_x is not None and dom.g_of_x is not None:
        cls = _classify_strip(dom, h)
    else:
        cls = _classify_predicates(dom, h)
        if dom.min_feature is not None and dom.min_feature < 3.0 * h:
            raise ResolutionError(
                "feature size %.3g is thinner than 3 mesh cells (h = %.3g)"
                % (dom.min_feature, h)
            )
    nx, ny = cls.shape
    wrap = dom.periodic_x is not None

    idx = -np.ones(cls.shape, dtype=np.int64)
    interior = cls == _IN
    n_unknown = int(interior.sum())
    if n_unknown == 0:
        raise OracleError("no interior nodes at h = %.3g" % h)
    idx[interior] = np.arange(n_unknown)

    rows, cols, vals = [], [], []
    rhs = np.zeros(n_unknown)
    diag = np.zeros(n_unknown)

    def neighbor(shift_x, shift_y):
        """Return (neighbor class, neighbor index) arrays aligned with cls."""
        ncls = np.full(cls.shape, _OUT, dtype=np.int8)
        nidx = -np.ones(cls.shape, dtype=np.int64)
        if shift_x:
            if wrap:
                ncls[:, :] = np.roll(cls, -shift_x, axis=0)
                nidx[:, :] = np.roll(idx, -shift_x, axis=0)
            elif shift_x == 1:
                ncls[:-1, :] = cls[1:, :]
                nidx[:-1, :] = idx[1:, :]
            else:
                ncls[1:, :] = cls[:-1, :]
                nidx[1:, :] = idx[:-1, :]
        else:
            if shift_y == 1:
                ncls[:, :-1] = cls[:, 1:]
                nidx[:, :-1] = idx[:, 1:]
            else:
                ncls[:, 1:] = cls[:, :-1]
                nidx[:, 1:] = idx[:, :-1]
        return ncls, nidx

    shifts = [(1, 0), (-1, 0), (0, 1), (0, -1)]
    for sx, sy in shifts:
        ncls, nidx = neighbor(sx, sy)
        mine = idx[interior]
        nc = ncls[interior]
        ni = nidx[interior]
        linked = nc != _OUT
        np.add.at(diag, mine[linked], 1.0)
        inter = nc == _IN
        rows.append(mine[inter])
        cols.append(ni[inter])
        vals.append(-np.ones(int(inter.sum())))
        np.add.at(rhs, mine[nc == _B], 1.0)

    if not np.any(rhs):
        raise OracleError("electrode b is not adjacent to the interior; "
                          "domain appears disconnected")
    rows.append(np.arange(n_unknown))
    cols.append(np.arange(n_unknown))
    vals.append(diag)
    mat = sparse.csr_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n_unknown, n_unknown),
    )
    u, info = cg(mat, rhs, rtol=CG_TOL, atol=0.0, maxiter=CG_MAXITER)
    if info != 0:
        raise OracleError("conjugate gradients did not reach residual %.0e "
                          "within %d iterations" % (CG_TOL, CG_MAXITER))

    # potential field on the whole lattice: 0 on A and outside, 1 on B
    U = np.zeros(cls.shape)
    U[interior] = u
    U[cls == _B] = 1.0

    # Dirichlet energy, counting each lattice edge once; only edges with at
    # least one interior endpoint carry flux in a proper domain.
    def edge_energy(shift_x, shift_y):
        ncls, _ = neighbor(shift_x, shift_y)
        if shift_x:
            if wrap:
                nU = np.roll(U, -shift_x, axis=0)
            else:
                nU = np.zeros_like(U)
                nU[:-1, :] = U[1:, :]
        else:
            nU = np.zeros_like(U)
            nU[:, :-1] = U[:, 1:]
        live = (cls == _IN) & (ncls != _OUT)
        live |= (ncls == _IN) & (cls != _OUT)
        d = (U - nU)[live]
        return float(np.sum(d * d))

    energy = edge_energy(1, 0) + edge_energy(0, 1)
    if energy <= 0.0:
        raise OracleError("zero energy: electrodes are not connected")
    return energy


def discrete_modulus(domain, refine=True):
    """Discrete modulus of the family of curves joining the two electrodes.

    Solves at meshes h and h/2 and Richardson-extrapolates assuming
    first-order convergence; error_bar is the difference of the two raw
    values.  With refine=False only the base mesh is used.
    """
    v1 = _solve_at(domain, domain.h)
    if not refine:
        return ModulusEstimate(
            value=v1, meshes=(domain.h,), raw_values=(v1,),
            error_bar=math.inf, extrapolated=False,
        )
    v2 = _solve_at(domain, 0.5 * domain.h)
    return ModulusEstimate(
        value=2.0 * v2 - v1,
        meshes=(domain.h, 0.5 * domain.h),
        raw_values=(v1, v2),
        error_bar=abs(v2 - v1),
        extrapolated=True,
    )


def rectangle_domain(width, height, h, name="rectangle"):
    """Rectangle [0, w] x [0, h], electrodes = bottom and top sides."""
    return GridDomain(
        h=h,
        bbox=(0.0, 0.0, width, height),
        inside=lambda x, y: (x >= 0) & (x <= width) & (y > 0) & (y < height),
        electrode_a=lambda x, y: (y <= 0) & (x >= 0) & (x <= width),
        electrode_b=lambda x, y: (y >= height) & (x >= 0) & (x <= width),
        name=name,
    )


def annulus_domain(r1, r2, h, name="annulus"):
    """Round annulus, electrodes = the two boundary circles."""
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    pad = 2 * h
    return GridDomain(
        h=h,
        bbox=(-r2 - pad, -r2 - pad, r2 + pad, r2 + pad),
        inside=lambda x, y: (np.hypot(x, y) > r1) & (np.hypot(x, y) < r2),
        electrode_a=lambda x, y: np.hypot(x, y) <= r1,
        electrode_b=lambda x, y: np.hypot(x, y) >= r2,
        name=name,
    )


def annular_sector_domain(r1, r2, theta, h, name="annular-sector"):
    """Annular sector of opening theta, electrodes = the two radial sides.

    The modulus of curves joining the radial sides is ln(r2/r1) / theta.
    """
    if not 0 < r1 < r2:
        raise ValueError("need 0 < r1 < r2")
    if not 0 < theta < 2 * math.pi:
        raise ValueError("need 0 < theta < 2 pi")
    pad = 2 * h
    rb = lambda x, y: (np.hypot(x, y) >= r1 - pad) & (np.hypot(x, y) <= r2 + pad)

    def inside(x, y):
        r = np.hypot(x, y)
        phi = np.arctan2(y, x)
        return (r > r1) & (r < r2) & (phi > 0) & (phi < theta)

    return GridDomain(
        h=h,
        bbox=(
            min(0.0, (r2 + pad) * math.cos(theta)) - pad,
            -2 * pad,
            r2 + pad,
            (r2 + pad) * (math.sin(theta) if theta < math.pi / 2 else 1.0) + pad,
        ),
        inside=inside,
        electrode_a=lambda x, y: (y <= 0) & (x > 0) & rb(x, y),
        electrode_b=lambda x, y: (np.arctan2(y, x) >= theta) & rb(x, y),
        name=name,
    )


def comb_domain(epsilon, h=None, name="comb"):
    """Comb region: [0,1] x [0, eps] minus slits hanging from the top.

    N = ceil(1 / eps^2) and the slits sit at x = k/N, k = 2..N-1, spanning
    eps^2 <= y <= eps.  Bottom side is one electrode; top side together with
    the slits is the other.  The vertical-segment family has modulus 1/eps
    (the slit abscissae have measure zero).
    """
    if not 0 < epsilon < 0.5:
        raise ValueError("need 0 < epsilon < 1/2")
    n_slits = int(math.ceil(1.0 / (epsilon * epsilon)))
    spacing = 1.0 / n_slits
    if h is None:
        h = spacing / 8.0
    if spacing < 3.0 * h:
        raise ResolutionError(
            "mesh h = %.3g too coarse to separate slits %.3g apart; "
            "need h <= %.3g" % (h, spacing, spacing / 3.0)
        )
    y_low = epsilon * epsilon

    def on_slit(x, y):
        k = np.rint(x * n_slits)
        return (
            (y >= y_low)
            & (k >= 2)
            & (k <= n_slits - 1)
            & (np.abs(x - k * spacing) <= 0.51 * h)
        )

    return GridDomain(
        h=h,
        bbox=(0.0, 0.0, 1.0, epsilon),
        inside=lambda x, y: (x >= 0) & (x <= 1) & (y > 0) & (y < epsilon),
        electrode_a=lambda x, y: (y <= 0) & (x >= 0) & (x <= 1),
        electrode_b=lambda x, y: ((y >= epsilon) | on_slit(x, y))
        & (x >= 0) & (x <= 1),
        min_feature=spacing,
        name=name,
    )


def comb_vertical_modulus(epsilon):
    """Modulus of the vertical-segment family of the comb region (= 1/eps)."""
    if not 0 < epsilon < 0.5:
        raise ValueError("need 0 < epsilon < 1/2")
    return 1.0 / epsilon


def strip_domain(pair, h=None, name=None):
    """One period of the region between the graphs of a PeriodicFunctionPair.

    x is periodic with the pair's period; the two graphs are the electrodes,
    so the discrete modulus approximates the periodic-annulus modulus of the
    region (the modulus of the family joining the two boundary curves).
    """
    xs = pair.x1 + pair.period * np.arange(2049) / 2048.0
    gaps = np.array([pair.f(x) - pair.g(x) for x in xs])
    fmax = max(pair.f(x) for x in xs)
    gmin = min(pair.g(x) for x in xs)
    min_gap = float(np.min(gaps))
    if h is None:
        h = min(min_gap / 4.0, pair.period / 64.0)
    # snap to an integer division of the period
    h = pair.period / int(math.ceil(pair.period / h))
    if min_gap < 3.0 * h:
        raise ResolutionError(
            "gap %.3g is thinner than 3 mesh cells (h = %.3g); "
            "need h <= %.3g" % (min_gap, h, min_gap / 3.0)
        )
    pad = 2 * h
    return GridDomain(
        h=h,
        bbox=(pair.x1, gmin - pad, pair.x2, fmax + pad),
        f_of_x=pair.f,
        g_of_x=pair.g,
        periodic_x=pair.period,
        min_feature=min_gap,
        name=name or (pair.label or "strip"),
    )
