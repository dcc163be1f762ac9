"""Grid-based numerical kernels shared by the geometry modules.

Uniform grids only.  Derivatives use 5-point stencils: centered in the
interior (fourth order for first derivatives), shifted windows of the same
width at the boundary, all exact on polynomials of degree <= 2.  Cumulative
quadrature is composite Simpson with a 3-point Newton-Cotes closure on odd
segments, global error O(dt^4), so quadrature error stays negligible against
differentiation error downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import factorial
from typing import Optional

import numpy as np

from .errors import BadGrid, BadSphereCurve, NotRegular

KAPPA_TOL = 1e-7
STENCIL_WIDTH = 5


# ---------------------------------------------------------------------------
# domain types

@dataclass(frozen=True)
class Grid2D:
    """Uniformly spaced rectangular grid; node (i, j) sits at
    (u_min + i*du, v_min + j*dv).  ``values`` is (nu, nv) for scalar fields
    or (nu, nv, k) for vector payloads."""

    u_min: float
    v_min: float
    du: float
    dv: float
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.ndim not in (2, 3):
            raise BadGrid("grid payload must be (nu, nv) or (nu, nv, k)")
        if v.shape[0] < 3 or v.shape[1] < 3:
            raise BadGrid("grids need at least 3 nodes per direction")
        if not (self.du > 0 and self.dv > 0):
            raise BadGrid("grid spacings must be positive")
        if not np.all(np.isfinite(v)):
            raise BadGrid("grid values must be finite")

    @property
    def nu(self) -> int:
        return self.values.shape[0]

    @property
    def nv(self) -> int:
        return self.values.shape[1]

    @property
    def us(self) -> np.ndarray:
        return self.u_min + self.du * np.arange(self.nu)

    @property
    def vs(self) -> np.ndarray:
        return self.v_min + self.dv * np.arange(self.nv)

    def with_values(self, values: np.ndarray) -> "Grid2D":
        return replace(self, values=values)

    def base_index(self) -> tuple:
        """Node nearest to (u, v) = (0, 0)."""
        return (int(np.argmin(np.abs(self.us))), int(np.argmin(np.abs(self.vs))))


def grid_from_ranges(u_range, v_range, values) -> Grid2D:
    """Grid over [u0, u1] x [v0, v1] whose node counts come from ``values``."""
    values = np.asarray(values, dtype=float)
    nu, nv = values.shape[0], values.shape[1]
    du = (u_range[1] - u_range[0]) / (nu - 1)
    dv = (v_range[1] - v_range[0]) / (nv - 1)
    return Grid2D(u_min=u_range[0], v_min=v_range[0], du=du, dv=dv, values=values)


@dataclass(frozen=True)
class SampledCurve:
    """Uniformly sampled curve; node i sits at t_min + i*dt.  ``points`` is
    (n, k) with k = 3 for curves in E and k = 4 for curves in R^4_1."""

    t_min: float
    dt: float
    points: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", p)
        if p.ndim != 2:
            raise BadGrid("curve points must be a (n, k) array")
        if p.shape[0] < 5:
            raise BadGrid("curves need at least 5 nodes")
        if not self.dt > 0:
            raise BadGrid("curve spacing must be positive")
        if not np.all(np.isfinite(p)):
            raise BadGrid("curve points must be finite")

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def ts(self) -> np.ndarray:
        return self.t_min + self.dt * np.arange(self.n)

    def base_index(self) -> int:
        """Node nearest to t = 0."""
        return int(np.argmin(np.abs(self.ts)))


@dataclass(frozen=True)
class SphereCurve(SampledCurve):
    """Curve into the unit sphere of E; points are 3-vectors of unit norm."""

    tag: Optional[str] = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if self.points.shape[1] != 3:
            raise BadSphereCurve("sphere-curve points must be 3-vectors in E")
        off = np.abs(np.linalg.norm(self.points, axis=1) - 1.0).max()
        if off > 1e-9:
            raise BadSphereCurve(
                f"curve leaves the unit sphere (max |norm - 1| = {off:.3e})")


def sample_curve(fn, t_range, n, cls=SampledCurve, **kw):
    """Sample a vectorized callable on n uniform nodes over [t0, t1]."""
    ts = np.linspace(t_range[0], t_range[1], n)
    pts = np.asarray(fn(ts), dtype=float)
    if pts.shape[0] != n:
        pts = pts.T
    return cls(t_min=float(ts[0]), dt=float(ts[1] - ts[0]), points=pts, **kw)


@dataclass(frozen=True)
class FrenetData:
    """Per-node Frenet apparatus of a curve in E.

    N, B and tor are only meaningful where ``degenerate`` is False
    (kappa above the curvature cutoff); they hold NaN elsewhere.
    """

    T: np.ndarray
    N: np.ndarray
    B: np.ndarray
    kappa: np.ndarray
    tor: np.ndarray
    degenerate: np.ndarray
    arclength: bool


# ---------------------------------------------------------------------------
# finite differences

def fd_weights(offsets: np.ndarray, order: int) -> np.ndarray:
    """Stencil weights (in units of h^-order) for nodes at integer offsets."""
    p = len(offsets)
    A = np.array([[o**k / factorial(k) for o in offsets] for k in range(p)])
    rhs = np.zeros(p)
    rhs[order] = 1.0
    return np.linalg.solve(A, rhs)


def diff_samples(values: np.ndarray, h: float, order: int, axis: int = 0) -> np.ndarray:
    """Differentiate uniformly sampled values along ``axis``.

    Windows of width min(5, n); interior rows use the centered stencil,
    boundary rows the shifted window of the same width.
    """
    y = np.moveaxis(np.asarray(values, dtype=float), axis, 0)
    n = y.shape[0]
    w = min(STENCIL_WIDTH, n)
    if w <= order:
        raise BadGrid(f"need more than {order} nodes for order-{order} derivatives")
    c = (w - 1) // 2
    out = np.empty_like(y)
    wc = fd_weights(np.arange(w) - c, order) / h**order
    out[c:n - (w - 1 - c)] = sum(wc[j] * y[j:j + n - w + 1] for j in range(w))
    for i in range(c):
        wi = fd_weights(np.arange(w) - i, order) / h**order
        out[i] = sum(wi[j] * y[j] for j in range(w))
    for i in range(n - (w - 1 - c), n):
        s = n - w
        wi = fd_weights(np.arange(w) - (i - s), order) / h**order
        out[i] = sum(wi[j] * y[s + j] for j in range(w))
    return np.moveaxis(out, 0, axis)


_PARTIALS = {"u", "v", "uu", "vv", "uv"}


def partials(g: Grid2D, which: str) -> Grid2D:
    """Partial derivative grid; ``which`` is one of u, v, uu, vv, uv.

    The mixed partial composes the two first-derivative operators, so it
    annihilates separable sums A(u) + B(v) exactly.
    """
    if which not in _PARTIALS:
        raise BadGrid(f"unknown partial {which!r}")
    vals = g.values
    if which == "u":
        out = diff_samples(vals, g.du, 1, axis=0)
    elif which == "v":
        out = diff_samples(vals, g.dv, 1, axis=1)
    elif which == "uu":
        out = diff_samples(vals, g.du, 2, axis=0)
    elif which == "vv":
        out = diff_samples(vals, g.dv, 2, axis=1)
    else:
        out = diff_samples(diff_samples(vals, g.du, 1, axis=0), g.dv, 1, axis=1)
    return g.with_values(out)


# ---------------------------------------------------------------------------
# quadrature

def cumulative_samples(values: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral from node 0 along axis 0 (composite Simpson)."""
    y = np.asarray(values, dtype=float)
    n = y.shape[0]
    if n < 3:
        raise BadGrid("cumulative integration needs at least 3 nodes")
    out = np.zeros_like(y)
    pairs = (h / 3.0) * (y[0:n - 2:2] + 4.0 * y[1:n - 1:2] + y[2:n:2])
    out[2::2] = np.cumsum(pairs, axis=0)[: (n - 1) // 2]
    out[1] = (h / 12.0) * (5.0 * y[0] + 8.0 * y[1] - y[2])
    if n > 3:
        ks = np.arange(3, n, 2)
        out[ks] = out[ks - 1] + (h / 12.0) * (-y[ks - 2] + 8.0 * y[ks - 1]
                                              + 5.0 * y[ks])
    return out


def cumulative_integral(c: SampledCurve, base_index: Optional[int] = None) -> SampledCurve:
    """Node-wise integral of the curve, zero at ``base_index``.

    Defaults to the node nearest t = 0, matching the integral-from-zero
    convention used by the net constructions.
    """
    if base_index is None:
        base_index = c.base_index()
    if not 0 <= base_index < c.n:
        raise BadGrid("base index outside the sample range")
    acc = cumulative_samples(c.points, c.dt)
    acc = acc - acc[base_index]
    return SampledCurve(t_min=c.t_min, dt=c.dt, points=acc)


# ---------------------------------------------------------------------------
# Frenet apparatus

def frenet(alpha: SampledCurve, kappa_tol: float = KAPPA_TOL,
           reg_tol: float = 1e-8) -> FrenetData:
    """Frenet frame, curvature and torsion of a sampled curve in E.

    T = a'/|a'|, kappa = |a' x a''| / |a'|^3, N = T'/|T'|, B = T x N,
    tor = det(a', a'', a''') / |a' x a''|^2.  Nodes with kappa below
    ``kappa_tol`` are flagged degenerate and carry no N, B, tor.
    """
    pts = alpha.points
    if pts.shape[1] != 3:
        raise BadGrid("frenet expects a curve in E (3 components)")
    d1 = diff_samples(pts, alpha.dt, 1)
    d2 = diff_samples(pts, alpha.dt, 2)
    d3 = diff_samples(pts, alpha.dt, 3)
    speed = np.linalg.norm(d1, axis=1)
    if speed.min() <= reg_tol:
        raise NotRegular(f"curve is not regular (min |a'| = {speed.min():.3e})")

    T = d1 / speed[:, None]
    cr = np.cross(d1, d2)
    crn = np.linalg.norm(cr, axis=1)
    kappa = crn / speed**3
    degenerate = kappa <= kappa_tol

    N = np.full_like(T, np.nan)
    B = np.full_like(T, np.nan)
    tor = np.full(alpha.n, np.nan)
    ok = ~degenerate
    if np.any(ok):
        Tp = diff_samples(T, alpha.dt, 1)
        Tpn = np.linalg.norm(Tp, axis=1)
        N[ok] = Tp[ok] / Tpn[ok, None]
        B[ok] = np.cross(T[ok], N[ok])
        tor[ok] = np.einsum("ij,ij->i", cr[ok], d3[ok]) / crn[ok]**2

    arclength = bool(np.abs(speed - 1.0).max() < 1e-6)
    return FrenetData(T=T, N=N, B=B, kappa=kappa, tor=tor,
                      degenerate=degenerate, arclength=arclength)


# ---------------------------------------------------------------------------
# norms

def sup_and_l2(g: Grid2D) -> tuple:
    """Sup norm and trapezoid-weighted L2 norm of a scalar grid."""
    v = g.values
    if v.ndim != 2:
        raise BadGrid("sup_and_l2 expects a scalar grid")
    wu = np.ones(g.nu)
    wu[0] = wu[-1] = 0.5
    wv = np.ones(g.nv)
    wv[0] = wv[-1] = 0.5
    weights = np.outer(wu, wv) * g.du * g.dv
    sup = float(np.abs(v).max())
    l2 = float(np.sqrt(np.sum(weights * v * v)))
    return sup, l2


def masked_sup(values: np.ndarray, mask: Optional[np.ndarray] = None) -> float:
    """Sup of |values| over unmasked nodes (mask True = keep)."""
    a = np.abs(np.asarray(values, dtype=float))
    if a.ndim == 3:
        a = np.linalg.norm(a, axis=-1)
    if mask is not None:
        if not np.any(mask):
            return 0.0
        a = a[mask]
    return float(a.max())
