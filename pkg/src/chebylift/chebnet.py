"""Chebyshev nets in the Euclidean slice E = {0} x R^3.

A Chebyshev net is an immersion whose first fundamental form has
E = G = 1 and F = cos theta strictly inside (-1, 1).  First-kind nets are
built from two sphere curves as X = p0 + int T1 + int T2; for those the
metric coefficient F(u, v) = <T1(u), T2(v)> is evaluated directly, with no
differentiation.  Net points are stored as 3-vectors of E throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.interpolate import RectBivariateSpline

from .errors import (BadGrid, DegenerateMetric, DisjointnessViolated,
                     EmptyOverlap)
from .numerics import (Grid2D, SphereCurve, cumulative_integral,
                       cumulative_samples, grid_from_ranges, partials,
                       sample_curve)

DISJOINT_MARGIN = 1e-6
FIRST_KIND = "first_kind"
GENERAL = "general"


@dataclass(frozen=True)
class NetSurface:
    """Sampled Chebyshev net with its first fundamental form and angle."""

    grid: Grid2D            # E-points, payload (nu, nv, 3)
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray
    theta: np.ndarray
    kind: str
    p0: np.ndarray


@dataclass(frozen=True)
class EuclideanShape:
    """Gauss map, second fundamental form and Gaussian curvature of a net."""

    gauss_map: np.ndarray   # (nu, nv, 3) unit vectors
    e: np.ndarray
    f: np.ndarray
    g: np.ndarray
    K_T: np.ndarray


@dataclass(frozen=True)
class DisjointnessReport:
    passed: bool
    min_separation: float
    margin: float
    at_u: float
    at_v: float


@dataclass(frozen=True)
class ChebyshevReport:
    passed: bool
    sup_e: float
    sup_g: float
    sup_f: float
    tol: float
    f_margin: float
    theta: Optional[np.ndarray]


@dataclass(frozen=True)
class SumOneReport:
    passed: bool
    sup_sum: float
    sup_f: float
    tol: float


def check_disjointness(T1: SphereCurve, T2: SphereCurve,
                       margin: float = DISJOINT_MARGIN) -> DisjointnessReport:
    """Scan the sample product for T1(u) = +-T2(v).

    Passes iff min over (u, v) of min(|T1 - T2|, |T1 + T2|) exceeds the
    margin; a continuous violation between samples cannot be detected.
    """
    F = T1.points @ T2.points.T
    absF = np.abs(F)
    i, j = np.unravel_index(np.argmax(absF), absF.shape)
    sep = float(np.sqrt(max(2.0 - 2.0 * absF[i, j], 0.0)))
    return DisjointnessReport(passed=sep > margin, min_separation=sep,
                              margin=margin, at_u=float(T1.ts[i]),
                              at_v=float(T2.ts[j]))


def build_first_kind(T1: SphereCurve, T2: SphereCurve, p0,
                     margin: float = DISJOINT_MARGIN) -> NetSurface:
    """First-kind net X(u, v) = p0 + int_0^u T1 + int_0^v T2.

    Integrals are taken from the node nearest the curve parameter 0 by
    composite Simpson; E = G = 1 up to quadrature error and F is exact.
    """
    rep = check_disjointness(T1, T2, margin)
    if not rep.passed:
        raise DisjointnessViolated(
            f"generators meet near u={rep.at_u:.6g}, v={rep.at_v:.6g} "
            f"(separation {rep.min_separation:.3e})",
            u=rep.at_u, v=rep.at_v)
    p0 = np.asarray(p0, dtype=float)
    I1 = cumulative_integral(T1).points
    I2 = cumulative_integral(T2).points
    X = p0[None, None, :] + I1[:, None, :] + I2[None, :, :]
    F = T1.points @ T2.points.T
    theta = np.arccos(np.clip(F, -1.0, 1.0))
    grid = Grid2D(u_min=T1.t_min, v_min=T2.t_min, du=T1.dt, dv=T2.dt, values=X)
    ones = np.ones_like(F)
    return NetSurface(grid=grid, E=ones, F=F, G=ones.copy(), theta=theta,
                      kind=FIRST_KIND, p0=p0)


def first_form(g: Grid2D) -> tuple:
    """Coefficients (E, F, G) of the first fundamental form by differencing."""
    if g.values.ndim != 3 or g.values.shape[2] != 3:
        raise BadGrid("first_form expects a grid of E-points")
    Xu = partials(g, "u").values
    Xv = partials(g, "v").values
    E = np.einsum("ijk,ijk->ij", Xu, Xu)
    F = np.einsum("ijk,ijk->ij", Xu, Xv)
    G = np.einsum("ijk,ijk->ij", Xv, Xv)
    return E, F, G


def is_chebyshev(g: Union[Grid2D, NetSurface], tol: float = 1e-6,
                 f_margin: float = DISJOINT_MARGIN) -> ChebyshevReport:
    """Verify E = G = 1 and |F| < 1 by differencing the point grid."""
    grid = g.grid if isinstance(g, NetSurface) else g
    E, F, G = first_form(grid)
    sup_e = float(np.abs(E - 1.0).max())
    sup_g = float(np.abs(G - 1.0).max())
    sup_f = float(np.abs(F).max())
    passed = sup_e <= tol and sup_g <= tol and sup_f <= 1.0 - f_margin
    theta = np.arccos(np.clip(F, -1.0, 1.0)) if passed else None
    return ChebyshevReport(passed=passed, sup_e=sup_e, sup_g=sup_g,
                           sup_f=sup_f, tol=tol, f_margin=f_margin,
                           theta=theta)


def equivalent_immersion(g: Grid2D, direction: str = "uv_to_ts",
                         nt: Optional[int] = None,
                         ns: Optional[int] = None) -> Grid2D:
    """Resample through the linear coordinate change t = u+v, s = -u+v.

    Forward maps a (u, v) grid to X~(t, s) = X((t-s)/2, (t+s)/2); inverse
    maps a (t, s) grid to X(u, v) = Y(u+v, -u+v).  The target rectangle is
    the largest one inscribed in the rotated image of the source domain;
    values come from a bicubic spline of the source samples.
    """
    if direction not in ("uv_to_ts", "ts_to_uv"):
        raise BadGrid(f"unknown direction {direction!r}")
    if g.nu < 4 or g.nv < 4:
        raise EmptyOverlap("source grid too small for the resampling spline")
    us, vs = g.us, g.vs
    Lu = us[-1] - us[0]
    Lv = vs[-1] - vs[0]
    # in both directions a target square of half-width m/4 per axis fits
    half = min(Lu, Lv) / 4.0
    if half <= 0:
        raise EmptyOverlap("inscribed rectangle degenerates")
    uc, vc = (us[0] + us[-1]) / 2.0, (vs[0] + vs[-1]) / 2.0
    if direction == "uv_to_ts":
        c1, c2 = uc + vc, vc - uc
        half1 = half2 = 2.0 * half  # |t - tc| + |s - sc| <= min(Lu, Lv)
    else:
        c1, c2 = (uc - vc) / 2.0, (uc + vc) / 2.0
        half1 = half2 = half
    n1 = nt if nt is not None else g.nu
    n2 = ns if ns is not None else g.nv
    shrink = 1.0 - 1e-12
    x1 = np.linspace(c1 - half1 * shrink, c1 + half1 * shrink, n1)
    x2 = np.linspace(c2 - half2 * shrink, c2 + half2 * shrink, n2)
    A, B = np.meshgrid(x1, x2, indexing="ij")
    if direction == "uv_to_ts":
        src_u, src_v = (A - B) / 2.0, (A + B) / 2.0
    else:
        src_u, src_v = A + B, B - A

    vals = g.values
    scalar = vals.ndim == 2
    comps = vals[..., None] if scalar else vals
    out = np.empty(A.shape + (comps.shape[-1],))
    for k in range(comps.shape[-1]):
        sp = RectBivariateSpline(us, vs, comps[..., k], kx=3, ky=3, s=0)
        out[..., k] = sp.ev(src_u.ravel(), src_v.ravel()).reshape(A.shape)
    if scalar:
        out = out[..., 0]
    return Grid2D(u_min=float(x1[0]), v_min=float(x2[0]),
                  du=float(x1[1] - x1[0]), dv=float(x2[1] - x2[0]), values=out)


def check_sum_one(g, tol: float = 1e-8) -> SumOneReport:
    """Check E(t,s) + G(t,s) = 1, the Chebyshev condition in (t, s) form.

    Accepts a point grid (first form by differencing) or a precomputed
    (E, F, G) triple; F is reported separately, not required to vanish.
    """
    if isinstance(g, Grid2D):
        E, F, G = first_form(g)
    else:
        E, F, G = (np.asarray(x, dtype=float) for x in g)
    sup_sum = float(np.abs(E + G - 1.0).max())
    sup_f = float(np.abs(F).max())
    return SumOneReport(passed=sup_sum <= tol, sup_sum=sup_sum,
                        sup_f=sup_f, tol=tol)


def euclidean_shape(n: NetSurface, metric_tol: float = 1e-9) -> EuclideanShape:
    """Gauss map, second form and Gaussian curvature of the net in E."""
    g = n.grid
    Xu = partials(g, "u").values
    Xv = partials(g, "v").values
    E = np.einsum("ijk,ijk->ij", Xu, Xu)
    F = np.einsum("ijk,ijk->ij", Xu, Xv)
    G = np.einsum("ijk,ijk->ij", Xv, Xv)
    det = E * G - F * F
    if det.min() <= metric_tol:
        raise DegenerateMetric(
            f"EG - F^2 reaches {det.min():.3e}; shape quantities undefined")
    cross = np.cross(Xu, Xv)
    gauss = cross / np.linalg.norm(cross, axis=-1)[..., None]
    Xuu = partials(g, "uu").values
    Xvv = partials(g, "vv").values
    Xuv = partials(partials(g, "u"), "v").values
    e = np.einsum("ijk,ijk->ij", Xuu, gauss)
    f = np.einsum("ijk,ijk->ij", Xuv, gauss)
    gg = np.einsum("ijk,ijk->ij", Xvv, gauss)
    K_T = (e * gg - f * f) / det
    return EuclideanShape(gauss_map=gauss, e=e, f=f, g=gg, K_T=K_T)


def sine_gordon_residual(n: NetSurface, shape: EuclideanShape) -> Grid2D:
    """Residual theta_uv + K_T sin theta on interior nodes.

    Interior means nodes where the centered stencils apply (two-node trim);
    near theta = 0 or pi the arccos differencing degenerates and values
    there should be judged with the usual degenerate-angle mask.
    """
    g = n.grid
    theta_grid = Grid2D(u_min=g.u_min, v_min=g.v_min, du=g.du, dv=g.dv,
                        values=n.theta)
    theta_uv = partials(theta_grid, "uv").values
    res = theta_uv + shape.K_T * np.sin(n.theta)
    it = slice(2, -2)
    return Grid2D(u_min=g.u_min + 2 * g.du, v_min=g.v_min + 2 * g.dv,
                  du=g.du, dv=g.dv, values=res[it, it])


# ---------------------------------------------------------------------------
# gallery

@dataclass(frozen=True)
class Gallery:
    """A gallery net with closed-form oracle fields.

    For ``critical`` the oracles are the metric coefficient F, the Gauss
    map, the second-form coefficients and K_T on the net grid.  For
    ``noncritical`` the rotational surface is provided on its native (t, s)
    grid together with closed-form first-form coefficients, and ``net``
    carries the Chebyshev-equivalent (u, v) immersion evaluated exactly.
    """

    name: str
    net: NetSurface
    oracles: dict
    ts_grid: Optional[Grid2D] = None
    ts_forms: Optional[tuple] = None


def _critical_gallery(nu, nv, u_range, v_range) -> Gallery:
    if u_range is None:
        u_range = (-np.pi / 2 + 0.05, np.pi / 2 - 0.05)
    if v_range is None:
        v_range = (-np.pi / 2 + 0.05, np.pi / 2 - 0.05)
    us = np.linspace(*u_range, nu)
    vs = np.linspace(*v_range, nv)
    U, V = np.meshgrid(us, vs, indexing="ij")
    # X = int (cos, sin, 0) du + int (0, sin, cos) dv, in closed form
    X = np.stack([np.sin(U), 2.0 - np.cos(U) - np.cos(V), np.sin(V)], axis=-1)
    grid = grid_from_ranges(u_range, v_range, X)
    F = np.sin(U) * np.sin(V)
    theta = np.arccos(np.clip(F, -1.0, 1.0))
    ones = np.ones_like(F)
    net = NetSurface(grid=grid, E=ones, F=F, G=ones.copy(), theta=theta,
                     kind=FIRST_KIND, p0=np.zeros(3))
    root = np.sqrt(1.0 - np.sin(U)**2 * np.sin(V)**2)
    oracles = {
        "F": F,
        "gauss_map": np.stack([np.sin(U) * np.cos(V),
                               -np.cos(U) * np.cos(V),
                               np.cos(U) * np.sin(V)], axis=-1) / root[..., None],
        "second_e": -np.cos(V) / root,
        "second_f": np.zeros_like(F),
        "second_g": -np.cos(U) / root,
        "K_T": np.cos(U) * np.cos(V) / root**4,
        "T1": lambda t: np.stack([np.cos(t), np.sin(t), 0 * t], axis=-1),
        "T2": lambda t: np.stack([0 * t, np.sin(t), np.cos(t)], axis=-1),
    }
    return Gallery(name="critical", net=net, oracles=oracles)


class _NoncriticalProfile:
    """Profile functions of the rotational example: x = tanh(s)/2 and y by
    quadrature of y' = sqrt(4 - tanh^2 s - sech^4 s)/2."""

    def __init__(self, s_max=2.5, h=1e-4):
        from scipy.interpolate import CubicSpline
        nfine = int(round(s_max / h))
        if nfine % 2 == 1:
            nfine += 1  # even segment count keeps pure Simpson pairs
        sf = np.linspace(0.0, s_max, nfine + 1)
        yv = cumulative_samples(self.yp(sf), sf[1] - sf[0])
        self._yspl = CubicSpline(sf, yv)

    @staticmethod
    def x(s):
        return np.tanh(s) / 2.0

    @staticmethod
    def xp(s):
        return 1.0 / np.cosh(s)**2 / 2.0

    @staticmethod
    def yp(s):
        return 0.5 * np.sqrt(4.0 - np.tanh(s)**2 - 1.0 / np.cosh(s)**4)

    def y(self, s):
        return self._yspl(s)

    def y_deriv(self, s):
        return self._yspl(s, 1)


_PROFILE = None


def _profile() -> _NoncriticalProfile:
    global _PROFILE
    if _PROFILE is None:
        _PROFILE = _NoncriticalProfile()
    return _PROFILE


def _noncritical_gallery(nu, nv, t_range, s_range) -> Gallery:
    if t_range is None:
        t_range = (-np.pi + 0.05, np.pi - 0.05)
    if s_range is None:
        s_range = (0.25, 2.0)  # s = 0 degenerates the immersion
    pr = _profile()
    ts = np.linspace(*t_range, nu)
    ss = np.linspace(*s_range, nv)
    T, S = np.meshgrid(ts, ss, indexing="ij")
    Y = np.stack([pr.x(S) * np.cos(T), pr.x(S) * np.sin(T), pr.y(S)], axis=-1)
    ts_grid = grid_from_ranges(t_range, s_range, Y)
    Yt = np.stack([-pr.x(S) * np.sin(T), pr.x(S) * np.cos(T),
                   np.zeros_like(S)], axis=-1)
    Ys = np.stack([pr.xp(S) * np.cos(T), pr.xp(S) * np.sin(T),
                   pr.y_deriv(S)], axis=-1)
    E_ts = np.einsum("ijk,ijk->ij", Yt, Yt)
    F_ts = np.einsum("ijk,ijk->ij", Yt, Ys)
    G_ts = np.einsum("ijk,ijk->ij", Ys, Ys)

    # Chebyshev-equivalent (u, v) immersion on the inscribed square,
    # evaluated exactly through t = u + v, s = -u + v.
    Lt, Ls = ts[-1] - ts[0], ss[-1] - ss[0]
    half = min(Lt, Ls) / 4.0
    uc = (ts[0] + ts[-1]) / 4.0 - (ss[0] + ss[-1]) / 4.0
    vc = (ts[0] + ts[-1]) / 4.0 + (ss[0] + ss[-1]) / 4.0
    us = np.linspace(uc - half, uc + half, nu)
    vs = np.linspace(vc - half, vc + half, nv)
    U, V = np.meshgrid(us, vs, indexing="ij")
    Tq, Sq = U + V, V - U
    X = np.stack([pr.x(Sq) * np.cos(Tq), pr.x(Sq) * np.sin(Tq),
                  pr.y(Sq)], axis=-1)
    grid = grid_from_ranges((us[0], us[-1]), (vs[0], vs[-1]), X)
    F = 2.0 * pr.x(Sq)**2 - 1.0
    theta = np.arccos(np.clip(F, -1.0, 1.0))
    ones = np.ones_like(F)
    net = NetSurface(grid=grid, E=ones, F=F, G=ones.copy(), theta=theta,
                     kind=GENERAL, p0=X[nu // 2, nv // 2].copy())
    return Gallery(name="noncritical", net=net, oracles={"F": F},
                   ts_grid=ts_grid, ts_forms=(E_ts, F_ts, G_ts))


def gallery(name: str, nu: int = 201, nv: int = 201,
            u_range=None, v_range=None) -> Gallery:
    """The two worked examples: ``critical`` (minimal lift) and
    ``noncritical`` (rotational surface with nonvanishing H)."""
    if name == "critical":
        return _critical_gallery(nu, nv, u_range, v_range)
    if name == "noncritical":
        return _noncritical_gallery(nu, nv, u_range, v_range)
    raise BadGrid(f"unknown gallery entry {name!r}")


def gallery_generators(n: int = 201, u_range=None, v_range=None):
    """Sphere-curve generators of the critical gallery net."""
    if u_range is None:
        u_range = (-np.pi / 2 + 0.05, np.pi / 2 - 0.05)
    if v_range is None:
        v_range = (-np.pi / 2 + 0.05, np.pi / 2 - 0.05)
    T1 = sample_curve(lambda t: np.stack([np.cos(t), np.sin(t), 0 * t], axis=-1),
                      u_range, n, cls=SphereCurve, tag="critical_T1")
    T2 = sample_curve(lambda t: np.stack([0 * t, np.sin(t), np.cos(t)], axis=-1),
                      v_range, n, cls=SphereCurve, tag="critical_T2")
    return T1, T2
