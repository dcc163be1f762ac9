"""Cauchy problem for lightlike initial curves in R^4_1.

Input data is a lightlike curve c(t) with increasing time component and an
orthonormal spacelike distribution D(t) = span{a(t), b(t)} normal along it.
The solver checks the lightlike-tangent condition c' = c0' (d0 + n0) with
n0 taken from the adapted frame of D (both orderings of {a, b} are tried,
since the sign of nu depends on the ordering), decomposes the data along
the spatial curve alpha(u) = c(u) - u d0, measures the compatibility of the
second null generator, and assembles solutions as sums of two lightlike
curves.  Solutions are classified into the line / helix / planar-alpha
special cases, and non-uniqueness is realized by exchanging extensions of
the second generator with a fixed value at v = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

import numpy as np
from scipy.interpolate import CubicSpline

from . import minkowski as mk
from .errors import (BadData, DegenerateFrenet, DisjointnessViolated,
                     DivisionDegenerate, ExtensionMismatch, IncompatibleData,
                     InconsistentSeed, NecessaryConditionFailed)
from .lift import LiftSurface, build_minimal, mean_curvature, normal_frame
from .numerics import (FrenetData, Grid2D, KAPPA_TOL, SampledCurve,
                       SphereCurve, diff_samples, frenet, masked_sup)

NECESSARY_TOL = 1e-6
COMPAT_TOL = 1e-5
ZERO_TOL = 1e-3          # "identically zero" cutoff for the classifier
RATIO_TOL = 1e-3         # relative variation allowed for a constant kappa/tor
SEED_TOL = 1e-6
STRUCT_TOL = 1e-6


# ---------------------------------------------------------------------------
# data types

@dataclass(frozen=True)
class BjorlingData:
    """Lightlike curve plus orthonormal spacelike distribution along it."""

    c: SampledCurve
    a: SampledCurve
    b: SampledCurve

    def __post_init__(self):
        for name, cur in (("c", self.c), ("a", self.a), ("b", self.b)):
            if cur.points.shape[1] != 4:
                raise BadData(f"{name} must be a curve in R^4_1")
        if not (self.c.n == self.a.n == self.b.n):
            raise BadData("c, a, b must share their sample grid")
        for cur in (self.a, self.b):
            if abs(cur.t_min - self.c.t_min) > 1e-12 or \
               abs(cur.dt - self.c.dt) > 1e-12:
                raise BadData("c, a, b must share their sample grid")

    def validate_structure(self, tol: float = STRUCT_TOL) -> None:
        """Frame preconditions: (a, b) orthonormal spacelike, c lightlike
        with c0' > 0.  Normality of D to c' is *not* enforced here; it is
        exactly what the necessary-condition check measures."""
        a, b = self.a.points, self.b.points
        res = max(np.abs(mk.inner(a, a) - 1.0).max(),
                  np.abs(mk.inner(b, b) - 1.0).max(),
                  np.abs(mk.inner(a, b)).max())
        if res > tol:
            raise BadData(f"(a, b) is not orthonormal spacelike "
                          f"(residual {res:.3e})")
        cp = diff_samples(self.c.points, self.c.dt, 1)
        if cp[:, 0].min() <= 0:
            raise BadData("c0'(t) must be positive")
        light = np.abs(mk.inner(cp, cp)) / np.einsum("ij,ij->i", cp, cp)
        if light.max() > tol:
            raise BadData(f"c is not lightlike (residual {light.max():.3e})")

    def normality_residual(self) -> float:
        cp = diff_samples(self.c.points, self.c.dt, 1)
        return float(max(np.abs(mk.inner(cp, self.a.points)).max(),
                         np.abs(mk.inner(cp, self.b.points)).max()))


@dataclass(frozen=True)
class NecessaryReport:
    passed: bool
    orientation: Optional[str]   # "ab" or "ba"
    residual_ab: float
    residual_ba: float
    tol: float

    @property
    def residual(self) -> float:
        return min(self.residual_ab, self.residual_ba)


@dataclass(frozen=True)
class CurveDecomposition:
    """Curve-level data on a uniform u-grid with c0'(u) = 1."""

    data: BjorlingData           # reparametrized copy
    alpha: SampledCurve          # spatial curve in E
    frenet: FrenetData
    theta0: np.ndarray
    p0fn: np.ndarray
    q0fn: np.ndarray
    n0curve: SphereCurve
    n3curve: SphereCurve
    orientation: str

    @property
    def us(self) -> np.ndarray:
        return self.alpha.ts


@dataclass(frozen=True)
class CompatibilityReport:
    sup_r1: float
    sup_r2: float
    sup_r3: float
    sup_dn3: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.sup_dn3 <= self.tol


class SpecialCaseKind(Enum):
    GENERIC = "generic"
    PLANAR_ALPHA = "planar_alpha"
    LIGHTLIKE_LINE = "lightlike_line"
    HELIX = "helix"


@dataclass(frozen=True)
class SpecialCase:
    kind: SpecialCaseKind
    diagnostics: dict


@dataclass(frozen=True)
class ExtensionChoice:
    """Second-generator extension: an explicit sphere curve over J, or a
    theta profile over I x J from which p, q follow."""

    kind: str                    # "sphere_curve" | "theta_profile"
    curve: Optional[SphereCurve] = None
    theta: Optional[Grid2D] = None

    @classmethod
    def from_curve(cls, curve: SphereCurve) -> "ExtensionChoice":
        return cls(kind="sphere_curve", curve=curve)

    @classmethod
    def from_theta(cls, theta: Grid2D) -> "ExtensionChoice":
        return cls(kind="theta_profile", theta=theta)


@dataclass(frozen=True)
class SolveReport:
    passed: bool
    orientation: str
    extension_kind: str
    compatibility_sup: float
    curve_sup: float
    projector_sup: float
    h_sup: float
    tols: dict


# ---------------------------------------------------------------------------
# necessary condition

def _frame_nulls(a_pts: np.ndarray, b_pts: np.ndarray) -> tuple:
    """Nodewise n0 = pi(tau - nu), n3 = pi(tau + nu) for given (a, b)."""
    n0 = np.empty_like(a_pts)
    n3 = np.empty_like(a_pts)
    for i in range(a_pts.shape[0]):
        f = mk.build_frame(a_pts[i], b_pts[i], ortho_tol=1e-5)
        n0[i] = f.n0
        n3[i] = f.n3
    return n0, n3


def check_necessary(d: BjorlingData, tol: float = NECESSARY_TOL) -> NecessaryReport:
    """Check c' = c0'(d0 + n00) against both orderings of {a, b}.

    Swapping (a, b) flips nu and exchanges n0 with n3, so the two residuals
    come from one frame pass.  The residual is measured on c'/c0', which
    makes pass/fail invariant under orientation-preserving reparametrization
    of c.
    """
    d.validate_structure()
    cp = diff_samples(d.c.points, d.c.dt, 1)
    l_data = cp / cp[:, :1]      # c'/c0', time component 1
    n0, n3 = _frame_nulls(d.a.points, d.b.points)
    r_ab = float(np.linalg.norm(l_data - mk.D0 - n0, axis=1).max())
    r_ba = float(np.linalg.norm(l_data - mk.D0 - n3, axis=1).max())
    orientation = None
    if min(r_ab, r_ba) <= tol:
        orientation = "ab" if r_ab <= r_ba else "ba"
    return NecessaryReport(passed=orientation is not None,
                           orientation=orientation, residual_ab=r_ab,
                           residual_ba=r_ba, tol=tol)


# ---------------------------------------------------------------------------
# reparametrization and decomposition

def _resample(d: BjorlingData) -> BjorlingData:
    """Reparametrize to u = c0(t) - c0(t_base) on a uniform grid with a
    u = 0 node; after this c0'(u) = 1 up to interpolation error."""
    ts = d.c.ts
    c0 = d.c.points[:, 0]
    if np.any(np.diff(c0) <= 0):
        raise BadData("c0(t) must be strictly increasing")
    u_of_t = c0 - c0[d.c.base_index()]
    span = u_of_t[-1] - u_of_t[0]
    du = span / (d.c.n - 1)
    k_lo = int(np.ceil(u_of_t[0] / du - 1e-9))
    k_hi = int(np.floor(u_of_t[-1] / du + 1e-9))
    if k_hi - k_lo < 4:
        raise BadData("curve too short to resample")
    us = du * np.arange(k_lo, k_hi + 1)
    t_of_u = CubicSpline(u_of_t, ts)
    t_new = np.clip(t_of_u(us), ts[0], ts[-1])

    def resampled(cur: SampledCurve) -> np.ndarray:
        return CubicSpline(ts, cur.points, axis=0)(t_new)

    c_new = resampled(d.c)
    a_new = resampled(d.a)
    b_new = resampled(d.b)
    # restore exact orthonormality lost to interpolation
    a_new = a_new / np.sqrt(mk.inner(a_new, a_new))[:, None]
    b_new = b_new - mk.inner(a_new, b_new)[:, None] * a_new
    b_new = b_new / np.sqrt(mk.inner(b_new, b_new))[:, None]
    t0 = float(us[0])
    mkc = lambda pts: SampledCurve(t_min=t0, dt=float(du), points=pts)
    return BjorlingData(c=mkc(c_new), a=mkc(a_new), b=mkc(b_new))


def decompose(d: BjorlingData, orientation: Optional[str] = None,
              kappa_tol: float = KAPPA_TOL) -> CurveDecomposition:
    """Frenet decomposition of the data along alpha(u) = c(u) - u d0.

    Reparametrizes so that c0' = 1, takes T = n0 = spatial(c'), computes
    n3 from the adapted frames of D with the admissible orientation, and
    projects n3 = cos(theta) T + p N + q B on the Frenet frame.
    """
    if orientation is None:
        rep = check_necessary(d)
        if not rep.passed:
            raise NecessaryConditionFailed(
                f"residuals {rep.residual_ab:.3e} / {rep.residual_ba:.3e} "
                f"exceed {rep.tol:g}")
        orientation = rep.orientation
    rd = _resample(d)
    alpha = SampledCurve(t_min=rd.c.t_min, dt=rd.c.dt,
                         points=mk.spatial(rd.c.points))
    fr = frenet(alpha, kappa_tol=kappa_tol)
    if np.any(fr.degenerate):
        raise DegenerateFrenet(
            f"kappa <= {kappa_tol:g} on {int(fr.degenerate.sum())} nodes; "
            "use classify_special / ruled_solution for straight-line data")
    n0_f, n3_f = _frame_nulls(rd.a.points, rd.b.points)
    if orientation == "ba":
        n0_f, n3_f = n3_f, n0_f
    n3_sp = mk.spatial(n3_f)
    cp = diff_samples(rd.c.points, rd.c.dt, 1)
    n0_sp = cp[:, 1:] / np.linalg.norm(cp[:, 1:], axis=1, keepdims=True)
    theta0 = np.arccos(np.clip(np.einsum("ij,ij->i", n0_sp, n3_sp), -1.0, 1.0))
    p0fn = np.einsum("ij,ij->i", n3_sp, fr.N)
    q0fn = np.einsum("ij,ij->i", n3_sp, fr.B)
    n0curve = SphereCurve(t_min=alpha.t_min, dt=alpha.dt, points=n0_sp)
    n3curve = SphereCurve(t_min=alpha.t_min, dt=alpha.dt,
                          points=n3_sp / np.linalg.norm(n3_sp, axis=1,
                                                        keepdims=True))
    return CurveDecomposition(data=rd, alpha=alpha, frenet=fr, theta0=theta0,
                              p0fn=p0fn, q0fn=q0fn, n0curve=n0curve,
                              n3curve=n3curve, orientation=orientation)


def compatibility_residual(dec: CurveDecomposition,
                           tol: float = COMPAT_TOL) -> CompatibilityReport:
    """Residuals of the curve-level compatibility system at v = 0.

    The three equations are the Frenet decomposition of d n3/du = 0:
    theta_u sin theta + kappa p, p_u + kappa cos theta - tor q,
    q_u + tor p.  The direct measure sup |d n3/du| is reported as well and
    is the value the solver gates on.
    """
    du = dec.alpha.dt
    th_u = diff_samples(dec.theta0, du, 1)
    p_u = diff_samples(dec.p0fn, du, 1)
    q_u = diff_samples(dec.q0fn, du, 1)
    kap, tor = dec.frenet.kappa, dec.frenet.tor
    r1 = th_u * np.sin(dec.theta0) + kap * dec.p0fn
    r2 = p_u + kap * np.cos(dec.theta0) - tor * dec.q0fn
    r3 = q_u + tor * dec.p0fn
    dn3 = np.linalg.norm(diff_samples(dec.n3curve.points, du, 1), axis=1)
    return CompatibilityReport(sup_r1=float(np.abs(r1).max()),
                               sup_r2=float(np.abs(r2).max()),
                               sup_r3=float(np.abs(r3).max()),
                               sup_dn3=float(dn3.max()), tol=tol)


def solve_pq(theta: Grid2D, kappa: np.ndarray, tor: np.ndarray,
             div_tol: float = 1e-9) -> tuple:
    """Solve the reduced system for (p, q) given a theta extension.

    p = -theta_u sin theta / kappa, q = (p_u + kappa cos theta) / tor; the
    returned residual p^2 + q^2 - sin^2 theta is the consistency check an
    admissible theta extension must satisfy.
    """
    kappa = np.asarray(kappa, dtype=float)
    tor = np.asarray(tor, dtype=float)
    if np.abs(kappa).min() <= div_tol or np.abs(tor).min() <= div_tol:
        raise DivisionDegenerate(
            "kappa or torsion vanishes; theta-profile extensions need the "
            "generic case")
    th = theta.values
    th_u = diff_samples(th, theta.du, 1, axis=0)
    p = -th_u * np.sin(th) / kappa[:, None]
    p_u = diff_samples(p, theta.du, 1, axis=0)
    q = (p_u + kappa[:, None] * np.cos(th)) / tor[:, None]
    residual = p * p + q * q - np.sin(th)**2
    return (theta.with_values(p), theta.with_values(q),
            theta.with_values(residual))


# ---------------------------------------------------------------------------
# special cases

def classify_special(x: Union[BjorlingData, CurveDecomposition],
                     zero_tol: float = ZERO_TOL,
                     ratio_tol: float = RATIO_TOL) -> SpecialCase:
    """Classify data into the line / planar / helix / generic cases.

    A planar alpha is recognized by tor = 0 alone: the worked constant-angle
    circle data has theta_u = 0 as well, so the planar test cannot require
    theta_u != 0.  ``zero_tol`` absorbs the differencing noise of third
    derivatives on clean data sampled at h >= 1e-3.
    """
    if isinstance(x, BjorlingData):
        rd = _resample(x)
        alpha = SampledCurve(t_min=rd.c.t_min, dt=rd.c.dt,
                             points=mk.spatial(rd.c.points))
        fr = frenet(alpha)
        sup_kappa = float(fr.kappa.max())
        if sup_kappa <= zero_tol:
            return SpecialCase(kind=SpecialCaseKind.LIGHTLIKE_LINE,
                               diagnostics={"sup_kappa": sup_kappa})
        if np.any(fr.degenerate):
            return SpecialCase(kind=SpecialCaseKind.GENERIC, diagnostics={
                "sup_kappa": sup_kappa,
                "degenerate_nodes": int(fr.degenerate.sum())})
        dec = decompose(x)
    else:
        dec = x
        sup_kappa = float(dec.frenet.kappa.max())
        if sup_kappa <= zero_tol:
            return SpecialCase(kind=SpecialCaseKind.LIGHTLIKE_LINE,
                               diagnostics={"sup_kappa": sup_kappa})

    du = dec.alpha.dt
    sup_tor = float(np.abs(dec.frenet.tor).max())
    sup_theta_u = float(np.abs(diff_samples(dec.theta0, du, 1)).max())
    sup_p = float(np.abs(dec.p0fn).max())
    diag = {"sup_kappa": sup_kappa, "sup_tor": sup_tor,
            "sup_theta_u": sup_theta_u, "sup_p": sup_p}
    if sup_tor <= zero_tol:
        return SpecialCase(kind=SpecialCaseKind.PLANAR_ALPHA, diagnostics=diag)
    ratio = dec.frenet.kappa / dec.frenet.tor
    var = float(np.abs(ratio - ratio.mean()).max() / max(abs(ratio.mean()), 1e-12))
    diag["ratio_variation"] = var
    if sup_theta_u <= zero_tol and sup_p <= zero_tol and var <= ratio_tol:
        return SpecialCase(kind=SpecialCaseKind.HELIX, diagnostics=diag)
    return SpecialCase(kind=SpecialCaseKind.GENERIC, diagnostics=diag)


def ruled_solution(d: BjorlingData, n3: SphereCurve,
                   seed_tol: float = 1e-5) -> LiftSurface:
    """Solution through a lightlike straight line: f = u l0 + v d0 + int n3.

    ``n3(0)`` must agree with pi(tau + nu) of D at the basepoint (admissible
    orientation); the surface is ruled by the constant direction l0.
    """
    case = classify_special(d)
    if case.kind is not SpecialCaseKind.LIGHTLIKE_LINE:
        raise BadData(f"data classifies as {case.kind.value}, not a line")
    rep = check_necessary(d)
    if not rep.passed:
        raise NecessaryConditionFailed(
            f"residuals {rep.residual_ab:.3e} / {rep.residual_ba:.3e}")
    rd = _resample(d)
    cp = diff_samples(rd.c.points, rd.c.dt, 1)
    n0_sp = cp[:, 1:] / np.linalg.norm(cp[:, 1:], axis=1, keepdims=True)
    n0_const = n0_sp.mean(axis=0)
    n0_const /= np.linalg.norm(n0_const)
    n0_f, n3_f = _frame_nulls(rd.a.points, rd.b.points)
    if rep.orientation == "ba":
        n0_f, n3_f = n3_f, n0_f
    seed = mk.spatial(n3_f[rd.c.base_index()])
    miss = float(np.linalg.norm(n3.points[n3.base_index()] - seed))
    if miss > seed_tol:
        raise InconsistentSeed(
            f"n3(0) differs from the frame value by {miss:.3e}")
    n0curve = SphereCurve(t_min=rd.c.t_min, dt=rd.c.dt,
                          points=np.tile(n0_const, (rd.c.n, 1)))
    P0 = rd.c.points[rd.c.base_index()]
    return build_minimal(n0curve, n3, P0)


# ---------------------------------------------------------------------------
# assembly

def default_extension(dec: CurveDecomposition, J=(-1.0, 1.0), n: int = 201,
                      margin: float = 1e-3) -> SphereCurve:
    """Unit-rate rotation of n3(0) in the plane span{n3(0), e2(0)},
    truncated before it violates disjointness against n0.

    The grid is symmetrized so that v = 0 is an exact node.
    """
    n3c = dec.n3curve.points.mean(axis=0)
    n3c /= np.linalg.norm(n3c)
    e2 = np.cross(dec.n0curve.points[dec.n0curve.base_index()], n3c)
    nrm = np.linalg.norm(e2)
    if nrm < 1e-9:
        raise DisjointnessViolated("n0 and n3 parallel at the basepoint")
    e2 /= nrm
    half = min(-float(J[0]), float(J[1]))
    if half <= 0:
        raise ExtensionMismatch("default extension needs 0 inside J")
    if n % 2 == 0:
        n += 1
    for _ in range(30):
        vs = np.linspace(-half, half, n)
        pts = np.outer(np.cos(vs), n3c) + np.outer(np.sin(vs), e2)
        worst = np.abs(dec.n0curve.points @ pts.T).max()
        if worst < 1.0 - margin:
            return SphereCurve(t_min=-half, dt=float(vs[1] - vs[0]), points=pts)
        half *= 0.8
    raise DisjointnessViolated("could not truncate the default extension "
                               "into the admissible region")


def _extension_curve(dec: CurveDecomposition, ext: Optional[ExtensionChoice],
                     J, nJ: int, seed_tol: float) -> SphereCurve:
    n3_seed = dec.n3curve.points[dec.n3curve.base_index()]
    if ext is None:
        return default_extension(dec, J=J, n=nJ)
    if ext.kind == "sphere_curve":
        cur = ext.curve
        if abs(cur.ts[cur.base_index()]) > 1e-9:
            raise ExtensionMismatch("extension curve needs a v = 0 node")
        miss = float(np.linalg.norm(cur.points[cur.base_index()] - n3_seed))
        if miss > seed_tol:
            raise ExtensionMismatch(
                f"extension seed differs from data by {miss:.3e}")
        return cur
    if ext.kind != "theta_profile":
        raise ExtensionMismatch(f"unknown extension kind {ext.kind!r}")

    theta = ext.theta
    if theta.nu != dec.alpha.n or abs(theta.u_min - dec.alpha.t_min) > 1e-9 \
            or abs(theta.du - dec.alpha.dt) > 1e-9:
        raise ExtensionMismatch("theta profile must live on the data's u-grid")
    j0 = int(np.argmin(np.abs(theta.vs)))
    if abs(theta.vs[j0]) > theta.dv / 2:
        raise ExtensionMismatch("theta profile needs a v = 0 column")
    edge = float(np.abs(theta.values[:, j0] - dec.theta0).max())
    if edge > seed_tol:
        raise ExtensionMismatch(
            f"theta(u, 0) differs from curve data by {edge:.3e}")
    p, q, residual = solve_pq(theta, dec.frenet.kappa, dec.frenet.tor)
    res = float(np.abs(residual.values).max())
    if res > 1e-4:
        raise ExtensionMismatch(
            f"theta extension violates p^2 + q^2 = sin^2 theta by {res:.3e}")
    fr = dec.frenet
    n3_field = (np.cos(theta.values)[..., None] * fr.T[:, None, :]
                + p.values[..., None] * fr.N[:, None, :]
                + q.values[..., None] * fr.B[:, None, :])
    dev = float(np.abs(n3_field - n3_field.mean(axis=0)).max())
    if dev > 1e-4:
        raise ExtensionMismatch(
            f"extension's n3 varies along u by {dev:.3e}")
    pts = n3_field.mean(axis=0)
    pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    return SphereCurve(t_min=theta.v_min, dt=theta.dv, points=pts)


def solve(d: BjorlingData, ext: Optional[ExtensionChoice] = None,
          J=(-1.0, 1.0), nJ: int = 201, necessary_tol: float = NECESSARY_TOL,
          compat_tol: float = COMPAT_TOL, seed_tol: float = SEED_TOL,
          curve_tol: float = 1e-6, projector_tol: float = 1e-5,
          minimal_tol: float = 1e-5) -> tuple:
    """Assemble a minimal lift solving the Cauchy problem for (c, D).

    Runs the necessary-condition check, the decomposition and the
    compatibility gate, builds the second generator from the extension
    choice (a default rotation when none is given), and returns the surface
    together with the verification report: the surface interpolates c along
    v = 0, its normal bundle there spans D, and it is minimal.
    """
    rep = check_necessary(d, tol=necessary_tol)
    if not rep.passed:
        raise NecessaryConditionFailed(
            f"residuals {rep.residual_ab:.3e} / {rep.residual_ba:.3e} exceed "
            f"{necessary_tol:g}")
    dec = decompose(d, orientation=rep.orientation)
    comp = compatibility_residual(dec, tol=compat_tol)
    if not comp.passed:
        raise IncompatibleData(
            f"n3 varies along the curve: sup |dn3/du| = {comp.sup_dn3:.3e}",
            sup_dn3=comp.sup_dn3)
    n3curve = _extension_curve(dec, ext, J, nJ, seed_tol)
    P0 = dec.data.c.points[dec.data.c.base_index()]
    surf = build_minimal(dec.n0curve, n3curve, P0)

    # postconditions
    j0 = int(np.argmin(np.abs(surf.grid.vs)))
    curve_sup = float(np.linalg.norm(
        surf.grid.values[:, j0, :] - dec.data.c.points, axis=1).max())
    fr = normal_frame(surf)
    proj_sup = 0.0
    step = max(1, dec.data.c.n // 64)
    for i in range(0, dec.data.c.n, step):
        if fr.degenerate[i, j0]:
            continue
        P_surf = mk.plane_projector(fr.etilde[i, j0], fr.e2[i, j0])
        P_data = mk.plane_projector(dec.data.a.points[i], dec.data.b.points[i])
        proj_sup = max(proj_sup, float(np.abs(P_surf - P_data).max()))
    h_sup = mean_curvature(surf).sup()
    passed = (curve_sup <= curve_tol and proj_sup <= projector_tol
              and h_sup <= minimal_tol)
    report = SolveReport(
        passed=passed, orientation=rep.orientation,
        extension_kind=ext.kind if ext is not None else "default",
        compatibility_sup=comp.sup_dn3, curve_sup=curve_sup,
        projector_sup=proj_sup, h_sup=h_sup,
        tols={"necessary": necessary_tol, "compatibility": compat_tol,
              "curve": curve_tol, "projector": projector_tol,
              "minimal": minimal_tol})
    return surf, report


# ---------------------------------------------------------------------------
# reduction from L^3

def reduce_from_l3(gamma: SampledCurve, n: SampledCurve,
                   tol: float = STRUCT_TOL) -> BjorlingData:
    """Embed Cauchy data of L^3 = R^3_1 into R^4_1.

    gamma must be lightlike in R^3_1 (signature (-,+,+)) with increasing
    time component, n unit spacelike and normal to gamma'.  The embedding
    is c = (gamma, 0), a = (n, 0), b = d3; solutions then stay inside the
    slice x3 = 0 and solve the three-dimensional problem.
    """
    if gamma.points.shape[1] != 3 or n.points.shape[1] != 3:
        raise BadData("gamma and n must be curves in R^3_1 (3 components)")
    if gamma.n != n.n or abs(gamma.t_min - n.t_min) > 1e-12 or \
            abs(gamma.dt - n.dt) > 1e-12:
        raise BadData("gamma and n must share their sample grid")
    eta3 = np.array([-1.0, 1.0, 1.0])

    def ip3(x, y):
        return np.einsum("...i,i,...i->...", x, eta3, y)

    gp = diff_samples(gamma.points, gamma.dt, 1)
    if gp[:, 0].min() <= 0:
        raise BadData("gamma0'(t) must be positive")
    light = np.abs(ip3(gp, gp)) / np.einsum("ij,ij->i", gp, gp)
    if light.max() > tol:
        raise BadData(f"gamma is not lightlike in R^3_1 "
                      f"(residual {light.max():.3e})")
    if np.abs(ip3(n.points, n.points) - 1.0).max() > tol:
        raise BadData("n is not unit spacelike in R^3_1")
    if np.abs(ip3(gp, n.points)).max() > tol:
        raise BadData("n is not normal to gamma'")

    pad = lambda p: np.concatenate([p, np.zeros((p.shape[0], 1))], axis=1)
    c = SampledCurve(t_min=gamma.t_min, dt=gamma.dt, points=pad(gamma.points))
    a = SampledCurve(t_min=gamma.t_min, dt=gamma.dt, points=pad(n.points))
    b = SampledCurve(t_min=gamma.t_min, dt=gamma.dt,
                     points=np.tile(mk.D3, (gamma.n, 1)))
    return BjorlingData(c=c, a=a, b=b)
