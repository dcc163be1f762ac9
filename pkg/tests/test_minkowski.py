import numpy as np
import pytest

from chebylift.errors import BadInput, NotLightlike, ZeroTimeComponent
from chebylift.minkowski import (
    D0, D1, D2, D3, CausalClass, build_frame, causal_class,
    frame_identity_residuals, inner, plane_projector, project_lightlike,
    vec4, wedge3,
)


def oracle_wedge(u, v, w):
    # Solve <r, x> = det(x, u, v, w) against the standard basis:
    # <r, d_i> = eps_i r_i, hence r_i = eps_i det(d_i, u, v, w).
    eps = np.array([-1.0, 1.0, 1.0, 1.0])
    dets = np.array([np.linalg.det(np.stack([e, u, v, w])) for e in np.eye(4)])
    return eps * dets


def random_spacelike_pair(rng, span=2.0):
    # Any (a0, b0) plus an orthonormal spatial pair yields an orthonormal
    # spacelike pair: solve <a,a>=<b,b>=1, <a,b>=0 for the spatial parts.
    a0, b0 = rng.uniform(-span, span, 2)
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    x, y = q[:, 0], q[:, 1]
    ahat = np.sqrt(1.0 + a0 * a0) * x
    g = a0 * b0 / np.sqrt(1.0 + a0 * a0)
    bhat = np.sqrt(1.0 + b0 * b0 - g * g) * y + g * x
    a = np.concatenate([[a0], ahat])
    b = np.concatenate([[b0], bhat])
    return a, b


class TestInner:
    def test_basis_timelike(self):
        assert inner(D0, D0) == -1.0

    def test_canonical_lightlike(self):
        assert inner(D0 + D1, D0 + D1) == 0.0

    def test_direct_arithmetic(self):
        v = vec4(1.0, np.sqrt(2.0), 0.0, 0.0)
        assert inner(v, v) == pytest.approx(1.0, abs=1e-15)

    def test_symmetric_bilinear(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            u, v, w = rng.normal(size=(3, 4))
            s, t = rng.normal(size=2)
            assert inner(u, v) == pytest.approx(inner(v, u), abs=1e-12)
            assert inner(s * u + t * w, v) == pytest.approx(
                s * inner(u, v) + t * inner(w, v), abs=1e-12)


class TestCausalClass:
    def test_zero_is_spacelike(self):
        assert causal_class(np.zeros(4)) is CausalClass.SPACELIKE

    def test_basis(self):
        assert causal_class(D0) is CausalClass.TIMELIKE
        assert causal_class(D0 + D3) is CausalClass.LIGHTLIKE
        assert causal_class(D1) is CausalClass.SPACELIKE

    def test_tolerance_variant(self):
        v = vec4(1.0, 1.0 + 1e-12, 0.0, 0.0)
        assert causal_class(v) is CausalClass.SPACELIKE
        assert causal_class(v, tol=1e-9) is CausalClass.LIGHTLIKE


class TestWedge3:
    def test_spatial_basis(self):
        assert np.allclose(wedge3(D1, D2, D3), -D0)

    def test_mixed_basis_vs_oracle(self):
        r = wedge3(D0, D2, D3)
        assert np.allclose(r, -D1)
        assert np.allclose(r, oracle_wedge(D0, D2, D3))

    def test_repeated_argument_vanishes(self):
        rng = np.random.default_rng(1)
        u, w = rng.normal(size=(2, 4))
        assert np.allclose(wedge3(u, u, w), 0.0)

    def test_defining_property_random(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            u, v, w = rng.normal(size=(3, 4))
            r = wedge3(u, v, w)
            assert np.allclose(r, oracle_wedge(u, v, w), atol=1e-10)
            for arg in (u, v, w):
                assert abs(inner(r, arg)) < 1e-10

    def test_antisymmetry(self):
        rng = np.random.default_rng(3)
        u, v, w = rng.normal(size=(3, 4))
        assert np.allclose(wedge3(u, v, w), -wedge3(v, u, w))
        assert np.allclose(wedge3(u, v, w), -wedge3(u, w, v))


class TestProjectLightlike:
    def test_axis(self):
        assert np.allclose(project_lightlike(vec4(1, 0, 0, 1)), vec4(0, 0, 0, 1))

    def test_scale_invariance(self):
        assert np.allclose(project_lightlike(vec4(2, 0, 2, 0)), vec4(0, 0, 1, 0))
        rng = np.random.default_rng(4)
        for _ in range(20):
            s = rng.normal(size=3)
            L = np.concatenate([[np.linalg.norm(s)], s])
            lam = rng.uniform(0.1, 10.0)
            assert np.allclose(project_lightlike(lam * L), project_lightlike(L))

    def test_componentwise(self):
        L = vec4(np.sqrt(2.0), 1.0, 0.0, -1.0)
        p = project_lightlike(L)
        assert np.allclose(p, vec4(0.0, 1 / np.sqrt(2), 0.0, -1 / np.sqrt(2)))
        assert np.linalg.norm(p) == pytest.approx(1.0, abs=1e-12)

    def test_errors(self):
        with pytest.raises(NotLightlike):
            project_lightlike(D0)
        with pytest.raises(ZeroTimeComponent):
            project_lightlike(vec4(0, 0, 0, 0), light_tol=1.0)


class TestBuildFrame:
    def test_plane_in_e(self):
        f = build_frame(D1, D2)
        assert np.allclose(f.tau, D0)
        assert np.allclose(f.nu, D3)
        assert np.allclose(f.n0, vec4(0, 0, 0, -1))
        assert np.allclose(f.n3, vec4(0, 0, 0, 1))
        assert f.theta == pytest.approx(np.pi)
        assert f.e1tilde is None and f.e2tilde is None and f.e is None

    def test_boosted_plane(self):
        a = vec4(1.0, np.sqrt(2.0), 0.0, 0.0)
        f = build_frame(a, D2)
        assert np.allclose(f.tau, vec4(np.sqrt(2), 1, 0, 0))
        assert np.allclose(f.nu, D3)
        s = 1 / np.sqrt(2)
        assert np.allclose(f.n0, vec4(0, s, 0, -s))
        assert np.allclose(f.n3, vec4(0, s, 0, s))
        assert f.theta == pytest.approx(np.pi / 2)
        assert np.allclose(f.e1tilde, a)
        assert np.allclose(f.e2tilde, D2)
        assert np.allclose(f.e, vec4(0, 1, 0, 0))

    def test_paper_half_angle_value(self):
        # any valid pair with a0 = b0 = 1 has tau0 = sqrt(3), cos theta = 1/3
        a = vec4(1.0, np.sqrt(2.0), 0.0, 0.0)
        b = vec4(1.0, 1 / np.sqrt(2.0), np.sqrt(3.0 / 2.0), 0.0)
        f = build_frame(a, b)
        assert f.tau0 == pytest.approx(np.sqrt(3.0), abs=1e-12)
        assert np.cos(f.theta) == pytest.approx(1.0 / 3.0, abs=1e-12)
        assert np.sin(f.theta / 2) == pytest.approx(1 / np.sqrt(3.0), abs=1e-12)

    def test_bad_input(self):
        with pytest.raises(BadInput):
            build_frame(2.0 * D1, D2)
        with pytest.raises(BadInput):
            build_frame(D1, D1)

    def test_random_frame_invariants(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            a, b = random_spacelike_pair(rng)
            f = build_frame(a, b)
            for lhs, rhs in [
                (inner(f.tau, f.tau), -1.0), (inner(f.nu, f.nu), 1.0),
                (inner(f.tau, f.nu), 0.0), (inner(f.tau, a), 0.0),
                (inner(f.tau, b), 0.0), (inner(f.nu, a), 0.0),
                (inner(f.nu, b), 0.0),
            ]:
                assert lhs == pytest.approx(rhs, abs=1e-10)
            assert f.nu[0] == pytest.approx(0.0, abs=1e-12)
            assert f.tau0 >= 1.0
            assert np.cos(f.theta) == pytest.approx(1 - 2 / f.tau0**2, abs=1e-10)
            # positive, future-directed frame
            assert np.linalg.det(np.stack([f.tau, a, b, f.nu])) > 0
            # paper's printed cofactor formula equals tau0 * nu
            d23 = a[2] * b[3] - a[3] * b[2]
            d13 = a[1] * b[3] - a[3] * b[1]
            d12 = a[1] * b[2] - a[2] * b[1]
            assert np.allclose(vec4(0, d23, -d13, d12), f.tau0 * f.nu, atol=1e-10)

    def test_lightlike_pair_metric_coefficient(self):
        rng = np.random.default_rng(6)
        for _ in range(50):
            a, b = random_spacelike_pair(rng)
            f = build_frame(a, b)
            l0, l3 = D0 + f.n0, D0 + f.n3
            assert inner(l0, l0) == pytest.approx(0.0, abs=1e-10)
            assert inner(l3, l3) == pytest.approx(0.0, abs=1e-10)
            assert inner(l0, l3) == pytest.approx(-1 + np.cos(f.theta), abs=1e-10)


class TestFrameIdentities:
    def test_boosted_example_exact(self):
        f = build_frame(vec4(1.0, np.sqrt(2.0), 0.0, 0.0), D2)
        rep = frame_identity_residuals(f)
        assert rep.not_applicable == ()
        assert rep.max_residual() <= 1e-12

    def test_theta_pi_boundary(self):
        rep = frame_identity_residuals(build_frame(D1, D2))
        assert set(rep.not_applicable) == {"tau_form1", "tau_form2",
                                           "e1tilde_relation"}
        assert rep.max_residual() <= 1e-12

    def test_random_sweep(self):
        rng = np.random.default_rng(8)
        worst = 0.0
        for _ in range(1000):
            a, b = random_spacelike_pair(rng)
            worst = max(worst,
                        frame_identity_residuals(build_frame(a, b)).max_residual())
        assert worst <= 1e-10


class TestPlaneProjector:
    def test_idempotent_and_reproduces_span(self):
        rng = np.random.default_rng(9)
        for _ in range(20):
            a, b = random_spacelike_pair(rng)
            P = plane_projector(a, b)
            assert np.allclose(P @ P, P, atol=1e-10)
            assert np.allclose(P @ a, a, atol=1e-10)
            assert np.allclose(P @ b, b, atol=1e-10)
            f = build_frame(a, b)
            assert np.allclose(P @ f.tau, 0.0, atol=1e-10)
            assert np.allclose(P @ f.nu, 0.0, atol=1e-10)

    def test_same_plane_other_basis(self):
        rng = np.random.default_rng(10)
        a, b = random_spacelike_pair(rng)
        c = np.cos(0.3) * a + np.sin(0.3) * b
        d = -np.sin(0.3) * a + np.cos(0.3) * b
        assert np.allclose(plane_projector(a, b), plane_projector(c, d), atol=1e-10)
