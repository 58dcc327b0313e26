import numpy as np
import pytest

from isocurv import (
    Frame,
    Holomorphy,
    ModelPoint,
    Plane,
    PlaneClass,
    PlaneKind,
    build_space_form,
    classify_holomorphy,
    classify_plane,
    gram_schmidt_indefinite,
    hermitian_model,
    inner,
    pi1,
    sample_planes,
    sectional_curvature,
)
from isocurv.errors import (
    DegeneratePlane,
    DegenerateSubspace,
    DependentInput,
    UnsupportedSignature,
)


def e(m, i):
    v = np.zeros(m)
    v[i] = 1.0
    return v


class TestGramSchmidt:
    def test_mixed_pair(self, m22):
        frame = gram_schmidt_indefinite(m22, [e(4, 0) + 2 * e(4, 2), e(4, 2)])
        assert frame.signs == (1, -1)
        g = np.array([[inner(m22, u, v) for v in frame.vectors] for u in frame.vectors])
        assert np.allclose(g, np.diag(frame.signs), atol=1e-12)

    def test_pivot_prefers_largest_norm(self, m22):
        # e1 + 2 e3 has self-product 3, so it is normalized first even
        # though e3 comes later in the input.
        frame = gram_schmidt_indefinite(m22, [e(4, 2), e(4, 0) + 2 * e(4, 2)])
        first = frame.vectors[0]
        assert np.allclose(first, (e(4, 0) + 2 * e(4, 2)) / np.sqrt(3.0))

    def test_degenerate_span(self, m22):
        with pytest.raises(DegenerateSubspace):
            gram_schmidt_indefinite(m22, [e(4, 0) + e(4, 2), e(4, 1) + e(4, 3)])

    def test_dependent_input(self, m22):
        with pytest.raises(DependentInput):
            gram_schmidt_indefinite(m22, [e(4, 0), 2 * e(4, 0)])

    def test_extend_recovers_signature(self, m23):
        frame = gram_schmidt_indefinite(m23, [e(5, 0)], extend=True)
        assert len(frame) == 5
        assert sum(1 for s in frame.signs if s < 0) == 2
        g = np.array([[inner(m23, u, v) for v in frame.vectors] for u in frame.vectors])
        assert np.allclose(g, np.diag(frame.signs), atol=1e-10)

    def test_extend_deterministic(self, m22):
        a = gram_schmidt_indefinite(m22, [e(4, 1)], extend=True, seed=3)
        b = gram_schmidt_indefinite(m22, [e(4, 1)], extend=True, seed=3)
        assert np.array_equal(a.vectors, b.vectors)
        assert a.signs == b.signs


class TestClassifyPlane:
    def test_nondegenerate(self, m22):
        assert classify_plane(m22, Plane(e(4, 0), e(4, 2))) == PlaneClass.NONDEGENERATE

    def test_weakly_isotropic(self, m22):
        p = Plane(e(4, 0) + e(4, 2), e(4, 1))
        assert classify_plane(m22, p) == PlaneClass.WEAKLY_ISOTROPIC

    def test_strongly_isotropic(self, m22):
        p = Plane(e(4, 0) + e(4, 2), e(4, 1) + e(4, 3))
        assert classify_plane(m22, p) == PlaneClass.STRONGLY_ISOTROPIC

    def test_basis_invariance(self, m22):
        rng = np.random.default_rng(11)
        p = Plane(e(4, 0) + e(4, 2), e(4, 1) + e(4, 3))
        for _ in range(50):
            a = rng.normal(size=(2, 2))
            while abs(np.linalg.det(a)) < 0.1:
                a = rng.normal(size=(2, 2))
            q = Plane(a[0, 0] * p.x + a[0, 1] * p.y, a[1, 0] * p.x + a[1, 1] * p.y)
            assert classify_plane(m22, q) == PlaneClass.STRONGLY_ISOTROPIC

    def test_dependent_pair(self, m22):
        with pytest.raises(DependentInput):
            classify_plane(m22, Plane(e(4, 0), 3 * e(4, 0)))


class TestClassifyHolomorphy:
    def test_holomorphic(self, h44):
        assert classify_holomorphy(h44, Plane(e(8, 0), e(8, 1))) == Holomorphy.HOLOMORPHIC

    def test_antiholomorphic(self, h44):
        assert classify_holomorphy(h44, Plane(e(8, 0), e(8, 2))) == Holomorphy.ANTIHOLOMORPHIC

    def test_generic(self, h44):
        p = Plane(e(8, 0), e(8, 1) + e(8, 2))
        assert classify_holomorphy(h44, p) == Holomorphy.GENERIC

    def test_isotropic_holomorphic(self, h44):
        xi = e(8, 0) + e(8, 4)
        p = Plane(xi, h44.cplx @ xi)
        assert classify_holomorphy(h44, p) == Holomorphy.HOLOMORPHIC
        assert classify_plane(h44, p) == PlaneClass.STRONGLY_ISOTROPIC


class TestSectionalCurvature:
    def test_constant_curvature(self, m22):
        R = 0.9 * pi1(m22)
        for p in (Plane(e(4, 0), e(4, 1)), Plane(e(4, 0), e(4, 2)),
                  Plane(e(4, 2), e(4, 3))):
            assert sectional_curvature(m22, R, p) == pytest.approx(0.9, rel=1e-12)

    def test_space_form_holomorphic_and_anti(self, h44):
        nu, mu = 0.3, 1.7
        R = build_space_form(h44, nu, mu)
        hol = Plane(e(8, 0), e(8, 1))
        anti = Plane(e(8, 0), e(8, 2))
        assert sectional_curvature(h44, R, hol) == pytest.approx(mu, rel=1e-12)
        assert sectional_curvature(h44, R, anti) == pytest.approx(nu, rel=1e-12)

    def test_degenerate_plane_raises(self, m22):
        R = pi1(m22)
        with pytest.raises(DegeneratePlane):
            sectional_curvature(m22, R, Plane(e(4, 0) + e(4, 2), e(4, 1)))

    def test_scaling_invariance(self, m23):
        R = -0.4 * pi1(m23)
        p = Plane(2.0 * e(5, 0), e(5, 0) + 3.0 * e(5, 1))
        assert sectional_curvature(m23, R, p) == pytest.approx(-0.4, rel=1e-12)


EXPECTED_MEMBERSHIP = {
    PlaneKind.WEAKLY_ISOTROPIC: (PlaneClass.WEAKLY_ISOTROPIC, None),
    PlaneKind.STRONGLY_ISOTROPIC: (PlaneClass.STRONGLY_ISOTROPIC, None),
    PlaneKind.WEAKLY_ISOTROPIC_ANTIHOLOMORPHIC:
        (PlaneClass.WEAKLY_ISOTROPIC, Holomorphy.ANTIHOLOMORPHIC),
    PlaneKind.STRONGLY_ISOTROPIC_ANTIHOLOMORPHIC:
        (PlaneClass.STRONGLY_ISOTROPIC, Holomorphy.ANTIHOLOMORPHIC),
    PlaneKind.ISOTROPIC_HOLOMORPHIC:
        (PlaneClass.STRONGLY_ISOTROPIC, Holomorphy.HOLOMORPHIC),
    PlaneKind.NONDEGENERATE_ANTIHOLOMORPHIC:
        (PlaneClass.NONDEGENERATE, Holomorphy.ANTIHOLOMORPHIC),
}


class TestSamplers:
    @pytest.mark.parametrize("kind", list(EXPECTED_MEMBERSHIP))
    def test_membership(self, h44, kind):
        cls, hol = EXPECTED_MEMBERSHIP[kind]
        for p in sample_planes(h44, kind, 200, seed=5):
            assert classify_plane(h44, p) == cls
            if hol is not None:
                assert classify_holomorphy(h44, p) == hol

    def test_quadruples_are_frames(self, h44):
        for fr in sample_planes(h44, PlaneKind.QUADRUPLE_PPMM, 50, seed=1):
            assert isinstance(fr, Frame)
            assert fr.signs == (1, 1, -1, -1)
            g = np.array([[inner(h44, u, v) for v in fr.vectors] for u in fr.vectors])
            assert np.allclose(g, np.diag(fr.signs), atol=1e-10)

    def test_antiholomorphic_quadruples(self, h44):
        J = h44.cplx
        for fr in sample_planes(h44, PlaneKind.ANTIHOLOMORPHIC_QUADRUPLE_PPMM, 50, seed=1):
            assert fr.signs == (1, 1, -1, -1)
            for u in fr.vectors:
                for v in fr.vectors:
                    assert abs(inner(h44, u, J @ v)) <= 1e-10

    def test_weakly_isotropic_on_real_model(self, m22):
        for p in sample_planes(m22, PlaneKind.WEAKLY_ISOTROPIC, 200, seed=9):
            assert classify_plane(m22, p) == PlaneClass.WEAKLY_ISOTROPIC

    def test_deterministic(self, m22):
        a = sample_planes(m22, PlaneKind.STRONGLY_ISOTROPIC, 20, seed=4)
        b = sample_planes(m22, PlaneKind.STRONGLY_ISOTROPIC, 20, seed=4)
        for p, q in zip(a, b):
            assert np.array_equal(p.x, q.x)
            assert np.array_equal(p.y, q.y)

    def test_prefix_stability(self, m22):
        long = sample_planes(m22, PlaneKind.WEAKLY_ISOTROPIC, 30, seed=4)
        short = sample_planes(m22, PlaneKind.WEAKLY_ISOTROPIC, 10, seed=4)
        for p, q in zip(short, long):
            assert np.array_equal(p.x, q.x)

    def test_unsupported_signature(self):
        lorentz = ModelPoint(4, 1)
        with pytest.raises(UnsupportedSignature):
            sample_planes(lorentz, PlaneKind.STRONGLY_ISOTROPIC, 1, seed=0)

    def test_antiholomorphic_needs_room(self, h24):
        # signature (2, 4): strongly isotropic antiholomorphic planes need
        # at least four directions of each sign.
        with pytest.raises(UnsupportedSignature):
            sample_planes(h24, PlaneKind.STRONGLY_ISOTROPIC_ANTIHOLOMORPHIC, 1, seed=0)

    def test_complex_structure_required(self, m22):
        with pytest.raises(Exception):
            sample_planes(m22, PlaneKind.ISOTROPIC_HOLOMORPHIC, 1, seed=0)
