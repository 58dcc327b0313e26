import numpy as np
import pytest

from isocurv import (
    bochner,
    build_conformally_flat,
    build_constant_curvature,
    build_space_form,
    conformal,
    hermitian_model,
    hybrid_residual,
    phi,
    pi1,
    pi2,
    psi,
    ricci,
    ricci_star,
    scalar_curv,
    scalar_star,
    validate_curvature_like,
)
from isocurv.canonical import antiholomorphic_form_residual, theorem6_identities
from isocurv.diagnostics import random_curvature_like
from isocurv.errors import (
    DimensionMismatch,
    HybridConditionViolated,
    IsocurvError,
    UnsupportedSignature,
)
from isocurv.tensors import max_norm, trace_g

from conftest import random_symmetric


class TestPhiPsi:
    def test_phi_of_metric(self, m22):
        assert np.allclose(phi(m22, m22.metric), 2.0 * pi1(m22), atol=1e-12)

    def test_psi_of_metric(self, h44):
        assert np.allclose(psi(h44, h44.metric), 2.0 * pi2(h44), atol=1e-12)

    def test_phi_ricci_identity(self, m23):
        # rho(phi(S)) = (m - 2) S + tr_g(S) g
        S = random_symmetric(np.random.default_rng(3), 5)
        got = ricci(m23, phi(m23, S))
        want = 3.0 * S + trace_g(m23, S) * m23.metric
        assert np.allclose(got, want, atol=1e-12)

    def test_phi_output_is_curvature_like(self, m23):
        S = random_symmetric(np.random.default_rng(8), 5)
        assert validate_curvature_like(m23, phi(m23, S)).verdict

    def test_psi_output_is_curvature_like(self, h44):
        assert validate_curvature_like(h44, psi(h44, h44.metric)).verdict

    def test_phi_rejects_asymmetric(self, m22):
        S = np.zeros((4, 4))
        S[0, 1] = 1.0
        with pytest.raises(IsocurvError):
            phi(m22, S)

    def test_psi_hybrid_violation(self, h44):
        S = np.zeros((8, 8))
        S[0, 0] = 1.0
        assert hybrid_residual(h44, S) > 0.5
        with pytest.raises(HybridConditionViolated):
            psi(h44, S)
        # the escape hatch still computes
        psi(h44, S, enforce_hybrid=False)

    def test_metric_is_hybrid(self, h44):
        assert hybrid_residual(h44, h44.metric) <= 1e-15


class TestConformal:
    def test_constant_curvature_is_conformally_flat(self, m22):
        R = build_constant_curvature(m22, 1.4)
        assert max_norm(conformal(m22, R)) <= 1e-12

    def test_builder_round_trip(self, m23):
        S = random_symmetric(np.random.default_rng(1), 5)
        R = build_conformally_flat(m23, S)
        assert validate_curvature_like(m23, R).verdict
        assert np.allclose(ricci(m23, R), S, atol=1e-12)
        assert max_norm(conformal(m23, R)) <= 1e-12

    def test_conformal_is_trace_free(self, m23):
        R = random_curvature_like(m23, 6)
        C = conformal(m23, R)
        assert max_norm(ricci(m23, C)) <= 1e-12 * max(1.0, max_norm(R))
        assert validate_curvature_like(m23, C).verdict

    def test_dimension_guard(self):
        from isocurv import ModelPoint

        with pytest.raises(DimensionMismatch):
            conformal(ModelPoint(3, 1), np.zeros((3,) * 4))

    def test_builder_rejects_asymmetric(self, m22):
        S = np.zeros((4, 4))
        S[0, 2] = 1.0
        with pytest.raises(IsocurvError):
            build_conformally_flat(m22, S)


class TestBochner:
    def test_space_forms_are_bochner_flat(self, h44):
        for nu, mu in ((0.5, 2.0), (0.5, 1.0), (-1.0, 3.0)):
            R = build_space_form(h44, nu, mu)
            assert max_norm(bochner(h44, R)) <= 1e-12 * max(1.0, max_norm(R))

    def test_random_tensor_not_bochner_flat(self, h44):
        R = random_curvature_like(h44, 4)
        assert max_norm(bochner(h44, R)) > 1e-3

    def test_details_record_hybrid_residuals(self, h44):
        R = build_space_form(h44, 0.5, 2.0)
        d = bochner(h44, R, details=True)
        assert d.hybrid_ok()
        assert np.allclose(d.tensor, bochner(h44, R), atol=0.0)

    def test_dimension_guard(self, m22):
        mh = hermitian_model(4, 2)
        with pytest.raises(DimensionMismatch):
            bochner(mh, pi1(mh))

    def test_output_is_curvature_like(self, h24):
        R = random_curvature_like(h24, 2)
        assert validate_curvature_like(h24, bochner(h24, R)).verdict


class TestBuilders:
    def test_space_form_contractions(self, h44):
        nu, mu, n = 0.7, 1.9, 4
        R = build_space_form(h44, nu, mu)
        m = 2 * n
        assert validate_curvature_like(h44, R).verdict
        assert scalar_curv(h44, R) == pytest.approx(nu * m * (m - 1) + (mu - nu) * m, rel=1e-12)
        rs = ricci_star(h44, R)
        want = (nu + (mu - nu) * (2 * n + 1) / 3.0) * h44.metric
        assert np.allclose(rs, want, atol=1e-12)

    def test_kaehler_convention(self, h24):
        mu = 2.0
        R = build_space_form(h24, mu / 4.0, mu)
        assert np.allclose(R, (mu / 4.0) * (pi1(h24) + pi2(h24)), atol=1e-12)


class TestAntiholomorphicForm:
    def test_space_forms_satisfy_identity(self, h44, h24):
        for model in (h44, h24):
            for nu, mu in ((0.3, 1.7), (-0.5, 2.0), (1.0, 1.0)):
                R = build_space_form(model, nu, mu)
                assert antiholomorphic_form_residual(model, R, nu) <= 1e-12

    def test_wrong_nu_detected(self, h44):
        R = build_space_form(h44, 0.3, 1.7)
        assert antiholomorphic_form_residual(h44, R, 0.4) > 1e-2

    def test_notes_on_hybrid_violation(self, h44):
        # pair-skew tensors without the Bianchi identity can have a
        # Ricci-star contraction that breaks the hybrid condition
        T = np.random.default_rng(0).uniform(-1.0, 1.0, (8,) * 4)
        T = T - T.transpose(1, 0, 2, 3)
        T = T - T.transpose(0, 1, 3, 2)
        notes = []
        antiholomorphic_form_residual(h44, T, 0.0, notes=notes)
        assert notes and "hybrid" in notes[0]


class TestTheorem6Identities:
    def test_bochner_flat_passes(self, h44):
        R = build_space_form(h44, 0.5, 2.0)
        rep = theorem6_identities(h44, R, samples=100, seed=1)
        assert rep.verdict
        assert rep.basis_sum_residual <= 1e-10
        assert rep.holomorphic_k_residual <= 1e-10
        assert rep.mixed_pair_residual <= 1e-10
        assert rep.samples_used == 100
        assert rep.optional_k_mixed_residual is None

    def test_random_tensor_fails(self, h44):
        rep = theorem6_identities(h44, random_curvature_like(h44, 7), samples=50)
        assert not rep.verdict

    def test_optional_identity_reported_when_asked(self, h44):
        R = build_space_form(h44, 0.5, 2.0)
        rep = theorem6_identities(h44, R, samples=50, include_k_mixed=True)
        assert rep.optional_k_mixed_residual is not None

    def test_deterministic(self, h44):
        R = random_curvature_like(h44, 3)
        a = theorem6_identities(h44, R, samples=40, seed=9)
        b = theorem6_identities(h44, R, samples=40, seed=9)
        assert a == b

    def test_signature_guard(self):
        # definite metric: no (+,-) orthonormal pairs exist
        mh = hermitian_model(6, 0)
        with pytest.raises(UnsupportedSignature):
            theorem6_identities(mh, pi1(mh), samples=10)
