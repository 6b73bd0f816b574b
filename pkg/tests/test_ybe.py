"""Face weights, fusion, Yang-Baxter residuals and the operator algebra."""

import math
import random

import numpy as np
import pytest

from rsoslab.model import ModelSpec
from rsoslab.paths import count_paths
from rsoslab.ybe import (allowed_a0, build_operator_rep, check_algebra,
                         euler_e, fuse_2x2, fusion_gauge_equivalence, theta1,
                         weights_1x1, weights_2x2_closed, ybe_residual)


def spectral_samples(spec, n, seed=0, lo=0.05, hi=0.45):
    rng = random.Random(seed)
    lam = spec.lambda_value()
    return [rng.uniform(lo, hi) * lam for _ in range(n)]


class TestTheta:
    def test_domain(self):
        with pytest.raises(ValueError):
            theta1(0.3, 1.0)
        with pytest.raises(ValueError):
            theta1(0.3, -0.1)

    def test_positive_on_strip(self):
        for t in (0.05, 0.2, 0.49):
            assert theta1(math.pi / 2, t) > 0

    def test_conjugate_modulus_identity(self):
        eps = 1.0
        t = math.exp(-eps)
        lam = ModelSpec(2, 5).lambda_value()
        for u in (0.1 * lam, 0.4 * lam, 0.8 * lam):
            lhs = theta1(u, t)
            rhs = (math.sqrt(math.pi / eps)
                   * math.exp(-((u - math.pi / 2) ** 2) / eps)
                   * euler_e(complex(math.exp(-2 * math.pi * u / eps)),
                             math.exp(-2 * math.pi ** 2 / eps)).real)
            assert abs(lhs - rhs) < 1e-10 * abs(rhs)


class TestElementaryWeights:
    def test_u_zero_is_identity_face(self):
        spec = ModelSpec(2, 5, 1)
        w = weights_1x1(spec, 0.0)
        for a in (2, 3):
            assert w.weight(a, a - 1, a, a + 1, 0.0) == pytest.approx(1.0)
            assert w.weight(a - 1, a, a - 1, a, 0.0) == pytest.approx(1.0)
            assert abs(w.weight(a - 1, a, a + 1, a, 0.0)) < 1e-15

    def test_2_5_specializations(self):
        # the tadpole forms: W(o,*,o,o) = s(l-u), W(*,o,o,o) = -s(u),
        # W(o,o,*,o) = -s(u)/s(2l), W(*,o,*,o) = s(2l-u)/s(2l),
        # W(o,*,o,*) = s(l+u), W(o,o,o,o) = s(2l+u)/s(2l)
        spec = ModelSpec(2, 5, 1)
        lam = spec.lambda_value()
        s = lambda x: math.sin(x) / math.sin(lam)
        w = weights_1x1(spec, 0.0)
        u = 0.23 * lam
        assert w.weight(2, 1, 2, 3, u) == pytest.approx(s(lam - u))
        assert w.weight(1, 2, 3, 2, u) == pytest.approx(-s(u))
        assert w.weight(2, 3, 4, 3, u) == pytest.approx(-s(u) / s(2 * lam))
        assert w.weight(1, 2, 1, 2, u) == pytest.approx(s(2 * lam - u) / s(2 * lam))
        assert w.weight(2, 1, 2, 1, u) == pytest.approx(s(lam + u))
        assert w.weight(2, 3, 2, 3, u) == pytest.approx(s(2 * lam + u) / s(2 * lam))

    def test_inadmissible_raises(self):
        w = weights_1x1(ModelSpec(2, 5, 1), 0.0)
        with pytest.raises(ValueError):
            w.weight(1, 3, 1, 3, 0.1)


class TestFusedWeights:
    def test_u_zero_values(self):
        w = weights_2x2_closed(ModelSpec(3, 7), 0.0)
        assert w.weight(3, 1, 3, 5, 0.0) == pytest.approx(1.0)   # opposite wings
        assert w.weight(5, 3, 5, 3, 0.0) == pytest.approx(1.0)   # straight crossing
        assert abs(w.weight(5, 3, 3, 3, 0.0)) < 1e-15            # s(u) factor
        assert w.weight(3, 3, 3, 3, 0.0) == pytest.approx(1.0)

    def test_fusion_reproduces_closed_forms(self):
        for pair in [(2, 5), (3, 7), (4, 11)]:
            for t in (0.0, 0.1):
                spec1 = ModelSpec(*pair, 1)
                fused = fuse_2x2(weights_1x1(spec1, t))
                closed = weights_2x2_closed(ModelSpec(*pair), t)
                for u in spectral_samples(spec1, 3, seed=hash(pair) % 1000):
                    for q in closed.corners():
                        assert abs(fused.weight(*q, u) - closed.weight(*q, u)) < 1e-10

    def test_crossed_height_dependence_detected(self):
        # corrupting one elementary weight breaks the push-through property
        spec = ModelSpec(3, 7, 1)
        w = weights_1x1(spec, 0.0)
        original = w.evaluator

        def broken(a, b, c, d, u):
            v = original(a, b, c, d, u)
            if (a, b, c, d) == (3, 4, 5, 4):
                v *= 1.01
            return v

        w.evaluator = broken
        fused = fuse_2x2(w)
        with pytest.raises(ValueError, match="crossed"):
            for q in fused.corners():
                fused.weight(*q, 0.3)

    def test_sign_choice_agreement_guard(self):
        # both sign choices of the all-equal weight agree on real models
        w = weights_2x2_closed(ModelSpec(4, 9), 0.1)
        for u in spectral_samples(ModelSpec(4, 9), 4, seed=3):
            for a in (3, 4, 5, 6):
                w.weight(a, a, a, a, u)


class TestYangBaxter:
    def test_residuals_1x1(self):
        for pair in [(2, 5), (3, 7), (4, 11)]:
            for t in (0.0, 0.1):
                spec = ModelSpec(*pair, 1)
                w = weights_1x1(spec, t)
                us = spectral_samples(spec, 3, seed=11)
                vs = spectral_samples(spec, 3, seed=13)
                for u, v in zip(us, vs):
                    assert ybe_residual(w, u, v) < 1e-10

    def test_residuals_2x2(self):
        for pair in [(2, 5), (3, 7)]:
            for t in (0.0, 0.1):
                spec = ModelSpec(*pair, 2)
                w = weights_2x2_closed(spec, t)
                us = spectral_samples(spec, 2, seed=17, hi=0.3)
                vs = spectral_samples(spec, 2, seed=19, hi=0.3)
                for u, v in zip(us, vs):
                    assert ybe_residual(w, u, v) < 1e-10

    def test_perturbation_scales_linearly(self):
        spec = ModelSpec(2, 5, 1)
        base = weights_1x1(spec, 0.0)
        u, v = 0.21, 0.34

        def perturbed(eps):
            w = weights_1x1(spec, 0.0)
            original = w.evaluator
            w.evaluator = lambda a, b, c, d, uu: original(a, b, c, d, uu) * (
                1 + (eps if (a, b, c, d) == (2, 1, 2, 3) else 0.0))
            return ybe_residual(w, u, v)

        r1, r2 = perturbed(1e-6), perturbed(2e-6)
        assert r1 > 1e-9
        assert r2 / r1 == pytest.approx(2.0, rel=0.05)


class TestGaugeEquivalence:
    def test_2_5_fused_equals_unfused(self):
        rpt = fusion_gauge_equivalence(ModelSpec(2, 5))
        assert rpt.equivalent
        assert rpt.max_residual < 1e-8

    def test_3_7_fused_differs(self):
        rpt = fusion_gauge_equivalence(ModelSpec(3, 7))
        assert not rpt.equivalent


class TestOperatorAlgebra:
    def test_dimensions_match_path_counts(self):
        # the L-site basis is the fused path set sigma_0..sigma_L with
        # sigma_0 = a_0, i.e. paths of size N = L - 1 summed over endpoints
        spec = ModelSpec(2, 5)
        for a0 in allowed_a0(spec):
            rep = build_operator_rep(spec, 3, a0)
            total = sum(count_paths(spec, a0, b, c, 2)
                        for b in spec.heights for c in spec.heights)
            assert rep.dim == total

    def test_loop_scalars(self):
        rep = build_operator_rep(ModelSpec(2, 5), 4, 3)
        b2 = rep.beta2
        for j in (1, 2, 3):
            E = rep.E[j]
            # E^2 = beta2 E with beta2 the closed-form loop value
            assert np.max(np.abs(E @ E - b2 * E)) < 1e-12
            Xi = rep.Xi[j]
            assert np.max(np.abs(rep.beta ** 2 * (Xi @ Xi) - rep.beta3 * Xi)) < 1e-12

    def test_full_relation_suite(self):
        for pair in [(2, 5), (3, 7), (4, 9)]:
            spec = ModelSpec(*pair)
            for a0 in allowed_a0(spec):
                rpt = check_algebra(build_operator_rep(spec, 4, a0), tol=1e-10)
                assert rpt.passed, (pair, a0, rpt.failures())

    def test_fault_injection(self):
        rep = build_operator_rep(ModelSpec(2, 5), 4, 3)
        rep.E[1] = rep.E[1] * 1.5
        rpt = check_algebra(rep, tol=1e-10)
        assert "E^2 = beta2 E" in rpt.failures()

    def test_face_operator_at_zero_is_identity(self):
        rep = build_operator_rep(ModelSpec(3, 7), 4, 3)
        for j in (1, 2, 3):
            assert np.max(np.abs(rep.face_operator(j, 0.0) - rep.identity())) < 1e-12
