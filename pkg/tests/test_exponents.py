import math

import numpy as np
import pytest

from renyinfo.dist import JointPmf, Pmf, marginal_y
from renyinfo.exponents import (
    ExponentConfig,
    Rate,
    golden_section_max,
    one_shot_pa_lower_bound,
    pa_dual_exponent,
    pa_exponent,
    sc_dual_exponent,
    sc_exponent,
    sc_one_shot_bound,
)
from renyinfo.measures import (
    cond_entropy_variant,
    mutual_info_variant,
    renyi_divergence,
    shannon_cond_entropy,
    shannon_mi,
)
from renyinfo.sampling import random_joint
from renyinfo.simplex_opt import SolverConfig

SOLVER = SolverConfig(max_iters=2500, refine_starts=3)


def ideal_divergence(joint: JointPmf, beta: float) -> float:
    """D_beta of a joint from the uniform-X x P_Y ideal, evaluated directly."""
    nx = len(joint.alphabet_x)
    py = marginal_y(joint).probs
    labels = tuple(f"{x}/{y}" for x in joint.alphabet_x for y in joint.alphabet_y)
    p = Pmf(labels, joint.probs.reshape(-1))
    q = Pmf(labels, np.tile(py / nx, (nx, 1)).reshape(-1))
    return renyi_divergence(p, q, beta).value


class TestGoldenSection:
    def test_finds_parabola_peak(self):
        x, v = golden_section_max(lambda t: -(t - 0.3) ** 2, 0.0, 1.0, 1e-10)
        assert x == pytest.approx(0.3, abs=1e-8)
        assert v == pytest.approx(0.0, abs=1e-12)


class TestRate:
    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            Rate(-0.1)


class TestPaExponent:
    def test_zero_rate_gives_zero(self, rng):
        j = random_joint(rng, 3, 3)
        for beta in (0.3, 0.5, 0.9):
            res = pa_exponent(j, beta, 0.0)
            assert res.value == 0.0
            assert res.arg_alpha == 1.0

    def test_beta_two_at_critical_rate(self, rng):
        j = random_joint(rng, 3, 2)
        h2 = cond_entropy_variant("h", j, 2).value
        res = pa_exponent(j, 2.0, h2)
        assert res.value == 0.0
        assert res.branch == "beta_ge_1"

    def test_beta_ge_one_closed_form_is_exact(self, rng):
        for _ in range(10):
            j = random_joint(rng, 3, 3)
            r = float(rng.uniform(0.0, 2.0))
            for beta in (1.0, 2.0, 3.5):
                hb = cond_entropy_variant("h", j, beta).value
                want = max(r - hb, 0.0)
                assert pa_exponent(j, beta, r).value == want

    def test_monotone_in_rate(self, rng):
        j = random_joint(rng, 2, 3)
        for beta in (0.4, 2.0):
            vals = [pa_exponent(j, beta, r).value for r in np.linspace(0.0, 1.5, 8)]
            assert all(b >= a - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_primal_matches_dual(self, rng):
        j = random_joint(rng, 2, 2)
        h = shannon_cond_entropy(j)
        res = pa_exponent(j, 0.5, h + 0.5)
        g1, g2 = pa_dual_exponent(j, 0.5, h + 0.5, SOLVER)
        assert abs(res.value - min(g1.minimum, g2.minimum)) <= 1e-3

    def test_with_dual_fills_result(self, rng):
        j = random_joint(rng, 2, 2)
        cfg = ExponentConfig(with_dual=True, solver=SOLVER)
        res = pa_exponent(j, 0.3, 0.8, cfg)
        assert res.dual_value is not None
        assert abs(res.value - res.dual_value) <= 1e-3
        assert res.dual_argmin is not None


class TestPaDual:
    def test_large_rate_g1_infeasible_g2_bounded_by_reference(self, rng):
        j = random_joint(rng, 2, 2)
        r = math.log2(2) + 0.5  # R >= log|X|: every Q satisfies H <= R
        g1, g2 = pa_dual_exponent(j, 0.3, r, SOLVER)
        assert math.isinf(g1.minimum) and g1.argmin is None
        # at Q = P both divergences vanish, so the objective there is
        # exactly R - H(X|Y); the minimum cannot exceed it
        at_reference = r - shannon_cond_entropy(j)
        assert g2.minimum <= at_reference + 1e-9
        assert g2.minimum == pytest.approx(pa_exponent(j, 0.3, r).value, abs=1e-3)

    def test_zero_rate_min_is_zero(self, rng):
        j = random_joint(rng, 3, 2)
        assert shannon_cond_entropy(j) > 0.0
        g1, g2 = pa_dual_exponent(j, 0.3, 0.0, SOLVER)
        assert min(g1.minimum, g2.minimum) == pytest.approx(0.0, abs=1e-8)

    def test_random_agreement(self, rng):
        j = random_joint(rng, 2, 2)
        res = pa_exponent(j, 0.3, 0.8)
        g1, g2 = pa_dual_exponent(j, 0.3, 0.8, SOLVER)
        assert abs(res.value - min(g1.minimum, g2.minimum)) <= 1e-3

    def test_rejects_beta_outside_unit_interval(self, rng):
        j = random_joint(rng, 2, 2)
        with pytest.raises(ValueError):
            pa_dual_exponent(j, 1.5, 0.2)


class TestScExponent:
    def test_rate_above_mi_gives_zero(self, rng):
        j = random_joint(rng, 3, 3)
        i1 = shannon_mi(j)
        for beta in (0.3, 0.7):
            assert sc_exponent(j, beta, i1 + 1e-6).value == 0.0
            # monotonicity: the two-parameter measure never exceeds I below
            # order one, checked numerically through the exponent being 0
            assert sc_exponent(j, beta, i1 + 0.3).value == 0.0

    def test_independent_joint_all_zero(self):
        j = JointPmf(("a", "b"), ("u", "v"), np.outer([0.4, 0.6], [0.3, 0.7]))
        for beta in (0.4, 1.0, 2.0):
            for r in (0.0, 0.3, 1.0):
                assert sc_exponent(j, beta, r).value == pytest.approx(0.0, abs=1e-10)

    def test_beta_ge_one_closed_form_is_exact(self, rng):
        for _ in range(10):
            j = random_joint(rng, 3, 3)
            r = float(rng.uniform(0.0, 1.0))
            for beta in (1.0, 2.0, 3.0):
                ib = mutual_info_variant("i", j, beta).value
                assert sc_exponent(j, beta, r).value == max(ib - r, 0.0)

    def test_non_increasing_in_rate(self, rng):
        j = random_joint(rng, 2, 3)
        for beta in (0.5, 2.0):
            vals = [sc_exponent(j, beta, r).value for r in np.linspace(0.0, 1.0, 8)]
            assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))

    def test_identity_channel_primal_dual(self, diag_binary):
        res = sc_exponent(diag_binary, 0.5, 0.5)
        rep = sc_dual_exponent(diag_binary, 0.5, 0.5, SOLVER)
        assert abs(res.value - rep.minimum) <= 1e-3

    def test_random_primal_dual(self, rng):
        j = random_joint(rng, 3, 2)
        res = sc_exponent(j, 0.7, 0.2)
        rep = sc_dual_exponent(j, 0.7, 0.2, SOLVER)
        assert abs(res.value - rep.minimum) <= 1e-3

    def test_dual_reference_point_bounds(self, rng):
        # the feasible point Q = P gives |I(X:Y) - R|+ as an upper bound
        j = random_joint(rng, 3, 3)
        r = 0.05
        rep = sc_dual_exponent(j, 0.5, r, SOLVER)
        at_p = max(shannon_mi(j) - r, 0.0)
        assert rep.minimum <= at_p + 1e-9


class TestBetaOneConsistency:
    def test_pa_branches_meet_at_one(self, rng):
        j = random_joint(rng, 3, 3)
        r = shannon_cond_entropy(j) + 0.4
        lo = pa_exponent(j, 1.0 - 1e-3, r).value
        hi = pa_exponent(j, 1.0 + 1e-3, r).value
        assert abs(lo - hi) <= 1e-3

    def test_sc_branches_meet_at_one(self, rng):
        j = random_joint(rng, 3, 3)
        r = max(shannon_mi(j) - 0.2, 0.0)
        lo = sc_exponent(j, 1.0 - 1e-3, r).value
        hi = sc_exponent(j, 1.0 + 1e-3, r).value
        assert abs(lo - hi) <= 1e-3


class TestOneShotPaBound:
    def test_uniform_independent_is_tight_zero(self):
        j = JointPmf(("a", "b"), ("u", "v"), np.outer([0.5, 0.5], [0.3, 0.7]))
        bound = one_shot_pa_lower_bound(j, 0.5, 0.7)
        assert bound == pytest.approx(0.0, abs=1e-12)
        assert ideal_divergence(j, 0.5) == pytest.approx(0.0, abs=1e-12)

    def test_identity_uniform_binary_equality(self, diag_binary):
        bound = one_shot_pa_lower_bound(diag_binary, 0.5, 0.5)
        direct = ideal_divergence(diag_binary, 0.5)
        assert bound == pytest.approx(1.0, abs=1e-12)
        assert direct == pytest.approx(1.0, abs=1e-12)

    def test_bound_below_direct_divergence(self, rng):
        for _ in range(20):
            j = random_joint(rng, 3, 2)
            beta = float(rng.uniform(0.1, 0.9))
            alpha = float(rng.uniform(beta, 1.0 - 1e-9))
            bound = one_shot_pa_lower_bound(j, beta, alpha)
            assert bound <= ideal_divergence(j, beta) + 1e-12

    def test_order_validation(self, rng):
        j = random_joint(rng, 2, 2)
        with pytest.raises(ValueError):
            one_shot_pa_lower_bound(j, 0.5, 0.4)
        with pytest.raises(ValueError):
            one_shot_pa_lower_bound(j, 1.2, 1.5)


class TestScOneShotBound:
    def test_matches_exponent_at_matching_rate(self, rng):
        j = random_joint(rng, 2, 2)
        for beta in (0.4, 2.0):
            b1 = sc_one_shot_bound(j, beta, log_m=0.6, n=1)
            assert b1 == pytest.approx(sc_exponent(j, beta, 0.6).value, abs=1e-12)

    def test_additivity_scaling(self, rng):
        j = random_joint(rng, 2, 2)
        b2 = sc_one_shot_bound(j, 2.0, log_m=0.5, n=3)
        i2 = mutual_info_variant("i", j, 2).value
        assert b2 == pytest.approx(max(3 * i2 - 0.5, 0.0), abs=1e-12)
