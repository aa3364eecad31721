import math

import numpy as np
import pytest

from hml.matrix import ConfigurationError, Constraint, WeightVector
from hml.oracle import spectral_radius_oracle
from hml.report import bundle, dumps
from hml.suites import (SUITES, Sweep, TrialConfig, check_cor33, check_cor35, check_cor43,
                        check_cor48, check_cor49_jordan, check_thm21, check_thm23_refined,
                        check_thm24_sum_ge1, check_thm31, check_thm32, check_thm36,
                        check_thm41, check_thm42, check_thm44, check_thm45_47, run_counterexample,
                        run_sweep, run_trial, search_numrad_violation, trial_configs)

SUM1, SUMGE1 = Constraint.SUM_ONE, Constraint.SUM_AT_LEAST_ONE


def draw(seed, n, count, density=1.0):
    rng = np.random.default_rng(seed)
    return [rng.random((n, n)) * (rng.random((n, n)) < density) for _ in range(count)]


def values(rep):
    return dict(rep.quantities)


def assert_all(rep, value):
    for label, v in rep.quantities:
        assert v == pytest.approx(value, abs=1e-12), label


I3 = np.eye(3)

IDENTITY_CASES = [
    lambda: check_thm21([[I3, I3], [I3, I3]], WeightVector((0.4, 0.6))),
    lambda: check_thm23_refined([[I3, I3, I3]], WeightVector((0.2, 0.3, 0.5))),
    lambda: check_thm24_sum_ge1([[I3, I3]], WeightVector((1.0, 0.7), SUMGE1)),
    lambda: check_thm31([I3] * 3, WeightVector.equal(3)),
    lambda: check_thm32([I3] * 3, WeightVector((0.5, 0.3, 0.2))),
    lambda: check_cor33([I3] * 4),
    lambda: check_thm36([I3] * 2, WeightVector((1.0, 1.0), SUMGE1)),
    lambda: check_thm41([I3] * 3, WeightVector.equal(3)),
    lambda: check_thm42([I3] * 2, WeightVector((1.0, 1.0), SUMGE1)),
    lambda: check_cor43(I3, I3, 0.6, 0.7),
    lambda: check_thm44(I3, I3, 0.8),
    lambda: check_thm45_47([I3] * 4),
    lambda: check_thm45_47([I3] * 3, 0.5),
    lambda: check_cor48(I3, I3, I3),
    lambda: check_cor49_jordan(I3, I3, 0.5),
]


@pytest.mark.parametrize("make", IDENTITY_CASES)
def test_identity_instances(make):
    rep = make()
    assert rep.passed
    assert_all(rep, 1.0)


ZERO = np.zeros((3, 3))

ZERO_CASES = [
    lambda: check_thm21([[ZERO, ZERO]], WeightVector((0.5, 0.5))),
    lambda: check_thm32([ZERO] * 3, WeightVector.equal(3)),
    lambda: check_cor35(ZERO, ZERO, 0.3),
    lambda: check_thm41([ZERO] * 2, WeightVector.equal(2)),
    lambda: check_cor43(ZERO, ZERO, 0.5, 0.5),
    lambda: check_thm44(ZERO, ZERO),
    lambda: check_thm45_47([ZERO] * 4),
    lambda: check_cor48(ZERO, ZERO, ZERO),
    lambda: check_cor49_jordan(ZERO, ZERO),
]


@pytest.mark.parametrize("make", ZERO_CASES)
def test_zero_instances(make):
    rep = make()
    assert rep.passed
    assert_all(rep, 0.0)


class TestGridSuites:
    def test_seeded_thm21(self):
        m = draw(42, 4, 4)
        rep = check_thm21([m[:2], m[2:]], WeightVector((0.5, 0.5)))
        assert rep.passed
        assert all(v.slack >= -1e-12 for v in rep.verdicts)

    def test_single_row_has_equal_ends(self):
        # With one row the grid collapses to a single mean, so both ends coincide.
        mats = draw(1, 4, 3)
        q = values(check_thm21([mats], WeightVector((0.2, 0.3, 0.5))))
        for tag in ("rho", "w", "|.|_l2"):
            assert q[f"{tag}(A)"] <= q[f"prod_j {tag}(C_j)^a_j"] * (1 + 1e-12)

    def test_seeded_thm23(self):
        m = draw(7, 5, 6, 0.7)
        assert check_thm23_refined([m[:3], m[3:]], WeightVector((0.2, 0.5, 0.3))).passed

    def test_thm23_matches_cor35(self):
        a, b = draw(8, 4, 2)
        grid = check_thm23_refined([[a, b], [b, a]], WeightVector((0.5, 0.5)))
        two = check_cor35(a, b, 0.5)
        g, t = values(grid), values(two)
        assert g["rho(A)"] == pytest.approx(t["rho(A^(1/2) o B^(1/2))"] ** 2, rel=1e-10)
        for k in ("l1", "l2", "linf"):
            assert g[f"|.|_{k}(A)"] == pytest.approx(
                t[f"|.|_{k}((A^(1/2) o B^(1/2))^2)"], rel=1e-10)
            assert g[f"|.|_{k}(o_j C_j^(a_j))"] == pytest.approx(t[f"|.|_{k}(Y_1/2)"], rel=1e-10)

    def test_thm24_unit_weights(self):
        a, b = draw(2, 4, 2)
        rep = check_thm24_sum_ge1([[a, b], [b, a]], WeightVector((1.0, 1.0), SUMGE1))
        assert rep.passed
        assert not any(label.startswith("w(") for label in rep.labels())

    def test_seeded_thm24(self):
        m = draw(11, 4, 4)
        assert check_thm24_sum_ge1([m[:2], m[2:]], WeightVector((0.9, 0.6), SUMGE1)).passed

    def test_weight_constraint_is_configuration_error(self):
        with pytest.raises(ConfigurationError):
            check_thm21([[I3, I3]], WeightVector((1.0, 1.0), SUMGE1))
        with pytest.raises(ConfigurationError):
            check_thm21([[I3, I3, I3]], WeightVector((0.5, 0.5)))


class TestCyclicSuites:
    def test_thm31_two_equal_weights(self):
        a, b = draw(3, 5, 2)
        q = values(check_thm31([a, b], WeightVector.equal(2)))
        r = values(check_cor35(a, b))
        assert math.sqrt(q["rho(B_1...B_m)"]) == pytest.approx(r["rho(A^(1/2) o B^(1/2))"], rel=1e-10)
        assert math.sqrt(q["rho(B_1...B_m)"]) <= math.sqrt(q["rho(A_1...A_m)"]) * (1 + 1e-12)

    def test_seeded_thm31(self):
        assert check_thm31(draw(3, 4, 4), WeightVector((0.1, 0.2, 0.3, 0.4))).passed

    def test_thm32_equal_weights_matches_cor33(self):
        mats = draw(5, 4, 3)
        q = values(check_thm32(mats, WeightVector.equal(3)))
        c = values(check_cor33(mats))
        assert q["rho(B_1...B_m)"] == pytest.approx(c["rho(o_j A_j^(1/m))"] ** 3, rel=1e-10)
        assert q["rho(o_j P_j^(a_j))"] == pytest.approx(c["rho(o_j P_j^(1/m))^(1/m)"] ** 3, rel=1e-10)
        assert q["|.|_l2(B_1...B_m)"] == pytest.approx(c["|.|_l2((o_j A_j^(1/m))^m)"], rel=1e-10)

    def test_seeded_thm32(self):
        assert check_thm32(draw(5, 4, 3), WeightVector((0.5, 0.3, 0.2))).passed

    def test_cor33_two_matches_cor35(self):
        a, b = draw(9, 5, 2)
        c, t = values(check_cor33([a, b])), values(check_cor35(a, b))
        assert c["rho(o_j A_j^(1/m))"] == pytest.approx(t["rho(A^(1/2) o B^(1/2))"], rel=1e-10)
        assert c["rho(o_j P_j^(1/m))^(1/m)"] == pytest.approx(t["rho(Y_1/2)^(1/2)"], rel=1e-10)
        assert c["w((o_j A_j^(1/m))^m)"] == pytest.approx(t["w((A^(1/2) o B^(1/2))^2)"], rel=1e-10)

    def test_seeded_cor33(self):
        assert check_cor33(draw(9, 5, 3)).passed

    def test_thm36_unit_sum_matches_thm32(self):
        mats = draw(13, 4, 3)
        a = values(check_thm36(mats, WeightVector((0.5, 0.3, 0.2), SUMGE1)))
        b = values(check_thm32(mats, WeightVector((0.5, 0.3, 0.2))))
        for label in set(a) & set(b):
            assert a[label] == pytest.approx(b[label], rel=1e-12), label

    def test_thm36_unit_weights(self):
        rep = check_thm36(draw(14, 4, 3), WeightVector((1.0, 1.0, 1.0), SUMGE1))
        assert rep.passed
        assert "rho(A_1...A_m)^a" in rep.labels()
        asserted = {v.right for v in rep.verdicts} | {v.left for v in rep.verdicts}
        assert "prod_j w(P_j)^a_j [not asserted]" not in asserted

    def test_seeded_thm36(self):
        assert check_thm36(draw(13, 5, 2), WeightVector((0.9, 0.8), SUMGE1)).passed


class TestTwoOperatorSuites:
    def test_cor35_equal_operators(self):
        a = draw(20, 4, 1)[0]
        q = values(check_cor35(a, a, 0.5))
        assert q["rho(A^(1/2) o B^(1/2))"] == pytest.approx(q["rho(AB)^(1/2)"], rel=1e-10)
        assert q["rho(Y_1/2)^(1/2)"] == pytest.approx(q["rho(AB)^(1/2)"], rel=1e-10)

    def test_cor35_alpha_zero(self):
        a, b = draw(21, 3, 2, 0.5)
        assert check_cor35(a, b, 0.0).passed

    def test_cor35_fixed_pair_with_oracle(self):
        a = np.array([[1.0, 2.0], [3.0, 4.0]])
        b = np.array([[4.0, 3.0], [2.0, 1.0]])
        rep = check_cor35(a, b, 0.5)
        assert rep.passed
        q = values(rep)
        assert q["rho(AB)"] == pytest.approx(spectral_radius_oracle(a @ b), rel=1e-12)
        assert q["rho(A^(1/2) o B^(1/2))"] == pytest.approx(
            spectral_radius_oracle(np.sqrt(a * b)), rel=1e-12)

    def test_cor35_alpha_range(self):
        with pytest.raises(ConfigurationError):
            check_cor35(I3, I3, 1.5)

    def test_thm41_two_matches_cor43(self):
        a, b = draw(17, 4, 2)
        q = values(check_thm41([a, b], WeightVector.equal(2)))
        c = values(check_cor43(a, b, 0.5))
        assert q["|o_j A_j^(1/m)|_2"] == pytest.approx(c["|A^(1/2) o B^(1/2)|_2"], rel=1e-10)
        assert q["rho(o_j S_j^(1/m))^(1/2)"] == pytest.approx(
            c["rho(S_A^(1/2) o S_B^(1/2))^(1/2)"], rel=1e-10)
        assert q["rho(S_1...S_m)^(1/2m)"] == pytest.approx(c["rho(S_A S_B)^(1/4)"], rel=1e-10)

    def test_seeded_thm41(self):
        assert check_thm41(draw(17, 5, 3), WeightVector((0.2, 0.3, 0.5))).passed

    def test_thm42_unit_sum_matches_thm41(self):
        mats = draw(19, 4, 2)
        a = values(check_thm42(mats, WeightVector((0.3, 0.7), SUMGE1)))
        b = values(check_thm41(mats, WeightVector((0.3, 0.7))))
        for label in a:
            assert a[label] == pytest.approx(b[label], rel=1e-12)

    @pytest.mark.parametrize("w", [(1.0, 1.0), (0.8, 0.9, 0.4)])
    def test_seeded_thm42(self, w):
        assert check_thm42(draw(19, 4, len(w)), WeightVector(w, SUMGE1)).passed

    def test_cor43_equality_checked_both_ways(self):
        a, b = draw(23, 4, 2)
        rep = check_cor43(a, b, 0.6, 0.7)
        assert rep.passed
        pairs = {(v.left, v.right) for v in rep.verdicts}
        assert ("rho(S_A S_B)^(1/4)", "|A B^T|_2^(1/2)") in pairs
        assert ("|A B^T|_2^(1/2)", "rho(S_A S_B)^(1/4)") in pairs

    def test_cor43_beta_precondition(self):
        with pytest.raises(ConfigurationError):
            check_cor43(I3, I3, 0.2, 0.5)

    def test_thm44_half_chains_coincide(self):
        q = values(check_thm44(*draw(30, 4, 2), 0.5))
        assert q["|A^(a) o B^(a)|_2"] == pytest.approx(q["|A^(1/2) o B^(1/2)|_2"], rel=1e-12)
        assert q["rho(A^T B)^a"] == pytest.approx(q["rho(A^T B)^(1/2)"], rel=1e-12)

    def test_seeded_thm44(self):
        assert check_thm44(*draw(29, 5, 2, 0.7), 0.8).passed

    def test_thm44_alpha_below_half(self):
        with pytest.raises(ConfigurationError):
            check_thm44(I3, I3, 0.4)


class TestAlternatingSuites:
    def test_m2_matches_thm44(self):
        a, b = draw(31, 4, 2)
        q = values(check_thm45_47([a, b], 0.5))
        t = values(check_thm44(a, b, 0.5))
        assert q["|o_j A_j^(a)|_2"] == pytest.approx(t["|A^(1/2) o B^(1/2)|_2"], rel=1e-12)
        assert q["rho(B_a)^(1/m)"] == pytest.approx(
            t["rho((A^T B)^(1/2) o (B^T A)^(1/2))^(1/2)"], rel=1e-10)

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_seeded(self, m):
        assert check_thm45_47(draw(31, 4, m, 0.8)).passed
        assert check_thm45_47(draw(31, 4, m, 0.8), 0.7).passed

    def test_alpha_below_reciprocal(self):
        with pytest.raises(ConfigurationError):
            check_thm45_47([I3] * 4, 0.2)

    def test_cor48_matches_m3(self):
        mats = draw(37, 4, 3)
        q = values(check_cor48(*mats))
        t = values(check_thm45_47(mats))
        assert q["rho(C_a)^(1/6)"] == pytest.approx(t["rho(C_a)^(1/2m)"], rel=1e-10)
        assert q["|A_1^(a) o A_2^(a) o A_3^(a)|_2"] == pytest.approx(t["|o_j A_j^(a)|_2"], rel=1e-12)

    def test_seeded_cor48(self):
        assert check_cor48(*draw(37, 5, 3, 0.7), 0.6).passed

    @pytest.mark.parametrize("alpha", [1 / 3, 0.5, 1.0])
    def test_cor49_sharp_at_identity(self, alpha):
        q = [v for _, v in check_cor49_jordan(np.eye(4), np.eye(4), alpha).quantities]
        assert all(abs(v - 1.0) <= 1e-12 for v in q)

    def test_seeded_cor49(self):
        assert check_cor49_jordan(*draw(41, 4, 2), 1 / 3).passed

    def test_cor49_on_counterexample_pair_with_transpose(self):
        a = np.array([[0.0, 1.0], [0.0, 1.0]])
        b = np.array([[1.0, 1.0], [0.0, 0.0]])
        assert check_cor49_jordan(a, b, 1 / 3).passed


class TestCounterexample:
    @pytest.mark.parametrize("alpha", [1 / 3, 0.5, 1.0])
    def test_violated(self, alpha):
        rep = run_counterexample(alpha)
        lhs, rhs = (v for _, v in rep.quantities)
        assert lhs == 1.0 and rhs == 0.0
        assert not rep.passed


class TestNumericalRadiusSearch:
    def test_zero_budget(self):
        assert search_numrad_violation(budget=0) is None

    def test_unit_sum_finds_nothing(self):
        assert search_numrad_violation(500, n=3, m=2, weights=(0.5, 0.5)) is None

    def test_unit_weights_search_outcome(self):
        from hml.spectral import numerical_radius
        found = search_numrad_violation(10_000, n=2, m=2, seed=0, weights=(1.0, 1.0))
        assert found is not None
        a, b = (np.array(x) for x in found["mats"])
        # Recheck with the weights (1, 1): B_1 = B_2 = A o B, P_1 = AB, P_2 = BA.
        g = a * b
        assert numerical_radius(g @ g) > numerical_radius(a @ b) * numerical_radius(b @ a)

    def test_hand_instance(self):
        from hml.spectral import numerical_radius
        a = np.array([[0.1, 1.0], [0.0, 0.0]])
        g = a * a
        lhs = numerical_radius(g @ g)
        rhs = numerical_radius(a @ a) ** 2
        assert lhs == pytest.approx(5e-5 + math.sqrt(2.5e-9 + 2.5e-5), rel=1e-12)
        assert lhs > 1.6 * rhs


class TestSweep:
    def test_registry_names(self):
        assert list(SUITES) == ["thm21", "thm23", "thm24", "thm31", "thm32", "cor33", "cor35",
                                "thm36", "thm41", "thm42", "cor43", "thm44", "thm4547",
                                "cor48", "cor49"]

    def test_trial_configs_are_stable(self):
        sweep = Sweep(seed=5, trials=20)
        assert trial_configs("thm32", sweep) == trial_configs("thm32", sweep)
        assert trial_configs("thm32", sweep)[:5] == trial_configs("thm32", Sweep(seed=5, trials=5))

    def test_rerun_single_trial(self):
        cfg = trial_configs("cor43", Sweep(seed=3, trials=4))[2]
        assert run_trial("cor43", cfg).to_dict() == run_trial("cor43", cfg).to_dict()

    @pytest.mark.parametrize("name", list(SUITES))
    def test_each_suite_small_sweep(self, name):
        reports = run_sweep([name], Sweep(seed=1, trials=25), workers=1)
        assert all(r.passed for r in reports)

    def test_parallel_schedule_independent(self):
        sweep = Sweep(seed=7, trials=6)
        names = ["thm21", "cor35", "thm4547"]
        serial = dumps(bundle("all", run_sweep(names, sweep, workers=1)))
        parallel = dumps(bundle("all", run_sweep(names, sweep, workers=2)))
        assert serial == parallel

    def test_scalar_dimension(self):
        reports = run_sweep(list(SUITES), Sweep(seed=0, trials=2, dims=(1, 1)), workers=1)
        assert all(r.passed for r in reports)

    def test_sumge1_on_sum1_suite_rejected(self):
        with pytest.raises(ConfigurationError):
            trial_configs("thm21", Sweep(weight_mode=SUMGE1))

    @pytest.mark.parametrize("kwargs", [
        {"dims": (3, 2)}, {"ms": (0, 2)}, {"trials": -1}, {"densities": (0.0,)},
    ])
    def test_bad_sweep(self, kwargs):
        with pytest.raises(ConfigurationError):
            Sweep(**kwargs)

    def test_bad_trial_config(self):
        with pytest.raises(ConfigurationError):
            TrialConfig(n=0)
        with pytest.raises(ConfigurationError):
            TrialConfig(rel_tol=0.0)
