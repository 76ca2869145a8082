import numpy as np
import pytest

from witl.common_info import (
    CommonInfoSolution,
    SolveBudget,
    bsc_broadcast_source,
    common_info_bounds,
    solve_common_info,
)
from witl.prob import (
    JointPmf,
    binary_entropy,
    entropy,
    marginalize,
    mix_channels,
    mutual_information,
    total_variation,
)

C_DSBS_01 = 0.74208585854971740  # 1 + h(0.18) - 2 h(0.1)
C_BROADCAST_3 = 0.86241773063504412
C_BROADCAST_4 = 0.92193865857931574


def dsbs(a1=0.1):
    p11 = (1 - a1) ** 2 * 0.5 + a1**2 * 0.5
    p10 = a1 * (1 - a1)
    return JointPmf((2, 2), np.array([[p11, p10], [p10, p11]]))


class TestBounds:
    def test_dsbs_sandwich(self):
        lo, hi = common_info_bounds(dsbs())
        assert lo == pytest.approx(1.0 - 0.68007704572827984, abs=1e-10)
        assert hi == pytest.approx(1.0, abs=1e-10)  # entropy of one uniform bit
        assert lo <= C_DSBS_01 <= hi

    def test_independent_collapses_to_zero_lower(self):
        p = JointPmf((2, 2), np.full((2, 2), 0.25))
        lo, hi = common_info_bounds(p)
        assert lo == pytest.approx(0.0, abs=1e-10)


class TestBroadcastFamily:
    def test_pairwise_marginal_is_dsbs(self):
        src = bsc_broadcast_source(0.5, 0.1, 3)
        pair = marginalize(src, [0, 1])
        np.testing.assert_allclose(pair.mass, dsbs().mass, atol=1e-12)

    def test_exact_value_formula(self):
        for n, expect in [(3, C_BROADCAST_3), (4, C_BROADCAST_4)]:
            src = bsc_broadcast_source(0.5, 0.1, n)
            val = entropy(src) - n * binary_entropy(0.1)
            assert val == pytest.approx(expect, abs=1e-9)

    def test_nondecreasing_in_coordinates(self):
        vals = [
            entropy(bsc_broadcast_source(0.5, 0.1, n)) - n * binary_entropy(0.1)
            for n in (2, 3, 4, 5)
        ]
        assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))


class TestExhaustiveSolver:
    def test_dsbs_value(self):
        sol = solve_common_info(dsbs(), K=2)
        assert sol.status == "exhaustive-optimal"
        assert sol.achieved_I == pytest.approx(C_DSBS_01, abs=1e-3)
        assert sol.marginal_residual <= 1e-6

    def test_reconstruction_matches_source(self):
        sol = solve_common_info(dsbs(), K=2)
        mixed = mix_channels(sol.pw, list(sol.channels))
        assert total_variation(mixed, dsbs()) <= 1e-6

    def test_conditional_independence_of_solution(self):
        sol = solve_common_info(dsbs(), K=2)
        for w in range(sol.pw.size):
            if sol.pw[w] <= 0:
                continue
            block = np.outer(sol.channels[0].rows[w], sol.channels[1].rows[w])
            assert block.shape == (2, 2)  # product form by construction

    def test_independent_source_gives_zero(self):
        p = JointPmf((2, 2), np.outer([0.3, 0.7], [0.6, 0.4]))
        sol = solve_common_info(p, K=2)
        assert sol.achieved_I == pytest.approx(0.0, abs=1e-6)

    def test_perfectly_correlated_gives_entropy(self):
        p = JointPmf((2, 2), np.array([[0.5, 0.0], [0.0, 0.5]]))
        sol = solve_common_info(p, K=2)
        assert sol.achieved_I == pytest.approx(1.0, abs=1e-3)


class TestDescentSolver:
    def test_broadcast_three_upper_bound_quality(self):
        src = bsc_broadcast_source(0.5, 0.1, 3)
        sol = solve_common_info(src, K=2, budget=SolveBudget(restarts=6, seed=0))
        exact = C_BROADCAST_3
        assert sol.marginal_residual <= 1e-6
        # upper-bound search: must not report below the optimum (minus solver
        # tolerance) and should land near it
        assert sol.achieved_I >= exact - 1e-4
        assert sol.achieved_I <= exact + 5e-2

    def test_value_respects_lower_bound(self):
        rng = np.random.default_rng(7)
        mass = rng.dirichlet(np.ones(6)).reshape(2, 3)
        p = JointPmf((2, 3), mass)
        sol = solve_common_info(p, budget=SolveBudget(restarts=4, seed=1))
        lo, hi = common_info_bounds(p)
        assert sol.achieved_I >= lo - 1e-6
        assert sol.marginal_residual <= 1e-6


class TestSerialization:
    def test_round_trip(self):
        sol = solve_common_info(dsbs(), K=2)
        back = CommonInfoSolution.from_json_obj(sol.to_json_obj())
        np.testing.assert_allclose(back.pw, sol.pw, atol=1e-12)
        assert back.achieved_I == pytest.approx(sol.achieved_I, abs=1e-12)
        for a, b in zip(back.channels, sol.channels):
            np.testing.assert_allclose(a.rows, b.rows, atol=1e-12)
