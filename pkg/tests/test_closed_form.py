import math

import numpy as np
import pytest

from witl.closed_form import (
    DsbsParams,
    GaussParams,
    InfiniteRate,
    RegionLabel,
    dsbs_allocation,
    dsbs_c3,
    dsbs_common_info,
    dsbs_conditional_rd,
    dsbs_joint_rd,
    dsbs_region,
    gauss_allocation,
    gauss_c3,
    gauss_common_info,
    gauss_common_info_N,
    gauss_conditional_rd,
    gauss_joint_rd,
    gauss_marginal_rd,
    gauss_region,
)
from witl.prob import ProbabilityError, binary_entropy

C_DSBS_01 = 0.74208585854971740
R_JOINT_005 = 1.10728313149636758
R_JOINT_03 = 0.14694379091007166
HALF_LOG2_3 = 0.79248125036057809
HALF_LOG2_12 = 1.79248125036057809
HALF_LOG2_5 = 1.16096404744368117


class TestDsbsParams:
    def test_a0_a1_round_trip(self):
        p = DsbsParams.from_a1(0.1)
        assert p.a0 == pytest.approx(0.18, abs=1e-15)
        assert p.a1 == pytest.approx(0.1, abs=1e-12)

    def test_rejects_out_of_range(self):
        with pytest.raises(ProbabilityError):
            DsbsParams(0.6)
        with pytest.raises(ProbabilityError):
            DsbsParams.from_a1(-0.1)


class TestDsbsRegions:
    def test_representative_points(self):
        p = DsbsParams.from_a1(0.1)
        assert dsbs_region(p, 0.05, 0.05) is RegionLabel.E10
        assert dsbs_region(p, 0.3, 0.3) is RegionLabel.E2
        assert dsbs_region(p, 0.02, 0.45) is RegionLabel.E3
        assert dsbs_region(p, 0.6, 0.7) is RegionLabel.ZERO

    def test_e11_between_corner_and_curve(self):
        p = DsbsParams.from_a1(0.1)
        # just above the corner but below the sum curve
        assert dsbs_region(p, 0.12, 0.06) is RegionLabel.E11

    def test_negative_rejected(self):
        with pytest.raises(ProbabilityError):
            dsbs_region(DsbsParams.from_a1(0.1), -0.1, 0.1)


class TestDsbsValues:
    def test_common_info(self):
        assert dsbs_common_info(DsbsParams.from_a1(0.1)) == pytest.approx(
            C_DSBS_01, abs=1e-14
        )

    def test_joint_rd_reference(self):
        p = DsbsParams.from_a1(0.1)
        assert dsbs_joint_rd(p, 0.05, 0.05) == pytest.approx(R_JOINT_005, abs=1e-14)
        assert dsbs_joint_rd(p, 0.3, 0.3) == pytest.approx(R_JOINT_03, abs=1e-14)
        assert dsbs_joint_rd(p, 0.02, 0.45) == pytest.approx(
            1.0 - binary_entropy(0.02), abs=1e-14
        )
        assert dsbs_joint_rd(p, 0.7, 0.8) == 0.0

    def test_conditional_rd(self):
        p = DsbsParams.from_a1(0.1)
        expect = binary_entropy(0.1) - binary_entropy(0.05)
        assert dsbs_conditional_rd(p, 0.05) == pytest.approx(expect, abs=1e-14)
        assert dsbs_conditional_rd(p, 0.2) == 0.0

    def test_c3_point_and_bracket(self):
        p = DsbsParams.from_a1(0.1)
        lo, hi = dsbs_c3(p, 0.05, 0.05)
        assert lo == hi == pytest.approx(C_DSBS_01, abs=1e-14)
        lo, hi = dsbs_c3(p, 0.12, 0.06)  # open bracket region
        assert lo == pytest.approx(C_DSBS_01, abs=1e-14)
        assert hi == pytest.approx(dsbs_joint_rd(p, 0.12, 0.06), abs=1e-14)
        assert lo < hi
        lo, hi = dsbs_c3(p, 0.3, 0.3)
        assert lo == hi == pytest.approx(R_JOINT_03, abs=1e-14)

    def test_allocation_sum_identity_and_corner(self):
        p = DsbsParams.from_a1(0.1)
        r0, r1, r2 = dsbs_allocation(p, 0.08, 0.09, 0.03, 0.04)
        assert r0 + r1 + r2 == pytest.approx(dsbs_joint_rd(p, 0.03, 0.04), abs=1e-12)
        r0, _, _ = dsbs_allocation(p, 0.1, 0.1, 0.05, 0.05)
        assert r0 == pytest.approx(C_DSBS_01, abs=1e-12)

    def test_allocation_rejects_bad_ordering(self):
        p = DsbsParams.from_a1(0.1)
        with pytest.raises(ProbabilityError):
            dsbs_allocation(p, 0.2, 0.05, 0.03, 0.03)  # D1' above a1


class TestGaussParams:
    def test_negative_rho_reflected(self):
        g = GaussParams(-0.5)
        assert g.rho == 0.5
        assert g.reflected

    def test_rejects_unit_rho(self):
        with pytest.raises(ProbabilityError):
            GaussParams(1.0)


class TestGaussValues:
    def test_common_info_half(self):
        assert gauss_common_info(GaussParams(0.5)) == pytest.approx(
            HALF_LOG2_3, abs=1e-12
        )

    def test_n_variate_matches_pairwise_at_two(self):
        for rho in (0.1, 0.37, 0.5, 0.9):
            assert gauss_common_info_N(GaussParams(rho), 2) == pytest.approx(
                gauss_common_info(GaussParams(rho)), abs=1e-12
            )

    def test_n_variate_reference(self):
        # 1 + 3*0.5/0.5 = 4 -> 1 bit ; N=5, rho=0.5 -> (1/2)log2(6)
        assert gauss_common_info_N(GaussParams(0.5), 3) == pytest.approx(1.0, abs=1e-12)

    def test_marginal_and_conditional_rd(self):
        assert gauss_marginal_rd(0.25) == pytest.approx(1.0, abs=1e-12)
        assert gauss_marginal_rd(2.0) == 0.0
        with pytest.raises(InfiniteRate):
            gauss_marginal_rd(0.0)
        g = GaussParams(0.5)
        assert gauss_conditional_rd(g, 0.1) == pytest.approx(
            0.5 * math.log2(0.5 / 0.1), abs=1e-12
        )
        assert gauss_conditional_rd(g, 0.9) == 0.0

    def test_regions(self):
        g = GaussParams(0.5)
        assert gauss_region(g, 0.25, 0.25) is RegionLabel.D10
        assert gauss_region(g, 0.55, 0.3) is RegionLabel.D11
        assert gauss_region(g, 0.8, 0.8) is RegionLabel.D2
        assert gauss_region(g, 0.05, 0.999) is RegionLabel.D3
        assert gauss_region(g, 1.2, 1.1) is RegionLabel.ZERO

    def test_joint_rd_reference(self):
        g = GaussParams(0.5)
        # D10: (1/2) log2(0.75 / (0.25 * 0.25)) = (1/2) log2(12)
        assert gauss_joint_rd(g, 0.25, 0.25) == pytest.approx(HALF_LOG2_12, abs=1e-12)
        # D3: depends on the finer constraint only
        assert gauss_joint_rd(g, 0.2, 0.999) == pytest.approx(
            0.5 * math.log2(5.0), abs=1e-12
        )
        with pytest.raises(InfiniteRate):
            gauss_joint_rd(g, 0.0, 0.5)

    def test_c3_point_and_bracket(self):
        g = GaussParams(0.5)
        lo, hi = gauss_c3(g, 0.25, 0.25)
        assert lo == hi == pytest.approx(HALF_LOG2_3, abs=1e-12)
        lo, hi = gauss_c3(g, 0.55, 0.3)
        assert lo == pytest.approx(HALF_LOG2_3, abs=1e-12)
        assert hi == pytest.approx(gauss_joint_rd(g, 0.55, 0.3), abs=1e-12)

    def test_allocation_sum_identity_and_corner(self):
        g = GaussParams(0.5)
        r0, r1, r2 = gauss_allocation(g, 0.4, 0.45, 0.2, 0.1)
        assert r0 + r1 + r2 == pytest.approx(gauss_joint_rd(g, 0.2, 0.1), abs=1e-12)
        r0, _, _ = gauss_allocation(g, 0.5, 0.5, 0.3, 0.3)
        assert r0 == pytest.approx(gauss_common_info(g), abs=1e-12)


class TestContinuity:
    def test_dsbs_branch_continuity_across_curve(self):
        p = DsbsParams.from_a1(0.1)
        # crossing the sum curve D1 + D2 - 2 D1 D2 = a0 at fixed D2
        d2 = 0.06
        d1 = (p.a0 - d2) / (1.0 - 2.0 * d2)
        below = dsbs_joint_rd(p, d1 - 1e-9, d2)
        above = dsbs_joint_rd(p, d1 + 1e-9, d2)
        assert abs(below - above) <= 1e-6

    def test_gauss_branch_continuity_across_curve(self):
        g = GaussParams(0.5)
        d2 = 0.3
        d1 = (1.0 - g.rho * g.rho - d2) / (1.0 - d2)
        below = gauss_joint_rd(g, d1 - 1e-9, d2)
        above = gauss_joint_rd(g, d1 + 1e-9, d2)
        assert abs(below - above) <= 1e-6
