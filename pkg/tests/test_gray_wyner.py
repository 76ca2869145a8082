import numpy as np
import pytest

from witl.closed_form import DsbsParams, dsbs_c3
from witl.common_info import SolveBudget
from witl.gray_wyner import (
    RatePoint,
    c3_tilde,
    c_star,
    check_membership,
    witness_common_rate,
    witness_conditional_rate,
)
from witl.prob import JointPmf, ProbabilityError
from witl.rd import DistortionSpec

C_DSBS_01 = 0.74208585854971740


def dsbs(a1=0.1):
    p11 = (1 - a1) ** 2 * 0.5 + a1**2 * 0.5
    p10 = a1 * (1 - a1)
    return JointPmf((2, 2), np.array([[p11, p10], [p10, p11]]))


def hamming22():
    return DistortionSpec.hamming((2, 2))


class TestRatePoint:
    def test_rejects_negative(self):
        with pytest.raises(ProbabilityError):
            RatePoint(-0.1, (0.1, 0.1))
        with pytest.raises(ProbabilityError):
            RatePoint(0.1, (-0.1, 0.1))


class TestMembership:
    def test_generous_rates_are_members(self):
        w = check_membership(dsbs(), RatePoint(1.0, (1.0, 1.0)), (0.05, 0.05), hamming22())
        assert w is not None
        assert w.common_rate_needed <= 1.0 + 1e-9
        assert all(r <= 1.0 + 1e-9 for r in w.private_rates_needed)

    def test_witness_numbers_recomputable(self):
        w = check_membership(dsbs(), RatePoint(1.0, (1.0, 1.0)), (0.05, 0.05), hamming22())
        assert witness_common_rate(w.joint) == pytest.approx(
            w.common_rate_needed, abs=1e-12
        )
        r1 = witness_conditional_rate(w.joint, 1, hamming22(), 0.05)
        assert r1 == pytest.approx(w.private_rates_needed[0], abs=1e-12)

    def test_starved_rates_find_no_witness(self):
        w = check_membership(dsbs(), RatePoint(0.0, (0.01, 0.01)), (0.01, 0.01), hamming22())
        assert w is None

    def test_dimension_mismatch(self):
        with pytest.raises(ProbabilityError):
            check_membership(dsbs(), RatePoint(1.0, (1.0,)), (0.05, 0.05), hamming22())


class TestCommonRateSolvers:
    def test_tilde_fine_distortion_matches_closed_form(self):
        est = c3_tilde(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        lo, hi = dsbs_c3(DsbsParams.from_a1(0.1), 0.05, 0.05)
        assert est.value_upper == pytest.approx(hi, abs=2e-2)
        assert est.constraint_residual <= 1e-3
        assert est.witness is not None

    def test_tilde_coarse_distortion_matches_closed_form(self):
        est = c3_tilde(dsbs(), hamming22(), (0.3, 0.3), SolveBudget())
        lo, hi = dsbs_c3(DsbsParams.from_a1(0.1), 0.3, 0.3)
        assert est.value_upper == pytest.approx(hi, abs=2e-2)

    def test_star_agrees_with_tilde(self):
        tilde = c3_tilde(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        star = c_star(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        assert star.value_upper == pytest.approx(tilde.value_upper, abs=2e-2)

    def test_bracket_ordering(self):
        est = c3_tilde(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        assert est.value_lower <= est.value_upper + 1e-12
        assert est.value_upper <= est.joint_rate + 1e-6

    def test_witness_reproduces_value(self):
        est = c3_tilde(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        assert witness_common_rate(est.witness) == pytest.approx(
            est.value_upper, abs=1e-9
        )

    def test_json_payload(self):
        est = c3_tilde(dsbs(), hamming22(), (0.05, 0.05), SolveBudget())
        obj = est.to_json_obj()
        assert obj["witness_present"]
        assert obj["value_upper_bits"] == pytest.approx(est.value_upper, abs=1e-15)

    def test_pairs_only(self):
        p = JointPmf((2, 2, 2), np.full((2, 2, 2), 0.125))
        with pytest.raises(ProbabilityError):
            c3_tilde(p, DistortionSpec.hamming((2, 2, 2)), (0.1, 0.1, 0.1))
