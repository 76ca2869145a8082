import numpy as np
import pytest

from witl.audit import (
    audit_bounds_and_monotone,
    audit_lemma1,
    audit_theorem4_frontier,
    audit_theorem9_conditions,
    random_source,
)
from witl.common_info import SolveBudget
from witl.prob import JointPmf
from witl.rd import DistortionSpec


def dsbs(a1=0.1):
    p11 = (1 - a1) ** 2 * 0.5 + a1**2 * 0.5
    p10 = a1 * (1 - a1)
    return JointPmf((2, 2), np.array([[p11, p10], [p10, p11]]))


class TestRandomSource:
    def test_reproducible(self):
        a = random_source(5)
        b = random_source(5)
        np.testing.assert_allclose(a.mass, b.mass, atol=0)

    def test_shapes(self):
        assert random_source(0, (3, 3)).alphabet_sizes == (3, 3)


class TestLemma1:
    def test_dsbs_passes(self):
        rep = audit_lemma1(dsbs(), DistortionSpec.hamming((2, 2)), 0.05, 0.08)
        assert rep.passed
        assert len(rep.checks) == 5

    def test_random_sources_pass(self):
        for seed in (0, 1, 2):
            p = random_source(seed, (3, 3))
            rep = audit_lemma1(p, DistortionSpec.hamming((3, 3)), 0.1, 0.2)
            assert rep.passed, [c for c in rep.checks if c.verdict == "fail"]

    def test_independent_equalities_flagged(self):
        p = JointPmf((2, 2), np.outer([0.4, 0.6], [0.3, 0.7]))
        rep = audit_lemma1(p, DistortionSpec.hamming((2, 2)), 0.1, 0.1)
        verdicts = [c.verdict for c in rep.checks]
        assert verdicts.count("equal") == 2
        assert rep.passed

    def test_report_serialization(self):
        rep = audit_lemma1(dsbs(), DistortionSpec.hamming((2, 2)), 0.05, 0.08)
        obj = rep.to_json_obj()
        assert obj["passed"]
        assert len(obj["checks"]) == len(rep.checks)
        assert obj["source_fingerprint"] == rep.source_fingerprint


class TestFrontierAndConditions:
    def test_dsbs_frontier(self):
        rep = audit_theorem4_frontier("dsbs", 0.1, grid_size=8)
        assert rep.passed

    def test_gauss_frontier(self):
        rep = audit_theorem4_frontier("gauss", 0.5, grid_size=8)
        assert rep.passed

    def test_conditions_inside_corner(self):
        rep = audit_theorem9_conditions("dsbs", 0.1, 0.05, 0.05)
        assert rep.passed
        assert all(c.verdict != "skipped" for c in rep.checks)

    def test_conditions_outside_corner_skip(self):
        rep = audit_theorem9_conditions("gauss", 0.5, 0.9, 0.9)
        assert any(c.verdict == "skipped" for c in rep.checks)


class TestBoundsAndMonotone:
    def test_with_source_and_family(self):
        rep = audit_bounds_and_monotone(
            random_source(3), SolveBudget(seed=3), a1=0.1, max_n=4
        )
        assert rep.passed
        names = [c.name for c in rep.checks]
        assert any("lower bound" in n for n in names)
        assert any("nondecreasing" in n for n in names)
