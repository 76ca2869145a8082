"""Minimizing I(X; W) over auxiliary variables that render the coordinates
conditionally independent while preserving the joint law.

Two search routes:

* exhaustive mode for 2x2 sources with |W| = 2: the three marginal-matching
  equations are solved in closed form and the two residual free parameters are
  gridded, so the returned minimum is global up to grid resolution;
* penalized descent for everything else: q(w|x) is optimized under a ramped
  conditional-total-correlation penalty, which keeps the X-marginal exact by
  construction. Results on this route are certified upper bounds only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize
from scipy.special import xlogy

from .prob import (
    LOG2,
    ConditionalPmf,
    JointPmf,
    ProbabilityError,
    entropy,
    joint_with_mixture,
    marginalize,
    mix_channels,
    mutual_information,
    total_variation,
)

FEASIBILITY_TOL = 1e-6  # total variation between the mixture and the target


class CommonInfoInfeasible(RuntimeError):
    """The search budget produced no point within the feasibility tolerance."""


@dataclass(frozen=True)
class SolveBudget:
    restarts: int = 8
    seed: int = 0
    grid_resolution: float = 1e-3
    mu_init: float = 1.0
    mu_factor: float = 10.0
    stages: int = 9
    maxiter: int = 300


@dataclass(frozen=True)
class CommonInfoSolution:
    pw: np.ndarray
    channels: tuple[ConditionalPmf, ...]
    achieved_I: float
    marginal_residual: float
    status: str  # "exhaustive-optimal" | "local-restart-best"

    def to_json_obj(self) -> dict:
        return {
            "pw": [float(v) for v in self.pw],
            "channels": [c.rows.tolist() for c in self.channels],
            "achieved_I_bits": self.achieved_I,
            "marginal_residual_tv": self.marginal_residual,
            "status": self.status,
        }

    @classmethod
    def from_json_obj(cls, obj) -> "CommonInfoSolution":
        pw = np.asarray(obj["pw"], dtype=float)
        channels = tuple(
            ConditionalPmf(pw.size, (np.asarray(rows).shape[1],), np.asarray(rows))
            for rows in obj["channels"]
        )
        return cls(
            pw,
            channels,
            float(obj["achieved_I_bits"]),
            float(obj["marginal_residual_tv"]),
            str(obj["status"]),
        )


def common_info_bounds(p: JointPmf) -> tuple[float, float]:
    """(max cut mutual information, min_j H(X^{-j})) sandwich for C(X)."""
    n = p.ncoords
    if n < 2:
        raise ProbabilityError("bounds require at least two coordinates")
    coords = list(range(n))
    lower = 0.0
    for r in range(1, n // 2 + 1):
        for group in itertools.combinations(coords, r):
            if r == n - r and group[0] != 0:
                continue  # complements already covered
            lower = max(lower, mutual_information(p, group))
    upper = min(
        entropy(marginalize(p, [i for i in coords if i != j])) for j in coords
    )
    return lower, upper


def bsc_broadcast_source(theta: float, a1: float, N: int) -> JointPmf:
    """N bits produced by independent BSC(a1) channels driven by Bern(theta)."""
    if not 0.0 <= a1 <= 0.5:
        raise ProbabilityError(f"crossover {a1!r} outside [0, 1/2]")
    if not 0.0 <= theta <= 1.0:
        raise ProbabilityError(f"theta {theta!r} outside [0, 1]")
    if N < 2:
        raise ProbabilityError("broadcast source needs N >= 2")
    mass = np.zeros((2,) * N)
    for bits in itertools.product((0, 1), repeat=N):
        t = sum(bits)
        mass[bits] = theta * a1**t * (1 - a1) ** (N - t) + (1 - theta) * (
            1 - a1
        ) ** t * a1 ** (N - t)
    return JointPmf((2,) * N, mass)


def _solution_from_mixture(p, pw, channels, status):
    mix = mix_channels(pw, channels)
    joint = joint_with_mixture(pw, channels)
    achieved = mutual_information(joint, [0])
    return CommonInfoSolution(
        pw=np.asarray(pw, dtype=float),
        channels=tuple(channels),
        achieved_I=achieved,
        marginal_residual=total_variation(mix, p),
        status=status,
    )


def _exhaustive_2x2(p: JointPmf, budget: SolveBudget):
    """Global grid search for a 2x2 source with |W| = 2.

    Free parameters are b1 = p(X1=1 | w) for w in {0, 1}; the weight and the
    X2 channel follow from the three marginal-matching equations.
    """
    p1 = float(p.mass[1, :].sum())
    p2 = float(p.mass[:, 1].sum())
    p11 = float(p.mass[1, 1])
    res = budget.grid_resolution
    grid = np.linspace(0.0, 1.0, int(round(1.0 / res)) + 1)
    b10, b11 = np.meshgrid(grid, grid, indexing="ij")
    b10 = b10.reshape(-1)
    b11 = b11.reshape(-1)
    diff = b10 - b11
    ok = np.abs(diff) > 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        piw = np.where(ok, (p1 - b11) / np.where(ok, diff, 1.0), -1.0)
        # (b20, b21) solve pi*b20 + (1-pi)*b21 = p2 and
        # pi*b10*b20 + (1-pi)*b11*b21 = p11
        b20 = (b11 * p2 - p11) / np.where(ok, piw * (b11 - b10), 1.0)
        b21 = (p11 - b10 * p2) / np.where(ok, (1.0 - piw) * (b11 - b10), 1.0)
    eps = 1e-9
    feas = (
        ok
        & (piw > eps)
        & (piw < 1 - eps)
        & (b20 >= -1e-12)
        & (b20 <= 1 + 1e-12)
        & (b21 >= -1e-12)
        & (b21 <= 1 + 1e-12)
    )
    # the grid excludes b10 == b11 (degenerate W); an independent source's
    # optimum lives exactly there, so test the constant-W candidate separately
    independent = None
    prod = marginalize(p, [0]).mass[:, None] * marginalize(p, [1]).mass[None, :]
    if total_variation(prod, p.mass) <= FEASIBILITY_TOL:
        pw = np.array([0.5, 0.5])
        channels = tuple(
            ConditionalPmf(2, (2,), np.tile(marginalize(p, [i]).mass, (2, 1)))
            for i in range(2)
        )
        independent = _solution_from_mixture(p, pw, channels, "exhaustive-optimal")
    if not np.any(feas):
        if independent is not None:
            return independent
        raise CommonInfoInfeasible("no feasible point on the exhaustive grid")
    b20 = np.clip(b20, 0.0, 1.0)
    b21 = np.clip(b21, 0.0, 1.0)

    def h(v):
        return -(xlogy(v, v) + xlogy(1.0 - v, 1.0 - v)) / LOG2

    hx = entropy(p)
    hxw = piw * (h(b10) + h(b20)) + (1.0 - piw) * (h(b11) + h(b21))
    objective = np.where(feas, hx - hxw, np.inf)
    j = int(np.argmin(objective))
    pw = np.array([piw[j], 1.0 - piw[j]])
    channels = (
        ConditionalPmf(2, (2,), np.array([[1 - b10[j], b10[j]], [1 - b11[j], b11[j]]])),
        ConditionalPmf(2, (2,), np.array([[1 - b20[j], b20[j]], [1 - b21[j], b21[j]]])),
    )
    sol = _solution_from_mixture(p, pw, channels, "exhaustive-optimal")
    if independent is not None and independent.achieved_I < sol.achieved_I:
        return independent
    return sol


def _softmax(z, axis=-1):
    z = z - z.max(axis=axis, keepdims=True)
    e = np.exp(z)
    return e / e.sum(axis=axis, keepdims=True)


def _descent_solution(p: JointPmf, K: int, budget: SolveBudget):
    """Multi-restart penalized descent over q(w|x) logits.

    Objective (nats): I(X;W) + mu * [sum_i H(X_i|W) - H(X|W)], the second term
    being the conditional total correlation that vanishes exactly on the
    feasible set. The X-marginal equals p by construction.
    """
    px = p.mass.reshape(-1)
    sizes = p.alphabet_sizes
    n = len(sizes)

    def unpack_joint(z):
        qwgx = _softmax(z.reshape(px.size, K), axis=1)
        joint = px[:, None] * qwgx  # (x, w)
        return joint

    def objective(z, mu):
        joint = unpack_joint(z)
        qw = joint.sum(axis=0)
        hw = float(-xlogy(qw, qw).sum())
        hwx = float(-xlogy(joint, joint).sum()) - float(-xlogy(px, px).sum())
        i_xw = hw - hwx
        hxgw = float(-xlogy(joint, joint).sum()) - hw
        tc = -hxgw
        shaped = joint.reshape(sizes + (K,))
        for i in range(n):
            axes = tuple(a for a in range(n) if a != i)
            mi = shaped.sum(axis=axes)  # (|Xi|, K)
            tc += float(-xlogy(mi, mi).sum()) - hw
        return i_xw + mu * max(tc, 0.0)

    rng = np.random.default_rng(budget.seed)
    candidates = []
    for restart in range(budget.restarts):
        z = rng.normal(scale=2.0, size=px.size * K)
        mu = budget.mu_init
        for _ in range(budget.stages):
            result = minimize(
                objective,
                z,
                args=(mu,),
                method="L-BFGS-B",
                options={"maxiter": budget.maxiter},
            )
            z = result.x
            mu *= budget.mu_factor
        joint = unpack_joint(z)
        qw = joint.sum(axis=0)
        keep = qw > 1e-12
        qw_k = qw[keep] / qw[keep].sum()
        shaped = joint.reshape(sizes + (K,))
        channels = []
        for i in range(n):
            axes = tuple(a for a in range(n) if a != i)
            mi = shaped.sum(axis=axes).T  # (K, |Xi|)
            rows = mi[keep] / np.maximum(mi[keep].sum(axis=1, keepdims=True), 1e-300)
            channels.append(ConditionalPmf(int(keep.sum()), (sizes[i],), rows))
        sol = _solution_from_mixture(p, qw_k, channels, "local-restart-best")
        candidates.append((sol.achieved_I, sol.marginal_residual, restart, sol))
    feasible = [c for c in candidates if c[1] <= FEASIBILITY_TOL]
    if not feasible:
        best = min(candidates, key=lambda c: c[1])
        raise CommonInfoInfeasible(
            f"best restart residual {best[1]:.3e} exceeds {FEASIBILITY_TOL}"
        )
    feasible.sort(key=lambda c: (c[0], c[1], c[2]))
    return feasible[0][3]


def solve_common_info(
    p: JointPmf, K: int | None = None, budget: SolveBudget | None = None
) -> CommonInfoSolution:
    """Search for an auxiliary W of cardinality at most K.

    The returned ``achieved_I`` is always an upper bound on C(X) for that K;
    only the exhaustive 2x2 route is optimal up to grid resolution. The
    default K = prod(alphabet sizes) is a support-size heuristic; no general
    cardinality bound is known for the infimum.
    """
    budget = budget or SolveBudget()
    if K is None:
        K = int(np.prod(p.alphabet_sizes))
    if K < 1:
        raise ProbabilityError("cardinality bound must be >= 1")
    if K == 1:
        channels = tuple(
            ConditionalPmf(1, (s,), marginalize(p, [i]).mass[None, :])
            for i, s in enumerate(p.alphabet_sizes)
        )
        sol = _solution_from_mixture(p, np.array([1.0]), channels, "exhaustive-optimal")
        if sol.marginal_residual > FEASIBILITY_TOL:
            raise CommonInfoInfeasible(
                f"K=1 requires an independent source; residual {sol.marginal_residual:.3e}"
            )
        return sol
    if p.alphabet_sizes == (2, 2) and K == 2:
        return _exhaustive_2x2(p, budget)
    return _descent_solution(p, K, budget)
