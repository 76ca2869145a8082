"""Exact small-blocklength evaluation of the generator interpretation: a
common uniform message drives independent per-coordinate generators, and the
output law is scored against the i.i.d. target by normalized divergence.

Everything here is exact enumeration over the n-sequence space; Monte-Carlo
estimation is deliberately excluded because plug-in divergence estimates bias
the trend checks this module exists to support.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from .common_info import CommonInfoSolution
from .prob import LOG2, ConditionalPmf, JointPmf, ProbabilityError, SupportViolation

#: enumeration budget: (joint alphabet size)^n * codebook size
ENUMERATION_BUDGET = 50_000_000


class BudgetExceeded(RuntimeError):
    """The exact enumeration would exceed the state x codeword budget."""


@dataclass(frozen=True)
class GeneratorSpec:
    n: int
    M: int
    codebook: np.ndarray = field(repr=False)  # (M, n) symbols over the W alphabet
    channels: tuple[ConditionalPmf, ...]
    seed: int | None = None

    def __post_init__(self):
        cb = np.asarray(self.codebook, dtype=np.int64).reshape(self.M, self.n)
        k = self.channels[0].given_size
        if np.any(cb < 0) or np.any(cb >= k):
            raise ProbabilityError("codebook symbol outside the W alphabet")
        cb.setflags(write=False)
        object.__setattr__(self, "codebook", cb)


@dataclass(frozen=True)
class SynthesisResult:
    n: int
    M: int
    delta: float  # bits per symbol
    method: str = "exact"


def build_generator(
    sol: CommonInfoSolution,
    n: int,
    R0: float,
    seed: int = 0,
    mode: str = "random",
) -> GeneratorSpec:
    """Codebook of M = ceil(2^(n R0)) length-n W-sequences plus the solution's
    per-coordinate channels.

    ``mode="random"`` draws codewords i.i.d. per symbol from p(w) (the
    random-coding ensemble); ``mode="type"`` enumerates sequences of the type
    closest to p(w) deterministically for variance-free trend plots.
    """
    if n < 1:
        raise ProbabilityError("blocklength must be >= 1")
    if R0 < 0:
        raise ProbabilityError("common rate must be >= 0")
    M = max(1, math.ceil(2.0 ** (n * R0)))
    alphabet = int(np.prod([c.out_sizes[0] for c in sol.channels]))
    if float(alphabet) ** n * M > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"alphabet^n * M = {alphabet}^{n} * {M} exceeds {ENUMERATION_BUDGET}"
        )
    k = sol.pw.size
    if mode == "random":
        rng = np.random.default_rng(seed)
        codebook = rng.choice(k, size=(M, n), p=sol.pw)
    elif mode == "type":
        counts = np.floor(n * sol.pw).astype(int)
        while counts.sum() < n:
            counts[int(np.argmax(n * sol.pw - counts))] += 1
        base = np.repeat(np.arange(k), counts)
        perms = itertools.permutations(base)
        seen = []
        for perm in perms:
            if perm not in seen:
                seen.append(perm)
            if len(seen) >= M:
                break
        codebook = np.array([seen[i % len(seen)] for i in range(M)])
    else:
        raise ProbabilityError(f"unknown codebook mode {mode!r}")
    return GeneratorSpec(n=n, M=M, codebook=codebook, channels=sol.channels, seed=seed)


def _per_symbol_tables(gen: GeneratorSpec, p: JointPmf):
    """v[w, j] = prod_i p(x_i(j) | w) over flattened joint symbols j."""
    k = gen.channels[0].given_size
    sizes = tuple(c.out_sizes[0] for c in gen.channels)
    if sizes != p.alphabet_sizes:
        raise ProbabilityError("generator channels do not match the target alphabet")
    v = np.ones((k, 1))
    for ch in gen.channels:
        v = (v[:, :, None] * ch.rows[:, None, :]).reshape(k, -1)
    return v


def exact_delta(gen: GeneratorSpec, p: JointPmf) -> SynthesisResult:
    """Normalized divergence of the generator's output law from the i.i.d.
    target, by exact summation over all n-sequences of joint symbols."""
    n, m = gen.n, gen.M
    j = int(np.prod(p.alphabet_sizes))
    if float(j) ** n * m > ENUMERATION_BUDGET:
        raise BudgetExceeded(
            f"alphabet^n * M = {j}^{n} * {m} exceeds {ENUMERATION_BUDGET}"
        )
    v = _per_symbol_tables(gen, p)
    codewords, counts = np.unique(gen.codebook, axis=0, return_counts=True)
    q = np.zeros(j**n)
    for cw, cnt in zip(codewords, counts):
        t = v[cw[0]]
        for k in range(1, n):
            t = (t[:, None] * v[cw[k]][None, :]).reshape(-1)
        q += (cnt / m) * t
    pn = p.mass.reshape(-1)
    t = pn
    for _ in range(1, n):
        t = (t[:, None] * pn[None, :]).reshape(-1)
    pn_full = t
    if np.any((q > 0) & (pn_full == 0)):
        raise SupportViolation("generator output puts mass outside the target support")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(q > 0, q / np.where(pn_full > 0, pn_full, 1.0), 1.0)
        delta = float(xlogy(q, ratio).sum() / LOG2) / n
    return SynthesisResult(n=n, M=m, delta=max(delta, 0.0))
