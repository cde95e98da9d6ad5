"""Exact-arithmetic loop execution and falsification sampling.

The simulator is the ground-truth oracle used throughout the test suite:
every state and guard value is a Fraction, so sign decisions near zero are
exact. Default iteration budgets are capped because operand bit-sizes grow
with the iteration count.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import qmatrix
from .loopspec import LoopSpec

DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class RunResult:
    terminated: bool
    steps: int  # if terminated: guard held for all steps < n and failed at n
    trace: tuple | None = None  # optional per-step guard value tuples

    @property
    def budget_exceeded(self) -> bool:
        return not self.terminated


def simulate(spec: LoopSpec, x0, max_iter: int = DEFAULT_MAX_ITER, keep_trace: bool = False) -> RunResult:
    """Run the loop exactly from x0 for at most max_iter guard evaluations."""
    if len(x0) != spec.num_vars:
        raise ValueError("initial state has wrong dimension")
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    x = qmatrix.as_vector(x0)
    trace = [] if keep_trace else None
    for n in range(max_iter):
        vals = spec.guard_values(x)
        if trace is not None:
            trace.append(vals)
        if any(v <= 0 for v in vals):
            return RunResult(True, n, tuple(trace) if trace is not None else None)
        x = spec.step(x)
    return RunResult(False, max_iter, tuple(trace) if trace is not None else None)


def _structured_samples(spec: LoopSpec) -> list[tuple[Fraction, ...]]:
    n = spec.num_vars
    out = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        for s in (1, -1):
            out.append(tuple(Fraction(s if j == i else 0) for j in range(n)))
    out.append(tuple(Fraction(1) for _ in range(n)))
    out.extend(_eigvec_samples(spec))
    return out


def _eigvec_samples(spec: LoopSpec) -> list[tuple[Fraction, ...]]:
    """Rationalized numeric eigenvector directions (dominant behavior probes)."""
    import mpmath

    n = spec.num_vars
    out = []
    try:
        m = mpmath.matrix([[float(c) for c in row] for row in spec.matrix])
        _, ev = mpmath.eig(m)
        for j in range(n):
            for part in (lambda z: z.real, lambda z: z.imag):
                vec = [part(mpmath.mpc(ev[i, j])) for i in range(n)]
                scale = max(abs(v) for v in vec)
                if scale == 0:
                    continue
                rat = tuple(Fraction(float(v / scale)).limit_denominator(16) for v in vec)
                if any(rat):
                    out.append(rat)
                    out.append(tuple(-c for c in rat))
    except Exception:
        pass
    seen = set()
    uniq = []
    for v in out:
        if v not in seen:
            seen.add(v)
            uniq.append(v)
    return uniq


def falsify_search(
    spec: LoopSpec,
    samples: int = 200,
    per_sample_iters: int = 1000,
    seed: int = 0,
) -> list[tuple[tuple[Fraction, ...], int]]:
    """Sample initial states and return the longest-surviving candidates.

    Deterministic for a fixed seed. Survivors (budget exceeded) come first;
    the list is sorted by survival length, then by discovery order.
    """
    rng = random.Random(seed)
    n = spec.num_vars
    cands = _structured_samples(spec)
    while len(cands) < samples:
        cands.append(
            tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(n))
        )
    cands = cands[:samples]
    results = []
    for idx, x0 in enumerate(cands):
        r = simulate(spec, x0, per_sample_iters)
        survived = per_sample_iters if not r.terminated else r.steps
        results.append((x0, survived, idx))
    results.sort(key=lambda t: (-t[1], t[2]))
    return [(x0, steps) for x0, steps, _ in results]
