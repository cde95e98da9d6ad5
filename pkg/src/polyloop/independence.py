"""Rational independence of phase angles via heights and Baker's bound.

Given unit algebraic numbers a_j = e^(2*pi*i*b_j) with irrational b_j, the b_j
are rationally dependent iff some nonzero integer vector n satisfies
prod a_j^{n_j} = 1. Baker's bound on linear forms in logarithms turns the
search into a finite enumeration: the bound is computed from certified upper
bounds (heights, degrees), a relation candidate from PSLQ is accepted only
after the exact power-product check, and `ProvedIndependent` is emitted only
when the full enumeration box was exhausted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import lcm

import mpmath

from . import qpoly
from .algebraic import AlgebraicNumber, ONE, alg_equal, is_root_of_unity, power
from .intervals import Rect, rect_pow

# rational upper bound on pi (Metius)
PI_UPPER = Fraction(355, 113)


@dataclass(frozen=True)
class IndependenceResult:
    status: str  # "independent" | "dependent" | "unresolved"
    relation: tuple[int, ...] | None = None
    detail: str = ""

    @property
    def proved_independent(self):
        return self.status == "independent"

    @property
    def proved_dependent(self):
        return self.status == "dependent"


def height_interval(a: AlgebraicNumber, prec_bits: int = 64) -> tuple[Fraction, Fraction]:
    """Certified enclosure of the absolute logarithmic height h(a)."""
    if is_root_of_unity(a):
        return Fraction(0), Fraction(0)
    mp = a.minpoly
    d = qpoly.degree(mp)
    if d == 1:
        q = -mp[0]
        if q == 0:
            return Fraction(0), Fraction(0)
        lo, hi = _log_interval(Fraction(max(abs(q.numerator), abs(q.denominator))), prec_bits)
        return max(lo, Fraction(0)), max(hi, Fraction(0))
    _, ints = qpoly.content_int(mp)
    lead = abs(ints[-1])
    from .algebraic import isolate_roots

    lo_total, hi_total = _log_interval(Fraction(lead), prec_bits) if lead > 1 else (Fraction(0), Fraction(0))
    for r in isolate_roots(mp):
        r.refined(Fraction(1, 1 << prec_bits))
        m2 = r.box.abs2()
        if m2.hi <= 1:
            continue
        llo, lhi = _log_interval(m2.lo, prec_bits) if m2.lo > 0 else (None, None)
        _, uhi = _log_interval(m2.hi, prec_bits)
        lo_total += max(Fraction(0), llo / 2 if llo is not None else Fraction(0))
        hi_total += max(Fraction(0), uhi / 2)
    return lo_total / d, hi_total / d


def _log_interval(q: Fraction, prec_bits: int) -> tuple[Fraction, Fraction]:
    """Certified rational bounds on ln(q) for q > 0."""
    if q <= 0:
        raise ValueError("log of nonpositive")
    old = mpmath.iv.prec
    mpmath.iv.prec = max(prec_bits, 64)
    try:
        x = mpmath.iv.mpf(q.numerator) / q.denominator
        v = mpmath.iv.log(x)
        from .algebraic import _iv_bounds

        return _iv_bounds(v)
    finally:
        mpmath.iv.prec = old


def baker_bound(m: int, degree_upper: int, log_as: list[Fraction]) -> list[int]:
    """Per-index enumeration bounds from Baker's estimate.

    m = number of logarithms (the d phases plus 2*pi*i), degree_upper an upper
    bound on [Q(a_1..a_m):Q], log_as the m certified values log A_j >= 1.
    Returns ceil((11 (m-1) D^3)^(m-1) * prod log A_j / log A_k) per k.
    """
    if m < 2:
        raise ValueError("Baker's bound needs m >= 2")
    if any(la < 1 for la in log_as) or len(log_as) != m:
        raise ValueError("each log A_j must be >= 1 and one per logarithm")
    factor = (11 * (m - 1) * degree_upper**3) ** (m - 1)
    total = Fraction(1)
    for la in log_as:
        total *= la
    out = []
    for k in range(m):
        b = factor * total / log_as[k]
        out.append(-(-b.numerator // b.denominator))
    return out


def verify_relation(phases: list[AlgebraicNumber], nvec: tuple[int, ...]) -> bool:
    """Exact truth of prod phases_k^{n_k} == 1."""
    if len(nvec) != len(phases):
        raise ValueError("relation length mismatch")
    if _interval_excludes_one(phases, nvec):
        return False
    acc = ONE
    for a, n in zip(phases, nvec):
        if n != 0:
            acc = acc * power(a, n)
    return alg_equal(acc, ONE)


def _interval_excludes_one(phases, nvec, bits: int = 160) -> bool:
    """Certified quick rejection: interval arithmetic shows the product != 1."""
    acc = Rect.point(1)
    for a, n in zip(phases, nvec):
        if n == 0:
            continue
        a.refined(Fraction(1, 1 << bits))
        b = a.box if n > 0 else a.box.inverse() if not a.box.abs2().contains(0) else None
        if b is None:
            return False
        acc = acc * rect_pow(b, abs(n))
    return not acc.contains_point(Fraction(1), Fraction(0))


def _pslq_candidate(phases: list[AlgebraicNumber]) -> tuple[int, ...] | None:
    """Integer-relation pre-search on the numeric arguments (advisory only)."""
    with mpmath.workprec(320):
        vals = []
        for a in phases:
            a.refined(Fraction(1, 1 << 300))
            re, im = a.box.center
            z = mpmath.mpc(mpmath.mpf(re.numerator) / re.denominator, mpmath.mpf(im.numerator) / im.denominator)
            vals.append(mpmath.arg(z) / (2 * mpmath.pi))
        vals.append(mpmath.mpf(1))
        try:
            rel = mpmath.pslq(vals, maxcoeff=10**6, maxsteps=2000)
        except Exception:
            return None
    if rel is None or all(c == 0 for c in rel[:-1]):
        return None
    return tuple(int(c) for c in rel[:-1])


def check_independence(phases: list[AlgebraicNumber], cap: int = 50) -> IndependenceResult:
    """Decide rational independence of the arguments of the given unit numbers.

    Searches integer vectors inside the Baker box (clipped at `cap` per index)
    for an exact multiplicative relation. Only a fully exhausted Baker box
    yields ProvedIndependent; a clipped, relation-free search is Unresolved.
    """
    d = len(phases)
    if d == 0:
        return IndependenceResult("independent", detail="no phases")
    if d == 1:
        # a single irrational angle is rationally independent by definition
        return IndependenceResult("independent", detail="single irrational phase")

    cand = _pslq_candidate(phases)
    if cand is not None and any(cand) and verify_relation(phases, cand):
        return IndependenceResult("dependent", relation=cand, detail="pslq candidate verified")

    degs = [a.degree for a in phases]
    d_up = 1
    for x in degs:
        d_up *= x
    d_low = lcm(*degs) if degs else 1
    log_as = []
    for a in phases:
        _, h_hi = height_interval(a)
        log_as.append(max(Fraction(1), h_hi, PI_UPPER / d_low))
    log_as.append(max(Fraction(1), 2 * PI_UPPER / d_low))
    bounds = baker_bound(d + 1, d_up, log_as)[:d]

    limits = [min(b, cap) for b in bounds]
    exhaustive = all(l == b for l, b in zip(limits, bounds))

    for shell in range(1, max(limits) + 1):
        ranges = [range(-min(shell, l), min(shell, l) + 1) for l in limits]
        for vec in product(*ranges):
            if max(abs(v) for v in vec) != shell:
                continue
            first = next((v for v in vec if v != 0), 0)
            if first < 0:
                continue  # relations come in +- pairs
            if verify_relation(phases, vec):
                return IndependenceResult("dependent", relation=vec, detail="enumerated relation")
    if exhaustive:
        return IndependenceResult("independent", detail="Baker box exhausted")
    return IndependenceResult(
        "unresolved", detail=f"search capped at {cap}; Baker bounds {bounds}"
    )
