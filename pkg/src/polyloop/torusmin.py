"""Certified minimization of guard coefficients over the phase torus.

For a fixed rational X0, a coefficient C0 + C1 + C2(angles) + (-1)^n Csgn has
its infimum over iterations equal to its minimum over the product of circles
(one per independent phase) times {+-1}; the minimum is located by interval
branch-and-bound over angle boxes. Bounds come from outward-rounded interval
arithmetic (mpmath.iv) sharpened by a centered form, so the enclosure is
sound; eps only controls how far the search refines it.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import mpmath

from .algebraic import _iv_bounds
from .expansion import CoeffTriple, PhaseBasis


@dataclass(frozen=True)
class MinResult:
    lo: Fraction
    hi: Fraction  # certified enclosure of the true minimum
    converged: bool  # width <= eps reached within budget

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def _iv_from_fraction(q: Fraction):
    return mpmath.iv.mpf(q.numerator) / q.denominator


def _iv_hull(lo: Fraction, hi: Fraction):
    a = _iv_from_fraction(lo)
    b = _iv_from_fraction(hi)
    return mpmath.iv.mpf([a.a, b.b])


class _Problem:
    """iv-world view of one coefficient at a fixed X0 (built once)."""

    def __init__(self, trip: CoeffTriple, basis: PhaseBasis, x0, prec_bits: int):
        from .expansion import _xp_eval_box

        prec = Fraction(1, 1 << prec_bits)
        const = (_xp_eval_box(trip.c0, x0, prec) + _xp_eval_box(trip.c1, x0, prec)).re
        self.const = _iv_hull(const.lo, const.hi)
        if trip.sign:
            s = _xp_eval_box(trip.sign, x0, prec).re
            # z = +-1 contribution: lower bound of min_z(z*s), and the largest
            # |s| can be while still bounding an achievable value from above
            self.sign_min = _iv_from_fraction(min(s.lo, -s.hi))
            abs_lo = Fraction(0) if s.lo <= 0 <= s.hi else min(abs(s.lo), abs(s.hi))
            self.sign_abs_lo = _iv_from_fraction(abs_lo)
        else:
            self.sign_min = self.sign_abs_lo = None

        used = sorted({b for vec in trip.c2 for b, e in enumerate(vec) if e != 0})
        gcds: dict[int, int] = {}
        for vec in trip.c2:
            for b, e in enumerate(vec):
                if e:
                    gcds[b] = gcd(gcds.get(b, 0), abs(e))
        self.entries = []
        for vec, (cosp, sinp) in sorted(trip.c2.items()):
            rvec = tuple(vec[b] // gcds[b] for b in used)
            cv = _xp_eval_box(cosp, x0, prec).re
            sv = _xp_eval_box(sinp, x0, prec).re
            self.entries.append((rvec, _iv_hull(cv.lo, cv.hi), _iv_hull(sv.lo, sv.hi)))
        self.dims = len(used)

    def eval_iv(self, box):
        """Interval value over an angle box, sharpened by the centered form."""
        direct = self.const
        for vec, cv, sv in self.entries:
            arg = mpmath.iv.mpf(0)
            for m, ang in zip(vec, box):
                if m:
                    arg += ang * m
            direct += cv * mpmath.iv.cos(arg) + sv * mpmath.iv.sin(arg)
        if self.dims and any(b.delta > 0 for b in box):
            centered = self._centered(box)
            lo = max(direct.a, centered.a)
            hi = min(direct.b, centered.b)
            if lo <= hi:
                return mpmath.iv.mpf([lo, hi])
        out = direct
        return out

    def _centered(self, box):
        mids = [mpmath.iv.mpf(b.mid) for b in box]
        val = self.const
        derivs = [mpmath.iv.mpf(0) for _ in range(self.dims)]
        for vec, cv, sv in self.entries:
            argm = mpmath.iv.mpf(0)
            argb = mpmath.iv.mpf(0)
            for m, mid, ang in zip(vec, mids, box):
                if m:
                    argm += mid * m
                    argb += ang * m
            val += cv * mpmath.iv.cos(argm) + sv * mpmath.iv.sin(argm)
            dcos, dsin = mpmath.iv.cos(argb), mpmath.iv.sin(argb)
            for i, m in enumerate(vec):
                if m:
                    derivs[i] += m * (sv * dcos - cv * dsin)
        for i, b in enumerate(box):
            val += derivs[i] * (b - mpmath.iv.mpf(b.mid))
        return val

    def lower_with_sign(self, v):
        """Sound lower bound on min over z of v + z*s."""
        if self.sign_min is None:
            return v
        return v + self.sign_min

    def upper_with_sign(self, b):
        """Sound upper bound on an achievable min-over-z value at a point
        whose plain value is bounded above by b."""
        if self.sign_abs_lo is None:
            return b
        return (mpmath.iv.mpf(b) - self.sign_abs_lo).b


def torus_min_certify(
    trip: CoeffTriple,
    basis: PhaseBasis,
    x0,
    eps=Fraction(1, 10**9),
    max_nodes: int = 100_000,
    prec_bits: int = 80,
) -> MinResult:
    """Certified interval around min over the torus (and sign) of the
    coefficient evaluated at rational X0."""
    eps = Fraction(eps)
    old_prec = mpmath.iv.prec
    mpmath.iv.prec = max(prec_bits, 64)
    try:
        prob = _Problem(trip, basis, x0, prec_bits)
        if prob.dims == 0:
            v = prob.const
            lo = _iv_bounds(prob.lower_with_sign(v))[0]
            hi = _iv_bounds(mpmath.iv.mpf(prob.upper_with_sign(v.b)))[1]
            return MinResult(lo, hi, True)

        two_pi = 2 * mpmath.iv.pi
        init = [mpmath.iv.mpf([0, two_pi.b]) for _ in range(prob.dims)]

        def point_upper(box) -> object:
            pt = [mpmath.iv.mpf(b.mid) for b in box]
            v = prob.const
            for vec, cv, sv in prob.entries:
                arg = mpmath.iv.mpf(0)
                for m, p in zip(vec, pt):
                    if m:
                        arg += p * m
                v += cv * mpmath.iv.cos(arg) + sv * mpmath.iv.sin(arg)
            return prob.upper_with_sign(v.b)

        best_up = point_upper(init)
        v0 = prob.lower_with_sign(prob.eval_iv(init))
        heap = [(mpmath.mpf(v0.a), 0, init)]
        counter = 1
        global_lo = mpmath.mpf(v0.a)
        nodes = 0
        eps_mpf = mpmath.mpf(eps.numerator) / eps.denominator
        while heap and nodes < max_nodes:
            lo, _, box = heapq.heappop(heap)
            global_lo = lo
            if best_up - global_lo <= eps_mpf:
                break
            nodes += 1
            dim = max(range(prob.dims), key=lambda i: box[i].delta)
            mid = box[dim].mid
            for half in (mpmath.iv.mpf([box[dim].a, mid]), mpmath.iv.mpf([mid, box[dim].b])):
                nb = list(box)
                nb[dim] = half
                v = prob.lower_with_sign(prob.eval_iv(nb))
                up = point_upper(nb)
                if up < best_up:
                    best_up = up
                if mpmath.mpf(v.a) <= best_up:
                    heapq.heappush(heap, (mpmath.mpf(v.a), counter, nb))
                    counter += 1
        if heap:
            global_lo = min([global_lo] + [h[0] for h in heap])
        lo_fr = _iv_bounds(mpmath.iv.mpf(global_lo))[0]
        hi_fr = _iv_bounds(mpmath.iv.mpf(best_up))[1]
        return MinResult(lo_fr, hi_fr, hi_fr - lo_fr <= eps)
    finally:
        mpmath.iv.prec = old_prec
