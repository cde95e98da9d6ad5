"""Exact complex algebraic numbers: isolation, refinement, field arithmetic,
moduli, comparisons, and root-of-unity classification.

Representation: an irreducible monic minimal polynomial over Q plus a rational
rectangle isolating exactly one of its complex roots. The represented number
never changes after construction; the rectangle is a precision cache that only
shrinks (monotone refinement), so values are safe to share.

Numeric seeds come from mpmath, but every claim is backed by an exact rational
certificate: a residual bound |g(z)|^(1/deg) locates a root of the monic g
within a disk around z, boxes are kept pairwise disjoint by exact comparisons,
and equality/ordering decisions bottom out in Mahler's root-separation bound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import qpoly
from .intervals import Interval, Rect, eval_poly_rect, nth_root_upper

_REFINE_TRIES = 12


def _raw_mpf_to_fraction(t) -> Fraction:
    sign, man, exp, bc = t
    if man == 0:
        if exp == 0:
            return Fraction(0)
        raise ValueError("cannot convert nonfinite value")
    v = Fraction(man) * Fraction(2) ** exp
    return -v if sign else v


def _mpf_to_fraction(x) -> Fraction:
    # read the raw (sign, man, exp, bc) tuple: no re-rounding at ambient precision
    t = x._mpf_ if hasattr(x, "_mpf_") else mpmath.mpf(x)._mpf_
    return _raw_mpf_to_fraction(t)


def _iv_bounds(x) -> tuple[Fraction, Fraction]:
    """Exact rational endpoints of an mpmath.iv interval value."""
    a, b = x._mpi_
    return _raw_mpf_to_fraction(a), _raw_mpf_to_fraction(b)


@dataclass(eq=False)
class AlgebraicNumber:
    """An exact complex algebraic number (minimal polynomial + isolating box)."""

    minpoly: qpoly.Coeffs
    _box: Rect = field(repr=False)

    @property
    def box(self) -> Rect:
        return self._box

    @property
    def degree(self) -> int:
        return qpoly.degree(self.minpoly)

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"not rational: {self}")
        return -self.minpoly[0]

    @property
    def is_zero(self) -> bool:
        return self.is_rational and self.minpoly[0] == 0

    @property
    def is_real(self) -> bool:
        # canonical constructions give real roots exact zero imaginary boxes
        return self._box.im.lo == 0 and self._box.im.hi == 0

    def interval(self) -> Rect:
        return self._box

    def refined(self, eps) -> "AlgebraicNumber":
        """Same number with box width (both axes) <= eps. Boxes only shrink."""
        eps = Fraction(eps)
        if self._box.width > eps:
            self._box = _refine_box(self.minpoly, self._box, eps)
        return self

    def conj(self) -> "AlgebraicNumber":
        if self.is_real:
            return self
        return AlgebraicNumber(self.minpoly, self._box.conj())

    # -- operators (exact; see arith()) --

    def __add__(self, other):
        return arith(self, _coerce(other), "+")

    def __radd__(self, other):
        return arith(_coerce(other), self, "+")

    def __sub__(self, other):
        return arith(self, _coerce(other), "-")

    def __rsub__(self, other):
        return arith(_coerce(other), self, "-")

    def __mul__(self, other):
        return arith(self, _coerce(other), "*")

    def __rmul__(self, other):
        return arith(_coerce(other), self, "*")

    def __truediv__(self, other):
        return arith(self, _coerce(other), "/")

    def __rtruediv__(self, other):
        return arith(_coerce(other), self, "/")

    def __neg__(self):
        return negate(self)

    def __pow__(self, k: int):
        return power(self, k)

    def __repr__(self):
        if self.is_rational:
            return f"Alg({self.as_fraction()})"
        return f"Alg(deg {self.degree} root near {float(self._box.re.mid):.6g}{float(self._box.im.mid):+.6g}i)"

    def key(self) -> tuple:
        """Deterministic sort key (refines to pin the ordering)."""
        self.refined(Fraction(1, 1 << 16))
        return (self._box.re.mid, self._box.im.mid)


def from_rational(q) -> AlgebraicNumber:
    q = Fraction(q)
    return AlgebraicNumber(qpoly.qp(-q, 1), Rect.point(q))


ZERO = from_rational(0)
ONE = from_rational(1)


def _coerce(x) -> AlgebraicNumber:
    if isinstance(x, AlgebraicNumber):
        return x
    return from_rational(x)


# -- root isolation -----------------------------------------------------------


def _certified_upper_roots(g: qpoly.Coeffs, n_upper: int, real_boxes: list[Rect]) -> list[Rect]:
    """Certified boxes for the upper-half-plane roots of irreducible monic g.

    Seeds from mpmath; each box carries the exact residual certificate
    (a root lies within |g(z)|^(1/d) of the evaluated rational point) with a
    2x safety margin so the tracked root stays strictly interior.
    """
    d = qpoly.degree(g)
    if n_upper == 0:
        return []
    dps = 40 + 5 * d
    for _ in range(_REFINE_TRIES):
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(g)]
            try:
                roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=120)
            except mpmath.libmp.NoConvergence:
                dps *= 2
                continue
            cand = [z for z in roots if mpmath.im(z) > 0]
        if len(cand) != n_upper:
            dps *= 2
            continue
        boxes = []
        ok = True
        for z in cand:
            zr, zi = _mpf_to_fraction(mpmath.re(z)), _mpf_to_fraction(mpmath.im(z))
            vr, vi = qpoly.eval_complex(g, zr, zi)
            r = nth_root_upper(vr * vr + vi * vi, 2 * d)
            m = 2 * r
            if zi - m <= 0:
                ok = False
                break
            boxes.append(Rect(Interval(zr - m, zr + m), Interval(zi - m, zi + m)))
        if ok:
            all_boxes = boxes + [b.conj() for b in boxes] + real_boxes
            for i in range(len(all_boxes)):
                for j in range(i + 1, len(all_boxes)):
                    if not all_boxes[i].disjoint(all_boxes[j]):
                        ok = False
        if ok:
            return boxes
        dps *= 2
    raise RuntimeError(f"failed to certify complex roots of degree-{d} polynomial")


def _roots_of_irreducible(g: qpoly.Coeffs) -> list[AlgebraicNumber]:
    g = qpoly.monic(g)
    d = qpoly.degree(g)
    if d == 1:
        return [from_rational(-g[0])]
    real_ivs = qpoly.isolate_real_roots(g)
    real_boxes = [Rect(Interval(lo, hi), Interval.point(0)) for lo, hi in real_ivs]
    n_upper = (d - len(real_ivs)) // 2
    upper = _certified_upper_roots(g, n_upper, real_boxes)
    boxes = real_boxes + upper + [b.conj() for b in upper]
    roots = [AlgebraicNumber(g, b) for b in boxes]
    roots.sort(key=lambda a: (a.box.re.mid, a.box.im.mid))
    return roots


def isolate_roots(p: qpoly.Coeffs) -> list[AlgebraicNumber]:
    """One AlgebraicNumber per distinct complex root of p, boxes pairwise disjoint."""
    if qpoly.is_zero(p):
        raise ValueError("cannot isolate roots of the zero polynomial")
    _, factors = qpoly.factor(p)
    roots: list[AlgebraicNumber] = []
    for g, _mult in factors:
        roots.extend(_roots_of_irreducible(g))
    # roots of distinct irreducible factors are distinct numbers: refine until disjoint
    changed = True
    while changed:
        changed = False
        for i in range(len(roots)):
            for j in range(i + 1, len(roots)):
                a, b = roots[i], roots[j]
                if tuple(a.minpoly) == tuple(b.minpoly):
                    continue  # same-factor boxes are disjoint by construction
                if not a.box.disjoint(b.box):
                    w = max(a.box.width, b.box.width) / 4
                    a.refined(w)
                    b.refined(w)
                    changed = True
    roots.sort(key=lambda a: (a.box.re.mid, a.box.im.mid))
    return roots


def _refine_box(g: qpoly.Coeffs, box: Rect, eps: Fraction) -> Rect:
    d = qpoly.degree(g)
    if d == 1:
        return box
    if box.is_real_line():
        lo, hi = qpoly.refine_real_root(g, box.re.lo, box.re.hi, eps)
        return Rect(Interval(lo, hi), Interval.point(0))
    # interval Newton first: exact, quadratic near a simple root
    b = box
    gp = qpoly.derivative(g)
    eps_bits = max(8, _inv_bits(eps) + 8)
    for _ in range(96):
        if b.width <= eps:
            return b
        nb = _newton_step(g, gp, b, eps_bits)
        if nb is None or nb.width > b.width * Fraction(3, 4):
            break
        b = nb
    if b.width <= eps:
        return b
    return _refine_box_numeric(g, b, eps)


def _inv_bits(eps: Fraction) -> int:
    """bit length of 1/eps, for choosing dyadic rounding grids."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    inv = Fraction(1) / eps
    return (inv.numerator // inv.denominator).bit_length() + 1


def _newton_step(g, gp, b: Rect, eps_bits: int) -> Rect | None:
    # dyadic center keeps exact evaluation cheap
    bits = min(max(8, _inv_bits(b.width) + 8) if b.width > 0 else eps_bits, 4 * eps_bits)
    cb = b.round_out(bits)
    cre, cim = cb.center
    dv = eval_poly_rect(gp, cb)
    if dv.abs2().contains(0):
        return None
    vr, vi = qpoly.eval_complex(g, cre, cim)
    quot = Rect(Interval.point(vr), Interval.point(vi)) / dv
    n = (Rect(Interval.point(cre), Interval.point(cim)) - quot).round_out(2 * bits)
    # intersect with b; the tracked root lies in both
    re = Interval(max(n.re.lo, b.re.lo), min(n.re.hi, b.re.hi)) if n.re.intersects(b.re) else None
    im = Interval(max(n.im.lo, b.im.lo), min(n.im.hi, b.im.hi)) if n.im.intersects(b.im) else None
    if re is None or im is None:
        return None
    return Rect(re, im)


def _refine_box_numeric(g: qpoly.Coeffs, box: Rect, eps: Fraction) -> Rect:
    d = qpoly.degree(g)
    dps = 60 + 5 * d
    cre, cim = box.center
    for _ in range(_REFINE_TRIES):
        with mpmath.workdps(dps):
            f = lambda z: mpmath.polyval([mpmath.mpf(c.numerator) / c.denominator for c in reversed(g)], z)
            try:
                z = mpmath.findroot(f, mpmath.mpc(float(cre), float(cim)), maxsteps=200)
            except (ValueError, ZeroDivisionError, mpmath.libmp.NoConvergence):
                dps *= 2
                continue
            zr, zi = _mpf_to_fraction(mpmath.re(z)), _mpf_to_fraction(mpmath.im(z))
        vr, vi = qpoly.eval_complex(g, zr, zi)
        r = nth_root_upper(vr * vr + vi * vi, 2 * d)
        cand = Rect(Interval(zr - r, zr + r), Interval(zi - r, zi + r))
        if 2 * r <= eps and box.contains_rect(cand):
            return cand
        dps *= 2
    raise RuntimeError(f"box refinement failed for degree-{d} minimal polynomial")


def refine(a: AlgebraicNumber, eps) -> AlgebraicNumber:
    """Spec-facing refinement: same number, box width <= eps in both axes."""
    return a.refined(eps)


# -- equality and ordering ----------------------------------------------------


def alg_equal(a: AlgebraicNumber, b: AlgebraicNumber) -> bool:
    """Exact equality of represented numbers."""
    if a is b:
        return True
    if tuple(a.minpoly) != tuple(b.minpoly):
        return False
    if a.is_rational:
        return True  # same degree-1 minpoly pins the value
    sep = qpoly.root_separation_bound(a.minpoly)
    a.refined(sep / 4)
    b.refined(sep / 4)
    return not a.box.disjoint(b.box)


def compare_real(a: AlgebraicNumber, b: AlgebraicNumber) -> int:
    """Exact trichotomy on real algebraic numbers: -1, 0, or 1."""
    if not (a.is_real and b.is_real):
        raise ValueError("compare_real requires real numbers")
    if alg_equal(a, b):
        return 0
    eps = Fraction(1, 16)
    while not a.box.re.disjoint(b.box.re):
        a.refined(eps)
        b.refined(eps)
        eps /= 16
    return -1 if a.box.re.hi < b.box.re.lo else 1


def sign_real(a: AlgebraicNumber) -> int:
    return compare_real(a, ZERO)


def is_real_exact(a: AlgebraicNumber) -> bool:
    """Realness test that does not rely on the box invariant."""
    if a.is_real:
        return True
    if a.box.im.lo > 0 or a.box.im.hi < 0:
        return False
    return alg_equal(a, a.conj())


def as_real(a: AlgebraicNumber) -> AlgebraicNumber:
    """Rebox a known-real number onto the real line (raises if not real)."""
    if a.is_real:
        return a
    if a.box.im.lo > 0 or a.box.im.hi < 0:
        raise ValueError("value is not real")
    hits = [r for r in _roots_of_irreducible(a.minpoly) if r.is_real and not r.box.disjoint(a.box)]
    while len(hits) > 1:
        for r in hits:
            r.refined(r.box.width / 4)
        a.refined(a.box.width / 4 if a.box.width > 0 else Fraction(1, 1 << 30))
        hits = [r for r in hits if not r.box.disjoint(a.box)]
    if not hits:
        raise ValueError("value is not real")
    return hits[0]


# -- arithmetic ---------------------------------------------------------------


def negate(a: AlgebraicNumber) -> AlgebraicNumber:
    if a.is_rational:
        return from_rational(-a.as_fraction())
    return AlgebraicNumber(qpoly.monic(qpoly.compose_neg(a.minpoly)), -a.box)


def inverse(a: AlgebraicNumber) -> AlgebraicNumber:
    if a.is_zero:
        raise ZeroDivisionError("inverse of zero")
    if a.is_rational:
        return from_rational(1 / a.as_fraction())
    mp = qpoly.monic(qpoly.reverse(a.minpoly))
    eps = Fraction(1, 16)
    while a.box.abs2().contains(0):
        a.refined(eps)
        eps /= 16
    return AlgebraicNumber(mp, a.box.inverse())


def _shift_rational(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    if q == 0:
        return a
    return AlgebraicNumber(qpoly.compose_shift(a.minpoly, -q), Rect(a.box.re.shift(q), a.box.im))


def _scale_rational(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    if q == 0:
        return ZERO
    if q == 1:
        return a
    mp = qpoly.monic(qpoly.compose_scale(a.minpoly, Fraction(1, 1) / q))
    return AlgebraicNumber(mp, a.box.scale(q))


class _ArithContext:
    """Adaptive refiner for binary operations: tracks operand boxes and the
    induced result rectangle, shrinking on demand during factor selection."""

    def __init__(self, a: AlgebraicNumber, b: AlgebraicNumber, op: str):
        self.a, self.b, self.op = a, b, op
        self.eps = Fraction(1, 1 << 8)

    def rect(self) -> Rect:
        a, b = self.a.box, self.b.box
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        raise AssertionError(self.op)

    def shrink(self):
        self.a.refined(self.eps)
        self.b.refined(self.eps)
        self.eps /= 16


def arith(a: AlgebraicNumber, b: AlgebraicNumber, op: str) -> AlgebraicNumber:
    """Exact +, -, *, / on algebraic numbers."""
    if op == "/":
        return arith(a, inverse(b), "*")
    if a.is_rational and b.is_rational:
        qa, qb = a.as_fraction(), b.as_fraction()
        return from_rational(qa + qb if op == "+" else qa - qb if op == "-" else qa * qb)
    # rational fast paths keep minimal polynomials exact without factoring
    if b.is_rational:
        q = b.as_fraction()
        if op == "+":
            return _shift_rational(a, q)
        if op == "-":
            return _shift_rational(a, -q)
        return _scale_rational(a, q)
    if a.is_rational:
        if op == "+":
            return _shift_rational(b, a.as_fraction())
        if op == "-":
            return negate(_shift_rational(b, -a.as_fraction()))
        return _scale_rational(b, a.as_fraction())
    if op == "+":
        res = qpoly.resultant_sum(a.minpoly, b.minpoly)
    elif op == "-":
        return arith(a, negate(b), "+")
    else:
        res = qpoly.resultant_prod(a.minpoly, b.minpoly)
    if qpoly.is_zero(res):
        raise AssertionError("degenerate resultant")
    _, factors = qpoly.factor(res)
    ctx = _ArithContext(a, b, op)
    while True:
        rect = ctx.rect()
        cands = [g for g, _ in factors if eval_poly_rect(g, rect).abs2().contains(0)]
        if len(cands) == 1:
            g = cands[0]
            if qpoly.degree(g) == 1:
                return from_rational(-g[0])
            return _select_single_root(g, ctx)
        ctx.shrink()


def _select_single_root(g: qpoly.Coeffs, ctx: _ArithContext) -> AlgebraicNumber:
    roots = _roots_of_irreducible(g)
    while True:
        rect = ctx.rect()
        hits = [r for r in roots if not r.box.disjoint(rect)]
        if len(hits) == 1:
            r = hits[0]
            re = Interval(max(r.box.re.lo, rect.re.lo), min(r.box.re.hi, rect.re.hi))
            im = Interval(max(r.box.im.lo, rect.im.lo), min(r.box.im.hi, rect.im.hi))
            return AlgebraicNumber(r.minpoly, Rect(re, im))
        w = min(r.box.width for r in hits) / 4
        for r in hits:
            r.refined(w)
        ctx.shrink()


def eval_rational_poly(a: AlgebraicNumber, coords: qpoly.Coeffs) -> AlgebraicNumber:
    """Exact value of a rational-coefficient polynomial at a.

    This is the bridge out of number-field coordinates: an element of Q(a)
    written as a polynomial in a becomes a standalone AlgebraicNumber.
    """
    coords = qpoly.normalize(coords)
    if qpoly.degree(coords) <= 0:
        return from_rational(coords[0] if coords else Fraction(0))
    if a.is_rational:
        return from_rational(qpoly.eval_at(coords, a.as_fraction()))
    if qpoly.degree(coords) == 1:
        return _shift_rational(_scale_rational(a, coords[1]), coords[0])
    coords = qpoly.divmod_poly(coords, a.minpoly)[1]
    if qpoly.degree(coords) <= 0:
        return from_rational(coords[0] if coords else Fraction(0))
    if qpoly.degree(coords) == 1:
        return _shift_rational(_scale_rational(a, coords[1]), coords[0])
    import sympy

    x, y = sympy.symbols("x y")
    gy = qpoly.to_sympy(a.minpoly, y)
    cy = sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(coords))
    res = sympy.Poly(sympy.resultant(gy, sympy.Poly(x - cy, y), y), x, domain="QQ")
    rp = qpoly.from_sympy(res)
    _, factors = qpoly.factor(rp)
    eps = Fraction(1, 1 << 8)
    while True:
        rect = eval_poly_rect(coords, a.box)
        cands = [g for g, _ in factors if eval_poly_rect(g, rect).abs2().contains(0)]
        if len(cands) == 1:
            g = cands[0]
            if qpoly.degree(g) == 1:
                return from_rational(-g[0])
            roots = _roots_of_irreducible(g)
            hits = [r for r in roots if not r.box.disjoint(rect)]
            while len(hits) > 1:
                for r in hits:
                    r.refined(rect.width / 4)
                a.refined(eps)
                eps /= 16
                rect = eval_poly_rect(coords, a.box)
                hits = [r for r in hits if not r.box.disjoint(rect)]
            if len(hits) == 1:
                r = hits[0]
                re = Interval(max(r.box.re.lo, rect.re.lo), min(r.box.re.hi, rect.re.hi))
                im = Interval(max(r.box.im.lo, rect.im.lo), min(r.box.im.hi, rect.im.hi))
                return AlgebraicNumber(r.minpoly, Rect(re, im))
        a.refined(eps)
        eps /= 16


def power(a: AlgebraicNumber, k: int) -> AlgebraicNumber:
    if k < 0:
        return power(inverse(a), -k)
    out = ONE
    b = a
    while k:
        if k & 1:
            out = arith(out, b, "*")
        b = arith(b, b, "*")
        k >>= 1
    return out


def modulus(a: AlgebraicNumber) -> AlgebraicNumber:
    """|a| as a real nonnegative algebraic number."""
    if a.is_zero:
        return ZERO
    if a.is_rational:
        return from_rational(abs(a.as_fraction()))
    if a.is_real:
        return a if sign_real(a) > 0 else negate(a)
    t = arith(a, a.conj(), "*")  # |a|^2, real > 0
    return sqrt_positive(t)


def sqrt_positive(t: AlgebraicNumber) -> AlgebraicNumber:
    """Square root of a real positive algebraic number."""
    if t.is_rational:
        q = t.as_fraction()
        if q < 0:
            raise ValueError("negative radicand")
        rt = _rational_sqrt(q)
        if rt is not None:
            return from_rational(rt)
        sq = qpoly.qp(-q, 0, 1)
    else:
        sq = qpoly.compose_square(t.minpoly)
    _, factors = qpoly.factor(sq)
    bits = 64
    while True:
        if not t.is_rational:
            t.refined(Fraction(1, 1 << bits))
        i2 = t.box.re
        lo = max(i2.lo, Fraction(0))
        lo = lo / nth_root_upper(lo, 2, bits) if lo > 0 else Fraction(0)
        hi = nth_root_upper(i2.hi, 2, bits)
        rect = Rect(Interval(lo, hi), Interval.point(0))
        cands = [g for g, _ in factors if eval_poly_rect(g, rect).abs2().contains(0)]
        if len(cands) == 1:
            g = cands[0]
            roots = [r for r in _roots_of_irreducible(g) if r.is_real]
            hits = [r for r in roots if not r.box.disjoint(rect)]
            tries = 0
            while len(hits) > 1 and tries < 64:
                for r in hits:
                    r.refined(rect.width / 4 if rect.width > 0 else Fraction(1, 1 << bits))
                hits = [r for r in hits if not r.box.disjoint(rect)]
                tries += 1
            if len(hits) == 1:
                r = hits[0]
                re = Interval(max(r.box.re.lo, rect.re.lo), min(r.box.re.hi, rect.re.hi))
                return AlgebraicNumber(r.minpoly, Rect(re, Interval.point(0)))
        bits *= 2
        if bits > 1 << 16:
            raise RuntimeError("sqrt selection failed to converge")


def _rational_sqrt(q: Fraction) -> Fraction | None:
    from sympy import integer_nthroot

    rn, okn = integer_nthroot(q.numerator, 2)
    rd, okd = integer_nthroot(q.denominator, 2)
    if okn and okd:
        return Fraction(rn, rd)
    return None


# -- argument classification (rational multiples of 2*pi) ----------------------


@dataclass(frozen=True)
class ArgumentClass:
    """arg(a)/(2*pi) is rational (period q, residue p: a/|a| = e^(2*pi*i*p/q),
    q minimal, gcd(p, q) = 1) or irrational."""

    rational: bool
    period: int | None = None
    residue: int | None = None

    def __repr__(self):
        if self.rational:
            return f"RationalMultiple({self.residue}/{self.period})"
        return "IrrationalMultiple"


IRRATIONAL = ArgumentClass(False)


def unit_part(a: AlgebraicNumber) -> AlgebraicNumber:
    """a/|a| for nonzero a."""
    if a.is_zero:
        raise ValueError("zero has no unit part")
    if a.is_real:
        return ONE if sign_real(a) > 0 else from_rational(-1)
    r = modulus(a)
    if r.is_rational and r.as_fraction() == 1:
        return a
    return arith(a, r, "/")


def cyclotomic_order(mp: qpoly.Coeffs) -> int | None:
    """k such that mp == Phi_k, or None. mp must be monic irreducible."""
    if any(c.denominator != 1 for c in mp):
        return None
    d = qpoly.degree(mp)
    # phi(k) = d forces k <= 2*d^2 (phi(k) >= sqrt(k/2))
    for k in range(1, 2 * d * d + 3):
        if qpoly.euler_phi(k) == d and qpoly.cyclotomic(k) == mp:
            return k
    return None


def is_root_of_unity(a: AlgebraicNumber) -> bool:
    return cyclotomic_order(a.minpoly) is not None


def _unit_residue(u: AlgebraicNumber, k: int) -> int:
    """p with u = e^(2*pi*i*p/k), given that u is exactly a primitive k-th root."""
    from math import gcd

    if k == 1:
        return 0
    if k == 2:
        return 1
    prec = 64
    while True:
        cands = []
        old = mpmath.iv.prec
        mpmath.iv.prec = prec
        try:
            for p in range(k):
                if gcd(p, k) != 1:
                    continue
                ang = mpmath.iv.pi * (2 * p) / k
                c, s = mpmath.iv.cos(ang), mpmath.iv.sin(ang)
                (clo, chi), (slo, shi) = _iv_bounds(c), _iv_bounds(s)
                cands.append((p, Rect(Interval(clo, chi), Interval(slo, shi))))
        finally:
            mpmath.iv.prec = old
        u.refined(Fraction(1, 1 << (prec // 2)))
        hits = [p for p, rect in cands if not u.box.disjoint(rect)]
        if len(hits) == 1:
            return hits[0]
        prec *= 2


def classify_argument(a: AlgebraicNumber) -> ArgumentClass:
    """Decide whether arg(a)/(2*pi) is rational; if so return the minimal period
    and residue of a/|a|. Exact: a/|a| is a root of unity iff its minimal
    polynomial is cyclotomic."""
    if a.is_zero:
        raise ValueError("zero has no argument")
    if a.is_real:
        return ArgumentClass(True, 1, 0) if sign_real(a) > 0 else ArgumentClass(True, 2, 1)
    u = unit_part(a)
    k = cyclotomic_order(u.minpoly)
    if k is None:
        return IRRATIONAL
    return ArgumentClass(True, k, _unit_residue(u, k))
