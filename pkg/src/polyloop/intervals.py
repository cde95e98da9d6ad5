"""Rational interval arithmetic and complex rectangles.

All endpoints are Fractions, all operations are exact, so every enclosure is
sound by construction (no rounding anywhere). Rectangles are pairs of
intervals (real part, imaginary part).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sympy import integer_nthroot


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __add__(self, o: "Interval") -> "Interval":
        return Interval(self.lo + o.lo, self.hi + o.hi)

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, o: "Interval") -> "Interval":
        return self + (-o)

    def __mul__(self, o: "Interval") -> "Interval":
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(cands), max(cands))

    def scale(self, c) -> "Interval":
        c = Fraction(c)
        if c >= 0:
            return Interval(self.lo * c, self.hi * c)
        return Interval(self.hi * c, self.lo * c)

    def shift(self, c) -> "Interval":
        c = Fraction(c)
        return Interval(self.lo + c, self.hi + c)

    def inverse(self) -> "Interval":
        if self.contains(0):
            raise ZeroDivisionError("interval contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi

    def contains_interval(self, o: "Interval") -> bool:
        return self.lo <= o.lo and o.hi <= self.hi

    def disjoint(self, o: "Interval") -> bool:
        return self.hi < o.lo or o.hi < self.lo

    def intersects(self, o: "Interval") -> bool:
        return not self.disjoint(o)

    def sign(self) -> int | None:
        """1 / -1 when the interval is strictly positive/negative, else None."""
        if self.lo > 0:
            return 1
        if self.hi < 0:
            return -1
        return None

    def square(self) -> "Interval":
        if self.lo >= 0:
            return Interval(self.lo * self.lo, self.hi * self.hi)
        if self.hi <= 0:
            return Interval(self.hi * self.hi, self.lo * self.lo)
        return Interval(Fraction(0), max(self.lo * self.lo, self.hi * self.hi))

    def round_out(self, bits: int) -> "Interval":
        """Round endpoints outward to dyadics with denominator 2^bits.

        Containment-preserving; bounds the bit-size of endpoint representations
        (exact Newton/bisection otherwise squares numerator sizes per step)."""
        s = 1 << bits
        vlo, vhi = self.lo * s, self.hi * s
        lo = Fraction(vlo.numerator // vlo.denominator, s)
        hi = Fraction(-((-vhi.numerator) // vhi.denominator), s)
        return Interval(lo, hi)

    def sqrt_upper(self) -> Fraction:
        return sqrt_upper(self.hi)

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of an interval with negative part")
        return Interval(sqrt_lower(self.lo), sqrt_upper(self.hi))

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


def nth_root_upper(q: Fraction, n: int, scale_bits: int = 64) -> Fraction:
    """A rational upper bound on q**(1/n) for q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    s = 1 << scale_bits
    # smallest integer t near floor((q*s^n)^(1/n)) with (t/s)^n >= q
    target = q * Fraction(s) ** n
    num = -(-target.numerator // target.denominator)  # ceil
    t, _ = integer_nthroot(num, n)
    while Fraction(t, s) ** n < q:
        t += 1
    return Fraction(t, s)


def sqrt_upper(q: Fraction) -> Fraction:
    return nth_root_upper(q, 2)


def sqrt_lower(q: Fraction) -> Fraction:
    """A rational lower bound on sqrt(q) for q >= 0."""
    if q < 0:
        raise ValueError("negative radicand")
    if q == 0:
        return Fraction(0)
    u = nth_root_upper(q, 2)
    lo = q / u  # q/sqrt_upper <= sqrt(q)
    return lo


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in the complex plane."""

    re: Interval
    im: Interval

    @staticmethod
    def point(re, im=0) -> "Rect":
        return Rect(Interval.point(re), Interval.point(im))

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    @property
    def center(self) -> tuple[Fraction, Fraction]:
        return self.re.mid, self.im.mid

    def is_real_line(self) -> bool:
        return self.im.lo == 0 and self.im.hi == 0

    def __add__(self, o: "Rect") -> "Rect":
        return Rect(self.re + o.re, self.im + o.im)

    def __neg__(self) -> "Rect":
        return Rect(-self.re, -self.im)

    def __sub__(self, o: "Rect") -> "Rect":
        return self + (-o)

    def __mul__(self, o: "Rect") -> "Rect":
        return Rect(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self) -> "Rect":
        return Rect(self.re, -self.im)

    def scale(self, c) -> "Rect":
        return Rect(self.re.scale(c), self.im.scale(c))

    def inverse(self) -> "Rect":
        m2 = self.re.square() + self.im.square()
        inv = m2.inverse()
        return Rect(self.re * inv, (-self.im) * inv)

    def __truediv__(self, o: "Rect") -> "Rect":
        return self * o.inverse()

    def contains_point(self, re, im) -> bool:
        return self.re.contains(re) and self.im.contains(im)

    def contains_rect(self, o: "Rect") -> bool:
        return self.re.contains_interval(o.re) and self.im.contains_interval(o.im)

    def disjoint(self, o: "Rect") -> bool:
        return self.re.disjoint(o.re) or self.im.disjoint(o.im)

    def abs2(self) -> Interval:
        """Enclosure of |z|^2 over the rectangle."""
        return self.re.square() + self.im.square()

    def round_out(self, bits: int) -> "Rect":
        return Rect(self.re.round_out(bits), self.im.round_out(bits))

    def __str__(self):
        return f"({self.re} + {self.im} i)"


def rect_pow(b: Rect, k: int) -> Rect:
    out = Rect.point(1)
    while k:
        if k & 1:
            out = out * b
        b = b * b
        k >>= 1
    return out


def eval_poly_rect(coeffs, z: Rect) -> Rect:
    """Interval Horner evaluation of a rational-coefficient polynomial."""
    acc = Rect.point(0)
    for c in reversed(coeffs):
        acc = acc * z + Rect.point(c)
    return acc
