"""Exact univariate polynomial arithmetic over the rationals.

Polynomials are dense coefficient lists (index = degree) of
``fractions.Fraction``. Everything here is exact; no operation introduces
rounding. Factorization into irreducibles and resultants are delegated to
sympy (complete lift-and-recombine / subresultant PRS) behind the small
wrappers at the bottom.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

_X = sympy.Symbol("x")
_Y = sympy.Symbol("y")

Coeffs = tuple[Fraction, ...]


def qp(*coeffs) -> Coeffs:
    """Build a polynomial from low-to-high coefficients (ints/Fractions/strings)."""
    return normalize(tuple(Fraction(c) for c in coeffs))


def normalize(p) -> Coeffs:
    """Strip trailing zero coefficients; the zero polynomial is ()."""
    p = tuple(Fraction(c) for c in p)
    d = len(p)
    while d > 0 and p[d - 1] == 0:
        d -= 1
    return p[:d]


def degree(p: Coeffs) -> int:
    """Degree, with deg(0) = -1."""
    return len(p) - 1


def is_zero(p: Coeffs) -> bool:
    return len(p) == 0


def lc(p: Coeffs) -> Fraction:
    if not p:
        raise ValueError("zero polynomial has no leading coefficient")
    return p[-1]


def monic(p: Coeffs) -> Coeffs:
    if not p:
        return p
    m = p[-1]
    if m == 1:
        return p
    return tuple(c / m for c in p)


def add(p: Coeffs, q: Coeffs) -> Coeffs:
    n = max(len(p), len(q))
    return normalize(
        tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    )


def neg(p: Coeffs) -> Coeffs:
    return tuple(-c for c in p)


def sub(p: Coeffs, q: Coeffs) -> Coeffs:
    return add(p, neg(q))


def mul(p: Coeffs, q: Coeffs) -> Coeffs:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return normalize(out)


def scale(p: Coeffs, c) -> Coeffs:
    c = Fraction(c)
    if c == 0:
        return ()
    return tuple(a * c for a in p)


def divmod_poly(p: Coeffs, q: Coeffs) -> tuple[Coeffs, Coeffs]:
    """Exact polynomial division with remainder; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq, lq = degree(q), lc(q)
    quot = [Fraction(0)] * max(0, len(p) - dq)
    while len(r) - 1 >= dq and any(c != 0 for c in r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dq:
            break
        k = len(r) - 1 - dq
        f = r[-1] / lq
        quot[k] = f
        for i in range(len(q)):
            r[k + i] -= f * q[i]
        r.pop()
    return normalize(quot), normalize(r)


def pow_poly(p: Coeffs, k: int) -> Coeffs:
    out = qp(1)
    b = p
    while k:
        if k & 1:
            out = mul(out, b)
        b = mul(b, b)
        k >>= 1
    return out


def gcd_poly(p: Coeffs, q: Coeffs) -> Coeffs:
    """Monic gcd via the Euclidean algorithm."""
    a, b = p, q
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def derivative(p: Coeffs) -> Coeffs:
    return normalize(tuple(p[i] * i for i in range(1, len(p))))


def squarefree_part(p: Coeffs) -> Coeffs:
    if degree(p) <= 1:
        return monic(p)
    return monic(divmod_poly(p, gcd_poly(p, derivative(p)))[0])


def eval_at(p: Coeffs, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def eval_complex(p: Coeffs, re: Fraction, im: Fraction) -> tuple[Fraction, Fraction]:
    """Exact evaluation at the rational complex point re + im*i."""
    ar, ai = Fraction(0), Fraction(0)
    for c in reversed(p):
        ar, ai = ar * re - ai * im + c, ar * im + ai * re
    return ar, ai


def compose_shift(p: Coeffs, b: Fraction) -> Coeffs:
    """p(x + b), by Horner on the shifted variable."""
    out: Coeffs = ()
    for c in reversed(p):
        out = add(mul(out, qp(b, 1)), qp(c))
    return out


def compose_scale(p: Coeffs, a: Fraction) -> Coeffs:
    """p(a*x)."""
    f = Fraction(1)
    out = []
    for c in p:
        out.append(c * f)
        f *= a
    return normalize(out)


def compose_neg(p: Coeffs) -> Coeffs:
    """p(-x)."""
    return normalize(tuple(c if i % 2 == 0 else -c for i, c in enumerate(p)))


def compose_square(p: Coeffs) -> Coeffs:
    """p(x^2)."""
    out = [Fraction(0)] * (2 * len(p) - 1) if p else []
    for i, c in enumerate(p):
        out[2 * i] = c
    return normalize(out)


def reverse(p: Coeffs) -> Coeffs:
    """x^deg * p(1/x); minimal-polynomial transform for the inverse."""
    return normalize(tuple(reversed(p)))


def content_int(p: Coeffs) -> tuple[int, tuple[int, ...]]:
    """Clear denominators and content: returns (unit-ish scale ignored) primitive
    integer coefficients with positive leading coefficient, plus nothing else.

    Returned as (denominator-cleared content sign convention applied)."""
    if not p:
        return 1, ()
    den = 1
    for c in p:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    ints = [v // g for v in ints]
    if ints[-1] < 0:
        ints = [-v for v in ints]
    return g, tuple(ints)


# -- Sturm sequences and real-root counting ---------------------------------


def sturm_sequence(p: Coeffs) -> list[Coeffs]:
    p = squarefree_part(p)
    seq = [p, derivative(p)]
    while seq[-1]:
        seq.append(neg(divmod_poly(seq[-2], seq[-1])[1]))
    return seq[:-1]


def _sign_variations(seq: list[Coeffs], x: Fraction) -> int:
    signs = []
    for f in seq:
        v = eval_at(f, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def root_separation_bound(p: Coeffs) -> Fraction:
    """A positive rational lower bound on the distance between any two distinct
    complex roots of p (Mahler's bound with |disc| >= 1 and M(p) <= the 1-norm
    of the primitive integer coefficients)."""
    p = squarefree_part(p)
    d = degree(p)
    if d < 2:
        return Fraction(1)
    _, ints = content_int(p)
    norm1 = sum(abs(v) for v in ints)
    e = (d + 3) // 2  # >= (d+2)/2, so d**-e only weakens the bound
    return Fraction(1, d**e * norm1 ** (d - 1))


def count_real_roots(p: Coeffs, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of p in the closed interval [lo, hi]."""
    p = squarefree_part(p)
    if degree(p) < 1:
        return 0
    extra = 0
    sep = None
    if eval_at(p, lo) == 0:
        extra += 1
        sep = root_separation_bound(p)
        lo = lo + min(sep / 2, (hi - lo) / 2 if hi > lo else sep / 2)
    if hi > lo and eval_at(p, hi) == 0:
        extra += 1
        sep = sep or root_separation_bound(p)
        hi = hi - min(sep / 2, (hi - lo) / 2)
    if hi <= lo:
        return extra
    seq = sturm_sequence(p)
    return extra + _sign_variations(seq, lo) - _sign_variations(seq, hi)


def root_bound(p: Coeffs) -> Fraction:
    """Cauchy bound: all complex roots have modulus < this."""
    if degree(p) < 1:
        return Fraction(1)
    m = max(abs(c) for c in p[:-1])
    return 1 + m / abs(p[-1])


def isolate_real_roots(p: Coeffs) -> list[tuple[Fraction, Fraction]]:
    """Disjoint isolating intervals for the distinct real roots of p.

    Each returned (lo, hi) contains exactly one real root; either it is
    degenerate (lo == hi, an exact rational root) or the root lies strictly
    inside and the endpoints are not roots.
    """
    p = squarefree_part(p)
    if degree(p) < 1:
        return []
    seq = sturm_sequence(p)

    out: list[tuple[Fraction, Fraction]] = []

    def var(x: Fraction) -> int:
        return _sign_variations(seq, x)

    def split(lo: Fraction, hi: Fraction, vlo: int, vhi: int) -> None:
        # invariant: p(lo) != 0 != p(hi); V(lo)-V(hi) = #roots in (lo, hi)
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            out.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if eval_at(p, mid) == 0:
            out.append((mid, mid))
            eps = min(root_separation_bound(p) / 2, (hi - lo) / 4)
            split(lo, mid - eps, vlo, var(mid - eps))
            split(mid + eps, hi, var(mid + eps), vhi)
            return
        vm = var(mid)
        split(lo, mid, vlo, vm)
        split(mid, hi, vm, vhi)

    bound = root_bound(p)
    split(-bound, bound, var(-bound), var(bound))
    out.sort(key=lambda iv: (iv[0], iv[1]))
    return out


def refine_real_root(p: Coeffs, lo: Fraction, hi: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Shrink an isolating interval of squarefree p down to the given width."""
    if lo == hi:
        return lo, hi
    flo = eval_at(p, lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        fm = eval_at(p, mid)
        if fm == 0:
            return mid, mid
        if (flo > 0) != (fm > 0):
            hi = mid
        else:
            lo, flo = mid, fm
    return lo, hi


# -- cyclotomic polynomials ---------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic(k: int) -> Coeffs:
    """The k-th cyclotomic polynomial, via recursive exact division of x^k - 1."""
    if k < 1:
        raise ValueError("k must be a positive integer")
    num = normalize([Fraction(-1)] + [Fraction(0)] * (k - 1) + [Fraction(1)])
    for d in range(1, k):
        if k % d == 0:
            num = divmod_poly(num, cyclotomic(d))[0]
    return num


def euler_phi(k: int) -> int:
    out, n, p = k, k, 2
    while p * p <= n:
        if n % p == 0:
            while n % p == 0:
                n //= p
            out -= out // p
        p += 1
    if n > 1:
        out -= out // n
    return out


# -- sympy-backed kernels -----------------------------------------------------


def to_sympy(p: Coeffs, sym=_X) -> sympy.Poly:
    return sympy.Poly(list(reversed(p)) or [0], sym, domain="QQ")


def from_sympy(sp) -> Coeffs:
    return normalize(tuple(Fraction(c.p, c.q) for c in reversed(sp.all_coeffs())))


def factor(p: Coeffs) -> tuple[Fraction, list[tuple[Coeffs, int]]]:
    """Complete factorization over Q: content * product of monic irreducibles.

    Returns (content, [(monic irreducible, multiplicity), ...]) with the
    factors sorted canonically (by degree, then coefficients).
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    cont, fl = to_sympy(p).factor_list()
    content = Fraction(cont.p, cont.q)
    factors = []
    for f, m in fl:
        g = from_sympy(f)
        l = lc(g)
        content *= l**m
        factors.append((monic(g), m))
    factors.sort(key=lambda fm: (degree(fm[0]), fm[0]))
    return content, factors


def is_irreducible(p: Coeffs) -> bool:
    if degree(p) < 1:
        return False
    _, fl = factor(p)
    return len(fl) == 1 and fl[0][1] == 1


def resultant_sum(f: Coeffs, g: Coeffs) -> Coeffs:
    """Res_y(f(y), g(x - y)): vanishes at every a + b with f(a)=0, g(b)=0."""
    fy = to_sympy(f, _Y)
    gshift = sympy.Poly(sympy.expand(to_sympy(g).as_expr().subs(_X, _X - _Y)), _Y)
    return from_sympy(sympy.Poly(sympy.resultant(fy, gshift, _Y), _X, domain="QQ"))


def resultant_prod(f: Coeffs, g: Coeffs) -> Coeffs:
    """Res_y(f(y), y^deg(g) * g(x/y)): vanishes at every a*b (a, b nonzero)."""
    fy = to_sympy(f, _Y)
    m = degree(g)
    expr = sum(sympy.Rational(c.numerator, c.denominator) * _X**i * _Y ** (m - i) for i, c in enumerate(g))
    gh = sympy.Poly(sympy.expand(expr), _Y)
    return from_sympy(sympy.Poly(sympy.resultant(fy, gh, _Y), _X, domain="QQ"))
