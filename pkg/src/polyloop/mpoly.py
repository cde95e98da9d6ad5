"""Multivariate polynomials as {exponent tuple: coefficient} dicts.

Coefficients are Fractions for loop guards and AlgebraicNumbers inside the
guard term tables; both support +, -, * so the helpers here stay generic.
Zero coefficients are always dropped, so `not p` tests for the zero polynomial.
"""

from __future__ import annotations

from fractions import Fraction

Mono = tuple[int, ...]
MPoly = dict  # Mono -> coefficient


def _is_zero_coeff(c) -> bool:
    if isinstance(c, Fraction) or isinstance(c, int):
        return c == 0
    return c.is_zero


def mp_zero() -> MPoly:
    return {}


def mp_const(c, nvars: int) -> MPoly:
    p = {(0,) * nvars: c}
    return mp_normalize(p)


def mp_var(i: int, nvars: int) -> MPoly:
    mono = tuple(1 if j == i else 0 for j in range(nvars))
    return {mono: Fraction(1)}


def mp_normalize(p: MPoly) -> MPoly:
    return {m: c for m, c in p.items() if not _is_zero_coeff(c)}


def mp_add(p: MPoly, q: MPoly) -> MPoly:
    out = dict(p)
    for m, c in q.items():
        if m in out:
            out[m] = out[m] + c
        else:
            out[m] = c
    return mp_normalize(out)


def mp_neg(p: MPoly) -> MPoly:
    return {m: -c for m, c in p.items()}


def mp_sub(p: MPoly, q: MPoly) -> MPoly:
    return mp_add(p, mp_neg(q))


def mp_scale(p: MPoly, c) -> MPoly:
    if _is_zero_coeff(c):
        return {}
    return mp_normalize({m: v * c for m, v in p.items()})


def mp_mul(p: MPoly, q: MPoly) -> MPoly:
    out: MPoly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            prod = c1 * c2
            if m in out:
                out[m] = out[m] + prod
            else:
                out[m] = prod
    return mp_normalize(out)


def mp_pow(p: MPoly, k: int, nvars: int) -> MPoly:
    out = mp_const(Fraction(1), nvars)
    b = p
    while k:
        if k & 1:
            out = mp_mul(out, b)
        b = mp_mul(b, b)
        k >>= 1
    return out


def mp_eval(p: MPoly, point) -> Fraction:
    """Evaluate a Fraction-coefficient polynomial at a rational point."""
    total = Fraction(0)
    for mono, c in p.items():
        v = c
        for x, e in zip(point, mono):
            if e:
                v = v * x**e
        total += v
    return total


def mp_degree(p: MPoly) -> int:
    if not p:
        return -1
    return max(sum(m) for m in p)


def mp_vars_used(p: MPoly) -> set[int]:
    used = set()
    for m in p:
        for i, e in enumerate(m):
            if e:
                used.add(i)
    return used


def mono_sort_key(m: Mono):
    # graded order, then lexicographic: readable and stable
    return (-sum(m), tuple(-e for e in m))


def mp_format(p: MPoly, names: list[str]) -> str:
    """Canonical human rendering with exact rationals."""
    if not p:
        return "0"
    parts = []
    for mono in sorted(p.keys(), key=mono_sort_key):
        c = p[mono]
        factors = []
        for n, e in zip(names, mono):
            if e == 1:
                factors.append(n)
            elif e > 1:
                factors.append(f"{n}^{e}")
        if not factors:
            body = str(abs(c)) if isinstance(c, Fraction) else str(c)
        else:
            mag = abs(c)
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        sign = "-" if (isinstance(c, Fraction) and c < 0) else "+"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
