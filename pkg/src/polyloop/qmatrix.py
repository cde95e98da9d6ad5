"""Exact rational matrix operations: products, iterates, characteristic polynomials.

Matrices are tuples of tuples of Fraction (row-major). The characteristic
polynomial uses the Faddeev-LeVerrier trace recursion (polynomial cost, exact
over Q); the factorial-cost cofactor expansion lives in the test suite as an
independent oracle.
"""

from __future__ import annotations

from fractions import Fraction

from . import qpoly

Matrix = tuple[tuple[Fraction, ...], ...]
Vector = tuple[Fraction, ...]


def as_matrix(rows) -> Matrix:
    m = tuple(tuple(Fraction(c) for c in row) for row in rows)
    if not m or any(len(r) != len(m) for r in m):
        raise ValueError("matrix must be square and nonempty")
    return m


def as_vector(entries) -> Vector:
    return tuple(Fraction(c) for c in entries)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0)) for j in range(n))
        for i in range(n)
    )


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if len(v) != len(a):
        raise ValueError("dimension mismatch")
    return tuple(sum((row[k] * v[k] for k in range(len(v))), Fraction(0)) for row in a)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a: Matrix, c: Fraction) -> Matrix:
    return tuple(tuple(x * c for x in row) for row in a)


def trace(a: Matrix) -> Fraction:
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def mat_pow(a: Matrix, n: int) -> Matrix:
    out = identity(len(a))
    b = a
    while n:
        if n & 1:
            out = mat_mul(out, b)
        b = mat_mul(b, b)
        n >>= 1
    return out


def mat_apply_iter(a: Matrix, x0: Vector, n: int) -> Vector:
    """Exact A^n x0 by repeated multiplication."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = as_vector(x0)
    for _ in range(n):
        v = mat_vec(a, v)
    return v


def char_poly(a: Matrix) -> qpoly.Coeffs:
    """Monic characteristic polynomial det(xI - A) by Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    m = identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        if k > 1:
            m = mat_add(mat_mul(a, m), mat_scale(identity(n), c))
        am = mat_mul(a, m)
        c = -trace(am) / k
        coeffs[n - k] = c
    return qpoly.normalize(coeffs)
