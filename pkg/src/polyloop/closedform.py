"""Symbolic closed forms of A^n X via generating functions.

For the state recurrence f(n) = A^(n+s) X (s = multiplicity of the zero
eigenvalue), each coordinate satisfies the linear recurrence given by the
characteristic polynomial with zero roots removed, so its generating function
is P(x)/Q(x) with deg P < deg Q. Partial-fraction expansion of that quotient
yields f_j(n) = sum_i p_ji(n) xi_i^n over the distinct nonzero eigenvalues,
with deg p_ji < multiplicity(xi_i).

The expansion coefficients for eigenvalue xi are computed entirely inside
Q(xi) (polynomials modulo the minimal polynomial; pure rational arithmetic)
and converted to standalone AlgebraicNumbers only at the end. This solves
the same linear system as equating f(1..d) against the ansatz, one field at
a time, with no cross-field elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from . import qmatrix, qpoly
from .algebraic import AlgebraicNumber, eval_rational_poly, power, sign_real
from .intervals import Rect, rect_pow

LinForm = tuple[AlgebraicNumber, ...]  # coefficient per input variable


@dataclass(frozen=True)
class EigenTerm:
    value: AlgebraicNumber
    multiplicity: int
    # coeffs[j][t] = linear form over X for the n^t coefficient of p_{ji}
    coeffs: tuple[tuple[LinForm, ...], ...]


@dataclass(frozen=True)
class ClosedForm:
    nvars: int
    shift: int  # s
    charpoly: qpoly.Coeffs
    rec_coeffs: tuple[Fraction, ...]  # alpha_1..alpha_K: f(n+K) = -sum alpha_i f(n+K-i)
    seed_powers: tuple[qmatrix.Matrix, ...]  # A^s .. A^(s+K-1)
    matrix: qmatrix.Matrix
    eigen: tuple[EigenTerm, ...]

    @property
    def order(self) -> int:
        return len(self.rec_coeffs)


class _Field:
    """Arithmetic in Q(xi) = Q[y] / (g(y)), plus series helpers."""

    def __init__(self, g: qpoly.Coeffs):
        self.g = g
        self.deg = qpoly.degree(g)

    def red(self, p: qpoly.Coeffs) -> qpoly.Coeffs:
        return qpoly.divmod_poly(p, self.g)[1] if qpoly.degree(p) >= self.deg else p

    def mul(self, a, b):
        return self.red(qpoly.mul(a, b))

    def inv(self, a):
        # extended Euclid in Q[y]: u*a + v*g = 1
        r0, r1 = self.g, qpoly.normalize(a)
        s0, s1 = qpoly.qp(), qpoly.qp(1)
        while qpoly.degree(r1) > 0:
            q, r = qpoly.divmod_poly(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, qpoly.sub(s0, qpoly.mul(q, s1))
        if qpoly.is_zero(r1):
            raise ZeroDivisionError("not invertible modulo the minimal polynomial")
        return self.red(qpoly.scale(s1, 1 / r1[0]))

    def poly_eval_series(self, poly_coeffs: list[qpoly.Coeffs], w: qpoly.Coeffs, order: int) -> list[qpoly.Coeffs]:
        """Taylor coefficients of a Q(xi)[x]-polynomial around x = w, up to y^order."""
        # Horner with (x = w + y): carry a truncated series in y
        acc = [qpoly.qp() for _ in range(order)]
        for c in reversed(poly_coeffs):
            # acc = acc*(w+y) + c  truncated at y^order
            new = [qpoly.qp() for _ in range(order)]
            for k in range(order):
                term = self.mul(acc[k], w)
                if k > 0:
                    term = qpoly.add(term, acc[k - 1])
                new[k] = term
            new[0] = qpoly.add(new[0], c)
            acc = new
        return acc

    def series_div(self, num: list[qpoly.Coeffs], den: list[qpoly.Coeffs], order: int) -> list[qpoly.Coeffs]:
        d0inv = self.inv(den[0])
        out = []
        for k in range(order):
            acc = num[k] if k < len(num) else qpoly.qp()
            for j in range(1, k + 1):
                dj = den[j] if j < len(den) else qpoly.qp()
                acc = qpoly.sub(acc, self.mul(dj, out[k - j]))
            out.append(self.mul(acc, d0inv))
        return out


def _falling_binom_poly(e: int) -> list[Fraction]:
    """C(n+e-1, e-1) as monomial coefficients in n (degree e-1)."""
    # product (n+1)(n+2)...(n+e-1) / (e-1)!
    coeffs = [Fraction(1)]
    for u in range(1, e):
        # multiply by (n + u)
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i] += c * u
            new[i + 1] += c
        coeffs = new
    f = factorial(e - 1)
    return [c / f for c in coeffs]


def closed_form(a: qmatrix.Matrix) -> ClosedForm:
    """Compute the closed form of A^n X (Corollary-2 shape, exact)."""
    n = len(a)
    cp = qmatrix.char_poly(a)
    s = 0
    while s <= n and cp[s] == 0:
        s += 1
    k = n - s  # recurrence order
    qtilde = qpoly.normalize(cp[s:])  # monic, degree k, nonzero constant term
    alphas = tuple(qtilde[k - i] for i in range(1, k + 1))  # alpha_1..alpha_k
    seeds = []
    pw = qmatrix.mat_pow(a, s)
    for _ in range(k):
        seeds.append(pw)
        pw = qmatrix.mat_mul(a, pw)

    eigen_terms: list[EigenTerm] = []
    if k > 0:
        qx = qpoly.normalize([Fraction(1)] + list(alphas))  # 1 + a1 x + ... + ak x^k
        _, factors = qpoly.factor(qtilde)
        # numerators P_jv(x) = [Qx * sum_{i<k} (A^{i+s})_{jv} x^i] mod x^k
        numerators = [[None] * n for _ in range(n)]
        for j in range(n):
            for v in range(n):
                series = qpoly.normalize([seeds[i][j][v] for i in range(k)])
                prod = qpoly.mul(qx, series) if not qpoly.is_zero(series) else qpoly.qp()
                numerators[j][v] = qpoly.normalize(prod[:k])

        from .algebraic import _roots_of_irreducible

        for g, mult in factors:
            fld = _Field(g)
            dg = fld.deg
            # den(x) = Qx(x) / (1 - y x)^mult over Q(y)/(g): divide mult times
            den = [qpoly.qp(c) for c in qx]
            for _ in range(mult):
                den = _divide_one_minus_yx(den, fld)
            ygen = qpoly.qp(0, 1)  # y, the generator = eigenvalue
            w = fld.inv(ygen)  # 1/xi in the field
            den_series = fld.poly_eval_series(den, w, mult)
            minus_w = qpoly.neg(w)
            binom_tables = {e: _falling_binom_poly(e) for e in range(1, mult + 1)}
            # coefficient coords per (j, v): blocks a_{e} then monomial-basis n-polys
            coords_poly: list[list[list[qpoly.Coeffs]]] = []
            for j in range(n):
                row = []
                for v in range(n):
                    pjv = [qpoly.qp(c) for c in numerators[j][v]] or []
                    num_series = fld.poly_eval_series(pjv, w, mult) if pjv else [qpoly.qp()] * mult
                    gser = fld.series_div(num_series, den_series, mult)
                    # a_{e} = g_u * (-1/xi)^u with e = mult - u
                    npoly = [qpoly.qp() for _ in range(mult)]  # coefficient of n^t
                    mw_pow = qpoly.qp(1)
                    for u in range(mult):
                        e = mult - u
                        a_e = fld.mul(gser[u], mw_pow)
                        for t, bc in enumerate(binom_tables[e]):
                            npoly[t] = qpoly.add(npoly[t], qpoly.scale(a_e, bc))
                        mw_pow = fld.mul(mw_pow, minus_w)
                    row.append(npoly)
                coords_poly.append(row)
            for root in _roots_of_irreducible(g):
                coeffs = tuple(
                    tuple(
                        tuple(eval_rational_poly(root, coords_poly[j][v][t]) for v in range(n))
                        for t in range(mult)
                    )
                    for j in range(n)
                )
                eigen_terms.append(EigenTerm(root, mult, coeffs))

    eigen_terms.sort(key=lambda e: (e.value.box.re.mid, e.value.box.im.mid))
    return ClosedForm(n, s, cp, alphas, tuple(seeds), a, tuple(eigen_terms))


def _divide_one_minus_yx(poly: list[qpoly.Coeffs], fld: _Field) -> list[qpoly.Coeffs]:
    """Divide a Q(xi)[x] polynomial by (1 - xi*x): q_i = p_i + xi*q_{i-1}.

    Exact by construction: (1 - xi*x) divides the recurrence denominator in
    Q(xi)[x] as many times as the eigenvalue multiplicity."""
    ygen = qpoly.qp(0, 1)
    out: list[qpoly.Coeffs] = []
    carry = qpoly.qp()
    for i in range(len(poly) - 1):
        cur = qpoly.add(poly[i], fld.mul(ygen, carry)) if i > 0 else poly[0]
        out.append(cur)
        carry = cur
    return out


def eval_exact(cf: ClosedForm, x0, n: int):
    """Exact A^n x0 through the recurrence the closed form satisfies."""
    x0 = qmatrix.as_vector(x0)
    if len(x0) != cf.nvars:
        raise ValueError("dimension mismatch")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < cf.shift:
        return qmatrix.mat_apply_iter(cf.matrix, x0, n)
    k = cf.order
    if k == 0:
        return tuple(Fraction(0) for _ in range(cf.nvars))
    hist = [qmatrix.mat_vec(p, x0) for p in cf.seed_powers]
    idx = n - cf.shift
    if idx < k:
        return hist[idx]
    for _ in range(idx - k + 1):
        nxt = tuple(
            -sum((cf.rec_coeffs[i - 1] * hist[-i][j] for i in range(1, k + 1)), Fraction(0))
            for j in range(cf.nvars)
        )
        hist.append(nxt)
        hist.pop(0)
    return hist[-1]


def eval_interval(cf: ClosedForm, x0, n: int, eps) -> list[Rect]:
    """Certified boxes for A^n x0 via the eigen-sum (independent of eval_exact)."""
    x0 = qmatrix.as_vector(x0)
    eps = Fraction(eps)
    if n < cf.shift:
        return [Rect.point(v) for v in qmatrix.mat_apply_iter(cf.matrix, x0, n)]
    m = n - cf.shift
    prec = Fraction(1, 1 << 32)
    while True:
        out = []
        for j in range(cf.nvars):
            acc = Rect.point(0)
            for term in cf.eigen:
                term.value.refined(prec)
                xin = rect_pow(term.value.box, m)
                pval = Rect.point(0)
                for t in range(term.multiplicity):
                    lin = Rect.point(0)
                    for v in range(cf.nvars):
                        if x0[v] == 0:
                            continue
                        c = term.coeffs[j][t][v]
                        c.refined(prec)
                        lin = lin + c.box.scale(x0[v])
                    pval = pval + lin.scale(Fraction(m) ** t)
                acc = acc + pval * xin
            out.append(acc)
        if all(r.width <= eps for r in out) or not cf.eigen:
            return out
        prec /= 1 << 16


@dataclass(frozen=True)
class RealTerm:
    """r^n (cos_poly(n) cos(n theta) + sin_poly(n) sin(n theta)) or a signed
    real base term when unit is None."""

    base: AlgebraicNumber  # signed real eigenvalue, or the modulus r for pairs
    unit: AlgebraicNumber | None  # xi/r for a conjugate pair (upper half), else None
    cos_coeffs: tuple[tuple[LinForm, ...], ...] | None
    sin_coeffs: tuple[tuple[LinForm, ...], ...] | None
    real_coeffs: tuple[tuple[LinForm, ...], ...] | None


@dataclass(frozen=True)
class RealClosedForm:
    nvars: int
    shift: int
    terms: tuple[RealTerm, ...]


def realify(cf: ClosedForm) -> RealClosedForm:
    """Merge conjugate eigenvalue pairs into real trig terms.

    All produced coefficients are real algebraic numbers; a residual imaginary
    part would mean conjugate-symmetry was violated upstream and raises.
    """
    from .algebraic import alg_equal, is_real_exact, modulus

    used = [False] * len(cf.eigen)
    terms: list[RealTerm] = []
    for i, term in enumerate(cf.eigen):
        if used[i]:
            continue
        if term.value.is_real:
            used[i] = True
            for j in range(cf.nvars):
                for t in range(term.multiplicity):
                    for v in range(cf.nvars):
                        if not term.coeffs[j][t][v].is_real:
                            raise ValueError("real eigenvalue with nonreal coefficient")
            terms.append(RealTerm(term.value, None, None, None, term.coeffs))
            continue
        if term.value.box.im.hi < 0:
            continue  # claimed later by its upper-half partner
        used[i] = True
        partner = None
        for i2 in range(len(cf.eigen)):
            if not used[i2] and alg_equal(cf.eigen[i2].value, term.value.conj()):
                partner = cf.eigen[i2]
                used[i2] = True
                break
        if partner is None:
            raise ValueError("conjugate eigenvalue pair is incomplete")
        r = modulus(term.value)
        unit = term.value / r
        ii = _imag_unit()
        cosc, sinc = [], []
        for j in range(cf.nvars):
            cos_row, sin_row = [], []
            for t in range(term.multiplicity):
                cos_lin, sin_lin = [], []
                for v in range(cf.nvars):
                    c, cbar = term.coeffs[j][t][v], partner.coeffs[j][t][v]
                    aa = c + cbar
                    bb = ii * (c - cbar)
                    if not (is_real_exact(aa) and is_real_exact(bb)):
                        raise ValueError("conjugate coefficient symmetry violated")
                    cos_lin.append(_as_real(aa))
                    sin_lin.append(_as_real(bb))
                cos_row.append(tuple(cos_lin))
                sin_row.append(tuple(sin_lin))
            cosc.append(tuple(cos_row))
            sinc.append(tuple(sin_row))
        terms.append(RealTerm(r, unit, tuple(cosc), tuple(sinc), None))
    return RealClosedForm(cf.nvars, cf.shift, tuple(terms))


def _imag_unit() -> AlgebraicNumber:
    from .algebraic import isolate_roots

    return [r for r in isolate_roots(qpoly.qp(1, 0, 1)) if r.box.im.lo > 0][0]


def _as_real(a: AlgebraicNumber) -> AlgebraicNumber:
    from .algebraic import as_real

    return as_real(a)


def eval_real_interval(rcf: RealClosedForm, matrix, x0, n: int, eps) -> list[Rect]:
    """Certified boxes for A^n x0 via the realified trig form."""
    x0 = qmatrix.as_vector(x0)
    eps = Fraction(eps)
    if n < rcf.shift:
        return [Rect.point(v) for v in qmatrix.mat_apply_iter(matrix, x0, n)]
    m = n - rcf.shift
    prec = Fraction(1, 1 << 32)
    while True:
        out = []
        for j in range(rcf.nvars):
            acc = Rect.point(0)
            for term in rcf.terms:
                term.base.refined(prec)
                rbox = rect_pow(term.base.box, m)
                if term.unit is None:
                    pv = _lin_poly_box(term.real_coeffs[j], x0, m, prec)
                    acc = acc + pv * rbox
                else:
                    term.unit.refined(prec)
                    un = rect_pow(term.unit.box, m)
                    cos_box = Rect(un.re, un.im.scale(0))
                    sin_box = Rect(un.im, un.re.scale(0))
                    cv = _lin_poly_box(term.cos_coeffs[j], x0, m, prec)
                    sv = _lin_poly_box(term.sin_coeffs[j], x0, m, prec)
                    acc = acc + (cv * cos_box + sv * sin_box) * rbox
            out.append(acc)
        if all(r.width <= eps for r in out) or not rcf.terms:
            return out
        prec /= 1 << 16


def _lin_poly_box(rows, x0, m: int, prec: Fraction) -> Rect:
    acc = Rect.point(0)
    for t, lin in enumerate(rows):
        s = Rect.point(0)
        for v, c in enumerate(lin):
            if x0[v] == 0:
                continue
            c.refined(prec)
            s = s + c.box.scale(x0[v])
        acc = acc + s.scale(Fraction(m) ** t)
    return acc
