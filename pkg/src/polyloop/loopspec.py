"""Loop specifications: the DSL parser, validation, pretty-printing, and the
Diophantine gadget generator.

Grammar (comments start with '#'):

    vars x1 x2 ... xN;
    while ( <poly> [, <poly>]* > 0 ) {
        x1 := <rational linear combination of variables>;
        ...
        xN := ...;
    }

Updates are simultaneous (the whole state vector is multiplied by the matrix
once per iteration). Rational literals only; every variable is assigned
exactly once; guards are strict. Non-strict guards (>=) and affine constants
in updates are rejected up front: the analysis semantics are defined for
strict guards and homogeneous linear updates only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import mpoly, qmatrix
from .mpoly import MPoly


class LoopSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, col: int = 0):
        super().__init__(f"{message} (line {line}, column {col})" if line else message)
        self.line = line
        self.col = col


@dataclass(frozen=True)
class LoopSpec:
    """A loop `while (P1(X) > 0, ..., Pm(X) > 0) { X := A X }`, all exact."""

    var_names: tuple[str, ...]
    matrix: qmatrix.Matrix
    guards: tuple  # tuple of MPoly over Fraction

    def __post_init__(self):
        n = len(self.var_names)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise ValueError("update matrix shape does not match variable count")
        if not self.guards:
            raise ValueError("at least one guard polynomial is required")
        for g in self.guards:
            for mono in g:
                if len(mono) != n:
                    raise ValueError("guard mentions undeclared variables")

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    def guard_values(self, x) -> tuple[Fraction, ...]:
        return tuple(mpoly.mp_eval(g, x) for g in self.guards)

    def guard_holds(self, x) -> bool:
        return all(v > 0 for v in self.guard_values(x))

    def step(self, x):
        return qmatrix.mat_vec(self.matrix, x)


# -- tokenizer ----------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""(?P<ws>\s+)
      | (?P<comment>\#[^\n]*)
      | (?P<assign>:=)
      | (?P<geq>>=)
      | (?P<num>\d+\.\d+|\d+)
      | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
      | (?P<op>[-+*/^(),;{}><])
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise LoopSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        val = m.group()
        if kind == "num" and "." in val:
            raise LoopSyntaxError(
                "decimal literals are not supported; use exact rationals like 1/2", line, col
            )
        if kind not in ("ws", "comment"):
            toks.append(_Tok(kind, val, line, col))
        nl = val.count("\n")
        if nl:
            line += nl
            col = len(val) - val.rfind("\n")
        else:
            col += len(val)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> _Tok:
        t = self.next()
        if t.text != text:
            raise LoopSyntaxError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.line, t.col)
        return t

    def fail(self, msg: str):
        t = self.peek()
        raise LoopSyntaxError(msg, t.line, t.col)

    # expression grammar over declared variables
    def parse_poly(self, names: dict[str, int], nvars: int) -> MPoly:
        return self._expr(names, nvars)

    def _expr(self, names, nvars) -> MPoly:
        t = self.peek()
        if t.text == "-":
            self.next()
            acc = mpoly.mp_neg(self._term(names, nvars))
        elif t.text == "+":
            self.next()
            acc = self._term(names, nvars)
        else:
            acc = self._term(names, nvars)
        while self.peek().text in ("+", "-"):
            op = self.next().text
            rhs = self._term(names, nvars)
            acc = mpoly.mp_add(acc, rhs if op == "+" else mpoly.mp_neg(rhs))
        return acc

    def _term(self, names, nvars) -> MPoly:
        acc = self._factor(names, nvars)
        while self.peek().text == "*":
            self.next()
            acc = mpoly.mp_mul(acc, self._factor(names, nvars))
        return acc

    def _factor(self, names, nvars) -> MPoly:
        base = self._base(names, nvars)
        if self.peek().text == "^":
            self.next()
            t = self.next()
            if t.kind != "num":
                raise LoopSyntaxError("exponent must be a nonnegative integer", t.line, t.col)
            return mpoly.mp_pow(base, int(t.text), nvars)
        return base

    def _base(self, names, nvars) -> MPoly:
        t = self.next()
        if t.text == "(":
            p = self._expr(names, nvars)
            self.expect(")")
            return p
        if t.text == "-":
            return mpoly.mp_neg(self._base(names, nvars))
        if t.kind == "num":
            val = Fraction(int(t.text))
            if self.peek().text == "/":
                self.next()
                d = self.next()
                if d.kind != "num":
                    raise LoopSyntaxError("expected denominator", d.line, d.col)
                val = Fraction(int(t.text), int(d.text))
            return mpoly.mp_const(val, nvars)
        if t.kind == "name":
            if t.text not in names:
                raise LoopSyntaxError(f"unknown variable {t.text!r}", t.line, t.col)
            return mpoly.mp_var(names[t.text], nvars)
        raise LoopSyntaxError(f"unexpected token {t.text!r}", t.line, t.col)


def parse_loop(text: str) -> LoopSpec:
    """Parse DSL source into a validated LoopSpec. Rationals are exact."""
    p = _Parser(text)
    p.expect("vars")
    names: list[str] = []
    while p.peek().kind == "name":
        t = p.next()
        if t.text in names:
            raise LoopSyntaxError(f"duplicate variable {t.text!r}", t.line, t.col)
        names.append(t.text)
    if not names:
        p.fail("expected at least one variable name after 'vars'")
    p.expect(";")
    index = {n: i for i, n in enumerate(names)}
    nvars = len(names)

    p.expect("while")
    p.expect("(")
    guards = [p.parse_poly(index, nvars)]
    while p.peek().text == ",":
        p.next()
        guards.append(p.parse_poly(index, nvars))
    t = p.next()
    if t.kind == "geq":
        raise LoopSyntaxError(
            "non-strict guards (>=) are not supported: v1 analyzes strict guards only", t.line, t.col
        )
    if t.text != ">":
        raise LoopSyntaxError(f"expected '> 0' after guard polynomials, found {t.text!r}", t.line, t.col)
    z = p.next()
    if z.text != "0":
        raise LoopSyntaxError("guards must be compared against 0", z.line, z.col)
    p.expect(")")

    p.expect("{")
    rows: dict[int, tuple[Fraction, ...]] = {}
    while p.peek().text != "}":
        t = p.next()
        if t.kind != "name" or t.text not in index:
            raise LoopSyntaxError(f"expected a declared variable on the left of ':=', found {t.text!r}", t.line, t.col)
        tgt = index[t.text]
        if tgt in rows:
            raise LoopSyntaxError(f"variable {t.text!r} assigned more than once", t.line, t.col)
        a = p.next()
        if a.kind != "assign":
            raise LoopSyntaxError("expected ':='", a.line, a.col)
        rhs = p.parse_poly(index, nvars)
        row = [Fraction(0)] * nvars
        for mono, c in rhs.items():
            deg = sum(mono)
            if deg == 0:
                raise LoopSyntaxError(
                    "affine constants in updates are not supported (updates must be X := A*X)", t.line, t.col
                )
            if deg > 1:
                raise LoopSyntaxError("updates must be linear in the state variables", t.line, t.col)
            row[mono.index(1)] = c
        rows[tgt] = tuple(row)
        p.expect(";")
    p.expect("}")
    if p.peek().kind != "eof":
        p.fail(f"unexpected trailing input {p.peek().text!r}")

    missing = [names[i] for i in range(nvars) if i not in rows]
    if missing:
        raise LoopSyntaxError(f"missing update for variable(s): {', '.join(missing)}")
    matrix = tuple(rows[i] for i in range(nvars))
    return LoopSpec(tuple(names), matrix, tuple(guards))


def pretty(spec: LoopSpec) -> str:
    """Canonical DSL rendering; parse(pretty(s)) reproduces s exactly."""
    names = list(spec.var_names)
    lines = [f"vars {' '.join(names)};"]
    guard_text = ", ".join(mpoly.mp_format(g, names) for g in spec.guards)
    lines.append(f"while ({guard_text} > 0) {{")
    for i, row in enumerate(spec.matrix):
        terms: MPoly = {}
        for j, c in enumerate(row):
            if c != 0:
                terms[tuple(1 if k == j else 0 for k in range(spec.num_vars))] = c
        lines.append(f"  {names[i]} := {mpoly.mp_format(terms, names)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- Diophantine gadgets ------------------------------------------------------


@dataclass(frozen=True)
class GadgetInput:
    """A nonzero polynomial with integer coefficients in variables x1..xm."""

    poly: MPoly  # over m variables
    num_vars: int

    def __post_init__(self):
        if not self.poly:
            raise ValueError("gadget polynomial must be nonzero")
        for c in self.poly.values():
            if Fraction(c).denominator != 1:
                raise ValueError("gadget polynomial must have integer coefficients")


def parse_gadget_poly(text: str) -> GadgetInput:
    """Parse `f` over variables named x1, x2, ...; m is the largest index used."""
    names = sorted(set(re.findall(r"\bx(\d+)\b", text)), key=int)
    if not names:
        raise LoopSyntaxError("gadget polynomial must mention at least one variable x1, x2, ...")
    m = max(int(k) for k in names)
    index = {f"x{i+1}": i for i in range(m)}
    p = _Parser(text)
    poly = p.parse_poly(index, m)
    if p.peek().kind != "eof":
        p.fail(f"unexpected trailing input {p.peek().text!r}")
    return GadgetInput(poly, m)


def diophantine_gadget(g: GadgetInput) -> LoopSpec:
    """Loop with N = m+1 variables, A = diag(1,..,1,1/2), guard x_{m+1} - f^2.

    Over the integers the loop runs forever from (y, 1) exactly when y is a
    root of f; nonzero |f| >= 1 makes the guard fail once (1/2)^n x_{m+1}
    drops below f^2. Provided as a test-corpus generator.
    """
    m = g.num_vars
    n = m + 1
    ext = {mono + (0,): c for mono, c in g.poly.items()}
    f2 = mpoly.mp_mul(ext, ext)
    guard = mpoly.mp_sub(mpoly.mp_var(m, n), f2)
    diag = tuple(
        tuple(
            (Fraction(1, 2) if i == m else Fraction(1)) if i == j else Fraction(0)
            for j in range(n)
        )
        for i in range(n)
    )
    names = tuple(f"x{i+1}" for i in range(n))
    return LoopSpec(names, diag, (guard,))


EXAMPLE1_SOURCE = """\
vars x1 x2 x3 x4 x5;
while (x5 + x1^2 + x1*x2 - x3^2 - 2*x3*x4 - x4^2 > 0) {
  x1 := x1 - 2/5*x2;
  x2 := 2*x1 + 1/5*x2;
  x3 := 2*x4;
  x4 := -1/2*x3 - x4;
  x5 := -1/2*x5;
}
"""


def example1() -> LoopSpec:
    """The worked 5-variable loop used throughout the documentation and tests."""
    return parse_loop(EXAMPLE1_SOURCE)
