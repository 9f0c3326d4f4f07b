"""Sparse homogeneous polynomials with exact coefficients."""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Iterable, Mapping, Sequence

from .fields import QQ, Fp, FieldMismatchError, PrimeField, scalar_str
from .points import LinearSubspace, ProjectivePoint

P4_VARIABLES = ("x", "y", "z", "t", "w")


def variable_names(nvars: int) -> tuple[str, ...]:
    if nvars == 5:
        return P4_VARIABLES
    return tuple(f"x{i}" for i in range(nvars))


@lru_cache(maxsize=None)
def monomial_basis(num_vars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of the given total degree, graded-lex with x0 largest."""
    if num_vars < 1:
        raise ValueError("num_vars must be positive")
    if degree < 0:
        return ()
    if num_vars == 1:
        return ((degree,),)
    out = []
    for e in range(degree, -1, -1):
        out.extend((e,) + rest for rest in monomial_basis(num_vars - 1, degree - e))
    return tuple(out)


def monomial_count(num_vars: int, degree: int) -> int:
    return comb(degree + num_vars - 1, num_vars - 1)


@lru_cache(maxsize=None)
def _monomial_index(num_vars: int, degree: int) -> dict:
    return {m: i for i, m in enumerate(monomial_basis(num_vars, degree))}


class Form:
    """A homogeneous polynomial of fixed degree in ``nvars`` variables.

    Coefficients live in one field backend; zero coefficients are never
    stored.  Instances are treated as immutable.
    """

    __slots__ = ("nvars", "degree", "field", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs: Mapping | None = None, field=QQ):
        if nvars < 1 or degree < 0:
            raise ValueError("need nvars >= 1 and degree >= 0")
        self.nvars = nvars
        self.degree = degree
        self.field = field
        clean = {}
        for exps, c in (coeffs or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars or sum(exps) != degree or min(exps) < 0:
                raise ValueError(f"exponent vector {exps} does not match {nvars} variables of degree {degree}")
            c = field(c)
            if c:
                clean[exps] = clean.get(exps, field.zero) + c
                if not clean[exps]:
                    del clean[exps]
        self.coeffs = clean

    @classmethod
    def _raw(cls, nvars, degree, coeffs, field) -> "Form":
        f = object.__new__(cls)
        f.nvars, f.degree, f.field, f.coeffs = nvars, degree, field, coeffs
        return f

    @classmethod
    def zero(cls, nvars: int, degree: int, field=QQ) -> "Form":
        return cls._raw(nvars, degree, {}, field)

    @classmethod
    def constant(cls, value, nvars: int, field=QQ) -> "Form":
        return cls(nvars, 0, {(0,) * nvars: value}, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field=QQ) -> "Form":
        return cls._raw(nvars, 1, {tuple(int(j == i) for j in range(nvars)): field.one}, field)

    @classmethod
    def linear(cls, coefficients: Sequence, field=QQ) -> "Form":
        n = len(coefficients)
        return cls(n, 1, {tuple(int(j == i) for j in range(n)): c for i, c in enumerate(coefficients)}, field)

    @classmethod
    def from_vector(cls, vector: Sequence, nvars: int, degree: int, field=QQ) -> "Form":
        basis = monomial_basis(nvars, degree)
        if len(vector) != len(basis):
            raise ValueError("coefficient vector length does not match the monomial basis")
        return cls(nvars, degree, dict(zip(basis, vector)), field)

    def to_vector(self) -> list:
        z = self.field.zero
        return [self.coeffs.get(m, z) for m in monomial_basis(self.nvars, self.degree)]

    def to_field(self, field) -> "Form":
        return Form(self.nvars, self.degree, self.coeffs, field)

    def terms(self) -> list[tuple[tuple[int, ...], object]]:
        idx = _monomial_index(self.nvars, self.degree)
        return sorted(self.coeffs.items(), key=lambda kv: idx[kv[0]])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _check(self, other: "Form", same_degree=True):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if same_degree and self.degree != other.degree and self.coeffs and other.coeffs:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")

    def __add__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Form._raw(self.nvars, self.degree, out, self.field)

    def __neg__(self):
        return Form._raw(self.nvars, self.degree, {m: -c for m, c in self.coeffs.items()}, self.field)

    def __sub__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "Form":
        c = self.field(c)
        if not c:
            return Form.zero(self.nvars, self.degree, self.field)
        return Form._raw(self.nvars, self.degree, {m: v * c for m, v in self.coeffs.items()}, self.field)

    def __mul__(self, other):
        if isinstance(other, Form):
            self._check(other, same_degree=False)
            out: dict = {}
            for m1, c1 in self.coeffs.items():
                for m2, c2 in other.coeffs.items():
                    m = tuple(a + b for a, b in zip(m1, m2))
                    s = out.get(m)
                    out[m] = c1 * c2 if s is None else s + c1 * c2
            out = {m: c for m, c in out.items() if c}
            return Form._raw(self.nvars, self.degree + other.degree, out, self.field)
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Form):
            return NotImplemented
        return self.scale(other)

    def __pow__(self, k: int) -> "Form":
        out = Form.constant(1, self.nvars, self.field)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Form):
            return NotImplemented
        if self.nvars != other.nvars or self.field != other.field:
            return False
        if not self.coeffs and not other.coeffs:
            return True
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.coeffs.items())))

    def evaluate(self, point) -> object:
        return evaluate_form(self, point)

    def __call__(self, point):
        return evaluate_form(self, point)

    def partial(self, i: int) -> "Form":
        return partial_derivative(self, i)

    def gradient(self) -> list["Form"]:
        return [partial_derivative(self, i) for i in range(self.nvars)]

    def compose(self, matrix: Sequence[Sequence]) -> "Form":
        """Substitute x_i -> sum_j matrix[i][j] * y_j; the result is in len(matrix[0]) variables."""
        if len(matrix) != self.nvars:
            raise ValueError("substitution matrix needs one row per variable")
        m = len(matrix[0])
        F = self.field
        lin = [Form(m, 1, {tuple(int(j == k) for j in range(m)): F(row[k]) for k in range(m)}, F)
               for row in matrix]
        powers: list[dict[int, Form]] = [{} for _ in range(self.nvars)]

        def power(i, e):
            if e not in powers[i]:
                powers[i][e] = lin[i] ** e
            return powers[i][e]

        out = Form.zero(m, self.degree, F)
        for exps, c in self.coeffs.items():
            term = Form.constant(c, m, F)
            for i, e in enumerate(exps):
                if e:
                    term = term * power(i, e)
            out = out + term
        return out

    def restrict(self, subspace: LinearSubspace) -> "Form":
        """The form in the local coordinates of ``subspace``."""
        basis = subspace.basis
        return self.compose([[row[i] for row in basis] for i in range(self.nvars)])

    def __repr__(self):
        return f"Form({self.nvars} vars, deg {self.degree}, {self})"

    def __str__(self):
        return format_form(self)


def _coerce_coords(f: Form, point) -> list:
    if isinstance(point, ProjectivePoint):
        if point.field != f.field:
            raise FieldMismatchError(f"form over {f.field}, point over {point.field}")
        coords = point.coords
    else:
        coords = [f.field(v) for v in point]
    if len(coords) != f.nvars:
        raise ValueError(f"point has {len(coords)} coordinates, form has {f.nvars} variables")
    return list(coords)


def evaluate_form(f: Form, point) -> object:
    """Exact value of ``f`` at a point (or a raw coordinate vector)."""
    coords = _coerce_coords(f, point)
    d = f.degree
    pw = [[None] * (d + 1) for _ in coords]
    one = f.field.one
    for i, c in enumerate(coords):
        acc = one
        pw[i][0] = acc
        for e in range(1, d + 1):
            acc = acc * c
            pw[i][e] = acc
    total = f.field.zero
    for exps, coeff in f.coeffs.items():
        term = coeff
        for i, e in enumerate(exps):
            if e:
                term = term * pw[i][e]
        total = total + term
    return total


def vanishes_at(f: Form, point) -> bool:
    return not evaluate_form(f, point)


def partial_derivative(f: Form, var_index: int) -> Form:
    if not 0 <= var_index < f.nvars:
        raise IndexError(f"variable index {var_index} out of range for {f.nvars} variables")
    if f.degree == 0:
        return Form.zero(f.nvars, 0, f.field)
    out = {}
    for exps, c in f.coeffs.items():
        e = exps[var_index]
        if e:
            m = list(exps)
            m[var_index] = e - 1
            out[tuple(m)] = c * e
    return Form._raw(f.nvars, f.degree - 1, out, f.field)


def format_form(f: Form, names: Sequence[str] | None = None) -> str:
    """Render in the text grammar, e.g. ``w^4 - w*x^3 + 3*x*y*z*t``."""
    names = names or variable_names(f.nvars)
    if not f.coeffs:
        return "0"
    parts = []
    for exps, c in f.terms():
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e
        )
        if isinstance(c, Fp):
            sign, mag = "+", scalar_str(c)
        else:
            sign = "-" if c < 0 else "+"
            mag = scalar_str(abs(c))
        if not mono:
            body = mag
        elif mag == "1":
            body = mono
        else:
            body = f"{mag}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def linear_form(coefficients: Iterable, field=QQ) -> Form:
    return Form.linear(list(coefficients), field)


def product(forms: Iterable[Form]) -> Form:
    it = iter(forms)
    out = next(it)
    for f in it:
        out = out * f
    return out


def reduce_mod(f: Form, p: int) -> Form:
    """Reduce a rational form modulo p (p must not divide any denominator)."""
    F = PrimeField(p)
    if isinstance(f.field, PrimeField):
        if f.field.p != p:
            raise FieldMismatchError(f"{f.field} cannot be reduced mod {p}")
        return f
    return Form(f.nvars, f.degree, {m: F(c) for m, c in f.coeffs.items()}, F)
