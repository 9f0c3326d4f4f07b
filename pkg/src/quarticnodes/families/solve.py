"""Exact rational solutions of zero-dimensional systems of forms.

Works by splitting forms into rational linear factors after restricting
them to the current linear subspace, so it only succeeds on systems whose
solutions come from intersecting hyperplanes (plus a final step on lines,
where a binary form is solved through its rational roots).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import isqrt, lcm
from typing import Sequence

from ..core import linalg
from ..core.fields import QQ, RationalField
from ..core.forms import Form, evaluate_form
from ..core.points import LinearSubspace, ProjectivePoint


class NotRationalError(ValueError):
    pass


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def _horner(coeffs: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    # divide by (v - root); coefficients are low -> high
    d = len(coeffs) - 1
    out = [Fraction(0)] * d
    acc = Fraction(0)
    for i in range(d, 0, -1):
        acc = acc * root + coeffs[i]
        out[i - 1] = acc
    return out


def rational_roots(coeffs: Sequence) -> list[tuple[Fraction, int]]:
    """Rational roots with multiplicity of sum coeffs[i] * v^i."""
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    if len(cs) <= 1:
        return []
    roots: dict[Fraction, int] = {}
    while len(cs) > 1 and cs[0] == 0:
        cs = cs[1:]
        roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
    while len(cs) > 1:
        den = lcm(*(c.denominator for c in cs))
        ints = [int(c * den) for c in cs]
        found = None
        for q in _divisors(ints[-1]):
            for a in _divisors(ints[0]):
                for cand in (Fraction(a, q), Fraction(-a, q)):
                    if _horner(cs, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            break
        roots[found] = roots.get(found, 0) + 1
        cs = _deflate(cs, found)
    return sorted(roots.items())


def binary_roots(f: Form) -> list[tuple[ProjectivePoint, int]]:
    """Rational zeros in P^1 of a binary form, with multiplicity."""
    if f.nvars != 2:
        raise ValueError("need a binary form")
    if not f:
        raise NotRationalError("zero form vanishes everywhere")
    d = f.degree
    # coefficient of v^i in f(v, 1)
    coeffs = [f.coeffs.get((i, d - i), 0) for i in range(d + 1)]
    out = []
    top = d
    while top > 0 and coeffs[top] == 0:
        top -= 1
    if top < d:
        out.append((ProjectivePoint([1, 0]), d - top))
    out.extend((ProjectivePoint([r, 1]), m) for r, m in rational_roots(coeffs[: top + 1]))
    return out


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    """Monic gcd of two univariate polynomials (coefficients low -> high)."""

    def trim(c):
        c = list(c)
        while c and c[-1] == 0:
            c.pop()
        return c

    a, b = trim(a), trim(b)
    while b:
        r = list(a)
        while len(r) >= len(b):
            q = r[-1] / b[-1]
            shift = len(r) - len(b)
            for i, c in enumerate(b):
                r[shift + i] -= q * c
            r = trim(r)
            if not r:
                break
        a, b = b, r
    return [c / a[-1] for c in a] if a else a


def _common_binary_roots(forms: Sequence[Form]) -> list[ProjectivePoint]:
    """Common zeros in P^1 of binary forms; raises if any of them is irrational."""
    at_infinity = True
    g: list[Fraction] | None = None
    for f in forms:
        d = f.degree
        coeffs = [Fraction(f.coeffs.get((i, d - i), 0)) for i in range(d + 1)]
        at_infinity = at_infinity and coeffs[d] == 0
        g = coeffs if g is None else _poly_gcd(g, coeffs)
    g = _poly_gcd(g, g)
    roots = rational_roots(g)
    if sum(m for _, m in roots) < len(g) - 1:
        raise NotRationalError("nodes not rational; use scan")
    out = [ProjectivePoint([r, 1]) for r, _ in roots]
    if at_infinity:
        out.append(ProjectivePoint([1, 0]))
    return out


def _unit_matrix(k: int) -> list[list[Fraction]]:
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def _nonvanishing_vector(f: Form) -> list[int]:
    k = f.nvars
    for bound in range(0, 8):
        for v in iproduct(range(-bound, bound + 1), repeat=k):
            if max(map(abs, v), default=0) != bound or not any(v):
                continue
            if evaluate_form(f, v):
                return list(v)
    raise NotRationalError("could not find a point where the form is nonzero")


def linear_factors(f: Form) -> list[Form] | None:
    """Split a rational form into linear factors (up to a constant).

    Returns None when the form has an irreducible factor of degree > 1.
    """
    if not isinstance(f.field, RationalField):
        raise ValueError("linear factor splitting is implemented over QQ only")
    if not f:
        raise ValueError("the zero form has no factorization")
    k, d = f.nvars, f.degree
    if d == 0:
        return []
    if k == 1:
        return [Form.variable(0, 1)] * d
    if k == 2:
        roots = binary_roots(f)
        if sum(m for _, m in roots) < d:
            return None
        out = []
        for pt, m in roots:
            a, b = pt.coords
            # vanishes at (a:b)
            out.extend([Form.linear([b, -a])] * m)
        return out
    a = _nonvanishing_vector(f)
    pivot = next(i for i, v in enumerate(a) if v)
    cols = [a] + [[int(i == j) for i in range(k)] for j in range(k) if j != pivot]
    M = linalg.transpose(cols)
    g = f.compose(M)
    split = _split_monic(g)
    if split is None:
        return None
    Minv = linalg.inverse(M, QQ)
    return [ell.compose(Minv) for ell in split]


def _coefficient_forms(g: Form) -> list[Form]:
    """g = sum_j C_j(y1..) * y0^j; returns [C_0, ..., C_d]."""
    k, d = g.nvars, g.degree
    parts = [dict() for _ in range(d + 1)]
    for exps, c in g.coeffs.items():
        parts[exps[0]][exps[1:]] = c
    return [Form(k - 1, d - j, parts[j], g.field) for j in range(d + 1)]


def _divide_linear(g: Form, lam: Form) -> Form | None:
    """Exact quotient of g by (y0 + lam(y1..)), or None."""
    C = _coefficient_forms(g)
    d = g.degree
    Q = [None] * d
    Q[d - 1] = C[d]
    for j in range(d - 1, 0, -1):
        Q[j - 1] = C[j] - lam * Q[j]
    if C[0] - lam * Q[0]:
        return None
    k = g.nvars
    out = Form.zero(k, d - 1, g.field)
    for j, q in enumerate(Q):
        terms = {(j,) + e: c for e, c in q.coeffs.items()}
        out = out + Form(k, d - 1, terms, g.field)
    return out


def _split_monic(g: Form) -> list[Form] | None:
    k = g.nvars
    factors = []
    while g.degree > 0:
        d = g.degree
        choices = []
        for i in range(1, k):
            # g(v, e_i) as a polynomial in v
            u = [g.coeffs.get(tuple([e0] + [d - e0 if j == i else 0 for j in range(1, k)]), 0)
                 for e0 in range(d + 1)]
            roots = rational_roots(u)
            if sum(m for _, m in roots) < d:
                return None
            choices.append([-r for r, _ in roots])
        found = None
        for gammas in iproduct(*choices):
            lam = Form.linear(list(gammas))
            q = _divide_linear(g, lam)
            if q is not None:
                found = (gammas, q)
                break
        if found is None:
            return None
        gammas, g = found
        factors.append(Form.linear([1] + list(gammas)))
    return factors


def _normalized(ell: Form) -> tuple:
    vec = ell.to_vector()
    lead = next(c for c in vec if c)
    return tuple(c / lead for c in vec)


def _intersect(W: LinearSubspace, local_linear: Form) -> LinearSubspace | None:
    kernel = linalg.nullspace([local_linear.to_vector()], W.dim + 1, W.field)
    if not kernel:
        return None
    vecs = []
    for v in kernel:
        vec = [W.field.zero] * (W.n + 1)
        for c, row in zip(v, W.basis):
            vec = [x + c * y for x, y in zip(vec, row)]
        vecs.append(vec)
    return LinearSubspace(vecs, W.n, W.field)


def _reduced_system(active: list[tuple[Form, Form]]) -> list[tuple[Form, Form]]:
    """Row-reduce the restrictions of equal-degree members.

    The rows span the same space of forms on the subspace, so they cut out
    the same zero set, and reduction often exposes members that split
    (for instance 2xy - zt and xy - zt reduce to xy and zt).  Ambient
    combinations are tracked through an identity block.
    """
    out = []
    degrees = sorted({r.degree for _, r in active})
    for d in degrees:
        group = [(f, r) for f, r in active if r.degree == d]
        if len(group) == 1:
            out.extend(group)
            continue
        width = len(group[0][1].to_vector())
        rows = [r.to_vector() + [Fraction(int(i == j)) for j in range(len(group))]
                for i, (_, r) in enumerate(group)]
        R, _ = linalg.rref(rows, QQ)
        k = group[0][1].nvars
        for row in R:
            head, tail = row[:width], row[width:]
            if not any(head):
                continue
            ambient = None
            for c, (f, _) in zip(tail, group):
                if c:
                    ambient = f.scale(c) if ambient is None else ambient + f.scale(c)
            out.append((ambient, Form.from_vector(head, k, d, QQ)))
    return out


def _find_split(active: list[tuple[Form, Form]]):
    """A member of the (reduced) system whose restriction splits into
    linear factors, together with the remaining members.
    """
    for system in (active, _reduced_system(active)):
        ordered = sorted(system, key=lambda fr: fr[1].degree)
        for i, (f, r) in enumerate(ordered):
            factors = linear_factors(r)
            if factors is not None:
                return f, factors, [g for j, (g, _) in enumerate(ordered) if j != i]
    return None


def common_rational_zeros(forms: Sequence[Form]) -> list[ProjectivePoint]:
    """All common zeros of the forms in P^n, assuming they are finitely many
    and arise from rational linear factors.  Raises NotRationalError otherwise.
    """
    if not forms:
        raise NotRationalError("empty system has positive-dimensional solutions")
    nvars = forms[0].nvars
    whole = LinearSubspace(_unit_matrix(nvars), nvars - 1, QQ)
    found: list[ProjectivePoint] = []
    stack = [(whole, list(forms))]
    while stack:
        W, rem = stack.pop()
        if W.dim == 0:
            pt = W.from_local([1])
            if all(not evaluate_form(f, pt) for f in rem) and pt not in found:
                found.append(pt)
            continue
        restricted = [(f, f.restrict(W)) for f in rem]
        active = [(f, r) for f, r in restricted if r]
        if not active:
            raise NotRationalError("nodes not rational; use scan (positive-dimensional solution set)")
        if W.dim == 1:
            for local in _common_binary_roots([r for _, r in active]):
                pt = W.from_local(local.coords)
                if pt not in found:
                    found.append(pt)
            continue
        split = _find_split(active)
        if split is None:
            raise NotRationalError("nodes not rational; use scan")
        f, factors, others = split
        distinct = {}
        for ell in factors:
            distinct.setdefault(_normalized(ell), ell)
        for ell in distinct.values():
            W2 = _intersect(W, ell)
            if W2 is not None:
                stack.append((W2, others))
    return sorted(found, key=lambda p: tuple(p.coords))
