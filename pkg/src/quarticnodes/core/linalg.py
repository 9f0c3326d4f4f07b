"""Exact dense linear algebra over Q and F_p.

Matrices are lists of rows.  Over Q the rank is computed by fraction-free
(Bareiss) elimination on integer rows; reduced row echelon forms and
nullspaces use :class:`~fractions.Fraction` Gauss-Jordan elimination.
Over F_p everything runs on plain residues.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .fields import QQ, Fp, PrimeField, RationalField

Matrix = Sequence[Sequence]


def _infer_field(rows: Matrix, field):
    if field is not None:
        return field
    for row in rows:
        for v in row:
            if isinstance(v, Fp):
                return PrimeField(v.p)
    return QQ


def _integer_rows(rows: Matrix) -> list[list[int]]:
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        den = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v.numerator * (den // v.denominator)) for v in row])
    return out


def _residue_rows(rows: Matrix, p: int) -> list[list[int]]:
    F = PrimeField(p)
    return [[F(v).value for v in row] for row in rows]


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination (rows are consumed)."""
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    prev = 1
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        a = pr[c]
        for i in range(r + 1, m):
            row = rows[i]
            b = row[c]
            if b:
                for j in range(c + 1, n):
                    row[j] = (a * row[j] - b * pr[j]) // prev
            else:
                for j in range(c + 1, n):
                    row[j] = (a * row[j]) // prev
            row[c] = 0
        prev = a
        r += 1
        if r == m:
            break
    return r


def _rank_mod_p(rows: list[list[int]], p: int) -> int:
    m = len(rows)
    if m == 0:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pr = rows[r]
        inv = pow(pr[c], -1, p)
        for i in range(r + 1, m):
            row = rows[i]
            f = row[c] * inv % p
            if f:
                for j in range(c, n):
                    row[j] = (row[j] - f * pr[j]) % p
        r += 1
        if r == m:
            break
    return r


def matrix_rank(rows: Matrix, field=None) -> int:
    """Exact rank.  The empty matrix has rank 0."""
    if not rows or not len(rows[0]):
        return 0
    field = _infer_field(rows, field)
    if isinstance(field, RationalField):
        return bareiss_rank(_integer_rows(rows))
    return _rank_mod_p(_residue_rows(rows, field.p), field.p)


def rref(rows: Matrix, field=None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns (zero rows dropped)."""
    field = _infer_field(rows, field)
    if not rows:
        return [], []
    n = len(rows[0])
    if isinstance(field, RationalField):
        R = [[Fraction(v) for v in row] for row in rows]
        pivots = _gauss_jordan(R, n, lambda a: 1 / a, lambda a: a)
        return R[: len(pivots)], pivots
    p = field.p
    R = _residue_rows(rows, p)
    pivots = _gauss_jordan(R, n, lambda a: pow(a, -1, p), lambda a: a % p)
    return [[Fp(v, p) for v in row] for row in R[: len(pivots)]], pivots


def _gauss_jordan(R, n, inv, red) -> list[int]:
    m = len(R)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = None
        for i in range(r, m):
            if R[i][c]:
                piv = i
                break
        if piv is None:
            continue
        R[r], R[piv] = R[piv], R[r]
        s = inv(R[r][c])
        R[r] = [red(v * s) for v in R[r]]
        pr = R[r]
        for i in range(m):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [red(a - f * b) for a, b in zip(R[i], pr)]
        pivots.append(c)
        r += 1
    return pivots


def nullspace(rows: Matrix, ncols: int | None = None, field=None) -> list[list]:
    """Basis of {v : M v = 0}; one vector per free column, in column order."""
    field = _infer_field(rows, field)
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    R, pivots = rref(rows, field) if rows else ([], [])
    zero, one = field.zero, field.one
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for row, pc in zip(R, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def left_nullspace(rows: Matrix, field=None) -> list[list]:
    """Basis of {u : u M = 0}."""
    if not rows:
        return []
    return nullspace(transpose(rows), len(rows), field)


def transpose(rows: Matrix) -> list[list]:
    return [list(col) for col in zip(*rows)]


def inverse(rows: Matrix, field=None) -> list[list]:
    field = _infer_field(rows, field)
    n = len(rows)
    zero, one = field.zero, field.one
    aug = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(rows)]
    R, pivots = rref(aug, field)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in R]


def solve(rows: Matrix, rhs: Sequence, field=None) -> list | None:
    """One solution of M x = b, or None if the system is inconsistent."""
    field = _infer_field(rows, field)
    n = len(rows[0])
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    R, pivots = rref(aug, field)
    if n in pivots:
        return None
    x = [field.zero] * n
    for row, pc in zip(R, pivots):
        x[pc] = row[n]
    return x


def mat_vec(rows: Matrix, v: Sequence) -> list:
    return [sum((a * b for a, b in zip(row, v)), 0) for row in rows]


def mat_mul(a: Matrix, b: Matrix) -> list[list]:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), 0) for col in bt] for row in a]
