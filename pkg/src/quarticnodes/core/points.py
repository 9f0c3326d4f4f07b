"""Projective points and linear subspaces of P^n."""

from __future__ import annotations

from typing import Iterable, Sequence

from . import linalg
from .fields import QQ, Fp, PrimeField, field_of, scalar_str


class ProjectivePoint:
    """A point of P^n in canonical form (first nonzero coordinate is 1)."""

    __slots__ = ("coords", "field", "_hash")

    def __init__(self, coords: Iterable, field=None):
        raw = list(coords)
        if not raw:
            raise ValueError("a projective point needs at least one coordinate")
        if field is None:
            field = next((field_of(v) for v in raw if isinstance(v, Fp)), QQ)
        vals = [field(v) for v in raw]
        lead = next((v for v in vals if v), None)
        if lead is None:
            raise ValueError("all coordinates are zero")
        inv = field.one / lead
        self.coords = tuple(v * inv for v in vals)
        self.field = field
        self._hash = hash(self.coords)

    @classmethod
    def coordinate(cls, i: int, n: int, field=QQ) -> "ProjectivePoint":
        return cls([1 if j == i else 0 for j in range(n + 1)], field)

    @property
    def n(self) -> int:
        """Ambient projective dimension."""
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"ProjectivePoint({self})"

    def __str__(self):
        return ":".join(scalar_str(v) for v in self.coords)


def as_vector(point) -> list:
    return list(point.coords if isinstance(point, ProjectivePoint) else point)


class LinearSubspace:
    """A projective linear subspace of P^n.

    Stored as the reduced row echelon basis of its cone in k^{n+1} (which
    makes equality exact) together with a basis of defining linear forms.
    ``points`` keeps the independent input points it was spanned from.
    """

    def __init__(self, vectors: Sequence, n: int | None = None, field=None):
        vecs = [as_vector(v) for v in vectors]
        if not vecs:
            raise ValueError("a subspace needs at least one spanning vector")
        if n is None:
            n = len(vecs[0]) - 1
        if field is None:
            field = next((v.field for v in vectors if isinstance(v, ProjectivePoint)), None)
            if field is None:
                field = next((PrimeField(x.p) for vec in vecs for x in vec if isinstance(x, Fp)), QQ)
        self.n = n
        self.field = field
        self.basis, self.pivots = linalg.rref(vecs, field)
        if not self.basis:
            raise ValueError("spanning vectors are all zero")
        self.equations = linalg.nullspace(self.basis, n + 1, field)
        self.points = _independent_points(vecs, field)

    @property
    def dim(self) -> int:
        return len(self.basis) - 1

    def contains(self, point) -> bool:
        v = as_vector(point)
        return all(not sum((a * b for a, b in zip(eq, v)), self.field.zero) for eq in self.equations)

    def __contains__(self, point) -> bool:
        return self.contains(point)

    def local_coordinates(self, point) -> list:
        """Coordinates with respect to ``basis``; the point must lie in the subspace."""
        v = as_vector(point)
        if not self.contains(v):
            raise ValueError(f"{point} does not lie in the subspace")
        return [self.field(v[c]) for c in self.pivots]

    def local_point(self, point) -> ProjectivePoint:
        return ProjectivePoint(self.local_coordinates(point), self.field)

    def from_local(self, coords: Sequence) -> ProjectivePoint:
        vec = [self.field.zero] * (self.n + 1)
        for c, row in zip(coords, self.basis):
            if c:
                vec = [a + c * b for a, b in zip(vec, row)]
        return ProjectivePoint(vec, self.field)

    def join(self, *others) -> "LinearSubspace":
        vecs = [list(r) for r in self.basis]
        for o in others:
            if isinstance(o, LinearSubspace):
                vecs.extend(list(r) for r in o.basis)
            else:
                vecs.append(as_vector(o))
        return LinearSubspace(vecs, self.n, self.field)

    def __eq__(self, other):
        if not isinstance(other, LinearSubspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __hash__(self):
        return hash(tuple(map(tuple, self.basis)))

    def __repr__(self):
        pts = ", ".join(str(ProjectivePoint(r, self.field)) for r in self.basis)
        return f"LinearSubspace(dim={self.dim}, n={self.n}, basis=[{pts}])"


def _independent_points(vecs, field) -> list[ProjectivePoint]:
    chosen: list[list] = []
    for v in vecs:
        if any(v) and linalg.matrix_rank(chosen + [v], field) == len(chosen) + 1:
            chosen.append(v)
    return [ProjectivePoint(v, field) for v in chosen]


def span(points: Iterable) -> LinearSubspace:
    pts = list(points)
    if not pts:
        raise ValueError("cannot span an empty set of points")
    return LinearSubspace(pts)


def span_dimension(points: Iterable) -> tuple[int, LinearSubspace]:
    """Projective dimension of the span, with the spanning subspace."""
    sub = span(points)
    return sub.dim, sub


def projection_matrix(subspace: LinearSubspace, vertex=None) -> list[list]:
    """A linear map k^{n+1} -> k^{k} that is the identity on ``subspace``
    (in its local coordinates) and kills ``vertex``.

    Directions needed to complete a basis are taken greedily from the
    standard basis and are also killed, so the cone vertex is in general
    ``vertex`` joined with those directions.
    """
    n, field = subspace.n, subspace.field
    cols = [list(r) for r in subspace.basis]
    k = len(cols)
    if vertex is not None:
        v = as_vector(vertex)
        if subspace.contains(v):
            raise ValueError("vertex lies in the subspace")
        cols.append(v)
    for i in range(n + 1):
        if len(cols) == n + 1:
            break
        e = [field.one if j == i else field.zero for j in range(n + 1)]
        if linalg.matrix_rank(cols + [e], field) == len(cols) + 1:
            cols.append(e)
    inv = linalg.inverse(linalg.transpose(cols), field)
    return inv[:k]
