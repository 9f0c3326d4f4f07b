"""Linear conditions imposed by points on forms of a given degree."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .config import PointConfiguration
from .core import linalg
from .core.forms import Form, monomial_basis
from .core.points import LinearSubspace, ProjectivePoint, projection_matrix


@dataclass(frozen=True)
class DefectReport:
    num_points: int
    degree: int
    n: int
    rank: int
    separable: tuple[bool, ...]

    @property
    def defect(self) -> int:
        return self.num_points - self.rank

    @property
    def independent(self) -> bool:
        return self.defect == 0


def evaluation_row(point: ProjectivePoint | Sequence, degree: int) -> list:
    """Values of all degree-``degree`` monomials at the point's coordinates."""
    coords = list(point)
    one = point.field.one if isinstance(point, ProjectivePoint) else 1
    pw = []
    for c in coords:
        row = [one]
        for _ in range(degree):
            row.append(row[-1] * c)
        pw.append(row)
    out = []
    for exps in monomial_basis(len(coords), degree):
        v = one
        for i, e in enumerate(exps):
            if e:
                v = v * pw[i][e]
        out.append(v)
    return out


def evaluation_matrix(points: Iterable, degree: int) -> list[list]:
    return [evaluation_row(p, degree) for p in points]


def conditions_defect(cfg: PointConfiguration | Sequence[ProjectivePoint], degree: int) -> DefectReport:
    """Rank of the monomial evaluation matrix and the resulting defect.

    Point i is separable when some form of the degree vanishes on all other
    points but not on it, i.e. when no left-kernel vector involves row i.
    """
    pts = list(cfg)
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if not pts:
        raise ValueError("empty configuration")
    field = pts[0].field
    M = evaluation_matrix(pts, degree)
    rank = linalg.matrix_rank(M, field)
    if rank == len(pts):
        sep = (True,) * len(pts)
    else:
        deps = linalg.left_nullspace(M, field)
        sep = tuple(all(not u[i] for u in deps) for i in range(len(pts)))
    return DefectReport(len(pts), degree, pts[0].n, rank, sep)


def separating_form_oracle(sigma: Iterable[ProjectivePoint], p: ProjectivePoint, degree: int) -> Form | None:
    """A form of the given degree through every point of ``sigma`` but not ``p``.

    Returns None exactly when every such form also vanishes at ``p``.
    """
    pts = list(sigma)
    if p in pts:
        raise ValueError(f"excluded point {p} belongs to the configuration")
    nvars = p.n + 1
    field = p.field
    ncols = len(monomial_basis(nvars, degree))
    kernel = linalg.nullspace(evaluation_matrix(pts, degree), ncols, field) if pts else [
        [field.one if i == j else field.zero for j in range(ncols)] for i in range(ncols)
    ]
    at_p = evaluation_row(p, degree)
    for v in kernel:
        if sum((a * b for a, b in zip(v, at_p)), field.zero):
            return Form.from_vector(v, nvars, degree, field)
    return None


def lift_form(local: Form, subspace: LinearSubspace, vertex=None) -> Form:
    """Pull a form written in ``subspace``'s local coordinates back to P^n
    along the projection from ``vertex`` (a cone when the vertex is given).
    """
    return local.compose(projection_matrix(subspace, vertex))


def cone_over_form(f: Form, subspace: LinearSubspace, vertex) -> Form:
    """Cone over the zero locus of ``f`` restricted to ``subspace``.

    The vertex is ``vertex`` together with the standard directions used to
    complete a basis, so the cone is defined for subspaces of any dimension.
    """
    if subspace.contains(vertex):
        raise ValueError("vertex lies in the subspace")
    return lift_form(f.restrict(subspace), subspace, vertex)


def ci_ideal_cubics_dimension(generators: Sequence[Form], degree: int = 3) -> int:
    """Dimension of the degree-``degree`` part of the ideal the generators span."""
    if not generators:
        return 0
    nvars, field = generators[0].nvars, generators[0].field
    rows = []
    for g in generators:
        if g.nvars != nvars:
            raise ValueError("generators live in different polynomial rings")
        if g.degree > degree:
            raise ValueError(f"generator of degree {g.degree} exceeds {degree}")
        for exps in monomial_basis(nvars, degree - g.degree):
            rows.append((Form(nvars, degree - g.degree, {exps: 1}, field) * g).to_vector())
    return linalg.matrix_rank(rows, field)
