"""Classification of singular points and exact node location."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from ..config import PointConfiguration
from ..core import linalg
from ..core.fields import PrimeField
from ..core.forms import Form, evaluate_form, reduce_mod
from ..core.points import ProjectivePoint
from .quartics import QuarticSpec
from .solve import NotRationalError, common_rational_zeros


class NotOnHypersurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class NodeReport:
    point: ProjectivePoint
    on_hypersurface: bool
    gradient_vanishes: bool
    hessian_rank: int

    @property
    def classification(self) -> str:
        if not self.gradient_vanishes:
            return "smooth"
        if self.hessian_rank == 4:
            return "node"
        return f"degenerate({self.hessian_rank})"

    @property
    def is_node(self) -> bool:
        return self.classification == "node"

    @property
    def is_singular(self) -> bool:
        return self.gradient_vanishes


@lru_cache(maxsize=64)
def _derivatives(form: Form) -> tuple[tuple[Form, ...], tuple[tuple[Form, ...], ...]]:
    grad = tuple(form.partial(i) for i in range(form.nvars))
    hess = tuple(tuple(g.partial(j) for j in range(form.nvars)) for g in grad)
    return grad, hess


def _form_over(spec: QuarticSpec | Form, field) -> Form:
    F = spec.form if isinstance(spec, QuarticSpec) else spec
    if F.field == field:
        return F
    if isinstance(field, PrimeField):
        try:
            return reduce_mod(F, field.p)
        except ZeroDivisionError as exc:
            raise ValueError(f"coefficients do not reduce mod {field.p}: {exc}") from exc
    raise ValueError(f"cannot evaluate a form over {F.field} at a point over {field}")


def classify_singularity(spec: QuarticSpec | Form, P: ProjectivePoint) -> NodeReport:
    """Smooth / node / degenerate(rank) classification of a point on the quartic.

    A singular point is a node when the 5x5 matrix of second partials has
    rank 4 (the point itself always lies in its kernel by Euler's relation).
    """
    field = P.field
    if isinstance(field, PrimeField) and field.p < 5:
        raise ValueError("classification needs characteristic 0 or at least 5")
    F = _form_over(spec, field)
    if evaluate_form(F, P):
        raise NotOnHypersurfaceError(f"point not on hypersurface: {P}")
    grad, hess = _derivatives(F)
    gvals = [evaluate_form(g, P) for g in grad]
    H = [[evaluate_form(h, P) for h in row] for row in hess]
    rank = linalg.matrix_rank(H, field)
    return NodeReport(P, True, not any(gvals), rank)


def designed_nodes(spec: QuarticSpec) -> PointConfiguration:
    """Common zeros of the family's node system, each checked to be singular on F."""
    system = spec.node_system()
    if system is None:
        raise NotRationalError(f"family {spec.tag!r} has no node system; use scan")
    pts = common_rational_zeros(system)
    for P in pts:
        if not classify_singularity(spec, P).is_singular:
            raise ArithmeticError(f"node-system point {P} is not singular on the quartic")
    return PointConfiguration(pts, 4)
