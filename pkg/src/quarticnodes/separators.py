"""Constructive separating cubics.

Given at most eight points and one more point p in almost general position
in P^2, P^3 or P^4, build an explicit cubic through the points that misses
p.  The construction follows a case analysis on r, the largest number of
points sharing a hyperplane with p:

* small r: a product of three hyperplanes, each spanned by a few points;
* r = 3 in P^3: one plane from the excluding-subspace lemma, two more
  through line pairs;
* r = 4, 5: hyperplanes through two lines L1, L2 inside the big
  hyperplane (both missing p), each joined with an outside point, times
  a hyperplane through what is left;
* r >= 6: a cone over a cubic in the big hyperplane, with vertex the
  single outside point, or (two outside points) the intersection O of
  the lines <p7, q> and <p8, q'> for q, q' on that cubic.

In P^2 the cubic is a product of lines when one exists, otherwise a member
of the linear system of cubics through the points.  "Sufficiently general"
choices are made by sweeping integer pencil parameters 0, 1, 2, ... and
verifying what is needed; the first success wins.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations
from typing import Any, Sequence

from .conditions import lift_form, separating_form_oracle
from .config import AgpThresholds, DegenerateConfigurationError, PointConfiguration, agp_check, find_excluding_subspace
from .core import linalg
from .core.forms import Form, evaluate_form, product
from .core.points import LinearSubspace, ProjectivePoint, as_vector, projection_matrix, span

PENCIL_BUDGET = 64
MAX_POINTS = 8


class SeparatorError(ValueError):
    """No certificate; ``case`` names the failing branch of the construction."""

    def __init__(self, case: str, message: str):
        super().__init__(f"[{case}] {message}")
        self.case = case


class _CaseFailed(Exception):
    def __init__(self, case: str):
        super().__init__(case)
        self.case = case


@dataclass
class CubicCertificate:
    form: Form
    sigma: tuple[ProjectivePoint, ...]
    excluded: ProjectivePoint
    trace: dict[str, Any] = dc_field(default_factory=dict)

    def verify(self) -> bool:
        return (self.form.degree == 3
                and all(not evaluate_form(self.form, q) for q in self.sigma)
                and bool(evaluate_form(self.form, self.excluded)))


def build_separating_cubic(sigma: PointConfiguration | Sequence[ProjectivePoint], p: ProjectivePoint,
                           thresholds: AgpThresholds | None = None) -> CubicCertificate:
    pts = list(sigma)
    n = p.n
    if n not in (2, 3, 4):
        raise SeparatorError("precondition", f"ambient dimension {n} not in 2..4")
    if len(pts) > MAX_POINTS:
        raise SeparatorError("precondition", f"{len(pts)} points exceed {MAX_POINTS}")
    if p in pts:
        raise SeparatorError("precondition", f"excluded point {p} belongs to the configuration")
    report = agp_check(PointConfiguration(pts + [p], n), thresholds)
    if not report.passed:
        raise SeparatorError("precondition", f"not in almost general position: {sorted(report.failures)}")
    trace: dict[str, Any] = {}
    try:
        form = _separate(pts, p, trace)
    except _CaseFailed as exc:
        raise SeparatorError(exc.case, "no certificate found within the search budget") from None
    cert = CubicCertificate(form, tuple(pts), p, trace)
    if not cert.verify():
        raise SeparatorError(trace.get("case", "?"), "constructed cubic failed verification")
    return cert


# -- helpers ---------------------------------------------------------------

def _vanishing_linear_forms(points: Sequence, n: int, field) -> list[list]:
    if not points:
        return [[field.one if i == j else field.zero for j in range(n + 1)] for i in range(n + 1)]
    return linalg.nullspace([as_vector(q) for q in points], n + 1, field)


def hyperplane_avoiding(points: Sequence, p: ProjectivePoint) -> tuple[Form, int] | None:
    """A linear form through ``points`` that is nonzero at ``p``.

    Sweeps the members sum_j t^j * b_j of the space of linear forms through
    the points for t = 0, 1, 2, ...; returns the form and the parameter used.
    """
    field, n = p.field, p.n
    if points and span(list(points) + [p]).dim == span(points).dim:
        return None
    basis = _vanishing_linear_forms(points, n, field)
    pv = as_vector(p)
    for t in range(PENCIL_BUDGET):
        coeffs = [field.zero] * (n + 1)
        for j, b in enumerate(basis):
            s = field(t) ** j if j else field.one
            coeffs = [c + s * v for c, v in zip(coeffs, b)]
        if sum((c * v for c, v in zip(coeffs, pv)), field.zero):
            return Form.linear(coeffs, field), t
    return None


def _product_of_hyperplanes(groups: Sequence[Sequence[ProjectivePoint]], p, trace) -> Form | None:
    factors, params = [], []
    for g in groups:
        found = hyperplane_avoiding(g, p)
        if found is None:
            return None
        factors.append(found[0])
        params.append(found[1])
    while len(factors) < 3:
        factors.append(factors[-1])
    trace["pencil_parameters"] = params
    return product(factors)


def _windows(k: int, size: int, count: int = 3) -> list[list[int]]:
    size = min(size, k)
    return [[(start + j) % k for j in range(size)] for start in range(0, size * count, size)]


def _max_incidence(pts: Sequence[ProjectivePoint], p: ProjectivePoint, dim: int):
    """Largest number of points sharing a ``dim``-dimensional subspace with p."""
    best = None
    seen = set()
    for combo in combinations(range(len(pts)), dim):
        W = span([p] + [pts[i] for i in combo])
        if W.dim != dim:
            continue
        members = tuple(i for i in range(len(pts)) if i in combo or W.contains(pts[i]))
        if members in seen:
            continue
        seen.add(members)
        if best is None or len(members) > len(best[0]):
            best = (members, W)
    return best


# -- dispatcher ------------------------------------------------------------

def _separate(pts: list[ProjectivePoint], p: ProjectivePoint, trace: dict) -> Form:
    n = p.n
    trace["dim"] = n
    trace["points"] = len(pts)
    if not pts:
        trace["case"] = "empty"
        ell = hyperplane_avoiding([], p)[0]
        return ell * ell * ell
    W = span(pts + [p])
    if W.dim < n:
        trace["case"] = "reduce-to-span"
        sub: dict = {}
        trace["inner"] = sub
        local = _separate([W.local_point(q) for q in pts], W.local_point(p), sub)
        return local.compose(projection_matrix(W))
    if n == 1:
        return _on_line(pts, p, trace)
    if n == 2:
        return _in_plane(pts, p, trace)
    return _in_space(pts, p, trace)


def _on_line(pts, p, trace) -> Form:
    trace["case"] = "line"
    if len(pts) > 3:
        raise _CaseFailed("line")
    groups = [[q] for q in pts] or [[]]
    form = _product_of_hyperplanes(groups, p, trace)
    if form is None:
        raise _CaseFailed("line")
    return form


def _in_plane(pts, p, trace) -> Form:
    remaining = list(range(len(pts)))
    groups = []
    while remaining:
        a = remaining[0]
        group = [a]
        for b in remaining[1:]:
            L = span([pts[a], pts[b]])
            if not L.contains(p):
                group = [i for i in remaining if i in (a, b) or L.contains(pts[i])]
                break
        groups.append(group)
        remaining = [i for i in remaining if i not in group]
    if len(groups) <= 3:
        form = _product_of_hyperplanes([[pts[i] for i in g] for g in groups], p, trace)
        if form is not None:
            trace["case"] = "plane/lines"
            trace["groups"] = groups
            return form
    trace["case"] = "plane/anticanonical"
    form = separating_form_oracle(pts, p, 3)
    if form is None:
        raise _CaseFailed("plane/anticanonical")
    return form


def _in_space(pts, p, trace) -> Form:
    n = p.n
    members, H = _max_incidence(pts, p, n - 1)
    r = len(members)
    trace["r"] = r
    trace["hyperplane_points"] = list(members)
    if n == 3 and r == 3:
        return _excluding_plane_case(pts, p, members, trace)
    if r <= n - 1:
        trace["case"] = f"hyperplane-products(r={r})"
        groups = _windows(len(pts), n)
        trace["groups"] = groups
        form = _product_of_hyperplanes([[pts[i] for i in g] for g in groups], p, trace)
        if form is None:
            raise _CaseFailed(trace["case"])
        return form
    if r in (4, 5):
        return _line_pairs_case(pts, p, members, r, trace)
    return _cone_case(pts, p, members, H, r, trace)


def _excluding_plane_case(pts, p, members, trace) -> Form:
    case = "excluding-plane(r=3)"
    trace["case"] = case
    guided = _guided_excluding_plane(pts, p, members, trace)
    if guided is not None:
        return guided
    groups = _three_plane_partition(pts, p)
    if groups is None:
        raise _CaseFailed(case)
    sub: dict = {}
    form = _product_of_hyperplanes([[pts[i] for i in g] for g in groups], p, sub)
    trace["groups"] = groups
    trace["pencil_parameters"] = sub["pencil_parameters"]
    return form


def _guided_excluding_plane(pts, p, members, trace) -> Form | None:
    outside = [i for i in range(len(pts)) if i not in members]
    try:
        H = find_excluding_subspace([pts[i] for i in outside], p, 2)
    except DegenerateConfigurationError:
        return None
    covered = [i for i in range(len(pts)) if H.contains(pts[i])]
    rest = [i for i in range(len(pts)) if i not in covered]
    if hyperplane_avoiding([pts[i] for i in covered], p) is None:
        return None
    size = min(3, len(rest))
    # prefer the pattern: a line through two in-plane points plus one outside point
    candidates = sorted(combinations(rest, size),
                        key=lambda g: (sum(i in members for i in g) != 2, g))
    for g1 in candidates:
        g2 = [i for i in rest if i not in g1]
        if len(g2) > 3:
            continue
        groups = [covered, list(g1), g2] if g2 else [covered, list(g1)]
        sub: dict = {}
        form = _product_of_hyperplanes([[pts[i] for i in g] for g in groups], p, sub)
        if form is not None:
            trace["groups"] = groups
            trace["pencil_parameters"] = sub["pencil_parameters"]
            return form
    return None


def _three_plane_partition(pts, p) -> list[list[int]] | None:
    """Split the points into at most three groups, each on a hyperplane missing p.

    Exhaustive over subsets (at most 2^8 of them); used when the guided
    grouping above does not apply.
    """
    k = len(pts)
    good = {0}
    for mask in range(1, 1 << k):
        group = [pts[i] for i in range(k) if mask >> i & 1]
        if not span(group + [p]).dim == span(group).dim and span(group).dim < p.n:
            good.add(mask)
    full = (1 << k) - 1
    for a in sorted(good):
        if not a & 1 and a:
            continue
        rest = full & ~a
        b = rest
        while True:
            if b in good and (rest & ~b) in good:
                masks = [m for m in (a, b, rest & ~b) if m]
                return [[i for i in range(k) if m >> i & 1] for m in masks]
            if b == 0:
                break
            b = (b - 1) & rest
    return None


def _line_pairs_case(pts, p, members, r, trace) -> Form:
    case = f"line-pairs(r={r})"
    trace["case"] = case
    outside = [i for i in range(len(pts)) if i not in members]
    lines_ok = {
        pair: not span([pts[pair[0]], pts[pair[1]]]).contains(p)
        for pair in combinations(members, 2)
    }
    for l1, l2 in combinations([pr for pr, ok in lines_ok.items() if ok], 2):
        if set(l1) & set(l2):
            continue
        left = [i for i in members if i not in l1 and i not in l2]
        assignments = list(permutations(outside, 2)) if len(outside) >= 2 else [tuple(outside)]
        for a in assignments:
            extra1 = [a[0]] if len(a) > 0 else []
            extra2 = [a[1]] if len(a) > 1 else []
            third = left + [i for i in outside if i not in a]
            groups = [list(l1) + extra1, list(l2) + extra2, third]
            if not third:
                groups = groups[:2]
            sub: dict = {}
            form = _product_of_hyperplanes([[pts[i] for i in g] for g in groups], p, sub)
            if form is not None:
                trace["lines"] = [list(l1), list(l2)]
                trace["groups"] = groups
                trace["pencil_parameters"] = sub["pencil_parameters"]
                return form
    raise _CaseFailed(case)


def _cone_case(pts, p, members, H: LinearSubspace, r, trace) -> Form:
    outside = [i for i in range(len(pts)) if i not in members]
    inside_local = [H.local_point(pts[i]) for i in members]
    p_local = H.local_point(p)
    if len(outside) == 1:
        case = f"cone-point-vertex(r={r})"
        trace["case"] = case
        trace["vertex"] = outside[0]
        sub: dict = {}
        trace["inner"] = sub
        try:
            base = _separate(inside_local, p_local, sub)
        except _CaseFailed:
            raise _CaseFailed(case) from None
        return lift_form(base, H, pts[outside[0]])
    case = f"cone-two-points(r={r})"
    trace["case"] = case
    if len(outside) != 2:
        raise _CaseFailed(case)
    field = p.field
    a, b = (as_vector(pts[i]) for i in outside)
    h = H.equations[0]
    ha = sum((x * y for x, y in zip(h, a)), field.zero)
    hb = sum((x * y for x, y in zip(h, b)), field.zero)
    # where the line <p7, p8> meets the hyperplane
    meet = [hb * x - ha * y for x, y in zip(a, b)]
    for s in range(PENCIL_BUDGET):
        u = [field.zero] * len(meet)
        for j, row in enumerate(H.basis):
            c = field(s) ** j if j else field.one
            u = [x + c * y for x, y in zip(u, row)]
        if linalg.matrix_rank([meet, u], field) < 2:
            continue
        q = [x + y for x, y in zip(meet, u)]
        q2 = [2 * x + y for x, y in zip(meet, u)]
        qp, q2p = ProjectivePoint(q, field), ProjectivePoint(q2, field)
        if qp == p or q2p == p or qp in pts or q2p in pts:
            continue
        ker = linalg.nullspace(linalg.transpose([a, q, [-x for x in b], [-x for x in q2]]), 4, field)
        if len(ker) != 1:
            continue
        k = ker[0]
        vertex = [k[0] * x + k[1] * y for x, y in zip(a, q)]
        if not any(vertex) or H.contains(vertex):
            continue
        sub = {}
        try:
            base = _separate(inside_local + [H.local_point(qp), H.local_point(q2p)], p_local, sub)
        except _CaseFailed:
            continue
        form = lift_form(base, H, vertex)
        if all(not evaluate_form(form, x) for x in pts) and evaluate_form(form, p):
            trace["pencil_parameter"] = s
            trace["q"] = str(qp)
            trace["q_prime"] = str(q2p)
            trace["vertex"] = str(ProjectivePoint(vertex, field))
            trace["inner"] = sub
            return form
    raise _CaseFailed(case)
