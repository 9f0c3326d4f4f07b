"""Finite point configurations: almost-general-position checks and
excluding subspaces.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Iterable, Sequence

from .core import linalg
from .core.forms import monomial_basis
from .core.points import LinearSubspace, ProjectivePoint, span


class DegenerateConfigurationError(ValueError):
    pass


class PointConfiguration:
    """An ordered list of distinct points in one ambient P^n."""

    def __init__(self, points: Iterable, n: int | None = None):
        pts = [p if isinstance(p, ProjectivePoint) else ProjectivePoint(p) for p in points]
        if n is None:
            if not pts:
                raise ValueError("an empty configuration needs an explicit ambient dimension")
            n = pts[0].n
        for p in pts:
            if p.n != n:
                raise ValueError(f"point {p} is not in P^{n}")
        if len(set(pts)) != len(pts):
            raise ValueError("configuration points must be distinct")
        if len({p.field for p in pts}) > 1:
            raise ValueError("configuration mixes field backends")
        self.n = n
        self.points: tuple[ProjectivePoint, ...] = tuple(pts)

    @property
    def field(self):
        return self.points[0].field

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def __contains__(self, p):
        return p in self.points

    def __eq__(self, other):
        if not isinstance(other, PointConfiguration):
            return NotImplemented
        return self.n == other.n and self.points == other.points

    def __repr__(self):
        return f"PointConfiguration(n={self.n}, {[str(p) for p in self.points]})"

    def subset(self, indices: Iterable[int]) -> "PointConfiguration":
        return PointConfiguration([self.points[i] for i in indices], self.n)

    def without(self, i: int) -> "PointConfiguration":
        return PointConfiguration(self.points[:i] + self.points[i + 1:], self.n)

    def with_point(self, p: ProjectivePoint) -> "PointConfiguration":
        return PointConfiguration(self.points + (p,), self.n)


@dataclass(frozen=True)
class AgpThresholds:
    max_on_line: int = 3
    max_on_conic: int = 6
    max_on_plane: int = 8

    def __post_init__(self):
        if min(self.max_on_line, self.max_on_conic, self.max_on_plane) < 1:
            raise ValueError("thresholds must be positive")
        if not self.max_on_line <= self.max_on_conic <= self.max_on_plane:
            raise ValueError("need max_on_line <= max_on_conic <= max_on_plane")


@dataclass
class AgpReport:
    max_on_line: int
    max_on_conic: int
    max_on_plane: int
    thresholds: AgpThresholds
    # index tuples attaining each maximum
    witnesses: dict[str, tuple[int, ...]] = dc_field(default_factory=dict)
    conic_semantics: str = "inclusive"

    @property
    def line_ok(self) -> bool:
        return self.max_on_line <= self.thresholds.max_on_line

    @property
    def conic_ok(self) -> bool:
        return self.max_on_conic <= self.thresholds.max_on_conic

    @property
    def plane_ok(self) -> bool:
        return self.max_on_plane <= self.thresholds.max_on_plane

    @property
    def passed(self) -> bool:
        return self.line_ok and self.conic_ok and self.plane_ok

    @property
    def failures(self) -> dict[str, tuple[int, ...]]:
        out = {}
        for key, ok in (("line", self.line_ok), ("conic", self.conic_ok), ("plane", self.plane_ok)):
            if not ok:
                out[key] = self.witnesses[key]
        return out


class _Incidence:
    """Lines and planes spanned by configuration points, with member sets."""

    def __init__(self, cfg: PointConfiguration):
        self.cfg = cfg
        pts = cfg.points
        self.line_of: dict[tuple[int, int], tuple[int, ...]] = {}
        lines: dict[tuple[int, ...], LinearSubspace] = {}
        for i, j in combinations(range(len(pts)), 2):
            if (i, j) in self.line_of:
                continue
            L = span([pts[i], pts[j]])
            members = tuple(k for k in range(len(pts)) if k in (i, j) or L.contains(pts[k]))
            lines[members] = L
            for a, b in combinations(members, 2):
                self.line_of[(a, b)] = members
        self.lines = lines
        planes: dict[tuple[int, ...], LinearSubspace] = {}
        seen: set[tuple[int, int, int]] = set()
        for tri in combinations(range(len(pts)), 3):
            if tri in seen or self.collinear(*tri):
                continue
            P = span([pts[k] for k in tri])
            members = tuple(k for k in range(len(pts)) if k in tri or P.contains(pts[k]))
            planes[members] = P
            seen.update(combinations(members, 3))
        self.planes = planes

    def collinear(self, a: int, b: int, c: int) -> bool:
        a, b, c = sorted((a, b, c))
        return c in self.line_of[(a, b)]


def _best(candidates: Iterable[tuple[int, ...]]) -> tuple[int, ...]:
    """Largest member set, ties broken lexicographically."""
    return min(candidates, key=lambda s: (-len(s), s))


def _conic_rows(plane: LinearSubspace, pts: Sequence[ProjectivePoint]) -> list[list]:
    basis = monomial_basis(3, 2)
    rows = []
    for p in pts:
        c = plane.local_coordinates(p)
        rows.append([c[0] ** e[0] * c[1] ** e[1] * c[2] ** e[2] for e in basis])
    return rows


def _plane_conic_sets(inc: _Incidence, members: tuple[int, ...], plane: LinearSubspace,
                      smooth: bool) -> list[tuple[int, ...]]:
    """Candidate co-conic subsets inside one plane (the best one is what matters)."""
    pts = inc.cfg.points
    k = len(members)
    out: list[tuple[int, ...]] = []
    if not smooth and k <= 5:
        return [members]
    for five in combinations(members, 5):
        if any(inc.collinear(*tri) for tri in combinations(five, 3)):
            continue
        rows = _conic_rows(plane, [pts[i] for i in five])
        conic = linalg.nullspace(rows, 6, plane.field)
        if len(conic) != 1:
            continue
        q = conic[0]
        on = []
        for i in members:
            vals = _conic_rows(plane, [pts[i]])[0]
            if not sum((a * b for a, b in zip(q, vals)), plane.field.zero):
                on.append(i)
        out.append(tuple(on))
    if smooth:
        # small arcs (no three collinear) always lie on a smooth conic
        for size in range(min(4, k), 0, -1):
            arcs = [s for s in combinations(members, size)
                    if not any(inc.collinear(*tri) for tri in combinations(s, 3))]
            if arcs:
                out.append(arcs[0])
                break
        return out
    out.append(members[:5])
    groups = [m for m in inc.lines if set(m) <= set(members)] + [(i,) for i in members]
    for g1, g2 in combinations(groups, 2):
        out.append(tuple(sorted(set(g1) | set(g2))))
    return out


def agp_check(cfg: PointConfiguration, th: AgpThresholds | None = None,
              conic_semantics: str = "inclusive") -> AgpReport:
    """Maximal numbers of configuration points on a line, a conic and a plane.

    ``conic_semantics`` is ``"inclusive"`` (any nonzero plane quadric,
    including line pairs) or ``"smooth"``.
    """
    th = th or AgpThresholds()
    if conic_semantics not in ("inclusive", "smooth"):
        raise ValueError("conic_semantics must be 'inclusive' or 'smooth'")
    smooth = conic_semantics == "smooth"
    m = len(cfg)
    if m == 0:
        raise ValueError("empty configuration")
    if cfg.n < 2:
        raise ValueError("ambient dimension must be at least 2")
    if m == 1:
        w = {"line": (0,), "conic": (0,), "plane": (0,)}
        return AgpReport(1, 1, 1, th, w, conic_semantics)

    inc = _Incidence(cfg)
    line_w = _best(inc.lines)
    plane_w = _best(list(inc.planes) + [line_w])
    if smooth:
        conic_cands = [line_w[:2]]
    else:
        conic_cands = [line_w]
    for members, plane in inc.planes.items():
        conic_cands.extend(_plane_conic_sets(inc, members, plane, smooth))
    conic_w = _best(conic_cands)
    w = {"line": line_w, "conic": conic_w, "plane": plane_w}
    return AgpReport(len(line_w), len(conic_w), len(plane_w), th, w, conic_semantics)


def conic_through(points: Sequence[ProjectivePoint]) -> list | None:
    """Coefficients of a nonzero plane quadric through coplanar points, or None.

    Used to re-verify co-conic witnesses independently of agp_check.
    """
    pts = list(points)
    plane = span(pts)
    if plane.dim > 2:
        return None
    n = pts[0].n
    for i in range(n + 1):
        if plane.dim == 2:
            break
        e = ProjectivePoint.coordinate(i, n, pts[0].field)
        if not plane.contains(e):
            plane = plane.join(e)
    ns = linalg.nullspace(_conic_rows(plane, pts), 6, plane.field)
    return ns[0] if ns else None


def find_excluding_subspace(delta: PointConfiguration | Sequence[ProjectivePoint],
                            p: ProjectivePoint, r: int) -> LinearSubspace:
    """A subspace of dimension r through at least r+1 points of ``delta``
    that misses ``p``.

    Requires that ``p`` together with ``delta`` is not contained in any
    r-dimensional subspace.  Choices are the lexicographically first
    admissible ones by input index.
    """
    pts = list(delta)
    if not pts:
        raise DegenerateConfigurationError("configuration degenerate for requested r")
    n = pts[0].n
    if not 1 <= r < n:
        raise DegenerateConfigurationError(f"need 1 <= r < {n}, got r={r}")
    if p in pts or span(pts + [p]).dim <= r:
        raise DegenerateConfigurationError("configuration degenerate for requested r")
    return _excluding(pts, p, r)


def _first_independent(pts: Sequence[ProjectivePoint], k: int) -> list[ProjectivePoint]:
    chosen: list[ProjectivePoint] = []
    for q in pts:
        if len(chosen) == k:
            break
        if linalg.matrix_rank([list(c) for c in chosen] + [list(q)]) == len(chosen) + 1:
            chosen.append(q)
    return chosen


def _excluding(pts: list[ProjectivePoint], p: ProjectivePoint, r: int) -> LinearSubspace:
    qs = _first_independent(pts, r + 1)
    T = span(qs)
    if not T.contains(p):
        return T
    if r == 0:
        # unreachable: a single point q != p never contains p
        raise DegenerateConfigurationError("configuration degenerate for requested r")
    q = next(x for x in pts if not T.contains(x))
    S = _excluding(qs, p, r - 1)
    return S.join(q)
