"""Shared generators for the test-suite: seeded random configurations and
hypothesis strategies over small exact values."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from quarticnodes.config import PointConfiguration
from quarticnodes.core import GF, QQ, Form, LinearSubspace, ProjectivePoint, monomial_basis, nullspace

GRID = [(a, b) for a in (0, 1, -1) for b in (0, 1, -1)]


def grid_p4() -> list[ProjectivePoint]:
    return [ProjectivePoint([0, 0, a, b, 1]) for a, b in GRID]


def grid_plane() -> list[ProjectivePoint]:
    return [ProjectivePoint([a, b, 1]) for a, b in GRID]


# -- seeded generators -----------------------------------------------------------

def random_point(rng: random.Random, n: int, k: int = 3) -> ProjectivePoint:
    while True:
        c = [rng.randint(-k, k) for _ in range(n + 1)]
        if any(c):
            return ProjectivePoint(c)


def random_subspace(rng: random.Random, n: int, dim: int) -> LinearSubspace:
    """Span of ``dim + 1`` random points, retried until it has the right dimension."""
    while True:
        W = LinearSubspace([list(random_point(rng, n)) for _ in range(dim + 1)])
        if W.dim == dim:
            return W


def random_in(rng: random.Random, W: LinearSubspace, k: int = 3) -> ProjectivePoint:
    while True:
        c = [rng.randint(-k, k) for _ in W.basis]
        if any(c):
            return W.from_local(c)


def _on_conic(rng: random.Random, n: int, count: int) -> list[ProjectivePoint]:
    plane = random_subspace(rng, n, 2)
    params = rng.sample(range(-4, 5), count)
    return [plane.from_local([1, s, s * s]) for s in params]


def structured_configuration(rng: random.Random, n: int = 4, max_points: int = 8) -> list[ProjectivePoint]:
    """A random point set biased towards special position.

    Mixes generic points with points on a common line, conic, plane or
    hyperplane so that the almost-general-position check is exercised near
    its thresholds.
    """
    m = rng.randint(1, max_points)
    mode = rng.choice(["generic", "line", "conic", "plane", "hyperplane", "mixed"])
    pts: list[ProjectivePoint] = []
    if mode == "line":
        L = random_subspace(rng, n, 1)
        pts += [random_in(rng, L) for _ in range(rng.randint(2, 4))]
    elif mode == "conic":
        pts += _on_conic(rng, n, rng.randint(4, 7))
    elif mode == "plane":
        P = random_subspace(rng, n, 2)
        pts += [random_in(rng, P) for _ in range(rng.randint(3, 9))]
    elif mode == "hyperplane":
        H = random_subspace(rng, n, n - 1)
        pts += [random_in(rng, H) for _ in range(rng.randint(4, 8))]
    elif mode == "mixed":
        L = random_subspace(rng, n, 1)
        pts += [random_in(rng, L) for _ in range(3)]
        pts += _on_conic(rng, n, rng.randint(3, 5))
    while len(pts) < m:
        pts.append(random_point(rng, n))
    out, seen = [], set()
    for p in pts:
        if p not in seen:
            seen.add(p)
            out.append(p)
    rng.shuffle(out)
    return out[:max(m, 1)] if mode == "generic" else out[:max_points]


def random_agp_instances(seed: int, count: int, n: int = 4, max_points: int = 8):
    """Yield ``count`` configurations that pass the default AGP check."""
    from quarticnodes.config import agp_check

    rng = random.Random(seed)
    produced = 0
    while produced < count:
        pts = structured_configuration(rng, n, max_points)
        cfg = PointConfiguration(pts)
        if agp_check(cfg).passed:
            produced += 1
            yield cfg


# -- hypothesis strategies -------------------------------------------------------

small_ints = st.integers(min_value=-5, max_value=5)
rationals = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 6))
primes = st.sampled_from([5, 7, 11, 13, 101, 10007])


@st.composite
def points(draw, n: int = 4, field=QQ):
    coords = draw(st.lists(small_ints, min_size=n + 1, max_size=n + 1).filter(any))
    return ProjectivePoint([field(c) for c in coords], field)


@st.composite
def forms(draw, nvars: int = 5, degree: int | None = None, field=QQ, max_terms: int = 6):
    d = draw(st.integers(0, 4)) if degree is None else degree
    basis = monomial_basis(nvars, d)
    idx = draw(st.lists(st.integers(0, len(basis) - 1), min_size=1, max_size=max_terms, unique=True))
    coeffs = {basis[i]: field(draw(small_ints)) for i in idx}
    return Form(nvars, d, coeffs, field)


@st.composite
def matrices(draw, max_rows: int = 6, max_cols: int = 6, field=None):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = draw(st.lists(st.lists(small_ints, min_size=c, max_size=c), min_size=r, max_size=r))
    if field is not None:
        rows = [[field(v) for v in row] for row in rows]
    return rows


def excluding_instance(rng: random.Random, n: int, r: int):
    """(delta, p) with {p} and delta not inside any r-dimensional subspace."""
    from quarticnodes.core import span

    while True:
        m = rng.randint(r + 1, r + 4)
        delta = []
        if rng.random() < 0.5:
            # load a subspace through p to make the naive choice fail
            W = random_subspace(rng, n, r)
            p = random_in(rng, W)
            delta += [random_in(rng, W) for _ in range(r + 1)]
        else:
            p = random_point(rng, n)
        delta += [random_point(rng, n) for _ in range(m - len(delta))]
        delta = list(dict.fromkeys(q for q in delta if q != p))
        if len(delta) >= r + 1 and span(delta + [p]).dim > r:
            return delta, p


__all__ = [
    "GF",
    "GRID",
    "excluding_instance",
    "forms",
    "grid_p4",
    "grid_plane",
    "matrices",
    "nullspace",
    "points",
    "primes",
    "random_agp_instances",
    "random_in",
    "random_point",
    "random_subspace",
    "rationals",
    "structured_configuration",
]
