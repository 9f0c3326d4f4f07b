"""Regenerate the bundled data files under src/quarticnodes/data.

Deterministic: rerunning produces byte-identical files.

    python scripts/make_data.py
"""

from __future__ import annotations

import json
import random
import sys
from collections import Counter
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from quarticnodes.cli.parsing import format_points, format_spec  # noqa: E402
from quarticnodes.conditions import separating_form_oracle  # noqa: E402
from quarticnodes.config import PointConfiguration, agp_check  # noqa: E402
from quarticnodes.core import Form, LinearSubspace, ProjectivePoint, nullspace  # noqa: E402
from quarticnodes.families import (  # noqa: E402
    build_family,
    burkhardt,
    designed_delpezzo,
    designed_plane,
    designed_quadric,
)
from quarticnodes.separators import SeparatorError, build_separating_cubic  # noqa: E402

DATA = ROOT / "src" / "quarticnodes" / "data"
GRID = [(a, b) for a in (0, 1, -1) for b in (0, 1, -1)]


def write(name: str, text: str) -> None:
    (DATA / name).write_text(text)


def point_files() -> None:
    write("grid9.pts", "# 3x3 grid (0:0:a:b:1), a, b in {0, 1, -1}: complete intersection of two plane cubics\n"
          + format_points(ProjectivePoint([0, 0, a, b, 1]) for a, b in GRID))
    write("grid9_plane.pts", "# the same grid inside P^2\n"
          + format_points(ProjectivePoint([a, b, 1]) for a, b in GRID))
    write("malformed.pts", "# second point has a bad coordinate token\n1:0:0:0:0\n0:1:zz:0:0\n")
    write("agp_collinear4.pts", "# four points on the line z = t = w = 0\n"
          + format_points(ProjectivePoint(v) for v in
                          ([1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [1, 1, 0, 0, 0], [1, 2, 0, 0, 0])))
    # seven points on the conic x*z = y^2 in the plane t = w = 0
    write("agp_conic7.pts", "# seven points on the conic x*z = y^2 in the plane t = w = 0\n"
          + format_points(ProjectivePoint([1, s, s * s, 0, 0]) for s in range(-3, 4)))
    # six points on that conic plus two general points: admissible
    conic6 = [ProjectivePoint([1, s, s * s, 0, 0]) for s in range(-3, 3)]
    extra = [ProjectivePoint([0, 0, 1, 1, 1]), ProjectivePoint([1, -1, 2, 3, -2])]
    write("agp_conic6_plus2.pts", "# six co-conic points and two more; passes the check\n"
          + format_points(conic6 + extra))
    general = [ProjectivePoint(v) for v in (
        [1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1],
        [1, 1, 1, 1, 1], [1, 2, 3, 4, 5], [1, -1, 2, -3, 5])]
    write("agp_general8.pts", "# eight points in general position in P^4\n" + format_points(general))


def spec_files() -> None:
    x, y, z, t, w = (Form.variable(i, 5) for i in range(5))
    specs = {
        "plane.spec": designed_plane(),
        "plane_perturbed.spec": designed_plane(perturbed=True),
        "delpezzo.spec": designed_delpezzo("symmetric"),
        "delpezzo_perturbed.spec": designed_delpezzo("perturbed"),
        "delpezzo_mixed.spec": designed_delpezzo("mixed"),
        "quadric.spec": designed_quadric(),
        "burkhardt.spec": burkhardt(),
        "fermat.spec": build_family("custom", F=x ** 4 + y ** 4 + z ** 4 + t ** 4 + w ** 4),
    }
    for name, spec in specs.items():
        write(name, format_spec(spec))


# -- separator corpus ----------------------------------------------------------

def _random_point(rng: random.Random, n: int, k: int = 3) -> ProjectivePoint:
    while True:
        c = [rng.randint(-k, k) for _ in range(n + 1)]
        if any(c):
            return ProjectivePoint(c)


def _random_in(rng: random.Random, W: LinearSubspace, k: int = 3) -> ProjectivePoint:
    while True:
        c = [rng.randint(-k, k) for _ in W.basis]
        if any(c):
            return W.from_local(c)


def _trace_r(trace: dict):
    while "r" not in trace and "inner" in trace:
        trace = trace["inner"]
    return trace.get("r")


def separator_corpus(per_bucket: int = 14, seed: int = 20240607) -> list[dict]:
    rng = random.Random(seed)
    buckets: Counter = Counter()
    instances: list[dict] = []
    attempts = 0
    while attempts < 20000:
        attempts += 1
        n = rng.choice([2, 3, 4])
        if n == 2:
            m = rng.randint(2, 8)
            pts = [_random_point(rng, 2) for _ in range(m)]
        else:
            target = rng.randint(2, 7)
            while True:
                eq = [rng.randint(-2, 2) for _ in range(n + 1)]
                if any(eq):
                    break
            H = LinearSubspace(nullspace([eq], n + 1))
            total = rng.randint(max(target + 1, 4), 9)
            pts = [_random_in(rng, H) for _ in range(target + 1)]
            pts += [_random_point(rng, n) for _ in range(total - target - 1)]
        if len(set(pts)) < len(pts):
            continue
        if not agp_check(PointConfiguration(pts)).passed:
            continue
        p, sigma = pts[0], pts[1:]
        try:
            cert = build_separating_cubic(sigma, p)
        except SeparatorError as exc:
            raise SystemExit(f"builder failed on an admissible instance: {exc}\n{[str(q) for q in sigma]} {p}")
        r = _trace_r(cert.trace)
        key = (n, cert.trace["case"] if n == 2 else r)
        if buckets[key] >= per_bucket:
            continue
        buckets[key] += 1
        oracle = separating_form_oracle(sigma, p, 3)
        instances.append({
            "dim": n,
            "sigma": [str(q) for q in sigma],
            "p": str(p),
            "admissible": True,
            "r": r,
            "case": cert.trace["case"],
            "oracle_separable": oracle is not None,
        })
    # Cayley-Bacharach negatives: the plane grid with one point excluded
    grid = [ProjectivePoint([a, b, 1]) for a, b in GRID]
    for i in range(len(grid)):
        instances.append({
            "dim": 2,
            "sigma": [str(q) for j, q in enumerate(grid) if j != i],
            "p": str(grid[i]),
            "admissible": False,
            "r": None,
            "case": "precondition",
            "oracle_separable": False,
        })
    for k, inst in enumerate(instances):
        inst["id"] = k
    return instances


def main() -> None:
    DATA.mkdir(parents=True, exist_ok=True)
    point_files()
    spec_files()
    corpus = separator_corpus()
    write("separator_corpus.json", json.dumps({"instances": corpus}, indent=1) + "\n")
    summary = Counter((c["dim"], c["r"], c["case"]) for c in corpus)
    for k, v in sorted(summary.items(), key=str):
        print(k, v)
    print(len(corpus), "instances")


if __name__ == "__main__":
    main()
