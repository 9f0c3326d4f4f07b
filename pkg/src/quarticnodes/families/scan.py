"""Exhaustive singular-point scan of a quartic over a prime field.

P^4(F_p) is split into the five standard charts (coordinate c equal to 1,
coordinates before c equal to 0).  Each chart with at least two free
coordinates is further sliced by the value of its first free coordinate.
On every slice, the partial derivatives are specialized to the chart and
evaluated with vectorized integer arithmetic.  The sparsest partial is
evaluated first, and the remaining ones only on its zeros.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..core.fields import GF, is_prime
from ..core.forms import Form
from ..core.points import ProjectivePoint
from .nodes import NodeReport, _form_over, classify_singularity
from .quartics import QuarticSpec

_Poly = list[tuple[int, tuple[int, ...]]]  # (coefficient mod p, exponents of free vars)


@dataclass(frozen=True)
class ScanResult:
    prime: int
    reports: tuple[NodeReport, ...]
    points_enumerated: int
    seconds: float

    @property
    def rate(self) -> float:
        return self.points_enumerated / self.seconds if self.seconds > 0 else float("inf")


def _chart_polys(grad: list[Form], c: int, p: int) -> list[_Poly]:
    polys = []
    for g in grad:
        acc: dict[tuple[int, ...], int] = {}
        for exps, coeff in g.coeffs.items():
            if any(exps[:c]):
                continue
            key = exps[c + 1:]
            acc[key] = (acc.get(key, 0) + coeff.value) % p
        polys.append([(v, k) for k, v in acc.items() if v])
    return polys


def _evaluate(poly: _Poly, powers: list, p: int, shape) -> np.ndarray:
    out = np.zeros(shape, dtype=np.int64)
    for coeff, exps in poly:
        term = np.int64(coeff)
        for pw, e in zip(powers, exps):
            if e:
                term = term * pw[e]
        out += term % p
    return out % p


def _scan_unit(polys: list[_Poly], p: int, c: int, lead: int | None) -> tuple[list[tuple[int, ...]], int]:
    """Singular points of chart c with first free coordinate = lead (or the whole chart)."""
    nfree = 4 - c
    if nfree == 0:
        ok = all(not poly for poly in polys)
        pt = tuple([0] * c + [1])
        return ([pt] if ok else []), 1
    grid_dims = nfree - (1 if lead is not None else 0)
    vals = np.arange(p, dtype=np.int64)
    pw_base = [np.ones(p, dtype=np.int64)]
    for _ in range(3):
        pw_base.append(pw_base[-1] * vals % p)
    powers = []
    if lead is not None:
        powers.append([np.int64(pow(lead, e, p)) for e in range(4)])
    for k in range(grid_dims):
        shape = [1] * grid_dims
        shape[k] = p
        powers.append([b.reshape(shape) for b in pw_base])
    shape = (p,) * grid_dims
    order = sorted(range(len(polys)), key=lambda i: len(polys[i]))
    first = polys[order[0]]
    if first:
        mask = _evaluate(first, powers, p, shape) == 0
    else:
        mask = np.ones(shape, dtype=bool)
    idx = np.nonzero(mask)
    for i in order[1:]:
        if not len(idx[0]):
            break
        poly = polys[i]
        if not poly:
            continue
        sub = []
        if lead is not None:
            sub.append(powers[0])
        for k in range(grid_dims):
            sub.append([b[idx[k]] for b in pw_base])
        keep = _evaluate(poly, sub, p, idx[0].shape) == 0
        idx = tuple(a[keep] for a in idx)
    prefix = [0] * c + [1] + ([lead] if lead is not None else [])
    pts = [tuple(prefix + [int(a[j]) for a in idx]) for j in range(len(idx[0]))]
    return pts, p ** grid_dims


def scan(spec: QuarticSpec | Form, p: int, threads: int = 1) -> ScanResult:
    if not is_prime(p) or p < 5:
        raise ValueError(f"scan needs a prime p >= 5, got {p}")
    if threads < 1:
        raise ValueError("threads must be positive")
    if p > 20000:
        raise ValueError("prime too large for exhaustive scanning")
    field = GF(p)
    F = _form_over(spec, field)
    grad = [F.partial(i) for i in range(5)]
    units = []
    for c in range(5):
        polys = _chart_polys(grad, c, p)
        if 4 - c >= 2:
            units.extend((polys, c, lead) for lead in range(p))
        else:
            units.append((polys, c, None))
    start = time.perf_counter()
    if threads == 1:
        results = [_scan_unit(polys, p, c, lead) for polys, c, lead in units]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda u: _scan_unit(u[0], p, u[1], u[2]), units))
    elapsed = time.perf_counter() - start
    total = sum(n for _, n in results)
    reports = tuple(
        classify_singularity(F, ProjectivePoint(coords, field))
        for pts, _ in results for coords in pts
    )
    return ScanResult(p, reports, total, elapsed)


def scan_singular(spec: QuarticSpec | Form, p: int, threads: int = 1) -> list[NodeReport]:
    """All singular points of the quartic over F_p, in chart-then-lexicographic order."""
    return list(scan(spec, p, threads).reports)


def projective_point_count(p: int, n: int = 4) -> int:
    return sum(p ** k for k in range(n + 1))
