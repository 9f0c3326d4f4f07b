"""Closed-form invariants of nodal quartic threefolds and rationality verdicts.

Everything here is integer arithmetic.  Verdicts carry exactly one rule
identifier from ``RULES`` plus any assumptions the caller asserted.  Rules
whose truth is conjectural are flagged as such and never masquerade as
proven conclusions.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

# dimensions entering the Hodge-number formula for a nodal quartic in P^4
H0_CUBICS = 35  # h^0(O_P4(3))
H4_TWISTED_OMEGA = 5  # h^4(Omega^1_P4 (x) O(-4))
H3_TWISTED_OMEGA = 0  # h^3(Omega^1_P4 (x) O(-4))
MAX_QUARTIC_NODES = 45


class Conclusion(str, Enum):
    Q_FACTORIAL = "QFactorial"
    NOT_Q_FACTORIAL = "NotQFactorial"
    NON_RATIONAL = "NonRational"
    INCONCLUSIVE = "Inconclusive"

    def __str__(self) -> str:
        return self.value


RULES: dict[str, str] = {
    "valera-euler": "standard degree-4 del Pezzo fibration over P^1 with Euler characteristic not in {0, -8, -4} is non-rational",
    "shokurov-2K+D": "standard conic bundle over a rational surface whose class 2K + D is effective is non-rational",
    "quartic-8-nodes": "nodal quartic threefold with at most 8 nodes is Q-factorial",
    "quartic-9-nodes-plane": "nodal quartic threefold with 9 nodes is Q-factorial if and only if it contains no plane",
    "hypersurface-2d-4": "nodal hypersurface in P^4 of degree d with at most 2d-4 nodes is Q-factorial",
    "conjecture-(d-1)^2": "nodal hypersurface with fewer than (d-1)^2 nodes is Q-factorial",
    "conjecture-no-plane": "nodal hypersurface without planes and fewer than 2(d-1)(d-2) nodes is Q-factorial",
    "conjecture-no-plane-no-quadric": "nodal hypersurface without planes or quadrics and at most 2(d-1)(d-2) nodes is Q-factorial",
    "no-rule": "no implemented rule applies",
}

CONJECTURAL_RULES = frozenset(r for r in RULES if r.startswith("conjecture-"))
ASSUMPTION_STANDARD = "standard fibration assumed"
ASSUMPTION_CONJECTURE = "conjecture assumed"


@dataclass(frozen=True)
class InvariantsReport:
    num_nodes: int
    defect: int
    h11: int
    h21: int  # h^2(Omega^1) of a small resolution
    chi: int

    def as_dict(self) -> dict[str, int]:
        return {"nodes": self.num_nodes, "defect": self.defect, "h11": self.h11,
                "h2_omega1": self.h21, "chi": self.chi}


def _require_int(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise TypeError(f"{name} must be an integer, got {value!r}")
    return value


def cynk_invariants(num_nodes: int, defect: int) -> InvariantsReport:
    """Hodge numbers and Euler characteristic of a small resolution of a
    nodal quartic threefold with the given node count and defect.
    """
    _require_int("num_nodes", num_nodes)
    _require_int("defect", defect)
    if not 0 <= num_nodes <= MAX_QUARTIC_NODES:
        raise ValueError(f"node count must lie in [0, {MAX_QUARTIC_NODES}], got {num_nodes}")
    if not 0 <= defect <= num_nodes:
        raise ValueError(f"defect must lie in [0, {num_nodes}], got {defect}")
    h21 = H0_CUBICS - H4_TWISTED_OMEGA + H3_TWISTED_OMEGA - num_nodes + defect
    h11 = 1 + defect
    chi = 2 * (1 + h11) - 2 * h21
    return InvariantsReport(num_nodes, defect, h11, h21, chi)


@dataclass(frozen=True)
class DivisorClass:
    """a * s_inf + b * l on the Hirzebruch surface F_r."""

    a: int
    b: int
    r: int = 1

    def __post_init__(self):
        for name in ("a", "b", "r"):
            _require_int(name, getattr(self, name))
        if self.r < 0:
            raise ValueError("Hirzebruch index must be non-negative")

    def _same(self, other: "DivisorClass") -> None:
        if not isinstance(other, DivisorClass):
            raise TypeError("expected a DivisorClass")
        if other.r != self.r:
            raise ValueError(f"classes live on F_{self.r} and F_{other.r}")

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.a + other.a, self.b + other.b, self.r)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        self._same(other)
        return DivisorClass(self.a - other.a, self.b - other.b, self.r)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b, self.r)

    def __rmul__(self, k: int) -> "DivisorClass":
        _require_int("scalar", k)
        return DivisorClass(k * self.a, k * self.b, self.r)

    def dot(self, other: "DivisorClass") -> int:
        return fr_intersect(self, other)

    @property
    def is_effective(self) -> bool:
        # the effective cone of F_r is spanned by s_inf and l
        return self.a >= 0 and self.b >= 0

    @property
    def coefficients(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self) -> str:
        return f"{self.a}*s + {self.b}*l on F_{self.r}"

    @classmethod
    def section(cls, r: int) -> "DivisorClass":
        return cls(1, 0, r)

    @classmethod
    def fiber(cls, r: int) -> "DivisorClass":
        return cls(0, 1, r)


def fr_intersect(d1: DivisorClass, d2: DivisorClass) -> int:
    """Intersection number with s_inf^2 = -r, s_inf.l = 1, l^2 = 0."""
    d1._same(d2)
    return -d1.r * d1.a * d2.a + d1.a * d2.b + d2.a * d1.b


def fr_canonical(r: int) -> DivisorClass:
    _require_int("r", r)
    if r < 0:
        raise ValueError("Hirzebruch index must be non-negative")
    return DivisorClass(-2, -(r + 2), r)


def discriminant_class(k2_fiber_l: int, k2_fiber_s: int, r: int) -> DivisorClass:
    """Class of the discriminant curve of a conic bundle over F_r.

    The surfaces over a fiber l and over the section s_inf are conic bundles
    over P^1 with K^2 values ``k2_fiber_l`` and ``k2_fiber_s``, so they have
    8 - K^2 degenerate fibers, which fixes D.l and D.s_inf.
    """
    for name, v in (("k2_fiber_l", k2_fiber_l), ("k2_fiber_s", k2_fiber_s), ("r", r)):
        _require_int(name, v)
    if k2_fiber_l > 8 or k2_fiber_s > 8:
        raise ValueError("K^2 of a conic bundle over P^1 is at most 8")
    if r < 0:
        raise ValueError("Hirzebruch index must be non-negative")
    d_l = 8 - k2_fiber_l
    d_s = 8 - k2_fiber_s
    a = d_l
    return DivisorClass(a, d_s + r * a, r)


@dataclass(frozen=True)
class Verdict:
    conclusion: Conclusion
    rule: str
    assumptions: tuple[str, ...] = ()
    detail: str = ""

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule!r}")

    @property
    def conjectural(self) -> bool:
        return self.rule in CONJECTURAL_RULES

    @property
    def citation(self) -> str:
        return self.rule

    def as_dict(self) -> dict:
        return {
            "conclusion": self.conclusion.value,
            "rule": self.rule,
            "proven": not self.conjectural,
            "assumptions": list(self.assumptions),
            "detail": self.detail,
        }


VALERA_EXCLUDED = (0, -8, -4)


def valera_verdict(chi: int, standard: bool) -> Verdict:
    _require_int("chi", chi)
    if not standard:
        return Verdict(Conclusion.INCONCLUSIVE, "valera-euler", ("standard fibration not asserted",),
                       "criterion needs a standard del Pezzo fibration")
    if chi in VALERA_EXCLUDED:
        return Verdict(Conclusion.INCONCLUSIVE, "valera-euler", (ASSUMPTION_STANDARD,),
                       f"chi = {chi} is an excluded value")
    return Verdict(Conclusion.NON_RATIONAL, "valera-euler", (ASSUMPTION_STANDARD,), f"chi = {chi}")


def shokurov_verdict(delta: DivisorClass) -> Verdict:
    c = 2 * fr_canonical(delta.r) + delta
    detail = f"2K + D = ({c.a}, {c.b})"
    if c.is_effective:
        return Verdict(Conclusion.NON_RATIONAL, "shokurov-2K+D", (), detail + " is effective")
    return Verdict(Conclusion.INCONCLUSIVE, "shokurov-2K+D", (), detail + " is not effective")


def bound_verdict(degree: int, num_nodes: int, contains_plane: bool = False,
                  contains_quadric: bool = False) -> Verdict:
    """Q-factoriality from node counts: proven rules first, then the
    conjectural thresholds (marked by an assumption flag).
    """
    d, s = _require_int("degree", degree), _require_int("num_nodes", num_nodes)
    if d < 2:
        raise ValueError("degree must be at least 2")
    if s < 0:
        raise ValueError("node count must be non-negative")
    if d == 4 and s > MAX_QUARTIC_NODES:
        raise ValueError(f"a nodal quartic threefold has at most {MAX_QUARTIC_NODES} nodes, got {s}")
    if d == 4 and s <= 8:
        return Verdict(Conclusion.Q_FACTORIAL, "quartic-8-nodes")
    if d == 4 and s == 9:
        if contains_plane:
            return Verdict(Conclusion.NOT_Q_FACTORIAL, "quartic-9-nodes-plane", ("contains a plane",))
        return Verdict(Conclusion.Q_FACTORIAL, "quartic-9-nodes-plane", ("contains no plane",))
    if s <= 2 * d - 4:
        return Verdict(Conclusion.Q_FACTORIAL, "hypersurface-2d-4")
    bound = 2 * (d - 1) * (d - 2)
    if s < (d - 1) ** 2:
        return Verdict(Conclusion.Q_FACTORIAL, "conjecture-(d-1)^2", (ASSUMPTION_CONJECTURE,))
    if s < bound and not contains_plane:
        return Verdict(Conclusion.Q_FACTORIAL, "conjecture-no-plane",
                       (ASSUMPTION_CONJECTURE, "contains no plane"))
    if s <= bound and not contains_plane and not contains_quadric:
        return Verdict(Conclusion.Q_FACTORIAL, "conjecture-no-plane-no-quadric",
                       (ASSUMPTION_CONJECTURE, "contains no plane", "contains no quadric"))
    return Verdict(Conclusion.INCONCLUSIVE, "no-rule")
