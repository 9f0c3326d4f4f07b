"""Quartic threefold families in P^4 assembled from constituent forms."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from ..core.forms import Form

NVARS = 5

# constituent names and degrees, in the order they appear in the equation
FAMILY_CONSTITUENTS: dict[str, tuple[tuple[str, int], ...]] = {
    "plane": (("h3", 3), ("g3", 3)),
    "quadric": (("a2", 2), ("h2", 2), ("b3", 3), ("g1", 1)),
    "delpezzo": (("a2", 2), ("h2", 2), ("b2", 2), ("g2", 2)),
    "burkhardt": (),
    "custom": (("F", 4),),
}

FAMILY_EQUATIONS = {
    "plane": "x*h3 + y*g3",
    "quadric": "a2*h2 - b3*g1",
    "delpezzo": "a2*h2 + b2*g2",
    "burkhardt": "w^4 - w*(x^3 + y^3 + z^3 + t^3) + 3*x*y*z*t",
    "custom": "F",
}


class FamilyError(ValueError):
    pass


def _var(i: int) -> Form:
    return Form.variable(i, NVARS)


def burkhardt_form() -> Form:
    x, y, z, t, w = (_var(i) for i in range(NVARS))
    return w ** 4 - w * (x ** 3 + y ** 3 + z ** 3 + t ** 3) + 3 * x * y * z * t


def _assemble(tag: str, c: Mapping[str, Form]) -> Form:
    if tag == "plane":
        return _var(0) * c["h3"] + _var(1) * c["g3"]
    if tag == "quadric":
        return c["a2"] * c["h2"] - c["b3"] * c["g1"]
    if tag == "delpezzo":
        return c["a2"] * c["h2"] + c["b2"] * c["g2"]
    if tag == "burkhardt":
        return burkhardt_form()
    return c["F"]


@dataclass(frozen=True)
class QuarticSpec:
    form: Form
    tag: str
    constituents: tuple[tuple[str, Form], ...] = ()

    def __post_init__(self):
        if self.tag not in FAMILY_CONSTITUENTS:
            raise FamilyError(f"unknown family tag {self.tag!r}")
        if self.form.nvars != NVARS or self.form.degree != 4:
            raise FamilyError("a quartic spec needs a degree-4 form in 5 variables")
        if _assemble(self.tag, dict(self.constituents)) != self.form:
            raise FamilyError("form does not match its constituents")

    def constituent(self, name: str) -> Form:
        return dict(self.constituents)[name]

    @property
    def field(self):
        return self.form.field

    def node_system(self) -> list[Form] | None:
        """Forms whose common zeros are the designed singular points.

        None for families whose singularities are not described this way.
        """
        c = dict(self.constituents)
        if self.tag == "plane":
            return [_var(0), _var(1), c["h3"], c["g3"]]
        if self.tag == "quadric":
            return [c["h2"], c["g1"], c["a2"], c["b3"]]
        if self.tag == "delpezzo":
            return [c["h2"], c["g2"], c["a2"], c["b2"]]
        return None


def build_family(tag: str, constituents: Mapping[str, Form] | None = None, **kwargs: Form) -> QuarticSpec:
    """Assemble the quartic of a family from its constituent forms.

    >>> from quarticnodes.core import Form
    >>> x, y, z, t, w = (Form.variable(i, 5) for i in range(5))
    >>> spec = build_family("plane", h3=z**3, g3=t**3)
    >>> str(spec.form)
    'x*z^3 + y*t^3'
    """
    if tag not in FAMILY_CONSTITUENTS:
        raise FamilyError(f"unknown family tag {tag!r}; expected one of {sorted(FAMILY_CONSTITUENTS)}")
    given = dict(constituents or {})
    given.update(kwargs)
    wanted = FAMILY_CONSTITUENTS[tag]
    names = {n for n, _ in wanted}
    extra = set(given) - names
    if extra:
        raise FamilyError(f"family {tag!r} takes no constituent(s) {sorted(extra)}")
    missing = names - set(given)
    if missing:
        raise FamilyError(f"family {tag!r} is missing constituent(s) {sorted(missing)}")
    ordered = []
    for name, deg in wanted:
        f = given[name]
        if f.nvars != NVARS:
            raise FamilyError(f"{name} has {f.nvars} variables, expected {NVARS}")
        if f.degree != deg:
            raise FamilyError(f"{name} has degree {f.degree}, expected {deg}")
        if not f:
            raise FamilyError(f"{name} is the zero form")
        ordered.append((name, f))
    fields = {f.field for _, f in ordered}
    if len(fields) > 1:
        raise FamilyError("constituents mix field backends")
    form = _assemble(tag, given)
    if not form:
        raise FamilyError("the assembled quartic is identically zero")
    return QuarticSpec(form, tag, tuple(ordered))


def burkhardt() -> QuarticSpec:
    return build_family("burkhardt")


def designed_plane(perturbed: bool = False) -> QuarticSpec:
    """Plane family whose node system is the 3x3 grid in the plane x = y = 0.

    The unperturbed quartic is also singular along the line z = t = w = 0;
    ``perturbed=True`` adds x^3 to h3 and y^3 to g3, which removes that line
    while leaving the node system unchanged.
    """
    x, y, z, t, w = (_var(i) for i in range(NVARS))
    h3 = z * (z - w) * (z + w)
    g3 = t * (t - w) * (t + w)
    if perturbed:
        h3 = h3 + x ** 3
        g3 = g3 + y ** 3
    return build_family("plane", h3=h3, g3=g3)


# integer combinations of the split quadrics x^2 - w^2, ..., t^2 - w^2 used by
# the "mixed" del Pezzo instance (rows: a2, h2, b2, g2)
_MIXED_DELPEZZO = ((1, -1, 1, 1), (2, -1, 1, 2), (2, -2, 1, -2), (1, -2, 1, -1))


def designed_delpezzo(variant: str = "symmetric") -> QuarticSpec:
    """Del Pezzo family whose node system is 16 rational points.

    ``symmetric``: a2, h2, b2, g2 = z^2-w^2, x^2-w^2, t^2-w^2, y^2-w^2, with
    nodes (+-1:+-1:+-1:+-1:1).  This quartic is also singular along lines in
    w = 0, away from the node system.

    ``perturbed``: b2 = t^2 - 4w^2, moving the nodes to t = +-2.

    ``mixed``: the four quadrics are integer combinations of the symmetric
    ones, chosen so that the quartic is singular only at the 16 points.
    Writing F = Q(q1, .., q4) with q_i = x_i^2 - w^2, a singular point needs
    x_i * dQ/dq_i = 0 for all i and w * sum_i dQ/dq_i = 0, which for each
    support pattern of x is a square linear system in (x_i^2, w^2).  The
    chosen coefficients make all of these systems nonsingular.
    """
    x, y, z, t, w = (_var(i) for i in range(NVARS))
    q = [x * x - w * w, y * y - w * w, z * z - w * w, t * t - w * w]
    if variant == "symmetric":
        return build_family("delpezzo", a2=q[2], h2=q[0], b2=q[3], g2=q[1])
    if variant == "perturbed":
        return build_family("delpezzo", a2=q[2], h2=q[0], b2=t * t - 4 * w * w, g2=q[1])
    if variant == "mixed":
        forms = []
        for row in _MIXED_DELPEZZO:
            acc = Form.zero(NVARS, 2)
            for c, qi in zip(row, q):
                acc = acc + qi.scale(c)
            forms.append(acc)
        a2, h2, b2, g2 = forms
        return build_family("delpezzo", a2=a2, h2=h2, b2=b2, g2=g2)
    raise ValueError(f"unknown del Pezzo variant {variant!r}")


def designed_quadric() -> QuarticSpec:
    """Quadric family on the smooth quadric surface Q: xy = zt, w = 0.

    Inside w = 0, a2 is the smooth quadric 2xy - zt, which meets Q in the
    four rulings on x = 0 and y = 0.  b3 restricts to a product of three
    planes.  Hence h2 = g1 = a2 = b3 = 0 consists of 4 * 3 = 12 rational
    points.  The w-multiples keep a2 and b3 away from special position, so
    that (as scans over several primes confirm) the quartic has no
    singular points besides these twelve.
    """
    x, y, z, t, w = (_var(i) for i in range(NVARS))
    g1 = w
    h2 = x * y - z * t
    a2 = 2 * x * y - z * t + w * (x + 2 * z - t + 3 * w)
    planes = (x + y + z + 2 * t + w) * (x - y + 2 * z + 3 * t) * (2 * x + 3 * y - z + t - w)
    b3 = planes + w * (y * y + z * t - x * w + 2 * x * z)
    return build_family("quadric", a2=a2, h2=h2, b3=b3, g1=g1)
