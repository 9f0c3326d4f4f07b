"""Text formats: polynomials, point sets and quartic spec files.

Polynomials use terms joined by ``+``/``-``; a term is an optional
coefficient (``3`` or ``3/4``) followed by ``*`` and a monomial such as
``x^2*y``.  Point files hold one point per line with coordinates ``a/b``
separated by ``:``; anything after the first whitespace is ignored, and
``#`` starts a comment.  Spec files start with ``family <tag>`` followed by
``name = polynomial`` lines.
"""

from __future__ import annotations

import re
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from ..core.fields import QQ, GF, PrimeField
from ..core.forms import Form, format_form, variable_names
from ..core.points import ProjectivePoint
from ..families.quartics import FAMILY_CONSTITUENTS, QuarticSpec, build_family


class ParseError(Exception):
    """Malformed input; ``token`` is the offending piece of text."""

    def __init__(self, message: str, token: str = "", source: str = ""):
        self.message = message
        self.token = token
        self.source = source
        where = f" in {source}" if source else ""
        tok = f" (offending token {token!r})" if token else ""
        super().__init__(f"{message}{where}{tok}")

    def at(self, source: str) -> "ParseError":
        return ParseError(self.message, self.token, source)


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\^)|(\*)|([+-])|(\S))")
_FIELD_DIRECTIVE = re.compile(r"#\s*field:\s*(QQ|GF\((\d+)\))\s*$")


def _tokens(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        num, name, caret, star, sign, bad = m.groups()
        if bad is not None:
            raise ParseError("unexpected character", bad)
        kind = "num" if num else "name" if name else "^" if caret else "*" if star else "sign"
        yield kind, m.group().strip()
        pos = m.end()


def parse_form(text: str, nvars: int = 5, field=QQ, degree: int | None = None) -> Form:
    """Parse a homogeneous polynomial in the text grammar."""
    names = variable_names(nvars)
    index = {n: i for i, n in enumerate(names)}
    toks = list(_tokens(text))
    if not toks:
        raise ParseError("empty polynomial", text)
    terms: list[tuple[Fraction, tuple[int, ...], str]] = []
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, "")

    def monomial(exps: list[int]) -> None:
        nonlocal pos
        while True:
            kind, tok = peek()
            if kind != "name":
                raise ParseError("expected a variable", tok or text.strip())
            if tok not in index:
                raise ParseError(f"unknown variable (expected one of {', '.join(names)})", tok)
            pos += 1
            e = 1
            if peek()[0] == "^":
                pos += 1
                kind, etok = peek()
                if kind != "num" or "/" in etok:
                    raise ParseError("exponent must be a non-negative integer", etok or "^")
                e = int(etok)
                pos += 1
            exps[index[tok]] += e
            if peek()[0] != "*":
                return
            pos += 1

    while pos < len(toks):
        start = pos
        sign = 1
        kind, tok = peek()
        if kind == "sign":
            sign = -1 if tok == "-" else 1
            pos += 1
        elif terms:
            raise ParseError("expected '+' or '-' between terms", tok)
        coeff = Fraction(1)
        exps = [0] * nvars
        kind, tok = peek()
        if kind == "num":
            try:
                coeff = Fraction(tok)
            except ZeroDivisionError:
                raise ParseError("zero denominator", tok) from None
            pos += 1
            if peek()[0] == "*":
                pos += 1
                monomial(exps)
        elif kind == "name":
            monomial(exps)
        elif kind is None:
            raise ParseError("dangling sign at end of polynomial", toks[-1][1])
        else:
            raise ParseError("expected a coefficient or variable", tok)
        kind, tok = peek()
        if kind not in (None, "sign"):
            raise ParseError("unexpected token", tok)
        terms.append((sign * coeff, tuple(exps), " ".join(t for _, t in toks[start:pos])))
    degs = {sum(e) for _, e, _ in terms}
    d = degree if degree is not None else max(degs)
    for c, e, t in terms:
        if sum(e) != d:
            raise ParseError(f"polynomial is not homogeneous of degree {d}", t)
    coeffs: dict[tuple[int, ...], object] = {}
    for c, e, _ in terms:
        coeffs[e] = coeffs.get(e, 0) + c
    if isinstance(field, PrimeField):
        for c in coeffs.values():
            if Fraction(c).denominator % field.p == 0:
                raise ParseError(f"coefficient does not reduce mod {field.p}", str(c))
    return Form(nvars, d, coeffs, field)


def parse_scalar(tok: str, field=QQ):
    tok = tok.strip()
    if not re.fullmatch(r"[+-]?\d+(?:/\d+)?", tok):
        raise ParseError("bad coordinate", tok)
    value = Fraction(tok)
    try:
        return field(value)
    except ZeroDivisionError:
        raise ParseError(f"coordinate does not reduce in {field}", tok) from None


def parse_point(text: str, field=QQ, n: int | None = None) -> ProjectivePoint:
    parts = text.strip().split(":")
    if len(parts) < 2 or any(not p.strip() for p in parts):
        raise ParseError("a point needs at least two ':'-separated coordinates", text.strip())
    coords = [parse_scalar(p, field) for p in parts]
    if n is not None and len(coords) != n + 1:
        raise ParseError(f"expected {n + 1} coordinates", text.strip())
    if not any(coords):
        raise ParseError("all coordinates are zero", text.strip())
    return ProjectivePoint(coords, field)


def _field_from_directive(line: str):
    m = _FIELD_DIRECTIVE.match(line.strip())
    if not m:
        return None
    if m.group(2):
        p = int(m.group(2))
        try:
            return GF(p)
        except ValueError:
            raise ParseError("field directive needs a prime", m.group(2)) from None
    return QQ


def parse_points(text: str, source: str = "", field=None) -> list[ProjectivePoint]:
    """Points from point-file text.  A ``# field: GF(p)`` line switches the
    coordinate field (default QQ)."""
    pts: list[ProjectivePoint] = []
    fld = field
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            directive = _field_from_directive(line)
            if directive is not None and field is None:
                if pts:
                    raise ParseError("field directive after the first point", line, f"{source}:{lineno}")
                fld = directive
            continue
        token = line.split()[0]
        where = f"{source}:{lineno}" if source else f"line {lineno}"
        try:
            P = parse_point(token, fld or QQ)
        except ParseError as exc:
            raise exc.at(where) from None
        if n is None:
            n = P.n
        elif P.n != n:
            raise ParseError(f"point has {P.n + 1} coordinates, expected {n + 1}", token, where)
        pts.append(P)
    return pts


def format_points(points: Iterable[ProjectivePoint], columns: Iterable[str] | None = None) -> str:
    pts = list(points)
    lines = []
    if pts and isinstance(pts[0].field, PrimeField):
        lines.append(f"# field: GF({pts[0].field.p})")
    cols = list(columns) if columns is not None else [""] * len(pts)
    for P, extra in zip(pts, cols):
        lines.append(f"{P} {extra}".rstrip())
    return "\n".join(lines) + "\n"


def parse_spec(text: str, source: str = "") -> QuarticSpec:
    tag = None
    given: dict[str, Form] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        where = f"{source}:{lineno}" if source else f"line {lineno}"
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if tag is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "family":
                raise ParseError("spec must start with 'family <tag>'", line, where)
            tag = parts[1]
            if tag not in FAMILY_CONSTITUENTS:
                raise ParseError(f"unknown family (expected one of {', '.join(FAMILY_CONSTITUENTS)})", tag, where)
            continue
        if "=" not in line:
            raise ParseError("expected 'name = polynomial'", line, where)
        name, poly = (s.strip() for s in line.split("=", 1))
        wanted = dict(FAMILY_CONSTITUENTS[tag])
        if name not in wanted:
            raise ParseError(f"family {tag} has no constituent of this name", name, where)
        if name in given:
            raise ParseError("constituent given twice", name, where)
        try:
            given[name] = parse_form(poly)
        except ParseError as exc:
            raise exc.at(where) from None
    if tag is None:
        raise ParseError("empty spec file", "", source)
    return build_family(tag, given)


def format_spec(spec: QuarticSpec) -> str:
    lines = [f"family {spec.tag}"]
    lines.extend(f"{name} = {format_form(f)}" for name, f in spec.constituents)
    return "\n".join(lines) + "\n"


def data_path(name: str) -> Path:
    return Path(str(resources.files("quarticnodes") / "data" / name))


def resolve_path(path: str) -> Path:
    """The given path if it exists, else a bundled data file of that name."""
    p = Path(path)
    if p.exists():
        return p
    bundled = data_path(p.name)
    if bundled.exists():
        return bundled
    raise FileNotFoundError(path)


def read_points(path: str, field=None) -> list[ProjectivePoint]:
    p = resolve_path(path)
    return parse_points(p.read_text(), str(path), field)


def read_spec(path: str) -> QuarticSpec:
    p = resolve_path(path)
    return parse_spec(p.read_text(), str(path))
