from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as cartesian

import pytest
from hypothesis import given, settings, strategies as st

from quarticnodes.core import GF, QQ, Form, ProjectivePoint, evaluate_form, product, reduce_mod
from quarticnodes.families import (
    FAMILY_CONSTITUENTS,
    FamilyError,
    NotOnHypersurfaceError,
    NotRationalError,
    QuarticSpec,
    build_family,
    burkhardt,
    classify_singularity,
    common_rational_zeros,
    designed_delpezzo,
    designed_nodes,
    designed_plane,
    designed_quadric,
    linear_factors,
    projective_point_count,
    rational_roots,
    scan,
    scan_singular,
)
from strategies import forms

X, Y, Z, T, W = (Form.variable(i, 5) for i in range(5))


def _brute_singular(F: Form, p: int) -> list[ProjectivePoint]:
    """Every point of P^4(F_p) where all partials vanish, by direct evaluation."""
    Fp = reduce_mod(F, p)
    grad = Fp.gradient()
    out = []
    for lead in range(5):
        for tail in cartesian(range(p), repeat=4 - lead):
            P = ProjectivePoint([0] * lead + [1] + list(tail), GF(p))
            if all(evaluate_form(g, P) == 0 for g in grad):
                out.append(P)
    return out


class TestBuildFamily:
    def test_plane_assembly(self):
        h3, g3 = Z * (Z - W) * (Z + W), T * (T - W) * (T + W)
        spec = build_family("plane", h3=h3, g3=g3)
        assert spec.form == X * h3 + Y * g3
        assert spec.tag == "plane" and spec.constituent("h3") == h3

    def test_burkhardt_equation(self):
        F = burkhardt().form
        assert F.coeffs[(1, 1, 1, 1, 0)] == 3
        assert F == W ** 4 - W * (X ** 3 + Y ** 3 + Z ** 3 + T ** 3) + 3 * X * Y * Z * T
        assert build_family("burkhardt") == burkhardt()

    def test_delpezzo_and_quadric_assembly(self):
        a2, h2, b2, g2 = X * X - W * W, Y * Y - W * W, Z * Z - W * W, T * T - W * W
        assert build_family("delpezzo", a2=a2, h2=h2, b2=b2, g2=g2).form == a2 * h2 + b2 * g2
        b3 = X * Y * Z
        assert build_family("quadric", a2=a2, h2=h2, b3=b3, g1=W).form == a2 * h2 - b3 * W

    def test_constituents_dict_form(self):
        spec = build_family("plane", {"h3": Z ** 3, "g3": T ** 3})
        assert spec.form == X * Z ** 3 + Y * T ** 3

    @pytest.mark.parametrize("tag, kwargs, message", [
        ("plane", {"h3": Z ** 2, "g3": T ** 3}, "degree"),
        ("plane", {"h3": Z ** 3}, "missing"),
        ("plane", {"h3": Z ** 3, "g3": T ** 3, "g1": W}, "takes no"),
        ("burkhardt", {"h3": Z ** 3}, "takes no"),
        ("cubic", {}, "unknown"),
        ("custom", {"F": Form.variable(0, 4) ** 4}, "variables"),
        ("plane", {"h3": Z ** 3, "g3": Form.zero(5, 3)}, "zero"),
        ("plane", {"h3": Z ** 3, "g3": reduce_mod(T ** 3, 7)}, "field"),
    ])
    def test_invalid_constituents(self, tag, kwargs, message):
        with pytest.raises(FamilyError, match=message):
            build_family(tag, **kwargs)

    def test_spec_must_reassemble(self):
        with pytest.raises(FamilyError):
            QuarticSpec(X ** 4, "plane", (("h3", Z ** 3), ("g3", T ** 3)))

    def test_constituent_table(self):
        assert dict(FAMILY_CONSTITUENTS["quadric"]) == {"a2": 2, "h2": 2, "b3": 3, "g1": 1}
        assert not FAMILY_CONSTITUENTS["burkhardt"]


class TestSolver:
    def test_rational_roots(self):
        # (2x - 1)(x + 3)^2 = 2x^3 + 11x^2 + 12x - 9, low to high
        roots = rational_roots([-9, 12, 11, 2])
        assert sorted(roots) == [(Fraction(-3), 2), (Fraction(1, 2), 1)]
        assert rational_roots([1, 0, 1]) == []

    def test_linear_factors_split(self):
        f = (X + 2 * Y - W) * (Z - T) * (X - Fraction(1, 3) * W)
        factors = linear_factors(f)
        assert len(factors) == 3
        g = product(factors)
        m, c = g.terms()[0]
        assert g.scale(f.coeffs[m] / c) == f

    def test_linear_factors_refuse_irreducible(self):
        assert linear_factors(X * X + Y * Y + Z * Z) is None
        assert linear_factors((X * X - 2 * Y * Y) * Z) is None

    def test_common_zeros_of_coordinate_hyperplanes(self):
        pts = common_rational_zeros([X, Y, Z, T * (T - W)])
        assert pts == [ProjectivePoint([0, 0, 0, 0, 1]), ProjectivePoint([0, 0, 0, 1, 1])]

    def test_positive_dimensional_system(self):
        with pytest.raises(NotRationalError, match="nodes not rational; use scan"):
            common_rational_zeros([X, Y, Z])

    def test_unshared_irrational_factor_is_harmless(self):
        pts = common_rational_zeros([X, Y, Z, (T * T - 2 * W * W) * (T - W), T * T - W * W])
        assert pts == [ProjectivePoint([0, 0, 0, 1, 1])]

    def test_common_zero_at_infinity_of_a_line(self):
        pts = common_rational_zeros([X, Y, Z, T * W, T * (T + W)])
        assert pts == [ProjectivePoint([0, 0, 0, 0, 1])]

    def test_irrational_system(self):
        with pytest.raises(NotRationalError, match="nodes not rational; use scan"):
            common_rational_zeros([X, Y, Z, T * T - 2 * W * W])


class TestDesignedNodes:
    def test_plane_grid(self):
        nodes = designed_nodes(designed_plane())
        expected = {ProjectivePoint([0, 0, a, b, 1]) for a in (0, 1, -1) for b in (0, 1, -1)}
        assert set(nodes) == expected

    def test_symmetric_delpezzo(self):
        nodes = designed_nodes(designed_delpezzo("symmetric"))
        assert set(nodes) == {ProjectivePoint([a, b, c, d, 1]) for a, b, c, d in cartesian((1, -1), repeat=4)}

    def test_perturbed_delpezzo(self):
        nodes = designed_nodes(designed_delpezzo("perturbed"))
        assert set(nodes) == {ProjectivePoint([a, b, c, 2 * d, 1]) for a, b, c, d in cartesian((1, -1), repeat=4)}

    @pytest.mark.parametrize("spec, count", [
        (designed_plane(), 9), (designed_plane(True), 9),
        (designed_delpezzo("symmetric"), 16), (designed_delpezzo("perturbed"), 16),
        (designed_delpezzo("mixed"), 16), (designed_quadric(), 12),
    ], ids=["plane", "plane-perturbed", "dp-symmetric", "dp-perturbed", "dp-mixed", "quadric"])
    def test_counts_and_node_type(self, spec, count):
        nodes = designed_nodes(spec)
        assert len(nodes) == count
        for P in nodes:
            assert classify_singularity(spec, P).classification == "node"

    def test_no_node_system(self):
        with pytest.raises(NotRationalError, match="use scan"):
            designed_nodes(burkhardt())

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            designed_delpezzo("twisted")


class TestClassify:
    def test_burkhardt_node(self):
        rep = classify_singularity(burkhardt(), ProjectivePoint([1, 1, 1, 1, 1]))
        assert rep.classification == "node" and rep.hessian_rank == 4 and rep.is_singular

    def test_smooth_point(self):
        spec = build_family("custom", F=X ** 3 * W + Y ** 4 + Z ** 4 + T ** 4)
        rep = classify_singularity(spec, ProjectivePoint([1, 0, 0, 0, 0]))
        assert rep.classification == "smooth" and not rep.is_singular

    def test_degenerate_point(self):
        spec = build_family("custom", F=X * X * W * W + Y * Y * W * W + Z ** 4 + T ** 4)
        rep = classify_singularity(spec, ProjectivePoint([0, 0, 0, 0, 1]))
        assert rep.classification == "degenerate(2)" and rep.hessian_rank == 2

    def test_not_on_hypersurface(self):
        with pytest.raises(NotOnHypersurfaceError, match="point not on hypersurface"):
            classify_singularity(burkhardt(), ProjectivePoint([0, 0, 0, 0, 1]))

    def test_small_characteristic(self):
        with pytest.raises(ValueError):
            classify_singularity(burkhardt(), ProjectivePoint([1, 1, 1, 1, 1], GF(3)))

    def test_over_prime_field(self):
        rep = classify_singularity(burkhardt(), ProjectivePoint([1, 1, 1, 1, 1], GF(13)))
        assert rep.is_node

    def test_bad_denominator(self):
        spec = build_family("custom", F=Fraction(1, 7) * X ** 4 + Y ** 4)
        with pytest.raises(ValueError):
            classify_singularity(spec, ProjectivePoint([0, 0, 1, 0, 0], GF(7)))

    @given(st.integers(0, 10**6))
    def test_euler_bound_on_rank(self, seed):
        # at a singular point the Hessian kills the point itself, so rank <= 4
        rng = random.Random(seed)
        nodes = designed_nodes(designed_delpezzo("mixed"))
        P = nodes[rng.randrange(len(nodes))]
        assert classify_singularity(designed_delpezzo("mixed"), P).hessian_rank <= 4


class TestScan:
    def test_point_count(self):
        for p in (5, 7, 11):
            res = scan(burkhardt(), p)
            assert res.points_enumerated == projective_point_count(p) == p ** 4 + p ** 3 + p ** 2 + p + 1

    def test_burkhardt_counts(self):
        for p in (7, 13, 31):
            reports = scan_singular(burkhardt(), p)
            assert len(reports) == 45 and all(r.is_node for r in reports)
        # without cube roots of unity only 7 of the nodes are defined over F_p
        assert len(scan_singular(burkhardt(), 101)) == 7

    def test_fermat(self):
        assert scan_singular(build_family("custom", F=X ** 4 + Y ** 4 + Z ** 4 + T ** 4 + W ** 4), 7) == []

    def test_plane_family_contains_grid(self):
        pts = {r.point for r in scan_singular(designed_plane(), 11)}
        grid = {ProjectivePoint([0, 0, a, b, 1], GF(11)) for a in (0, 1, -1) for b in (0, 1, -1)}
        assert grid <= pts

    @pytest.mark.parametrize("spec, count", [
        (designed_plane(True), 9), (designed_delpezzo("mixed"), 16), (designed_quadric(), 12),
    ], ids=["plane-perturbed", "dp-mixed", "quadric"])
    def test_designed_instances_have_no_other_singular_points(self, spec, count):
        for p in (11, 13):
            reports = scan_singular(spec, p)
            assert len(reports) == count
            assert all(r.is_node for r in reports)
            designed = {ProjectivePoint(list(P), GF(p)) for P in designed_nodes(spec)}
            assert {r.point for r in reports} == designed

    @pytest.mark.parametrize("spec", [burkhardt(), designed_plane(), designed_quadric()],
                             ids=["burkhardt", "plane", "quadric"])
    def test_matches_brute_force(self, spec):
        for p in (5, 7):
            assert [r.point for r in scan_singular(spec, p)] == sorted(
                _brute_singular(spec.form, p), key=lambda P: _chart_key(P))

    @settings(max_examples=15)
    @given(forms(degree=4, max_terms=8))
    def test_random_quartics_match_brute_force(self, F):
        got = {r.point for r in scan_singular(F, 5)}
        assert got == set(_brute_singular(F, 5))

    def test_threads_do_not_change_output(self):
        one = scan(burkhardt(), 31, threads=1).reports
        four = scan(burkhardt(), 31, threads=4).reports
        assert one == four

    def test_node_bound(self):
        for spec in (burkhardt(), designed_quadric(), designed_delpezzo("mixed"), designed_plane(True)):
            assert len(scan_singular(spec, 13)) <= 45

    def test_rate(self):
        res = scan(burkhardt(), 101)
        assert res.rate >= 1e6

    @pytest.mark.parametrize("p", [2, 3, 9, 20011])
    def test_bad_primes(self, p):
        with pytest.raises(ValueError):
            scan(burkhardt(), p)

    def test_bad_threads(self):
        with pytest.raises(ValueError):
            scan(burkhardt(), 7, threads=0)

    def test_denominator_divisible_by_p(self):
        spec = build_family("custom", F=Fraction(1, 7) * X ** 4 + Y ** 4 + Z ** 4 + T ** 4 + W ** 4)
        with pytest.raises(ValueError):
            scan_singular(spec, 7)
        assert scan_singular(spec, 11) == []


def _chart_key(P: ProjectivePoint):
    lead = next(i for i, c in enumerate(P) if c)
    return (lead, tuple(c.value for c in P))
