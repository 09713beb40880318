import numpy as np
import pytest
from numpy.testing import assert_allclose

from spherelp.hermite import (
    InterpolantReport,
    NodeMultiset,
    _newton_coefficients,
    _newton_to_monomial,
    hermite_interpolant,
    ulb_nodes,
    uub_nodes,
    verify_dominance,
)
from spherelp.orthopoly import MonomialPoly, to_gegenbauer
from spherelp.potentials import (
    fejes_toth,
    gaussian,
    logarithmic,
    newton,
    potential_derivative,
    potential_eval,
    riesz,
)
from spherelp.quadrature import solve_ulb_rule

PENTAKIS_CAPACITY = 735 / 23


def test_multiset_validation():
    with pytest.raises(ValueError):
        NodeMultiset(((0.5, 2), (-0.5, 2)))  # not ascending
    with pytest.raises(ValueError):
        NodeMultiset(((-0.5, 1), (0.5, 2)))  # simple node away from -1 / endpoint
    with pytest.raises(ValueError):
        NodeMultiset(((-0.5, 3),))
    ok = NodeMultiset(((-1.0, 1), (0.0, 2), (0.5, 1)))
    assert ok.total == 4
    assert ok.expanded() == [-1.0, 0.0, 0.0, 0.5]


def test_multiset_builders():
    nodes = (-1.0, -0.3, 0.4)
    assert ulb_nodes(nodes, 1).entries == ((-1.0, 1), (-0.3, 2), (0.4, 2))
    assert ulb_nodes(nodes[1:], 0).entries == ((-0.3, 2), (0.4, 2))
    assert uub_nodes(nodes, 1).entries == ((-1.0, 1), (-0.3, 2), (0.4, 1))
    assert uub_nodes(nodes[1:], 0).entries == ((-0.3, 2), (0.4, 1))


def test_constant_potential_reproduced_exactly():
    # a polynomial h of degree <= total-1 is its own interpolant
    h = newton(2)
    report = hermite_interpolant(h, ulb_nodes((-0.7, -0.1, 0.6), 0), 3)
    assert_allclose(report.poly.coeffs, (1.0,), atol=1e-12)
    assert report.node_residual < 1e-12


def test_single_doubled_node_is_tangent_line():
    h = riesz(1)
    a = -0.25
    report = hermite_interpolant(h, ulb_nodes((a,), 0), 3)
    want = (
        potential_eval(h, a) - a * potential_derivative(h, a),
        potential_derivative(h, a),
    )
    assert_allclose(report.poly.coeffs, want, rtol=1e-13)


def test_uub_degree_two_closed_form():
    # simple nodes {-1, s}: the secant line through the endpoints
    h = gaussian(1.5)
    s = 0.35
    report = hermite_interpolant(h, NodeMultiset(((-1.0, 1), (s, 1))), 4)
    hs, hm = potential_eval(h, s), potential_eval(h, -1.0)
    want = ((hs + s * hm) / (1 + s), (hs - hm) / (1 + s))
    assert_allclose(report.poly.coeffs, want, rtol=1e-12)


def test_interpolation_conditions_on_rule_nodes():
    rule = solve_ulb_rule(3, PENTAKIS_CAPACITY)
    for h in (riesz(1), gaussian(2.0), logarithmic(), fejes_toth()):
        report = hermite_interpolant(h, ulb_nodes(rule.nodes, rule.eps), 3)
        assert report.poly.degree <= rule.m
        assert report.node_residual < 1e-10


def test_divided_difference_order_invariance():
    h = riesz(2)
    nodes = ulb_nodes((-0.8, -0.2, 0.5), 0)
    z = np.asarray(nodes.expanded())
    values = potential_eval(h, z)
    derivs = {a: float(potential_derivative(h, a)) for a, _ in nodes.entries}
    fwd = _newton_to_monomial(_newton_coefficients(z, values, derivs), z)
    zr = z[::-1].copy()
    rev = _newton_to_monomial(_newton_coefficients(zr, potential_eval(h, zr), derivs), zr)
    assert_allclose(fwd, rev, rtol=1e-9)


@pytest.mark.parametrize("h", [riesz(1), riesz(3), gaussian(1.0), logarithmic()], ids=lambda h: h.label())
@pytest.mark.parametrize("n,capacity", [(3, 20.0), (4, 24.0), (8, 50.0), (3, PENTAKIS_CAPACITY)])
def test_ulb_interpolant_positive_definite(h, n, capacity):
    rule = solve_ulb_rule(n, capacity)
    report = hermite_interpolant(h, ulb_nodes(rule.nodes, rule.eps), n)
    coeffs = np.asarray(report.gegenbauer.coeffs)
    assert np.min(coeffs[1:]) >= -1e-9


def test_dominance_below_for_table_rule():
    rule = solve_ulb_rule(3, PENTAKIS_CAPACITY)
    report = hermite_interpolant(riesz(1), ulb_nodes(rule.nodes, rule.eps), 3)
    ok, violation = verify_dominance(report, riesz(1), (-1.0, 0.999), "below", rule.nodes)
    assert ok and violation <= 1e-9
    assert report.residual_sign == "below"
    assert report.max_violation == violation


def test_dominance_zero_for_exact_match():
    h = newton(2)
    report = hermite_interpolant(h, ulb_nodes((-0.5, 0.2), 0), 3)
    ok, violation = verify_dominance(report, h, (-1.0, 0.999), "below")
    assert ok and violation == 0.0


def test_dominance_negative_control():
    rule = solve_ulb_rule(3, PENTAKIS_CAPACITY)
    report = hermite_interpolant(riesz(1), ulb_nodes(rule.nodes, rule.eps), 3)
    bumped = list(report.poly.coeffs)
    bumped[-1] += 1e-3
    poly = MonomialPoly(tuple(bumped))
    broken = InterpolantReport(poly, to_gegenbauer(poly, 3), 0.0)
    ok, violation = verify_dominance(broken, riesz(1), (-1.0, 0.999), "below", rule.nodes)
    assert not ok and violation > 1e-9


def test_nodes_above_one_rejected():
    with pytest.raises(ValueError):
        hermite_interpolant(riesz(1), NodeMultiset(((0.5, 2), (1.0, 1))), 3)
    with pytest.raises(ValueError):
        verify_dominance(
            hermite_interpolant(riesz(1), ulb_nodes((0.0,), 0), 3),
            riesz(1),
            (-1.0, 0.5),
            "sideways",
        )
