from fractions import Fraction

import numpy as np
import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cartanjet.cartanconn import FrameBundleContext, LineContext, pullback
from cartanjet.jetcore import JetError, compose2, compose3, identity, inverse2, line_jet, random_jet, to_derivatives
from cartanjet.projective import (
    CoordinateChange,
    ProjFrame2,
    Sl2Element,
    chi,
    embed_sl2,
    gamma_coefficient,
    inverse_frame,
    lift3,
    matches_sqrt_display,
    mobius_jet,
    proj_connection,
    proj_gamma,
    schwarzian,
    schwarzian_polynomial,
    transform_chi,
    transform_frame,
    transform_gamma,
    transform_inverse_frame,
)
from cartanjet.symba import var

from . import oracles

F = Fraction
HALF = F(1, 2)
rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)
nonzero = rationals.filter(lambda v: v != 0)


@pytest.fixture(scope="module")
def ctx():
    return FrameBundleContext()


def test_embed_sl2_examples():
    assert embed_sl2(Sl2Element(1, 0, 0)) == identity(1)
    assert embed_sl2(Sl2Element(1, 0, 1)) == line_jet(0, 1, -1)
    with pytest.raises(JetError):
        Sl2Element(0, 0, 1)
    with pytest.raises(JetError):
        embed_sl2(Sl2Element(1, 1, 0))


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals)
def test_mobius_jet_matches_sympy_series(a, c):
    jet = mobius_jet(Sl2Element(a, 0, c), 3)
    got = [F(str(t.flat[0])) for t in jet.tensors()[1:]]
    assert got == [F(str(v)) for v in oracles.mobius_taylor(a, c)]


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals, nonzero, rationals)
def test_embedding_is_a_group_homomorphism(a1, c1, a2, c2):
    m1, m2 = Sl2Element(a1, 0, c1), Sl2Element(a2, 0, c2)
    assert compose2(embed_sl2(m1), embed_sl2(m2)) == embed_sl2(m1 @ m2)
    assert compose3(mobius_jet(m1), mobius_jet(m2)) == mobius_jet(m1 @ m2)


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals)
def test_square_root_display(a, c):
    m = Sl2Element(a, 0, c)
    assert matches_sqrt_display(m, embed_sl2(m))


def test_lift3_examples():
    assert to_derivatives(lift3(ProjFrame2(0, 1, 0)))[3].flat[0] == 0
    lifted = lift3(ProjFrame2(0, 2, 4))
    assert to_derivatives(lifted)[3].flat[0] == 12
    assert lifted.tensors()[3].flat[0] == 2
    with pytest.raises(JetError):
        ProjFrame2(0, 0, 1)


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals, rationals)
def test_mobius_jets_are_projective_lifts(a, b, c):
    jet = mobius_jet(Sl2Element(a, b, c), 3)
    assert lift3(ProjFrame2.from_jet(jet)) == jet
    assert schwarzian(jet) == 0


def test_non_mobius_jets_have_nonzero_schwarzian():
    rng = np.random.default_rng(0)
    hits = 0
    for _ in range(50):
        f = random_jet(rng, 1, 3, group=False)
        _, d1, d2, d3 = (t.flat[0] for t in to_derivatives(f))
        expected_zero = d3 * d1 == F(3, 2) * d2 * d2
        assert (schwarzian(f) == 0) == expected_zero
        hits += not expected_zero
    assert hits > 40


def test_schwarzian_examples():
    assert schwarzian(line_jet(0, 1, 0, 1)) == 6
    assert schwarzian_polynomial([0, 1, 0, 1], 0) == 6
    with pytest.raises(JetError):
        schwarzian_polynomial([0, 0, 1], 0)


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=2, max_size=5), rationals)
def test_schwarzian_polynomial_matches_sympy(coeffs, point):
    x = sp.symbols("x")
    poly = sum(sp.Rational(c.numerator, c.denominator) * x ** k for k, c in enumerate(coeffs))
    if sp.diff(poly, x).subs(x, sp.Rational(point.numerator, point.denominator)) == 0:
        with pytest.raises(JetError):
            schwarzian_polynomial(coeffs, point)
        return
    want = oracles.schwarzian_at(poly, x, sp.Rational(point.numerator, point.denominator))
    assert F(str(schwarzian_polynomial(coeffs, point))) == F(str(want))


def test_schwarzian_cocycle():
    rng = np.random.default_rng(1)
    for _ in range(50):
        f = random_jet(rng, 1, 3, group=False)
        g = random_jet(rng, 1, 3)
        g1 = to_derivatives(g)[1].flat[0]
        assert schwarzian(compose3(f, g)) == schwarzian(f) * g1 * g1 + schwarzian(g)


def test_proj_gamma_matches_general_formula(ctx):
    gamma = proj_gamma(ctx)  # raises if the general formula disagrees
    full = proj_connection(ctx)
    assert full.part_m1 == var(ctx.dx)
    assert full.part_0 == 0
    assert full.part_1 == gamma


def test_proj_gamma_special_cases(ctx):
    e, e2 = var(ctx.e, ctx.e2)
    dx, W = var(ctx.dx, ctx.W)
    ch = chi(e, e2)
    assert proj_gamma(ctx, 0) == ctx.d(ch) - HALF * ch * ch * dx
    natural = proj_gamma(ctx, frame=(1, 0))
    assert natural == W


def test_pulled_back_coefficient(ctx):
    line = LineContext()
    coeff = pullback(ctx, line, proj_gamma(ctx)).right_factor(line.dx)
    assert coeff == gamma_coefficient(line)
    E, F_, w = (line.jet(n) for n in "EFw")
    E1, F1 = line.jet("E", 1), line.jet("F", 1)
    assert coeff == E * w + F1 / E - F_ * E1 * E ** -2 - HALF * F_ * F_ * E ** -2


def test_transform_frame_examples():
    f = ProjFrame2(3, 5, 7)
    assert transform_frame(f, line_jet(3, 1, 0, 0)) == f
    assert transform_frame(ProjFrame2(1, 1, 0), CoordinateChange(2, 2, 0)) == ProjFrame2(2, 2, 0)
    with pytest.raises(JetError):
        transform_frame(f, CoordinateChange(0, 0, 1))


@settings(max_examples=40, deadline=None)
@given(rationals, nonzero, rationals, rationals, nonzero, rationals, rationals)
def test_transform_frame_agrees_with_jets(x, e, e2, y, p1, p2, p3):
    frame = ProjFrame2(x, e, e2)
    phi = line_jet(y, p1, p2, p3)
    moved = transform_frame(frame, phi)
    assert moved == ProjFrame2.from_jet(compose2(phi, frame.to_jet().recentred()))
    inv = to_derivatives(inverse2(moved.to_jet()))
    assert transform_inverse_frame(inverse_frame(frame), phi) == (inv[1].flat[0], inv[2].flat[0])
    assert transform_chi(chi(e, e2), phi) == chi(moved.e, moved.e2)


def test_symbolic_transformation_displays(ctx):
    change = CoordinateChange.symbolic(ctx)
    e, e2 = var(ctx.e, ctx.e2)
    frame = ProjFrame2(None, e, e2)
    moved = transform_frame(frame, change)
    J, J1 = ctx.jacobian(0), ctx.jacobian(1)
    assert moved.e == J * e
    assert moved.e2 == J * e2 + J1 * e * e
    assert inverse_frame(moved) == transform_inverse_frame(inverse_frame(frame), change)
    assert chi(moved.e, moved.e2) == transform_chi(chi(e, e2), change)


def test_schwarzian_transformation_law(ctx):
    change = CoordinateChange.symbolic(ctx)
    diff = transform_gamma(ctx)
    assert diff == schwarzian(change) * var(ctx.dx)
    J, J1 = ctx.jacobian(0), ctx.jacobian(1)
    assert diff.subs({ctx.J.prime(2): F(3, 2) * J1 * J1 / J}) == 0


def test_transformation_law_for_a_concrete_mobius_change(ctx):
    # phi(x) = x / (1 + x) at x = 0: S(phi) = 0 there
    phi = mobius_jet(Sl2Element(1, 0, 1), 3)
    assert schwarzian(CoordinateChange.from_jet(phi)) == 0


def test_json_frames():
    f = ProjFrame2.from_json({"x": "1/2", "e": "2", "e2": "-3"})
    assert f.to_json() == {"x": "1/2", "e": "2", "e2": "-3"}
    with pytest.raises(JetError):
        ProjFrame2.from_json({"x": "1"})
