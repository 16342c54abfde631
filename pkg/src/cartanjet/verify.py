"""Verification suites: every identity the package establishes, as records.

Each suite returns a list of :class:`cartanjet.checks.Check`.  Symbolic
checks carry the canonical residual expression; sampled checks carry the
number of failing samples.  Output order is fixed and randomness comes
from ``numpy.random.default_rng(seed)`` only, so reruns are identical.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import brs, gradedlie, jetcore, projective
from .cartanconn import (
    adjoint_form,
    FrameBundleContext,
    GValuedForm,
    cartan_connection,
    christoffel_literal,
    curvature,
    curvature_components,
    frame_lift,
    gauge_transform,
    pullback,
    LineContext,
)
from .checks import Check
from .gradedlie import GradedPiece, adjoint, adjoint_paper, bracket_oracle, bracket_paper
from .jetcore import compose2, compose3, identity, inverse2, inverse3, random_jet
from .polynomial import poly_from_tensors, substitute, tensors_from_poly
from .symba import var

__all__ = ["SUITES", "run_suite", "run"]

HALF = Fraction(1, 2)


def _count(samples, predicate):
    return sum(0 if predicate() else 1 for _ in range(samples))


def _brute_compose(f, g, order):
    moved = substitute(poly_from_tensors(f.tensors(), order), poly_from_tensors(g.tensors(), order))
    t = tensors_from_poly(moved, order)
    return (jetcore.Jet2 if order == 2 else jetcore.Jet3)(*t)


def _recentre(jet):
    t = jet.tensors()
    return type(jet)(np.zeros(jet.dim, dtype=int).astype(object), *t[1:], check=False)


def jet_suite(rng, samples):
    out = []
    for n in (1, 2, 3):
        for order, comp, inv in ((2, compose2, inverse2), (3, compose3, inverse3)):
            one = identity(n, order)

            def axioms():
                f, g, h = (random_jet(rng, n, order) for _ in range(3))
                return (
                    comp(comp(f, g), h) == comp(f, comp(g, h))
                    and comp(f, one) == f
                    and comp(one, f) == f
                    and comp(f, inv(f)) == one
                    and comp(inv(f), f) == one
                )

            def oracle():
                f = random_jet(rng, n, order, group=False)
                g = random_jet(rng, n, order)
                return comp(f, g) == _brute_compose(f, _recentre(g), order)

            label = f"n={n}, order {order}, {samples} samples"
            out.append(Check("jet-group-axioms", f"associativity, identity, inverse ({label})", _count(samples, axioms)))
            out.append(Check("jet-composition-oracle", f"chain rule = polynomial substitution ({label})", _count(samples, oracle)))
    f = jetcore.line_jet(0, 2, 3)
    expected = jetcore.line_jet(0, Fraction(1, 2), Fraction(-3, 8))
    out.append(Check("jet-inverse", "inverse of (0, 2, 3) is (0, 1/2, -3/8)", int(inverse2(f) != expected)))
    out.append(Check("jet-inverse", "(0, 2, 3) o (0, 1/2, -3/8) = id", int(compose2(f, expected) != identity(1))))
    return out


def _pure(x, k):
    return GradedPiece(k, x.piece(k))


def lie_suite(rng, samples):
    out = []
    rv = gradedlie.random_vecjet
    for n in (1, 2, 3):
        def anti():
            x, y = rv(rng, n), rv(rng, n)
            return bracket_oracle(x, y) == -bracket_oracle(y, x)

        def literal():
            x, y = rv(rng, n), rv(rng, n)
            return bracket_paper(x, y, derivatives=True) == bracket_oracle(x, y)

        out.append(Check("bracket-antisymmetry", f"[X,Y] = -[Y,X] (n={n}, {samples} samples)", _count(samples, anti)))
        out.append(Check("bracket-literal", f"component formulas on derivatives = oracle (n={n}, {samples} samples)", _count(samples, literal)))

    def jacobi():
        x, y, z = rv(rng, 1), rv(rng, 1), rv(rng, 1)
        b = bracket_oracle
        return (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))).is_zero()

    out.append(Check("bracket-jacobi", f"Jacobi identity (n=1, {samples} samples)", _count(samples, jacobi)))

    bad = 0
    for k in (-1, 0, 1):
        for m in (-1, 0, 1):
            for _ in range(max(1, samples // 10)):
                x, y = _pure(rv(rng, 2), k), _pure(rv(rng, 2), m)
                try:
                    gradedlie.grading_check(x, y)
                except AssertionError:
                    bad += 1
    out.append(Check("bracket-grading", "[gl_k, gl_l] in gl_(k+l), out-of-range brackets and [gl_-1, gl_-1] vanish", bad))

    few = max(1, samples // 5)
    for n in (1, 2):
        def hom():
            g, h = random_jet(rng, n, 3), random_jet(rng, n, 3)
            x = rv(rng, n)
            return adjoint(compose3(g, h), x) == adjoint(g, adjoint(h, x))

        def literal_adjoint():
            g, x = random_jet(rng, n, 3), rv(rng, n)
            return adjoint_paper(g, x, derivatives=True) == adjoint(g, x)

        def linear_morphism():
            g = random_jet(rng, n, 3)
            g = jetcore.Jet3(g.base, g.e1, np.zeros((n,) * 3, dtype=int), np.zeros((n,) * 4, dtype=int))
            x, y = rv(rng, n), rv(rng, n)
            return adjoint(g, bracket_oracle(x, y)) == bracket_oracle(adjoint(g, x), adjoint(g, y))

        def low_grade_morphism():
            g = random_jet(rng, n, 3)
            x, y = rv(rng, n, grades=(0, 1)), rv(rng, n, grades=(0, 1))
            return adjoint(g, bracket_oracle(x, y)) == bracket_oracle(adjoint(g, x), adjoint(g, y))

        out.append(Check("adjoint-homomorphism", f"Ad(gh) = Ad(g) Ad(h) (n={n}, {few} samples)", _count(few, hom)))
        out.append(Check("adjoint-literal", f"component formulas on derivatives = conjugation (n={n}, {few} samples)", _count(few, literal_adjoint)))
        out.append(Check("adjoint-bracket", f"Ad(g)[X,Y] = [Ad X, Ad Y] for linear g (n={n}, {few} samples)", _count(few, linear_morphism)))
        out.append(Check("adjoint-bracket", f"Ad(g)[X,Y] = [Ad X, Ad Y] for X, Y in gl_0 + gl_1 (n={n}, {few} samples)", _count(few, low_grade_morphism)))

    def mobius_morphism():
        a = Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 6))) * (1 if rng.integers(2) else -1)
        c = Fraction(int(rng.integers(-5, 6)), int(rng.integers(1, 6)))
        m = projective.Sl2Element(a, 0, c)
        g = projective.mobius_jet(m, 3)
        x, y = rv(rng, 1), rv(rng, 1)
        return adjoint(g, bracket_oracle(x, y)) == bracket_oracle(adjoint(g, x), adjoint(g, y))

    out.append(Check("adjoint-bracket", f"Ad(g)[X,Y] = [Ad X, Ad Y] for Moebius g (n=1, {few} samples)", _count(few, mobius_morphism)))
    return out


def cartan_suite(rng, samples):
    ctx = FrameBundleContext()
    d = ctx.d
    omega = cartan_connection(ctx)
    e, e2, e3 = var(ctx.e, ctx.e2, ctx.e3)
    theta, theta_u, _ = omega.parts()
    K = curvature(omega, d)
    gamma = gauge_transform(omega, frame_lift(e, e2, e3), d)
    literal = christoffel_literal(ctx)
    dx = var(ctx.dx)
    flat_w = (1 / e) * var(ctx.de2) - 2 * e2 * e ** -2 * var(ctx.de) + HALF * e2 * e2 * e ** -3 * dx
    lift = frame_lift(e, e2, projective.projective_third(e, e2))
    k_gamma = curvature(projective.proj_connection(ctx), d)
    ad_K = adjoint_form(lift, K)
    line = LineContext()
    return [
        Check("torsion-free", "d theta^u + theta^u_u ^ theta^u = 0", d(theta) + theta_u * theta),
        Check("torsion-free", "curvature has no gl_-1 part", K.part_m1),
        Check("structure-equations", "d omega + [omega, omega]/2 matches the component formulas",
              _sum_parts(K - curvature_components(omega, d))),
        Check("christoffel-shape", "Gamma^x = dx for any lift (e, e2, e3)", gamma.part_m1 - dx),
        Check("christoffel-shape", "Gamma^x_x = 0 for any lift (e, e2, e3)", gamma.part_0),
        Check("christoffel-literal", "Ad(l) omega + l d l^-1 = component formulas", _sum_parts(gamma - literal)),
        Check("christoffel-base-dependence", "gl_1 part flat + e h(x) dx gives Gamma = (dx, 0, h dx): no de, de2",
              _sum_parts(gauge_transform(cartan_connection(ctx, flat_w + e * ctx.base_function() * dx), lift, d)
                         - GValuedForm.of(dx, 0, ctx.base_function() * dx))),
        Check("flat-connection", "flat choice of the gl_1 part has zero curvature",
              _sum_parts(curvature(cartan_connection(ctx, flat_w), d))),
        Check("curvature-covariance", "K(Gamma) = Ad(l) K(omega) for the projective lift", _sum_parts(k_gamma - ad_K)),
        Check("pullback", "pulled-back Gamma = (dx, 0, G dx)",
              _sum_parts(pullback(ctx, line, projective.proj_connection(ctx))
                         - GValuedForm.of(var(line.dx), 0, projective.gamma_coefficient(line) * var(line.dx)))),
    ]


def _sum_parts(form):
    """Nonzero parts joined for rendering; the zero form renders as ``0``."""
    parts = [p for p in form.parts() if not p.is_zero()]
    return parts[0] if len(parts) == 1 else (form if parts else form.part_m1)


def projective_suite(rng, samples):
    ctx = FrameBundleContext()
    P = projective
    out = []

    def rat(lo=-5, hi=6):
        return Fraction(int(rng.integers(lo, hi)), int(rng.integers(1, 6)))

    def nonzero():
        v = rat()
        return v if v else Fraction(1)

    def sl2():
        return P.Sl2Element(nonzero(), 0, rat())

    def group_law():
        m1, m2 = sl2(), sl2()
        return compose2(P.embed_sl2(m1), P.embed_sl2(m2)) == P.embed_sl2(m1 @ m2)

    def mobius_lift():
        m = P.Sl2Element(nonzero(), rat(), rat())
        jet = P.mobius_jet(m, 3)
        frame = P.ProjFrame2.from_jet(jet)
        return P.lift3(frame) == jet and P.schwarzian(jet) == 0 and P.matches_sqrt_display(m, P.embed_sl2(P.Sl2Element(m.a, 0, m.c)))

    def cocycle():
        f = random_jet(rng, 1, 3, group=False)
        g = random_jet(rng, 1, 3)
        d1 = jetcore.to_derivatives(g)[1].flat[0]
        return P.schwarzian(compose3(f, g)) == P.schwarzian(f) * d1 * d1 + P.schwarzian(g)

    def frames():
        fr = P.ProjFrame2(rat(), nonzero(), rat())
        phi = jetcore.line_jet(rat(), nonzero(), rat(), rat())
        moved = P.transform_frame(fr, phi)
        via_jets = P.ProjFrame2.from_jet(compose2(phi, fr.to_jet().recentred()))
        inv_display = P.transform_inverse_frame(P.inverse_frame(fr), phi)
        inv_direct = jetcore.to_derivatives(inverse2(moved.to_jet()))
        return (
            moved == via_jets
            and inv_display == (inv_direct[1].flat[0], inv_direct[2].flat[0])
            and P.chi(moved.e, moved.e2) == P.transform_chi(P.chi(fr.e, fr.e2), phi)
        )

    out.append(Check("sl2-embedding", f"embed(m1) embed(m2) = embed(m1 m2) ({samples} samples)", _count(samples, group_law)))
    out.append(Check("projective-lift", f"Moebius 3-jets are projective lifts with zero Schwarzian ({samples} samples)", _count(samples, mobius_lift)))
    gamma = P.proj_gamma(ctx, check=False)
    full = P.proj_connection(ctx)
    dx = var(ctx.dx)
    out.append(Check("projective-christoffel", "general formula through the projective lift: Gamma^x = dx", full.part_m1 - dx))
    out.append(Check("projective-christoffel", "general formula through the projective lift: Gamma^x_x = 0", full.part_0))
    out.append(Check("projective-christoffel", "general formula through the projective lift = e^u_x W + d chi - chi^2 dx/2", full.part_1 - gamma))
    line = LineContext()
    coeff = pullback(ctx, line, gamma).right_factor(line.dx)
    out.append(Check("miura-coefficient", "pulled-back coefficient = E w + D chi - chi^2/2", coeff - P.gamma_coefficient(line)))
    change = P.CoordinateChange.symbolic(ctx)
    law = P.transform_gamma(ctx) - P.schwarzian(change) * dx
    out.append(Check("schwarzian-law", "Gamma - phi' Gamma' = S(phi) dx, generic phi", law))
    J1 = ctx.jacobian(1)
    mob = P.transform_gamma(ctx).subs({ctx.J.prime(2): Fraction(3, 2) * J1 * J1 / ctx.jacobian(0)})
    out.append(Check("schwarzian-law", "Gamma - phi' Gamma' = 0 for Moebius phi", mob))
    e, e2 = var(ctx.e, ctx.e2)
    sym = P.transform_frame(P.ProjFrame2(None, e, e2), change)
    lhs = P.inverse_frame(sym)
    rhs = P.transform_inverse_frame(P.inverse_frame(P.ProjFrame2(None, e, e2)), change)
    out.append(Check("frame-transformation", "e^u_x' display, symbolic phi", lhs[0] - rhs[0]))
    out.append(Check("frame-transformation", "e^u_x'x' display, symbolic phi", lhs[1] - rhs[1]))
    out.append(Check("frame-transformation", "chi' = chi/phi' - phi''/phi'^2, symbolic phi",
                     P.chi(sym.e, sym.e2) - P.transform_chi(P.chi(e, e2), change)))
    out.append(Check("frame-transformation", f"displays agree with jet composition and inversion ({samples} samples)", _count(samples, frames)))
    out.append(Check("schwarzian-cocycle", f"S(f o g) = S(f) g'^2 + S(g) ({samples} samples)", _count(samples, cocycle)))
    return out


def brs_suite(rng, samples):
    system = brs.BRSSystem()
    out = []
    for fn in (
        brs.nilpotency_check,
        brs.lie_derivative_check,
        brs.lifted_frame_check,
        brs.russian_formula_check,
        brs.projective_parametrization_check,
        brs.virasoro_variation,
    ):
        out.extend(fn(system))
    return out


SUITES = {
    "jet": jet_suite,
    "lie": lie_suite,
    "cartan": cartan_suite,
    "projective": projective_suite,
    "brs": brs_suite,
}


def run_suite(name, *, seed=0, samples=100):
    if name not in SUITES:
        raise KeyError(name)
    rng = np.random.default_rng([seed, list(SUITES).index(name)])
    return SUITES[name](rng, samples)


def run(names, *, seed=0, samples=100):
    """``[(suite, [Check, ...]), ...]`` in the given order."""
    return [(name, run_suite(name, seed=seed, samples=samples)) for name in names]
