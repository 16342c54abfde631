"""BRS algebra of diffeomorphisms on the line, realised through the Cartan connection.

The BRS operator ``s`` is defined primitively on the field generators of
:class:`cartanjet.cartanconn.LineContext`: the lifted frame variations on
``E = e^u_x`` and ``F = e^u_xx``, ``s w = D(w xi)``, ``s xi = xi xi'`` and
``s dx = 0``, prolonged so that it commutes with the total derivative.
Everything else (the action on the connection, the Russian formula, the
residual ghosts, the Virasoro variation) is computed and compared.
"""

from __future__ import annotations

from fractions import Fraction

from .cartanconn import (
    FrameBundleContext,
    GValuedForm,
    LineContext,
    cartan_connection,
    form_bracket,
    frame_lift,
    gauge_transform,
    pullback,
)
from .checks import Check
from .projective import gamma_coefficient, projective_third
from .symba import Derivation, Expr, compose_check, var

__all__ = [
    "BRSSystem",
    "lifted_frame_variation",
    "line_connection",
    "ghost_from_vector",
    "brs_on_connection",
    "lie_derivative_check",
    "lifted_frame_check",
    "residual_ghosts",
    "residual_ghosts_by_display",
    "virasoro_variation",
    "russian_formula_check",
    "projective_parametrization_check",
    "nilpotency_check",
]

HALF = Fraction(1, 2)


def lifted_frame_variation(line):
    """The BRS derivation ``s`` on the line generators."""
    D = line.D
    E, F, w, xi = (line.jet(n) for n in ("E", "F", "w", "xi"))
    xi1, xi2 = line.jet("xi", 1), line.jet("xi", 2)
    base = {
        "E": D(E * xi),
        "F": line.jet("F", 1) * xi + 2 * F * xi1 + E * xi2,
        "w": D(w * xi),
        "xi": xi * xi1,
    }

    def rule(g):
        if not g.tower or g.name not in base:
            return None
        img = base[g.name]
        for _ in range(g.jet_order):
            img = D(img)
        return img

    return Derivation("s", (0, 1), {line.dx: 0}, rule)


class BRSSystem:
    """Line algebra, its BRS operator and the pulled-back connection, built once."""

    def __init__(self):
        self.line = LineContext()
        self.frames = FrameBundleContext()
        self.s = lifted_frame_variation(self.line)
        self.omega = line_connection(self.line, self.frames)
        self.ghost = ghost_from_vector(self.line, self.omega)
        ln = self.line
        self.lift = frame_lift(ln.e, ln.e2, projective_third(ln.e, ln.e2))


def line_connection(line, frames=None):
    """Pullback of the Cartan connection along the frame field: ``(E dx, (F/E - E'/E) dx, w dx)``."""
    frames = FrameBundleContext() if frames is None else frames
    return pullback(frames, line, cartan_connection(frames))


def ghost_from_vector(line, omega):
    """``gamma = omega(xi)``: the interior product with the ghost vector field."""
    return omega.map(line.i_xi)


def brs_on_connection(omega, gamma, d):
    """``-d gamma - [omega, gamma]``."""
    return -gamma.map(d) - form_bracket(omega, gamma)


def _coeffs(omega, line):
    return [p.right_factor(line.dx) for p in omega.parts()]


def lie_derivative_check(system):
    """``s omega`` against the ghost action, ``(i_xi d - d i_xi) omega`` and ``D(a xi) dx``."""
    ln, s = system.line, system.s
    omega, gamma = system.omega, system.ghost
    names = ("theta^u", "theta^u_u", "omega^u_uu")
    via_ghost = brs_on_connection(omega, gamma, ln.d)
    out = []
    for name, form, coeff, rhs in zip(names, omega.parts(), _coeffs(omega, ln), via_ghost.parts()):
        s_form = s(form)
        out.append(Check("lie-derivative", f"s {name},x = D({name},x xi)", s(coeff) - ln.D(coeff * ln.jet("xi"))))
        out.append(Check("lie-derivative", f"s {name} = -d gamma - [omega, gamma]", s_form - rhs))
        lie = ln.i_xi(ln.d(form)) - ln.d(ln.i_xi(form))
        out.append(Check("lie-derivative", f"s {name} = (i_xi d - d i_xi) {name}", s_form - lie))
    return out


def lifted_frame_check(system):
    """The frame variations re-derived from the connection variations."""
    ln, s = system.line, system.s
    E, F = ln.jet("E"), ln.jet("F")
    e = ln.e
    theta, theta_u, _ = _coeffs(system.omega, ln)
    rebuilt = E * s(theta_u) + e * F * s(E) + e * ln.D(E) * s(E) - E * E * ln.D(s(e))
    xi = ln.jet("xi")
    display = ln.jet("F", 1) * xi + 2 * F * ln.jet("xi", 1) + E * ln.jet("xi", 2)
    return [
        Check("lifted-frame-variation", "s e^u_x = s theta^u,x", s(E) - s(theta)),
        Check("lifted-frame-variation", "s e^u_xx rebuilt from s theta^u_u,x", s(F) - rebuilt),
        Check("lifted-frame-variation", "s e^u_xx = F' xi + 2 F xi' + E xi''", s(F) - display),
    ]


def residual_ghosts(system):
    """``c = Ad(l) gamma + l s l^-1`` for the projective lift ``l`` of the frame field."""
    return gauge_transform(system.ghost, system.lift, system.s)


def residual_ghosts_by_display(system):
    """The three combinations of frame jets, ghosts and ``s e`` spelled out."""
    ln, s = system.line, system.s
    E, F = ln.jet("E"), ln.jet("F")
    e, e2 = ln.e, ln.e2
    g_m1, g_0, g_1 = system.ghost.parts()
    c_m1 = e * g_m1
    c_0 = e2 * E * g_m1 + g_0 + e * s(E)
    c_1 = (
        HALF * F * F * e ** 3 * g_m1
        + e2 * E * E * g_0
        + g_1 * E
        + 2 * e2 * E * s(E)
        + e * s(F)
    )
    return GValuedForm.of(c_m1, c_0, c_1)


def _expected_residual(line):
    xi = line.jet("xi")
    return GValuedForm.of(xi, line.jet("xi", 1), line.jet("xi", 2) + gamma_coefficient(line) * xi)


def _projective_gamma(system):
    return gauge_transform(system.omega, system.lift, system.line.d)


def virasoro_variation(system):
    """Variations of the three coefficients of ``Gamma`` and nilpotency on them."""
    ln, s = system.line, system.s
    gamma = _projective_gamma(system)
    a_m1, a_0, G = _coeffs(gamma, ln)
    xi = ln.jet("xi")
    D = ln.D
    c = residual_ghosts(system).part_m1
    law = D(D(D(xi))) + xi * D(G) + 2 * D(xi) * G
    law_c = D(D(D(c))) + c * D(G) + 2 * D(c) * G
    return [
        Check("virasoro-variation", "Gamma^x,x = 1", a_m1 - 1),
        Check("virasoro-variation", "Gamma^x_x,x = 0", a_0),
        Check("virasoro-variation", "Gamma^x_xx,x = E w + D chi - chi^2/2", G - gamma_coefficient(ln)),
        Check("virasoro-variation", "s Gamma^x,x = 0", s(a_m1)),
        Check("virasoro-variation", "s Gamma^x_x,x = 0", s(a_0)),
        Check("virasoro-variation", "s G = xi''' + xi G' + 2 xi' G", s(G) - law),
        Check("virasoro-variation", "s G = c''' + c G' + 2 c' G", s(G) - law_c),
        Check("virasoro-variation", "s c = c c'", s(c) - c * D(c)),
        Check("virasoro-variation", "s s G = 0", s(s(G))),
    ]


def russian_formula_check(system):
    """``(d + s)(omega + gamma) + 1/2 [omega + gamma, omega + gamma] = d omega + 1/2 [omega, omega]``.

    Checked sector by sector in (form, ghost) bidegree.
    """
    ln, s = system.line, system.s
    omega, gamma = system.omega, system.ghost
    curv = omega.map(ln.d) + form_bracket(omega, omega).scale(HALF)
    sector_20 = omega.map(ln.d) + form_bracket(omega, omega).scale(HALF) - curv
    sector_11 = omega.map(s) + gamma.map(ln.d) + (form_bracket(omega, gamma) + form_bracket(gamma, omega)).scale(HALF)
    sector_02 = gamma.map(s) + form_bracket(gamma, gamma).scale(HALF)
    out = []
    for label, res in (("(2,0)", sector_20), ("(1,1)", sector_11), ("(0,2)", sector_02)):
        for k, part in zip((-1, 0, 1), res.parts()):
            out.append(Check("russian-formula", f"sector {label}, grade {k}", part))
    return out


def projective_parametrization_check(system):
    """``s Gamma = -dc - [Gamma, c]`` and ``s c = -1/2 [c, c]`` for the residual ghost."""
    ln, s = system.line, system.s
    gamma = _projective_gamma(system)
    c = residual_ghosts(system)
    by_display = residual_ghosts_by_display(system)
    expected = _expected_residual(ln)
    first = gamma.map(s) + c.map(ln.d) + form_bracket(gamma, c)
    second = c.map(s) + form_bracket(c, c).scale(HALF)
    out = []
    for k, a, b, x in zip((-1, 0, 1), c.parts(), by_display.parts(), expected.parts()):
        out.append(Check("residual-ghosts", f"grade {k}: Ad(l) gamma + l s l^-1 = display", a - b))
        out.append(Check("residual-ghosts", f"grade {k}: evaluated form", a - x))
    for k, r in zip((-1, 0, 1), first.parts()):
        out.append(Check("projective-parametrization", f"grade {k}: s Gamma + dc + [Gamma, c] = 0", r))
    for k, r in zip((-1, 0, 1), second.parts()):
        out.append(Check("projective-parametrization", f"grade {k}: s c + [c, c]/2 = 0", r))
    return out


def nilpotency_check(system, order=4):
    """``s^2 = 0`` and ``ds + sd = 0`` on all generators and their x-jets up to ``order``."""
    ln, s = system.line, system.s
    basis = [var(g) for g in ln.generators()]
    out = []
    for a, b, label in ((s, s, "s^2"), (ln.d, s, "ds + sd")):
        failures = compose_check(a, b, basis, prolong=ln.D, order=order)
        residual = Expr() if not failures else failures[0][1]
        tag = "brs-nilpotent" if label == "s^2" else "ds-anticommute"
        out.append(Check(tag, f"{label} = 0 on generators to jet order {order}", residual))
    return out
