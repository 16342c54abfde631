"""Solder forms, Cartan connection, curvature and local gauge transforms.

Everything here lives in dimension one and is symbolic.  Two algebras are
used:

* :class:`FrameBundleContext` -- functions and forms on the second order
  frame bundle in the coordinates ``(x, e, e2)``, with ``e = e^x_u``
  (invertible) and ``e2 = e^x_uu``, plus an opaque 1-form ``W`` standing
  for the gl_1 part of the connection.
* :class:`LineContext` -- fields on the base line pulled back along a
  frame field: jet towers of ``E = e^u_x``, ``F = e^u_xx``, ``w`` (the
  coefficient of the pulled-back ``W``) and the odd ghost ``xi``.

Frame coordinates and Lie algebra components are read as derivatives at
the origin (``e2`` is a second derivative, the gl_1 slot holds
``d_b d_c X^a``); :mod:`cartanjet.jetcore` conversions translate to the
raw-coefficient storage used by the jet and bracket oracles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .gradedlie import VecJet, adjoint, bracket_oracle
from .jetcore import from_derivatives
from .polynomial import poly_from_tensors, substitute
from .symba import Derivation, Expr, Generator, tower, var

__all__ = [
    "GValuedForm",
    "FrameBundleContext",
    "LineContext",
    "structure_constants",
    "form_bracket",
    "solder_forms",
    "cartan_connection",
    "curvature",
    "curvature_components",
    "frame_lift",
    "adjoint_form",
    "gauge_transform",
    "maurer_cartan",
    "christoffel_literal",
    "pullback",
]

HALF = Fraction(1, 2)

DX = Generator("dx", 1)


@dataclass(frozen=True)
class GValuedForm:
    """``(part_m1, part_0, part_1)`` of a form with values in gl_-1 + gl_0 + gl_1."""

    part_m1: Expr
    part_0: Expr
    part_1: Expr

    @classmethod
    def of(cls, a, b, c):
        return cls(Expr.coerce(a), Expr.coerce(b), Expr.coerce(c))

    def parts(self):
        return (self.part_m1, self.part_0, self.part_1)

    def map(self, fn):
        return GValuedForm.of(*(fn(p) for p in self.parts()))

    def __add__(self, other):
        return GValuedForm.of(*(a + b for a, b in zip(self.parts(), other.parts())))

    def __sub__(self, other):
        return GValuedForm.of(*(a - b for a, b in zip(self.parts(), other.parts())))

    def __neg__(self):
        return self.map(lambda p: -p)

    def scale(self, c):
        return self.map(lambda p: p * c)

    def is_zero(self):
        return all(p.is_zero() for p in self.parts())

    def __str__(self):
        return "(" + ", ".join(str(p) for p in self.parts()) + ")"


def structure_constants():
    """``c[i][j]`` = derivative components of ``[T_i, T_j]`` for the basis ``T_-1, T_0, T_1``.

    Computed once from :func:`bracket_oracle`; ``T_k`` has a single unit
    derivative component in grade ``k``.
    """
    basis = []
    for k in range(3):
        d = [0, 0, 0]
        d[k] = 1
        basis.append(VecJet.from_derivatives([d[0]], [[d[1]]], [[[d[2]]]]))
    table = []
    for x in basis:
        row = []
        for y in basis:
            br = bracket_oracle(x, y).derivatives()
            row.append(tuple(c.flat[0] for c in br))
        table.append(row)
    return table


_C = structure_constants()


def form_bracket(a, b):
    """Graded bracket of algebra-valued forms, ``sum a^i b^j [T_i, T_j]``.

    Components of ``a`` always stand to the left, which is what makes the
    bracket graded (anti)symmetric according to the form parities.
    """
    out = [Expr(), Expr(), Expr()]
    for i, ai in enumerate(a.parts()):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b.parts()):
            if bj.is_zero():
                continue
            prod = ai * bj
            for k, c in enumerate(_C[i][j]):
                if c:
                    out[k] = out[k] + prod * c
    return GValuedForm.of(*out)


class FrameBundleContext:
    """Coordinate algebra of the projective 2-frame bundle (dimension one).

    Besides the frame coordinates it carries an optional third jet ``e3``
    (for non-projective lifts), the jet tower ``J, J', J'', ...`` of the
    Jacobian ``dx'/dx`` of a coordinate change and the tower ``h, h', ...``
    of an arbitrary function on the base.
    """

    def __init__(self):
        self.x = Generator("x")
        self.e = Generator("e", invertible=True)
        self.e2 = Generator("e2")
        self.e3 = Generator("e3")
        self.dx = DX
        self.de = Generator("de", 1)
        self.de2 = Generator("de2", 1)
        self.de3 = Generator("de3", 1)
        self.W = Generator("W", 1)
        self.dW = Generator("dW", 2)
        self.J = tower("J", invertible=True)
        self.h = tower("h")
        images = {
            self.x: var(self.dx),
            self.e: var(self.de),
            self.e2: var(self.de2),
            self.e3: var(self.de3),
            self.dx: 0,
            self.de: 0,
            self.de2: 0,
            self.de3: 0,
            self.W: var(self.dW),
            self.dW: 0,
        }

        def rule(g):
            if g.tower and g.name in ("J", "h"):
                return Expr.of(g.prime()) * var(self.dx)
            return None

        self.d = Derivation("d", (1, 0), images, rule)

    # frame quantities, all as expressions
    @property
    def inv1(self):
        """``e^u_x``."""
        return 1 / var(self.e)

    @property
    def inv2(self):
        """``e^u_xx = -e2 (e^u_x)^3``."""
        return -var(self.e2) * self.inv1 ** 3

    @property
    def chi(self):
        """``chi = e^u_xx e^x_u``."""
        return self.inv2 * var(self.e)

    def base_function(self, k=0):
        """``d^k h / dx^k`` for the arbitrary base function ``h``."""
        return Expr.of(self.h.prime(k) if k else self.h)

    def jacobian(self, k=0):
        """``d^{k+1} x' / dx^{k+1}``."""
        return Expr.of(self.J.prime(k) if k else self.J)


class LineContext:
    """Fields on the base line: towers of ``E, F, w`` and the ghost ``xi``.

    ``D`` is the total x-derivative, ``d = dx D`` the exterior derivative
    and ``i_xi`` the interior product with the ghost vector field.
    """

    def __init__(self):
        self.dx = DX
        self.E = tower("E", invertible=True)
        self.F = tower("F")
        self.w = tower("w")
        self.xi = tower("xi", 0, 1)
        self.roots = {g.name: g for g in (self.E, self.F, self.w, self.xi)}

        def total(g):
            if g == self.dx:
                return 0
            if g.tower:
                return Expr.of(g.prime())
            return None

        self.D = Derivation("D", (0, 0), rule=total)
        self.d = Derivation("d", (1, 0), {self.dx: 0}, rule=lambda g: var(self.dx) * self.D(Expr.of(g)))
        self.i_xi = Derivation("i_xi", (-1, 1), {self.dx: var(self.xi)}, rule=lambda g: 0 if g.tower else None)

    def jet(self, name, k=0):
        g = self.roots[name]
        return Expr.of(g.prime(k) if k else g)

    def generators(self):
        return [self.dx, self.E, self.F, self.w, self.xi]

    # frame quantities e^x_u, e^x_uu in terms of E, F
    @property
    def e(self):
        return 1 / self.jet("E")

    @property
    def e2(self):
        return -self.jet("F") * self.e ** 3

    @property
    def chi(self):
        return self.jet("F") * self.e


def solder_forms(ctx):
    """``theta^u = e^u_x dx`` and ``theta^u_u = e^u_x de + e^u_xx e dx``."""
    dx, de = var(ctx.dx, ctx.de)
    theta = ctx.inv1 * dx
    theta_u = ctx.inv1 * de + ctx.inv2 * var(ctx.e) * dx
    return theta, theta_u


def cartan_connection(ctx, omega1=None):
    """``omega = theta^u + theta^u_u + omega^u_uu`` with ``omega^u_uu = W`` by default."""
    theta, theta_u = solder_forms(ctx)
    return GValuedForm.of(theta, theta_u, var(ctx.W) if omega1 is None else omega1)


def curvature(omega, d):
    """``K = d omega + 1/2 [omega, omega]``."""
    return omega.map(d) + form_bracket(omega, omega).scale(HALF)


def curvature_components(omega, d):
    """The graded pieces written out term by term.

    ``K_-1 = d w_-1 + w_0 ^ w_-1``, ``K_0 = d w_0 + 1/2 [w_0, w_0] + [w_-1, w_1]``
    and ``K_1 = d w_1 + [w_0, w_1]``, with the brackets evaluated through
    the structure constants.
    """
    m1, z, p = omega.parts()

    def only(k, form):
        parts = [Expr(), Expr(), Expr()]
        parts[k] = form
        return GValuedForm.of(*parts)

    k_m1 = d(m1) + z * m1
    k_0 = d(z) + form_bracket(only(1, z), only(1, z)).part_0 * HALF + form_bracket(only(0, m1), only(2, p)).part_0
    k_1 = d(p) + form_bracket(only(1, z), only(2, p)).part_1
    return GValuedForm.of(k_m1, k_0, k_1)


def frame_lift(e, e2, e3):
    """Group element ``(e, e2, e3)`` (derivatives) as a coefficient 3-jet at 0."""
    return from_derivatives([0], [[e]], [[[e2]]], [[[[e3]]]])


def _as_vecjet(form):
    return VecJet.from_derivatives([form.part_m1], [[form.part_0]], [[[form.part_1]]])


def _as_form(x):
    return GValuedForm.of(*(c.flat[0] for c in x.derivatives()))


def maurer_cartan(g, D):
    """``g . D g^-1 = -(D g) o g^-1`` truncated to a 2-jet, as derivative components."""
    from .jetcore import inverse3

    ginv = inverse3(g)
    dg = [np.zeros(1, dtype=object)] + [np.vectorize(D, otypes=[object])(t) for t in g.tensors()[1:]]
    dg[0][0] = Expr()
    moved = substitute(poly_from_tensors(dg, 3), poly_from_tensors(ginv.tensors(), 3)).truncate(2)
    return -_as_form(VecJet.from_poly(moved))


def adjoint_form(g, omega):
    """``Ad(g)`` applied componentwise to an algebra-valued form."""
    return _as_form(adjoint(g, _as_vecjet(omega)))


def gauge_transform(omega, g, D):
    """``Ad(g) omega + g . D g^-1`` for a 3-jet ``g`` with symbolic entries.

    ``D`` is the differential used in the Maurer-Cartan term (``d`` for
    connections, the BRS operator for ghosts).
    """
    return adjoint_form(g, omega) + maurer_cartan(g, D)


def christoffel_literal(ctx, omega1=None, e3=None):
    """The published component formulas for ``Gamma`` written out in dimension one.

    ``e3`` defaults to the free third-jet generator of ``ctx``.
    """
    theta, theta_u = solder_forms(ctx)
    w = var(ctx.W) if omega1 is None else omega1
    d = ctx.d
    e, e2 = var(ctx.e, ctx.e2)
    e3 = var(ctx.e3) if e3 is None else e3
    i1, i2 = ctx.inv1, ctx.inv2
    g_m1 = e * theta
    g_0 = e * theta_u * i1 + e2 * theta * i1 + e * d(i1)
    g_1 = (
        e3 * theta * i1 * i1
        + e2 * theta * i2
        + e2 * theta_u * i1 * i1
        + e2 * i1 * theta_u * i1
        + e * theta_u * i2
        + e * w * i1 * i1
        + e * d(i2)
        + e2 * d(i1 * i1)
    )
    return GValuedForm.of(g_m1, g_0, g_1)


def pullback(ctx, line, expr, *, e3=None):
    """Pull a frame-bundle expression back to the line along the frame field.

    ``e -> 1/E``, ``e2 -> -F/E^3``, ``W -> w dx``; differentials follow
    from the line's ``d``.  ``e3`` (if present) needs an explicit image.
    """
    if isinstance(expr, GValuedForm):
        return expr.map(lambda p: pullback(ctx, line, p, e3=e3))
    e_img, e2_img = line.e, line.e2
    w_dx = line.jet("w") * var(line.dx)
    mapping = {
        ctx.e: e_img,
        ctx.e2: e2_img,
        ctx.de: line.d(e_img),
        ctx.de2: line.d(e2_img),
        ctx.W: w_dx,
        ctx.dW: line.d(w_dx),
        ctx.dx: var(line.dx),
    }
    if e3 is not None:
        mapping[ctx.e3] = e3
        mapping[ctx.de3] = line.d(e3)
    leftover = {g for g in Expr.coerce(expr).generators() if g not in mapping}
    if leftover:
        raise ValueError(f"no pullback for {sorted(map(str, leftover))}")
    return Expr.coerce(expr).subs(mapping)
