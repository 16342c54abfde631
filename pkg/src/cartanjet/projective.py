"""Projective structures on the line: SL(2) frames, the third-jet lift,
the projective connection and the Schwarzian derivative.

Frame data here are *derivatives*: ``ProjFrame2(x, e, e2)`` is the frame
``u -> x + e u + e2 u^2 / 2``.  All factorial bookkeeping goes through
:func:`cartanjet.jetcore.to_derivatives` and
:func:`cartanjet.jetcore.from_derivatives`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cartanconn import (
    GValuedForm,
    cartan_connection,
    frame_lift,
    gauge_transform,
)
from .jetcore import Jet2, Jet3, JetError, as_rational, from_derivatives, to_derivatives
from .symba import Expr, var

__all__ = [
    "ProjFrame2",
    "Sl2Element",
    "CoordinateChange",
    "embed_sl2",
    "matches_sqrt_display",
    "mobius_jet",
    "projective_third",
    "lift3",
    "chi",
    "proj_gamma",
    "proj_connection",
    "gamma_coefficient",
    "schwarzian_from_derivatives",
    "schwarzian",
    "schwarzian_polynomial",
    "transform_frame",
    "inverse_frame",
    "transform_inverse_frame",
    "transform_chi",
    "transform_gamma",
]

HALF = Fraction(1, 2)
THREE_HALVES = Fraction(3, 2)


def _inv(v):
    return Fraction(1) / v


def _nonzero(v):
    return not (v == 0)


@dataclass(frozen=True)
class ProjFrame2:
    """Projective 2-frame ``(x, e^x_u, e^x_uu)``."""

    x: object
    e: object
    e2: object

    def __post_init__(self):
        if not _nonzero(self.e):
            raise JetError("projective frame needs e != 0")

    def to_jet(self):
        return from_derivatives([self.x], [[self.e]], [[[self.e2]]])

    @classmethod
    def from_jet(cls, jet):
        if jet.dim != 1:
            raise JetError("projective frames are one-dimensional")
        x, e, e2 = (t.flat[0] for t in to_derivatives(jet)[:3])
        return cls(x, e, e2)

    def to_json(self):
        return {"x": str(self.x), "e": str(self.e), "e2": str(self.e2)}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(as_rational(data["x"]), as_rational(data["e"]), as_rational(data["e2"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, JetError):
                raise
            raise JetError(f"malformed projective frame: {exc}") from exc


@dataclass(frozen=True)
class Sl2Element:
    """``[[1, b], [0, 1]] @ [[a, 0], [c, 1/a]]`` acting by Moebius maps."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.a == 0:
            raise JetError("Sl2Element needs a != 0")

    def matrix(self):
        a, b, c = self.a, self.b, self.c
        return ((a + b * c, b / a), (c, 1 / a))

    @classmethod
    def from_matrix(cls, m):
        (p, q), (r, s) = m
        if p * s - q * r != 1:
            raise JetError("matrix is not in SL(2)")
        if s == 0:
            raise JetError("matrix has no lower-triangular factorisation")
        return cls(1 / as_rational(s), as_rational(q) / as_rational(s), as_rational(r))

    def __matmul__(self, other):
        (p, q), (r, s) = self.matrix()
        (p2, q2), (r2, s2) = other.matrix()
        return Sl2Element.from_matrix(((p * p2 + q * r2, p * q2 + q * s2), (r * p2 + s * r2, r * q2 + s * s2)))

    def __call__(self, u):
        (p, q), (r, s) = self.matrix()
        return (p * u + q) / (r * u + s)


def mobius_jet(m, order=3):
    """Taylor jet at 0 of ``u -> b + a u / (c u + 1/a)`` (geometric series)."""
    a, c = m.a, m.c
    coeffs = [a * a * (-a * c) ** (k - 1) for k in range(1, order + 1)]
    if order == 2:
        return Jet2([m.b], [[coeffs[0]]], [[[coeffs[1]]]])
    if order == 3:
        return Jet3([m.b], [[coeffs[0]]], [[[coeffs[1]]]], [[[[coeffs[2]]]]])
    raise JetError("order must be 2 or 3")


def embed_sl2(m):
    """2-jet ``(0, a^2, -a^3 c)`` (coefficients) of the Moebius map of ``m``."""
    if m.b != 0:
        raise JetError("only the stabiliser of 0 (b = 0) embeds in G_2")
    return mobius_jet(m, order=2)


def matches_sqrt_display(m, g):
    """Check ``a = (g')^(1/2)`` and ``c = -1/2 g'' (g')^(-3/2)`` without square roots."""
    _, d1, d2 = (t.flat[0] for t in to_derivatives(g)[:3])
    a, c = m.a, m.c
    return a * a == d1 and c * a ** 3 == -HALF * d2


def projective_third(e, e2):
    """Third derivative forced on a projective frame: ``3/2 e2^2 / e``."""
    if not _nonzero(e):
        raise JetError("projective lift needs e != 0")
    return THREE_HALVES * e2 * e2 * _inv(e)


def lift3(frame):
    """Unique projective 3-jet over a projective 2-frame."""
    return from_derivatives(
        [frame.x], [[frame.e]], [[[frame.e2]]], [[[[projective_third(frame.e, frame.e2)]]]]
    )


def chi(e, e2):
    """``chi = e^u_xx e^x_u = -e2 / e^2``."""
    return -e2 * _inv(e) ** 2


def proj_gamma(ctx, omega1=None, frame=None, *, dx=None, check=True):
    """``Gamma^x_xx = e^u_x omega1 + d chi - 1/2 chi^2 dx``.

    ``frame`` is a pair ``(e, e2)`` of expressions (default: the frame
    coordinates of ``ctx``) and ``dx`` the chart differential, which
    differs from ``ctx.dx`` after a coordinate change.  With ``check`` (default frame only) the
    result is compared with the general gauge transform of the Cartan
    connection by the projective lift.
    """
    w = var(ctx.W) if omega1 is None else Expr.coerce(omega1)
    if frame is None:
        e, e2 = var(ctx.e, ctx.e2)
    else:
        e, e2 = (Expr.coerce(v) for v in frame)
    ch = chi(e, e2)
    dx = var(ctx.dx) if dx is None else dx
    gamma = _inv(e) * w + ctx.d(ch) - HALF * ch * ch * dx
    if check and frame is None and dx == var(ctx.dx):
        full = proj_connection(ctx, omega1)
        expected = GValuedForm.of(var(ctx.dx), 0, gamma)
        if not (full - expected).is_zero():
            raise AssertionError(f"projective connection mismatch: {full - expected}")
    return gamma


def proj_connection(ctx, omega1=None):
    """All three components ``Ad(l) omega + l d l^-1`` for the projective lift ``l``."""
    e, e2 = var(ctx.e, ctx.e2)
    lift = frame_lift(e, e2, projective_third(e, e2))
    return gauge_transform(cartan_connection(ctx, omega1), lift, ctx.d)


def gamma_coefficient(line):
    """``Gamma^x_xx,x = e^u_x w + D chi - 1/2 chi^2`` on the line, ``chi = F / E``."""
    ch = line.chi
    return line.jet("E") * line.jet("w") + line.D(ch) - HALF * ch * ch


def schwarzian_from_derivatives(d1, d2, d3):
    """``f''' / f' - 3/2 (f'' / f')^2`` for any ring entries."""
    if not _nonzero(d1):
        raise JetError("Schwarzian needs f' != 0")
    inv = _inv(d1)
    return d3 * inv - THREE_HALVES * (d2 * inv) * (d2 * inv)


def schwarzian(f):
    """Schwarzian of a 1-dimensional 3-jet or of a :class:`CoordinateChange`."""
    if isinstance(f, CoordinateChange):
        return schwarzian_from_derivatives(f.d1, f.d2, f.d3)
    if not isinstance(f, Jet3) or f.dim != 1:
        raise JetError("schwarzian needs a one-dimensional 3-jet")
    _, d1, d2, d3 = (t.flat[0] for t in to_derivatives(f))
    return schwarzian_from_derivatives(d1, d2, d3)


def schwarzian_polynomial(coeffs, point):
    """Schwarzian of ``sum coeffs[k] x^k`` at ``point``, exactly."""
    coeffs = [as_rational(c) for c in coeffs]
    point = as_rational(point)

    def deriv(k):
        total = Fraction(0)
        for n, c in enumerate(coeffs):
            if n >= k:
                falling = 1
                for j in range(k):
                    falling *= n - j
                total += c * falling * point ** (n - k)
        return total

    return schwarzian_from_derivatives(deriv(1), deriv(2), deriv(3))


@dataclass(frozen=True)
class CoordinateChange:
    """Value and first three derivatives of ``x -> x'`` at a point."""

    value: object
    d1: object
    d2: object
    d3: object = 0

    def __post_init__(self):
        if not _nonzero(self.d1):
            raise JetError("coordinate change needs dx'/dx != 0")

    @classmethod
    def from_jet(cls, jet):
        if jet.dim != 1:
            raise JetError("coordinate changes are one-dimensional here")
        ders = [t.flat[0] for t in to_derivatives(jet)]
        if len(ders) == 3:
            ders.append(0)
        return cls(*ders)

    @classmethod
    def symbolic(cls, ctx):
        """The generic change: jet tower ``J, J', J''`` of the Jacobian."""
        return cls(None, ctx.jacobian(0), ctx.jacobian(1), ctx.jacobian(2))


def _change(phi):
    return phi if isinstance(phi, CoordinateChange) else CoordinateChange.from_jet(phi)


def transform_frame(frame, phi):
    """``e -> phi' e``, ``e2 -> phi' e2 + phi'' e^2``, ``x -> phi(x)``."""
    phi = _change(phi)
    return ProjFrame2(phi.value, phi.d1 * frame.e, phi.d1 * frame.e2 + phi.d2 * frame.e * frame.e)


def inverse_frame(frame):
    """``(e^u_x, e^u_xx) = (1/e, -e2/e^3)``."""
    inv = _inv(frame.e)
    return inv, -frame.e2 * inv * inv * inv


def transform_inverse_frame(inv, phi):
    """``e^u_x' = e^u_x / phi'``, ``e^u_x'x' = phi'^-2 e^u_xx - phi'^-3 phi'' e^u_x``."""
    phi = _change(phi)
    i1, i2 = inv
    p = _inv(phi.d1)
    return i1 * p, p * p * i2 - p * p * p * phi.d2 * i1


def transform_chi(ch, phi):
    """``chi' = chi / phi' - phi'' / phi'^2``."""
    phi = _change(phi)
    p = _inv(phi.d1)
    return ch * p - phi.d2 * p * p


def transform_gamma(ctx, phi=None, omega1=None):
    """``Gamma - phi' Gamma'`` for a coordinate change (generic tower by default).

    ``Gamma'`` is built from the transformed frame; the gl_1 form is a
    scalar form on the frame bundle and is left as it is.  The result
    should equal ``schwarzian(phi) dx``.
    """
    phi = CoordinateChange.symbolic(ctx) if phi is None else _change(phi)
    e, e2 = var(ctx.e, ctx.e2)
    moved = transform_frame(ProjFrame2(None, e, e2), phi)
    gamma = proj_gamma(ctx, omega1, check=False)
    gamma_new = proj_gamma(ctx, omega1, frame=(moved.e, moved.e2), dx=phi.d1 * var(ctx.dx), check=False)
    return gamma - phi.d1 * gamma_new
