"""Independent reference computations built on sympy.

None of these share code with the package: jets become explicit sympy
polynomials, composition is substitution followed by series truncation,
and the BRS variation of the projective coefficient is an ordinary
first-order variation of functions of x.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

import sympy as sp


def _q(v):
    f = Fraction(str(v))
    return sp.Rational(f.numerator, f.denominator)


def jet_polys(jet, symbols):
    """sympy components ``f^mu(u)`` of a jet's polynomial representative."""
    n = jet.dim
    tensors = jet.tensors()
    out = []
    for mu in range(n):
        expr = sp.Integer(0)
        for k, t in enumerate(tensors):
            for idx in product(range(n), repeat=k):
                term = _q(t[(mu,) + idx])
                for i in idx:
                    term *= symbols[i]
                expr += term
        out.append(sp.expand(expr))
    return out


def truncate(expr, symbols, order):
    poly = sp.Poly(sp.expand(expr), *symbols)
    return sp.expand(sum(c * sp.prod([s ** e for s, e in zip(symbols, m)]) for m, c in poly.terms() if sum(m) <= order))


def compose(f, g, order):
    """Polynomials of ``f o g`` truncated at ``order``."""
    n = f.dim
    u = sp.symbols(f"u0:{n}")
    gp = [p - _q(g.base[i]) for i, p in enumerate(jet_polys(g, u))]
    fp = jet_polys(f, u)
    comp = [p.subs(dict(zip(u, gp)), simultaneous=True) for p in fp]
    return [truncate(c, u, order) for c in comp], u


def coefficients(polys, u, order):
    """Raw coefficient dictionaries ``{exponent tuple: value}`` per component."""
    out = []
    for p in polys:
        poly = sp.Poly(p, *u)
        out.append({m: c for m, c in poly.terms() if sum(m) <= order})
    return out


def jet_coefficients(jet):
    n = jet.dim
    u = sp.symbols(f"u0:{n}")
    return coefficients(jet_polys(jet, u), u, jet.order)


def inverse_line(e1, e2, e3):
    """Series reversion of ``e1 u + e2 u^2 + e3 u^3`` by undetermined coefficients."""
    u = sp.symbols("u")
    a1, a2, a3 = sp.symbols("a1:4")
    g = a1 * u + a2 * u ** 2 + a3 * u ** 3
    f = _q(e1) * g + _q(e2) * g ** 2 + _q(e3) * g ** 3
    eqs = [sp.expand(f).coeff(u, k) - (1 if k == 1 else 0) for k in (1, 2, 3)]
    sol = sp.solve(eqs, [a1, a2, a3], dict=True)[0]
    return sol[a1], sol[a2], sol[a3]


def mobius_taylor(a, c, order=3):
    u = sp.symbols("u")
    a, c = _q(a), _q(c)
    series = sp.series(a * u / (c * u + 1 / a), u, 0, order + 1).removeO()
    return [sp.expand(series).coeff(u, k) for k in range(1, order + 1)]


def schwarzian_at(expr, x, point):
    d1, d2, d3 = (sp.diff(expr, x, k).subs(x, point) for k in (1, 2, 3))
    return sp.Rational(d3 / d1 - sp.Rational(3, 2) * (d2 / d1) ** 2)


def vector_bracket_line(x, y):
    """``-[X, Y]`` for ``X = x0 + x1 u + x2 u^2`` (d/du), truncated at u^2."""
    u = sp.symbols("u")
    X = sum(_q(c) * u ** k for k, c in enumerate(x))
    Y = sum(_q(c) * u ** k for k, c in enumerate(y))
    br = sp.expand(-(X * sp.diff(Y, u) - Y * sp.diff(X, u)))
    return [br.coeff(u, k) for k in range(3)]


def virasoro_residual():
    """``delta G - (xi''' + xi G' + 2 xi' G)`` with ``delta`` the infinitesimal diffeomorphism.

    ``E, F, w, xi`` are ordinary functions; ``delta`` is linear in ``xi``
    so commuting xi is enough.
    """
    x, t = sp.symbols("x t")
    E, F, w, xi = (sp.Function(n)(x) for n in ("E", "F", "w", "xi"))

    def G(E, F, w):
        chi = F / E
        return E * w + sp.diff(chi, x) - chi ** 2 / 2

    dE = sp.diff(E * xi, x)
    dF = sp.diff(F, x) * xi + 2 * F * sp.diff(xi, x) + E * sp.diff(xi, x, 2)
    dw = sp.diff(w * xi, x)
    varied = G(E + t * dE, F + t * dF, w + t * dw)
    delta = sp.diff(varied, t).subs(t, 0)
    g = G(E, F, w)
    law = sp.diff(xi, x, 3) + xi * sp.diff(g, x) + 2 * sp.diff(xi, x) * g
    return sp.simplify(sp.expand(delta - law))
