"""The graded Lie algebra gl_-1 + gl_0 + gl_1 of 2-jets of vector fields.

An element is the 2-jet at 0 of ``X(u) = (X^a + X^a_b u^b + X^a_bc u^b u^c) d_a``
with the same raw-coefficient convention as :mod:`cartanjet.jetcore`.
The normative bracket is :func:`bracket_oracle`, minus the Lie bracket of
the polynomial representatives truncated at order two.  The adjoint
action of a 3-jet group element is likewise computed from its defining
formula, ``d/dt j2(g o (id + tX) o g^-1)`` at ``t = 0``, with ``t`` a
formal dual unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from gmpy2 import mpq

from .jetcore import JetError, Jet3, _array, _ein, as_rational, inverse3, symmetrize, to_derivatives
from .polynomial import PolyMap, poly_from_tensors, substitute, tensors_from_poly

__all__ = [
    "VecJet",
    "GradedPiece",
    "Dual",
    "bracket_oracle",
    "bracket_paper",
    "grading_check",
    "adjoint",
    "adjoint_paper",
    "random_vecjet",
    "vecjet_to_json",
    "vecjet_from_json",
]

GRADES = (-1, 0, 1)


class VecJet:
    """``(X^a, X^a_b, X^a_bc)``; the last is symmetric in its lower indices."""

    def __init__(self, comp_m1, comp_0, comp_1, *, check=True):
        comp_0 = np.asarray(comp_0, dtype=object)
        n = comp_0.shape[0] if comp_0.ndim == 2 else 1
        self.dim = n
        self.comp_m1 = _array(comp_m1, (n,))
        self.comp_0 = _array(comp_0, (n, n))
        self.comp_1 = _array(comp_1, (n, n, n))
        if check and not all(
            self.comp_1[a, b, c] == self.comp_1[a, c, b]
            for a in range(n) for b in range(n) for c in range(n)
        ):
            raise ValueError("X^a_bc must be symmetric in b, c")

    @classmethod
    def zero(cls, n):
        return cls(np.zeros(n, dtype=int), np.zeros((n, n), dtype=int), np.zeros((n, n, n), dtype=int))

    @classmethod
    def line(cls, x0, x1, x2):
        """Dimension-one element ``x0 + x1 u + x2 u^2``."""
        return cls([x0], [[x1]], [[[x2]]])

    def components(self):
        return [self.comp_m1, self.comp_0, self.comp_1]

    def piece(self, grade):
        """Projection onto gl_grade."""
        comps = [np.zeros(c.shape, dtype=int).astype(object) for c in self.components()]
        comps[grade + 1] = self.components()[grade + 1]
        return VecJet(*comps, check=False)

    def grades(self):
        """Grades carrying a nonzero component."""
        return [k for k, c in zip(GRADES, self.components()) if any(v != 0 for v in c.flat)]

    def is_zero(self):
        return not self.grades()

    def derivatives(self):
        """Components as derivatives at 0: ``(X^a, d_b X^a, d_b d_c X^a)``."""
        return [self.comp_m1, self.comp_0, np.vectorize(lambda v: 2 * v, otypes=[object])(self.comp_1)]

    @classmethod
    def from_derivatives(cls, d0, d1, d2):
        half = Fraction(1, 2)
        return cls(d0, d1, np.vectorize(lambda v: as_rational(v) * half, otypes=[object])(np.asarray(d2, dtype=object)))

    def to_poly(self, degree=2):
        return poly_from_tensors(self.components(), degree)

    @classmethod
    def from_poly(cls, pmap):
        t = tensors_from_poly(pmap, 2)
        return cls(*t, check=False)

    def _zip(self, other, op):
        return VecJet(*(op(a, b) for a, b in zip(self.components(), other.components())), check=False)

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self):
        return VecJet(*(-c for c in self.components()), check=False)

    def __mul__(self, scalar):
        return VecJet(*(c * scalar for c in self.components()), check=False)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VecJet) or other.dim != self.dim:
            return NotImplemented
        return all(
            all(x == y for x, y in zip(a.flat, b.flat))
            for a, b in zip(self.components(), other.components())
        )

    def __hash__(self):
        return hash(tuple(tuple(c.flat) for c in self.components()))

    def __repr__(self):
        from .jetcore import _fmt

        return f"VecJet({', '.join(_fmt(c) for c in self.components())})"


@dataclass(frozen=True)
class GradedPiece:
    """A homogeneous element of degree -1, 0 or +1."""

    degree: int
    value: VecJet

    def __post_init__(self):
        if self.degree not in GRADES:
            raise ValueError(f"degree must be one of {GRADES}")
        if any(k != self.degree for k in self.value.grades()):
            raise ValueError(f"element is not homogeneous of degree {self.degree}")


def _check_dims(x, y):
    if x.dim != y.dim:
        raise JetError(f"dimension mismatch: {x.dim} vs {y.dim}")


def bracket_oracle(x, y):
    """Minus the Lie bracket of the polynomial vector fields, truncated at order 2."""
    _check_dims(x, y)
    px, py = x.to_poly(degree=3), y.to_poly(degree=3)
    return VecJet.from_poly((-px.lie_bracket(py)).truncate(2))


def bracket_paper(x, y, *, derivatives=False):
    """Literal component transcription of the published bracket formulas.

    Applied to raw coefficients this differs from :func:`bracket_oracle`
    in the ``X^a_bc Y^c`` term of the gl_0 component (factor 2).  With
    ``derivatives=True`` the formulas are read on derivative components
    (the result is converted back), and then it agrees exactly.
    """
    _check_dims(x, y)
    if derivatives:
        dx = VecJet(*x.derivatives(), check=False)
        dy = VecJet(*y.derivatives(), check=False)
        return VecJet.from_derivatives(*bracket_paper(dx, dy).components())
    X0, X1, X2 = x.components()
    Y0, Y1, Y2 = y.components()

    def one_side(A0, A1, A2, B0, B1, B2):
        m1 = _ein("ab,b->a", A1, B0)
        z = _ein("ac,cb->ab", A1, B1) + _ein("abc,c->ab", A2, B0)
        p = _ein("ad,dbc->abc", A1, B2) + _ein("adc,db->abc", A2, B1) + _ein("abd,dc->abc", A2, B1)
        return m1, z, p

    a = one_side(X0, X1, X2, Y0, Y1, Y2)
    b = one_side(Y0, Y1, Y2, X0, X1, X2)
    return VecJet(*(u - v for u, v in zip(a, b)), check=False)


def grading_check(x, y):
    """Grade of ``[x, y]`` for pure pieces; ``None`` when the bracket vanishes.

    Raises ``AssertionError`` if the bracket leaves gl_{k+l} (or fails to
    vanish when ``k + l`` is out of range).
    """
    br = bracket_oracle(x.value, y.value)
    target = x.degree + y.degree
    grades = br.grades()
    if not grades:
        return None
    if target not in GRADES or grades != [target]:
        raise AssertionError(f"[gl_{x.degree}, gl_{y.degree}] has grades {grades}")
    return target


class Dual:
    """``a + b t`` with ``t^2 = 0``; products keep factor order."""

    __slots__ = ("re", "eps")

    def __init__(self, re, eps=0):
        self.re = re
        self.eps = eps

    @staticmethod
    def _parts(v):
        return (v.re, v.eps) if isinstance(v, Dual) else (v, 0)

    def __add__(self, other):
        a, b = self._parts(other)
        return Dual(self.re + a, self.eps + b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.re, -self.eps)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Dual) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._parts(other)
        return Dual(self.re * a, self.re * b + self.eps * a)

    def __rmul__(self, other):
        a, b = self._parts(other)
        return Dual(a * self.re, a * self.eps + b * self.re)

    def __eq__(self, other):
        a, b = self._parts(other)
        return self.re == a and self.eps == b

    __hash__ = None

    def __repr__(self):
        return f"Dual({self.re!r}, {self.eps!r})"


def _lift_group_element(g):
    if g.order == 3:
        return g
    n = g.dim
    return Jet3(g.base, g.e1, g.e2, np.zeros((n,) * 4, dtype=int), check=False)


def adjoint(g, x):
    """``Ad(g) X = d/dt|_0 j2(g o (id + tX) o g^-1)``.

    ``g`` is a jet fixing the origin; a 2-jet is padded with zero third
    order coefficients.
    """
    _check_dims(g, x)
    if not g.is_group_element:
        raise JetError("adjoint needs an element fixing the origin")
    g = _lift_group_element(g)
    ginv = inverse3(g)
    n = g.dim
    outer = poly_from_tensors(g.tensors(), 3)
    inner = poly_from_tensors(ginv.tensors(), 3)
    ident = PolyMap.identity(n, 3)
    vec = x.to_poly(degree=3)
    flow = PolyMap(
        type(p)(n, 3, {a: Dual(p.coefficient(a), v.coefficient(a)) for a in set(p.terms) | set(v.terms)})
        for p, v in zip(ident, vec)
    )
    conj = substitute(substitute(outer, flow), inner)
    tangent = PolyMap(
        type(p)(n, 2, {a: c.eps for a, c in p.terms.items() if isinstance(c, Dual)})
        for p in conj
    )
    return VecJet.from_poly(tangent)


def adjoint_paper(g, x, *, derivatives=False):
    """Literal transcription of the published component formulas of Ad.

    ``g^a'_a.., X^a..`` are the components of the inputs and ``g^a_b'``,
    ``g^a_b'c'`` those of the inverse.  By default components are raw
    coefficients; ``derivatives=True`` reads every component as a partial
    derivative (the reading under which the display is exact) and
    converts the result back.
    """
    g = _lift_group_element(g)
    ginv = inverse3(g)
    if derivatives:
        _, G1, G2, G3 = to_derivatives(g)
        _, H1, H2, _ = to_derivatives(ginv)
        got = _adjoint_components(G1, G2, G3, H1, H2, *x.derivatives())
        return VecJet.from_derivatives(*got.components())
    return _adjoint_components(g.e1, g.e2, g.e3, ginv.e1, ginv.e2, *x.components())


def _adjoint_components(G1, G2, G3, H1, H2, X0, X1, X2):
    y0 = _ein("pa,a->p", G1, X0)
    y1 = _ein("pab,b,ai->pi", G2, X0, H1) + _ein("pa,ab,bi->pi", G1, X1, H1)
    y2 = (
        _ein("pabc,c,bi,aj->pij", G3, X0, H1, H1)
        + _ein("pab,bc,ci,aj->pij", G2, X1, H1, H1)
        + _ein("pac,ci,ab,bj->pij", G2, H1, X1, H1)
        + _ein("pa,abc,ci,bj->pij", G1, X2, H1, H1)
        + _ein("pab,b,aij->pij", G2, X0, H2)
        + _ein("pa,ab,bij->pij", G1, X1, H2)
    )
    return VecJet(y0, y1, y2, check=False)


def random_vecjet(rng, n, *, bound=5, grades=GRADES):
    """Random rational element, optionally restricted to some grades."""

    def rat(shape):
        num = rng.integers(-bound, bound + 1, size=shape)
        den = rng.integers(1, bound + 1, size=shape)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            out[idx] = mpq(int(num[idx]), int(den[idx]))
        return out

    comps = [rat((n,)), rat((n, n)), symmetrize(rat((n, n, n)))]
    for k in GRADES:
        if k not in grades:
            comps[k + 1] = np.full(comps[k + 1].shape, Fraction(0), dtype=object)
    return VecJet(*comps)


def vecjet_to_json(x):
    enc = lambda t: np.vectorize(str, otypes=[object])(t).tolist()  # noqa: E731
    return {"dim": x.dim, "Xm1": enc(x.comp_m1), "X0": enc(x.comp_0), "X1": enc(x.comp_1)}


def vecjet_from_json(data):
    n = int(data["dim"])
    return VecJet(
        np.asarray(data["Xm1"], dtype=object).reshape((n,)),
        np.asarray(data["X0"], dtype=object).reshape((n, n)),
        np.asarray(data["X1"], dtype=object).reshape((n, n, n)),
    )
