"""Exact arithmetic of 2-jets and 3-jets of local diffeomorphisms of R^n.

A jet is stored through the polynomial representative of the germ,

    f^mu(u) = x^mu + e^mu_a u^a + e^mu_ab u^a u^b + e^mu_abc u^a u^b u^c,

with the higher coefficients kept as dense symmetric tensors.  Note that
these are raw Taylor *coefficients*; the derivatives are 2! e^mu_ab and
3! e^mu_abc.  :func:`to_derivatives` / :func:`from_derivatives` convert.

Numeric entries are GMP rationals (``gmpy2.mpq``), but every operation
only uses ring arithmetic (plus inversion of the first-order part), so
symbolic coefficients work as well in dimension one.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial

import numpy as np
from gmpy2 import mpq

__all__ = [
    "Jet2",
    "Jet3",
    "JetError",
    "as_rational",
    "compose2",
    "compose3",
    "inverse2",
    "inverse3",
    "identity",
    "line_jet",
    "natural_frame",
    "semidirect_split",
    "to_derivatives",
    "from_derivatives",
    "random_jet",
    "jet_to_json",
    "jet_from_json",
    "matrix_inverse",
    "symmetrize",
]


class JetError(ValueError):
    """Raised for singular jets, dimension mismatches and bad base points."""


RATIONAL = type(mpq())


def as_rational(value):
    """Coerce ints, strings like ``"3/8"`` and Fractions to exact GMP rationals.

    Anything else (symbolic coefficients) is returned unchanged.
    """
    if isinstance(value, RATIONAL):
        return value
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, (int, np.integer)):
        return mpq(int(value))
    if isinstance(value, str):
        f = Fraction(value)
        return mpq(f.numerator, f.denominator)
    if isinstance(value, float):
        raise TypeError("floating-point jet coefficients are not supported")
    return value


def _array(data, shape):
    arr = np.empty(shape, dtype=object)
    src = np.asarray(data, dtype=object).reshape(shape)
    for idx in np.ndindex(*shape):
        arr[idx] = as_rational(src[idx])
    arr.flags.writeable = False
    return arr


def _zeros(shape):
    arr = np.full(shape, mpq(0), dtype=object)
    arr.flags.writeable = False
    return arr


def _is_rational_array(arr):
    return all(isinstance(v, (Fraction, RATIONAL)) for v in arr.flat)


def symmetrize(t):
    """Average a tensor over permutations of all axes but the first."""
    k = t.ndim - 1
    if k < 2:
        return t
    perms = list(permutations(range(1, k + 1)))
    acc = None
    for p in perms:
        moved = np.transpose(t, (0,) + p)
        acc = moved.copy() if acc is None else acc + moved
    scale = Fraction(1, len(perms))
    out = np.empty(t.shape, dtype=object)
    for idx in np.ndindex(*t.shape):
        out[idx] = acc[idx] * scale
    return out


def _is_symmetric(t):
    k = t.ndim - 1
    for p in permutations(range(1, k + 1)):
        moved = np.transpose(t, (0,) + p)
        for idx in np.ndindex(*t.shape):
            if not moved[idx] == t[idx]:
                return False
    return True


def matrix_inverse(m):
    """Exact inverse of a square matrix of rationals (or a 1x1 symbolic one)."""
    n = m.shape[0]
    if n == 1:
        if m[0, 0] == 0:
            raise JetError("first-order part is singular")
        out = np.empty((1, 1), dtype=object)
        out[0, 0] = 1 / m[0, 0]
        return out
    if not _is_rational_array(m):
        raise JetError("symbolic inversion is only supported in dimension one")
    a = [[as_rational(v) for v in row] for row in m]
    inv = [[mpq(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise JetError("first-order part is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        p = a[col][col]
        a[col] = [v / p for v in a[col]]
        inv[col] = [v / p for v in inv[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                inv[r] = [x - f * y for x, y in zip(inv[r], inv[col])]
    return np.array(inv, dtype=object)


class Jet2:
    """2-jet ``(x^mu, e^mu_a, e^mu_ab)`` of a local diffeomorphism germ."""

    order = 2

    def __init__(self, base, e1, e2, *, check=True):
        e1 = np.asarray(e1, dtype=object)
        n = e1.shape[0] if e1.ndim == 2 else 1
        self.dim = n
        self.base = _array(base, (n,))
        self.e1 = _array(e1, (n, n))
        self.e2 = _array(e2, (n, n, n))
        if check:
            self._validate()

    def _validate(self):
        if not _is_symmetric(self.e2):
            raise JetError("second-order coefficients must be symmetric")
        if _is_rational_array(self.e1):
            matrix_inverse(self.e1)

    def tensors(self):
        return [self.base, self.e1, self.e2]

    @property
    def is_group_element(self):
        return all(v == 0 for v in self.base.flat)

    def truncate(self):
        return Jet2(self.base, self.e1, self.e2, check=False)

    def recentred(self):
        """Same jet with base point moved to the origin."""
        return type(self)(_zeros((self.dim,)), *self.tensors()[1:], check=False)

    def __eq__(self, other):
        if not isinstance(other, Jet2) or other.order != self.order or other.dim != self.dim:
            return NotImplemented
        return all(
            all(x == y for x, y in zip(a.flat, b.flat))
            for a, b in zip(self.tensors(), other.tensors())
        )

    def __hash__(self):
        return hash(tuple(tuple(t.flat) for t in self.tensors()))

    def __repr__(self):
        parts = ", ".join(_fmt(t) for t in self.tensors())
        return f"{type(self).__name__}({parts})"


class Jet3(Jet2):
    """3-jet ``(x^mu, e^mu_a, e^mu_ab, e^mu_abc)``."""

    order = 3

    def __init__(self, base, e1, e2, e3, *, check=True):
        e1 = np.asarray(e1, dtype=object)
        n = e1.shape[0] if e1.ndim == 2 else 1
        self.e3 = _array(e3, (n, n, n, n))
        super().__init__(base, e1, e2, check=check)

    def _validate(self):
        super()._validate()
        if not _is_symmetric(self.e3):
            raise JetError("third-order coefficients must be totally symmetric")

    def tensors(self):
        return [self.base, self.e1, self.e2, self.e3]


def _fmt(t):
    if t.size == 1:
        return str(t.flat[0])
    return str(np.vectorize(str, otypes=[object])(t).tolist()).replace("'", "")


def _check_pair(f, g):
    if f.dim != g.dim:
        raise JetError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if not g.is_group_element:
        raise JetError("inner jet must fix the origin")


def _ein(spec, *ops):
    return np.einsum(spec, *ops, optimize="greedy")


def compose2(f, g):
    """2-jet of ``f o g``; ``g`` must fix the origin."""
    _check_pair(f, g)
    e1 = _ein("ma,ai->mi", f.e1, g.e1)
    e2 = _ein("mab,ai,bj->mij", f.e2, g.e1, g.e1) + _ein("ma,aij->mij", f.e1, g.e2)
    return Jet2(f.base, e1, e2, check=False)


def compose3(f, g):
    """3-jet of ``f o g``; ``g`` must fix the origin.

    The order-three coefficient is the symmetrisation of
    ``f1 g3 + 2 f2(g1, g2) + f3(g1, g1, g1)``.
    """
    _check_pair(f, g)
    e1 = _ein("ma,ai->mi", f.e1, g.e1)
    e2 = _ein("mab,ai,bj->mij", f.e2, g.e1, g.e1) + _ein("ma,aij->mij", f.e1, g.e2)
    e3 = (
        _ein("ma,aijk->mijk", f.e1, g.e3)
        + 2 * _ein("mab,ai,bjk->mijk", f.e2, g.e1, g.e2)
        + _ein("mabc,ai,bj,ck->mijk", f.e3, g.e1, g.e1, g.e1)
    )
    return Jet3(f.base, e1, e2, symmetrize(e3), check=False)


def inverse2(f):
    """Inverse germ, expanded about ``f``'s base point (so its own base is 0)."""
    inv1 = matrix_inverse(f.e1)
    inv2 = -_ein("al,lbc,bi,cj->aij", inv1, f.e2, inv1, inv1)
    return Jet2(_zeros((f.dim,)), inv1, inv2, check=False)


def inverse3(f):
    """Third-order inverse by series reversion of ``f o f^-1 = id``."""
    inv = inverse2(f)
    inv1, inv2 = inv.e1, inv.e2
    rest = 2 * _ein("mab,ai,bjk->mijk", f.e2, inv1, inv2) + _ein(
        "mabc,ai,bj,ck->mijk", f.e3, inv1, inv1, inv1
    )
    inv3 = -_ein("am,mijk->aijk", inv1, symmetrize(rest))
    return Jet3(_zeros((f.dim,)), inv1, inv2, inv3, check=False)


def identity(n, order=2):
    one = np.eye(n, dtype=int).astype(object)
    if order == 2:
        return Jet2(_zeros((n,)), one, _zeros((n,) * 3))
    return Jet3(_zeros((n,)), one, _zeros((n,) * 3), _zeros((n,) * 4))


def line_jet(x, e1, e2, e3=None):
    """Dimension-one jet from scalars: ``x + e1 u + e2 u^2 [+ e3 u^3]``."""
    if e3 is None:
        return Jet2([x], [[e1]], [[[e2]]])
    return Jet3([x], [[e1]], [[[e2]]], [[[[e3]]]])


def natural_frame(x):
    """2-jet of the translation ``u -> x + u``."""
    x = list(x) if np.ndim(x) else [x]
    n = len(x)
    return Jet2(x, np.eye(n, dtype=int).astype(object), _zeros((n,) * 3))


def semidirect_split(g):
    """Split ``g = (g1, g2)`` into ``(g1, 0) . (1, g1^-1 g2)``."""
    if not g.is_group_element:
        raise JetError("semidirect split needs an element fixing the origin")
    n = g.dim
    linear = Jet2(g.base, g.e1, _zeros((n,) * 3), check=False)
    inv1 = matrix_inverse(g.e1)
    shear = Jet2(g.base, np.eye(n, dtype=int).astype(object), _ein("ba,aij->bij", inv1, g.e2), check=False)
    return linear, shear


def to_derivatives(jet):
    """Partial derivatives of the representative at 0: ``k!`` times each coefficient."""
    return [np.vectorize(lambda v, k=k: v * factorial(k), otypes=[object])(t) for k, t in enumerate(jet.tensors())]


def from_derivatives(base, *derivs):
    """Build a Jet2/Jet3 from derivative tensors (first, second[, third])."""
    coeffs = [np.vectorize(lambda v, k=k: as_rational(v) * Fraction(1, factorial(k)), otypes=[object])(np.asarray(d, dtype=object))
              for k, d in enumerate(derivs, start=1)]
    if len(coeffs) == 2:
        return Jet2(base, *coeffs)
    return Jet3(base, *coeffs)


def random_jet(rng, n, order=2, *, bound=5, group=True):
    """Random rational jet with invertible first-order part.

    ``rng`` is a :class:`numpy.random.Generator`.
    """

    def rat(shape):
        num = rng.integers(-bound, bound + 1, size=shape)
        den = rng.integers(1, bound + 1, size=shape)
        out = np.empty(shape, dtype=object)
        for idx in np.ndindex(*shape):
            out[idx] = mpq(int(num[idx]), int(den[idx]))
        return out

    while True:
        e1 = rat((n, n))
        try:
            matrix_inverse(e1)
        except JetError:
            continue
        break
    base = _zeros((n,)) if group else rat((n,))
    e2 = symmetrize(rat((n,) * 3))
    if order == 2:
        return Jet2(base, e1, e2)
    return Jet3(base, e1, e2, symmetrize(rat((n,) * 4)))


def jet_to_json(jet):
    """Plain-dict form with rationals rendered as ``"p/q"`` strings."""
    def enc(t):
        return np.vectorize(str, otypes=[object])(t).tolist()

    out = {"dim": jet.dim, "order": jet.order, "base": enc(jet.base), "e1": enc(jet.e1), "e2": enc(jet.e2)}
    if jet.order == 3:
        out["e3"] = enc(jet.e3)
    return out


def jet_from_json(data):
    try:
        n = int(data["dim"])
        order = int(data.get("order", 3 if "e3" in data else 2))
        base = np.asarray(data["base"], dtype=object).reshape((n,))
        e1 = np.asarray(data["e1"], dtype=object).reshape((n, n))
        e2 = np.asarray(data["e2"], dtype=object).reshape((n,) * 3)
        if order == 2:
            return Jet2(base, e1, e2)
        if order == 3:
            e3 = np.asarray(data["e3"], dtype=object).reshape((n,) * 4)
            return Jet3(base, e1, e2, e3)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, JetError):
            raise
        raise JetError(f"malformed jet: {exc}") from exc
    raise JetError(f"unsupported jet order {order}")
