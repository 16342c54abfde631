"""Truncated multivariate polynomials and polynomial maps.

This is the brute-force side of every jet computation in the package:
germs are replaced by their polynomial representatives, substituted into
each other term by term and truncated.  Coefficients may be any ring
elements supporting ``+``, ``-`` and ``*`` (Fractions, symbolic
expressions, dual numbers); products keep their left-to-right order.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from itertools import product
from math import factorial

import numpy as np

__all__ = [
    "TruncatedPoly",
    "PolyMap",
    "multinomial",
    "poly_from_tensors",
    "tensors_from_poly",
    "substitute",
]


def _is_zero(c):
    return c == 0


def multinomial(exponents):
    """Number of index tuples whose multiset of indices has these exponents."""
    total = factorial(sum(exponents))
    for k in exponents:
        total //= factorial(k)
    return total


class TruncatedPoly:
    """Polynomial in ``nvars`` variables, all terms of degree > ``degree`` dropped."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars, degree, terms=None):
        self.nvars = nvars
        self.degree = degree
        clean = {}
        for alpha, c in (terms or {}).items():
            if sum(alpha) <= degree and not _is_zero(c):
                clean[tuple(alpha)] = c
        self.terms = clean

    @classmethod
    def constant(cls, nvars, degree, c):
        return cls(nvars, degree, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, degree, i, one=1):
        alpha = [0] * nvars
        alpha[i] = 1
        return cls(nvars, degree, {tuple(alpha): one})

    def coefficient(self, alpha):
        return self.terms.get(tuple(alpha), 0)

    def __add__(self, other):
        out = dict(self.terms)
        for alpha, c in other.terms.items():
            out[alpha] = out[alpha] + c if alpha in out else c
        return TruncatedPoly(self.nvars, self.degree, out)

    def __neg__(self):
        return TruncatedPoly(self.nvars, self.degree, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedPoly):
            return TruncatedPoly(self.nvars, self.degree, {a: c * other for a, c in self.terms.items()})
        out = defaultdict(int)
        for a1, c1 in self.terms.items():
            d1 = sum(a1)
            for a2, c2 in other.terms.items():
                if d1 + sum(a2) > self.degree:
                    continue
                alpha = tuple(i + j for i, j in zip(a1, a2))
                out[alpha] = out[alpha] + c1 * c2
        return TruncatedPoly(self.nvars, self.degree, out)

    def scale_left(self, c):
        """Multiply every coefficient by ``c`` from the left."""
        return TruncatedPoly(self.nvars, self.degree, {a: c * v for a, v in self.terms.items()})

    def diff(self, i):
        out = {}
        for alpha, c in self.terms.items():
            if alpha[i]:
                beta = list(alpha)
                beta[i] -= 1
                out[tuple(beta)] = c * alpha[i]
        return TruncatedPoly(self.nvars, self.degree, out)

    def truncate(self, degree):
        return TruncatedPoly(self.nvars, degree, self.terms)

    def __eq__(self, other):
        if not isinstance(other, TruncatedPoly):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(_is_zero(self.coefficient(k) - other.coefficient(k)) for k in keys)

    def __repr__(self):
        return f"TruncatedPoly({self.terms!r})"


class PolyMap:
    """A tuple of truncated polynomials: the components f^mu(u)."""

    __slots__ = ("components",)

    def __init__(self, components):
        self.components = tuple(components)

    @property
    def nvars(self):
        return self.components[0].nvars

    @property
    def degree(self):
        return self.components[0].degree

    def __len__(self):
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __add__(self, other):
        return PolyMap(a + b for a, b in zip(self.components, other.components))

    def __sub__(self, other):
        return PolyMap(a - b for a, b in zip(self.components, other.components))

    def __neg__(self):
        return PolyMap(-a for a in self.components)

    def __eq__(self, other):
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.components == other.components

    @classmethod
    def identity(cls, n, degree):
        return cls(TruncatedPoly.variable(n, degree, i) for i in range(n))

    def truncate(self, degree):
        return PolyMap(p.truncate(degree) for p in self.components)

    def lie_bracket(self, other):
        """Lie bracket of vector fields, ``[X,Y]^a = X^b d_b Y^a - Y^b d_b X^a``."""
        n = len(self)
        out = []
        for a in range(n):
            acc = TruncatedPoly(self.nvars, self.degree)
            for b in range(n):
                acc = acc + self[b] * other[a].diff(b) - other[b] * self[a].diff(b)
            out.append(acc)
        return PolyMap(out)


def substitute(outer, inner):
    """Brute-force composition ``outer(inner(u))``.

    ``inner`` may have nonzero constant terms; coefficients of ``outer``
    stay on the left of every product.
    """
    n = inner.nvars
    degree = min(outer.degree, inner.degree)
    inner = inner.truncate(degree)
    one = TruncatedPoly.constant(n, degree, 1)
    # powers[a][k] = inner[a] ** k
    top = max((max(alpha) for p in outer.components for alpha in p.terms), default=0)
    powers = []
    for a in range(len(inner)):
        row = [one]
        for _ in range(top):
            row.append(row[-1] * inner[a])
        powers.append(row)
    out = []
    for p in outer.components:
        acc = TruncatedPoly(n, degree)
        for alpha, c in p.terms.items():
            term = one
            for a, k in enumerate(alpha):
                if k:
                    term = term * powers[a][k]
            acc = acc + term.scale_left(c)
        out.append(acc)
    return PolyMap(out)


def poly_from_tensors(tensors, degree=None):
    """Polynomial map from symmetric coefficient tensors.

    ``tensors[k]`` has shape ``(n,) + (n,) * k`` and holds the coefficient
    of ``u^{a_1} ... u^{a_k}`` in the raw (unnormalised) sum.
    """
    n = tensors[0].shape[0]
    degree = len(tensors) - 1 if degree is None else degree
    comps = []
    for mu in range(n):
        terms = defaultdict(int)
        for k, t in enumerate(tensors):
            for idx in product(range(n), repeat=k):
                c = t[(mu,) + idx]
                if _is_zero(c):
                    continue
                alpha = [0] * n
                for i in idx:
                    alpha[i] += 1
                alpha = tuple(alpha)
                terms[alpha] = terms[alpha] + c
        comps.append(TruncatedPoly(n, degree, terms))
    return PolyMap(comps)


def tensors_from_poly(pmap, order):
    """Inverse of :func:`poly_from_tensors`; returns symmetric tensors up to ``order``."""
    n = len(pmap)
    out = []
    for k in range(order + 1):
        t = np.empty((n,) + (n,) * k, dtype=object)
        for mu in range(n):
            for idx in product(range(n), repeat=k):
                alpha = [0] * n
                for i in idx:
                    alpha[i] += 1
                c = pmap[mu].coefficient(alpha)
                t[(mu,) + idx] = c * Fraction(1, multinomial(alpha)) if not _is_zero(c) else Fraction(0)
        out.append(t)
    return out
