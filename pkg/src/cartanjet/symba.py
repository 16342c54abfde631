"""A small free bigraded-commutative algebra with exact coefficients.

Generators carry a form degree and a ghost degree; their parity is the
total degree mod 2.  Odd generators anticommute and square to zero, even
ones commute and, when declared invertible, may carry negative
exponents.  Monomials are stored with generators in a fixed total order,
so equality of expressions is equality of canonical term dictionaries.

Derivations are given by their values on generators and extended with
the graded Leibniz rule ``D(ab) = D(a) b + (-1)^{|D||a|} a D(b)``.
Generators may belong to a jet tower ``f, f', f'', ...``: the tower is
extended on demand by :meth:`Generator.prime`.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

__all__ = [
    "Generator",
    "Expr",
    "Derivation",
    "UndefinedImage",
    "var",
    "tower",
    "compose_check",
    "graded_commutator",
]


class UndefinedImage(KeyError):
    """A derivation was applied to a generator it has no value for."""


@dataclass(frozen=True, eq=False)
class Generator:
    name: str
    form_degree: int = 0
    ghost_degree: int = 0
    jet_order: int = 0
    invertible: bool = False
    tower: bool = False
    _key: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.invertible and self.parity:
            raise ValueError(f"odd generator {self.name} cannot be invertible")
        object.__setattr__(
            self,
            "_key",
            (self.parity, self.name, self.jet_order, self.form_degree, self.ghost_degree, self.invertible),
        )

    @property
    def parity(self):
        return (self.form_degree + self.ghost_degree) % 2

    @property
    def bidegree(self):
        return (self.form_degree, self.ghost_degree)

    def prime(self, times=1):
        """Next generator(s) up the jet tower."""
        if not self.tower:
            raise ValueError(f"{self.name} has no jet tower")
        return Generator(self.name, self.form_degree, self.ghost_degree, self.jet_order + times, tower=True)

    def __eq__(self, other):
        return isinstance(other, Generator) and self._key == other._key

    def __lt__(self, other):
        return self._key < other._key

    def __hash__(self):
        return hash(self._key)

    def __str__(self):
        if self.jet_order <= 3:
            return self.name + "'" * self.jet_order
        return f"{self.name}^({self.jet_order})"


def tower(name, form_degree=0, ghost_degree=0, invertible=False):
    """Order-zero member of a jet tower ``f, f', f'', ...``."""
    return Generator(name, form_degree, ghost_degree, 0, invertible, tower=True)


def _mono_parity(mono):
    return sum(g.parity * k for g, k in mono) % 2


def _mono_bidegree(mono):
    f = sum(g.form_degree * k for g, k in mono)
    h = sum(g.ghost_degree * k for g, k in mono)
    return (f, h)


def _mono_mul(m1, m2):
    """Product of canonical monomials: ``(sign, monomial)`` or ``None`` if zero."""
    if not m1:
        return 1, m2
    if not m2:
        return 1, m1
    odd_after = [0] * (len(m1) + 1)
    for i in range(len(m1) - 1, -1, -1):
        odd_after[i] = odd_after[i + 1] + (m1[i][0].parity and 1)
    out = []
    sign = 1
    i = j = 0
    while i < len(m1) and j < len(m2):
        g1, k1 = m1[i]
        g2, k2 = m2[j]
        if g1._key < g2._key:
            out.append(m1[i])
            i += 1
        elif g2._key < g1._key:
            if g2.parity and odd_after[i] % 2:
                sign = -sign
            out.append(m2[j])
            j += 1
        else:
            if g1.parity:
                return None
            k = k1 + k2
            if k:
                out.append((g1, k))
            i += 1
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return sign, tuple(out)


_MPQ = type(mpq())
SCALARS = (int, Fraction, _MPQ)


def _coerce_scalar(c):
    if isinstance(c, Fraction):
        return c
    if isinstance(c, _MPQ):
        return Fraction(int(c.numerator), int(c.denominator))
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class Expr:
    """Homogeneous element of the algebra: ``{monomial: Fraction}``."""

    __slots__ = ("terms", "_bidegree")

    def __init__(self, terms=None):
        clean = {}
        for mono, c in (terms or {}).items():
            if c != 0:
                clean[mono] = c
        self.terms = clean
        self._bidegree = None
        for mono in clean:
            bd = _mono_bidegree(mono)
            if self._bidegree is None:
                self._bidegree = bd
            elif bd != self._bidegree:
                raise ValueError(f"inhomogeneous expression: bidegrees {self._bidegree} and {bd}")

    @classmethod
    def const(cls, c):
        return cls({(): _coerce_scalar(c)})

    @classmethod
    def of(cls, g, power=1):
        if power < 0 and not g.invertible:
            raise ValueError(f"{g} is not invertible")
        if g.parity and power > 1:
            return cls()
        if power == 0:
            return cls.const(1)
        return cls({((g, power),): Fraction(1)})

    @staticmethod
    def accepts(v):
        return isinstance(v, (Expr, Generator) + SCALARS)

    @staticmethod
    def coerce(v):
        if isinstance(v, Expr):
            return v
        if isinstance(v, Generator):
            return Expr.of(v)
        return Expr.const(v)

    @property
    def bidegree(self):
        """``(form degree, ghost degree)``, or ``None`` for zero."""
        return self._bidegree

    @property
    def parity(self):
        bd = self._bidegree
        return 0 if bd is None else sum(bd) % 2

    def is_zero(self):
        return not self.terms

    def generators(self):
        return sorted({g for mono in self.terms for g, _ in mono})

    def __add__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        other = Expr.coerce(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return Expr(out)

    __radd__ = __add__

    def __neg__(self):
        return Expr({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        return self + (-Expr.coerce(other))

    def __rsub__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        return Expr.coerce(other) - self

    def __mul__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        if isinstance(other, SCALARS):
            other = _coerce_scalar(other)
            return Expr({m: c * other for m, c in self.terms.items()})
        other = Expr.coerce(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = _mono_mul(m1, m2)
                if prod is None:
                    continue
                sign, mono = prod
                out[mono] = out.get(mono, 0) + sign * c1 * c2
        return Expr(out)

    def __rmul__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        if isinstance(other, SCALARS):
            return self * other
        return Expr.coerce(other) * self

    def inverse(self):
        """Inverse of a single term built from invertible generators."""
        if len(self.terms) != 1:
            raise ValueError(f"cannot invert {self}")
        ((mono, c),) = self.terms.items()
        if not all(g.invertible for g, _ in mono):
            raise ValueError(f"cannot invert {self}")
        return Expr({tuple((g, -k) for g, k in mono): 1 / c})

    def __truediv__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        if isinstance(other, SCALARS):
            other = _coerce_scalar(other)
            return Expr({m: c / other for m, c in self.terms.items()})
        return self * Expr.coerce(other).inverse()

    def __rtruediv__(self, other):
        if not Expr.accepts(other):
            return NotImplemented
        return Expr.coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Expr.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Generator)):
            other = Expr.coerce(other)
        if not isinstance(other, Expr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def subs(self, mapping):
        """Algebra homomorphism sending generators to expressions.

        Images must have the parity of the generator they replace;
        generators with negative exponents need invertible images.
        """
        mapping = {g: Expr.coerce(v) for g, v in mapping.items()}
        out = Expr()
        for mono, c in self.terms.items():
            term = Expr.const(c)
            for g, k in mono:
                if g in mapping:
                    img = mapping[g]
                    term = term * (img ** k)
                else:
                    term = term * Expr.of(g, k)
            out = out + term
        return out

    def right_factor(self, g):
        """The expression ``a`` with ``a * g == self`` for an odd generator ``g``."""
        if not g.parity:
            raise ValueError("right_factor needs an odd generator")
        out = {}
        for mono, c in self.terms.items():
            idx = next((i for i, (h, _) in enumerate(mono) if h == g), None)
            if idx is None:
                raise ValueError(f"term {mono} does not contain {g}")
            rest = mono[:idx] + mono[idx + 1:]
            # moving g to the far right passes the odd factors after it
            after = _mono_parity(mono[idx + 1:])
            out[rest] = out.get(rest, 0) + (-c if after else c)
        return Expr(out)

    def sort_key(self):
        return tuple(sorted((_mono_key(m), c) for m, c in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_key):
            c = self.terms[mono]
            body = "*".join(str(g) if k == 1 else f"{g}^{k}" for g, k in mono)
            if not body:
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        text = " + ".join(parts)
        return text.replace("+ -", "- ")

    def __repr__(self):
        return f"Expr({self})"


def _mono_key(mono):
    return tuple((g._key, k) for g, k in mono)


def var(*gens):
    """Expressions for generators: ``x, y = var(gx, gy)``."""
    out = tuple(Expr.of(g) for g in gens)
    return out[0] if len(out) == 1 else out


class Derivation:
    """Graded derivation of bidegree ``shift`` defined on generators.

    ``images`` maps generators to their values; ``rule`` is consulted for
    generators missing from ``images`` (jet towers) and may return
    ``None`` for "undefined".
    """

    def __init__(self, name, shift, images=None, rule=None):
        self.name = name
        self.shift = tuple(shift)
        self._images = {}
        self._rule = rule
        self._lock = threading.Lock()
        for g, v in (images or {}).items():
            self._images[g] = self._checked(g, Expr.coerce(v))

    @property
    def parity(self):
        return sum(self.shift) % 2

    def image(self, g):
        img = self._images.get(g)
        if img is not None:
            return img
        if self._rule is None:
            raise UndefinedImage(f"{self.name} undefined on {g}")
        img = self._rule(g)
        if img is None:
            raise UndefinedImage(f"{self.name} undefined on {g}")
        img = self._checked(g, Expr.coerce(img))
        with self._lock:
            self._images.setdefault(g, img)
        return img

    def _checked(self, g, img):
        expected = (g.form_degree + self.shift[0], g.ghost_degree + self.shift[1])
        if img.bidegree is not None and img.bidegree != expected:
            raise ValueError(f"{self.name}({g}) has bidegree {img.bidegree}, expected {expected}")
        return img

    def apply(self, expr):
        expr = Expr.coerce(expr)
        out = Expr()
        for mono, c in expr.terms.items():
            prefix_parity = 0
            for i, (g, k) in enumerate(mono):
                dg = self.image(g)
                if not dg.is_zero():
                    piece = Expr({mono[:i]: c}) if i else Expr.const(c)
                    if k != 1:
                        piece = piece * Expr.of(g, k - 1) * k
                    piece = piece * dg * Expr({mono[i + 1:]: Fraction(1)})
                    if self.parity and prefix_parity:
                        piece = -piece
                    out = out + piece
                prefix_parity = (prefix_parity + g.parity * k) % 2
        return out

    __call__ = apply

    def __repr__(self):
        return f"Derivation({self.name}, shift={self.shift})"


def graded_commutator(d1, d2, expr):
    """``[D1, D2] a = D1 D2 a - (-1)^{|D1||D2|} D2 D1 a``."""
    if d1.parity and d2.parity:
        return d1(d2(expr)) + d2(d1(expr))
    return d1(d2(expr)) - d2(d1(expr))


def compose_check(d1, d2, basis, *, prolong=None, order=0):
    """Non-vanishing values of ``[D1, D2]`` on ``basis`` and its prolongations.

    ``prolong`` (typically the total x-derivative) generates the extra
    elements ``prolong^k(b)`` for ``k <= order``.  Since the graded
    commutator is itself a derivation, an empty result on all generators
    means it vanishes identically.
    """
    failures = []
    for b in basis:
        b = Expr.coerce(b)
        current = b
        for k in range(order + 1):
            residual = graded_commutator(d1, d2, current)
            if not residual.is_zero():
                failures.append((current, residual))
            if prolong is None:
                break
            current = prolong(current)
    return failures
