"""Exact jet calculus and symbolic BRS algebra for second-order frames.

Submodules:

* :mod:`cartanjet.jetcore` -- 2-jets and 3-jets of diffeomorphisms, composition and inversion
* :mod:`cartanjet.gradedlie` -- the graded Lie algebra of 2-jets of vector fields, bracket and Ad
* :mod:`cartanjet.symba` -- bigraded commutative algebra, derivations, jet towers
* :mod:`cartanjet.cartanconn` -- solder forms, Cartan connection, curvature, gauge transforms
* :mod:`cartanjet.projective` -- projective frames, third-jet lift, Schwarzian
* :mod:`cartanjet.brs` -- BRS operator, residual ghosts, Virasoro variation
* :mod:`cartanjet.verify` -- the verification suites behind ``cartanjet verify``
"""

from .jetcore import (
    Jet2,
    Jet3,
    JetError,
    compose2,
    compose3,
    from_derivatives,
    identity,
    inverse2,
    inverse3,
    line_jet,
    to_derivatives,
)
from .gradedlie import VecJet, adjoint, bracket_oracle
from .symba import Derivation, Expr, Generator, tower, var
from .projective import ProjFrame2, Sl2Element, embed_sl2, lift3, schwarzian

__version__ = "0.1.0"

__all__ = [
    "Jet2",
    "Jet3",
    "JetError",
    "compose2",
    "compose3",
    "inverse2",
    "inverse3",
    "identity",
    "line_jet",
    "to_derivatives",
    "from_derivatives",
    "VecJet",
    "bracket_oracle",
    "adjoint",
    "Expr",
    "Generator",
    "Derivation",
    "tower",
    "var",
    "ProjFrame2",
    "Sl2Element",
    "embed_sl2",
    "lift3",
    "schwarzian",
]
