from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cartanjet import projective
from cartanjet.gradedlie import (
    GradedPiece,
    VecJet,
    adjoint,
    adjoint_paper,
    bracket_oracle,
    bracket_paper,
    grading_check,
    random_vecjet,
    vecjet_from_json,
    vecjet_to_json,
)
from cartanjet.jetcore import Jet3, compose3, identity, inverse3, line_jet, random_jet, to_derivatives

from . import oracles

F = Fraction
rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


@settings(max_examples=40, deadline=None)
@given(st.lists(rationals, min_size=3, max_size=3), st.lists(rationals, min_size=3, max_size=3))
def test_line_bracket_matches_sympy(x, y):
    got = bracket_oracle(VecJet.line(*x), VecJet.line(*y))
    want = oracles.vector_bracket_line(x, y)
    assert [F(str(c.flat[0])) for c in got.components()] == [F(str(v)) for v in want]


def test_line_structure_constants():
    # derivative components: [X,Y] = (X1 Y0 - X0 Y1, X2 Y0 - X0 Y2, X2 Y1 - X1 Y2)
    rng = np.random.default_rng(0)
    for _ in range(20):
        x, y = random_vecjet(rng, 1), random_vecjet(rng, 1)
        (x0, x1, x2), (y0, y1, y2) = ([c.flat[0] for c in v.derivatives()] for v in (x, y))
        got = [c.flat[0] for c in bracket_oracle(x, y).derivatives()]
        assert got == [x1 * y0 - x0 * y1, x2 * y0 - x0 * y2, x2 * y1 - x1 * y2]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_literal_bracket_on_derivative_components(n):
    rng = np.random.default_rng(n)
    for _ in range(20):
        x, y = random_vecjet(rng, n), random_vecjet(rng, n)
        assert bracket_paper(x, y, derivatives=True) == bracket_oracle(x, y)


def test_literal_bracket_on_raw_coefficients_differs_in_gl0():
    x = VecJet.line(1, 0, 0)
    y = VecJet.line(0, 0, 1)
    raw = bracket_paper(x, y)
    oracle = bracket_oracle(x, y)
    assert raw.comp_0[0, 0] * 2 == oracle.comp_0[0, 0] != 0


@pytest.mark.parametrize("n", [1, 2])
def test_antisymmetry(n):
    rng = np.random.default_rng(20 + n)
    for _ in range(30):
        x, y = random_vecjet(rng, n), random_vecjet(rng, n)
        assert bracket_oracle(x, y) == -bracket_oracle(y, x)
        assert bracket_oracle(x, x).is_zero()


def test_jacobi_in_dimension_one():
    rng = np.random.default_rng(5)
    for _ in range(30):
        x, y, z = (random_vecjet(rng, 1) for _ in range(3))
        b = bracket_oracle
        assert (b(x, b(y, z)) + b(y, b(z, x)) + b(z, b(x, y))).is_zero()


def test_jacobi_fails_in_dimension_two_by_truncation():
    # [gl_1, gl_1] is truncated away while its bracket with gl_-1 lands in gl_1
    a = VecJet([1, 0], np.zeros((2, 2), dtype=int), np.zeros((2, 2, 2), dtype=int))
    t = np.zeros((2, 2, 2), dtype=int)
    t[0, 1, 1] = 1
    b = VecJet(np.zeros(2, dtype=int), np.zeros((2, 2), dtype=int), t)
    t2 = np.zeros((2, 2, 2), dtype=int)
    t2[1, 0, 0] = 1
    c = VecJet(np.zeros(2, dtype=int), np.zeros((2, 2), dtype=int), t2)
    br = bracket_oracle
    assert not (br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b))).is_zero()


def test_grading_table():
    rng = np.random.default_rng(2)
    for k in (-1, 0, 1):
        for m in (-1, 0, 1):
            x = GradedPiece(k, random_vecjet(rng, 2, grades=(k,)))
            y = GradedPiece(m, random_vecjet(rng, 2, grades=(m,)))
            got = grading_check(x, y)
            if k + m in (-1, 0, 1) and (k, m) != (-1, -1):
                assert got == k + m
            else:
                assert got is None


def test_graded_piece_rejects_mixed_element():
    with pytest.raises(ValueError):
        GradedPiece(0, VecJet.line(1, 1, 0))


@pytest.mark.parametrize("n", [1, 2])
def test_adjoint_homomorphism(n):
    rng = np.random.default_rng(30 + n)
    for _ in range(6):
        g, h = random_jet(rng, n, 3), random_jet(rng, n, 3)
        x = random_vecjet(rng, n)
        assert adjoint(compose3(g, h), x) == adjoint(g, adjoint(h, x))
        assert adjoint(identity(n, 3), x) == x
        assert adjoint(inverse3(g), adjoint(g, x)) == x


def test_adjoint_line_closed_form():
    # derivative components: (e X0, X1 + e2/e X0, X2/e + e2/e^2 X1 + (e3/e^2 - e2^2/e^3) X0)
    rng = np.random.default_rng(4)
    for _ in range(10):
        g = random_jet(rng, 1, 3)
        x = random_vecjet(rng, 1)
        _, e, e2, e3 = (t.flat[0] for t in to_derivatives(g))
        x0, x1, x2 = (c.flat[0] for c in x.derivatives())
        want = [e * x0, x1 + e2 / e * x0, x2 / e + e2 / e ** 2 * x1 + (e3 / e ** 2 - e2 ** 2 / e ** 3) * x0]
        assert [c.flat[0] for c in adjoint(g, x).derivatives()] == want


@pytest.mark.parametrize("n", [1, 2])
def test_literal_adjoint_on_derivative_components(n):
    rng = np.random.default_rng(40 + n)
    for _ in range(6):
        g, x = random_jet(rng, n, 3), random_vecjet(rng, n)
        assert adjoint_paper(g, x, derivatives=True) == adjoint(g, x)


def test_literal_adjoint_on_raw_coefficients_is_off():
    g = line_jet(0, 1, 1, 0)
    x = VecJet.line(1, 0, 0)
    assert adjoint_paper(g, x) != adjoint(g, x)


def test_adjoint_respects_bracket_for_linear_elements():
    rng = np.random.default_rng(8)
    for n in (1, 2):
        for _ in range(5):
            g = random_jet(rng, n, 3)
            g = Jet3(g.base, g.e1, np.zeros((n,) * 3, dtype=int), np.zeros((n,) * 4, dtype=int))
            x, y = random_vecjet(rng, n), random_vecjet(rng, n)
            assert adjoint(g, bracket_oracle(x, y)) == bracket_oracle(adjoint(g, x), adjoint(g, y))


def test_adjoint_respects_bracket_for_mobius_elements():
    rng = np.random.default_rng(9)
    for _ in range(10):
        m = projective.Sl2Element(F(int(rng.integers(1, 5)), 3), 0, F(int(rng.integers(-4, 5)), 2))
        g = projective.mobius_jet(m, 3)
        x, y = random_vecjet(rng, 1), random_vecjet(rng, 1)
        assert adjoint(g, bracket_oracle(x, y)) == bracket_oracle(adjoint(g, x), adjoint(g, y))


def test_adjoint_bracket_fails_off_the_projective_lift():
    g = line_jet(0, 1, 0, 1)
    x, y = VecJet.line(1, 0, 0), VecJet.line(0, 1, 0)
    assert adjoint(g, bracket_oracle(x, y)) != bracket_oracle(adjoint(g, x), adjoint(g, y))


def test_vecjet_json_round_trip():
    rng = np.random.default_rng(1)
    x = random_vecjet(rng, 2)
    assert vecjet_from_json(vecjet_to_json(x)) == x


def test_adjoint_rejects_translations():
    with pytest.raises(ValueError):
        adjoint(line_jet(1, 1, 0, 0), VecJet.line(1, 0, 0))
