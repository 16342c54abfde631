from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cartanjet.jetcore import (
    Jet2,
    Jet3,
    JetError,
    compose2,
    compose3,
    from_derivatives,
    identity,
    inverse2,
    inverse3,
    jet_from_json,
    jet_to_json,
    line_jet,
    matrix_inverse,
    natural_frame,
    random_jet,
    semidirect_split,
    to_derivatives,
)

from . import oracles

F = Fraction

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)
nonzero = rationals.filter(lambda v: v != 0)


def test_compose2_worked_example():
    assert compose2(line_jet(0, 2, 3), line_jet(0, 1, 1)) == line_jet(0, 2, 5)


def test_compose3_worked_example():
    # (u + u^3) o (u + u^2) = u + u^2 + u^3 + O(u^4)
    assert compose3(line_jet(0, 1, 0, 1), line_jet(0, 1, 1, 0)) == line_jet(0, 1, 1, 1)


def test_inverse2_worked_example():
    inv = inverse2(line_jet(0, 2, 3))
    assert inv == line_jet(0, F(1, 2), F(-3, 8))
    assert compose2(line_jet(0, 2, 3), inv) == identity(1)


def test_inverse3_examples():
    assert inverse3(line_jet(0, 1, 0, 1)) == line_jet(0, 1, 0, -1)
    assert inverse3(line_jet(0, 2, 3, 0)) == line_jet(0, F(1, 2), F(-3, 8), F(9, 16))


def test_inverse_recentres_at_base_point():
    f = line_jet(5, 2, 3)
    inv = inverse2(f)
    assert inv.base[0] == 0
    assert compose2(f.recentred(), inv) == identity(1)


def test_semidirect_split():
    linear, shear = semidirect_split(line_jet(0, 2, 6))
    assert linear == line_jet(0, 2, 0)
    assert shear == line_jet(0, 1, 3)
    assert compose2(linear, shear) == line_jet(0, 2, 6)


def test_natural_frame_is_translation():
    f = natural_frame([1, 2])
    assert f.base.tolist() == [1, 2]
    assert compose2(f, identity(2)) == f


def test_errors():
    with pytest.raises(JetError):
        inverse2(line_jet(0, 0, 1))
    with pytest.raises(JetError):
        compose2(line_jet(0, 1, 0), line_jet(1, 1, 0))
    with pytest.raises(JetError):
        compose2(line_jet(0, 1, 0), identity(2))
    with pytest.raises(ValueError):
        Jet2([0, 0], np.eye(2, dtype=int), [[[0, 1], [0, 0]], [[0, 0], [0, 0]]])
    with pytest.raises(TypeError):
        line_jet(0, 0.5, 0)


def test_matrix_inverse_exact():
    m = np.array([[F(2), F(1)], [F(1), F(1)]], dtype=object)
    inv = matrix_inverse(m)
    assert (inv.dot(m) == np.eye(2, dtype=int)).all()
    with pytest.raises(JetError):
        matrix_inverse(np.array([[1, 2], [2, 4]], dtype=object))


def test_derivative_conversion_round_trip():
    f = line_jet(1, 2, 3, 4)
    d = to_derivatives(f)
    assert [t.flat[0] for t in d] == [1, 2, 6, 24]
    assert from_derivatives(d[0], *d[1:]) == f


def test_json_round_trip():
    rng = np.random.default_rng(3)
    for order in (2, 3):
        f = random_jet(rng, 2, order, group=False)
        assert jet_from_json(jet_to_json(f)) == f
    assert jet_to_json(line_jet(0, F(1, 2), F(-3, 8)))["e2"] == [[["-3/8"]]]
    with pytest.raises(JetError):
        jet_from_json({"dim": 1, "base": ["0"]})


def test_hash_and_equality_are_compatible():
    assert hash(line_jet(0, 2, 3)) == hash(line_jet(0, F(2), F(3)))
    assert line_jet(0, 2, 3) != line_jet(0, 2, 3, 0)


@pytest.mark.parametrize("n", [1, 2])
def test_compose_matches_sympy_substitution(n):
    rng = np.random.default_rng(n)
    for order, comp in ((2, compose2), (3, compose3)):
        for _ in range(4):
            f = random_jet(rng, n, order, group=False)
            g = random_jet(rng, n, order)
            polys, u = oracles.compose(f, g, order)
            assert oracles.coefficients(polys, u, order) == oracles.jet_coefficients(comp(f, g))


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals, rationals)
def test_inverse3_matches_series_reversion(e1, e2, e3):
    inv = inverse3(line_jet(0, e1, e2, e3))
    got = [t.flat[0] for t in inv.tensors()[1:]]
    assert [F(str(v)) for v in got] == [F(str(v)) for v in oracles.inverse_line(e1, e2, e3)]


@settings(max_examples=40, deadline=None)
@given(nonzero, rationals, rationals, nonzero, rationals, rationals, rationals, rationals)
def test_line_group_axioms(a1, a2, a3, b1, b2, b3, c2, c3):
    f, g, h = line_jet(0, a1, a2, a3), line_jet(0, b1, b2, b3), line_jet(0, 1, c2, c3)
    assert compose3(compose3(f, g), h) == compose3(f, compose3(g, h))
    assert compose3(f, inverse3(f)) == identity(1, 3)
    assert compose3(inverse3(f), f) == identity(1, 3)
    assert compose3(f, identity(1, 3)) == f


@pytest.mark.parametrize("n", [2, 3])
def test_group_axioms_higher_dimension(n):
    rng = np.random.default_rng(10 + n)
    for _ in range(10):
        f, g, h = (random_jet(rng, n, 3) for _ in range(3))
        assert compose3(compose3(f, g), h) == compose3(f, compose3(g, h))
        assert compose3(f, inverse3(f)) == identity(n, 3)
        assert compose2(f.truncate(), inverse2(f)) == identity(n, 2)


def test_truncation_is_a_homomorphism():
    rng = np.random.default_rng(7)
    for _ in range(10):
        f, g = random_jet(rng, 2, 3), random_jet(rng, 2, 3)
        assert compose3(f, g).truncate() == compose2(f.truncate(), g.truncate())


def test_jet3_requires_symmetric_third_order():
    e3 = np.zeros((2, 2, 2, 2), dtype=int)
    e3[0, 0, 0, 1] = 1
    with pytest.raises(ValueError):
        Jet3([0, 0], np.eye(2, dtype=int), np.zeros((2, 2, 2), dtype=int), e3)
