import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import Q, bivariate, group
from kleinian.cyclo import get_field
from kleinian.poly import (
    Poly,
    UniPoly,
    binary_order,
    binary_pattern,
    binary_radical,
    hessian_det,
    jacobian_det,
    point_multiplicity,
    squarefree_decomposition,
    substitute_linear,
)

z1s, z2s = sympy.symbols("z1 z2")


def to_sympy(P):
    return sympy.expand(
        sum(sympy.Rational(c.to_fraction().numerator, c.to_fraction().denominator) * z1s**a * z2s**b for (a, b), c in P.terms.items())
    )


def from_sympy(expr):
    p = sympy.Poly(expr, z1s, z2s)
    return Poly(Q, {m: Q(Fraction(int(c.p), int(c.q))) for m, c in p.terms()})


@settings(max_examples=60)
@given(bivariate(Q), bivariate(Q))
def test_ring_operations_against_sympy(P, R):
    assert to_sympy(P * R) == sympy.expand(to_sympy(P) * to_sympy(R))
    assert to_sympy(P + R) == sympy.expand(to_sympy(P) + to_sympy(R))
    assert to_sympy(P.derivative(0)) == sympy.diff(to_sympy(P), z1s)


@settings(max_examples=60)
@given(bivariate(Q), bivariate(Q, max_degree=2, max_terms=3))
def test_division_reconstructs(P, D):
    q, r = P.divmod(D)
    assert q * D + r == P
    q2, r2 = (P * D).divmod(D)
    assert r2.is_zero() and q2 == P


def test_zero_polynomial_is_falsy():
    assert not Poly(Q, {(1, 1): 0})
    assert Poly.const(Q, 3).constant_term() == 3


def test_homogeneous_parts_and_degrees():
    z1, z2 = Poly.var(Q, 0), Poly.var(Q, 1)
    P = z1**3 + z1 * z2 + 7
    assert P.degree() == 3 and P.min_degree() == 0
    assert set(P.homogeneous_parts()) == {0, 2, 3}


def test_translate_and_point_multiplicity():
    z1, z2 = Poly.var(Q, 0), Poly.var(Q, 1)
    P = (z1 - 1) ** 2 * (z2 + 2) ** 3
    assert point_multiplicity(P, (1, -2)) == 5
    assert point_multiplicity(P, (1, 0)) == 2
    assert P.translate((1, -2)) == z1**2 * z2**3


def test_hessian_and_jacobian_against_sympy():
    rng = random.Random(3)
    for _ in range(5):
        P = Poly(Q, {(rng.randint(0, 5), rng.randint(0, 5)): Q(rng.randint(-4, 4) or 1) for _ in range(4)})
        R = Poly(Q, {(rng.randint(0, 5), rng.randint(0, 5)): Q(rng.randint(-4, 4) or 1) for _ in range(4)})
        ps, rs = to_sympy(P), to_sympy(R)
        assert to_sympy(hessian_det(P)) == sympy.expand(sympy.hessian(ps, (z1s, z2s)).det())
        assert to_sympy(jacobian_det(P, R)) == sympy.expand(
            sympy.Matrix([[ps.diff(z1s), ps.diff(z2s)], [rs.diff(z1s), rs.diff(z2s)]]).det()
        )


@pytest.mark.parametrize("kind, r", [("A", 4), ("D", 6), ("E", 6), ("E", 8)])
def test_substitution_composes_as_matrix_product(kind, r):
    G = group(kind, r)
    f = G.field
    z1, z2 = Poly.var(f, 0), Poly.var(f, 1)
    P = z1**3 * z2 + f.zeta() * z2**4 - z1 + 2
    rng = random.Random(11)
    for _ in range(10):
        g, h = rng.choice(G.elements), rng.choice(G.elements)
        assert substitute_linear(substitute_linear(P, g), h) == substitute_linear(P, g * h)


def test_yun_against_sympy():
    t = sympy.Symbol("t")
    expr = sympy.expand((t - 1) ** 3 * (t + 2) ** 2 * (t**2 + 1))
    coeffs = [int(c) for c in sympy.Poly(expr, t).all_coeffs()[::-1]]
    ours = {m: a.degree() for m, a in squarefree_decomposition(UniPoly(Q, coeffs))}
    theirs = {m: sympy.degree(fac, t) for fac, m in sympy.sqf_list(expr)[1]}
    assert ours == theirs == {1: 2, 2: 1, 3: 1}


def test_binary_forms_see_the_point_at_infinity():
    z1, z2 = Poly.var(Q, 0), Poly.var(Q, 1)
    F = z1**2 * z2**3 * (z1 - z2) ** 2
    assert binary_pattern(F) == {2: 2, 3: 1}
    rad = binary_radical(F)
    assert rad.degree() == 3
    assert binary_order(F, z1 - z2) == 2
    assert binary_order(F, z2) == 3


@settings(max_examples=30)
@given(st.integers(0, 4), st.integers(0, 4), st.integers(1, 3))
def test_binary_order_of_powers(a, b, k):
    f = get_field(4)
    z1, z2 = Poly.var(f, 0), Poly.var(f, 1)
    lin = z1 - f.zeta() * z2
    F = lin**k * z1**a * (z1 + z2) ** b
    assert binary_order(F, lin) == k
