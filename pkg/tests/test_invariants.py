import random
from fractions import Fraction

import pytest
import sympy

from conftest import ALL_GROUPS, group
from kleinian.cyclo import get_field
from kleinian.expr import ExpressionError, parse_number, parse_polynomial, required_order
from kleinian.poly import Poly
from kleinian.invariants import (
    Syzygy,
    check_syzygy,
    expand_xyz,
    expected_degrees,
    invariant_triple,
    solve_syzygy,
    verify_invariance,
)

z1, z2 = sympy.symbols("z1 z2")

# relations of the integer E invariants; frozen from the sympy computation below
E_SYZYGIES = {
    6: {(4, 0, 0): Fraction(1), (0, 3, 0): Fraction(-1, 108), (0, 0, 2): Fraction(1, 108)},
    7: {(3, 1, 0): Fraction(1), (0, 3, 0): Fraction(-108), (0, 0, 2): Fraction(-1)},
    8: {(5, 0, 0): Fraction(1), (0, 3, 0): Fraction(-1, 3061257408), (0, 0, 2): Fraction(-1, 10119859200)},
}


def sympy_invariants(r):
    f6 = z1 * z2 * (z1**4 - z2**4)
    f8 = z1**8 + 14 * z1**4 * z2**4 + z2**8
    f12 = z1**12 - 33 * z1**8 * z2**4 - 33 * z1**4 * z2**8 + z2**12
    if r == 6:
        return f6, f8, f12
    if r == 7:
        return f8, f6**2, f6 * f12
    F12 = z1 * z2 * (z1**10 + 11 * z1**5 * z2**5 - z2**10)
    F20 = sympy.hessian(F12, (z1, z2)).det()
    F30 = sympy.Matrix([[F12.diff(z1), F12.diff(z2)], [F20.diff(z1), F20.diff(z2)]]).det()
    return F12, sympy.expand(F20), sympy.expand(F30)


@pytest.mark.parametrize("kind, r", [k for k in ALL_GROUPS if k != ("E", 8)])
def test_invariance(kind, r):
    T = invariant_triple(kind, r)
    rep = verify_invariance(T, group(kind, r))
    assert rep.ok and rep.checked == group(kind, r).order
    assert T.degrees == expected_degrees(kind, r)


def test_non_invariant_detected():
    T = invariant_triple("A", 3)
    bad = type(T)("A", 3, T.X, T.Y * Poly.var(T.field, 0), T.Z, "")
    assert not verify_invariance(bad, group("A", 3)).ok


@pytest.mark.parametrize("r", range(2, 11))
def test_syzygy_A(r):
    S = solve_syzygy(invariant_triple("A", r))
    assert dict(zip(S.monomials, S.coefficients)) == {(r + 1, 0, 0): 1, (0, 1, 1): -1}


@pytest.mark.parametrize("r", range(4, 9))
def test_syzygy_D(r):
    S = solve_syzygy(invariant_triple("D", r))
    assert dict(zip(S.monomials, S.coefficients)) == {(r - 1, 0, 0): 1, (1, 2, 0): -1, (0, 0, 2): 1}
    assert str(S) == f"X^{r - 1} - X*Y^2 + Z^2 = 0"


@pytest.mark.parametrize("r", [6, 7, 8])
def test_syzygy_E_frozen(r):
    T = invariant_triple("E", r)
    S = solve_syzygy(T)
    assert dict(zip(S.monomials, S.coefficients)) == E_SYZYGIES[r]
    assert check_syzygy(T, S)


@pytest.mark.parametrize("r", [6, 7, 8])
def test_syzygy_E_sympy_oracle(r):
    X, Y, Z = sympy_invariants(r)
    rel = sum(sympy.Rational(q.numerator, q.denominator) * X**a * Y**b * Z**c for (a, b, c), q in E_SYZYGIES[r].items())
    rng = random.Random(r)
    T = invariant_triple("E", r)
    for _ in range(5):
        p = (sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5)), sympy.Rational(rng.randint(-9, 9), rng.randint(1, 5)))
        assert rel.subs({z1: p[0], z2: p[1]}) == 0
        ours = [P.evaluate([T.field(Fraction(int(v.p), int(v.q))) for v in p]).to_fraction() for P in T.as_tuple()]
        theirs = [sympy.Rational(s.subs({z1: p[0], z2: p[1]})) for s in (X, Y, Z)]
        assert [sympy.Rational(o.numerator, o.denominator) for o in ours] == theirs


def test_syzygy_string():
    S = Syzygy([(3, 0, 0), (0, 1, 1)], [Fraction(1), Fraction(-1)])
    assert str(S) == "X^3 - Y*Z = 0"


def test_expand_xyz_string_and_poly_agree():
    T = invariant_triple("D", 5)
    a = expand_xyz("(1+X)*(X+3*Y)", T)
    assert a == (T.X + 1) * (T.X + T.Y.scale(3))


def test_expand_xyz_moves_to_a_larger_field():
    T = invariant_triple("A", 2)
    P = expand_xyz("zeta(4)*X", T)
    assert P.field.order == 12


def test_expression_grammar():
    assert required_order("zeta(8)^3 + zeta(3)") == 24
    f = get_field(8)
    assert parse_number("1/2 + zeta(8)^2", f) == Fraction(1, 2) + f.zeta(8, 2)
    P = parse_polynomial("X^2 - Y*Z/3", get_field(1))
    assert len(P.terms) == 2
    for bad in ["X/Y", "zeta(0)", "import os", "X +", "foo(2)", ""]:
        with pytest.raises(ExpressionError):
            parse_polynomial(bad, get_field(1))
