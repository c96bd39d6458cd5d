from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import Q
from kleinian.cyclo import get_field
from kleinian.invariants import expand_xyz, invariant_triple
from kleinian.poly import Poly
from kleinian.resolution.profile import EXCEPTIONAL, OPEN, DivisorProfile
from kleinian.resolution.type_a import (
    ChartMap,
    NotInvariantError,
    analyze_A,
    component_ids,
    divisor_profile_A,
    monomial_to_chart,
    valuation_A,
)
from kleinian.resolution.type_d import (
    DegenerateParameter,
    analyze_D,
    c_from_point,
    degenerate_check,
    divisor_profile_D,
    f_xcy,
    rho_intersection_point,
)
from kleinian.resolution.type_e import (
    branch_data,
    divisor_profile_E,
    edf_multiplicities,
    local_model_valuations,
)


def monomial(a, b, field=Q):
    return Poly.monomial(field, (a, b))


def toric_oracle(a, b, r):
    """Multiplicities of z1^a z2^b solved from (div f).l_j = 0 with the two boundary values."""
    nu = sympy.symbols(f"nu1:{r + 1}")
    full = [sympy.Integer(a), *nu, sympy.Integer(b)]
    eqs = [full[j - 1] - 2 * full[j] + full[j + 1] for j in range(1, r + 1)]
    sol = sympy.solve(eqs, nu, dict=True)[0]
    return [a] + [sol[v] for v in nu] + [b]


# -- A ---------------------------------------------------------------------------


@pytest.mark.parametrize("r", range(2, 11))
def test_A_profiles_of_the_invariants(r):
    T = invariant_triple("A", r)
    ids = component_ids(r)
    x = divisor_profile_A(T.X, r).multiplicities()
    y = divisor_profile_A(T.Y, r).multiplicities()
    z = divisor_profile_A(T.Z, r).multiplicities()
    assert [x[i] for i in ids] == [1] * (r + 2)
    assert [y[i] for i in ids] == list(range(r + 1, -1, -1))
    assert [z[i] for i in ids] == list(range(0, r + 2))


@pytest.mark.parametrize("r", [2, 3, 5, 8])
@settings(max_examples=25)
@given(a=st.integers(0, 12), t=st.integers(0, 4))
def test_A_valuations_match_the_toric_oracle(r, a, t):
    b = (a % (r + 1)) + (r + 1) * t
    vals = [valuation_A(monomial(a, b), r, c) for c in component_ids(r)]
    assert vals == toric_oracle(a, b, r)


@pytest.mark.parametrize("r", [2, 4, 7, 10])
@settings(max_examples=100)
@given(data=st.data())
def test_A_valuation_is_additive(r, data):
    n = r + 1

    def draw():
        a = data.draw(st.integers(0, 3 * n))
        return a, a % n + n * data.draw(st.integers(0, 3))

    (a, b), (c, d) = draw(), draw()
    for comp in component_ids(r):
        lhs = valuation_A(monomial(a + c, b + d), r, comp)
        assert lhs == valuation_A(monomial(a, b), r, comp) + valuation_A(monomial(c, d), r, comp)


@pytest.mark.parametrize("r, k", [(3, 0), (3, 2), (6, 4), (10, 10)])
def test_chart_maps_are_inverse(r, k):
    cm = ChartMap(r, k)
    (p, q), (s, t) = cm.matrix
    # u, v span the invariant sublattice, of index r + 1
    assert p * t - q * s == r + 1
    for a in range(0, 9):
        for b in range(a % (r + 1), 20, r + 1):
            assert cm.from_chart(*cm.to_chart(a, b)) == (a, b)


def test_non_invariant_monomial_rejected():
    with pytest.raises(NotInvariantError):
        monomial_to_chart(1, 0, 3, 1)
    with pytest.raises(ValueError):
        monomial_to_chart(1, 1, 3, 5)


def test_A_residual_contacts():
    T = invariant_triple("A", 3)
    prof = divisor_profile_A(expand_xyz("Y+Z", T), 3)
    assert prof.summary() == "c0:0 l1:1 l2:2 l3:1 c4:0 res:1"
    assert prof.intersection("res", "l2") == 2
    assert prof.is_principal()
    an = analyze_A(expand_xyz("X+Y", T), 3)
    assert an.contacts == {1: 0, 2: 0, 3: 1}


# -- D ---------------------------------------------------------------------------


def test_D4_profile():
    prof = divisor_profile_D(2, 4)
    assert prof.multiplicities() == {"d1": 1, "d2": 2, "e1": 1, "e2": 1, "c": 0, "rho": 1}
    assert sorted(prof.neighbors("d2")) == ["d1", "e1", "e2", "rho"]


@pytest.mark.parametrize("r", range(5, 9))
@pytest.mark.parametrize("c", [Fraction(2), Fraction(-1, 3), Fraction(1), Fraction(-1)])
def test_Dr_profile(r, c):
    prof = divisor_profile_D(c, r)
    m = prof.multiplicities()
    assert [m[f"d{j}"] for j in range(1, r - 1)] == [1] + [2] * (r - 3)
    assert (m["e1"], m["e2"], m["rho"]) == (1, 1, 1)
    assert prof.neighbors("rho") == {"d2": 1}
    assert sorted(prof.neighbors(f"d{r - 2}")) == sorted([f"d{r - 3}", "e1", "e2"])
    assert prof.is_principal()


@pytest.mark.parametrize("r, c, ok", [
    (4, 0, False), (4, 1, False), (4, -1, False), (4, 2, True),
    (5, 0, False), (5, 1, True), (5, -1, True), (8, 0, False),
])
def test_degenerate_parameters(r, c, ok):
    assert bool(degenerate_check(c, r)) is ok
    if not ok:
        with pytest.raises(DegenerateParameter):
            divisor_profile_D(c, r)


@pytest.mark.parametrize("r", [4, 5, 6, 8])
def test_rho_point_recovers_c(r):
    seen = {}
    for c in [Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-5, 3), Fraction(7)]:
        pt = rho_intersection_point(c, r)
        assert c_from_point(pt, r) == c
        seen[pt] = c
    assert len(seen) == 5


def test_rho_point_frozen():
    assert rho_intersection_point(Fraction(3), 6) == Fraction(-3, 2)
    assert rho_intersection_point(Fraction(3), 4) == Fraction(-2, 3)


def test_cyclotomic_c():
    i = get_field(4).zeta()
    prof = divisor_profile_D(i + 2, 6)
    assert prof.multiplicity("d3") == 2
    assert c_from_point(rho_intersection_point(i + 2, 6), 6) == get_field(8).embed(i + 2)


def test_D_cover_multiset():
    an = analyze_D(f_xcy(Fraction(2), 5), 5)
    cover = an.cover_multiset()
    assert [cover[f"l{j}"] for j in range(1, 6)] == [1, 2, 2, 2, 1]
    assert (cover["e~1"], cover["e~2"]) == (2, 2)
    assert not an.issues


# -- E ---------------------------------------------------------------------------

E_PROFILES = {
    6: "e:3 l1.1:2 l1.2:1 l2.1:2 l2.2:1 linf.1:2 d:1",
    7: "e:4 l1.1:3 l1.2:2 l1.3:1 l2.1:2 linf.1:3 linf.2:2 d:1",
    8: "e:6 l1.1:4 l1.2:2 l2.1:3 linf.1:5 linf.2:4 linf.3:3 linf.4:2 d:1",
}


@pytest.mark.parametrize("r, indices, counts, m", [
    (6, (3, 3, 2), (4, 4, 6), 3),
    (7, (4, 2, 3), (6, 12, 8), 4),
    (8, (3, 2, 5), (20, 30, 12), 6),
])
def test_branch_data(r, indices, counts, m):
    bd = branch_data(r)
    assert bd.indices == indices
    assert bd.fiber_counts == counts
    assert bd.m == m == bd.b_inf + 1
    # Riemann-Hurwitz for P^1 -> P^1 of degree |G/+-1| = 12, 24, 60
    n = {6: 12, 7: 24, 8: 60}[r]
    assert sum(1 - Fraction(1, b) for b in indices) == 2 - Fraction(2, n)


@pytest.mark.parametrize("r", [6, 7, 8])
def test_E_profiles(r):
    prof = divisor_profile_E(r)
    assert prof.summary() == E_PROFILES[r]
    assert prof.is_principal()
    last = f"linf.{branch_data(r).b_inf - 1}"
    assert prof.neighbors("d") == {last: 1}


@pytest.mark.parametrize("r", [6, 7, 8])
def test_E_closed_forms_and_local_models_agree(r):
    closed = edf_multiplicities(r)
    assert local_model_valuations(r) == closed
    prof = divisor_profile_E(r).multiplicities()
    assert all(prof[k] == v for k, v in closed.items())


@pytest.mark.parametrize("r", [6, 8])
def test_E_profile_ignores_units(r):
    T = invariant_triple("E", r, get_field({6: 24, 8: 5}[r]))
    P = expand_xyz("(3+Y)*X", T)
    assert divisor_profile_E(r, P).summary() == E_PROFILES[r]


# -- profile object ----------------------------------------------------------------


def test_profile_support_and_coalescing():
    p = DivisorProfile()
    p.add("a", EXCEPTIONAL, 2)
    p.add("b", OPEN, 1)
    p.add("c", OPEN, 1)
    p.add("z", OPEN, 0)
    p.connect("a", "b")
    p.connect("a", "c")
    p.connect("a", "z")
    s = p.support()
    assert s.ids() == ["a", "b", "c"]
    q = p.coalesce_open("oplus")
    assert q.merged["oplus"] == ["b", "c"]
    assert q.intersection("a", "oplus") == 2
    assert p.principal_defects() == {"a": -2}


def test_profile_json_schema():
    d = divisor_profile_D(2, 4).to_dict()
    assert set(d) == {"components", "adjacency", "diagram_match"}
    assert all(set(c) == {"id", "kind", "multiplicity"} for c in d["components"])
    assert all(len(e) == 3 for e in d["adjacency"])
