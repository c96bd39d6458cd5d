import pytest

from conftest import ALL_GROUPS, group
from kleinian.groups import (
    ClosureError,
    build_group,
    check_relations,
    expected_order,
    identity,
    mu_variant,
    parse_label,
    projective_order,
    validate,
)

# class sizes of the binary polyhedral groups, sorted
CLASS_SIZES = {
    6: [1, 1, 4, 4, 4, 4, 6],
    7: [1, 1, 6, 6, 6, 8, 8, 12],
    8: [1, 1, 12, 12, 12, 12, 20, 20, 30],
}


@pytest.mark.parametrize("kind, r", ALL_GROUPS)
def test_orders_and_relations(kind, r):
    G = group(kind, r)
    assert G.order == expected_order(kind, r)
    assert all(check_relations(G).values())
    assert all(g.det() == 1 for g in G.elements)


@pytest.mark.parametrize("kind, r", ALL_GROUPS)
def test_classes_partition_and_count(kind, r):
    G = group(kind, r)
    flat = sorted(i for cl in G.classes for i in cl)
    assert flat == list(range(G.order))
    assert len(G.classes) == r + 1


@pytest.mark.parametrize("r", [6, 7, 8])
def test_binary_polyhedral_class_sizes(r):
    assert sorted(len(cl) for cl in group("E", r).classes) == CLASS_SIZES[r]


@pytest.mark.parametrize("kind, r", [k for k in ALL_GROUPS if k[0] != "A" or k[1] % 2])
def test_minus_identity_is_central(kind, r):
    G = group(kind, r)
    minus = -identity(G.field)
    assert minus in G.index
    assert G.index[minus] in G.center


def test_centers_of_nonabelian_groups():
    assert len(group("E", 8).center) == 2
    assert len(group("D", 6).center) == 2


def test_projective_orders():
    assert projective_order(group("E", 8)) == 60
    assert projective_order(group("E", 7)) == 24
    assert projective_order(group("E", 6)) == 12
    assert projective_order(group("A", 4)) == 5
    assert projective_order(group("A", 5)) == 3


def test_exponents():
    assert group("E", 8).exponent() == 60
    assert group("E", 6).exponent() == 12
    assert group("A", 6).exponent() == 7


def test_mu_variant_fails_its_relations():
    G = group("E", 7)
    rel = check_relations(G, mu_variant(G.field))
    assert not rel["det(mu) = 1"]
    assert not rel["mu^3 = -1"]


@pytest.mark.parametrize("bad", [("A", 0), ("D", 3), ("E", 9), ("B", 3)])
def test_invalid_parameters(bad):
    with pytest.raises(ValueError):
        validate(*bad)
    with pytest.raises(ValueError):
        build_group(*bad)


def test_label_parsing():
    assert parse_label("E8") == ("E", 8)
    assert parse_label("d 5") == ("D", 5)
    with pytest.raises(ValueError):
        parse_label("E5")


def test_closure_error_is_a_runtime_error():
    assert issubclass(ClosureError, RuntimeError)
