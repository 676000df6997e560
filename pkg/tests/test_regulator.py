from fractions import Fraction

import pytest

from brauerrel.classify import build_relation
from brauerrel.errors import ShapeError
from brauerrel.regulator import (
    has_critical_subquotient,
    has_nonzero_ordl,
    ord_l_functional,
    regulator_constant_trivial,
)
from brauerrel.relations import kernel_lattice
from brauerrel import parse_group_spec


def test_f20_regulator(table_cache):
    t = table_cache("F20")
    theta = build_relation("g20_prime_power", t)
    rv = regulator_constant_trivial(theta)
    assert rv.value == Fraction(1, 5)
    assert str(rv) == "1/5"
    assert rv.ord(5) == -1
    assert rv.ord(2) == 0


def test_cpcp_regulator(table_cache):
    rv = regulator_constant_trivial(build_relation("cpcp", table_cache("C2xC2")))
    assert rv.value == Fraction(1, 2)
    rv3 = regulator_constant_trivial(build_relation("cpcp", table_cache("C3xC3")))
    assert rv3.value == Fraction(1, 9)  # p^(1-p)


def test_serre_relation_regulator(table_cache):
    rv = regulator_constant_trivial(build_relation("serre", table_cache("A4")))
    assert rv.value == Fraction(1, 2)


def test_dihedral_relation_regulator_is_unit(table_cache):
    rv = regulator_constant_trivial(build_relation("dihedral", table_cache("D8")))
    assert rv.value == 1
    assert rv.ord(2) == 0


def test_zero_relation_regulator_is_one(table_cache):
    t = table_cache("D6")
    rv = regulator_constant_trivial(t.element({}))
    assert rv.value == 1


def test_rejects_non_relation(table_cache):
    with pytest.raises(ShapeError):
        regulator_constant_trivial(table_cache("D6").one())


def test_multiplicativity(table_cache):
    t = table_cache("F20")
    a = regulator_constant_trivial(build_relation("g20_prime_power", t))
    prod = a * a
    assert prod.value == Fraction(1, 25)
    assert prod.ord(5) == -2


def test_ord_functional_on_kernel_basis(table_cache):
    K = kernel_lattice(table_cache("F20"))
    assert ord_l_functional(K, 5) == [-3, -1]
    assert ord_l_functional(K, 2) == [0, 0]


@pytest.mark.parametrize("spec", ["S4", "D6", "F20", "Q8", "A4", "D12", "Heis3"])
@pytest.mark.parametrize("l", [2, 3, 5])
def test_nonzero_ordl_iff_critical_subquotient(spec, l):
    G = parse_group_spec(spec)
    assert has_nonzero_ordl(G, l) == has_critical_subquotient(G, l)


def test_criterion_values_spot_checks():
    assert has_nonzero_ordl(parse_group_spec("S4"), 2)
    assert has_nonzero_ordl(parse_group_spec("S4"), 3)
    assert not has_nonzero_ordl(parse_group_spec("D6"), 2)
    assert has_nonzero_ordl(parse_group_spec("D6"), 3)
    assert has_nonzero_ordl(parse_group_spec("F20"), 5)
    assert not has_nonzero_ordl(parse_group_spec("F20"), 2)
