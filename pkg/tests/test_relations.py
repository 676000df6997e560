import pytest

from brauerrel import (
    artin_relation,
    coefficient_gcd_at_top,
    is_quasi_elementary,
    is_relation,
    kernel_lattice,
    parse_group_spec,
    quasi_elementary_primes,
    solomon_relation,
)
from brauerrel.errors import ShapeError
from brauerrel.relations import is_p_quasi_elementary


def test_kernel_rank_equals_noncyclic_classes(table_cache):
    for spec in ["D6", "S4", "Q8", "A5", "F20", "C12"]:
        t = table_cache(spec)
        K = kernel_lattice(t)
        noncyc = t.n_classes - len(t.cyclic_class_indices)
        assert K.rank == noncyc, spec


def test_s3_kernel_basis(table_cache):
    t = table_cache("D6")
    K = kernel_lattice(t)
    assert K.rank == 1
    assert K.basis_rows == [[1, -2, -1, 2]]


def test_membership(table_cache):
    t = table_cache("D6")
    K = kernel_lattice(t)
    theta = t.element({0: 2, 1: -4, 2: -2, 3: 4})
    assert K.membership(theta) == (2,)
    assert K.membership(t.one()) is None
    with pytest.raises(ShapeError):
        K.membership(table_cache("S4").one())


def test_artin_relation_s3(table_cache):
    t = table_cache("D6")
    theta = artin_relation(t, t.n_classes - 1)
    assert is_relation(theta)
    assert theta.coeffs == {0: 3, 1: -6, 2: -3, 3: 6}


def test_artin_rejects_cyclic(table_cache):
    t = table_cache("D6")
    with pytest.raises(ShapeError):
        artin_relation(t, 1)


def test_artin_relation_everywhere(table_cache):
    for spec in ["S4", "Q8", "F20"]:
        t = table_cache(spec)
        for i in range(t.n_classes):
            if t.is_cyclic[i]:
                continue
            theta = artin_relation(t, i)
            assert is_relation(theta)
            assert theta.coeff(i) == t.class_reps[i].order


def test_quasi_elementary_predicates():
    F20 = parse_group_spec("F20")
    assert quasi_elementary_primes(F20) == [2]  # not 5: C5 x| C4 is 2-QE only
    assert is_p_quasi_elementary(F20, 2)
    assert not is_p_quasi_elementary(F20, 5)
    assert quasi_elementary_primes(parse_group_spec("C20")) == [2, 5]
    assert not is_quasi_elementary(parse_group_spec("A4"))
    assert is_quasi_elementary(parse_group_spec("Q8"))
    assert is_quasi_elementary(parse_group_spec("D12"))  # C3 x| (C2xC2)


def test_solomon_relation_a5(table_cache):
    t = table_cache("A5")
    theta = solomon_relation(t)
    assert theta.coeff(t.n_classes - 1) == 1
    assert is_relation(theta)
    for i in theta.coeffs:
        if i != t.n_classes - 1:
            assert is_quasi_elementary(t.class_reps[i].as_group())
    # frozen value: G + V4 - C6 - D10
    by_order = {t.class_reps[i].order: n for i, n in theta.coeffs.items()}
    assert by_order == {60: 1, 4: 1, 6: -1, 10: -1}


def test_solomon_none_for_quasi_elementary(table_cache):
    assert solomon_relation(table_cache("F20")) is None
    assert solomon_relation(table_cache("Q8")) is None


def test_coefficient_gcd_at_top(table_cache):
    assert coefficient_gcd_at_top(kernel_lattice(table_cache("A5"))) == 1
    assert coefficient_gcd_at_top(kernel_lattice(table_cache("S4"))) == 1
    assert coefficient_gcd_at_top(kernel_lattice(table_cache("F20"))) == 2
    assert coefficient_gcd_at_top(kernel_lattice(table_cache("Q8"))) == 2
    assert coefficient_gcd_at_top(kernel_lattice(table_cache("Heis3"))) == 3


def test_kernel_elements_are_relations(table_cache):
    for spec in ["S4", "SL(2,3)", "A5"]:
        K = kernel_lattice(table_cache(spec))
        for b in K.basis:
            assert is_relation(b)
