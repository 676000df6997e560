from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brauerrel.intlinalg import (
    AbelianInvariants,
    content,
    hnf,
    integer_kernel,
    lattice_membership,
    quotient_invariants,
    row_rank,
    snf,
    snf_diagonal,
)


def _matmul(A, B):
    return [
        [sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A
    ]


def _det2(U):
    # determinant via fraction-free Gaussian elimination
    n = len(U)
    M = [[Fraction(x) for x in row] for row in U]
    det = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if M[r][i]), None)
        if piv is None:
            return 0
        if piv != i:
            M[i], M[piv] = M[piv], M[i]
            det = -det
        det *= M[i][i]
        for r in range(i + 1, n):
            f = M[r][i] / M[i][i]
            M[r] = [x - f * y for x, y in zip(M[r], M[i])]
    return det


def test_hnf_small_example():
    H, U = hnf([[2, 4], [1, 3]])
    assert H == [[1, 1], [0, 2]]
    assert _matmul(U, [[2, 4], [1, 3]]) == H
    assert abs(_det2(U)) == 1


def test_snf_divisibility():
    d = snf_diagonal([[2, 0], [0, 3]])
    assert d == [1, 6]
    _, inv = snf([[2, 0], [0, 3]])
    assert inv == AbelianInvariants(0, (6,))


def test_integer_kernel_sum_matrix():
    K = integer_kernel([[1], [1], [1]])
    assert len(K) == 2
    for row in K:
        assert sum(row) == 0
    assert row_rank([[1], [1], [1]]) == 1


def test_lattice_membership():
    basis = [[2, 0], [0, 3]]
    assert lattice_membership(basis, [4, 3]) == (2, 1)
    assert lattice_membership(basis, [1, 0]) is None
    assert lattice_membership(basis, [0, 0]) == (0, 0)


def test_quotient_invariants():
    inv = quotient_invariants([[1, 0], [0, 1]], [[2, 0], [0, 3]])
    assert inv == AbelianInvariants(0, (6,))
    inv = quotient_invariants([[1, 0], [0, 1]], [[2, 0]])
    assert inv == AbelianInvariants(1, (2,))
    inv = quotient_invariants([[1, 0], [0, 1]], [])
    assert inv == AbelianInvariants(2, ())


def test_abelian_invariants_str_and_validation():
    assert str(AbelianInvariants(0, ())) == "0"
    assert str(AbelianInvariants(1, ())) == "Z"
    assert str(AbelianInvariants(1, (2, 6))) == "Z x Z/2 x Z/6"
    with pytest.raises(Exception):
        AbelianInvariants(0, (3, 2))  # chain must divide


def test_content():
    assert content([4, 6, 10]) == 2
    assert content([0, 0]) == 0


_mats = st.lists(
    st.lists(st.integers(-9, 9), min_size=1, max_size=4),
    min_size=1,
    max_size=4,
).filter(lambda M: len({len(r) for r in M}) == 1)


@given(_mats)
@settings(max_examples=120, deadline=None)
def test_hnf_properties(M):
    H, U = hnf(M)
    assert _matmul(U, M) == H
    assert abs(_det2(U)) == 1
    # pivots positive, echelon shape, entries above pivots reduced
    last = -1
    for row in H:
        piv = next((j for j, v in enumerate(row) if v), None)
        if piv is None:
            continue
        assert piv > last
        assert row[piv] > 0
        last = piv


@given(_mats)
@settings(max_examples=120, deadline=None)
def test_kernel_annihilates_and_membership_roundtrip(M):
    K = integer_kernel(M)
    assert len(K) + row_rank(M) == len(M)
    for k in K:
        assert all(
            sum(a * b for a, b in zip(k, col)) == 0 for col in zip(*M)
        )
    H, _ = hnf(M)
    basis = [r for r in H if any(r)]
    if basis:
        combo = [sum(2 * r[j] - 3 * basis[-1][j] for r in basis) for j in range(len(basis[0]))]
        x = lattice_membership(basis, combo)
        assert x is not None
        recon = [
            sum(c * row[j] for c, row in zip(x, basis))
            for j in range(len(combo))
        ]
        assert recon == combo


@given(_mats)
@settings(max_examples=80, deadline=None)
def test_snf_chain(M):
    d, inv = snf(M)
    nz = [x for x in d if x]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    assert all(x > 0 for x in nz)
    assert inv.free_rank == len(M[0]) - len(nz)
