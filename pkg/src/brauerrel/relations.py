"""Relation lattices: K(G), Artin and Solomon relations, and the
divisibility of top coefficients.
"""

from __future__ import annotations

from math import gcd

from .burnside import BurnsideElement, SubgroupClassTable, is_relation
from .errors import InternalCheckError, ShapeError
from .groups import PermGroup, prime_factors
from .intlinalg import hnf, integer_kernel, lattice_membership


def _table_of(G) -> SubgroupClassTable:
    return G if isinstance(G, SubgroupClassTable) else SubgroupClassTable(G)


class RelationLattice:
    """K(G): all Θ with vanishing cyclic marks, as an integer lattice in B(G)."""

    def __init__(self, table: SubgroupClassTable, basis_rows: list[list[int]]):
        self.table = table
        self.basis_rows = basis_rows
        self.basis = [
            BurnsideElement(table, {i: c for i, c in enumerate(row) if c})
            for row in basis_rows
        ]

    @property
    def rank(self) -> int:
        return len(self.basis_rows)

    def membership(self, theta: BurnsideElement):
        """Coordinates of Θ in the basis, or None if Θ ∉ K(G)."""
        if theta.table is not self.table:
            raise ShapeError("element over a different table")
        return lattice_membership(self.basis_rows, theta.as_vector())


def kernel_lattice(G) -> RelationLattice:
    """Basis of K(G) = integer kernel of the cyclic-marks matrix.

    The rank must equal the number of non-cyclic subgroup classes; a
    mismatch means a bug, not a mathematical possibility.
    """
    table = _table_of(G)
    M = table.cyclic_marks_matrix
    K = integer_kernel(M)
    expected = table.n_classes - len(table.cyclic_class_indices)
    if len(K) != expected:
        raise InternalCheckError(
            f"kernel rank {len(K)} != non-cyclic class count {expected}"
        )
    return RelationLattice(table, K)


def _reduce_by_kernel(x: list[int], kernel_rows: list[list[int]]) -> list[int]:
    """Greedily shrink max-|coordinate| of x using the kernel basis."""
    x = list(x)
    changed = True
    while changed:
        changed = False
        for k in kernel_rows:
            best = max(abs(v) for v in x)
            best_t = 0
            # candidate shifts bracketing the least-squares choice
            num = sum(a * b for a, b in zip(x, k))
            den = sum(b * b for b in k)
            centre = round(num / den) if den else 0
            for t in range(centre - 2, centre + 3):
                if t == 0:
                    continue
                cand = max(abs(a - t * b) for a, b in zip(x, k))
                if cand < best:
                    best, best_t = cand, t
            if best_t:
                x = [a - best_t * b for a, b in zip(x, k)]
                changed = True
    return x


def artin_relation(G, H) -> BurnsideElement:
    """|H|·[G/H] − Σ n_C [G/C] over cyclic classes C meeting H, a relation.

    The integer solution exists by induction theory; among the solution
    coset a deterministic max-|coefficient|-reduced representative is
    returned.
    """
    table = _table_of(G)
    hidx = table.class_index(H) if not isinstance(H, int) else H
    rep = table.class_reps[hidx]
    if table.is_cyclic[hidx]:
        raise ShapeError("Artin relation requires a non-cyclic subgroup")
    cyc_cols = table.cyclic_class_indices
    # cyclic classes subconjugate to H (nonzero mark of C on G/H)
    support = [c for c in cyc_cols if table.marks[hidx][c] != 0]
    A = [[table.marks[c][j] for j in cyc_cols] for c in support]
    b = [rep.order * table.marks[hidx][j] for j in cyc_cols]
    x = lattice_membership(A, b)
    if x is None:
        raise InternalCheckError("Artin system has no integer solution")
    x = _reduce_by_kernel(list(x), integer_kernel(A))
    coeffs = {hidx: rep.order}
    for c, n in zip(support, x):
        if n:
            coeffs[c] = coeffs.get(c, 0) - n
    theta = BurnsideElement(table, coeffs)
    if not is_relation(theta):
        raise InternalCheckError("Artin output is not a relation")
    return theta


def is_p_quasi_elementary(G: PermGroup, p: int) -> bool:
    """G has a normal cyclic subgroup with p-group quotient."""
    for N in G.normal_subgroups:
        if not N.is_cyclic():
            continue
        q = G.order // N.order
        while q % p == 0:
            q //= p
        if q == 1:
            return True
    return False


def quasi_elementary_primes(G: PermGroup) -> list[int]:
    """Primes p for which G is p-quasi-elementary (all primes if cyclic)."""
    if G.is_cyclic():
        return prime_factors(G.order) or []
    return [p for p in prime_factors(G.order) if is_p_quasi_elementary(G, p)]


def is_quasi_elementary(G: PermGroup) -> bool:
    return G.is_cyclic() or bool(quasi_elementary_primes(G))


def solomon_relation(G) -> BurnsideElement | None:
    """A relation with coefficient exactly 1 at G, supported otherwise on
    proper quasi-elementary classes; None when G itself is quasi-elementary
    (the statement is then vacuous)."""
    table = _table_of(G)
    if is_quasi_elementary(table.ambient):
        return None
    top = table.n_classes - 1
    allowed = [
        i
        for i in range(table.n_classes - 1)
        if is_quasi_elementary(table.class_reps[i].as_group())
    ]
    rows = [top] + allowed
    M = [[table.marks[i][c] for c in table.cyclic_class_indices] for i in rows]
    K = integer_kernel(M)
    if not K:
        raise InternalCheckError("no relation supported on quasi-elementary classes")
    # column 0 is the G-coefficient; the HNF pivot there is the gcd
    Kh, _ = hnf(K)
    first = Kh[0]
    if first[0] != 1:
        raise InternalCheckError(
            f"minimal G-coefficient {first[0]} != 1 contradicts the induction theorem"
        )
    coeffs = {rows[j]: c for j, c in enumerate(first) if c}
    theta = BurnsideElement(table, coeffs)
    if not is_relation(theta):
        raise InternalCheckError("Solomon output is not a relation")
    return theta


def coefficient_gcd_at_top(K: RelationLattice) -> int:
    """gcd of the coefficients of [G/G] over a basis of K(G); 0 if all vanish."""
    top = K.table.n_classes - 1
    g = 0
    for theta in K.basis:
        g = gcd(g, theta.coeff(top))
    return g
