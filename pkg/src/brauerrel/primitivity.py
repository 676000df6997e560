"""The imprimitive sublattice of K(G) and the quotient Prim(G).

A relation is imprimitive when it is a ℤ-combination of relations
induced from proper subgroups or inflated from proper quotients;
Prim(G) = K(G) modulo these.
"""

from __future__ import annotations

from .burnside import BurnsideElement, SubgroupClassTable, induct, inflate, is_relation
from .errors import ShapeError
from .intlinalg import AbelianInvariants, hnf, lattice_membership, quotient_invariants
from .relations import RelationLattice, kernel_lattice, _table_of


def imprimitive_sublattice(G) -> list[BurnsideElement]:
    """Generators of the imprimitive span: inductions of K(H) bases over all
    proper subgroup classes H, and inflations of K(G/N) bases over all
    nontrivial normal N.

    No recursion is needed: K(H) already contains everything induced up
    through intermediate subgroups, and likewise for quotients.
    """
    table = _table_of(G)
    ambient = table.ambient
    gens: list[BurnsideElement] = []
    for i, rep in enumerate(table.class_reps):
        if rep.order == ambient.order or rep.order <= 1:
            continue
        if table.is_cyclic[i]:
            continue  # cyclic subgroups have no relations to induce
        sub_lattice = kernel_lattice(rep.as_group())
        for theta in sub_lattice.basis:
            gens.append(induct(theta, table))
    for N in ambient.normal_subgroups:
        if N.order == 1 or N.order == ambient.order:
            continue
        Q, phi = ambient.quotient(N)
        q_lattice = kernel_lattice(Q)
        for theta in q_lattice.basis:
            gens.append(inflate(theta, phi, table))
    return gens


class PrimStructure:
    """K(G), the imprimitive sublattice, and the quotient's invariants."""

    def __init__(self, table: SubgroupClassTable):
        self.table = table
        self.kernel: RelationLattice = kernel_lattice(table)
        gens = imprimitive_sublattice(table)
        rows = [g.as_vector() for g in gens]
        H, _ = hnf(rows) if rows else ([], [])
        self.imprimitive_rows = [r for r in H if any(r)]
        self.imprimitive_basis = [
            BurnsideElement(table, {i: c for i, c in enumerate(row) if c})
            for row in self.imprimitive_rows
        ]
        self.invariants: AbelianInvariants = quotient_invariants(
            self.kernel.basis_rows, self.imprimitive_rows
        )
        # imprimitive generators in kernel coordinates, HNF-reduced, for
        # projection to the quotient
        coords = []
        for row in self.imprimitive_rows:
            c = lattice_membership(self.kernel.basis_rows, row)
            coords.append(list(c))
        Hc, _ = hnf(coords) if coords else ([], [])
        self._imprim_in_kernel = [r for r in Hc if any(r)]

    @property
    def imprimitive_rank(self) -> int:
        return len(self.imprimitive_rows)

    def prim_class(self, theta: BurnsideElement) -> tuple[int, ...]:
        """Kernel-basis coordinates of Θ reduced modulo the imprimitive
        sublattice; all-zero exactly when Θ is imprimitive."""
        if not is_relation(theta):
            raise ShapeError("prim_class of a non-relation")
        x = self.kernel.membership(theta)
        if x is None:
            raise ShapeError("relation does not lie in the kernel lattice (bug)")
        x = list(x)
        for row in self._imprim_in_kernel:
            c = next(j for j, v in enumerate(row) if v)
            q = x[c] // row[c]
            if q:
                x = [a - q * b for a, b in zip(x, row)]
        return tuple(x)

    def is_imprimitive(self, theta: BurnsideElement) -> bool:
        if not is_relation(theta):
            raise ShapeError("is_imprimitive of a non-relation")
        return lattice_membership(self.imprimitive_rows, theta.as_vector()) is not None


def prim_structure(G) -> PrimStructure:
    return PrimStructure(_table_of(G))


def is_imprimitive(theta: BurnsideElement, structure: PrimStructure | None = None) -> bool:
    if structure is None:
        structure = PrimStructure(theta.table)
    return structure.is_imprimitive(theta)
