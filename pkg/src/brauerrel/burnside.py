"""The Burnside ring B(G): subgroup-class tables, marks, multiplication,
and the four transport operations (induction, inflation, restriction,
deflation).

A relation is an element whose marks vanish at every cyclic subgroup
class; that single test drives everything downstream.
"""

from __future__ import annotations

from functools import cached_property

from .errors import InternalCheckError, ShapeError
from .groups import Epimorphism, PermGroup, SubgroupHandle, closure
from .perms import identity, inv, mul, perm_order


def small_generators(H: SubgroupHandle) -> tuple:
    """A short generating set, greedily picking high-order elements."""
    if H.gens:
        return H.gens
    if len(H.elements) == 1:
        return ()
    degree = H.ambient.degree
    els = sorted(H.elements, key=lambda g: (-perm_order(g), g))
    gens: list = []
    cur = {identity(degree)}
    for g in els:
        if g not in cur:
            gens.append(g)
            cur = closure(degree, gens)
            if len(cur) == len(H.elements):
                break
    return tuple(gens)


class SubgroupClassTable:
    """Conjugacy classes of subgroups of G with the full table of marks.

    Classes are sorted ascending by subgroup order with a canonical
    element-set tiebreak, so the trivial group is class 0 and G is last,
    and the table of marks is lower-triangular with nonzero diagonal.
    """

    def __init__(self, G: PermGroup):
        self.ambient = G
        classes = G.subgroup_classes
        self.classes = classes
        self.class_reps: list[SubgroupHandle] = [cls[0] for cls in classes]
        self.class_of: dict[frozenset, int] = {}
        for i, cls in enumerate(classes):
            for h in cls:
                self.class_of[h.elements] = i
        self.n_classes = len(classes)
        self.is_cyclic = [rep.is_cyclic() for rep in self.class_reps]
        self.is_normal = [len(cls) == 1 and G.is_normal(cls[0]) for cls in classes]
        self.cyclic_class_indices = [i for i, c in enumerate(self.is_cyclic) if c]
        self._coset_data = [self._cosets(rep) for rep in self.class_reps]
        self._gens = [small_generators(rep) for rep in self.class_reps]
        # marks[i][j] = #cosets of class_reps[i] fixed by class_reps[j]
        self.marks = [
            [self._mark_from_cosets(i, self._gens[j]) for j in range(self.n_classes)]
            for i in range(self.n_classes)
        ]
        for i in range(self.n_classes):
            for j in range(i + 1, self.n_classes):
                if self.marks[i][j] != 0:
                    raise InternalCheckError("table of marks not lower-triangular")
            if self.marks[i][i] == 0:
                raise InternalCheckError("zero diagonal in table of marks")

    def _cosets(self, H: SubgroupHandle):
        """(reps, elem -> coset index) for the left cosets of H."""
        coset_id: dict = {}
        reps = []
        hels = sorted(H.elements)
        for g in sorted(self.ambient.elements):
            if g in coset_id:
                continue
            idx = len(reps)
            reps.append(g)
            for h in hels:
                coset_id[mul(g, h)] = idx
        return reps, coset_id

    def _mark_from_cosets(self, i: int, lgens: tuple) -> int:
        reps, coset_id = self._coset_data[i]
        if not lgens:
            return len(reps)
        count = 0
        for idx, x in enumerate(reps):
            if all(coset_id[mul(g, x)] == idx for g in lgens):
                count += 1
        return count

    def class_index(self, H: SubgroupHandle | frozenset) -> int:
        els = H.elements if isinstance(H, SubgroupHandle) else H
        try:
            return self.class_of[els]
        except KeyError:
            raise ShapeError("subgroup does not belong to this table's group") from None

    def mark(self, L: SubgroupHandle, H: SubgroupHandle) -> int:
        """#cosets of H fixed by L, via the cached class table."""
        return self.marks[self.class_index(H)][self.class_index(L)]

    def element(self, coeffs: dict[int, int]) -> "BurnsideElement":
        return BurnsideElement(self, coeffs)

    def basis_element(self, i: int) -> "BurnsideElement":
        return BurnsideElement(self, {i: 1})

    def one(self) -> "BurnsideElement":
        return BurnsideElement(self, {self.n_classes - 1: 1})

    @cached_property
    def cyclic_marks_matrix(self) -> list[list[int]]:
        """Row per class, column per cyclic class: the map B(G) -> cyclic marks."""
        return [
            [self.marks[i][c] for c in self.cyclic_class_indices]
            for i in range(self.n_classes)
        ]


class BurnsideElement:
    """Σ n_i [G/H_i] with H_i ranging over subgroup classes of a fixed table."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table: SubgroupClassTable, coeffs: dict[int, int]):
        self.table = table
        self.coeffs = {i: n for i, n in coeffs.items() if n != 0}

    def coeff(self, i: int) -> int:
        return self.coeffs.get(i, 0)

    def _check_same(self, other: "BurnsideElement"):
        if self.table is not other.table:
            raise ShapeError("elements over different tables never combine")

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check_same(other)
        out = dict(self.coeffs)
        for i, n in other.coeffs.items():
            out[i] = out.get(i, 0) + n
        return BurnsideElement(self.table, out)

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check_same(other)
        out = dict(self.coeffs)
        for i, n in other.coeffs.items():
            out[i] = out.get(i, 0) - n
        return BurnsideElement(self.table, out)

    def __rmul__(self, k: int) -> "BurnsideElement":
        return BurnsideElement(self.table, {i: k * n for i, n in self.coeffs.items()})

    def __neg__(self) -> "BurnsideElement":
        return -1 * self

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BurnsideElement)
            and self.table is other.table
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((id(self.table), tuple(sorted(self.coeffs.items()))))

    def is_zero(self) -> bool:
        return not self.coeffs

    def as_vector(self) -> list[int]:
        return [self.coeff(i) for i in range(self.table.n_classes)]

    def full_marks(self) -> list[int]:
        t = self.table
        return [
            sum(n * t.marks[i][j] for i, n in self.coeffs.items())
            for j in range(t.n_classes)
        ]

    def __repr__(self) -> str:
        if not self.coeffs:
            return "<0>"
        parts = []
        for i in sorted(self.coeffs):
            parts.append(f"{self.coeffs[i]:+d}·[{self.table.class_reps[i].order}]")
        return "<" + " ".join(parts) + ">"


def cyclic_marks(theta: BurnsideElement) -> list[int]:
    """Marks of Θ at the cyclic subgroup classes, in class order."""
    t = theta.table
    return [
        sum(n * t.marks[i][c] for i, n in theta.coeffs.items())
        for c in t.cyclic_class_indices
    ]


def is_relation(theta: BurnsideElement) -> bool:
    return all(v == 0 for v in cyclic_marks(theta))


def element_from_marks(table: SubgroupClassTable, marks: list[int]) -> BurnsideElement:
    """Invert the (lower-triangular) table of marks; must be integral."""
    n = table.n_classes
    coeffs = [0] * n
    for j in range(n - 1, -1, -1):
        acc = marks[j] - sum(coeffs[i] * table.marks[i][j] for i in range(j + 1, n))
        d = table.marks[j][j]
        if acc % d != 0:
            raise InternalCheckError("non-integral inverse marks (table-of-marks bug)")
        coeffs[j] = acc // d
    return BurnsideElement(table, {i: c for i, c in enumerate(coeffs) if c})


def multiply(a: BurnsideElement, b: BurnsideElement) -> BurnsideElement:
    """Ring product, recovered from the pointwise product of full marks."""
    a._check_same(b)
    ma = a.full_marks()
    mb = b.full_marks()
    return element_from_marks(a.table, [x * y for x, y in zip(ma, mb)])


def induct(theta: BurnsideElement, g_table: SubgroupClassTable) -> BurnsideElement:
    """Relabel classes of an element over H ≤ G as G-classes (with fusion)."""
    out: dict[int, int] = {}
    for i, n in theta.coeffs.items():
        rep = theta.table.class_reps[i]
        j = g_table.class_index(rep.elements)
        out[j] = out.get(j, 0) + n
    return BurnsideElement(g_table, out)


def inflate(
    theta: BurnsideElement, phi: Epimorphism, g_table: SubgroupClassTable
) -> BurnsideElement:
    """Pull an element over G/N back to G: each class rep becomes its preimage."""
    out: dict[int, int] = {}
    for i, n in theta.coeffs.items():
        rep = theta.table.class_reps[i]
        pre = phi.preimage(rep)
        j = g_table.class_index(pre.elements)
        out[j] = out.get(j, 0) + n
    return BurnsideElement(g_table, out)


def restrict(
    theta: BurnsideElement, H: SubgroupHandle, h_table: SubgroupClassTable
) -> BurnsideElement:
    """Mackey restriction to H: H-orbits on each G/H_i with their stabilisers."""
    t = theta.table
    hels = sorted(H.elements)
    hgens = small_generators(H)
    out: dict[int, int] = {}
    for i, n in theta.coeffs.items():
        reps, coset_id = t._coset_data[i]
        hi = t.class_reps[i]
        seen: set[int] = set()
        for idx, x in enumerate(reps):
            if idx in seen:
                continue
            orbit = {idx}
            frontier = [x]
            while frontier:
                nxt = []
                for y in frontier:
                    for g in hgens:
                        z = mul(g, y)
                        zi = coset_id[z]
                        if zi not in orbit:
                            orbit.add(zi)
                            nxt.append(reps[zi])
                frontier = nxt
            seen |= orbit
            xi = inv(x)
            stab = frozenset(h for h in hels if mul(mul(xi, h), x) in hi.elements)
            j = h_table.class_index(stab)
            out[j] = out.get(j, 0) + n
    return BurnsideElement(h_table, out)


def deflate(
    theta: BurnsideElement, phi: Epimorphism, q_table: SubgroupClassTable
) -> BurnsideElement:
    """Push an element down to G/N: H_i goes to its image (N·H_i)/N."""
    out: dict[int, int] = {}
    for i, n in theta.coeffs.items():
        rep = theta.table.class_reps[i]
        img = phi.image(rep)
        j = q_table.class_index(img.elements)
        out[j] = out.get(j, 0) + n
    return BurnsideElement(q_table, out)
