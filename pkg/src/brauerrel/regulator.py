"""Regulator constants of the trivial module.

For a relation Θ = Σ n_H [G/H] the regulator constant is the exact
rational Π |H|^{−n_H}; its l-adic valuation is a linear functional on
K(G), and it is nonzero somewhere on K(G) exactly when G has a
subquotient C_l × C_l or C_l ⋊ C_p with faithful prime-order action.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .burnside import BurnsideElement, is_relation
from .errors import ShapeError
from .groups import PermGroup, prime_factors
from .relations import RelationLattice, _table_of, kernel_lattice


@dataclass(frozen=True)
class RegulatorValue:
    """An exact rational in lowest terms with its prime factorization."""

    numerator: int
    denominator: int
    ord_map: tuple[tuple[int, int], ...]  # (prime, valuation), primes ascending

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def ord(self, l: int) -> int:
        for p, v in self.ord_map:
            if p == l:
                return v
        return 0

    def __mul__(self, other: "RegulatorValue") -> "RegulatorValue":
        return _from_fraction(self.value * other.value)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def _from_fraction(q: Fraction) -> RegulatorValue:
    if q <= 0:
        raise ShapeError("regulator constants are positive")
    ords: dict[int, int] = {}
    for p in prime_factors(q.numerator):
        n = q.numerator
        while n % p == 0:
            n //= p
            ords[p] = ords.get(p, 0) + 1
    for p in prime_factors(q.denominator):
        n = q.denominator
        while n % p == 0:
            n //= p
            ords[p] = ords.get(p, 0) - 1
    return RegulatorValue(q.numerator, q.denominator, tuple(sorted(ords.items())))


def regulator_constant_trivial(theta: BurnsideElement) -> RegulatorValue:
    """Π |H|^{−n_H} over the classes appearing in Θ; requires a relation."""
    if not is_relation(theta):
        raise ShapeError("regulator constant is only defined for relations")
    q = Fraction(1)
    for i, n in theta.coeffs.items():
        q *= Fraction(theta.table.class_reps[i].order) ** (-n)
    return _from_fraction(q)


def ord_l_functional(K: RelationLattice, l: int) -> list[int]:
    """ord_l of the regulator constant at each kernel basis element,
    computed as −Σ_H n_H · ord_l |H| by linearity of the valuation."""
    out = []
    for theta in K.basis:
        v = 0
        for i, n in theta.coeffs.items():
            m = theta.table.class_reps[i].order
            while m % l == 0:
                m //= l
                v -= n
        out.append(v)
    return out


def has_nonzero_ordl(G, l: int) -> bool:
    """Some relation of G has regulator constant with nonzero l-valuation.

    The valuation is linear in Θ, so it suffices to look at a basis.
    """
    table = _table_of(G)
    K = kernel_lattice(table)
    return any(v != 0 for v in ord_l_functional(K, l))


def _is_critical(Q: PermGroup, l: int) -> bool:
    n = Q.order
    if n == l * l:
        return not Q.is_cyclic() and Q.exponent == l
    # order lp: need C_l normal (Sylow-l) with the C_p acting nontrivially;
    # the nonabelian group of order lp is critical for the larger prime only
    return not Q.is_abelian() and Q.is_normal(Q.sylow_subgroup(l))


def has_critical_subquotient(G, l: int) -> bool:
    """G has a subquotient isomorphic to C_l × C_l, or to C_l ⋊ C_p with a
    faithful action of prime order p ≠ l.

    Only pairs (H, N ⊴ H) with |H/N| ∈ {l², lp} can produce one.
    """
    table = _table_of(G)
    ambient = table.ambient
    targets = {l * l} | {l * p for p in prime_factors(ambient.order) if p != l}
    for rep in table.class_reps:
        H = rep.as_group()
        for N in H.normal_subgroups:
            if H.order // N.order not in targets:
                continue
            Q, _ = H.quotient(N)
            if _is_critical(Q, l):
                return True
    return False
