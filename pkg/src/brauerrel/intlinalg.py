"""Exact integer-lattice computations.

Row convention throughout: matrices act on row vectors, so the kernel of
M is {x : x·M = 0} and a lattice is the ℤ-span of basis rows.  All
arithmetic is arbitrary-precision integer; there is no floating point
anywhere in this package.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ShapeError

IntMatrix = list[list[int]]


@dataclass(frozen=True)
class AbelianInvariants:
    """A finitely generated abelian group: ℤ^free_rank ⊕ ⊕ ℤ/d_i with d_1|d_2|…"""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ShapeError(f"invariant factors {self.torsion} violate divisibility")
        if any(d <= 1 for d in self.torsion):
            raise ShapeError("torsion invariant factors must exceed 1")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        for d in self.torsion:
            parts.append(f"Z/{d}")
        return " x ".join(parts) if parts else "0"


def _identity_matrix(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (H, U) with U·M = H.

    H is in echelon form with positive pivots, zeros below each pivot,
    entries above a pivot reduced into [0, pivot); U is unimodular.
    Pivot selection takes the smallest absolute value to keep entries small.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    A = [list(r) for r in M]
    if any(len(r) != n for r in A):
        raise ShapeError("ragged matrix")
    U = _identity_matrix(m)
    r = 0
    for c in range(n):
        if r >= m:
            break
        while True:
            nz = [i for i in range(r, m) if A[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(A[i][c]))
            if piv != r:
                A[r], A[piv] = A[piv], A[r]
                U[r], U[piv] = U[piv], U[r]
            if A[r][c] < 0:
                A[r] = [-x for x in A[r]]
                U[r] = [-x for x in U[r]]
            done = True
            for i in range(r + 1, m):
                if A[i][c] != 0:
                    q = A[i][c] // A[r][c]
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if A[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and A[r][c] != 0:
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            r += 1
    return A, U


def row_rank(M: IntMatrix) -> int:
    H, _ = hnf(M)
    return sum(1 for row in H if any(row))


def integer_kernel(M: IntMatrix) -> IntMatrix:
    """HNF-reduced basis of {x : x·M = 0}; automatically saturated."""
    H, U = hnf(M)
    ker = [U[i] for i in range(len(H)) if not any(H[i])]
    if not ker:
        return []
    K, _ = hnf(ker)
    return [row for row in K if any(row)]


def snf_diagonal(M: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith normal form, as a divisibility chain."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # move a nonzero entry (smallest |value|) to the pivot position
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        A[t], A[i0] = A[i0], A[t]
        for row in A:
            row[t], row[j0] = row[j0], row[t]
        while True:
            if A[t][t] < 0:
                A[t] = [-x for x in A[t]]
            changed = False
            for i in range(t + 1, m):
                if A[i][t] != 0:
                    q = A[i][t] // A[t][t]
                    A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                    if A[i][t] != 0:
                        A[t], A[i] = A[i], A[t]
                        changed = True
            for j in range(t + 1, n):
                if A[t][j] != 0:
                    q = A[t][j] // A[t][t]
                    for i in range(m):
                        A[i][j] -= q * A[i][t]
                    if A[t][j] != 0:
                        for i in range(m):
                            A[i][t], A[i][j] = A[i][j], A[i][t]
                        changed = True
            if not changed:
                break
        # the pivot must divide every remaining entry; if not, fold the
        # offending row in and redo this pivot
        d = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % d != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            A[t] = [x + y for x, y in zip(A[t], A[offender])]
            continue
        diag.append(d)
        t += 1
    return diag


def snf(M: IntMatrix) -> tuple[list[int], AbelianInvariants]:
    """Smith diagonal of M plus the invariants of ℤ^cols / rowspan(M)."""
    n = len(M[0]) if M else 0
    diag = snf_diagonal(M)
    free = n - len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return diag, AbelianInvariants(free, torsion)


def lattice_membership(basis: IntMatrix, v: list[int]):
    """Integer coordinates of v in the ℤ-span of the basis rows, or None."""
    if not basis:
        return () if not any(v) else None
    n = len(basis[0])
    if len(v) != n:
        raise ShapeError("ambient dimension mismatch")
    H, U = hnf(basis)
    rows = [(i, row) for i, row in enumerate(H) if any(row)]
    res = list(v)
    y = {}
    for i, row in rows:
        c = next(j for j, x in enumerate(row) if x)
        if res[c] % row[c] != 0:
            return None
        t = res[c] // row[c]
        if t:
            res = [a - t * b for a, b in zip(res, row)]
        y[i] = t
    if any(res):
        return None
    m = len(basis)
    coords = [0] * m
    for i, _ in rows:
        t = y[i]
        if t:
            for j in range(m):
                coords[j] += t * U[i][j]
    return tuple(coords)


def quotient_invariants(ambient: IntMatrix, sub: IntMatrix) -> AbelianInvariants:
    """Invariants of (ℤ-span of ambient rows)/(ℤ-span of sub rows)."""
    if not ambient:
        if sub and any(any(r) for r in sub):
            raise ShapeError("sub lattice not contained in ambient lattice")
        return AbelianInvariants(0, ())
    coeffs = []
    for row in sub:
        c = lattice_membership(ambient, row)
        if c is None:
            raise ShapeError("sub lattice not contained in ambient lattice")
        coeffs.append(list(c))
    if not coeffs:
        return AbelianInvariants(len(ambient), ())
    _, inv = snf(coeffs)
    return inv


def content(v: list[int]) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
