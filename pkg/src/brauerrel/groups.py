"""Finite permutation groups at desk scale.

Groups are stored with their full element set once enumerated; every
group-theoretic primitive (subgroups, conjugacy, normality, quotients)
is answered exactly by exhaustive computation.  Hard resource bounds on
group order and subgroup count raise ResourceBoundError rather than
ever returning a truncated answer.
"""

from __future__ import annotations

import os
from functools import cached_property
from math import lcm

from .errors import ResourceBoundError, ShapeError
from .perms import Perm, Permutation, identity, inv, mul, perm_order

DEFAULT_MAX_ORDER = 2000
DEFAULT_MAX_SUBGROUPS = 5000


def _max_order() -> int:
    return int(os.environ.get("BRAUERREL_MAX_ORDER", DEFAULT_MAX_ORDER))


def _max_subgroups() -> int:
    return int(os.environ.get("BRAUERREL_MAX_SUBGROUPS", DEFAULT_MAX_SUBGROUPS))


def closure(degree: int, gens, max_size: int | None = None) -> frozenset:
    """All products of the generators (the generated subgroup)."""
    if max_size is None:
        max_size = _max_order()
    e = identity(degree)
    seen = {e}
    frontier = [e]
    gens = [tuple(g) for g in gens]
    while frontier:
        nxt = []
        for x in frontier:
            get = x.__getitem__
            for g in gens:
                y = tuple(map(get, g))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        if len(seen) > max_size:
            raise ResourceBoundError(
                f"group order exceeds bound {max_size} during closure"
            )
        frontier = nxt
    return frozenset(seen)


class PermGroup:
    """A finite group of permutations of {0..degree-1}."""

    def __init__(self, degree: int, generators, _elements: frozenset | None = None):
        self.degree = degree
        gens = []
        for g in generators:
            img = tuple(g.images) if isinstance(g, Permutation) else tuple(g)
            if len(img) != degree:
                raise ShapeError(f"generator degree {len(img)} != {degree}")
            if sorted(img) != list(range(degree)):
                raise ShapeError(f"generator is not a bijection: {img}")
            gens.append(img)
        self.gens: tuple[Perm, ...] = tuple(gens)
        if _elements is not None:
            self.__dict__["elements"] = _elements

    @property
    def generators(self) -> list[Permutation]:
        return [Permutation(g) for g in self.gens]

    @cached_property
    def elements(self) -> frozenset:
        return closure(self.degree, self.gens)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity_element(self) -> Perm:
        return identity(self.degree)

    def __contains__(self, g) -> bool:
        img = tuple(g.images) if isinstance(g, Permutation) else tuple(g)
        return img in self.elements

    def __repr__(self) -> str:
        return f"<PermGroup degree={self.degree} order={self.order}>"

    # -- basic structure ------------------------------------------------

    def element_order(self, g: Perm) -> int:
        return perm_order(g)

    @cached_property
    def exponent(self) -> int:
        out = 1
        for g in self.elements:
            out = lcm(out, perm_order(g))
        return out

    def is_cyclic(self) -> bool:
        # exponent == order is not enough for non-prime-power orders
        return any(perm_order(g) == self.order for g in self.elements)

    def is_abelian(self) -> bool:
        els = sorted(self.elements)
        for g in self.gens:
            for h in els:
                if mul(g, h) != mul(h, g):
                    return False
        return True

    def is_elementary_abelian_p(self, p: int) -> bool:
        n = self.order
        if n == 1:
            return True
        while n % p == 0:
            n //= p
        return n == 1 and self.exponent in (1, p) and self.is_abelian()

    def is_p_group(self) -> tuple[bool, int]:
        """(True, p) if the order is a power of the prime p; (False, 0) otherwise."""
        n = self.order
        if n == 1:
            return True, 0
        p = min(p for p in _prime_factors(n))
        while n % p == 0:
            n //= p
        return (n == 1), (p if n == 1 else 0)

    # -- subgroups ------------------------------------------------------

    def subgroup(self, gens=(), elements: frozenset | None = None) -> "SubgroupHandle":
        gens = tuple(tuple(g.images) if isinstance(g, Permutation) else tuple(g) for g in gens)
        if elements is None:
            elements = closure(self.degree, gens)
        for g in gens:
            if g not in self.elements:
                raise ShapeError("generator not an element of the ambient group")
        return SubgroupHandle(self, elements, gens)

    def trivial_subgroup(self) -> "SubgroupHandle":
        return SubgroupHandle(self, frozenset([self.identity_element]), ())

    def full_subgroup(self) -> "SubgroupHandle":
        return SubgroupHandle(self, self.elements, self.gens)

    @cached_property
    def _cyclic_subgroup_sets(self) -> list[tuple[frozenset, Perm]]:
        """Distinct nontrivial cyclic subgroups with a generator each."""
        seen: dict[frozenset, Perm] = {}
        for g in sorted(self.elements):
            if g == self.identity_element:
                continue
            powers = [g]
            x = g
            while True:
                x = mul(x, g)
                if x == g:
                    break
                powers.append(x)
            fs = frozenset(powers)
            if fs not in seen:
                seen[fs] = g
        return sorted(seen.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))

    @cached_property
    def all_subgroups(self) -> list["SubgroupHandle"]:
        """Every subgroup, by join closure starting from the cyclic ones.

        Every subgroup is a join of cyclic subgroups, so closing the
        cyclic list under join-with-a-cyclic is complete.
        """
        bound = _max_subgroups()
        # prime-power atoms suffice: any cyclic group is the join of its
        # Sylow parts, so join-closure over these reaches every subgroup
        cyclics = [
            (fs, g)
            for fs, g in self._cyclic_subgroup_sets
            if len(prime_factors(len(fs))) == 1
        ]
        known: dict[frozenset, tuple] = {frozenset([self.identity_element]): ()}
        worklist: list[frozenset] = []
        for fs, g in cyclics:
            if fs not in known:
                known[fs] = (g,)
                worklist.append(fs)
        i = 0
        while i < len(worklist):
            A = worklist[i]
            i += 1
            ga = known[A]
            for fs, g in cyclics:
                if fs <= A:
                    continue
                J = closure(self.degree, ga + (g,))
                if J not in known:
                    known[J] = ga + (g,)
                    worklist.append(J)
                    if len(known) > bound:
                        raise ResourceBoundError(
                            f"subgroup count exceeds bound {bound}"
                        )
        subs = [SubgroupHandle(self, fs, gens) for fs, gens in known.items()]
        subs.sort(key=lambda h: h.key)
        return subs

    def conjugate_set(self, elements: frozenset, g: Perm) -> frozenset:
        gi = inv(g)
        return frozenset(mul(mul(g, x), gi) for x in elements)

    @cached_property
    def subgroup_classes(self) -> list[list["SubgroupHandle"]]:
        """Conjugacy classes of subgroups, canonically ordered.

        Classes sort by (subgroup order, minimal sorted element tuple over
        the class); members of each class sort by element tuple.
        """
        by_set = {h.elements: h for h in self.all_subgroups}
        unseen = set(by_set)
        classes = []
        for h in self.all_subgroups:
            if h.elements not in unseen:
                continue
            orbit = {h.elements}
            frontier = [h.elements]
            while frontier:
                nxt = []
                for fs in frontier:
                    for g in self.gens:
                        c = self.conjugate_set(fs, g)
                        if c not in orbit:
                            orbit.add(c)
                            nxt.append(c)
                frontier = nxt
            unseen -= orbit
            members = sorted((by_set[fs] for fs in orbit), key=lambda x: x.key)
            classes.append(members)
        classes.sort(key=lambda cls: (cls[0].order, min(m.key for m in cls)))
        return classes

    # -- normality, quotients -------------------------------------------

    def is_normal(self, H: "SubgroupHandle") -> bool:
        return all(self.conjugate_set(H.elements, g) == H.elements for g in self.gens)

    def normalizer(self, H: "SubgroupHandle") -> "SubgroupHandle":
        els = frozenset(
            g for g in self.elements if self.conjugate_set(H.elements, g) == H.elements
        )
        return SubgroupHandle(self, els, ())

    def centralizer(self, elements) -> "SubgroupHandle":
        """Elements of this group commuting with everything in `elements`."""
        targets = sorted(elements)
        els = frozenset(
            g for g in self.elements if all(mul(g, t) == mul(t, g) for t in targets)
        )
        return SubgroupHandle(self, els, ())

    def centre(self) -> "SubgroupHandle":
        return self.centralizer(self.elements)

    def normal_closure(self, gens) -> "SubgroupHandle":
        """Smallest normal subgroup containing the given elements."""
        seed = set(tuple(g) for g in gens)
        els = closure(self.degree, seed)
        while True:
            extra = set()
            for g in self.gens:
                c = self.conjugate_set(els, g)
                extra |= c - els
            if not extra:
                break
            els = closure(self.degree, set(els) | extra)
        return SubgroupHandle(self, els, ())

    def derived_subgroup(self) -> "SubgroupHandle":
        comms = []
        for a in self.gens:
            for b in self.gens:
                comms.append(mul(mul(a, b), mul(inv(a), inv(b))))
        return self.normal_closure(comms)

    @cached_property
    def normal_subgroups(self) -> list["SubgroupHandle"]:
        """All normal subgroups, without a full subgroup enumeration.

        Every normal subgroup is a join of normal closures of cyclic
        subgroups, so join-closing those atoms is complete.
        """
        atoms: dict[frozenset, None] = {}
        for fs, g in self._cyclic_subgroup_sets:
            nc = self.normal_closure([g])
            atoms[nc.elements] = None
        atom_list = sorted(atoms, key=lambda fs: (len(fs), sorted(fs)))
        known = {frozenset([self.identity_element])}
        worklist = list(atom_list)
        known.update(atom_list)
        i = 0
        while i < len(worklist):
            A = worklist[i]
            i += 1
            for B in atom_list:
                if B <= A:
                    continue
                J = closure(self.degree, list(A) + list(B))
                if J not in known:
                    known.add(J)
                    worklist.append(J)
        out = [SubgroupHandle(self, fs, ()) for fs in known]
        out.sort(key=lambda h: h.key)
        return out

    def frattini_subgroup(self) -> "SubgroupHandle":
        subs = self.all_subgroups
        proper = [h for h in subs if h.order < self.order]
        maximal = [
            h
            for h in proper
            if not any(o is not h and h.elements < o.elements for o in proper)
        ]
        if not maximal:
            return self.full_subgroup()
        els = self.elements
        for m in maximal:
            els = els & m.elements
        return SubgroupHandle(self, frozenset(els), ())

    def sylow_subgroup(self, p: int) -> "SubgroupHandle":
        pk = 1
        n = self.order
        while n % p == 0:
            pk *= p
            n //= p
        for h in self.all_subgroups:
            if h.order == pk:
                return h
        raise ShapeError(f"no subgroup of order {pk} found (impossible)")

    def quotient(self, N: "SubgroupHandle") -> tuple["PermGroup", "Epimorphism"]:
        """G/N as the permutation action on left cosets of N."""
        if not self.is_normal(N):
            raise ShapeError("quotient by a non-normal subgroup")
        nels = sorted(N.elements)
        coset_id: dict[Perm, int] = {}
        reps: list[Perm] = []
        for g in sorted(self.elements):
            if g in coset_id:
                continue
            idx = len(reps)
            reps.append(g)
            for n in nels:
                coset_id[mul(g, n)] = idx
        index = len(reps)

        def act(g: Perm) -> Perm:
            return tuple(coset_id[mul(g, r)] for r in reps)

        qgens = [act(g) for g in self.gens]
        qelements = frozenset(act(g) for g in self.elements)
        Q = PermGroup(index, qgens, _elements=qelements)
        phi = Epimorphism(self, Q, coset_id, reps, N)
        return Q, phi


class SubgroupHandle:
    """A subgroup of an ambient PermGroup; equality is by element set."""

    __slots__ = ("ambient", "elements", "gens", "_key", "_group")

    def __init__(self, ambient: PermGroup, elements: frozenset, gens: tuple = ()):
        self.ambient = ambient
        self.elements = elements
        self.gens = tuple(gens)
        self._key = None
        self._group = None

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def key(self) -> tuple:
        """Canonical sort key: (order, sorted element tuple)."""
        if self._key is None:
            self._key = (len(self.elements), tuple(sorted(self.elements)))
        return self._key

    def generators(self) -> tuple:
        if self.gens:
            return self.gens
        # fall back to the whole element set; closure is then a no-op
        return tuple(sorted(self.elements))

    def as_group(self) -> PermGroup:
        if self._group is None:
            grp = PermGroup(
                self.ambient.degree, self.generators(), _elements=self.elements
            )
            # an already-enumerated ambient knows our subgroups: they are
            # exactly its subgroups contained in us
            if "all_subgroups" in self.ambient.__dict__:
                grp.all_subgroups = [
                    SubgroupHandle(grp, s.elements, s.gens)
                    for s in self.ambient.all_subgroups
                    if s.elements <= self.elements
                ]
            self._group = grp
        return self._group

    def contains(self, other: "SubgroupHandle") -> bool:
        return other.elements <= self.elements

    def conjugate_by(self, g: Perm) -> "SubgroupHandle":
        return SubgroupHandle(
            self.ambient, self.ambient.conjugate_set(self.elements, g), ()
        )

    def intersect(self, other: "SubgroupHandle") -> "SubgroupHandle":
        return SubgroupHandle(self.ambient, self.elements & other.elements, ())

    def join(self, other: "SubgroupHandle") -> "SubgroupHandle":
        els = closure(
            self.ambient.degree, list(self.generators()) + list(other.generators())
        )
        return SubgroupHandle(self.ambient, els, ())

    def is_trivial(self) -> bool:
        return len(self.elements) == 1

    def is_cyclic(self) -> bool:
        return any(perm_order(g) == self.order for g in self.elements)

    def is_abelian(self) -> bool:
        return self.as_group().is_abelian()

    @property
    def exponent(self) -> int:
        return self.as_group().exponent

    def __eq__(self, other) -> bool:
        return isinstance(other, SubgroupHandle) and self.elements == other.elements

    def __hash__(self) -> int:
        return hash(self.elements)

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of degree-{self.ambient.degree} group>"


class Epimorphism:
    """The quotient map G -> G/N realized on left cosets of N."""

    def __init__(self, source: PermGroup, target: PermGroup, coset_id, reps, kernel):
        self.source = source
        self.target = target
        self._coset_id = coset_id
        self._reps = reps
        self.kernel = kernel

    def apply(self, g: Perm) -> Perm:
        return tuple(self._coset_id[mul(g, r)] for r in self._reps)

    def image(self, H: SubgroupHandle) -> SubgroupHandle:
        els = frozenset(self.apply(g) for g in H.elements)
        return SubgroupHandle(self.target, els, ())

    def preimage(self, Hbar: SubgroupHandle) -> SubgroupHandle:
        els = frozenset(g for g in self.source.elements if self.apply(g) in Hbar.elements)
        return SubgroupHandle(self.source, els, ())


def group_from_generators(degree: int, gens) -> PermGroup:
    G = PermGroup(degree, gens)
    _ = G.order
    return G


def direct_sum_perm(parts: list[tuple[int, Perm]], total: int) -> Perm:
    """Assemble a permutation acting blockwise; parts are (offset, block perm)."""
    out = list(range(total))
    for off, p in parts:
        for i, j in enumerate(p):
            out[off + i] = off + j
    return tuple(out)


def semidirect_product(C: PermGroup, P: PermGroup, action: list) -> PermGroup:
    """C x| P on the disjoint union of the two point sets.

    `action` gives, per generator of P, a permutation of C's points that
    normalizes C's element set (a realized automorphism of C).  The
    homomorphism property is certified by the order of the result.
    """
    if len(action) != len(P.gens):
        raise ShapeError("need one action permutation per P-generator")
    dC, dP = C.degree, P.degree
    total = dC + dP
    acts = []
    for a in action:
        a = tuple(a.images) if isinstance(a, Permutation) else tuple(a)
        if len(a) != dC:
            raise ShapeError("action permutation degree mismatch")
        ai = inv(a)
        for c in C.gens:
            if mul(mul(a, c), ai) not in C.elements:
                raise ShapeError("action does not normalize C")
        acts.append(a)
    gens = []
    for c in C.gens:
        gens.append(direct_sum_perm([(0, c)], total))
    for a, p in zip(acts, P.gens):
        gens.append(direct_sum_perm([(0, a), (dC, p)], total))
    G = PermGroup(total, gens)
    if G.order != C.order * P.order:
        raise ShapeError(
            f"action is not a homomorphism: |G| = {G.order} != {C.order * P.order}"
        )
    return G


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_factors(n: int) -> list[int]:
    return _prime_factors(n)


def p_part(n: int, p: int) -> int:
    out = 1
    while n % p == 0:
        out *= p
        n //= p
    return out


def is_squarefree(n: int) -> bool:
    for p in _prime_factors(n):
        if n % (p * p) == 0:
            return False
    return True


def abelian_invariants(G: PermGroup) -> list[int]:
    """Invariant factors of an abelian group (largest first), by element orders."""
    if not G.is_abelian():
        raise ShapeError("abelian_invariants of a non-abelian group")
    n = G.order
    if n == 1:
        return []
    # per prime: exponents of the p-primary component, recovered greedily
    # from the counts of elements of each p-power order
    factors: dict[int, list[int]] = {}
    orders = sorted(perm_order(g) for g in G.elements)
    for p in _prime_factors(n):
        counts = {}
        for o in orders:
            pk = p_part(o, p)
            counts[pk] = counts.get(pk, 0) + 1
        # number of elements of p-part order dividing p^k; every p-torsion
        # element is counted once per element of the p'-part, so divide
        # that cofactor out
        cum = {}
        total_pk = p_part(n, p)
        cofactor = n // total_pk
        k = 0
        pk = 1
        while pk <= total_pk:
            cum[k] = sum(v for q, v in counts.items() if q <= pk) // cofactor
            k += 1
            pk *= p
        exps = _p_group_invariants(cum, total_pk, p)
        factors[p] = exps
    # combine per-prime exponent lists into invariant factors, largest first
    maxlen = max(len(v) for v in factors.values())
    invs = []
    for i in range(maxlen):
        f = 1
        for p, exps in factors.items():
            if i < len(exps):
                f *= p ** exps[i]
        invs.append(f)
    return invs


def _p_group_invariants(cum: dict[int, int], total: int, p: int) -> list[int]:
    """Exponents (descending) of an abelian p-group from the counts cum[k] =
    #elements of order dividing p^k."""
    # rank of p^k-torsion layer: log_p(cum[k+1]/cum[k]) gives the number of
    # cyclic factors of order > p^k
    exps = []
    k = 0
    while cum.get(k, total) < total:
        lo = cum[k]
        hi = cum.get(k + 1, total)
        r = 0
        q = hi // lo
        while q > 1:
            q //= p
            r += 1
        exps.append(r)
        k += 1
    # exps[k] = number of invariant factors with exponent > k
    out = []
    nfac = exps[0] if exps else 0
    for i in range(nfac):
        e = sum(1 for r in exps if r > i)
        out.append(e)
    return sorted(out, reverse=True)


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], _elements=frozenset([(0,)]))
    g = tuple((i + 1) % n for i in range(n))
    return PermGroup(n, [g])
