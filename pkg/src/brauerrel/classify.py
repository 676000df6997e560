"""Executable classification of groups with primitive relations.

Decides, for a finite group, which structural case applies and what the
primitive quotient must be, and constructs the explicit generating
relations for each case.  The decision tree: cyclic groups, then
p-groups, then groups with a non-quasi-elementary quotient criterion,
then the fine structure analysis of quasi-elementary groups (kernel
shape, signatures, and the component graph).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .burnside import BurnsideElement, SubgroupClassTable
from .errors import InternalCheckError, ShapeError
from .groups import (
    PermGroup,
    SubgroupHandle,
    is_squarefree,
    p_part,
    prime_factors,
)
from .intlinalg import AbelianInvariants
from .perms import mul, perm_order
from .relations import (
    is_p_quasi_elementary,
    is_quasi_elementary,
    quasi_elementary_primes,
    solomon_relation,
)

INV_TRIVIAL = AbelianInvariants(0, ())
INV_Z = AbelianInvariants(1, ())


def inv_mod(p: int, k: int = 1) -> AbelianInvariants:
    return AbelianInvariants(0, tuple([p] * k)) if k > 0 else INV_TRIVIAL


def mobius(n: int) -> int:
    ps = prime_factors(n)
    for q in ps:
        if n % (q * q) == 0:
            return 0
    return (-1) ** len(ps)


# -- structural fingerprints ------------------------------------------------


def involution_count(G: PermGroup) -> int:
    return sum(1 for g in G.elements if perm_order(g) == 2)


def is_dihedral_2group(G: PermGroup) -> bool:
    """Order 2^n >= 8, cyclic of index 2, and the dihedral involution count."""
    n = G.order
    if n < 8 or n & (n - 1):
        return False
    if not any(perm_order(g) == n // 2 for g in G.elements):
        return False
    return involution_count(G) == n // 2 + 1


def is_d8(G: PermGroup) -> bool:
    return G.order == 8 and is_dihedral_2group(G)


def is_heisenberg(G: PermGroup) -> tuple[bool, int]:
    """Nonabelian of order p^3 and exponent p (p odd): the extraspecial
    exponent-p group."""
    n = G.order
    ps = prime_factors(n)
    if len(ps) != 1:
        return False, 0
    p = ps[0]
    if p == 2 or n != p**3:
        return False, 0
    if G.exponent != p or G.is_abelian():
        return False, 0
    return True, p


def is_cp_times_cp(G: PermGroup) -> tuple[bool, int]:
    n = G.order
    ps = prime_factors(n)
    if len(ps) == 1 and n == ps[0] ** 2 and not G.is_cyclic():
        return True, ps[0]
    return False, 0


def has_normal_p_rank_one(K: PermGroup, p: int) -> bool:
    """No normal elementary abelian subgroup of order p^2 or more."""
    for A in K.all_subgroups:
        if A.order < p * p:
            continue
        if not A.is_abelian() or A.exponent != p:
            continue
        if K.is_normal(A):
            return False
    return True


# -- quasi-elementary structure ---------------------------------------------


@dataclass
class QEDecomposition:
    """The C ⋊ P structure of a p-quasi-elementary group with its action
    kernels."""

    group: PermGroup
    p: int
    C: SubgroupHandle
    P: SubgroupHandle
    primes: list[int]            # l_1 < ... < l_t dividing |C|
    squarefree: bool
    K: SubgroupHandle            # kernel of P acting on C
    Kj: list[SubgroupHandle]     # j-th: kernel of P on C with l_j removed
    Zp: SubgroupHandle | None    # central order-p subgroup of K
    CK: SubgroupHandle | None    # maximal cyclic subgroup of K normal in G
    Chat: SubgroupHandle | None  # C · CK, normal cyclic
    Ktilde: list[SubgroupHandle] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.primes)


def _centralizer_within(G: PermGroup, inside: frozenset, targets) -> frozenset:
    targets = sorted(targets)
    return frozenset(
        g for g in inside if all(mul(g, t) == mul(t, g) for t in targets)
    )


def _cyclic_part(handle: SubgroupHandle, d: int) -> SubgroupHandle:
    """The unique subgroup of order d of a cyclic subgroup."""
    n = handle.order
    if n % d != 0:
        raise ShapeError(f"{d} does not divide cyclic order {n}")
    g = next(x for x in handle.elements if perm_order(x) == n)
    step = n // d
    els = set()
    cur = handle.ambient.identity_element
    gstep = cur
    for _ in range(step):
        gstep = mul(gstep, g)
    for _ in range(d):
        els.add(cur)
        cur = mul(cur, gstep)
    return SubgroupHandle(handle.ambient, frozenset(els), ())


def qe_decomposition(G: PermGroup) -> QEDecomposition | None:
    """The C ⋊ P structure record, or None if G is not quasi-elementary."""
    candidates = quasi_elementary_primes(G)
    if not candidates:
        return None
    p = candidates[0]
    cpart = G.order // p_part(G.order, p)
    C = None
    for N in G.normal_subgroups:
        if not N.is_cyclic():
            continue
        q = G.order // N.order
        while q % p == 0:
            q //= p
        if q == 1:
            C = _cyclic_part(N, N.order // p_part(N.order, p))
            break
    if C is None:
        return None
    if C.order != cpart:
        raise InternalCheckError("coprime part of the normal cyclic is wrong")
    P = G.sylow_subgroup(p) if G.order > 1 else G.full_subgroup()
    primes = prime_factors(C.order)
    t = len(primes)
    cgen = (
        [next(x for x in C.elements if perm_order(x) == C.order)]
        if C.order > 1
        else []
    )
    K = SubgroupHandle(G, _centralizer_within(G, P.elements, cgen), ())
    Cl = [_cyclic_part(C, l) for l in primes]
    Kj = []
    for j in range(t):
        inside = P.elements
        for i in range(t):
            if i == j:
                continue
            gi = next(x for x in Cl[i].elements if perm_order(x) == primes[i])
            inside = _centralizer_within(G, inside, [gi])
        Kj.append(SubgroupHandle(G, inside, ()))
    Zp = None
    CK = None
    Chat = C
    Ktilde = list(Kj)
    if K.order > 1:
        Kgrp = K.as_group()
        ZK = SubgroupHandle(G, Kgrp.centre().elements, ())
        if ZK.is_cyclic():
            Zp = _cyclic_part(ZK, p)
        if K.is_cyclic():
            CK = K
        else:
            cands = [
                A
                for A in Kgrp.all_subgroups
                if A.order * p == K.order
                and A.is_cyclic()
                and G.is_normal(SubgroupHandle(G, A.elements, ()))
            ]
            if cands:
                cands.sort(key=lambda h: h.key)
                CK = SubgroupHandle(G, cands[0].elements, ())
        if CK is not None:
            Chat = C.join(SubgroupHandle(G, CK.elements, ()))
            ckgen = (
                [next(x for x in CK.elements if perm_order(x) == CK.order)]
                if CK.order > 1
                else []
            )
            Ktilde = [
                SubgroupHandle(G, _centralizer_within(G, kj.elements, ckgen), ())
                for kj in Kj
            ]
    return QEDecomposition(
        group=G,
        p=p,
        C=C,
        P=P,
        primes=primes,
        squarefree=is_squarefree(C.order),
        K=K,
        Kj=Kj,
        Zp=Zp,
        CK=CK,
        Chat=Chat,
        Ktilde=Ktilde,
    )


def index_p_subgroups(dec: QEDecomposition) -> list[SubgroupHandle]:
    Pgrp = dec.P.as_group()
    out = [
        SubgroupHandle(dec.group, h.elements, h.gens)
        for h in Pgrp.all_subgroups
        if h.order * dec.p == dec.P.order
    ]
    out.sort(key=lambda h: h.key)
    return out


def signatures(dec: QEDecomposition) -> list[tuple[SubgroupHandle, tuple[int, ...]]]:
    """For each index-p subgroup M of P, the bit vector [K_j ⊆ M]_j."""
    out = []
    for M in index_p_subgroups(dec):
        sig = tuple(int(kj.elements <= M.elements) for kj in dec.Kj)
        out.append((M, sig))
    return out


@dataclass
class GammaGraph:
    vertices: list[SubgroupHandle]
    edges: set[frozenset]              # frozensets of two vertex indices
    components: list[list[int]]

    @property
    def component_count(self) -> int:
        return len(self.components)


def gamma_graph(dec: QEDecomposition) -> GammaGraph:
    """The component graph on maximal-order subgroups of P meeting the
    centre of K trivially.

    Edges: (1) the two vertices generate a proper subgroup of P;
    (2) t > 1 and they cut the same subgroup out of some K̃_j;
    (3) both have index p over their intersection, the intersection is
    normal in their join, and the join modulo it is dihedral of order at
    least 8 or the exponent-p nonabelian group of order p^3.
    """
    G = dec.group
    p = dec.p
    if dec.K.order <= 1:
        raise ShapeError("graph analysis requires a nontrivial kernel K")
    Kgrp = dec.K.as_group()
    ZK = Kgrp.centre().elements
    ident = G.identity_element
    Pgrp = dec.P.as_group()
    cands = [
        h for h in Pgrp.all_subgroups if h.elements & ZK == frozenset([ident])
    ]
    msize = max(h.order for h in cands)
    verts = sorted(
        (SubgroupHandle(G, h.elements, h.gens) for h in cands if h.order == msize),
        key=lambda h: h.key,
    )
    edges: set[frozenset] = set()
    n = len(verts)
    for a in range(n):
        for b in range(a + 1, n):
            H, H2 = verts[a], verts[b]
            J = H.join(H2)
            if J.order < dec.P.order:
                edges.add(frozenset((a, b)))
                continue
            if dec.t > 1 and any(
                H.elements & kt.elements == H2.elements & kt.elements
                for kt in dec.Ktilde
            ):
                edges.add(frozenset((a, b)))
                continue
            inter = H.intersect(H2)
            if H.order == p * inter.order and H2.order == p * inter.order:
                Jgrp = J.as_group()
                Jinter = SubgroupHandle(Jgrp, inter.elements, ())
                if Jgrp.is_normal(Jinter):
                    Q, _ = Jgrp.quotient(Jinter)
                    if is_dihedral_2group(Q) or is_heisenberg(Q)[0]:
                        edges.add(frozenset((a, b)))
    # connected components
    seen: set[int] = set()
    comps = []
    for s in range(n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            v = stack.pop()
            for e in edges:
                if v in e:
                    (w,) = e - {v}
                    if w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
        comps.append(sorted(comp))
    return GammaGraph(verts, edges, comps)


# -- the classifier ---------------------------------------------------------


@dataclass
class Classification:
    tag: str                       # Cyclic, Dihedral2n, Heisenberg, Case3a,
    #                                Case3b, Case4a, Case4b, Case4c, NoPrimitive
    predicted: AbelianInvariants
    p: int | None = None
    witness: dict = field(default_factory=dict)


def _proper_quotients(G: PermGroup) -> list[PermGroup]:
    out = []
    for N in G.normal_subgroups:
        if 1 < N.order:
            Q, _ = G.quotient(N)
            out.append(Q)
    return out


def _frattini_image_line(dec: QEDecomposition, H: SubgroupHandle):
    """Image of H in P/Φ(P), as a frozenset of quotient elements."""
    Pgrp = dec.P.as_group()
    phi_sub = Pgrp.frattini_subgroup()
    Q, pi = Pgrp.quotient(phi_sub)
    return frozenset(pi.apply(h) for h in H.elements), Q


def _detect_3b(G: PermGroup) -> bool:
    """G ≅ (C_l⋊P1) × (C_l⋊P2) with P_i cyclic p-groups acting faithfully
    on C_l × C_l."""
    normals = G.normal_subgroups
    for A in normals:
        for B in normals:
            if A.order * B.order != G.order or A.order <= 1 or B.order <= 1:
                continue
            if len(A.elements & B.elements) != 1:
                continue
            ok = True
            for X in (A, B):
                Xg = X.as_group()
                d = qe_decomposition(Xg)
                if d is None or d.K.order != 1 or d.t != 1:
                    ok = False
                    break
                if not d.P.is_cyclic():
                    ok = False
                    break
            if ok:
                da = qe_decomposition(A.as_group())
                db = qe_decomposition(B.as_group())
                if da.primes == db.primes and da.p == db.p:
                    return True
    return False


def classify(G: PermGroup) -> Classification:
    """Which case of the classification applies, with the predicted
    structure of the primitive quotient."""
    if G.is_cyclic():
        return Classification("Cyclic", INV_TRIVIAL)
    isp, p = G.is_p_group()
    if isp:
        if is_dihedral_2group(G):
            return Classification("Dihedral2n", inv_mod(2), 2)
        heis, hp = is_heisenberg(G)
        if heis:
            return Classification("Heisenberg", inv_mod(hp, hp), hp)
        cpcp, cp = is_cp_times_cp(G)
        if cpcp:
            # all proper subgroups and quotients are cyclic, so the whole
            # relation lattice (rank 1) is primitive
            return Classification("Case3a", INV_Z, cp)
        return Classification("NoPrimitive", INV_TRIVIAL, p)
    if not is_quasi_elementary(G):
        quots = _proper_quotients(G)
        noncyclic = [Q for Q in quots if not Q.is_cyclic()]
        if not noncyclic:
            return Classification("Case3a", INV_Z, witness={"reason": "all proper quotients cyclic"})
        common: set[int] | None = None
        for Q in noncyclic:
            ps = set(quasi_elementary_primes(Q))
            common = ps if common is None else (common & ps)
        if common:
            qp = min(common)
            tag = "Case3b" if _detect_3b(G) else "Case3a"
            return Classification(
                tag, inv_mod(qp), qp,
                witness={"reason": f"all proper quotients {qp}-quasi-elementary"},
            )
        return Classification(
            "NoPrimitive", INV_TRIVIAL,
            witness={"reason": "mixed or non-quasi-elementary proper quotients"},
        )
    dec = qe_decomposition(G)
    if dec is None:
        raise InternalCheckError("quasi-elementary test disagrees with decomposition")
    p = dec.p
    if not dec.squarefree:
        return Classification(
            "NoPrimitive", INV_TRIVIAL, p,
            witness={"reason": "cyclic part has a square factor", "dec": dec},
        )
    Kgrp = dec.K.as_group()
    if dec.K.order > 1 and not (is_d8(Kgrp) or has_normal_p_rank_one(Kgrp, p)):
        return Classification(
            "NoPrimitive", INV_TRIVIAL, p,
            witness={"reason": "kernel of the P-action has normal rank >= 2", "dec": dec},
        )
    if any(kj.elements == dec.K.elements for kj in dec.Kj):
        return Classification(
            "NoPrimitive", INV_TRIVIAL, p,
            witness={"reason": "P/K needs fewer than t generators", "dec": dec},
        )
    if dec.K.order == 1:
        if dec.t == 1:
            return Classification("Case3a", INV_Z, p, witness={"dec": dec})
        sigs = signatures(dec)
        sigset = {s for _, s in sigs}
        full = tuple([1] * dec.t)
        zero = tuple([0] * dec.t)
        if sigset == {full, zero}:
            M = next(m for m, s in sigs if s == full)
            M2 = next(m for m, s in sigs if s == zero)
            return Classification(
                "Case4a", inv_mod(p), p, witness={"dec": dec, "M": M, "M'": M2}
            )
        return Classification(
            "NoPrimitive", INV_TRIVIAL, p,
            witness={"reason": f"signature set {sorted(sigset)}", "dec": dec},
        )
    # K nontrivial
    direct_complement = None
    if dec.K.order == p:
        kgen = sorted(dec.K.elements)
        Pgrp = dec.P.as_group()
        central = all(
            mul(g, k) == mul(k, g) for g in dec.P.gens or dec.P.elements for k in kgen
        )
        if central:
            for H in Pgrp.all_subgroups:
                if (
                    H.order * p == dec.P.order
                    and len(H.elements & dec.K.elements) == 1
                ):
                    direct_complement = SubgroupHandle(G, H.elements, H.gens)
                    break
    if direct_complement is not None:
        images = []
        for kj in dec.Kj:
            img, _ = _frattini_image_line(dec, kj)
            images.append(img)
        kimg, _ = _frattini_image_line(dec, dec.K)
        sizes = {len(img) for img in images}
        all_equal = len(set(images)) == 1
        two_dim = sizes == {p * p}
        if all_equal and two_dim:
            if p == 2:
                # the predicted group (Z/p)^(p-2) is trivial for p = 2
                return Classification(
                    "NoPrimitive", INV_TRIVIAL, p,
                    witness={"reason": "direct-product case with p = 2", "dec": dec},
                )
            return Classification(
                "Case4b", inv_mod(p, p - 2), p,
                witness={"dec": dec, "complement": direct_complement},
            )
        return Classification(
            "NoPrimitive", INV_TRIVIAL, p,
            witness={"reason": "kernel images in the Frattini quotient too small or unequal", "dec": dec},
        )
    graph = gamma_graph(dec)
    d = graph.component_count
    if d >= 2:
        return Classification(
            "Case4c", inv_mod(p, d - 1), p, witness={"dec": dec, "graph": graph}
        )
    return Classification(
        "NoPrimitive", INV_TRIVIAL, p,
        witness={"reason": "component graph is connected", "dec": dec, "graph": graph},
    )


# -- explicit relation builders ---------------------------------------------


def _cls(table: SubgroupClassTable, H: SubgroupHandle) -> int:
    return table.class_index(H.elements)


def _check(theta: BurnsideElement, what: str) -> BurnsideElement:
    from .burnside import is_relation

    if not is_relation(theta):
        raise InternalCheckError(f"{what} builder produced a non-relation")
    return theta


def _squarefree_subgroups(C: SubgroupHandle) -> list[tuple[SubgroupHandle, int]]:
    """(U, μ(|U|)) for the subgroups of squarefree order of a cyclic C."""
    n = C.order
    out = []
    for d in range(1, n + 1):
        if n % d:
            continue
        m = mobius(d)
        if m:
            out.append((_cyclic_part(C, d), m))
    return out


def _mobius_sum(
    table: SubgroupClassTable,
    C: SubgroupHandle,
    terms: list[tuple[SubgroupHandle, int]],
) -> BurnsideElement:
    """Σ_i n_i Σ_{U ≤ C} μ(|U|) [H_i·U] for cyclic C normalized by the H_i."""
    coeffs: dict[int, int] = {}
    units = _squarefree_subgroups(C)
    for H, n in terms:
        if n == 0:
            continue
        for U, m in units:
            j = _cls(table, H.join(U))
            coeffs[j] = coeffs.get(j, 0) + n * m
    return BurnsideElement(table, coeffs)


def _complement_of(table: SubgroupClassTable, C: SubgroupHandle) -> SubgroupHandle:
    G = table.ambient
    want = G.order // C.order
    for H in G.all_subgroups:
        if H.order == want and len(H.elements & C.elements) == 1:
            return H
    raise ShapeError("normal cyclic subgroup has no complement")


def build_cpcp(table: SubgroupClassTable) -> BurnsideElement:
    """[1] − Σ_C [G/C] + p[G/G] over the order-p subgroups of C_p × C_p."""
    G = table.ambient
    ok, p = is_cp_times_cp(G)
    if not ok:
        raise ShapeError("group is not C_p x C_p")
    coeffs = {0: 1, table.n_classes - 1: p}
    for i, rep in enumerate(table.class_reps):
        if rep.order == p:
            coeffs[i] = -1
    return _check(BurnsideElement(table, coeffs), "cpcp")


def build_dihedral(table: SubgroupClassTable) -> BurnsideElement:
    """[I] − [IZ] − [J] + [JZ] for the two reflection classes of a dihedral
    2-group, Z the centre."""
    G = table.ambient
    if not is_dihedral_2group(G):
        raise ShapeError("group is not dihedral of 2-power order >= 8")
    Z = G.centre()
    refl = [
        i
        for i, rep in enumerate(table.class_reps)
        if rep.order == 2 and rep.elements != Z.elements
    ]
    if len(refl) != 2:
        raise InternalCheckError("dihedral group without two reflection classes")
    I, J = (table.class_reps[i] for i in refl)
    coeffs: dict[int, int] = {}
    for H, s in ((I, 1), (I.join(Z), -1), (J, -1), (J.join(Z), 1)):
        j = _cls(table, H)
        coeffs[j] = coeffs.get(j, 0) + s
    return _check(BurnsideElement(table, coeffs), "dihedral")


def build_heisenberg(table: SubgroupClassTable, j: int = 1) -> BurnsideElement:
    """[⟨y⟩] − [⟨xy^j⟩] − [⟨y,z⟩] + [⟨xy^j,z⟩] in the exponent-p group of
    order p^3, z central, 1 <= j <= p."""
    G = table.ambient
    ok, p = is_heisenberg(G)
    if not ok:
        raise ShapeError("group is not the exponent-p group of order p^3")
    if not 1 <= j <= p:
        raise ShapeError(f"parameter j={j} out of range 1..{p}")
    Z = G.centre()
    z = next(g for g in Z.elements if perm_order(g) == p)
    els = sorted(G.elements)
    y = next(g for g in els if g not in Z.elements)
    x = next(g for g in els if mul(g, y) != mul(y, g))
    w = x
    for _ in range(j):
        w = mul(w, y)
    Y = G.subgroup(gens=[y])
    W = G.subgroup(gens=[w])
    coeffs: dict[int, int] = {}
    for H, s in ((Y, 1), (W, -1), (Y.join(Z), -1), (W.join(Z), 1)):
        i = _cls(table, H)
        coeffs[i] = coeffs.get(i, 0) + s
    return _check(BurnsideElement(table, coeffs), "heisenberg")


def build_cyclic_semidirect(
    table: SubgroupClassTable,
    H: SubgroupHandle,
    Htilde: SubgroupHandle,
    C: SubgroupHandle,
) -> BurnsideElement:
    """[H̃] − [H:H̃][H] − [C·H̃] + [H:H̃][G] for G = C ⋊ H, H̃ ≤ H."""
    G = table.ambient
    if C.order * H.order != G.order or len(C.elements & H.elements) != 1:
        raise ShapeError("H is not a complement of C")
    if not Htilde.elements <= H.elements:
        raise ShapeError("Htilde is not contained in H")
    idx = H.order // Htilde.order
    coeffs: dict[int, int] = {}
    for S, s in (
        (Htilde, 1),
        (H, -idx),
        (C.join(Htilde), -1),
        (G.full_subgroup(), idx),
    ):
        i = _cls(table, S)
        coeffs[i] = coeffs.get(i, 0) + s
    return _check(BurnsideElement(table, coeffs), "cyclic_semidirect")


def build_g20_prime_power(table: SubgroupClassTable) -> BurnsideElement:
    """[C_{p^{k−1}}] − p[H] − [C·C_{p^{k−1}}] + p[G] for G = C_l ⋊ H with
    H cyclic of order p^k acting faithfully."""
    G = table.ambient
    dec = qe_decomposition(G)
    if dec is None or dec.K.order != 1 or dec.t != 1 or not dec.P.is_cyclic():
        raise ShapeError("group is not C_l with a faithful cyclic p-group on top")
    H = dec.P
    Hm = _cyclic_part(H, H.order // dec.p)
    theta = build_cyclic_semidirect(table, H, Hm, dec.C)
    return _check(theta, "g20_prime_power")


def build_g20_composite(table: SubgroupClassTable) -> BurnsideElement:
    """[G] − [H] + α([C_n] − [C·C_n]) + β([C_m] − [C·C_m]) with αm + βn = 1
    for G = C_l ⋊ H, H cyclic of composite order mn with gcd(m, n) = 1."""
    G = table.ambient
    C = None
    for N in G.normal_subgroups:
        if N.order > 1 and len(prime_factors(N.order)) == 1 and N.order == prime_factors(N.order)[0]:
            Q, _ = G.quotient(N)
            if Q.is_cyclic():
                C = N
                break
    if C is None:
        raise ShapeError("no normal subgroup of prime order with cyclic quotient")
    H = _complement_of(table, C)
    if not H.is_cyclic():
        raise ShapeError("complement is not cyclic")
    ps = prime_factors(H.order)
    if len(ps) < 2:
        raise ShapeError("complement order is a prime power; use g20_prime_power")
    m = p_part(H.order, ps[0])
    n = H.order // m
    alpha = pow(m, -1, n)
    beta = (1 - alpha * m) // n
    Cn = _cyclic_part(H, n)
    Cm = _cyclic_part(H, m)
    coeffs: dict[int, int] = {}
    for S, s in (
        (G.full_subgroup(), 1),
        (H, -1),
        (Cn, alpha),
        (C.join(Cn), -alpha),
        (Cm, beta),
        (C.join(Cm), -beta),
    ):
        i = _cls(table, S)
        coeffs[i] = coeffs.get(i, 0) + s
    return _check(BurnsideElement(table, coeffs), "g20_composite")


def build_serre(
    table: SubgroupClassTable,
    W: SubgroupHandle | None = None,
    H: SubgroupHandle | None = None,
) -> BurnsideElement:
    """[G] − [H] + Σ_U ([N_H(U)·U] − [N_H(U)·W]) over hyperplanes U of W up
    to conjugacy, for G = W ⋊ H with W elementary abelian of rank >= 2."""
    G = table.ambient
    if W is None:
        for N in G.normal_subgroups:
            ps = prime_factors(N.order)
            if (
                len(ps) == 1
                and N.order > ps[0]
                and N.as_group().is_elementary_abelian_p(ps[0])
            ):
                W = N
                break
    if W is None:
        raise ShapeError("no normal elementary abelian subgroup of rank >= 2")
    l = prime_factors(W.order)[0]
    if H is None:
        H = _complement_of(table, W)
    hyps: dict[int, SubgroupHandle] = {}
    for U in W.as_group().all_subgroups:
        if U.order * l != W.order:
            continue
        Ug = SubgroupHandle(G, U.elements, U.gens)
        hyps.setdefault(_cls(table, Ug), Ug)
    coeffs: dict[int, int] = {}
    for S, s in ((G.full_subgroup(), 1), (H, -1)):
        i = _cls(table, S)
        coeffs[i] = coeffs.get(i, 0) + s
    for Ug in hyps.values():
        stab = frozenset(
            h for h in H.elements if G.conjugate_set(Ug.elements, h) == Ug.elements
        )
        HU = SubgroupHandle(G, stab, ())
        for S, s in ((HU.join(Ug), 1), (HU.join(W), -1)):
            i = _cls(table, S)
            coeffs[i] = coeffs.get(i, 0) + s
    return _check(BurnsideElement(table, coeffs), "serre")


def build_mod_c(
    table: SubgroupClassTable,
    terms: list[tuple[SubgroupHandle, int]],
    dec: QEDecomposition | None = None,
) -> BurnsideElement:
    """Σ_i n_i Σ_{U ≤ Ĉ} μ(|U|)[H_i·U]; a relation exactly when
    Σ n_i/|H_i| = 0."""
    from fractions import Fraction

    if dec is None:
        dec = qe_decomposition(table.ambient)
    if dec is None:
        raise ShapeError("group is not quasi-elementary")
    total = sum(Fraction(n, H.order) for H, n in terms)
    if total != 0:
        raise ShapeError(f"Σ n_i/|H_i| = {total} != 0: not a relation")
    return _check(_mobius_sum(table, dec.Chat, terms), "mod_c")


def build_case4a(table: SubgroupClassTable, case: Classification | None = None) -> BurnsideElement:
    """Σ_{U ≤ C} μ(|U|)([M·U] − [M'·U]) for the all-ones and all-zeros
    signature subgroups M, M' of index p in P."""
    if case is None:
        case = classify(table.ambient)
    if case.tag != "Case4a":
        raise ShapeError(f"group classifies as {case.tag}, not Case4a")
    dec = case.witness["dec"]
    M, M2 = case.witness["M"], case.witness["M'"]
    theta = _mobius_sum(table, dec.C, [(M, 1), (M2, -1)])
    return _check(theta, "case4a")


def _case4b_flags(case: Classification) -> list[SubgroupHandle]:
    """Index-p subgroups of P not containing K, one per line of the
    Frattini quotient cut out by K_1, excluding the line of K."""
    dec = case.witness["dec"]
    kline, _ = _frattini_image_line(dec, dec.K)
    chosen: dict[frozenset, SubgroupHandle] = {}
    for H in index_p_subgroups(dec):
        if dec.K.elements <= H.elements:
            continue
        cut = H.intersect(dec.Kj[0])
        line, _ = _frattini_image_line(dec, cut)
        if line == kline or len(line) != dec.p:
            continue
        chosen.setdefault(line, H)
    out = sorted(chosen.values(), key=lambda h: h.key)
    if len(out) < dec.p - 1:
        raise InternalCheckError("fewer than p-1 usable index-p subgroups in case 4b")
    return out[: dec.p - 1]


def build_case4b(
    table: SubgroupClassTable, i: int, case: Classification | None = None
) -> BurnsideElement:
    """Σ_{U ≤ C·C_K} μ(|U|)([H_1·U] − [H_i·U]) for 1 < i < p."""
    if case is None:
        case = classify(table.ambient)
    if case.tag != "Case4b":
        raise ShapeError(f"group classifies as {case.tag}, not Case4b")
    dec = case.witness["dec"]
    if not 1 < i < dec.p:
        raise ShapeError(f"index i={i} out of range 2..{dec.p - 1}")
    flags = _case4b_flags(case)
    rng = dec.C.join(dec.CK)
    theta = _mobius_sum(table, rng, [(flags[0], 1), (flags[i - 1], -1)])
    return _check(theta, "case4b")


def build_case4c(
    table: SubgroupClassTable, i: int, case: Classification | None = None
) -> BurnsideElement:
    """Σ_{U ≤ Ĉ} μ(|U|)([H_1·U] − [H_i·U]) for representatives H_1, H_i of
    distinct components of the graph, 2 <= i <= d."""
    if case is None:
        case = classify(table.ambient)
    if case.tag != "Case4c":
        raise ShapeError(f"group classifies as {case.tag}, not Case4c")
    dec = case.witness["dec"]
    graph: GammaGraph = case.witness["graph"]
    d = graph.component_count
    if not 2 <= i <= d:
        raise ShapeError(f"index i={i} out of range 2..{d}")
    H1 = graph.vertices[graph.components[0][0]]
    Hi = graph.vertices[graph.components[i - 1][0]]
    theta = _mobius_sum(table, dec.Chat, [(H1, 1), (Hi, -1)])
    return _check(theta, "case4c")


def build_complement_subgroup(
    table: SubgroupClassTable, H: SubgroupHandle
) -> BurnsideElement:
    """[Q:H][G] − [Q:H][Q] + [H] − [C·H] for G = C ⋊ Q with C of prime
    order and H ≤ Q."""
    G = table.ambient
    C = None
    for N in G.normal_subgroups:
        ps = prime_factors(N.order)
        if len(ps) == 1 and N.order == ps[0]:
            Q, _ = G.quotient(N)
            C = N
            break
    if C is None:
        raise ShapeError("no normal subgroup of prime order")
    Qh = _complement_of(table, C)
    if not H.elements <= Qh.elements:
        # conjugate H into the chosen complement if possible
        for g in sorted(G.elements):
            if G.conjugate_set(H.elements, g) <= Qh.elements:
                H = SubgroupHandle(G, G.conjugate_set(H.elements, g), ())
                break
        else:
            raise ShapeError("H is not conjugate into a complement of C")
    idx = Qh.order // H.order
    coeffs: dict[int, int] = {}
    for S, s in (
        (G.full_subgroup(), idx),
        (Qh, -idx),
        (H, 1),
        (C.join(H), -1),
    ):
        i = _cls(table, S)
        coeffs[i] = coeffs.get(i, 0) + s
    return _check(BurnsideElement(table, coeffs), "complement_subgroup")


def build_mobius_pair(
    table: SubgroupClassTable, H: SubgroupHandle, H2: SubgroupHandle
) -> BurnsideElement:
    """Σ_{U ≤ C} μ(|U|)([U·H] − [U·H2]) for G = C ⋊ Q with C cyclic, Q an
    abelian p-group, |H| = |H2|, both meeting C trivially."""
    G = table.ambient
    dec = qe_decomposition(G)
    if dec is None:
        raise ShapeError("group is not quasi-elementary")
    if not dec.P.is_abelian():
        raise ShapeError("Sylow complement is not abelian")
    if H.order != H2.order:
        raise ShapeError("the two subgroups must have equal order")
    for S in (H, H2):
        if len(S.elements & dec.C.elements) != 1:
            raise ShapeError("subgroup meets the normal cyclic part nontrivially")
    theta = _mobius_sum(table, dec.C, [(H, 1), (H2, -1)])
    return _check(theta, "mobius_pair")


_BUILDERS = {
    "cpcp": build_cpcp,
    "dihedral": build_dihedral,
    "heisenberg": build_heisenberg,
    "cyclic_semidirect": build_cyclic_semidirect,
    "g20_prime_power": build_g20_prime_power,
    "g20_composite": build_g20_composite,
    "serre": build_serre,
    "mod_c": build_mod_c,
    "case4a": build_case4a,
    "case4b": build_case4b,
    "case4c": build_case4c,
    "complement_subgroup": build_complement_subgroup,
    "mobius_pair": build_mobius_pair,
}


def build_relation(kind: str, table: SubgroupClassTable, **params) -> BurnsideElement:
    """Dispatch to a named explicit construction; see the individual
    build_* functions for parameters."""
    try:
        fn = _BUILDERS[kind]
    except KeyError:
        raise ShapeError(f"unknown relation kind {kind!r}") from None
    return fn(table, **params)


def primitive_generators(
    table: SubgroupClassTable, case: Classification | None = None
) -> list[BurnsideElement]:
    """Explicit relations whose classes generate the primitive quotient
    for the classified case; empty when the quotient is trivial."""
    G = table.ambient
    if case is None:
        case = classify(G)
    if case.tag in ("Cyclic", "NoPrimitive"):
        return []
    if case.tag == "Dihedral2n":
        return [build_dihedral(table)]
    if case.tag == "Heisenberg":
        return [build_heisenberg(table, j) for j in range(1, case.p + 1)]
    if case.tag in ("Case3a", "Case3b"):
        if G.is_p_group()[0]:
            return [build_cpcp(table)]
        if is_quasi_elementary(G):
            if G.sylow_subgroup(case.p).is_cyclic():
                return [build_g20_prime_power(table)]
            raise InternalCheckError("quasi-elementary case 3a with noncyclic P")
        theta = solomon_relation(table)
        if theta is None:
            raise InternalCheckError("no coefficient-one relation in case 3")
        return [theta]
    if case.tag == "Case4a":
        return [build_case4a(table, case)]
    if case.tag == "Case4b":
        return [build_case4b(table, i, case) for i in range(2, case.p)]
    if case.tag == "Case4c":
        d = case.witness["graph"].component_count
        return [build_case4c(table, i, case) for i in range(2, d + 1)]
    raise InternalCheckError(f"unhandled case tag {case.tag}")


@dataclass
class ClassificationReport:
    case: Classification
    predicted: AbelianInvariants
    computed: AbelianInvariants
    match: bool
    generators: list
    generators_span: bool


def verify_classification(G, structure=None) -> ClassificationReport:
    """Classify, compute the primitive quotient, and check the prediction
    and that the explicit relations generate it over the imprimitive part."""
    from .intlinalg import quotient_invariants
    from .primitivity import PrimStructure, prim_structure
    from .relations import _table_of

    if structure is None:
        structure = prim_structure(_table_of(G))
    table = structure.table
    case = classify(table.ambient)
    gens = primitive_generators(table, case)
    rows = list(structure.imprimitive_rows) + [g.as_vector() for g in gens]
    span_inv = quotient_invariants(structure.kernel.basis_rows, rows)
    span_ok = span_inv.free_rank == 0 and not span_inv.torsion
    return ClassificationReport(
        case=case,
        predicted=case.predicted,
        computed=structure.invariants,
        match=case.predicted == structure.invariants,
        generators=gens,
        generators_span=span_ok,
    )
