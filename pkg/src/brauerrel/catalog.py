"""Named group catalog, the group text format, and the verification corpus.

Grammar: ``C<n>``, ``C<n>xC<m>`` (and longer products), ``D<2n>``,
``Q8``/``Q16``, ``SD16``, ``Heis<p>``, ``SL(2,3)``, ``A4``/``S4``/``A5``,
``F20``, ``sd:<C>:<P>:<matrix>`` for split metacyclic-style products with
an explicit exponent action, and ``wr:C<n>:C<m>`` for wreath products.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ShapeError
from .groups import (
    PermGroup,
    cyclic_group,
    direct_sum_perm,
    group_from_generators,
    prime_factors,
    semidirect_product,
)
from .perms import parse_cycles


def _abelian_product(orders: list[int]) -> PermGroup:
    total = sum(orders)
    gens = []
    off = 0
    for n in orders:
        cyc = tuple((i + 1) % n for i in range(n))
        gens.append(direct_sum_perm([(off, cyc)], total))
        off += n
    return group_from_generators(total, gens)


def _dihedral(n: int) -> PermGroup:
    if n < 3:
        raise ShapeError("dihedral groups here have order at least 6")
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((-i) % n for i in range(n))
    return group_from_generators(n, [rot, flip])


def _heisenberg(p: int) -> PermGroup:
    """Order p^3 and exponent p, acting on pairs (a, b) over F_p."""
    if p < 3 or len(prime_factors(p)) != 1 or prime_factors(p)[0] != p:
        raise ShapeError("Heis<p> needs an odd prime p")
    x = tuple((((a + 1) % p) * p + b) for a in range(p) for b in range(p))
    y = tuple((a * p + (b + a) % p) for a in range(p) for b in range(p))
    return group_from_generators(p * p, [x, y])


def _quaternion(order: int) -> PermGroup:
    """Generalized quaternion of order 4m on its own elements a^i b^e."""
    if order % 4 or order < 8:
        raise ShapeError("generalized quaternion order must be a multiple of 4, >= 8")
    n = order // 2          # |a| = n, b^2 = a^(n/2)
    half = n // 2

    def idx(i: int, e: int) -> int:
        return (i % n) * 2 + e

    # left multiplication by a and by b in the Cayley action
    pa = [0] * order
    pb = [0] * order
    for i in range(n):
        for e in (0, 1):
            pa[idx(i, e)] = idx(i + 1, e)
            if e == 0:
                pb[idx(i, e)] = idx(-i, 1)
            else:
                pb[idx(i, e)] = idx(half - i, 0)
    return group_from_generators(order, [tuple(pa), tuple(pb)])


def _semidihedral16() -> PermGroup:
    return semidirect_product(
        cyclic_group(8),
        cyclic_group(2),
        [tuple((3 * i) % 8 for i in range(8))],
    )


def _sl23() -> PermGroup:
    """SL(2,3) on the eight nonzero vectors of F_3^2."""
    vecs = [(x, y) for x in range(3) for y in range(3) if (x, y) != (0, 0)]
    pos = {v: i for i, v in enumerate(vecs)}

    def mat_perm(a, b, c, d):
        return tuple(
            pos[((a * x + b * y) % 3, (c * x + d * y) % 3)] for x, y in vecs
        )

    s = mat_perm(0, 2, 1, 0)
    t = mat_perm(1, 1, 0, 1)
    return group_from_generators(8, [s, t])


def _alternating(n: int) -> PermGroup:
    if n == 4:
        gens = ["(0 1 2)", "(0 1)(2 3)"]
    elif n == 5:
        gens = ["(0 1 2 3 4)", "(0 1 2)"]
    else:
        raise ShapeError("only A4 and A5 are in the catalog")
    return group_from_generators(n, [parse_cycles(g, n) for g in gens])


def _symmetric4() -> PermGroup:
    return group_from_generators(
        4, [parse_cycles("(0 1 2 3)", 4), parse_cycles("(0 1)", 4)]
    )


def _cyclic_orders(spec: str) -> list[int]:
    orders = []
    for part in spec.split("x"):
        m = re.fullmatch(r"C(\d+)", part)
        if not m or int(m.group(1)) < 1:
            raise ShapeError(f"bad cyclic factor {part!r} in {spec!r}")
        orders.append(int(m.group(1)))
    return orders


def _sd_spec(c_spec: str, p_spec: str, matrix: str) -> PermGroup:
    """sd:<C>:<P>:<matrix> with one ','-separated exponent row per
    P-generator and one column per C-factor; P-generator r sends the s-th
    factor's generator to its k_{rs}-th power."""
    c_orders = _cyclic_orders(c_spec)
    p_orders = _cyclic_orders(p_spec)
    rows = []
    for row in matrix.split(";"):
        rows.append([int(tok) for tok in row.split(",")])
    if len(rows) != len(p_orders) or any(len(r) != len(c_orders) for r in rows):
        raise ShapeError("action matrix shape does not match the factor counts")
    C = _abelian_product(c_orders)
    P = _abelian_product(p_orders)
    total = C.degree
    offsets = []
    off = 0
    for n in c_orders:
        offsets.append(off)
        off += n
    action = []
    for row in rows:
        parts = []
        for (o, n), k in zip(zip(offsets, c_orders), row):
            parts.append((o, tuple((k * i) % n for i in range(n))))
        action.append(direct_sum_perm(parts, total))
    return semidirect_product(C, P, action)


def _wreath_cyclic(n: int, m: int) -> PermGroup:
    """C_n wr C_m on n·m points: m blocks of size n with C_m rotating the
    blocks."""
    total = n * m
    base = tuple(
        ((i + 1) % n if b == 0 else i) + b * n for b in range(m) for i in range(n)
    )
    top = tuple(i + n * ((i // n + 1) % m) - n * (i // n) for i in range(total))
    return group_from_generators(total, [base, top])


_FIXED = {
    "Q8": lambda: _quaternion(8),
    "Q16": lambda: _quaternion(16),
    "SD16": _semidihedral16,
    "SL(2,3)": _sl23,
    "A4": lambda: _alternating(4),
    "A5": lambda: _alternating(5),
    "S4": _symmetric4,
    "F20": lambda: _sd_spec("C5", "C4", "2"),
}


def parse_group_spec(text: str) -> PermGroup:
    """Deterministic permutation realization of a catalog name."""
    text = text.strip()
    if text in _FIXED:
        return _FIXED[text]()
    m = re.fullmatch(r"C(\d+)", text)
    if m:
        n = int(m.group(1))
        if n < 1:
            raise ShapeError("cyclic order must be positive")
        return cyclic_group(n)
    if re.fullmatch(r"C\d+(xC\d+)+", text):
        return _abelian_product(_cyclic_orders(text))
    m = re.fullmatch(r"D(\d+)", text)
    if m:
        order = int(m.group(1))
        if order % 2:
            raise ShapeError("dihedral order must be even")
        return _dihedral(order // 2)
    m = re.fullmatch(r"Heis(\d+)", text)
    if m:
        return _heisenberg(int(m.group(1)))
    m = re.fullmatch(r"sd:([^:]+):([^:]+):(.+)", text)
    if m:
        return _sd_spec(m.group(1), m.group(2), m.group(3))
    m = re.fullmatch(r"wr:C(\d+):C(\d+)", text)
    if m:
        return _wreath_cyclic(int(m.group(1)), int(m.group(2)))
    raise ShapeError(f"unknown group spec {text!r}")


def group_from_file(path) -> PermGroup:
    """Group text format: a `degree n` header line, then one generator per
    line in cycle notation ('()' for the identity)."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip() and not ln.startswith("#")]
    if not lines or not lines[0].startswith("degree"):
        raise ShapeError("group file must start with a 'degree n' line")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ShapeError("malformed degree line") from None
    gens = [parse_cycles(ln, degree) for ln in lines[1:]]
    return group_from_generators(degree, gens)


# -- the verification corpus ------------------------------------------------


@dataclass(frozen=True)
class CorpusEntry:
    spec: str
    tag: str                 # expected classification tag
    invariants: str          # expected Prim invariants, str() form
    slow: bool = False
    prim_optional: bool = False


def _grammar_specs() -> list[str]:
    specs = [f"C{n}" for n in range(1, 49)]
    for n in range(2, 49):
        for m in range(n, 49):
            if n * m > 48:
                break
            from math import gcd

            if gcd(n, m) > 1:
                specs.append(f"C{n}xC{m}")
    specs += [f"D{o}" for o in range(6, 49, 2)]
    return specs


_NAMED_EXTRAS = [
    "Q8",
    "Q16",
    "SD16",
    "Heis3",
    "SL(2,3)",
    "A4",
    "S4",
    "A5",
    "F20",
    "sd:C7:C3:2",              # C7 x| C3
    "sd:C7:C3xC3:2;1",         # C7 x| (C3 x C3), one factor acting
    "sd:C5:C4xC4:2;1",         # C5 x| (C4 x C4)
    "sd:C5xC13:C4xC2:2,5;4,1",  # the order-520 two-prime example
    "sd:C5:C8:2",              # C5 x| C8 acting through C4
    "sd:C15:C4:2",             # (C3 x C5) x| C4 with one generator
    "sd:C7:C6:3",              # C7 x| C6, faithful composite-order action
]


def standard_corpus() -> list[CorpusEntry]:
    """All grammar groups of order <= 48 plus the named extras, with the
    frozen expected classification for each."""
    entries = []
    for spec in _grammar_specs() + _NAMED_EXTRAS:
        tag, inv = _EXPECTED[spec]
        entries.append(CorpusEntry(spec, tag, inv))
    tag, inv = _EXPECTED["Heis5"]
    entries.append(CorpusEntry("Heis5", tag, inv, slow=True))
    return entries


def extended_corpus() -> list[CorpusEntry]:
    out = standard_corpus()
    tag, inv = _EXPECTED["wr:C3:C4"]
    out.append(CorpusEntry("wr:C3:C4", tag, inv, slow=True, prim_optional=True))
    return out


# Frozen expectations (spec -> (tag, str(Prim invariants))), generated once
# and spot-checked against the hand-worked cases; regenerate with
# tools/freeze_corpus.py after any classifier change.
_EXPECTED: dict[str, tuple[str, str]] = {
    "C1": ("Cyclic", "0"),
    "C2": ("Cyclic", "0"),
    "C3": ("Cyclic", "0"),
    "C4": ("Cyclic", "0"),
    "C5": ("Cyclic", "0"),
    "C6": ("Cyclic", "0"),
    "C7": ("Cyclic", "0"),
    "C8": ("Cyclic", "0"),
    "C9": ("Cyclic", "0"),
    "C10": ("Cyclic", "0"),
    "C11": ("Cyclic", "0"),
    "C12": ("Cyclic", "0"),
    "C13": ("Cyclic", "0"),
    "C14": ("Cyclic", "0"),
    "C15": ("Cyclic", "0"),
    "C16": ("Cyclic", "0"),
    "C17": ("Cyclic", "0"),
    "C18": ("Cyclic", "0"),
    "C19": ("Cyclic", "0"),
    "C20": ("Cyclic", "0"),
    "C21": ("Cyclic", "0"),
    "C22": ("Cyclic", "0"),
    "C23": ("Cyclic", "0"),
    "C24": ("Cyclic", "0"),
    "C25": ("Cyclic", "0"),
    "C26": ("Cyclic", "0"),
    "C27": ("Cyclic", "0"),
    "C28": ("Cyclic", "0"),
    "C29": ("Cyclic", "0"),
    "C30": ("Cyclic", "0"),
    "C31": ("Cyclic", "0"),
    "C32": ("Cyclic", "0"),
    "C33": ("Cyclic", "0"),
    "C34": ("Cyclic", "0"),
    "C35": ("Cyclic", "0"),
    "C36": ("Cyclic", "0"),
    "C37": ("Cyclic", "0"),
    "C38": ("Cyclic", "0"),
    "C39": ("Cyclic", "0"),
    "C40": ("Cyclic", "0"),
    "C41": ("Cyclic", "0"),
    "C42": ("Cyclic", "0"),
    "C43": ("Cyclic", "0"),
    "C44": ("Cyclic", "0"),
    "C45": ("Cyclic", "0"),
    "C46": ("Cyclic", "0"),
    "C47": ("Cyclic", "0"),
    "C48": ("Cyclic", "0"),
    "C2xC2": ("Case3a", "Z"),
    "C2xC4": ("NoPrimitive", "0"),
    "C2xC6": ("NoPrimitive", "0"),
    "C2xC8": ("NoPrimitive", "0"),
    "C2xC10": ("NoPrimitive", "0"),
    "C2xC12": ("NoPrimitive", "0"),
    "C2xC14": ("NoPrimitive", "0"),
    "C2xC16": ("NoPrimitive", "0"),
    "C2xC18": ("NoPrimitive", "0"),
    "C2xC20": ("NoPrimitive", "0"),
    "C2xC22": ("NoPrimitive", "0"),
    "C2xC24": ("NoPrimitive", "0"),
    "C3xC3": ("Case3a", "Z"),
    "C3xC6": ("NoPrimitive", "0"),
    "C3xC9": ("NoPrimitive", "0"),
    "C3xC12": ("NoPrimitive", "0"),
    "C3xC15": ("NoPrimitive", "0"),
    "C4xC4": ("NoPrimitive", "0"),
    "C4xC6": ("NoPrimitive", "0"),
    "C4xC8": ("NoPrimitive", "0"),
    "C4xC10": ("NoPrimitive", "0"),
    "C4xC12": ("NoPrimitive", "0"),
    "C5xC5": ("Case3a", "Z"),
    "C6xC6": ("NoPrimitive", "0"),
    "C6xC8": ("NoPrimitive", "0"),
    "D6": ("Case3a", "Z"),
    "D8": ("Dihedral2n", "Z/2"),
    "D10": ("Case3a", "Z"),
    "D12": ("NoPrimitive", "0"),
    "D14": ("Case3a", "Z"),
    "D16": ("Dihedral2n", "Z/2"),
    "D18": ("NoPrimitive", "0"),
    "D20": ("NoPrimitive", "0"),
    "D22": ("Case3a", "Z"),
    "D24": ("NoPrimitive", "0"),
    "D26": ("Case3a", "Z"),
    "D28": ("NoPrimitive", "0"),
    "D30": ("NoPrimitive", "0"),
    "D32": ("Dihedral2n", "Z/2"),
    "D34": ("Case3a", "Z"),
    "D36": ("NoPrimitive", "0"),
    "D38": ("Case3a", "Z"),
    "D40": ("NoPrimitive", "0"),
    "D42": ("NoPrimitive", "0"),
    "D44": ("NoPrimitive", "0"),
    "D46": ("Case3a", "Z"),
    "D48": ("NoPrimitive", "0"),
    "Q8": ("NoPrimitive", "0"),
    "Q16": ("NoPrimitive", "0"),
    "SD16": ("NoPrimitive", "0"),
    "Heis3": ("Heisenberg", "Z/3 x Z/3 x Z/3"),
    "SL(2,3)": ("NoPrimitive", "0"),
    "A4": ("Case3a", "Z"),
    "S4": ("Case3a", "Z/2"),
    "A5": ("Case3a", "Z"),
    "F20": ("Case3a", "Z"),
    "sd:C7:C3:2": ("Case3a", "Z"),
    "sd:C7:C3xC3:2;1": ("Case4b", "Z/3"),
    "sd:C5:C4xC4:2;1": ("Case4c", "Z/2"),
    "sd:C5xC13:C4xC2:2,5;4,1": ("Case4a", "Z/2"),
    "sd:C5:C8:2": ("NoPrimitive", "0"),
    "sd:C15:C4:2": ("NoPrimitive", "0"),
    "sd:C7:C6:3": ("Case3a", "Z"),
    "Heis5": ("Heisenberg", "Z/5 x Z/5 x Z/5 x Z/5 x Z/5"),
    "wr:C3:C4": ("NoPrimitive", "0"),
}
