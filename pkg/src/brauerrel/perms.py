"""Permutations on {0..n-1} as image tuples, with cycle-notation I/O."""

from __future__ import annotations

import re

Perm = tuple[int, ...]


def identity(degree: int) -> Perm:
    return tuple(range(degree))


def is_perm(images, degree: int) -> bool:
    return len(images) == degree and sorted(images) == list(range(degree))


def mul(p: Perm, q: Perm) -> Perm:
    """Composition p*q = apply q first, then p."""
    return tuple(map(p.__getitem__, q))


def inv(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def conj(p: Perm, g: Perm) -> Perm:
    """g p g^-1."""
    return mul(mul(g, p), inv(g))


def perm_order(p: Perm) -> int:
    from math import lcm

    seen = [False] * len(p)
    order = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        order = lcm(order, length)
    return order


class Permutation:
    """A bijection of {0..degree-1}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation of 0..{len(images) - 1}: {images}")
        self.images = images

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation(mul(self.images, other.images))

    def inverse(self) -> "Permutation":
        return Permutation(inv(self.images))

    def order(self) -> int:
        return perm_order(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self.images)!r})"


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Perm:
    """Parse disjoint-cycle notation like '(0 1 2)(3 4)'; '()' is the identity."""
    text = text.strip()
    if not text:
        raise ValueError("empty permutation string")
    stripped = text.replace(" ", "")
    consumed = "".join(_CYCLE_RE.findall(text))
    if _CYCLE_RE.sub("", stripped) != "":
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(degree))
    for body in _CYCLE_RE.findall(text):
        pts = [int(tok) for tok in re.split(r"[,\s]+", body.strip()) if tok]
        if not pts:
            continue
        if any(p < 0 or p >= degree for p in pts):
            raise ValueError(f"point out of range for degree {degree}: {body!r}")
        if len(set(pts)) != len(pts):
            raise ValueError(f"repeated point in cycle: {body!r}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            if images[a] != a:
                raise ValueError(f"cycles are not disjoint at point {a}")
            images[a] = b
    _ = consumed
    return tuple(images)


def format_cycles(p: Perm) -> str:
    """Disjoint-cycle string; identity is '()'."""
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        seen.add(i)
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) if out else "()"
