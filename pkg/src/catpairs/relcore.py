"""Finite binary relations on the ground set ``0..n-1``.

A relation is stored as a single integer bitmask: bit ``x*n + y`` is set
iff ``x θ y``.  Rows are extracted on demand, so values stay small enough
to hold every Catalan pair up to n=12 in memory at once.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence


class DimensionError(ValueError):
    """Raised when relations over different ground-set sizes are combined."""


def _row_mask(n: int) -> int:
    return (1 << n) - 1


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True, slots=True)
class BinaryRelation:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative ground-set size {self.n}")
        if self.bits < 0 or self.bits >> (self.n * self.n):
            raise ValueError("incidence bits outside the n x n matrix")

    # construction

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[Sequence[int]]) -> BinaryRelation:
        bits = 0
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise ValueError(f"pair ({x}, {y}) out of range for n={n}")
            bits |= 1 << (x * n + y)
        return cls(n, bits)

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> BinaryRelation:
        n = len(rows)
        bits = 0
        for x, row in enumerate(rows):
            if row >> n:
                raise ValueError(f"row {x} has bits beyond column {n - 1}")
            bits |= row << (x * n)
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> BinaryRelation:
        return cls(n, 0)

    # access

    def row(self, x: int) -> int:
        """Bitmask of the successors of ``x``."""
        return (self.bits >> (x * self.n)) & _row_mask(self.n)

    def rows(self) -> list[int]:
        n, mask, bits = self.n, _row_mask(self.n), self.bits
        return [(bits >> (x * n)) & mask for x in range(n)]

    def column(self, y: int) -> int:
        col = 0
        for x, row in enumerate(self.rows()):
            if row >> y & 1:
                col |= 1 << x
        return col

    def __contains__(self, pair) -> bool:
        x, y = pair
        return bool(self.bits >> (x * self.n + y) & 1)

    def pairs(self) -> list[tuple[int, int]]:
        """All pairs, sorted lexicographically."""
        return [(x, y) for x, row in enumerate(self.rows()) for y in _iter_bits(row)]

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __le__(self, other: BinaryRelation) -> bool:
        _check_sizes(self, other)
        return self.bits & ~other.bits == 0

    def __or__(self, other: BinaryRelation) -> BinaryRelation:
        return union(self, other)

    def __and__(self, other: BinaryRelation) -> BinaryRelation:
        return intersect(self, other)

    def __sub__(self, other: BinaryRelation) -> BinaryRelation:
        _check_sizes(self, other)
        return BinaryRelation(self.n, self.bits & ~other.bits)

    def __repr__(self) -> str:
        return f"BinaryRelation(n={self.n}, pairs={self.pairs()})"

    # serialization

    def to_json_obj(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> BinaryRelation:
        return cls.from_pairs(int(obj["n"]), obj["pairs"])

    def to_matrix(self) -> list[list[bool]]:
        return [[bool(row >> y & 1) for y in range(self.n)] for row in self.rows()]


def _check_sizes(*rels: BinaryRelation) -> None:
    sizes = {r.n for r in rels}
    if len(sizes) > 1:
        raise DimensionError(f"ground-set sizes differ: {sorted(sizes)}")


def compose(a: BinaryRelation, b: BinaryRelation) -> BinaryRelation:
    """``x (a∘b) z`` iff there is ``y`` with ``x a y`` and ``y b z``."""
    _check_sizes(a, b)
    b_rows = b.rows()
    out = []
    for row in a.rows():
        acc = 0
        for y in _iter_bits(row):
            acc |= b_rows[y]
        out.append(acc)
    return BinaryRelation.from_rows(out)


def power(a: BinaryRelation, k: int) -> BinaryRelation:
    """k-fold composition ``a∘a∘...∘a`` (k >= 1)."""
    if k < 1:
        raise ValueError("power needs k >= 1")
    out = a
    for _ in range(k - 1):
        out = compose(out, a)
    return out


def inverse(a: BinaryRelation) -> BinaryRelation:
    rows = [0] * a.n
    for x, y in a.pairs():
        rows[y] |= 1 << x
    return BinaryRelation.from_rows(rows)


def union(a: BinaryRelation, b: BinaryRelation) -> BinaryRelation:
    _check_sizes(a, b)
    return BinaryRelation(a.n, a.bits | b.bits)


def intersect(a: BinaryRelation, b: BinaryRelation) -> BinaryRelation:
    _check_sizes(a, b)
    return BinaryRelation(a.n, a.bits & b.bits)


def symmetrize(a: BinaryRelation) -> BinaryRelation:
    return union(a, inverse(a))


def diagonal(n: int) -> BinaryRelation:
    return BinaryRelation.from_pairs(n, [(x, x) for x in range(n)])


def off_diagonal(n: int) -> BinaryRelation:
    """``X² ∖ 𝒟``."""
    full = (1 << (n * n)) - 1
    return BinaryRelation(n, full & ~diagonal(n).bits)


def diagonal_part(a: BinaryRelation) -> BinaryRelation:
    """𝒟(θ) = {(x, x) : x θ x}."""
    return intersect(a, diagonal(a.n))


def transitive_closure(a: BinaryRelation) -> BinaryRelation:
    # Warshall on row bitmasks
    rows = a.rows()
    for k in range(a.n):
        bit = 1 << k
        rk = rows[k]
        for i in range(a.n):
            if rows[i] & bit:
                rows[i] |= rk
    return BinaryRelation.from_rows(rows)


def is_transitive(a: BinaryRelation) -> bool:
    return compose(a, a) <= a


def is_irreflexive(a: BinaryRelation) -> bool:
    return not a.bits & diagonal(a.n).bits


def is_strict_order(a: BinaryRelation) -> bool:
    return is_irreflexive(a) and is_transitive(a)


def restrict(a: BinaryRelation, subset: Iterable[int]) -> BinaryRelation:
    """Induced relation on ``subset``, reindexed in increasing order."""
    idx = sorted(set(subset))
    for v in idx:
        if not 0 <= v < a.n:
            raise ValueError(f"index {v} out of range for n={a.n}")
    rows = a.rows()
    out = []
    for x in idx:
        r = 0
        for j, y in enumerate(idx):
            if rows[x] >> y & 1:
                r |= 1 << j
        out.append(r)
    return BinaryRelation.from_rows(out)


def _check_perm(perm: Sequence[int], n: int) -> None:
    if len(perm) != n or sorted(perm) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a bijection on 0..{n - 1}")


def relabel(a: BinaryRelation, perm: Sequence[int]) -> BinaryRelation:
    """Image of ``a`` under ``x -> perm[x]``."""
    _check_perm(perm, a.n)
    rows = [0] * a.n
    for x, y in a.pairs():
        rows[perm[x]] |= 1 << perm[y]
    return BinaryRelation.from_rows(rows)


def _degree_profile(rels: Sequence[BinaryRelation], x: int) -> tuple:
    prof = []
    for r in rels:
        prof.append(r.row(x).bit_count())
        prof.append(r.column(x).bit_count())
        prof.append((x, x) in r)
    return tuple(prof)


def pairs_isomorphic(p1: Sequence[BinaryRelation], p2: Sequence[BinaryRelation]) -> Optional[list[int]]:
    """Find ``ξ`` with ``x A y ⇔ ξ(x) A' ξ(y)`` for every component, or None.

    Backtracking over vertex bijections; candidates are pruned by matching
    in/out-degree profiles in every component relation.
    """
    if len(p1) != len(p2):
        raise ValueError("relation tuples of different length")
    _check_sizes(*p1, *p2)
    n = p1[0].n if p1 else 0
    if not p1:
        return []
    prof1 = [_degree_profile(p1, x) for x in range(n)]
    prof2 = [_degree_profile(p2, y) for y in range(n)]
    if sorted(prof1) != sorted(prof2):
        return None
    rows1 = [r.rows() for r in p1]
    rows2 = [r.rows() for r in p2]
    # most constrained first: rarest profile
    order = sorted(range(n), key=lambda x: (prof2.count(prof1[x]), x))
    xi = [-1] * n
    used = [False] * n

    def consistent(x: int, y: int) -> bool:
        for r1, r2 in zip(rows1, rows2):
            for u in order:
                v = xi[u]
                if v < 0:
                    continue
                if (r1[x] >> u & 1) != (r2[y] >> v & 1):
                    return False
                if (r1[u] >> x & 1) != (r2[v] >> y & 1):
                    return False
            if (r1[x] >> x & 1) != (r2[y] >> y & 1):
                return False
        return True

    def search(depth: int) -> bool:
        if depth == n:
            return True
        x = order[depth]
        for y in range(n):
            if used[y] or prof2[y] != prof1[x] or not consistent(x, y):
                continue
            xi[x], used[y] = y, True
            if search(depth + 1):
                return True
            xi[x], used[y] = -1, False
        return False

    return list(xi) if search(0) else None
