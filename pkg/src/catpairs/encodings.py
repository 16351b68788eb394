"""Codecs between Catalan pairs and five classical Catalan families.

Forward maps label the arches (tunnels, tree nodes, partition points) by
left endpoint.  Backward maps accept any labeling of a Catalan pair and
return the unique carrier object, so every round trip is exact.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .pairs import (
    CatalanPair,
    InvalidPairError,
    _split,
    canonical,
    composition_witness,
    linear_rank,
    verify,
)
from .relcore import BinaryRelation, _iter_bits, transitive_closure


class InvalidCarrierError(ValueError):
    """A matching, path, tree, permutation or partition is malformed."""


# carriers -------------------------------------------------------------------

@dataclass(frozen=True)
class ArchMatching:
    """Perfect noncrossing matching on positions ``1..2n``, arches sorted by left end."""

    arches: tuple[tuple[int, int], ...]

    def __post_init__(self):
        arches = tuple(sorted((int(l), int(r)) for l, r in self.arches))
        object.__setattr__(self, "arches", arches)
        n = len(arches)
        used = sorted(p for a in arches for p in a)
        if used != list(range(1, 2 * n + 1)):
            raise InvalidCarrierError("arch endpoints must use each position 1..2n once")
        for l, r in arches:
            if l >= r:
                raise InvalidCarrierError(f"arch ({l},{r}) has left >= right")
        for i, (l1, r1) in enumerate(arches):
            for l2, r2 in arches[i + 1:]:
                if l1 < l2 < r1 < r2:
                    raise InvalidCarrierError(f"arches ({l1},{r1}) and ({l2},{r2}) cross")

    @property
    def n(self) -> int:
        return len(self.arches)

    def __str__(self) -> str:
        return ",".join(f"({l},{r})" for l, r in self.arches)

    @classmethod
    def parse(cls, text: str) -> ArchMatching:
        text = text.strip()
        found = re.findall(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", text)
        if re.sub(r"\(\s*\d+\s*,\s*\d+\s*\)|[,\s]", "", text):
            raise InvalidCarrierError(f"cannot parse matching {text!r}")
        return cls(tuple((int(l), int(r)) for l, r in found))


@dataclass(frozen=True)
class DyckPath:
    steps: str

    def __post_init__(self):
        h = 0
        for c in self.steps:
            if c == "U":
                h += 1
            elif c == "D":
                h -= 1
            else:
                raise InvalidCarrierError(f"bad step {c!r} in Dyck path")
            if h < 0:
                raise InvalidCarrierError(f"{self.steps} dips below the axis")
        if h:
            raise InvalidCarrierError(f"{self.steps} is unbalanced")

    @property
    def n(self) -> int:
        return len(self.steps) // 2

    def heights(self) -> list[int]:
        hs = [0]
        for c in self.steps:
            hs.append(hs[-1] + (1 if c == "U" else -1))
        return hs

    def __str__(self) -> str:
        return self.steps

    @classmethod
    def parse(cls, text: str) -> DyckPath:
        return cls(text.strip())


@dataclass(frozen=True)
class Permutation:
    """One-line notation ``π(1)..π(n)`` on values ``1..n``."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if sorted(vals) != list(range(1, len(vals) + 1)):
            raise InvalidCarrierError(f"{vals} is not a permutation of 1..{len(vals)}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, v in enumerate(self.values):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def reverse(self) -> Permutation:
        return Permutation(self.values[::-1])

    def complement(self) -> Permutation:
        return Permutation(tuple(self.n + 1 - v for v in self.values))

    def __str__(self) -> str:
        sep = " " if self.n > 9 else ""
        return sep.join(str(v) for v in self.values)

    @classmethod
    def parse(cls, text: str) -> Permutation:
        text = text.strip()
        parts = text.split() if re.search(r"\s", text) else list(text)
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise InvalidCarrierError(f"cannot parse permutation {text!r}") from exc


@dataclass(frozen=True)
class PlaneTree:
    """Rooted ordered tree; ``children`` are subtrees left to right."""

    children: tuple[PlaneTree, ...] = ()

    @property
    def n(self) -> int:
        """Number of non-root nodes."""
        return sum(1 + c.n for c in self.children)

    def __str__(self) -> str:
        return "".join(f"({c})" for c in self.children)

    @classmethod
    def parse(cls, text: str) -> PlaneTree:
        stack: list[list[PlaneTree]] = [[]]
        for c in text.strip():
            if c == "(":
                stack.append([])
            elif c == ")":
                if len(stack) < 2:
                    raise InvalidCarrierError(f"unbalanced tree word {text!r}")
                kids = stack.pop()
                stack[-1].append(cls(tuple(kids)))
            else:
                raise InvalidCarrierError(f"bad character {c!r} in tree word")
        if len(stack) != 1:
            raise InvalidCarrierError(f"unbalanced tree word {text!r}")
        return cls(tuple(stack[0]))


@dataclass(frozen=True)
class NcPartition:
    """Noncrossing set partition of ``1..n``."""

    n: int
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(int(v) for v in b)) for b in self.blocks if b))
        object.__setattr__(self, "blocks", blocks)
        flat = sorted(v for b in blocks for v in b)
        if flat != list(range(1, self.n + 1)):
            raise InvalidCarrierError(f"blocks do not partition 1..{self.n}")
        owner = {v: i for i, b in enumerate(blocks) for v in b}
        for a in range(1, self.n + 1):
            for b in range(a + 1, self.n + 1):
                if owner[a] == owner[b]:
                    continue
                for c in range(b + 1, self.n + 1):
                    if owner[c] != owner[a]:
                        continue
                    for d in range(c + 1, self.n + 1):
                        if owner[d] == owner[b]:
                            raise InvalidCarrierError(f"blocks cross at {a}<{b}<{c}<{d}")

    def block_of(self, v: int) -> tuple[int, ...]:
        return next(b for b in self.blocks if v in b)

    def __str__(self) -> str:
        return "".join("{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    @classmethod
    def parse(cls, text: str) -> NcPartition:
        text = text.strip()
        if re.sub(r"\{[\d,\s]*\}", "", text):
            raise InvalidCarrierError(f"cannot parse partition {text!r}")
        blocks = [tuple(int(v) for v in re.findall(r"\d+", b)) for b in re.findall(r"\{([^}]*)\}", text)]
        return cls(sum(len(b) for b in blocks), tuple(blocks))


# matchings and Dyck paths ---------------------------------------------------

def _arches_to_pair(arches: Sequence[tuple[int, int]]) -> CatalanPair:
    n = len(arches)
    s_rows, r_rows = [0] * n, [0] * n
    for x, (lx, rx) in enumerate(arches):
        for y, (ly, ry) in enumerate(arches):
            if ly < lx and rx < ry:
                s_rows[x] |= 1 << y
            elif rx < ly:
                r_rows[x] |= 1 << y
    return CatalanPair(n, BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows))


def matching_to_pair(m: ArchMatching) -> CatalanPair:
    """S = inclusion of arches, R = left-of; arch i is the one with i-th left end."""
    return _arches_to_pair(m.arches)


def _require_catalan(p: CatalanPair) -> None:
    rep = verify(p.s, p.r)
    if not rep.valid:
        raise InvalidPairError(f"not a Catalan pair: {', '.join(rep.failed())} fail", rep)


def _matching_arches(p: CatalanPair, offset: int = 0) -> list[tuple[int, int]]:
    # α∘β is drawn as: outer arch around α, then β to its right
    if p.n == 0:
        return []
    alpha, beta = _split(p)
    inner = _matching_arches(alpha, offset + 1)
    close = offset + 2 * alpha.n + 2
    return [(offset + 1, close)] + inner + _matching_arches(beta, close)


def pair_to_matching(p: CatalanPair) -> ArchMatching:
    _require_catalan(p)
    return ArchMatching(tuple(_matching_arches(p)))


def matching_to_dyck(m: ArchMatching) -> DyckPath:
    steps = [""] * (2 * m.n)
    for l, r in m.arches:
        steps[l - 1] = "U"
        steps[r - 1] = "D"
    return DyckPath("".join(steps))


def dyck_to_matching(d: DyckPath) -> ArchMatching:
    stack, arches = [], []
    for i, c in enumerate(d.steps, start=1):
        if c == "U":
            stack.append(i)
        else:
            arches.append((stack.pop(), i))
    return ArchMatching(tuple(arches))


def tunnels(d: DyckPath) -> list[tuple[int, int]]:
    """Tunnels as (up-step, down-step) positions, 1-based, ordered by up step.

    The tunnel from an up step at height h->h+1 ends at the first later down
    step that brings the path back to height h.
    """
    hs = d.heights()
    out = []
    for i, c in enumerate(d.steps):
        if c != "U":
            continue
        h = hs[i]
        j = next(j for j in range(i + 1, len(d.steps)) if hs[j + 1] == h)
        out.append((i + 1, j + 1))
    return out


def dyck_tunnels(d: DyckPath) -> CatalanPair:
    """xSy when tunnel x lies above tunnel y, xRy when x is entirely left of y."""
    ts = tunnels(d)
    n = len(ts)
    hs = d.heights()
    level = [hs[u - 1] for u, _ in ts]
    s_rows, r_rows = [0] * n, [0] * n
    for x, (ux, dx) in enumerate(ts):
        for y, (uy, dy) in enumerate(ts):
            if x == y:
                continue
            if dx < uy:
                r_rows[x] |= 1 << y
            elif level[x] > level[y] and uy < ux and dx < dy:
                s_rows[x] |= 1 << y
    return CatalanPair(n, BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows))


def pair_to_dyck(p: CatalanPair) -> DyckPath:
    return matching_to_dyck(pair_to_matching(p))


# permutations ---------------------------------------------------------------

def perm_to_pair(pi: Permutation) -> tuple[CatalanPair, bool]:
    """Inversion pair of ``pi`` on labels ``0..n-1`` (value v -> label v-1).

    ``iSj`` iff i<j and j precedes i; ``iRj`` iff i<j and i precedes j.
    The flag reports whether axiom comp holds, i.e. whether the result is a
    Catalan pair rather than only a factorial one.
    """
    n = pi.n
    pos = [0] * n
    for idx, v in enumerate(pi.values):
        pos[v - 1] = idx
    s_rows, r_rows = [0] * n, [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if pos[j] < pos[i]:
                s_rows[i] |= 1 << j
            else:
                r_rows[i] |= 1 << j
    s, r = BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows)
    return CatalanPair(n, s, r), composition_witness(s, r, r) is None


def relations_to_perm(s: BinaryRelation, r: BinaryRelation) -> Permutation:
    """Permutation representation of any pair whose ``S ∪ R`` is a linear order."""
    rank = linear_rank(s, r)
    n = s.n
    # after relabeling by rank, value v sits after its R-predecessors and its S-successors
    s_rows, r_rows = s.rows(), r.rows()
    r_in = [0] * n
    for x in range(n):
        for y in _iter_bits(r_rows[x]):
            r_in[y] += 1
    values = [0] * n
    for x in range(n):
        values[r_in[x] + s_rows[x].bit_count()] = rank[x] + 1
    return Permutation(tuple(values))


def pair_to_perm(p: CatalanPair) -> Permutation:
    _require_catalan(p)
    return relations_to_perm(p.s, p.r)


# plane trees ----------------------------------------------------------------

def tree_to_pair(t: PlaneTree) -> CatalanPair:
    """Non-root nodes in preorder; xSy iff y is a proper ancestor of x, xRy iff x's subtree is left of y's."""
    spans: list[tuple[int, int]] = []

    def walk(node: PlaneTree) -> None:
        for child in node.children:
            idx = len(spans)
            spans.append((idx, 0))
            walk(child)
            spans[idx] = (idx, len(spans))

    walk(t)
    n = len(spans)
    s_rows, r_rows = [0] * n, [0] * n
    for x, (ax, bx) in enumerate(spans):
        for y, (ay, by) in enumerate(spans):
            if ay < ax and bx <= by:
                s_rows[x] |= 1 << y
            elif bx <= ay:
                r_rows[x] |= 1 << y
    return CatalanPair(n, BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows))


def s_parents(s: BinaryRelation) -> list[Optional[int]]:
    """Hasse parent of each element in [X,S] (its unique S-cover), None for maximal ones.

    Raises if an element has two S-covers.
    """
    rows = s.rows()
    parents: list[Optional[int]] = []
    for x in range(s.n):
        ups = rows[x]
        covers = [y for y in _iter_bits(ups) if not ups & ~(1 << y) & ~rows[y]]
        if len(covers) > 1:
            raise InvalidPairError(f"element {x} has several S-covers {covers}")
        parents.append(covers[0] if covers else None)
    return parents


def pair_to_tree(p: CatalanPair) -> PlaneTree:
    _require_catalan(p)
    parents = s_parents(p.s)
    r_rows = p.r.rows()
    r_down = [0] * p.n
    for x in range(p.n):
        for y in _iter_bits(r_rows[x]):
            r_down[y] += 1

    def build(parent: Optional[int]) -> PlaneTree:
        kids = sorted((x for x in range(p.n) if parents[x] == parent), key=lambda x: r_down[x])
        return PlaneTree(tuple(build(k) for k in kids))

    return build(None)


# noncrossing partitions -----------------------------------------------------

def partition_links(part: NcPartition) -> list[tuple[int, int]]:
    """The ``(x, u(x))`` links, ``u(x) = min[x] - 1`` where that is >= 1 (1-based)."""
    links = []
    for x in range(1, part.n + 1):
        lo = part.block_of(x)[0]
        if lo > 1:
            links.append((x, lo - 1))
    return links


def partition_to_pair(part: NcPartition) -> CatalanPair:
    """S is the closure of the u-links; xRy when x<y and x, y are S-incomparable."""
    n = part.n
    links = BinaryRelation.from_pairs(n, [(x - 1, y - 1) for x, y in partition_links(part)])
    s = transitive_closure(links)
    s_rows = s.rows()
    r_rows = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if not (s_rows[x] >> y & 1 or s_rows[y] >> x & 1):
                r_rows[x] |= 1 << y
    return CatalanPair(n, s, BinaryRelation.from_rows(r_rows))


def left_rank(p: CatalanPair) -> list[int]:
    """Rank of each element in the left-endpoint order ``R ∪ S⁻¹``."""
    s_rows, r_rows = p.s.rows(), p.r.rows()
    rank = [s_rows[x].bit_count() for x in range(p.n)]
    for x in range(p.n):
        for y in _iter_bits(r_rows[x]):
            rank[y] += 1
    return rank


def pair_to_partition(p: CatalanPair) -> NcPartition:
    """Group points by their S-cover (peeling the u-links back off)."""
    _require_catalan(p)
    q = p.relabel(left_rank(p))
    parents = s_parents(q.s)
    groups: dict[Optional[int], list[int]] = {}
    for x, par in enumerate(parents):
        groups.setdefault(par, []).append(x + 1)
    return NcPartition(p.n, tuple(tuple(b) for b in groups.values()))


# format registry ------------------------------------------------------------

FORMATS = ("json", "matching", "dyck", "perm", "tree", "partition")


def parse_carrier(fmt: str, text: str):
    parsers = {
        "matching": ArchMatching.parse,
        "dyck": DyckPath.parse,
        "perm": Permutation.parse,
        "tree": PlaneTree.parse,
        "partition": NcPartition.parse,
    }
    if fmt not in parsers:
        raise ValueError(f"unknown format {fmt!r}")
    return parsers[fmt](text)


def carrier_to_pair(fmt: str, obj) -> CatalanPair:
    if fmt == "json":
        return obj
    if fmt == "matching":
        return matching_to_pair(obj)
    if fmt == "dyck":
        return dyck_tunnels(obj)
    if fmt == "perm":
        pair, ok = perm_to_pair(obj)
        if not ok:
            w = composition_witness(pair.s, pair.r, pair.r)
            raise InvalidPairError(f"permutation {obj} fails comp at {w}")
        return pair
    if fmt == "tree":
        return tree_to_pair(obj)
    if fmt == "partition":
        return partition_to_pair(obj)
    raise ValueError(f"unknown format {fmt!r}")


def pair_to_carrier(fmt: str, p: CatalanPair):
    if fmt == "json":
        _require_catalan(p)
        return canonical(p)
    if fmt == "matching":
        return pair_to_matching(p)
    if fmt == "dyck":
        return pair_to_dyck(p)
    if fmt == "perm":
        return pair_to_perm(p)
    if fmt == "tree":
        return pair_to_tree(p)
    if fmt == "partition":
        return pair_to_partition(p)
    raise ValueError(f"unknown format {fmt!r}")
