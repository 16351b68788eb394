"""Order-theoretic analysis of the two components of a Catalan pair."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .encodings import DyckPath, pair_to_dyck, s_parents
from .pairs import CatalanPair, InvalidPairError, enumerate_pairs, verify
from .relcore import BinaryRelation, _iter_bits, is_strict_order, symmetrize


class NotStrictOrderError(ValueError):
    pass


class InvariantViolation(AssertionError):
    """Two evaluators that must agree did not."""


class ForbiddenSubposetError(ValueError):
    def __init__(self, witness: ForbiddenWitness):
        super().__init__(f"[X,R] contains {witness.kind} on {witness.elements}")
        self.witness = witness


def _require_order(r: BinaryRelation) -> None:
    if not is_strict_order(r):
        raise NotStrictOrderError("relation is not a strict order")


# ~R classes -----------------------------------------------------------------

@dataclass(frozen=True)
class SimClasses:
    """Partition of the ground set by equal R̄-neighborhoods; classes sorted by least element."""

    classes: tuple[tuple[int, ...], ...]

    def class_of(self, x: int) -> tuple[int, ...]:
        return next(c for c in self.classes if x in c)

    def same(self, x: int, y: int) -> bool:
        return y in self.class_of(x)

    def to_json_obj(self) -> list:
        return [list(c) for c in self.classes]


def sim_classes(r: BinaryRelation) -> SimClasses:
    _require_order(r)
    nbhd = symmetrize(r).rows()
    groups: dict[int, list[int]] = {}
    for x in range(r.n):
        groups.setdefault(nbhd[x], []).append(x)
    return SimClasses(tuple(sorted(tuple(g) for g in groups.values())))


# forbidden subposets --------------------------------------------------------

TWO_PLUS_TWO = ((0, 1), (2, 3))
Z4 = ((0, 1), (2, 1), (2, 3))


@dataclass(frozen=True)
class ForbiddenWitness:
    kind: str  # "TwoPlusTwo" or "Z4"
    elements: tuple[int, int, int, int]
    pattern: tuple[tuple[int, int], ...]

    def to_json_obj(self) -> dict:
        return {"kind": self.kind, "elements": list(self.elements), "pattern": [list(p) for p in self.pattern]}


def _match_pattern(rows: list[int], quad: tuple[int, ...], pattern) -> bool:
    want = {(quad[a], quad[b]) for a, b in pattern}
    for x in quad:
        for y in quad:
            if x != y and bool(rows[x] >> y & 1) != ((x, y) in want):
                return False
    return True


def find_forbidden(r: BinaryRelation) -> Optional[ForbiddenWitness]:
    """Lexicographically least induced 2+2 or Z4, scanning 4-subsets in order."""
    _require_order(r)
    rows = r.rows()
    for subset in itertools.combinations(range(r.n), 4):
        for quad in itertools.permutations(subset):
            for kind, pattern in (("TwoPlusTwo", TWO_PLUS_TWO), ("Z4", Z4)):
                if _match_pattern(rows, quad, pattern):
                    induced = tuple((quad[a], quad[b]) for a, b in pattern)
                    return ForbiddenWitness(kind, quad, induced)
    return None


def reconstruct_s(r: BinaryRelation) -> BinaryRelation:
    """The first component S(R) built from the ~R classes and the witness rules.

    Inside a class, lower index goes S-below higher index.  Across classes,
    for R̄-incomparable x, y: xSy when some z is R̄-comparable to x but not
    to y.  Raises ForbiddenSubposetError when R contains 2+2 or Z4.
    """
    witness = find_forbidden(r)
    if witness is not None:
        raise ForbiddenSubposetError(witness)
    n = r.n
    nb = symmetrize(r).rows()
    rows = [0] * n
    for x in range(n):
        for y in range(n):
            if x == y or nb[x] >> y & 1:
                continue
            if nb[x] == nb[y]:
                if x < y:
                    rows[x] |= 1 << y
            elif nb[x] & ~nb[y] & ~(1 << y):
                rows[x] |= 1 << y
    return BinaryRelation.from_rows(rows)


def in_r_class(r: BinaryRelation) -> bool:
    """Whether [X,R] is the second component of some Catalan pair."""
    return find_forbidden(r) is None


# connectivity ---------------------------------------------------------------

def _components(n: int, adj: list[int]) -> list[int]:
    seen, comps = 0, []
    for start in range(n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            nxt = 0
            for v in _iter_bits(frontier):
                nxt |= adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def comparability_components(r: BinaryRelation) -> list[int]:
    return _components(r.n, symmetrize(r).rows())


def r_is_connected(p: CatalanPair) -> bool:
    """Connectivity of the comparability graph of R; sizes 0 and 1 count as connected."""
    if p.n <= 1:
        return True
    return len(comparability_components(p.r)) == 1


def connected_by_matching(p: CatalanPair) -> bool:
    """Matching criterion: positions 1 and 2n are not joined by one arch."""
    if p.n <= 1:
        return True
    d = pair_to_dyck(p).steps
    hs = 0
    for c in d[:-1]:
        hs += 1 if c == "U" else -1
        if hs == 0:
            return True
    return False


# lattices -------------------------------------------------------------------

def _up_down(r: BinaryRelation) -> tuple[list[int], list[int]]:
    rows = r.rows()
    up = [rows[x] | 1 << x for x in range(r.n)]
    down = [1 << x for x in range(r.n)]
    for x in range(r.n):
        for y in _iter_bits(rows[x]):
            down[y] |= 1 << x
    return up, down


def _bound(sets: list[int], common: int) -> Optional[int]:
    # the element whose (up|down)-set equals the common bound set
    for z in _iter_bits(common):
        if sets[z] == common:
            return z
    return None


def lattice_tables(r: BinaryRelation) -> Optional[tuple[list[list[int]], list[list[int]]]]:
    """Join and meet tables of [X,R] with ≤ = R ∪ 𝒟, or None if not a lattice."""
    n = r.n
    if n == 0:
        return None
    up, down = _up_down(r)
    full = (1 << n) - 1
    # quick reject: a finite lattice has a least and a greatest element
    if not any(u == full for u in up) or not any(d == full for d in down):
        return None
    join = [[0] * n for _ in range(n)]
    meet = [[0] * n for _ in range(n)]
    for x in range(n):
        join[x][x] = meet[x][x] = x
        for y in range(x + 1, n):
            j = _bound(up, up[x] & up[y])
            m = _bound(down, down[x] & down[y])
            if j is None or m is None:
                return None
            join[x][y] = join[y][x] = j
            meet[x][y] = meet[y][x] = m
    return join, meet


def is_lattice(r: BinaryRelation) -> bool:
    """Every two elements have a least upper and a greatest lower bound (n >= 1)."""
    return lattice_tables(r) is not None


def lattice_path_criterion(d: DyckPath) -> bool:
    """Starts and ends with a peak and avoids DDUU."""
    w = d.steps
    return w.startswith("UD") and w.endswith("UD") and "DDUU" not in w


def r_is_lattice(p: CatalanPair) -> bool:
    order = is_lattice(p.r)
    path = lattice_path_criterion(pair_to_dyck(p))
    if order != path:
        raise InvariantViolation(f"lattice evaluators disagree on {p}")
    return order


def _sublattice_kind(up: list[int], t: tuple[int, ...]) -> Optional[str]:
    """Classify a 5-element sublattice with bottom t[0] and top t[1] as M3, N5 or None."""
    mids = t[2:]
    comparable = sum(
        1 for a, b in itertools.combinations(mids, 2) if up[a] >> b & 1 or up[b] >> a & 1
    )
    return {0: "M3", 1: "N5"}.get(comparable)


def find_m3_n5(r: BinaryRelation) -> Optional[tuple[str, tuple[int, ...]]]:
    """First 5-element sublattice isomorphic to M3 or N5, as (kind, (bottom, top, a, b, c))."""
    tables = lattice_tables(r)
    if tables is None:
        raise ValueError("not a lattice")
    join, meet = tables
    up, _ = _up_down(r)
    n = r.n
    for bot in range(n):
        for top in _iter_bits(up[bot] & ~(1 << bot)):
            inner = [x for x in range(n) if x not in (bot, top) and up[bot] >> x & 1 and up[x] >> top & 1]
            for mids in itertools.combinations(inner, 3):
                t = (bot, top) + mids
                tset = set(t)
                if all(join[a][b] in tset and meet[a][b] in tset for a, b in itertools.combinations(t, 2)):
                    kind = _sublattice_kind(up, t)
                    if kind:
                        return kind, t
    return None


def is_distributive_lattice(r: BinaryRelation) -> bool:
    return is_lattice(r) and find_m3_n5(r) is None


def distributive_path_criterion(d: DyckPath) -> bool:
    """Lattice path of height <= 2 whose height-2 factors are all UUDD (no valley at height 1)."""
    if not lattice_path_criterion(d):
        return False
    hs = d.heights()
    if max(hs) > 2:
        return False
    w = d.steps
    return not any(w[i] == "D" and w[i + 1] == "U" and hs[i + 1] == 1 for i in range(len(w) - 1))


def ordinal_summands(r: BinaryRelation) -> list[int]:
    """Ordinal-sum decomposition: incomparability components, bottom to top."""
    n = r.n
    comp_rows = symmetrize(r).rows()
    incomp = [((1 << n) - 1) & ~comp_rows[x] & ~(1 << x) for x in range(n)]
    comps = _components(n, incomp)
    rows = r.rows()
    # summands are totally ordered; sort by how many elements lie above
    return sorted(comps, key=lambda c: -rows[next(_iter_bits(c))].bit_count())


def distributive_structure(r: BinaryRelation) -> bool:
    """[X,R] is an ordinal sum of points and 2-antichains, ends are points, no two antichains adjacent.

    Equivalently, chains glued with copies of the four-element Boolean lattice.
    """
    if r.n == 0:
        return False
    sizes = [c.bit_count() for c in ordinal_summands(r)]
    if any(s > 2 for s in sizes) or sizes[0] != 1 or sizes[-1] != 1:
        return False
    return all(not (a == 2 and b == 2) for a, b in zip(sizes, sizes[1:]))


def r_is_distributive(p: CatalanPair) -> bool:
    order = is_distributive_lattice(p.r)
    path = distributive_path_criterion(pair_to_dyck(p))
    shape = distributive_structure(p.r)
    if not order == path == shape:
        raise InvariantViolation(f"distributivity evaluators disagree on {p}: {order}, {path}, {shape}")
    return order


# the S-forest ---------------------------------------------------------------

@dataclass(frozen=True)
class Forest:
    """Rooted forest on 0..n-1 given by parent pointers (None for roots)."""

    parents: tuple[Optional[int], ...]

    @property
    def n(self) -> int:
        return len(self.parents)

    @property
    def roots(self) -> list[int]:
        return [x for x, p in enumerate(self.parents) if p is None]

    def children(self, v: Optional[int]) -> list[int]:
        return [x for x, p in enumerate(self.parents) if p == v]

    def ancestors(self, x: int) -> list[int]:
        out = []
        p = self.parents[x]
        while p is not None:
            out.append(p)
            p = self.parents[p]
        return out


def s_forest(p: CatalanPair) -> Forest:
    """Hasse diagram of [X,S]; roots are the S-maximal elements."""
    parents = s_parents(p.s)
    forest = Forest(tuple(parents))
    rows = p.s.rows()
    for x in range(p.n):
        anc = sum(1 << a for a in forest.ancestors(x))
        if anc != rows[x]:
            raise InvariantViolation(f"S-successors of {x} are not its forest ancestors")
    return forest


def s_tree_canonical(f: Forest) -> str:
    """Canonical code of the rooted tree made by hanging all roots under a new super-root."""

    def code(v: Optional[int]) -> str:
        return "(" + "".join(sorted(code(c) for c in f.children(v))) + ")"

    return code(None)


def _plane_embeddings(f: Forest, v: Optional[int]) -> list[tuple[str, tuple[int, ...]]]:
    """Distinct plane orderings below v as (plane code, preorder of labels)."""
    kids = f.children(v)
    kid_embs = [_plane_embeddings(f, c) for c in kids]
    seen: dict[str, tuple[int, ...]] = {}
    for order in itertools.permutations(range(len(kids))):
        for picks in itertools.product(*(kid_embs[i] for i in order)):
            code = "(" + "".join(c for c, _ in picks) + ")"
            if code in seen:
                continue
            pre: tuple[int, ...] = ()
            for i, (_, sub) in zip(order, picks):
                pre += (kids[i],) + sub
            seen[code] = pre
    return sorted(seen.items())


def pairs_with_s(s: BinaryRelation) -> list[CatalanPair]:
    """All Catalan pairs with first component ``s``, one per plane embedding of its forest."""
    _require_order(s)
    try:
        f = Forest(tuple(s_parents(s)))
    except InvalidPairError as exc:
        raise ValueError("Hasse diagram of S is not a forest") from exc
    s_rows = s.rows()
    for x in range(s.n):
        if sum(1 << a for a in f.ancestors(x)) != s_rows[x]:
            raise ValueError("S is not the ancestor relation of its Hasse forest")
    out = []
    for _, pre in _plane_embeddings(f, None):
        pos = {x: i for i, x in enumerate(pre)}
        r_rows = [0] * s.n
        for x in range(s.n):
            for y in range(s.n):
                if pos[x] < pos[y] and not s_rows[y] >> x & 1:
                    r_rows[x] |= 1 << y
        pair = CatalanPair(s.n, s, BinaryRelation.from_rows(r_rows))
        if not verify(pair.s, pair.r).valid:
            raise InvariantViolation("plane embedding produced an invalid pair")
        out.append(pair)
    return out


# family counters ------------------------------------------------------------

def count_connected(n: int) -> int:
    return sum(r_is_connected(p) for p in enumerate_pairs(n))


def count_lattice(n: int) -> int:
    return sum(is_lattice(p.r) for p in enumerate_pairs(n))


def count_distributive(n: int) -> int:
    return sum(is_distributive_lattice(p.r) for p in enumerate_pairs(n))


def count_s_codes(n: int) -> int:
    """Distinct unlabeled S-forests over 𝒞(n)."""
    return len({s_tree_canonical(s_forest(p)) for p in enumerate_pairs(n)})


def analyze(p: CatalanPair) -> dict:
    """Flags reported by the ``analyze`` command."""
    return {
        "connected": r_is_connected(p),
        "lattice": r_is_lattice(p),
        "distributive": r_is_distributive(p),
        "sTreeCode": s_tree_canonical(s_forest(p)),
        "simClasses": sim_classes(p.r).to_json_obj(),
    }
