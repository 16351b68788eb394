"""Relaxed-axiom families: factorial pairs, F_{h,k}, U(n), Grand-Dyck and Schröder pairs."""
from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional

from .encodings import InvalidCarrierError, Permutation, left_rank, pair_to_matching, perm_to_pair, relations_to_perm
from .pairs import (
    AxiomReport,
    CatalanPair,
    InvalidPairError,
    _inters_witness,
    _tot_witness,
    composition_witness,
    count,
    enumerate_pairs,
    linear_rank,
    strict_order_witness,
    transitivity_witness,
)
from .relcore import (
    BinaryRelation,
    _check_sizes,
    _iter_bits,
    compose,
    diagonal,
    diagonal_part,
    inverse,
    power,
    relabel,
)


# profiles -------------------------------------------------------------------

KINDS = ("catalan", "factorial", "comp-hk", "unrestricted", "grand-dyck", "schroder")


@dataclass(frozen=True)
class Profile:
    kind: str
    h: int = 1
    k: int = 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown profile {self.kind!r}")
        if self.h < 1 or self.k < 1:
            raise ValueError("comp(h,k) needs h, k >= 1")

    @classmethod
    def parse(cls, text: str) -> Profile:
        text = text.strip()
        m = re.fullmatch(r"comp-hk:(\d+),(\d+)", text)
        if m:
            return cls("comp-hk", int(m.group(1)), int(m.group(2)))
        return cls(text)

    @property
    def reflexive_allowed(self) -> bool:
        return self.kind in ("unrestricted", "grand-dyck", "schroder")

    def __str__(self) -> str:
        return f"comp-hk:{self.h},{self.k}" if self.kind == "comp-hk" else self.kind


CATALAN = Profile("catalan")
FACTORIAL = Profile("factorial")
UNRESTRICTED = Profile("unrestricted")
GRAND_DYCK = Profile("grand-dyck")
SCHRODER = Profile("schroder")


def comp_hk(h: int, k: int) -> Profile:
    return Profile("comp-hk", h, k)


@dataclass(frozen=True)
class GeneralizedPair:
    n: int
    s: BinaryRelation
    r: BinaryRelation
    profile: Profile

    def __post_init__(self):
        if self.s.n != self.n or self.r.n != self.n:
            raise ValueError("component sizes disagree with n")

    @property
    def dotted(self) -> list[int]:
        """Elements with ``x S x``."""
        return [x for x in range(self.n) if (x, x) in self.s]

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "S": [list(p) for p in self.s.pairs()],
            "R": [list(p) for p in self.r.pairs()],
            "profile": str(self.profile),
            "diagonal": self.dotted,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict, profile: Optional[Profile] = None) -> GeneralizedPair:
        n = int(obj["n"])
        s_pairs = [tuple(p) for p in obj["S"]] + [(x, x) for x in obj.get("diagonal", [])]
        prof = profile or Profile.parse(obj.get("profile", "catalan"))
        return cls(n, BinaryRelation.from_pairs(n, s_pairs), BinaryRelation.from_pairs(n, obj["R"]), prof)

    def base(self) -> CatalanPair:
        """The pair with the diagonal of S removed."""
        return CatalanPair(self.n, self.s - diagonal(self.n), self.r)

    def relabel(self, perm) -> GeneralizedPair:
        return GeneralizedPair(self.n, relabel(self.s, perm), relabel(self.r, perm), self.profile)

    def canonical(self) -> GeneralizedPair:
        """Relabel so that the off-diagonal part of ``S ∪ R`` is the natural order."""
        b = self.base()
        return self.relabel(linear_rank(b.s, b.r))

    def same_as(self, other: GeneralizedPair) -> bool:
        """Isomorphic as relational structures (profile ignored)."""
        a, b = self.canonical(), other.canonical()
        return a.s == b.s and a.r == b.r


# axioms ---------------------------------------------------------------------

def _antisym_witness(s: BinaryRelation) -> Optional[tuple]:
    both = s & inverse(s)
    for x, y in both.pairs():
        if x != y:
            return (x, y)
    return None


def _choose_witness(s: BinaryRelation) -> Optional[tuple]:
    for x, y in s.pairs():
        if x != y and ((x, x) in s) != ((y, y) in s):
            return (x, y)
    return None


def _min_witness(s: BinaryRelation) -> Optional[tuple]:
    """``(y, x)``: y is reflexive but ``x S y`` for some other x."""
    for y in range(s.n):
        if (y, y) in s:
            for x in range(s.n):
                if x != y and (x, y) in s:
                    return (y, x)
    return None


def verify_generalized(s: BinaryRelation, r: BinaryRelation, profile: Profile) -> AxiomReport:
    _check_sizes(s, r)
    w: dict = {"ordR": strict_order_witness(r), "tot": _tot_witness(s, r), "inters": _inters_witness(s, r)}
    kind = profile.kind
    if profile.reflexive_allowed:
        w["transS"] = transitivity_witness(s)
        w["antisymS"] = _antisym_witness(s)
        w["comp"] = composition_witness(s, r, r)
        if kind == "grand-dyck":
            w["choose"] = _choose_witness(s)
        elif kind == "schroder":
            w["min"] = _min_witness(s)
    else:
        w = {"ordS": strict_order_witness(s), **w}
        if kind == "catalan":
            w["comp"] = composition_witness(s, r, r)
        elif kind == "comp-hk":
            w["comp(h,k)"] = composition_witness(power(s, profile.h), power(r, profile.k), r)
    return AxiomReport(w)


def make_pair(s: BinaryRelation, r: BinaryRelation, profile: Profile) -> GeneralizedPair:
    rep = verify_generalized(s, r, profile)
    if not rep.valid:
        raise InvalidPairError(f"not a {profile} pair: {', '.join(rep.failed())} fail", rep)
    return GeneralizedPair(s.n, s, r, profile)


# factorial pairs and permutations -------------------------------------------

def perm_to_factorial(pi: Permutation) -> GeneralizedPair:
    pair, _ = perm_to_pair(pi)
    return GeneralizedPair(pair.n, pair.s, pair.r, FACTORIAL)


def factorial_to_perm(gp: GeneralizedPair) -> Permutation:
    rep = verify_generalized(gp.s, gp.r, FACTORIAL)
    if not rep.valid:
        raise InvalidPairError("not a factorial pair", rep)
    return relations_to_perm(gp.s, gp.r)


def permutations(n: int) -> Iterator[Permutation]:
    for vals in itertools.permutations(range(1, n + 1)):
        yield Permutation(vals)


def factorial_frames(n: int) -> Iterator[tuple[BinaryRelation, BinaryRelation]]:
    """Factorial pairs whose ``S ∪ R`` is the natural order, found from the axioms alone.

    Every unordered pair ``i < j`` goes to S or to R; candidates are kept when
    both relations are transitive.  Each isomorphism class of factorial pairs
    has exactly one such representative.
    """
    slots = list(itertools.combinations(range(n), 2))
    for choice in itertools.product((0, 1), repeat=len(slots)):
        s_rows, r_rows = [0] * n, [0] * n
        for (i, j), c in zip(slots, choice):
            if c:
                r_rows[i] |= 1 << j
            else:
                s_rows[i] |= 1 << j
        s, r = BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows)
        if transitivity_witness(s) is None and transitivity_witness(r) is None:
            yield s, r


def count_factorial_axiomatic(n: int) -> int:
    return sum(1 for _ in factorial_frames(n))


def satisfies_comp_hk(s: BinaryRelation, r: BinaryRelation, h: int, k: int) -> bool:
    return compose(power(s, h), power(r, k)) <= r


def comp_hk_perms(n: int, h: int, k: int) -> set[tuple[int, ...]]:
    """Permutation representations of F_{h,k}(n)."""
    out = set()
    for pi in permutations(n):
        pair, _ = perm_to_pair(pi)
        if satisfies_comp_hk(pair.s, pair.r, h, k):
            out.add(pi.values)
    return out


def count_comp_hk(n: int, h: int, k: int) -> int:
    if n > 8:
        raise ValueError("count_comp_hk envelope is n <= 8")
    return len(comp_hk_perms(n, h, k))


# patterns -------------------------------------------------------------------

@dataclass(frozen=True)
class PatternSet:
    patterns: tuple[Permutation, ...]

    def __post_init__(self):
        if not self.patterns:
            raise ValueError("a pattern set needs at least one pattern")

    def __iter__(self):
        return iter(self.patterns)

    def __len__(self):
        return len(self.patterns)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.patterns)

    @classmethod
    def parse(cls, text: str) -> PatternSet:
        return cls(tuple(Permutation.parse(t) for t in text.split(",") if t.strip()))

    @classmethod
    def of(cls, *words: str) -> PatternSet:
        return cls(tuple(Permutation.parse(w) for w in words))

    def map(self, fn) -> PatternSet:
        return PatternSet(tuple(fn(p) for p in self.patterns))


def _standardize(seq: Iterable[int]) -> tuple[int, ...]:
    seq = list(seq)
    order = sorted(range(len(seq)), key=seq.__getitem__)
    out = [0] * len(seq)
    for rank, i in enumerate(order, start=1):
        out[i] = rank
    return tuple(out)


def contains_pattern(pi: Permutation, nu: Permutation) -> bool:
    """Exhaustive scan of index subsets of size |nu|."""
    m = len(nu)
    if m > len(pi):
        return False
    vals = pi.values
    target = nu.values
    return any(_standardize(vals[i] for i in idx) == target for idx in itertools.combinations(range(len(vals)), m))


def _contains_through(vals: tuple[int, ...], nu: tuple[int, ...], pos: int) -> bool:
    # occurrences that use the entry at index pos
    others = [i for i in range(len(vals)) if i != pos]
    for idx in itertools.combinations(others, len(nu) - 1):
        chosen = sorted(idx + (pos,))
        if _standardize(vals[i] for i in chosen) == nu:
            return True
    return False


def pattern_set_h1(h: int) -> PatternSet:
    """Patterns of F_{h,1}: move i to the end of (h+2)(h+1)...21, for i = 2..h+1."""
    if h < 1:
        raise ValueError("h >= 1")
    top = list(range(h + 2, 0, -1))
    pats = []
    for i in range(2, h + 2):
        word = [v for v in top if v != i] + [i]
        pats.append(Permutation(tuple(word)))
    return PatternSet(tuple(pats))


def pattern_set_1k(k: int) -> PatternSet:
    """The single pattern of F_{1,k}: (k+2) 1 2 ... k (k+1)."""
    if k < 1:
        raise ValueError("k >= 1")
    return PatternSet((Permutation((k + 2,) + tuple(range(1, k + 2))),))


def avoiders(n: int, ps: PatternSet) -> list[tuple[int, ...]]:
    """All permutations of 1..n avoiding every pattern in ``ps``.

    Grown by inserting the largest value into avoiders of size n-1; only
    occurrences through the new entry need checking.
    """
    level = [()]
    for size in range(1, n + 1):
        nxt = []
        pats = [p.values for p in ps if len(p) <= size]
        for base in level:
            for pos in range(size):
                cand = base[:pos] + (size,) + base[pos:]
                if not any(_contains_through(cand, nu, pos) for nu in pats):
                    nxt.append(cand)
        level = nxt
    return sorted(level)


def count_avoiders(n: int, ps: PatternSet) -> int:
    if n > 10:
        raise ValueError("count_avoiders envelope is n <= 10")
    return len(avoiders(n, ps))


def reverse_complement(p: Permutation) -> Permutation:
    return p.reverse().complement()


SYMMETRIES = {
    "identity": lambda p: p,
    "inverse": Permutation.inverse,
    "reverse-complement": reverse_complement,
    "inverse-reverse-complement": lambda p: reverse_complement(p).inverse(),
}


def convention_report(n: int, h: int, k: int, ps: PatternSet) -> dict:
    """Compare F_{h,k}(n) under the literal inversion rule with Av_n of images of ``ps``.

    Counts are symmetry-invariant; the set comparison shows which image of the
    pattern set matches the literal convention.
    """
    classes = comp_hk_perms(n, h, k)
    report = {"n": n, "h": h, "k": k, "patterns": str(ps), "count": len(classes), "matches": {}}
    for name, fn in SYMMETRIES.items():
        image = ps.map(fn)
        av = set(avoiders(n, image))
        report["matches"][name] = {"patterns": str(image), "count": len(av), "same_set": av == classes}
    report["count_match"] = report["matches"]["identity"]["count"] == len(classes)
    report["matched_by"] = [name for name, m in report["matches"].items() if m["same_set"]]
    return report


# unrestricted reflexivity ---------------------------------------------------

def _diag_mask(n: int, mask: int) -> BinaryRelation:
    return BinaryRelation.from_pairs(n, [(x, x) for x in _iter_bits(mask)])


def enumerate_unrestricted(n: int) -> list[GeneralizedPair]:
    """Each Catalan pair decorated with every subset of reflexive S-points."""
    out = []
    for p in enumerate_pairs(n):
        for mask in range(1 << n):
            out.append(GeneralizedPair(n, p.s | _diag_mask(n, mask), p.r, UNRESTRICTED))
    return out


def count_unrestricted(n: int) -> int:
    return 2 ** n * count(n)


def enumerate_profile(n: int, profile: Profile) -> list[GeneralizedPair]:
    """Members of U(n) that also satisfy the profile's extra axiom."""
    out = []
    for gp in enumerate_unrestricted(n):
        if verify_generalized(gp.s, gp.r, profile).valid:
            out.append(GeneralizedPair(n, gp.s, gp.r, profile))
    return out


# two-coloured matchings -----------------------------------------------------

@dataclass(frozen=True)
class TwoColouredMatching:
    arches: tuple[tuple[int, int], ...]
    dotted: tuple[bool, ...]

    def __post_init__(self):
        order = sorted(range(len(self.arches)), key=lambda i: self.arches[i])
        object.__setattr__(self, "arches", tuple(self.arches[i] for i in order))
        object.__setattr__(self, "dotted", tuple(bool(self.dotted[i]) for i in order))
        n = len(self.arches)
        if len(self.dotted) != n:
            raise InvalidCarrierError("one colour flag per arch")
        if sorted(p for a in self.arches for p in a) != list(range(1, 2 * n + 1)):
            raise InvalidCarrierError("arch endpoints must use each position 1..2n once")

    @property
    def n(self) -> int:
        return len(self.arches)

    def noncrossing(self) -> bool:
        return not any(l1 < l2 < r1 < r2 for (l1, r1), (l2, r2) in itertools.permutations(self.arches, 2))

    def nesting_pairs(self) -> Iterator[tuple[int, int]]:
        """(inner, outer) arch indices."""
        for x, (lx, rx) in enumerate(self.arches):
            for y, (ly, ry) in enumerate(self.arches):
                if ly < lx and rx < ry:
                    yield x, y

    def grand_dyck_colouring(self) -> bool:
        return self.noncrossing() and all(self.dotted[x] == self.dotted[y] for x, y in self.nesting_pairs())

    def schroder_colouring(self) -> bool:
        return self.noncrossing() and not any(self.dotted[y] for _, y in self.nesting_pairs())

    def to_pair(self, profile: Profile) -> GeneralizedPair:
        if not self.noncrossing():
            raise InvalidCarrierError("crossing arches")
        n = self.n
        s_rows, r_rows = [0] * n, [0] * n
        for x, y in self.nesting_pairs():
            s_rows[x] |= 1 << y
        for x, (_, rx) in enumerate(self.arches):
            if self.dotted[x]:
                s_rows[x] |= 1 << x
            for y, (ly, _) in enumerate(self.arches):
                if rx < ly:
                    r_rows[x] |= 1 << y
        return GeneralizedPair(n, BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows), profile)

    @classmethod
    def from_pair(cls, gp: GeneralizedPair) -> TwoColouredMatching:
        base = gp.base()
        m = pair_to_matching(base)
        rank = left_rank(base)
        by_rank = sorted(range(gp.n), key=rank.__getitem__)
        return cls(m.arches, tuple((x, x) in gp.s for x in by_rank))


# Grand-Dyck paths -----------------------------------------------------------

def _check_grand_dyck_word(path: str) -> None:
    if set(path) - {"U", "D"}:
        raise InvalidCarrierError(f"Grand-Dyck path {path!r} must use only U and D")
    if path.count("U") != path.count("D"):
        raise InvalidCarrierError(f"Grand-Dyck path {path!r} is unbalanced")


def granddyck_to_matching(path: str) -> TwoColouredMatching:
    """Excursions above the axis become solid arches, those below become dotted ones."""
    _check_grand_dyck_word(path)
    h, stack, arches, dotted = 0, [], [], []
    for i, c in enumerate(path, start=1):
        nh = h + (1 if c == "U" else -1)
        if abs(nh) > abs(h):
            stack.append(i)
        else:
            arches.append((stack.pop(), i))
            dotted.append(h < 0)
        h = nh
    return TwoColouredMatching(tuple(arches), tuple(dotted))


def matching_to_granddyck(m: TwoColouredMatching) -> str:
    if not m.grand_dyck_colouring():
        raise InvalidCarrierError("nested arches must share a colour")
    steps = [""] * (2 * m.n)
    for (l, r), dot in zip(m.arches, m.dotted):
        steps[l - 1], steps[r - 1] = ("D", "U") if dot else ("U", "D")
    return "".join(steps)


def granddyck_to_pair(path: str) -> GeneralizedPair:
    return granddyck_to_matching(path.strip()).to_pair(GRAND_DYCK)


def pair_to_granddyck(gp: GeneralizedPair) -> str:
    rep = verify_generalized(gp.s, gp.r, GRAND_DYCK)
    if not rep.valid:
        raise InvalidPairError("not a Grand-Dyck pair", rep)
    return matching_to_granddyck(TwoColouredMatching.from_pair(gp))


def grand_dyck_paths(n: int) -> Iterator[str]:
    """All balanced U/D words of length 2n, brute force."""
    for ups in itertools.combinations(range(2 * n), n):
        w = ["D"] * (2 * n)
        for i in ups:
            w[i] = "U"
        yield "".join(w)


# Schröder paths -------------------------------------------------------------

def schroder_to_matching(path: str) -> TwoColouredMatching:
    """H steps become childless dotted arches on two adjacent positions."""
    path = path.strip()
    if set(path) - {"U", "D", "H"}:
        raise InvalidCarrierError(f"Schröder path {path!r} must use only U, D, H")
    pos, stack, arches, dotted = 1, [], [], []
    for c in path:
        if c == "U":
            stack.append(pos)
            pos += 1
        elif c == "D":
            if not stack:
                raise InvalidCarrierError(f"{path} dips below the axis")
            arches.append((stack.pop(), pos))
            dotted.append(False)
            pos += 1
        else:
            arches.append((pos, pos + 1))
            dotted.append(True)
            pos += 2
    if stack:
        raise InvalidCarrierError(f"{path} does not return to the axis")
    return TwoColouredMatching(tuple(arches), tuple(dotted))


def matching_to_schroder(m: TwoColouredMatching) -> str:
    if not m.schroder_colouring():
        raise InvalidCarrierError("dotted arches may not contain other arches")
    kind = {}
    for (l, r), dot in zip(m.arches, m.dotted):
        if dot:
            kind[l] = "H"
        else:
            kind[l], kind[r] = "U", "D"
    return "".join(kind[p] for p in sorted(kind))


def schroder_to_pair(path: str) -> GeneralizedPair:
    return schroder_to_matching(path).to_pair(SCHRODER)


def pair_to_schroder(gp: GeneralizedPair) -> str:
    rep = verify_generalized(gp.s, gp.r, SCHRODER)
    if not rep.valid:
        raise InvalidPairError("not a Schröder pair", rep)
    return matching_to_schroder(TwoColouredMatching.from_pair(gp))


def schroder_paths(n: int) -> Iterator[str]:
    """All U/D/H words of semilength n staying weakly above the axis, brute force."""

    def grow(prefix: str, h: int, length: int) -> Iterator[str]:
        if length == 2 * n:
            if h == 0:
                yield prefix
            return
        if length + 2 <= 2 * n:
            yield from grow(prefix + "H", h, length + 2)
        if h + 1 <= 2 * n - length - 1:
            yield from grow(prefix + "U", h + 1, length + 1)
        if h > 0:
            yield from grow(prefix + "D", h - 1, length + 1)

    yield from grow("", 0, 0)


@lru_cache(maxsize=None)
def large_schroder(n: int) -> int:
    """r_n by the standard recurrence r_n = r_{n-1} + sum_k r_k r_{n-1-k}."""
    if n == 0:
        return 1
    return large_schroder(n - 1) + sum(large_schroder(k) * large_schroder(n - 1 - k) for k in range(n))


def central_binomial(n: int) -> int:
    return math.comb(2 * n, n)


# equational reformulations --------------------------------------------------

def commutes_with_diagonal(s: BinaryRelation) -> bool:
    d = diagonal_part(s)
    return compose(d, s) == compose(s, d)


def absorbs_diagonal(s: BinaryRelation) -> bool:
    d = diagonal_part(s)
    return compose(s, d) == d


def check_axiom_reformulations(gp: GeneralizedPair) -> bool:
    """(choose) ⇔ 𝒟(S)∘S = S∘𝒟(S); (min) ⇔ S∘𝒟(S) = 𝒟(S) ⇒ S∘𝒟(S) ⊆ 𝒟(S)∘S."""
    s = gp.s
    if not verify_generalized(s, gp.r, UNRESTRICTED).valid:
        raise InvalidPairError("reformulations need a member of U(n)")
    d = diagonal_part(s)
    choose_ok = (_choose_witness(s) is None) == commutes_with_diagonal(s)
    min_ok = (_min_witness(s) is None) == absorbs_diagonal(s)
    contain_ok = True
    if absorbs_diagonal(s):
        contain_ok = compose(s, d) <= compose(d, s)
    return choose_ok and min_ok and contain_ok
