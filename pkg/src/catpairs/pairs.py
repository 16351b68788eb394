"""Catalan pairs: the five axioms, composition/decomposition, enumeration."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

from .relcore import (
    BinaryRelation,
    _check_sizes,
    _iter_bits,
    compose,
    inverse,
    relabel,
    restrict,
    symmetrize,
)

CATALAN_AXIOMS = ("ordS", "ordR", "tot", "inters", "comp")


class InvalidPairError(ValueError):
    """The relations do not form a pair of the requested kind."""

    def __init__(self, message: str, report: Optional[AxiomReport] = None):
        super().__init__(message)
        self.report = report


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of an axiom check: each axiom maps to its first witness, or None."""

    witnesses: dict = field(default_factory=dict)

    @property
    def flags(self) -> dict:
        return {name: w is None for name, w in self.witnesses.items()}

    @property
    def valid(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def holds(self, axiom: str) -> bool:
        return self.witnesses[axiom] is None

    def failed(self) -> list[str]:
        return [name for name, w in self.witnesses.items() if w is not None]

    def to_json_obj(self) -> dict:
        return {
            "valid": self.valid,
            "axioms": {
                name: {"holds": w is None, "witness": None if w is None else list(w)}
                for name, w in self.witnesses.items()
            },
        }


@dataclass(frozen=True, slots=True)
class CatalanPair:
    n: int
    s: BinaryRelation
    r: BinaryRelation

    def __post_init__(self):
        if self.s.n != self.n or self.r.n != self.n:
            raise ValueError("component sizes disagree with n")

    @classmethod
    def from_pairs(cls, n: int, s_pairs, r_pairs) -> CatalanPair:
        return cls(n, BinaryRelation.from_pairs(n, s_pairs), BinaryRelation.from_pairs(n, r_pairs))

    @classmethod
    def checked(cls, s: BinaryRelation, r: BinaryRelation) -> CatalanPair:
        report = verify(s, r)
        if not report.valid:
            raise InvalidPairError(f"not a Catalan pair: {', '.join(report.failed())} fail", report)
        return cls(s.n, s, r)

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "S": [list(p) for p in self.s.pairs()],
            "R": [list(p) for p in self.r.pairs()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> CatalanPair:
        n = int(obj["n"])
        return cls.from_pairs(n, obj["S"], obj["R"])

    def relabel(self, perm: Sequence[int]) -> CatalanPair:
        return CatalanPair(self.n, relabel(self.s, perm), relabel(self.r, perm))

    def restrict(self, subset) -> CatalanPair:
        s = restrict(self.s, subset)
        return CatalanPair(s.n, s, restrict(self.r, subset))


EMPTY_PAIR = CatalanPair(0, BinaryRelation(0), BinaryRelation(0))


# witnesses ------------------------------------------------------------------

def strict_order_witness(a: BinaryRelation) -> Optional[tuple]:
    """``(x, x)`` for a reflexive point, ``(x, y, z)`` for a broken transitivity."""
    rows = a.rows()
    for x in range(a.n):
        if rows[x] >> x & 1:
            return (x, x)
    return transitivity_witness(a)


def transitivity_witness(a: BinaryRelation) -> Optional[tuple]:
    rows = a.rows()
    for x in range(a.n):
        for y in _iter_bits(rows[x]):
            missing = rows[y] & ~rows[x]
            if missing:
                return (x, y, next(_iter_bits(missing)))
    return None


def composition_witness(a: BinaryRelation, b: BinaryRelation, target: BinaryRelation) -> Optional[tuple]:
    """First ``(x, y, z)`` with ``x a y b z`` but ``(x, z)`` not in ``target``."""
    a_rows, b_rows, t_rows = a.rows(), b.rows(), target.rows()
    for x in range(a.n):
        best = None
        for y in _iter_bits(a_rows[x]):
            bad = b_rows[y] & ~t_rows[x]
            if bad:
                z = next(_iter_bits(bad))
                if best is None or (z, y) < (best[2], best[1]):
                    best = (x, y, z)
        if best is not None:
            return best
    return None


def _tot_witness(s: BinaryRelation, r: BinaryRelation) -> Optional[tuple]:
    cover = symmetrize(s).rows()
    rb = symmetrize(r).rows()
    for x in range(s.n):
        missing = ~(cover[x] | rb[x]) & ((1 << s.n) - 1) & ~(1 << x)
        if missing:
            return (x, next(_iter_bits(missing)))
    return None


def _inters_witness(s: BinaryRelation, r: BinaryRelation) -> Optional[tuple]:
    sb = symmetrize(s).rows()
    rb = symmetrize(r).rows()
    for x in range(s.n):
        both = sb[x] & rb[x] & ~(1 << x)
        if both:
            return (x, next(_iter_bits(both)))
    return None


def verify(s: BinaryRelation, r: BinaryRelation) -> AxiomReport:
    """Evaluate every Catalan axiom independently (no short-circuit)."""
    _check_sizes(s, r)
    return AxiomReport({
        "ordS": strict_order_witness(s),
        "ordR": strict_order_witness(r),
        "tot": _tot_witness(s, r),
        "inters": _inters_witness(s, r),
        "comp": composition_witness(s, r, r),
    })


def is_catalan(s: BinaryRelation, r: BinaryRelation) -> bool:
    return verify(s, r).valid


def check_comp_star(s: BinaryRelation, r: BinaryRelation) -> bool:
    """Whether ``S̄∘R ⊆ R ∪ S⁻¹``; equivalent to comp given the other four axioms."""
    rep = verify(s, r)
    for ax in ("ordS", "ordR", "tot", "inters"):
        if not rep.holds(ax):
            raise InvalidPairError(f"comp* needs {ax} to hold", rep)
    return compose(symmetrize(s), r) <= (r | inverse(s))


# composition ----------------------------------------------------------------

def pair_compose(alpha: CatalanPair, beta: CatalanPair) -> CatalanPair:
    """``α∘β`` on ``X ∪ {z} ∪ Y`` with X = 0..n-1, z = n, Y = n+1..n+m."""
    n, m = alpha.n, beta.n
    z = n
    y_mask = ((1 << m) - 1) << (n + 1)
    s_rows, r_rows = [], []
    for sx, rx in zip(alpha.s.rows(), alpha.r.rows()):
        s_rows.append(sx | 1 << z)
        r_rows.append(rx | y_mask)
    s_rows.append(0)
    r_rows.append(y_mask)
    for sy, ry in zip(beta.s.rows(), beta.r.rows()):
        s_rows.append(sy << (n + 1))
        r_rows.append(ry << (n + 1))
    return CatalanPair(n + m + 1, BinaryRelation.from_rows(s_rows), BinaryRelation.from_rows(r_rows))


def decomposition_indices(gamma: CatalanPair) -> tuple[list[int], int, list[int]]:
    """Split ``gamma`` into ``(X, x0, Y)``; no axiom checking.

    ``x0`` is the R-least S-maximal element, ``X = {x : x S x0}`` and
    ``Y = {x : x0 R x}``.
    """
    if gamma.n == 0:
        raise ValueError("the empty pair has no decomposition")
    s_rows = gamma.s.rows()
    r_rows = gamma.r.rows()
    maximal = [x for x in range(gamma.n) if s_rows[x] == 0]
    # maximal elements form an R-chain; its minimum has no R-predecessor among them
    max_mask = sum(1 << x for x in maximal)
    x0 = next(x for x in maximal if not any(r_rows[w] >> x & 1 for w in _iter_bits(max_mask)))
    xs = [x for x in range(gamma.n) if s_rows[x] >> x0 & 1]
    ys = list(_iter_bits(r_rows[x0]))
    return xs, x0, ys


def pair_decompose(gamma: CatalanPair) -> tuple[CatalanPair, CatalanPair]:
    """The unique ``(α, β)`` with ``α∘β ≅ γ``."""
    if gamma.n == 0:
        raise ValueError("the empty pair has no decomposition")
    rep = verify(gamma.s, gamma.r)
    if not rep.valid:
        raise InvalidPairError("decompose needs a Catalan pair", rep)
    return _split(gamma)


def _split(gamma: CatalanPair) -> tuple[CatalanPair, CatalanPair]:
    xs, _, ys = decomposition_indices(gamma)
    return gamma.restrict(xs), gamma.restrict(ys)


def decomposition_map(gamma: CatalanPair) -> list[int]:
    """Index map sending ``pair_compose(*pair_decompose(gamma))`` onto ``gamma``."""
    xs, x0, ys = decomposition_indices(gamma)
    return xs + [x0] + ys


# enumeration ----------------------------------------------------------------

@lru_cache(maxsize=None)
def _enumerate(n: int) -> tuple[CatalanPair, ...]:
    if n == 0:
        return (EMPTY_PAIR,)
    out = []
    for k in range(n):
        rights = _enumerate(n - 1 - k)
        for alpha in _enumerate(k):
            for beta in rights:
                out.append(pair_compose(alpha, beta))
    return tuple(out)


def enumerate_pairs(n: int) -> list[CatalanPair]:
    """One labeled representative per isomorphism class of 𝒞(n)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return list(_enumerate(n))


@lru_cache(maxsize=None)
def count(n: int) -> int:
    """|𝒞(n)| from the convolution recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return 1
    return sum(count(k) * count(n - 1 - k) for k in range(n))


# canonical labeling ---------------------------------------------------------

def linear_rank(s: BinaryRelation, r: BinaryRelation) -> list[int]:
    """Rank of each element in the linear order ``S ∪ R``.

    For Catalan and factorial pairs ``S ∪ R`` is a strict linear order, so
    the rank of ``x`` is its number of predecessors.  Raises if the union is
    not a linear order.
    """
    u = s | r
    rows = u.rows()
    n = s.n
    rank = [0] * n
    for x in range(n):
        for y in _iter_bits(rows[x]):
            rank[y] += 1
    # antisymmetric + score sequence 0..n-1 forces a transitive tournament
    if sorted(rank) != list(range(n)) or (u & inverse(u)):
        raise InvalidPairError("S ∪ R is not a linear order")
    return rank


def canonical(p: CatalanPair) -> CatalanPair:
    """Relabel so that ``S ∪ R`` is the natural order ``0 < 1 < ... < n-1``.

    Two Catalan pairs are isomorphic iff their canonical forms are equal.
    Enumeration output is already canonical.
    """
    return p.relabel(linear_rank(p.s, p.r))


def is_canonical(p: CatalanPair) -> bool:
    return linear_rank(p.s, p.r) == list(range(p.n))
