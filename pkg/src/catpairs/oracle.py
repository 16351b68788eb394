"""Brute-force ground truth, independent of the recursive enumerator.

Candidates are generated by giving every unordered pair ``{i, j}`` one of
the four states ``iSj, jSi, iRj, jRi`` (so tot and inters hold by
construction) and filtering the rest of the axioms with vectorized numpy
checks.  Isomorphism classes come from the minimum integer code over all
n! relabelings.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .relcore import BinaryRelation

CATALAN_ENVELOPE = 5
POSET_ENVELOPE = 5
REFLEXIVE_ENVELOPE = 4
FRAME_ENVELOPE = 6


class EnvelopeError(ValueError):
    """n is beyond the size the brute-force scan is meant for."""


@dataclass
class OracleReport:
    n: int
    labeledCount: int
    isoClassCount: int
    perAxiomRejectionCounts: dict = field(default_factory=dict)
    automorphismCheck: bool = True

    def to_json_obj(self) -> dict:
        return {
            "n": self.n,
            "labeledCount": self.labeledCount,
            "isoClassCount": self.isoClassCount,
            "perAxiomRejectionCounts": dict(self.perAxiomRejectionCounts),
            "automorphismCheck": self.automorphismCheck,
        }


# candidate generation -------------------------------------------------------

def _digits(count: int, base: int, width: int) -> np.ndarray:
    """Rows are all base-``base`` words of length ``width``; shape (count, width)."""
    idx = np.arange(count, dtype=np.int64)
    out = np.empty((count, width), dtype=np.int8)
    for col in range(width):
        out[:, col] = idx % base
        idx //= base
    return out


def _state_candidates(n: int, reflexive: bool) -> tuple[np.ndarray, np.ndarray]:
    slots = list(itertools.combinations(range(n), 2))
    m = len(slots)
    total = 4 ** m * (2 ** n if reflexive else 1)
    words = _digits(total, 4, m) if not reflexive else None
    if reflexive:
        states = _digits(4 ** m, 4, m)
        diags = _digits(2 ** n, 2, n)
        words = np.repeat(states, 2 ** n, axis=0)
        diag = np.tile(diags, (4 ** m, 1))
    s = np.zeros((total, n, n), dtype=bool)
    r = np.zeros((total, n, n), dtype=bool)
    for c, (i, j) in enumerate(slots):
        st = words[:, c]
        s[:, i, j] = st == 0
        s[:, j, i] = st == 1
        r[:, i, j] = st == 2
        r[:, j, i] = st == 3
    if reflexive:
        for x in range(n):
            s[:, x, x] = diag[:, x] == 1
    return s, r


def _frame_candidates(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Two-colourings of the pairs of the natural order 0 < ... < n-1."""
    slots = list(itertools.combinations(range(n), 2))
    words = _digits(2 ** len(slots), 2, len(slots))
    s = np.zeros((len(words), n, n), dtype=bool)
    r = np.zeros_like(s)
    for c, (i, j) in enumerate(slots):
        s[:, i, j] = words[:, c] == 0
        r[:, i, j] = words[:, c] == 1
    return s, r


# vectorized axioms ----------------------------------------------------------

def _compose(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.matmul(a.astype(np.uint8), b.astype(np.uint8)) > 0


def _power(a: np.ndarray, k: int) -> np.ndarray:
    out = a
    for _ in range(k - 1):
        out = _compose(out, a)
    return out


def _contained(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ~(a & ~b).any(axis=(1, 2))


def _irreflexive(a: np.ndarray) -> np.ndarray:
    return ~np.diagonal(a, axis1=1, axis2=2).any(axis=1)


def _transitive(a: np.ndarray) -> np.ndarray:
    return _contained(_compose(a, a), a)


def _choose(s: np.ndarray) -> np.ndarray:
    d = np.diagonal(s, axis1=1, axis2=2)
    off = s & ~np.eye(s.shape[1], dtype=bool)
    clash = d[:, :, None] != d[:, None, :]
    return ~(off & clash).any(axis=(1, 2))


def _minimal(s: np.ndarray) -> np.ndarray:
    d = np.diagonal(s, axis1=1, axis2=2)
    off = s & ~np.eye(s.shape[1], dtype=bool)
    below = off.any(axis=1)  # some x != y with x S y
    return ~(d & below).any(axis=1)


def _filter(s, r, checks) -> tuple[np.ndarray, np.ndarray, dict]:
    """Apply checks in order; count each candidate under its first failed axiom."""
    rejections = {}
    for name, fn in checks:
        ok = fn(s, r)
        rejections[name] = int((~ok).sum())
        s, r = s[ok], r[ok]
    return s, r, rejections


# canonical codes ------------------------------------------------------------

def _codes(mats: list[np.ndarray]) -> np.ndarray:
    """Integer code of a tuple of relations, one per candidate."""
    flat = np.concatenate([m.reshape(len(m), -1) for m in mats], axis=1).astype(object)
    weights = np.array([1 << i for i in range(flat.shape[1])], dtype=object)
    return flat.dot(weights) if flat.shape[1] else np.zeros(len(flat), dtype=object)


def _canonical_codes(mats: list[np.ndarray]) -> tuple[np.ndarray, np.ndarray]:
    """(minimum code over relabelings, automorphism count) per candidate."""
    n = mats[0].shape[1]
    count = len(mats[0])
    if count == 0:
        return np.zeros(0, dtype=object), np.zeros(0, dtype=np.int64)
    own = _codes(mats)
    best = None
    per_perm = []
    for perm in itertools.permutations(range(n)):
        p = list(perm)
        codes = _codes([m[:, p][:, :, p] for m in mats])
        per_perm.append(codes)
        best = codes.copy() if best is None else np.minimum(best, codes)
    # |Aut| = number of relabelings that fix the structure
    aut = np.zeros(count, dtype=np.int64)
    for codes in per_perm:
        aut += (codes == own).astype(np.int64)
    return best, aut


def _report(n: int, mats: list[np.ndarray], rejections: dict) -> OracleReport:
    labeled = len(mats[0])
    best, aut = _canonical_codes(mats)
    classes = {}
    for code, a in zip(best, aut):
        classes[code] = int(a)
    orbit_sum = sum(math.factorial(n) // a for a in classes.values())
    return OracleReport(n, labeled, len(classes), rejections, orbit_sum == labeled)


# public oracles -------------------------------------------------------------

def oracle_catalan(n: int) -> OracleReport:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > CATALAN_ENVELOPE:
        raise EnvelopeError(f"oracle_catalan envelope is n <= {CATALAN_ENVELOPE}")
    s, r = _state_candidates(n, reflexive=False)
    s, r, rej = _filter(s, r, [
        ("tot", lambda s, r: np.ones(len(s), dtype=bool)),
        ("inters", lambda s, r: np.ones(len(s), dtype=bool)),
        ("ordS", lambda s, r: _transitive(s)),
        ("ordR", lambda s, r: _transitive(r)),
        ("comp", lambda s, r: _contained(_compose(s, r), r)),
    ])
    return _report(n, [s, r], rej)


def oracle_posets(n: int) -> list[BinaryRelation]:
    """One canonical strict order per isomorphism class."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > POSET_ENVELOPE:
        raise EnvelopeError(f"oracle_posets envelope is n <= {POSET_ENVELOPE}")
    slots = list(itertools.combinations(range(n), 2))
    words = _digits(3 ** len(slots), 3, len(slots))
    a = np.zeros((len(words), n, n), dtype=bool)
    for c, (i, j) in enumerate(slots):
        a[:, i, j] = words[:, c] == 0
        a[:, j, i] = words[:, c] == 1
    a = a[_transitive(a)]
    best, _ = _canonical_codes([a])
    out = []
    for code in sorted(set(best)):
        pairs = [(x, y) for x in range(n) for y in range(n) if int(code) >> (x * n + y) & 1]
        out.append(BinaryRelation.from_pairs(n, pairs))
    return out


def oracle_generalized(n: int, profile) -> OracleReport:
    """Brute-force counts for a relaxed profile (a ``general.Profile`` or its text form)."""
    kind = getattr(profile, "kind", None) or str(profile).split(":")[0]
    h, k = getattr(profile, "h", 1), getattr(profile, "k", 1)
    if kind == "comp-hk" and not hasattr(profile, "h"):
        h, k = (int(v) for v in str(profile).split(":")[1].split(","))
    if n < 0:
        raise ValueError("n must be non-negative")
    if kind in ("unrestricted", "grand-dyck", "schroder"):
        if n > REFLEXIVE_ENVELOPE:
            raise EnvelopeError(f"oracle_generalized envelope for {kind} is n <= {REFLEXIVE_ENVELOPE}")
        s, r = _state_candidates(n, reflexive=True)
        checks = [
            ("transS", lambda s, r: _transitive(s)),
            ("ordR", lambda s, r: _transitive(r)),
            ("comp", lambda s, r: _contained(_compose(s, r), r)),
        ]
        if kind == "grand-dyck":
            checks.append(("choose", lambda s, r: _choose(s)))
        elif kind == "schroder":
            checks.append(("min", lambda s, r: _minimal(s)))
        s, r, rej = _filter(s, r, checks)
        return _report(n, [s, r], rej)
    if kind in ("factorial", "comp-hk", "catalan"):
        if n > FRAME_ENVELOPE:
            raise EnvelopeError(f"oracle_generalized envelope for {kind} is n <= {FRAME_ENVELOPE}")
        s, r = _frame_candidates(n)
        checks = [("ordS", lambda s, r: _transitive(s)), ("ordR", lambda s, r: _transitive(r))]
        if kind == "comp-hk":
            checks.append(("comp(h,k)", lambda s, r: _contained(_compose(_power(s, h), _power(r, k)), r)))
        elif kind == "catalan":
            checks.append(("comp", lambda s, r: _contained(_compose(s, r), r)))
        s, r, rej = _filter(s, r, checks)
        # S ∪ R is linear, so these structures are rigid: one frame per class
        return OracleReport(n, len(s) * math.factorial(n), len(s), rej, True)
    raise ValueError(f"unknown profile {profile!r}")
