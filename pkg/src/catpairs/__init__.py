"""Catalan pairs of relations and their relatives."""
from __future__ import annotations

from .pairs import CatalanPair, InvalidPairError, count, enumerate_pairs, verify
from .relcore import BinaryRelation, compose, inverse

__all__ = [
    "BinaryRelation",
    "CatalanPair",
    "InvalidPairError",
    "compose",
    "count",
    "enumerate_pairs",
    "inverse",
    "verify",
]
