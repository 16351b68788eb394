from __future__ import annotations

import math

import pytest

from catpairs.general import GRAND_DYCK, SCHRODER, UNRESTRICTED, comp_hk, count_comp_hk, enumerate_profile
from catpairs.oracle import EnvelopeError, oracle_catalan, oracle_generalized, oracle_posets
from catpairs.pairs import count
from catpairs.relcore import is_strict_order


def test_oracle_catalan_empty():
    rep = oracle_catalan(0)
    assert (rep.labeledCount, rep.isoClassCount) == (1, 1)


@pytest.mark.parametrize("n", range(6))
def test_oracle_catalan_matches_recursion(n):
    rep = oracle_catalan(n)
    assert rep.isoClassCount == count(n)
    # Catalan pairs are rigid, so every class has n! labelings
    assert rep.labeledCount == math.factorial(n) * count(n)
    assert rep.automorphismCheck
    assert rep.isoClassCount <= rep.labeledCount


def test_oracle_rejections_deterministic():
    a, b = oracle_catalan(4), oracle_catalan(4)
    assert a == b
    assert a.perAxiomRejectionCounts["tot"] == a.perAxiomRejectionCounts["inters"] == 0
    assert sum(a.perAxiomRejectionCounts.values()) + a.labeledCount == 4 ** 6


def test_oracle_envelope():
    with pytest.raises(EnvelopeError):
        oracle_catalan(6)
    with pytest.raises(EnvelopeError):
        oracle_posets(6)
    with pytest.raises(EnvelopeError):
        oracle_generalized(5, UNRESTRICTED)
    with pytest.raises(EnvelopeError):
        oracle_generalized(7, comp_hk(2, 1))


@pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 2), (3, 5), (4, 16), (5, 63)])
def test_oracle_posets(n, expected):
    classes = oracle_posets(n)
    assert len(classes) == expected
    assert all(is_strict_order(r) for r in classes)


@pytest.mark.parametrize(
    "profile, formula",
    [
        (UNRESTRICTED, lambda n: 2 ** n * count(n)),
        (GRAND_DYCK, lambda n: math.comb(2 * n, n)),
        (SCHRODER, lambda n: [1, 2, 6, 22, 90][n]),
    ],
)
@pytest.mark.parametrize("n", range(5))
def test_oracle_reflexive_profiles(profile, formula, n):
    rep = oracle_generalized(n, profile)
    assert rep.isoClassCount == formula(n)
    assert rep.automorphismCheck
    if profile is not UNRESTRICTED:
        assert rep.isoClassCount == len(enumerate_profile(n, profile))


def test_oracle_examples():
    assert oracle_generalized(3, UNRESTRICTED).isoClassCount == 40
    assert oracle_generalized(2, GRAND_DYCK).isoClassCount == 6
    assert oracle_generalized(2, SCHRODER).isoClassCount == 6


@pytest.mark.parametrize("h, k", [(1, 1), (2, 1), (1, 2), (3, 1)])
@pytest.mark.parametrize("n", range(7))
def test_oracle_comp_hk(h, k, n):
    assert oracle_generalized(n, comp_hk(h, k)).isoClassCount == count_comp_hk(n, h, k)


def test_oracle_factorial():
    assert [oracle_generalized(n, "factorial").isoClassCount for n in range(7)] == [math.factorial(n) for n in range(7)]
