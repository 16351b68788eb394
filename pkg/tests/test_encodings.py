from __future__ import annotations

import itertools
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from catpairs.encodings import (
    FORMATS,
    ArchMatching,
    DyckPath,
    InvalidCarrierError,
    NcPartition,
    Permutation,
    PlaneTree,
    carrier_to_pair,
    dyck_to_matching,
    dyck_tunnels,
    matching_to_dyck,
    matching_to_pair,
    pair_to_carrier,
    pair_to_dyck,
    pair_to_matching,
    pair_to_partition,
    pair_to_perm,
    pair_to_tree,
    parse_carrier,
    partition_to_pair,
    perm_to_pair,
    tree_to_pair,
)
from catpairs.pairs import EMPTY_PAIR, CatalanPair, InvalidPairError, canonical, enumerate_pairs

from conftest import WORKED_DYCK, WORKED_MATCHING, WORKED_PARTITION


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


def pair(n, s, r):
    return CatalanPair.from_pairs(n, s, r)


ONE = pair(1, [], [])
NESTED = pair(2, [(1, 0)], [])


# carriers -------------------------------------------------------------------

@pytest.mark.parametrize("text", ["(1,3),(2,4)", "(1,2),(2,3)", "(2,1)"])
def test_bad_matchings(text):
    with pytest.raises(InvalidCarrierError):
        ArchMatching.parse(text)


@pytest.mark.parametrize("text", ["DU", "UUD", "UXD"])
def test_bad_dyck(text):
    with pytest.raises(InvalidCarrierError):
        DyckPath.parse(text)


def test_crossing_partition_rejected():
    with pytest.raises(InvalidCarrierError):
        NcPartition.parse("{1,3}{2,4}")


def test_bad_permutation():
    with pytest.raises(InvalidCarrierError):
        Permutation.parse("1 1")


@pytest.mark.parametrize("fmt", ["matching", "dyck", "perm", "tree", "partition"])
def test_text_round_trip_of_carrier(fmt):
    for p in enumerate_pairs(4):
        obj = pair_to_carrier(fmt, p)
        assert parse_carrier(fmt, str(obj)) == obj


# matchings and Dyck paths ---------------------------------------------------

def test_matching_examples(worked_pair):
    assert matching_to_pair(ArchMatching.parse("(1,2)")) == ONE
    assert matching_to_pair(ArchMatching.parse("(1,4),(2,3)")) == NESTED
    assert matching_to_pair(ArchMatching.parse(WORKED_MATCHING)) == worked_pair


def test_pair_to_matching_examples():
    assert pair_to_matching(EMPTY_PAIR).arches == ()
    assert str(pair_to_matching(pair(2, [], [(0, 1)]))) == "(1,2),(3,4)"


def test_pair_to_matching_rejects_invalid():
    with pytest.raises(InvalidPairError):
        pair_to_matching(pair(2, [], []))


@pytest.mark.parametrize(
    "matching, path",
    [("(1,2)", "UD"), ("(1,4),(2,3)", "UUDD"), (WORKED_MATCHING, WORKED_DYCK)],
)
def test_matching_dyck_codec(matching, path):
    m = ArchMatching.parse(matching)
    assert str(matching_to_dyck(m)) == path
    assert dyck_to_matching(DyckPath.parse(path)) == m


def test_tunnel_examples(worked_pair):
    assert dyck_tunnels(DyckPath.parse("UD")) == ONE
    assert dyck_tunnels(DyckPath.parse("UUDD")) == NESTED
    assert dyck_tunnels(DyckPath.parse(WORKED_DYCK)) == worked_pair


def all_dyck_paths(n):
    for ups in itertools.combinations(range(2 * n), n):
        w = ["D"] * (2 * n)
        for i in ups:
            w[i] = "U"
        try:
            yield DyckPath.parse("".join(w))
        except InvalidCarrierError:
            pass


@pytest.mark.parametrize("n", range(9))
def test_tunnels_agree_with_matching_route(n):
    paths = list(all_dyck_paths(n))
    assert len(paths) == catalan(n)
    for d in paths:
        assert dyck_tunnels(d) == matching_to_pair(dyck_to_matching(d))


# permutations ---------------------------------------------------------------

def test_perm_examples():
    assert perm_to_pair(Permutation((1,))) == (ONE, True)
    p, ok = perm_to_pair(Permutation((2, 1)))
    assert ok and p == pair(2, [(0, 1)], [])
    p, ok = perm_to_pair(Permutation((2, 3, 1)))
    assert not ok
    assert p == pair(3, [(0, 1), (0, 2)], [(1, 2)])


@pytest.mark.parametrize("n", range(9))
def test_comp_passing_permutations(n):
    passing = sum(perm_to_pair(Permutation(v))[1] for v in itertools.permutations(range(1, n + 1)))
    assert passing == catalan(n)


def test_only_231_fails_at_three():
    bad = [v for v in itertools.permutations((1, 2, 3)) if not perm_to_pair(Permutation(v))[1]]
    assert bad == [(2, 3, 1)]


def test_perm_carrier_rejects_failing_comp():
    with pytest.raises(InvalidPairError):
        carrier_to_pair("perm", Permutation((2, 3, 1)))


# trees and partitions -------------------------------------------------------

def test_tree_examples():
    assert tree_to_pair(PlaneTree()) == EMPTY_PAIR
    assert tree_to_pair(PlaneTree.parse("()")) == ONE
    path = PlaneTree.parse("(())")
    assert tree_to_pair(path) == NESTED
    assert str(pair_to_matching(tree_to_pair(path))) == "(1,4),(2,3)"


def test_tree_word_is_dyck_word():
    for p in enumerate_pairs(6):
        word = str(pair_to_tree(p)).replace("(", "U").replace(")", "D")
        assert word == str(pair_to_dyck(p))


def test_partition_examples(worked_pair):
    singletons = partition_to_pair(NcPartition(4, ((1,), (2,), (3,), (4,))))
    assert singletons.s.pairs() == [(x, y) for x in range(4) for y in range(x)]
    assert not singletons.r
    assert partition_to_pair(NcPartition.parse("{1}")) == ONE
    assert canonical(partition_to_pair(NcPartition.parse(WORKED_PARTITION))) == canonical(worked_pair)
    assert str(pair_to_partition(worked_pair)) == WORKED_PARTITION


# round trips ----------------------------------------------------------------

CODECS = {
    "matching": (pair_to_matching, matching_to_pair),
    "dyck": (pair_to_dyck, dyck_tunnels),
    "perm": (pair_to_perm, lambda pi: perm_to_pair(pi)[0]),
    "tree": (pair_to_tree, tree_to_pair),
    "partition": (pair_to_partition, partition_to_pair),
}


@pytest.mark.parametrize("name", sorted(CODECS))
@pytest.mark.parametrize("n", range(9))
def test_round_trip_exact_on_canonical(name, n):
    enc, dec = CODECS[name]
    seen = set()
    for p in enumerate_pairs(n):
        obj = enc(p)
        seen.add(str(obj))
        assert canonical(dec(obj)) == p
    assert len(seen) == catalan(n)


@st.composite
def relabeled(draw):
    n = draw(st.integers(0, 7))
    p = draw(st.sampled_from(enumerate_pairs(n)))
    return p, p.relabel(list(draw(st.permutations(list(range(n))))))


@given(relabeled(), st.sampled_from(sorted(CODECS)))
def test_codecs_ignore_labels(pq, name):
    p, q = pq
    enc, _ = CODECS[name]
    assert str(enc(p)) == str(enc(q))


def test_json_format_canonicalizes():
    p = enumerate_pairs(4)[5]
    q = p.relabel([3, 1, 0, 2])
    assert pair_to_carrier("json", q) == p
    assert "json" in FORMATS
