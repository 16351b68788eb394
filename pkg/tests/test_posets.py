from __future__ import annotations

import itertools
import math

import pytest

from catpairs.encodings import ArchMatching, DyckPath, dyck_tunnels, matching_to_pair, pair_to_dyck
from catpairs.oracle import oracle_posets
from catpairs.pairs import CatalanPair, canonical, enumerate_pairs, verify
from catpairs.posets import (
    ForbiddenSubposetError,
    NotStrictOrderError,
    analyze,
    comparability_components,
    connected_by_matching,
    count_connected,
    count_distributive,
    count_lattice,
    count_s_codes,
    distributive_path_criterion,
    distributive_structure,
    find_forbidden,
    find_m3_n5,
    in_r_class,
    is_distributive_lattice,
    is_lattice,
    lattice_path_criterion,
    pairs_with_s,
    r_is_connected,
    r_is_distributive,
    r_is_lattice,
    reconstruct_s,
    s_forest,
    s_tree_canonical,
    sim_classes,
)
from catpairs.relcore import BinaryRelation, inverse, restrict, symmetrize, transitive_closure


def rel(n, pairs):
    return BinaryRelation.from_pairs(n, pairs)


def chain(n):
    return transitive_closure(rel(n, [(i, i + 1) for i in range(n - 1)]))


def catalan(n):
    return math.comb(2 * n, n) // (n + 1)


# ~R classes -----------------------------------------------------------------

def test_sim_classes_trivial():
    assert sim_classes(BinaryRelation.empty(4)).classes == ((0, 1, 2, 3),)
    assert sim_classes(chain(4)).classes == ((0,), (1,), (2,), (3,))


def test_sim_classes_nine_element_example():
    # arches x9( x4( x2(x1) x3 ) x6( x5( x7 x8 ) ) ), indexed by left endpoint
    m = ArchMatching.parse("(1,18),(2,9),(3,6),(4,5),(7,8),(10,17),(11,16),(12,13),(14,15)")
    p = matching_to_pair(m)
    x = {"x9": 0, "x4": 1, "x2": 2, "x1": 3, "x3": 4, "x6": 5, "x5": 6, "x7": 7, "x8": 8}
    sc = sim_classes(p.r)
    assert sc.same(x["x1"], x["x2"])
    assert sc.same(x["x5"], x["x6"])
    assert not sc.same(x["x7"], x["x8"])


def test_sim_classes_need_order():
    with pytest.raises(NotStrictOrderError):
        sim_classes(rel(2, [(0, 0)]))


@pytest.mark.parametrize("n", range(7))
def test_sim_lemmas(n):
    for p in enumerate_pairs(n):
        r, s = p.r, p.s
        rb = symmetrize(r).rows()
        down, up = inverse(r).rows(), r.rows()
        sc = sim_classes(r)
        for cls in sc.classes:
            for x, y in itertools.combinations(cls, 2):
                # (i) equivalent points are R-incomparable
                assert (x, y) not in r and (y, x) not in r
                # (ii) equal up-sets and down-sets
                assert up[x] == up[y] and down[x] == down[y]
            # (iii) S is total on each class
            sub = restrict(s, cls)
            assert len(sub) == len(cls) * (len(cls) - 1) // 2
        # (iv) xSy with x, y in different classes has a separating a
        for x, y in s.pairs():
            if not sc.same(x, y):
                assert any(rb[a] >> x & 1 and (a, y) in s for a in range(n))
        # (v) R is well defined on classes
        for x, y in r.pairs():
            for x2 in sc.class_of(x):
                for y2 in sc.class_of(y):
                    assert (x2, y2) in r


# reconstruction -------------------------------------------------------------

def test_reconstruct_antichain():
    assert reconstruct_s(BinaryRelation.empty(2)) == rel(2, [(0, 1)])


@pytest.mark.parametrize(
    "pairs, kind",
    [([(0, 1), (2, 3)], "TwoPlusTwo"), ([(0, 1), (2, 1), (2, 3)], "Z4")],
)
def test_forbidden_detected(pairs, kind):
    r = rel(4, pairs)
    w = find_forbidden(r)
    assert w.kind == kind
    with pytest.raises(ForbiddenSubposetError) as info:
        reconstruct_s(r)
    assert info.value.witness == w
    assert set(w.pattern) == set(r.pairs())


def test_chain_has_no_forbidden():
    assert find_forbidden(chain(4)) is None


def test_fourteen_of_sixteen():
    classes = oracle_posets(4)
    assert len(classes) == 16
    assert sum(in_r_class(r) for r in classes) == 14


@pytest.mark.parametrize("n", range(8))
def test_reconstruction_unique_up_to_iso(n):
    for p in enumerate_pairs(n):
        s = reconstruct_s(p.r)
        q = CatalanPair(n, s, p.r)
        assert verify(q.s, q.r).valid
        assert canonical(q) == p


@pytest.mark.parametrize("n", range(6))
def test_r_class_counts(n):
    assert sum(in_r_class(r) for r in oracle_posets(n)) == catalan(n)


# connectivity ---------------------------------------------------------------

def test_connected_examples():
    assert r_is_connected(CatalanPair.from_pairs(1, [], []))
    nested = CatalanPair.from_pairs(2, [(1, 0)], [])
    assert not r_is_connected(nested)


@pytest.mark.parametrize("n", range(2, 9))
def test_connected_counts(n):
    assert count_connected(n) == catalan(n) - catalan(n - 1)


@pytest.mark.parametrize("n", range(9))
def test_connected_criteria_agree(n):
    for p in enumerate_pairs(n):
        assert r_is_connected(p) == connected_by_matching(p)


@pytest.mark.parametrize("n", range(8))
def test_at_most_one_big_component(n):
    for p in enumerate_pairs(n):
        comps = comparability_components(p.r)
        assert sum(c.bit_count() > 1 for c in comps) <= 1


# lattices -------------------------------------------------------------------

def test_lattice_examples():
    assert is_lattice(chain(5))
    nested = dyck_tunnels(DyckPath.parse("UUDD"))
    assert not is_lattice(nested.r)
    assert not lattice_path_criterion(DyckPath.parse("UUDD"))
    assert not r_is_lattice(nested)


def _brute_lattice_paths(n):
    total = 0
    for ups in itertools.combinations(range(2 * n), n):
        w = ["D"] * (2 * n)
        for i in ups:
            w[i] = "U"
        word = "".join(w)
        h, ok = 0, True
        for c in word:
            h += 1 if c == "U" else -1
            ok &= h >= 0
        if ok and word.startswith("UD") and word.endswith("UD") and "DDUU" not in word:
            total += 1
    return total


@pytest.mark.parametrize("n", range(1, 9))
def test_lattice_evaluators_agree(n):
    for p in enumerate_pairs(n):
        assert is_lattice(p.r) == lattice_path_criterion(pair_to_dyck(p))
    assert count_lattice(n) == _brute_lattice_paths(n)


# distributivity -------------------------------------------------------------

def test_diamond_is_distributive():
    p = dyck_tunnels(DyckPath.parse("UDUUDDUD"))
    assert is_lattice(p.r) and r_is_distributive(p)
    assert find_m3_n5(p.r) is None


def test_m3_and_n5_found():
    # bottom 0, top 4, three atoms
    m3 = rel(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4), (0, 4)])
    assert find_m3_n5(m3)[0] == "M3"
    n5 = rel(5, [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4), (0, 2), (0, 4), (1, 4)])
    assert find_m3_n5(n5)[0] == "N5"
    assert not is_distributive_lattice(n5)


def test_chain_distributive():
    p = dyck_tunnels(DyckPath.parse("UDUDUD"))
    assert r_is_distributive(p)


@pytest.mark.parametrize("n", range(9))
def test_distributive_three_evaluators(n):
    for p in enumerate_pairs(n):
        flags = {is_distributive_lattice(p.r), distributive_path_criterion(pair_to_dyck(p)), distributive_structure(p.r)}
        assert len(flags) == 1


def test_distributive_counts_follow_shifted_recurrence():
    # the recurrence d_n = d_{n-1} + d_{n-3} with d_0 = d_1 = d_2 = 1 counts sizes n + 1
    d = [1, 1, 1]
    while len(d) < 11:
        d.append(d[-1] + d[-3])
    assert [count_distributive(n + 1) for n in range(10)] == d[:10]
    assert count_distributive(0) == 0


# S-forest -------------------------------------------------------------------

def test_forest_of_empty_s():
    f = s_forest(CatalanPair.from_pairs(3, [], [(0, 1), (0, 2), (1, 2)]))
    assert f.roots == [0, 1, 2]


def test_five_element_forest_code():
    # x1 <- x2 and x3 <- x4, x3 <- x5
    s = rel(5, [(1, 0), (3, 2), (4, 2)])
    ps = pairs_with_s(s)
    f = s_forest(ps[0])
    assert f.parents == (None, 0, None, 2, 2)
    code = s_tree_canonical(f)
    assert code.count("(") == 6
    assert code == "((()())(()))"
    # distinct plane drawings share one unlabeled code
    assert len(ps) == 2
    assert len({s_tree_canonical(s_forest(p)) for p in ps}) == 1
    assert ps[0].r != ps[1].r


def test_three_plane_embeddings():
    # two leaves and a two-node path under the super-root
    s = rel(4, [(3, 2)])
    assert len(pairs_with_s(s)) == 3


def test_empty_code():
    assert s_tree_canonical(s_forest(CatalanPair.from_pairs(0, [], []))) == "()"


def test_pairs_with_s_antichain():
    assert len(pairs_with_s(BinaryRelation.empty(2))) == 1


def test_pairs_with_s_rejects_non_forest():
    with pytest.raises(ValueError):
        pairs_with_s(rel(3, [(0, 1), (0, 2)]))


@pytest.mark.parametrize("n", range(9))
def test_s_poset_is_forest(n):
    for p in enumerate_pairs(n):
        f = s_forest(p)
        for x in range(n):
            assert set(f.ancestors(x)) == {y for y in range(n) if (x, y) in p.s}


@pytest.mark.parametrize("n", range(7))
def test_maximal_down_sets_disjoint(n):
    for p in enumerate_pairs(n):
        rows = p.s.rows()
        maxima = [x for x in range(n) if rows[x] == 0]
        downs = [{t for t in range(n) if (t, m) in p.s} for m in maxima]
        for a, b in itertools.combinations(downs, 2):
            assert not a & b


def test_s_code_counts():
    assert [count_s_codes(n) for n in range(7)] == [1, 1, 2, 4, 9, 20, 48]


@pytest.mark.parametrize("n", range(7))
def test_pairs_with_s_partition_enumeration(n):
    by_code = {}
    for p in enumerate_pairs(n):
        by_code.setdefault(s_tree_canonical(s_forest(p)), p)
    total = 0
    for code, p in by_code.items():
        got = pairs_with_s(p.s)
        assert all(s_tree_canonical(s_forest(q)) == code for q in got)
        assert len({canonical(q) for q in got}) == len(got)
        total += len(got)
    assert total == catalan(n)


def test_analyze_report(worked_pair):
    rep = analyze(worked_pair)
    assert set(rep) == {"connected", "lattice", "distributive", "sTreeCode", "simClasses"}
    assert rep["connected"] is True
