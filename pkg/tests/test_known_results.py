import pytest

from suzukicoh import dieudonne as dd
from suzukicoh import gf2m
from suzukicoh import known_results as kr


def test_expected_records():
    assert kr.expected(1) == {
        "genus": 14,
        "a_number": 5,
        "eo_trivial": [0, 1],
        "point_count": 65,
    }
    assert kr.expected(2) == {
        "genus": 124,
        "a_number": 30,
        "eo_trivial": [0, 1, 1, 2],
        "point_count": 1025,
    }
    assert kr.expected(3) == {
        "genus": 1016,
        "a_number": 204,
        "eo_trivial": [0, 1, 1, 2, 2, 3, 3, 4],
        "point_count": 16385,
    }


def test_model_action_rules_m1():
    M = kr.d_m0_action(1)
    # basis X1, X2, Y1, Y2 at indices 0, 1, 2, 3
    Fm, Vm = M.F.matrix, M.V.matrix
    assert not Fm[:, 2].any() and not Fm[:, 3].any()  # F(Y_j) = 0
    assert Vm[2, 1] == 1  # V(X_2) = Y_1
    assert Fm[0, 1] == 1  # F(X_2) = X_1
    assert Fm[3, 0] == 1  # F(X_1) = Y_2 (odd case: q0-(j-1)/2 = 2)
    assert not Vm[:, 0].any()  # V(X_1) = 0 (index out of range)


def test_nbij_m1_and_m2():
    d1 = kr.nbij(1)
    assert d1["I"] == [2] and d1["iota"] == {2: 2}
    assert kr.palg_relations(1) == [(2, 2, 2, 2)]  # F^2 X_2 = V^2 X_2
    d2 = kr.nbij(2)
    assert d2["I"] == [3, 4] and d2["iota"] == {3: 3, 4: 4}
    assert kr.palg_relations(2) == [(3, 1, 3, 1), (4, 3, 4, 3)]


@pytest.mark.parametrize("m", range(1, 7))
def test_nbij_bijections(m):
    d = kr.nbij(m)
    assert sorted(d["s"].values()) == d["I"]
    assert sorted(d["t"].values()) == d["I"]
    assert sorted(d["iota"].values()) == d["I"]


@pytest.mark.parametrize("m", range(1, 7))
def test_model_matches_closed_forms(m):
    M = kr.d_m0_action(m)
    exp = kr.expected(m)
    assert M.dim == 2 * (1 << m)
    assert dd.eo_type(M) == exp["eo_trivial"]
    assert dd.a_number(M) == 1 << (m - 1)
    assert dd.p_rank(M) == 0
    assert dd.decompose(M).as_multiset() == kr.trivial_eigenspace_words(m)


def test_model_over_larger_field():
    F8 = gf2m.make_field(1)
    M = kr.d_m0_action(1, field=F8)
    assert dd.eo_type(M) == [0, 1]
    assert dd.decompose(M).as_multiset() == [("ffvv", 1)]


def test_w0_occurrence_examples():
    for m in range(1, 11):
        assert kr.w0_occurrence(m, m) == 1 << m  # e = m always occurs
    assert kr.w0_occurrence(2, 0) == 3  # m even: j = (2 q0 + 1)/3
    assert kr.w0_occurrence(4, 0) == 11
    assert kr.w0_occurrence(1, 0) is None  # m odd
    assert kr.w0_occurrence(1, 1) == 2
    assert kr.w0_occurrence(5, 1) == 26  # m = 1 mod 4: (4 q0 + 2)/5
    assert kr.w0_occurrence(3, 1) is None


@pytest.mark.parametrize("m", range(1, 11))
def test_w0_congruence_agrees_with_scan(m):
    for e in range(0, m + 1):
        assert kr.w0_occurrence(m, e) == kr.w0_occurrence_scan(m, e)


def test_trivial_words_match_relations():
    # the iota-cycles spell exactly the indecomposables of the model
    assert kr.trivial_eigenspace_words(1) == [("ffvv", 1)]
    assert kr.trivial_eigenspace_words(2) == [("fffvvv", 1), ("fv", 1)]
