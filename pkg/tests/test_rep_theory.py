import pytest

from suzukicoh import rep_theory as rt
from suzukicoh.dieudonne import Decomposition, Summand, canonical_word


def test_good_subsets_m1():
    gs = rt.good_subsets(1)
    assert [(g.members, g.multiplicity) for g in gs] == [
        ((), 4),
        ((0,), 2),
        ((1,), 2),
        ((2,), 2),
    ]
    assert sum(g.multiplicity * g.dimension for g in gs) == 28
    assert not rt.is_good([0, 1], 1)


def test_good_subsets_m2():
    gs = rt.good_subsets(2)
    assert len(gs) == 11
    sizes = {}
    for g in gs:
        sizes[len(g.members)] = sizes.get(len(g.members), 0) + 1
    assert sizes == {0: 1, 1: 5, 2: 5}
    pairs = [g.members for g in gs if len(g.members) == 2]
    assert all((b - a) % 5 in (1, 4) for a, b in pairs)
    mults = {len(g.members): g.multiplicity for g in gs}
    assert mults == {0: 8, 1: 4, 2: 2}
    assert sum(g.multiplicity * g.dimension for g in gs) == 248


@pytest.mark.parametrize("m", range(1, 11))
def test_dimension_sum_formula(m):
    # sum over good I of 4^|I| 2^(m+1-|I|) equals 2 q0 (q-1)
    gs = rt.good_subsets(m)
    assert sum(g.multiplicity * g.dimension for g in gs) == 2 * (1 << m) * ((1 << (2 * m + 1)) - 1)


@pytest.mark.parametrize("m", range(1, 7))
def test_translation_stability(m):
    n = 2 * m + 1
    fam = {g.members for g in rt.good_subsets(m)}
    assert {tuple(sorted((x + 1) % n for x in I)) for I in fam} == fam


def test_vI_exponents():
    assert rt.vI_exponents([0], 1) == [1, 2, 5, 6]  # {+-5, +-1} mod 7
    assert rt.vI_exponents([1], 1) == [2, 3, 4, 5]  # doubled
    assert rt.vI_exponents([], 1) == [0]
    assert len(rt.vI_exponents([0, 1], 2)) == 16


def test_predicted_hdr_exponents_m1():
    pred = rt.predicted_hdr_exponents(1)
    assert pred == {e: 4 for e in range(7)}
    assert sum(pred.values()) == 28


def test_predicted_total_counts():
    assert sum(rt.predicted_hdr_exponents(2).values()) == 248
    assert sum(rt.predicted_hdr_exponents(3).values()) == 2032


def test_brauer_square():
    assert rt.brauer_square_check(0, 1)
    assert rt.brauer_square_check(3, 2)
    assert all(rt.brauer_square_check(i, 3) for i in range(7))
    assert not rt.brauer_square_check(0, 2, shift=2)  # deliberately wrong twist


def test_conjecture_report():
    word = canonical_word("f" * 3 + "v" * 3)
    dec = Decomposition([Summand(word, 6, 4, 1, "E/E(F^3+V^3)")])
    rep = rt.conjecture_report(1, dec)
    assert rep["matches_paper"] and rep["multiplicity"] == 4
    assert rep["orbit_dimension"] == 12
    dec2 = Decomposition([Summand(word, 6, 3, 1, "E/E(F^3+V^3)")])
    assert not rt.conjecture_report(1, dec2)["matches_paper"]
