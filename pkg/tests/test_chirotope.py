from fractions import Fraction
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from bfpcert.chirotope import (
    Chirotope,
    VectorConfiguration,
    check_axioms,
    gp_consistent,
    gp_pairs,
    is_uniform,
    moment_curve,
    permutation_parity,
)
from bfpcert.exceptions import (
    AllZero,
    BadCharacter,
    IndexOutOfRange,
    LengthMismatch,
    RankDeficient,
)
from oracles import (
    alt_eval,
    bracket,
    brute_exchange_ok,
    brute_gp_violations,
    inversions_sign,
    sgn,
    sign_table,
)


def cols(*vs):
    return VectorConfiguration.from_columns([[Fraction(x) for x in v] for v in vs])


@st.composite
def configurations(draw, max_n=6, ranks=(2, 3, 4), lo=-3, hi=3):
    r = draw(st.sampled_from(ranks))
    n = draw(st.integers(r, max_n))
    entries = draw(st.lists(st.lists(st.integers(lo, hi), min_size=r, max_size=r), min_size=n, max_size=n))
    return cols(*entries)


@st.composite
def sign_strings(draw, max_n=6):
    r = draw(st.integers(2, 3))
    n = draw(st.integers(r, max_n))
    text = draw(st.text(alphabet="+-0", min_size=comb(n, r), max_size=comb(n, r)))
    assume(any(c != "0" for c in text))
    return n, r, text


def realizable(config):
    try:
        return Chirotope.from_configuration(config)
    except RankDeficient:
        return None


# -- construction -----------------------------------------------------------------


def test_all_positive_sign_string():
    chi = Chirotope.from_sign_string(4, 3, "++++")
    assert all(chi.sign_of_subset(s) == 1 for s in combinations(range(1, 5), 3))


@pytest.mark.parametrize(
    "text, exc",
    [("+++", LengthMismatch), ("0000", AllZero), ("++x+", BadCharacter), ("+++++", LengthMismatch)],
)
def test_sign_string_errors(text, exc):
    with pytest.raises(exc):
        Chirotope.from_sign_string(4, 3, text)


def test_unicode_minus_accepted():
    assert Chirotope.from_sign_string(4, 3, "+++−").sign_string() == "+++-"


def test_sign_string_does_not_check_axioms():
    # basis exchange fails for {12, 34} alone, but construction still succeeds
    chi = Chirotope.from_sign_string(4, 2, "+0000+")
    assert not check_axioms(chi).exchange_ok


def test_identity_configuration():
    chi = Chirotope.from_configuration(cols((1, 0, 0), (0, 1, 0), (0, 0, 1)))
    assert chi.evaluate((1, 2, 3)) == 1


def test_vandermonde_all_positive():
    chi = Chirotope.from_configuration(moment_curve(5, 3))
    assert chi.sign_string() == "+" * 10


def test_rank_deficient():
    with pytest.raises(RankDeficient):
        Chirotope.from_configuration(cols((1, 0, 0), (0, 1, 0), (1, 1, 0)))


def test_sign_order_is_lexicographic():
    # only the subset {1,3} gets a negative determinant
    chi = Chirotope.from_configuration(cols((1, 0), (0, 1), (1, -1)))
    assert [s for s, _ in chi.items()] == [(1, 2), (1, 3), (2, 3)]
    assert chi.sign_string() == "+--"


# -- evaluation -------------------------------------------------------------------


def test_evaluate_examples():
    pos = Chirotope.from_sign_string(4, 3, "++++")
    assert pos.evaluate((2, 1, 3)) == -1
    assert pos.evaluate((1, 1, 3)) == 0
    moment = Chirotope.from_configuration(moment_curve(5, 3))
    assert moment.evaluate((3, 1, 2)) == 1
    assert moment((3, 1, 2)) == 1


@pytest.mark.parametrize("tup", [(0, 1, 2), (1, 2, 5), (1, 2)])
def test_evaluate_rejects_bad_tuples(tup):
    chi = Chirotope.from_sign_string(4, 3, "++++")
    with pytest.raises((IndexOutOfRange, ValueError)):
        chi.evaluate(tup)


@given(st.permutations(list(range(1, 7))))
def test_permutation_parity_matches_inversions(p):
    assert permutation_parity(p) == inversions_sign(p)


@settings(max_examples=60, deadline=None)
@given(sign_strings(), st.data())
def test_alternating_law(spec, data):
    n, r, text = spec
    chi = Chirotope.from_sign_string(n, r, text)
    tup = tuple(data.draw(st.permutations(list(range(1, n + 1))))[:r])
    perm = data.draw(st.permutations(list(range(r))))
    moved = tuple(tup[i] for i in perm)
    assert chi.evaluate(moved) == inversions_sign(perm) * chi.evaluate(tup)
    assert chi.evaluate(tup) == alt_eval(sign_table(n, r, text), tup)


# -- axioms ---------------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 9))
def test_moment_curve_rank3_passes(n):
    rep = check_axioms(Chirotope.from_configuration(moment_curve(n, 3)))
    assert rep.ok and rep.alternating_ok and rep.nonzero_ok and rep.exchange_ok and rep.gp_ok
    assert rep.violations == []


def test_rank3_on_four_points_has_no_gp_relation():
    # r + 2 = 5 > n: the GP scan is vacuous, so "+++-" passes it
    chi = Chirotope.from_sign_string(4, 3, "+++-")
    rep = check_axioms(chi)
    assert list(gp_pairs(4, 3)) == []
    assert rep.gp_ok == (next(brute_gp_violations(4, 3, sign_table(4, 3, "+++-")), None) is None)
    assert rep.gp_ok


def test_rank2_with_one_zero_matches_oracles():
    text = "++++0+"
    chi = Chirotope.from_sign_string(4, 2, text)
    rep = check_axioms(chi)
    table = sign_table(4, 2, text)
    assert rep.exchange_ok == brute_exchange_ok(4, 2, table)
    assert rep.gp_ok == (next(brute_gp_violations(4, 2, table), None) is None)
    # lambda=(1,2,3,4): chi(24)=0 leaves (a, -c, e) = (+, 0, +)
    assert rep.exchange_ok and not rep.gp_ok
    assert any(v[0] == "gp" for v in rep.violations)


@settings(max_examples=80, deadline=None)
@given(sign_strings())
def test_gp_scan_agrees_with_ordered_brute_force(spec):
    n, r, text = spec
    rep = check_axioms(Chirotope.from_sign_string(n, r, text))
    table = sign_table(n, r, text)
    assert rep.gp_ok == (next(brute_gp_violations(n, r, table), None) is None)
    assert rep.exchange_ok == brute_exchange_ok(n, r, table)
    assert rep.ok == (not rep.violations)


def test_gp_consistent_truth_table():
    for a, c, e in [(v, w, x) for v in (-1, 0, 1) for w in (-1, 0, 1) for x in (-1, 0, 1)]:
        terms = (a, -c, e)
        bad = (min(terms) >= 0 and max(terms) > 0) or (max(terms) <= 0 and min(terms) < 0)
        assert gp_consistent(a, c, e) == (not bad)


@settings(max_examples=60, deadline=None)
@given(configurations())
def test_configurations_pass_axioms(config):
    chi = realizable(config)
    assume(chi is not None)
    assert check_axioms(chi).ok


@settings(max_examples=60, deadline=None)
@given(configurations())
def test_signs_match_leibniz_determinants(config):
    chi = realizable(config)
    assume(chi is not None)
    columns = config.columns
    for s in combinations(range(1, config.n + 1), config.r):
        assert chi.sign_of_subset(s) == sgn(bracket(columns, s))


@settings(max_examples=40, deadline=None)
@given(configurations(max_n=6, ranks=(2, 3, 4)))
def test_three_term_gp_polynomials_vanish(config):
    n, r, columns = config.n, config.r, config.columns
    assume(n >= r + 2)
    for tau in combinations(range(1, n + 1), r - 2):
        rest = [x for x in range(1, n + 1) if x not in tau]
        for lam in permutations(rest, 4):
            l1, l2, l3, l4 = lam
            br = lambda *xs: bracket(columns, tau + xs)
            assert br(l1, l2) * br(l3, l4) - br(l1, l3) * br(l2, l4) + br(l1, l4) * br(l2, l3) == 0


# -- uniformity -----------------------------------------------------------------


def test_uniform_examples():
    assert is_uniform(Chirotope.from_sign_string(4, 3, "++++"))
    assert not is_uniform(Chirotope.from_sign_string(4, 3, "+0++"))


def test_collinear_triple_is_not_uniform():
    config = cols((1, 0, 0), (1, 1, 0), (1, 2, 0), (1, 0, 1), (1, 3, 7))
    chi = Chirotope.from_configuration(config)
    assert chi.sign_of_subset((1, 2, 3)) == 0
    assert not chi.is_uniform()


@given(sign_strings())
def test_uniform_iff_no_zero(spec):
    n, r, text = spec
    assert Chirotope.from_sign_string(n, r, text).is_uniform() == ("0" not in text)


# -- misc -----------------------------------------------------------------------


def test_digest_binds_sign_string():
    a = Chirotope.from_sign_string(4, 3, "++++")
    b = Chirotope.from_sign_string(4, 3, "+++-")
    assert a.digest() != b.digest()
    assert a.digest() == Chirotope.from_sign_string(4, 3, "++++").digest()


@settings(max_examples=30, deadline=None)
@given(configurations(max_n=6, ranks=(3,)), st.randoms(use_true_random=False))
def test_relabel_matches_relabelled_configuration(config, rnd):
    chi = realizable(config)
    assume(chi is not None)
    perm = list(range(1, config.n + 1))
    rnd.shuffle(perm)
    moved = [None] * config.n
    for i, p in enumerate(perm):
        moved[p - 1] = config.columns[i]
    assert chi.relabel(perm) == Chirotope.from_configuration(VectorConfiguration.from_columns(moved))
