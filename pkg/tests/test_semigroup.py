import random
from math import gcd
from functools import reduce

import pytest
from hypothesis import given, settings, strategies as st

from hilbcoeff.errors import InputError, ResourceError
from hilbcoeff.semigroup import (
    NumericalSemigroup,
    SemigroupIdeal,
    blowup_module,
    check_identities,
    delta_sets,
    e1_via_blowup,
    e_coeffs,
    g_coeffs,
    length_quotient,
    minimal_reduction,
    oversemigroups,
    oversemigroups_bruteforce,
    scaling_check,
)
from oracles import all_oversemigroup_gapsets, ideal_set, semigroup_set, sumset


@pytest.fixture
def s345():
    return NumericalSemigroup([3, 4, 5])


def random_ideal_gens(rng: random.Random, s: NumericalSemigroup, top: int = 15, most: int = 3):
    pool = [n for n in range(1, top) if n in s]
    return sorted(rng.sample(pool, rng.randint(1, min(most, len(pool)))))


def random_semigroup(rng: random.Random, max_gaps: int = 12) -> NumericalSemigroup:
    while True:
        gens = rng.sample(range(2, 12), rng.randint(2, 4))
        if reduce(gcd, gens) == 1:
            s = NumericalSemigroup(gens)
            if 1 <= len(s.gaps) <= max_gaps:
                return s


# -- semigroups -----------------------------------------------------------------

def test_basic_semigroups():
    s = NumericalSemigroup([3, 4, 5])
    assert s.gaps == (1, 2) and s.frobenius == 2 and s.conductor == 3
    n = NumericalSemigroup([1])
    assert n.gaps == () and n.frobenius == -1
    assert NumericalSemigroup([2, 3]).gaps == (1,)


@pytest.mark.parametrize("gens", [[], [4, 6], [0, 3]])
def test_bad_generators(gens):
    with pytest.raises(InputError):
        NumericalSemigroup(gens)


def test_minimal_generators():
    assert NumericalSemigroup([3, 4, 5, 6, 7, 8]).generators == (3, 4, 5)
    assert NumericalSemigroup([5, 7]).frobenius == 5 * 7 - 5 - 7


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(2, 15), min_size=2, max_size=4).filter(lambda g: reduce(gcd, g) == 1))
def test_gaps_match_set_oracle(gens):
    s = NumericalSemigroup(gens)
    bound = 2 * max(gens) ** 2
    ref = semigroup_set(gens, bound)
    assert s.gaps == tuple(n for n in range(bound) if n not in ref)
    assert s.is_closed()
    assert NumericalSemigroup.from_gaps(s.gaps) == s


def test_ideal_generators_must_lie_in_s(s345):
    with pytest.raises(InputError):
        s345.ideal([2])
    assert s345.ideal([2], fractional=True).min == 2


def test_from_gaps_rejects_non_semigroup():
    with pytest.raises(InputError):
        NumericalSemigroup.from_gaps([2])


# -- ideals ---------------------------------------------------------------------------

def test_sumset_of_maximal_ideal(s345):
    m = s345.maximal_ideal
    assert (m + m) == s345.ideal([6, 7, 8])
    assert (m + m).min == 6


def test_k_fold_against_brute_force(s345):
    bound = 60
    S = semigroup_set([3, 4, 5], bound)
    m_set = {n for n in S if n > 0}
    cur = S
    for k in range(1, 7):
        cur = sumset(cur, m_set, bound)
        got = s345.maximal_ideal.k_fold(k)
        assert {n for n in range(bound - 10) if n in got} == {n for n in cur if n < bound - 10}
        assert got.min == 3 * k and got.start == 3 * k


def test_scale_shift(s345):
    m = s345.maximal_ideal
    assert (m + m).scale_shift(3) == m
    with pytest.raises(InputError):
        m.scale_shift(4)


def test_lengths(s345):
    R = s345.whole
    m = s345.maximal_ideal
    assert length_quotient(R, m) == 1
    assert length_quotient(s345.as_module(NumericalSemigroup([1])), R) == 2
    assert length_quotient(R, m.k_fold(2)) == 4
    with pytest.raises(Exception):
        length_quotient(m, R)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_sumset_and_length_against_sets(seed):
    rng = random.Random(seed)
    s = random_semigroup(rng)
    bound = 200
    S = semigroup_set(s.generators, bound)
    ga = random_ideal_gens(rng, s)
    gb = random_ideal_gens(rng, s)
    A, B = s.ideal(ga), s.ideal(gb)
    a_set, b_set = ideal_set(ga, S, bound), ideal_set(gb, S, bound)
    ab = sumset(a_set, b_set, bound)
    got = A + B
    assert {n for n in range(100) if n in got} == {n for n in ab if n < 100}
    assert length_quotient(A, A + B) == len({n for n in a_set if n < 100} - ab)


# -- reductions and blow-ups --------------------------------------------------------------

def test_reduction_of_maximal_ideal(s345):
    red = minimal_reduction(s345.maximal_ideal)
    assert red.ideal == s345.ideal([3])
    assert red.reduction_number == 1 and red.e0 == 3


def test_principal_reduction_number_zero(s345):
    assert minimal_reduction(s345.ideal([4])).reduction_number == 0


def test_reduction_on_naturals():
    n = NumericalSemigroup([1])
    red = minimal_reduction(n.ideal([2]))
    assert red.ideal == n.ideal([2])
    # 2 + N is principal, so its reduction number is 0
    assert red.reduction_number == 0


def test_e1_via_blowup_examples(s345):
    m = s345.maximal_ideal
    assert blowup_module(m, s345.whole) == s345.as_module(NumericalSemigroup([1]))
    assert e1_via_blowup(m) == 2
    assert e1_via_blowup(m, m) == 0
    assert e1_via_blowup(s345.ideal([5])) == 0


def test_interpolation_of_maximal_ideal(s345):
    m = s345.maximal_ideal
    assert e_coeffs(m).values == (3, 2)
    assert g_coeffs(m, m).values == (3, -1)


def test_identities_in_dimension_one(s345):
    m = s345.maximal_ideal
    rep = check_identities(m, m)
    assert rep.ok
    assert rep.g[1] == rep.e_k[1] - 1 == -1


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10_000))
def test_blowup_equals_interpolation(seed):
    rng = random.Random(seed)
    s = random_semigroup(rng)
    i = s.ideal(random_ideal_gens(rng, s))
    for module in (s.whole, s.maximal_ideal, s.ideal(random_ideal_gens(rng, s))):
        vec = e_coeffs(i, module)
        assert vec[0] == i.min
        assert e1_via_blowup(i, module) == vec[1]


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_scaling_in_dimension_one(seed):
    rng = random.Random(seed)
    s = random_semigroup(rng)
    i = s.ideal(random_ideal_gens(rng, s))
    assert all(r["holds"] for r in scaling_check(i, k_max=4))


def test_scaling_345(s345):
    rows = scaling_check(s345.maximal_ideal, k_max=4)
    assert [(r["e0"], r["e1"]) for r in rows] == [(3, 2), (6, 2), (9, 2), (12, 2)]


# -- oversemigroups and Delta -------------------------------------------------------------------

def test_oversemigroups_345(s345):
    overs = oversemigroups(s345)
    assert [b.gaps for b in overs] == [(1, 2), (1,), ()]


def test_oversemigroups_trivial_cases():
    assert [b.gaps for b in oversemigroups(NumericalSemigroup([1]))] == [()]
    assert [b.gaps for b in oversemigroups(NumericalSemigroup([2, 3]))] == [(1,), ()]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000))
def test_oversemigroup_search_matches_subset_enumeration(seed):
    s = random_semigroup(random.Random(seed), max_gaps=10)
    got = sorted(b.gaps for b in oversemigroups(s))
    assert got == all_oversemigroup_gapsets(s.gaps)
    assert got == sorted(b.gaps for b in oversemigroups_bruteforce(s))


def test_oversemigroup_cap():
    s = NumericalSemigroup([7, 9, 11])
    with pytest.raises(ResourceError):
        oversemigroups(s, cap=5)


def test_delta_345(s345):
    rep = delta_sets(s345, s345.maximal_ideal)
    assert rep.delta_k == [-1]
    assert rep.delta_r == [0, 1, 2]
    assert rep.sup_expected == -1
    assert rep.ok


def test_delta_on_naturals():
    n = NumericalSemigroup([1])
    for c in (1, 2, 5):
        rep = delta_sets(n, n.ideal([c]))
        assert rep.delta_k == [-c]


def test_delta_witnesses_recompute(s345):
    k = s345.ideal([4, 5])
    rep = delta_sets(s345, k)
    colength = length_quotient(s345.whole, k)
    for e in rep.entries:
        bm = s345.as_module(e.oversemigroup)
        assert length_quotient(k + bm, k) - colength == e.value == e.g1
