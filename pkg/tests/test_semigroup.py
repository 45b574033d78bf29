import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from splicecert import InfiniteGaps, NumericalSemigroup
from splicecert.semigroup import _search_member, _sieve_member


class TestExamples:
    def test_five_missing_from_3_4(self):
        assert not NumericalSemigroup([3, 4]).contains(5)

    def test_zero_always_contained(self):
        assert NumericalSemigroup([17]).contains(0)

    def test_membership_by_sieve_example(self):
        s = NumericalSemigroup([15, 10, 6])
        assert not s.contains(13)
        assert s.contains(16)  # 10 + 6

    def test_genus_of_3_4_5(self):
        assert NumericalSemigroup([3, 4, 5]).genus() == 2

    def test_genus_of_full_semigroup(self):
        assert NumericalSemigroup([1]).genus() == 0

    def test_genus_and_gaps_of_3_4(self):
        s = NumericalSemigroup([3, 4])
        assert s.genus() == 3
        assert s.gaps() == (1, 2, 5)
        assert s.frobenius() == 3 * 4 - 3 - 4 == 5

    def test_frobenius_examples(self):
        assert NumericalSemigroup([2, 3]).frobenius() == 1
        assert NumericalSemigroup([1]).frobenius() == -1
        assert NumericalSemigroup([3, 4, 5]).frobenius() == 2

    def test_apery_examples(self):
        assert NumericalSemigroup([3, 4]).apery_set() == (0, 4, 8)
        assert NumericalSemigroup([1]).apery_set() == (0,)
        assert NumericalSemigroup([2, 3]).apery_set() == (0, 3)

    def test_apery_for_non_minimal_generator(self):
        s = NumericalSemigroup([3, 4])
        ap = s.apery_set(4)
        assert ap == (0, 9, 6, 3)
        assert max(ap) - 4 == s.frobenius()

    def test_apery_rejects_non_generator(self):
        with pytest.raises(ValueError):
            NumericalSemigroup([3, 4]).apery_set(5)

    def test_infinite_gaps(self):
        s = NumericalSemigroup([4, 6])
        for op in (s.genus, s.frobenius, s.apery_set):
            with pytest.raises(InfiniteGaps):
                op()
        assert s.contains(10)
        assert not s.contains(11)

    def test_generator_validation(self):
        with pytest.raises(ValueError):
            NumericalSemigroup([])
        with pytest.raises(ValueError):
            NumericalSemigroup([0, 3])

    def test_duplicates_removed_and_sorted(self):
        assert NumericalSemigroup([5, 3, 5, 3]).generators == (3, 5)


def naive_genus_and_frobenius(gens, bound):
    reachable = bytearray(bound + 1)
    reachable[0] = 1
    for g in gens:
        for i in range(g, bound + 1):
            if reachable[i - g]:
                reachable[i] = 1
    gaps = [n for n in range(1, bound + 1) if not reachable[n]]
    return len(gaps), (gaps[-1] if gaps else -1)


coprime_pairs = st.tuples(
    st.integers(min_value=2, max_value=120), st.integers(min_value=2, max_value=120)
).filter(lambda pq: pq[0] < pq[1] and math.gcd(*pq) == 1)


class TestOracles:
    @given(coprime_pairs)
    def test_two_generator_closed_forms(self, pq):
        p, q = pq
        s = NumericalSemigroup([p, q])
        assert s.frobenius() == p * q - p - q
        assert s.genus() == (p - 1) * (q - 1) // 2

    @given(
        st.lists(st.integers(min_value=1, max_value=200), min_size=1, max_size=6).filter(
            lambda gens: math.gcd(*gens) == 1
        )
    )
    @settings(max_examples=150)
    def test_apery_matches_naive_sieve(self, gens):
        s = NumericalSemigroup(gens)
        bound = min(gens) * max(gens)
        genus, frob = naive_genus_and_frobenius(s.generators, bound)
        assert s.genus() == genus
        assert s.frobenius() == frob

    @given(
        st.lists(st.integers(min_value=1, max_value=200), min_size=1, max_size=6).filter(
            lambda gens: math.gcd(*gens) == 1
        ),
        st.integers(min_value=0, max_value=400),
    )
    @settings(max_examples=150)
    def test_membership_strategies_agree(self, gens, n):
        s = NumericalSemigroup(gens)
        expected = _sieve_member(s.generators, n) if n else True
        assert s.contains(n) == expected
        assert _search_member(s.generators, n) == expected

    @given(
        st.lists(st.integers(min_value=2, max_value=150), min_size=1, max_size=5).filter(
            lambda gens: math.gcd(*gens) == 1
        )
    )
    @settings(max_examples=80)
    def test_contains_consistent_with_frobenius_and_genus(self, gens):
        s = NumericalSemigroup(gens)
        frob = s.frobenius()
        missing = sum(1 for n in range(1, frob + 1) if not s.contains(n))
        assert missing == s.genus()
        for n in range(frob + 1, frob + 20):
            assert s.contains(n)

    @given(
        st.lists(st.integers(min_value=2, max_value=120), min_size=1, max_size=4).filter(
            lambda gens: math.gcd(*gens) == 1
        ),
        st.integers(min_value=1, max_value=150),
    )
    @settings(max_examples=100)
    def test_adding_generators_never_increases_genus(self, gens, extra):
        base = NumericalSemigroup(gens)
        widened = NumericalSemigroup(list(gens) + [extra])
        assert widened.genus() <= base.genus()
        if base.contains(extra):
            # generating with an element already contained changes nothing
            assert widened.genus() == base.genus()
            assert widened.frobenius() == base.frobenius()


class TestLargeMagnitudes:
    def test_search_path_on_huge_coprime_pair(self):
        a = 10**9 + 7
        b = 10**9 + 9
        s = NumericalSemigroup([a, b])
        assert s.contains(a + b)
        assert s.contains(3 * a + 2 * b)
        assert s.contains(a + b - 2)  # equals 2a, since b = a + 2
        assert not s.contains(a + 1)
        assert not s.contains(a + 3)

    def test_search_path_with_shared_factors(self):
        p = 10**6 + 3
        s = NumericalSemigroup([6 * p, 10 * p, 15 * p])
        assert s.contains(31 * p)  # 6+10+15 scaled
        assert not s.contains(31 * p + 1)
        assert not s.contains(29 * p)  # 29 is the Frobenius number of <6,10,15>
        assert s.contains(30 * p)

    def test_huge_member_above_pair_bound(self):
        s = NumericalSemigroup([10**6 + 3, 2])
        assert s.contains(10**13)
        assert s.contains(10**13 + 1)
