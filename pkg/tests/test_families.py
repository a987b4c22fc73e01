import pytest
from hypothesis import given
from hypothesis import strategies as st

from meertens import families as fam
from meertens.encoding import ALPHA, GMN, GRMN, REVERSE, STANDARD, is_fixed_point
from meertens.expr import evaluate
from meertens.search import SearchSpec, search_bases, search_fixed_points
from reference_values import ALPHA_TABLE, POW2_DIVISORS, REVERSE_TABLE, RMN_PRIMES, STANDARD_TABLE


def pairs(witnesses):
    return [(w.value, w.base) for w in witnesses if not w.skipped]


def assert_verified(witnesses):
    for w in witnesses:
        if w.skipped:
            continue
        assert w.verified
        if w.method == "direct":
            assert is_fixed_point(w.value, w.base, w.variant)[0]
            assert evaluate(w.value_expr) == w.value
            assert evaluate(w.base_expr) == w.base


class Test1024:
    def test_small_c(self):
        ws = fam.family_1024_3c(9)
        assert [w.parameters["c"] for w in ws] == [4, 6]
        assert pairs(ws) == [(82944, 8294), (746496, 74649)]
        assert_verified(ws)

    def test_divisibility_precondition(self):
        ws = fam.family_1024_3c(200)
        assert [w.parameters["c"] for w in ws] == [c for c in range(201) if (1024 * 3**c - c) % 10 == 0]
        assert_verified(ws)

    def test_large_instance(self):
        w = fam.large_1024_instance()
        v = 2**100 * 3**96
        assert w.verified and w.value == v and w.base == (v - 96) // 100
        assert (v - 96) % 100 == 0

    def test_general_lead_exponent(self):
        for e in (2, 4, 6, 12):
            assert_verified(fam.family_lead_exponent(e, 40))


class TestPow2:
    @pytest.mark.parametrize("a,ks", POW2_DIVISORS)
    def test_divisor_rows(self, a, ks):
        ws = fam.family_pow2(a)
        assert [w.parameters["k"] for w in ws] == ks
        assert_verified(ws)

    def test_a_8_bases(self):
        assert [w.base for w in fam.family_pow2(8)] == [2**31, 2**62, 2**124, 2**248]

    def test_counts(self):
        assert fam.family_pow2_count(3) == 1
        assert fam.family_pow2_count(16) == 105 == len(fam.family_pow2(16))
        assert fam.family_pow2_count(64) >= 435

    def test_a_16_symbolic(self):
        ws = fam.family_pow2(16)
        assert all(w.verified for w in ws)
        assert {w.method for w in ws} == {"symbolic"}

    @pytest.mark.parametrize("a", [5, 8, 10])
    def test_symbolic_agrees_with_direct(self, a):
        direct = fam.family_pow2(a)
        symbolic = fam.family_pow2(a, threshold_bits=0)
        assert [w.base_expr for w in direct] == [w.base_expr for w in symbolic]
        assert {w.method for w in symbolic} == {"symbolic"}


class TestTower:
    def test_t3(self):
        res = fam.family_tower(3)
        assert len(res.exponents) == 4
        assert 31 in res.exponents and 248 == 8 * 31
        assert all((2**8 - 8) % k == 0 for k in res.exponents)

    @pytest.mark.parametrize("t", [4, 5, 6])
    def test_divisibility(self, t):
        res = fam.family_tower(t)
        n = 2 ** (2**t) - 2**t
        assert len(res.exponents) == t + 1 == len(res.witnesses)
        assert all(n % k == 0 for k in res.exponents)
        assert all(w.verified for w in res.witnesses)

    def test_rejects_small_t(self):
        with pytest.raises(ValueError):
            fam.family_tower(2)


class TestThm23:
    def test_examples(self):
        assert pairs(fam.family_thm23(1, 1))[0] == (6, 5)
        assert pairs(fam.family_thm23(3, 3))[0] == (54, 51)
        assert pairs(fam.family_thm23(0, 0))[1] == (6, 5)

    @pytest.mark.parametrize("n,m", [(n, m) for m in range(0, 7) for n in range(0, m + 1)])
    def test_all_small_parameters(self, n, m):
        ws = fam.family_thm23(n, m)
        assert len(ws) == 3
        assert_verified(ws)
        for w in ws:
            if w.skipped:
                assert w.skip_reason and not w.verified

    def test_reverse_examples(self):
        assert pairs(fam.family_thm23_reverse(3, 3))[0] == (24, 21)
        assert pairs(fam.family_thm23_reverse(4, 4))[0] == (48, 44)
        assert pairs(fam.family_thm23_reverse(0, 0))[0] == (3, 3)

    @pytest.mark.parametrize("n,m", [(n, m) for m in range(0, 7) for n in range(0, m + 1)])
    def test_reverse_all_small_parameters(self, n, m):
        assert_verified(fam.family_thm23_reverse(n, m))

    def test_large_parameters_symbolic(self):
        ws = fam.family_thm23(9, 12) + fam.family_thm23_reverse(9, 12)
        assert any(w.method == "symbolic" for w in ws)
        assert all(w.verified or w.skipped for w in ws)

    def test_bad_parameters(self):
        with pytest.raises(ValueError):
            fam.family_thm23(3, 2)


class TestAlphaFamily:
    def test_examples(self):
        got = [(w.value, w.base) for w in map(fam.family_alpha, range(5))]
        assert got[:3] == [(12, 12), (24, 12), (96, 24)]
        assert all(w.verified for w in map(fam.family_alpha, range(14)))

    @given(st.integers(min_value=0, max_value=40))
    def test_symbolic_for_large_t(self, t):
        w = fam.family_alpha(t)
        assert w.verified and w.variant == ALPHA


class TestRmn:
    def test_small(self):
        ws = fam.family_rmn(2)
        assert pairs(ws) == [(27, 9), (3125, 25)]

    def test_prime_prefix(self):
        assert fam.rmn_primes(66) == RMN_PRIMES[:7]

    def test_longer_prefix_symbolic(self):
        # 1129 is the 189th prime, so r up to 200 covers the first twelve
        ws = fam.family_rmn(200)
        assert [w.parameters["p"] for w in ws] == RMN_PRIMES[:12]
        assert all(w.verified for w in ws)
        assert ws[-1].method == "symbolic"


class TestBaseFixed:
    def test_variants(self):
        assert fam.family_base_fixed(STANDARD).value == 2
        assert fam.family_base_fixed(ALPHA).value == 12
        assert fam.family_base_fixed(REVERSE).value == 3
        assert fam.family_base_fixed(GRMN).value == 2

    def test_identity_forward_skipped(self):
        w = fam.family_base_fixed(GMN)
        assert w.skipped and w.parameters == {"b": 1} and not w.verified


class TestConsistency:
    def test_family_outputs_land_in_search_results(self):
        family = []
        family += [(w, STANDARD) for w in fam.family_thm23(1, 2) + fam.family_thm23(0, 1)]
        family += [(w, REVERSE) for w in fam.family_thm23_reverse(0, 1) + fam.family_thm23_reverse(1, 1)]
        family += [(fam.family_alpha(t), ALPHA) for t in range(3)]
        for w, variant in family:
            if w.skipped or w.value > 10**6:
                continue
            found = search_fixed_points(SearchSpec(w.base, variant, max_digits=3, value_limit=10**6))
            assert w.value in [f.value for f in found]

    def test_witnesses_in_reference_tables(self):
        std = {(v, b) for b, vs in STANDARD_TABLE for v in vs}
        rev = {(v, b) for b, vs in REVERSE_TABLE for v in vs}
        alp = {(v, b) for b, vs in ALPHA_TABLE for v in vs}
        assert (82944, 8294) in std and (746496, 74649) in std
        assert set(pairs(fam.family_thm23(1, 1)[:1] + fam.family_thm23(3, 3)[:1])) <= std
        assert set(pairs(fam.family_rmn(2))) <= rev
        assert {(w.value, w.base) for w in map(fam.family_alpha, range(3))} <= alp

    @pytest.mark.parametrize("m", [6, 10, 216, 65536])
    def test_multi_base_values(self, m):
        assert len(search_bases(m, 2, m + 1, STANDARD)) >= 2

    def test_failed_verification_raises(self):
        with pytest.raises(fam.FamilyVerificationError):
            # 2*3 written in base 6 - 2 = 4 is "12", which encodes to 2*9
            fam._two_digit("bad", {}, STANDARD, {2: 1, 3: 1}, {2: 1, 3: 1}, 2, {}, 1, 4096)
