"""Acceptance criteria, one test each, with their runtime budgets.

A pass/fail line per criterion is printed in the terminal summary.
"""
import io
import math

import pytest

from conftest import budget
from meertens.bigmath import chebyshev_theta, factorize, nth_prime, primes_up_to, primorial
from meertens.cli import EXIT_PARTIAL, main
from meertens.encoding import ALPHA, GMN, GRMN, REVERSE, STANDARD, VARIANTS, encode, is_fixed_point, to_radix, zero_lower_bound
from meertens.families import family_pow2, family_pow2_count, rmn_primes
from meertens.records import read_jsonl
from meertens.search import (
    Search,
    SearchSpec,
    checkpoint_resume,
    compute_k_star,
    compute_l_star,
    dump_checkpoint,
    search_all_bases,
    search_fixed_points,
)
from oracles import brute_force_fixed_points
from reference_values import (
    ALPHA_TABLE,
    GMN_TABLE,
    GRMN_TABLE,
    K_STAR,
    L_STAR,
    POW2_DIVISORS,
    REVERSE_TABLE,
    RMN_PRIMES,
    STANDARD_TABLE,
)


def cli(*argv):
    out = io.StringIO()
    return main(list(argv), out=out), read_jsonl(out.getvalue())


def values(spec):
    return [f.value for f in search_fixed_points(spec)]


def verify_all(table, variant_name):
    failures = []
    for base, vals in table:
        for v in vals:
            code, _ = cli("verify", "--value", str(v), "--base", str(base), "--variant", variant_name)
            if code != 0:
                failures.append((base, v))
    return failures


@pytest.mark.criterion(1, "standard table membership via verify", 10)
def test_criterion_01_standard_membership():
    with budget(10):
        assert verify_all(STANDARD_TABLE, "standard") == []
        # the factorization expression form goes through the same path
        for base, vals in STANDARD_TABLE:
            for v in vals:
                assert cli("verify", "--value", factorize(v).expression(), "--base", str(base))[0] == 0


@pytest.mark.criterion(2, "standard completeness for bases 2-10 below 10^8", 60)
def test_criterion_02_standard_small_base_completeness():
    with budget(60):
        expected = {b: [v for v in vals if v <= 10**8] for b, vals in STANDARD_TABLE if b <= 10}
        got = {b: values(SearchSpec(b, STANDARD, value_limit=10**8)) for b in range(2, 11)}
        assert got == expected
        assert got[10] == [81312000]


@pytest.mark.criterion(3, "power-of-two divisor table and base counts", 30)
def test_criterion_03_pow2_table():
    with budget(30):
        for a, ks in POW2_DIVISORS:
            ws = family_pow2(a)
            assert [w.parameters["k"] for w in ws] == ks
            assert all(w.verified for w in ws)
        assert family_pow2_count(16) == 105
        assert family_pow2_count(64) >= 435


@pytest.mark.criterion(4, "alpha table membership and bounded completeness", 600)
def test_criterion_04_alpha_table():
    with budget(600):
        assert verify_all(ALPHA_TABLE, "alpha") == []
        scan = search_all_bases(ALPHA, 3, 314925)
        # three digits never exceeds the proven cap except where k* < 3, and there nothing turns up
        assert all(f.num_digits <= compute_k_star(f.base) for f in scan)
        found = {(f.base, f.value) for f in scan}
        missing = [(b, v) for b, vals in ALPHA_TABLE for v in vals if (b, v) not in found]
        assert missing == []
        listed = dict(ALPHA_TABLE)
        for b in range(2, 17):
            assert values(SearchSpec(b, ALPHA)) == listed.get(b, [])


@pytest.mark.criterion(5, "no alpha fixed points below base 12", 300)
def test_criterion_05_no_small_alpha():
    with budget(300):
        for b in range(2, 12):
            search = Search(SearchSpec(b, ALPHA))
            assert search.bounds.applied_digit_cap == compute_k_star(b)
            assert search.bounds.exhaustive
            assert search.run() == []


@pytest.mark.criterion(6, "k* and l* tables exact", 1)
def test_criterion_06_kstar_lstar():
    with budget(1):
        assert {b: compute_k_star(b) for b in range(2, 17)} == K_STAR
        assert {b: compute_l_star(b) for b in range(2, 17)} == L_STAR


@pytest.mark.criterion(7, "reverse table membership and p^p prime list", 30)
def test_criterion_07_reverse_table():
    with budget(30):
        assert verify_all(REVERSE_TABLE, "reverse") == []
        # 331 is the 67th prime: r <= 66 covers every p <= 331
        assert nth_prime(67) == 331
        assert rmn_primes(66) == RMN_PRIMES[:7] == [3, 5, 7, 31, 97, 101, 331]


@pytest.mark.criterion(8, "zeroless classifications", 300)
def test_criterion_08_zeroless():
    with budget(300):
        def zl(b, v):
            return values(SearchSpec(b, v, zeroless=True))

        std_small = {b: zl(b, STANDARD) for b in range(2, 12)}
        rev_small = {b: zl(b, REVERSE) for b in range(2, 12)}
        assert sorted({v for vs in std_small.values() for v in vs}) == [6]
        assert sorted({v for vs in rev_small.values() for v in vs}) == [6, 12]
        for b in (13, 14, 15):
            assert zl(b, STANDARD) == [] and zl(b, REVERSE) == []
        assert zl(17, STANDARD) == [36] == zl(17, REVERSE)


@pytest.mark.criterion(9, "generalized tables exact for listed bases (cap 12, limit 10^6)", 120)
def test_criterion_09_generalized_tables():
    with budget(120):
        mismatches = {}
        for variant, table in ((GMN, GMN_TABLE), (GRMN, GRMN_TABLE)):
            for b, listed in table.items():
                got = values(SearchSpec(b, variant, max_digits=12, value_limit=10**6))
                expected = sorted({1, *listed})
                if got != expected:
                    mismatches[(variant.name, b)] = (got, expected)
        assert mismatches == {}


def test_generalized_listed_values_are_found_and_extras_are_genuine():
    """Companion to criterion 9: printed values are all found, and every extra is real."""
    for variant, table in ((GMN, GMN_TABLE), (GRMN, GRMN_TABLE)):
        for b, listed in table.items():
            got = values(SearchSpec(b, variant, max_digits=12, value_limit=10**6))
            assert set(listed) | {1} <= set(got)
            for v in set(got) - set(listed) - {1}:
                assert encode(to_radix(v, b), variant) == v
                assert v in brute_force_fixed_points(b, variant.name, 10**6)


@pytest.mark.criterion(10, "property suites", 600)
def test_criterion_10_property_suites(tmp_path):
    with budget(600):
        # primorial and theta bounds
        for n in range(2, 2001):
            ln = math.log(primorial(n))
            assert ln > 0.5972 * n * math.log(n)
            if n >= 947:
                assert ln > 0.980 * n * math.log(n)
        for p in primes_up_to(7480):
            if p > 2:
                assert chebyshev_theta(p) > 0.5972 * p
        assert nth_prime(947) == 7481

        # injectivity
        for v in (ALPHA, REVERSE):
            for b in (10, 12):
                images = [encode(to_radix(m, b), v) for m in range(1, 10**4 + 1)]
                assert len(set(images)) == len(images)

        # evenness, trailing zeros, zero-count bound
        std = [f for b in range(2, 17) for f in search_fixed_points(SearchSpec(b, STANDARD, value_limit=10**6))]
        rev = [f for b in range(2, 17) for f in search_fixed_points(SearchSpec(b, REVERSE, value_limit=10**6))]
        assert all(f.value % 2 == 0 for f in std)
        for f in search_fixed_points(SearchSpec(10, STANDARD, value_limit=10**8)):
            d = f.digits.digits
            assert f.trailing_zeros == min(d[0], d[2])
        for f in std + rev:
            assert f.zero_digits >= zero_lower_bound(f.base, f.num_digits)

        # parallel determinism
        runs = [[f.to_dict() for f in search_fixed_points(SearchSpec(9, STANDARD, max_digits=7, parallelism=j))]
                for j in (1, 4, 16)]
        assert runs[0] == runs[1] == runs[2]

        # checkpoint resume equivalence
        spec = SearchSpec(9, STANDARD, max_digits=7)
        half = Search(spec)
        half.run(max_units=len(half.units) // 2)
        path = tmp_path / "half.json"
        half.save(str(path))
        assert [f.value for f in checkpoint_resume(str(path), spec).run()] == [4199040]
        assert dump_checkpoint(checkpoint_resume(str(path)).checkpoint()) == path.read_text()
        fresh = Search(SearchSpec(12, ALPHA))
        assert [f.value for f in checkpoint_resume(fresh.checkpoint()).run()] == [12, 24]

        # brute-force oracle equivalence
        for name, v in sorted(VARIANTS.items()):
            for b in range(2, 13):
                got = tuple(values(SearchSpec(b, v, value_limit=10**6)))
                assert got == brute_force_fixed_points(b, name, 10**6), (name, b)


@pytest.mark.criterion(11, "base-10 frontier replaced by a declared 10^8 limit (partial, exit 3)", 60)
def test_criterion_11_frontier_substitute():
    with budget(60):
        code, recs = cli("search", "--base", "10", "--variant", "standard", "--limit", "10^8")
        assert code == EXIT_PARTIAL
        bound = recs[-1]
        assert bound.payload["values"] == [81312000]
        assert bound.payload["cap_source"] == "UserLimit"
        assert bound.payload["completeness"] == "partial"
        assert is_fixed_point(81312000, 10, STANDARD)[0]
