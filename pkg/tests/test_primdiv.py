from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import valid_pairs
from lehmerdefect.pairs import lehmer_prefix, require_pair, validate_ab, LehmerPair
from lehmerdefect.primdiv import (
    UnsupportedIndexError,
    _strong_lucas,
    defect_witness,
    factorize,
    is_defective,
    is_prime,
    primitive_divisors,
    residual_after_stripping,
)


class TestWitness:
    def test_minus1_minus5_defective_at_5(self):
        w = defect_witness(require_pair(-1, -5), 5)
        assert w.defective and w.residual == 1
        assert w.u_n == 5
        assert w.nonprim_product == 5 * 1 * 1 * 2 * 3

    def test_5_1_not_defective_at_5(self):
        w = defect_witness(require_pair(5, 1), 5, factor_residual=True)
        assert not w.defective
        assert (w.u_n, w.nonprim_product, w.residual) == (11, 60, 11)
        assert w.primitive_primes == (11,)

    def test_fibonacci_pair_defective_at_12(self):
        # u_12 = 144 = 2^4 * 3^2; 2 | u_3 = 2 and 3 | u_4 = 3
        assert is_defective(require_pair(1, 5), 12)

    def test_unit_element_trivially_defective(self):
        # (3, -5) has u_3 = p - q = 1: no prime divisors at all
        w = defect_witness(require_pair(3, -5), 3)
        assert w.defective and abs(w.u_n) == 1

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_low_indices_unsupported(self, n):
        with pytest.raises(UnsupportedIndexError):
            defect_witness(require_pair(1, 5), n)
        with pytest.raises(UnsupportedIndexError):
            residual_after_stripping(1, 5, n)

    @pytest.mark.parametrize(
        "a,b,n,primes",
        [
            ((5), 1, 5, [11]),
            (-1, -5, 5, []),
            (1, 5, 12, []),
        ],
    )
    def test_primitive_divisors(self, a, b, n, primes):
        assert primitive_divisors(require_pair(a, b), n) == primes

    @given(pair=valid_pairs(limit=500), n=st.sampled_from((3, 4, 5, 6, 8, 10, 12)))
    @settings(max_examples=80)
    def test_witness_invariants(self, pair, n):
        w = defect_witness(pair, n)
        assert w.u_n == lehmer_prefix(pair, n)[n]
        prefix = lehmer_prefix(pair, n - 1)
        expected_product = abs(pair.a * pair.b)
        for u in prefix[1:]:
            expected_product *= abs(u)
        assert w.nonprim_product == expected_product
        assert w.residual >= 1
        assert abs(w.u_n) % w.residual == 0
        assert gcd(w.residual, w.nonprim_product) == 1
        assert w.defective is (w.residual == 1)
        assert residual_after_stripping(pair.a, pair.b, n) == w.residual


class TestOracleAgreement:
    def test_stripping_matches_factorization_small_grid(self):
        # Exhaustive |a|, |b| <= 60; the full 200 sweep runs in acceptance.
        seen_non_defective = set()
        for a in range(-60, 61):
            if a == 0:
                continue
            for q in range(-30, 31):
                b = a - 4 * q
                if abs(b) > 60:
                    continue
                pair = validate_ab(a, b)
                if not isinstance(pair, LehmerPair):
                    continue
                for n in (3, 4, 5, 6, 8, 10, 12):
                    w = defect_witness(pair, n)
                    by_factoring = all(
                        w.nonprim_product % p == 0 for p in factorize(abs(w.u_n))
                    )
                    assert w.defective == by_factoring, (a, b, n)
                    if not w.defective:
                        seen_non_defective.add(n)
        assert seen_non_defective == {3, 4, 5, 6, 8, 10, 12}


class TestFactorize:
    @pytest.mark.parametrize(
        "m,expected",
        [
            (144, {2: 4, 3: 2}),
            (1, {}),
            (10403, {101: 1, 103: 1}),  # 101 * 103
            (2**31 - 1, {2**31 - 1: 1}),
            (600851475143, {71: 1, 839: 1, 1471: 1, 6857: 1}),
        ],
    )
    def test_known_factorizations(self, m, expected):
        assert factorize(m) == expected

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factorize(0)

    @given(m=st.integers(1, 10**14))
    @settings(max_examples=60, deadline=None)
    def test_matches_sympy(self, m):
        assert factorize(m) == sympy.factorint(m)

    @given(p=st.integers(2, 10**7), r=st.integers(2, 10**7))
    @settings(max_examples=30, deadline=None)
    def test_semiprimes(self, p, r):
        p, r = sympy.nextprime(p), sympy.nextprime(r)
        expected = {p: 2} if p == r else {min(p, r): 1, max(p, r): 1}
        assert factorize(p * r) == expected

    @given(m=st.integers(1, 10**12))
    @settings(max_examples=40, deadline=None)
    def test_product_reconstructs(self, m):
        out = factorize(m)
        prod = 1
        for p, e in out.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == m
        assert list(out) == sorted(out)


class TestIsPrime:
    def test_small_values(self):
        primes_to_100 = {p for p in range(101) if sympy.isprime(p)}
        assert {p for p in range(101) if is_prime(p)} == primes_to_100
        assert not is_prime(0) and not is_prime(1) and not is_prime(-7)

    @pytest.mark.parametrize("n", [561, 1105, 41041, 825265, 321197185])
    def test_carmichael_numbers_rejected(self, n):
        assert not is_prime(n)

    @pytest.mark.parametrize(
        "n,expected",
        [
            (2**61 - 1, True),
            (2**62 - 1, False),
            (10**18 + 9, True),
            (3317044064679887385961981, False),  # the proven-bound value itself
        ],
    )
    def test_large_values(self, n, expected):
        assert is_prime(n) is expected

    @given(n=st.integers(2, 10**9))
    @settings(max_examples=150, deadline=None)
    def test_matches_sympy(self, n):
        assert is_prime(n) == sympy.isprime(n)

    @given(n=st.integers(5, 10**6))
    @settings(max_examples=80, deadline=None)
    def test_strong_lucas_never_rejects_a_prime(self, n):
        # The Lucas stage only runs above the Miller-Rabin proven bound;
        # exercise it directly.  Primes must always pass (composites may
        # rarely pass too; Miller-Rabin screens those in is_prime).
        n = sympy.nextprime(n | 1)
        assert _strong_lucas(n)

    def test_strong_lucas_rejects_mr_base2_pseudoprimes(self):
        # Strong base-2 Fermat pseudoprimes that a Lucas stage must catch.
        for n in (2047, 3277, 4033, 4681, 8321, 15841, 29341):
            assert not sympy.isprime(n)
            assert not _strong_lucas(n)
