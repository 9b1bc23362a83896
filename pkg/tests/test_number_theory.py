import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import brute_jacobi, brute_legendre, brute_prime_factors, gf2_mul, gf2_trace
from meritfactor.errors import (
    NotADivisor,
    NotOddPrime,
    NotPositiveOdd,
    NotPrimePower,
    NotPrimitive,
    NotSquarefree,
)
from meritfactor.number_theory import (
    PRIMITIVE_MODULI,
    BinaryField,
    OddField,
    additive_character,
    factor_squarefree,
    find_primitive_modulus,
    is_prime,
    is_primitive_modulus,
    jacobi_array,
    jacobi_growth_ratio,
    jacobi_symbol,
    kappa,
    legendre_symbol,
    omega,
    prime_factors,
    prime_power,
    quadratic_character,
    relative_trace,
    smallest_primitive_root,
    trace,
)

SMALL_PRIMES = [p for p in range(3, 1000) if all(p % q for q in range(2, math.isqrt(p) + 1))]


class TestPrimality:
    def test_small_range(self):
        for n in range(-3, 3000):
            assert is_prime(n) == (n >= 2 and brute_prime_factors(n) == [n])

    def test_large_known(self):
        assert is_prime(2 ** 61 - 1)
        assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
        assert not is_prime((2 ** 31 - 1) * (2 ** 19 - 1))

    @given(st.integers(1, 10 ** 6))
    def test_prime_factors(self, n):
        assert prime_factors(n) == brute_prime_factors(n)


class TestSymbols:
    def test_legendre_examples(self):
        assert legendre_symbol(0, 7) == 0
        assert legendre_symbol(2, 7) == 1
        assert legendre_symbol(3, 7) == -1

    def test_legendre_errors(self):
        for p in (1, 2, 9, 15):
            with pytest.raises(NotOddPrime):
                legendre_symbol(1, p)

    def test_legendre_matches_square_table(self):
        for p in SMALL_PRIMES[:40]:
            for j in range(-p, 2 * p):
                assert legendre_symbol(j, p) == brute_legendre(j, p)

    def test_jacobi_examples(self):
        assert jacobi_symbol(5, 1) == 1
        assert jacobi_symbol(2, 15) == 1
        assert jacobi_symbol(3, 15) == 0

    def test_jacobi_errors(self):
        for n in (0, -3, 4):
            with pytest.raises(NotPositiveOdd):
                jacobi_symbol(1, n)

    def test_jacobi_equals_legendre_for_primes(self):
        for p in SMALL_PRIMES:
            j = np.arange(p)
            assert np.array_equal(jacobi_array(j, p), [legendre_symbol(int(x), p) for x in j])
            for x in range(0, p, max(1, p // 17)):
                assert jacobi_symbol(x, p) == legendre_symbol(x, p)

    def test_jacobi_multiplicative(self):
        odd = range(1, 200, 2)
        for n1 in odd[::9]:
            for n2 in odd[::11]:
                if math.gcd(n1, n2) != 1:
                    continue
                j = np.arange(-50, n1 * n2 + 50)
                lhs = jacobi_array(j, n1 * n2)
                assert np.array_equal(lhs, jacobi_array(j, n1) * jacobi_array(j, n2))

    @given(st.integers(-10 ** 6, 10 ** 6), st.integers(0, 2000).map(lambda k: 2 * k + 1))
    def test_jacobi_matches_factored_product(self, j, n):
        assert jacobi_symbol(j, n) == brute_jacobi(j, n)
        assert int(jacobi_array(np.array([j]), n)[0]) == jacobi_symbol(j, n)

    def test_legendre_even_for_one_mod_four(self):
        for p in SMALL_PRIMES:
            if p % 4 == 1:
                for j in range(1, p):
                    assert legendre_symbol(j, p) == legendre_symbol(-j, p)

    def test_quadratic_gauss_sums(self):
        for p in [q for q in SMALL_PRIMES if q <= 500]:
            chi = np.array([legendre_symbol(j, p) for j in range(p)], dtype=np.float64)
            j = np.arange(p)
            expected_unit = 1j ** (((p - 1) ** 2 // 4) % 4) * math.sqrt(p)
            for k in range(1, p, max(1, p // 25)):
                s = np.sum(chi * np.exp(2j * np.pi * ((j * k) % p) / p))
                assert abs(s - expected_unit * legendre_symbol(k, p)) < 1e-8


class TestFactorization:
    def test_examples(self):
        assert factor_squarefree(15).primes == (3, 5)
        assert factor_squarefree(7).primes == (7,)
        with pytest.raises(NotSquarefree):
            factor_squarefree(12)

    def test_omega_kappa(self):
        assert omega(105) == 3 and kappa(105) == 3
        assert omega(13 * 9973) == 2 and kappa(13 * 9973) == 13

    def test_growth_ratio(self):
        p = 10007
        assert jacobi_growth_ratio(p) == pytest.approx(max(4 * math.log(p) ** 6, 5) / p)
        assert jacobi_growth_ratio(15) == pytest.approx(max(16 * math.log(15) ** 6, 25) / 3)
        assert jacobi_growth_ratio(105) == pytest.approx(max(64 * math.log(105) ** 6, 125) / 3)

    def test_prime_power(self):
        assert prime_power(3 ** 7) == (3, 7)
        assert prime_power(13) == (13, 1)
        with pytest.raises(NotPrimePower):
            prime_power(12)


def _brute_is_primitive_modulus(f: int, d: int) -> bool:
    n = (1 << d) - 1
    if not f & 1:
        return False
    z = 1
    for k in range(1, n + 1):
        z = gf2_mul(z, 2, f, d)
        if z == 1:
            return k == n
    return False


class TestBinaryField:
    def test_moduli_table_small_degrees_are_smallest(self):
        for d in range(1, 13):
            cands = [f for f in range(1 << d, 1 << (d + 1)) if _brute_is_primitive_modulus(f, d)]
            assert PRIMITIVE_MODULI[d] == cands[0]
            assert find_primitive_modulus(d) == cands[0]

    def test_moduli_table_all_primitive(self):
        for d, f in PRIMITIVE_MODULI.items():
            assert is_primitive_modulus(f, d)

    def test_rejects_non_primitive(self):
        with pytest.raises(NotPrimitive):
            BinaryField(4, 0b11111)  # x^4+x^3+x^2+x+1 has order 5

    def test_trace_examples(self):
        f = BinaryField(3, 0b1011)
        assert trace(f, 1) == 1
        assert trace(f, 2) == 0
        assert trace(f, 0) == 0
        assert additive_character(f, 0) == 1
        assert additive_character(f, 1) == -1

    @pytest.mark.parametrize("d", [2, 3, 5, 8, 11])
    def test_trace_matches_definition(self, d):
        f = BinaryField(d)
        ys = np.arange(f.size)
        fast = f.trace_array(ys)
        for y in range(f.size):
            assert fast[y] == gf2_trace(y, f.modulus, d) == f.trace(y)

    @pytest.mark.parametrize("d", range(1, 17))
    def test_characters_sum_to_zero(self, d):
        f = BinaryField(d)
        chars = 1 - 2 * f.trace_array(np.arange(f.size))
        assert int(chars.sum()) == 0

    @pytest.mark.parametrize("d", [3, 7, 12])
    def test_exp_log_tables(self, d):
        f = BinaryField(d)
        rng = np.random.default_rng(d)
        for i, j in rng.integers(0, f.n, size=(200, 2)):
            assert f.mul(int(f.exp[i]), int(f.exp[j])) == f.exp[(i + j) % f.n]
            assert f.mul(int(f.exp[i]), int(f.exp[j])) == gf2_mul(int(f.exp[i]), int(f.exp[j]), f.modulus, d)
        assert np.array_equal(f.log[f.exp], np.arange(f.n))
        assert sorted(f.exp.tolist()) == list(range(1, f.size))

    @given(st.integers(2, 20), st.data())
    def test_mul_array_matches_scalar(self, d, data):
        f = BinaryField(d)
        b = data.draw(st.integers(0, f.size - 1))
        ys = np.array(data.draw(st.lists(st.integers(0, f.size - 1), min_size=1, max_size=30)))
        assert f.mul_array(ys, b).tolist() == [gf2_mul(int(y), b, f.modulus, d) for y in ys]

    def test_relative_trace(self):
        f = BinaryField(6)
        for y in range(f.size):
            assert relative_trace(f, 6, y) == y
            assert relative_trace(f, 1, y) == f.trace(y)
            for k in (2, 3):
                z = relative_trace(f, k, y)
                assert f.frobenius_power(z, k) == z
                naive = 0
                w = y
                for _ in range(6 // k):
                    naive ^= w
                    w = f.frobenius_power(w, k)
                assert z == naive
        with pytest.raises(NotADivisor):
            relative_trace(f, 4, 3)

    def test_relative_trace_arrays(self):
        f = BinaryField(8)
        ys = np.arange(f.size)
        for k in (1, 2, 4, 8):
            assert f.relative_trace_array(k, ys).tolist() == [f.relative_trace(k, int(y)) for y in ys]

    def test_primitive_elements_count(self):
        f = BinaryField(6)
        prim = f.primitive_elements()
        phi = sum(1 for k in range(1, 64) if math.gcd(k, 63) == 1)
        assert len(prim) == phi
        assert f.x in prim and 1 not in prim


class TestOddField:
    def test_quadratic_character_examples(self):
        f = OddField(7)
        assert quadratic_character(f, 0) == 1
        assert quadratic_character(f, 3) == -1 == legendre_symbol(3, 7)
        for theta in range(1, 7):
            if f.is_primitive(theta):
                assert quadratic_character(f, f.mul(theta, theta)) == 1

    @pytest.mark.parametrize("p", [3, 5, 7, 11, 101, 1009])
    def test_prime_field_character_matches_legendre(self, p):
        f = OddField(p)
        ys = np.arange(1, p)
        assert f.quadratic_character_array(ys).tolist() == [legendre_symbol(int(y), p) for y in ys]

    def test_smallest_primitive_root(self):
        assert smallest_primitive_root(7) == 3
        assert smallest_primitive_root(1009) == 11
        assert smallest_primitive_root(4099) == 2
        assert OddField(4099).smallest_primitive() == 2

    @pytest.mark.parametrize("q", [9, 25, 27, 49, 81, 121, 3 ** 7])
    def test_prime_power_fields(self, q):
        f = OddField(q)
        p = f.p
        assert len(set(f.exp.tolist())) == q - 1
        # squares are exactly the even powers and there are (q-1)/2 of them
        chars = f.quadratic_character_array(np.arange(1, q))
        assert int((chars == 1).sum()) == (q - 1) // 2
        # additive structure: p * y = 0 and add is associative/commutative on a sample
        rng = np.random.default_rng(q)
        for a, b, c in rng.integers(0, q, size=(50, 3)):
            a, b, c = int(a), int(b), int(c)
            assert f.add(a, b) == f.add(b, a)
            assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
            acc = 0
            for _ in range(p):
                acc = f.add(acc, a)
            assert acc == 0
            # distributivity ties the tables to the encoding
            assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add_one_array(np.arange(q)).tolist() == [f.add(int(y), 1) for y in range(q)]
