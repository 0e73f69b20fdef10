import pytest
from hypothesis import given
from hypothesis import strategies as st

from braceforge.errors import StructuralError
from braceforge.numtheory import (
    ModulusCtx,
    binomial,
    geometric_unit,
    ilog,
    inv_mod,
    inverse_factorials,
    is_prime,
    multiplicative_order,
    prime_power_decompose,
    primitive_root_mod,
    xi,
)


def brute_order(g, m):
    x, k = g % m, 1
    while x != 1:
        x, k = x * g % m, k + 1
    return k


def phi_prime_power(p, e):
    return p ** (e - 1) * (p - 1)


@pytest.mark.parametrize("m, root", [(3, 2), (27, 2), (5, 2)])
def test_primitive_root_examples(m, root):
    assert primitive_root_mod(m) == root


@pytest.mark.parametrize("m", [3, 9, 27, 5, 25, 125, 7, 49, 11, 121])
def test_primitive_root_has_full_order(m):
    p, e = prime_power_decompose(m)
    g = primitive_root_mod(m)
    assert brute_order(g, m) == phi_prime_power(p, e)
    # least such residue
    assert all(brute_order(h, m) < phi_prime_power(p, e) for h in range(2, g) if h % p)


def test_xi_p3():
    x = xi(3)
    assert x.gamma == 2
    assert x.value == pow(2, 9, 27) == 26
    assert x.value % 3 == 2


def test_xi_p5():
    x = xi(5)
    assert x.gamma == 2
    assert x.value == pow(2, 625, 3125)
    assert pow(x.value, 4, 3125) == 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_xi_invariants(p):
    v, m = xi(p).value, p**p
    assert pow(v, p - 1, m) == 1
    assert all(pow(v, j, p) != 1 for j in range(1, p - 1))


def test_xi_reduced_and_powers():
    x = xi(5)
    assert x.reduced(2) == x.value % 25
    assert x.powers(3, count=4) == [pow(x.value, i, 125) for i in range(4)]


@pytest.mark.parametrize("x, m, inv", [(2, 25, 13), (1, 7, 1), (2, 125, 63)])
def test_inv_mod_examples(x, m, inv):
    assert inv_mod(x, m) == inv


def test_inv_mod_rejects_multiple_of_p():
    with pytest.raises((ValueError, StructuralError)):
        inv_mod(5, 25)


@given(st.integers(0, 40), st.integers(0, 40))
def test_binomial_pascal(n, k):
    if k > n:
        assert binomial(n, k) == 0
    elif k in (0, n):
        assert binomial(n, k) == 1
    else:
        assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(9, 0) == 1
    assert binomial(25, 3) == 2300


@given(st.sampled_from([3, 5, 7]), st.integers(1, 4))
def test_inverse_factorials(p, e):
    m = p**e
    inv = inverse_factorials(p, m)
    f = 1
    for i, v in enumerate(inv):
        f = f * max(i, 1)
        assert f * v % m == 1


@given(st.sampled_from([3, 5, 7]), st.integers(0, 6))
def test_geometric_unit_inverts_p_minus_1(p, top):
    c = geometric_unit(p, top)
    m = p ** (top + 1)
    assert c % m == -sum(p**i for i in range(top + 1)) % m
    assert c * (p - 1) % m == 1


def test_primes_and_logs():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert ilog(5, 125) == 3
    assert prime_power_decompose(243) == (3, 5)
    assert multiplicative_order(2, 27) == 18
    with pytest.raises((ValueError, StructuralError)):
        prime_power_decompose(12)


def test_modulus_ctx():
    ctx = ModulusCtx(5, 3)
    assert ctx.modulus(2) == 25
    with pytest.raises((ValueError, StructuralError)):
        ModulusCtx(4, 2)
