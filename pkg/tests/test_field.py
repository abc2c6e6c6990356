import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffdecomp.field import GF, all_vectors, field, field_of_order, is_irreducible, is_prime


def test_gf2_basics():
    f = field(2)
    assert f.q == 2 and f.primitive == 1
    assert f.add(1, 1) == 0


def test_gf3_primitive_and_dlog():
    f = field(3)
    assert f.primitive == 2
    assert f.mul(2, 2) == 1
    assert f.dlog(2) == 1
    assert f.dlog(1) == 0


def test_gf5_dlog():
    f = field(5)
    assert f.primitive == 2
    assert f.dlog(4) == 2


def test_gf4_modulus_and_product():
    f = field(2, 2)
    assert f.q == 4
    # coefficients low degree first: x^2 + x + 1
    assert tuple(f.modulus) == (1, 1, 1)
    assert f.mul(2, 2) == 3


def test_small_irreducibility():
    # x^2+1 splits over GF(2) and GF(5), not over GF(3)
    assert not is_irreducible([1, 0, 1], 2)
    assert is_irreducible([1, 0, 1], 3)
    assert not is_irreducible([1, 0, 1], 5)
    # (x^2+x+1)^2 has no roots over GF(2) but is reducible
    assert not is_irreducible([1, 0, 1, 0, 1], 2)


def test_bad_construction():
    with pytest.raises(ValueError):
        GF(4)
    with pytest.raises(ValueError):
        GF(2, 20)
    with pytest.raises(ValueError):
        field_of_order(6)
    assert field_of_order(9) == field(3, 2)
    assert is_prime(65537) and not is_prime(1)


@pytest.mark.parametrize("p,k", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2)])
def test_tables_are_consistent(p, k):
    f = field(p, k)
    q = f.q
    assert len(set(f.exp_table.tolist())) == q - 1  # primitive: full period
    nz = np.arange(1, q)
    assert np.array_equal(f.exp_table[f.log_table[nz]], nz)
    assert f.log_table[0] == -1
    with pytest.raises(ValueError):
        f.exp_table[0] = 5


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3)])
def test_field_axioms_exhaustive(p, k):
    f = field(p, k)
    a, b, c = np.meshgrid(np.arange(f.q), np.arange(f.q), np.arange(f.q), indexing="ij")
    assert np.array_equal(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)))
    assert np.array_equal(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)))
    assert np.array_equal(f.add(a, f.neg(a)), np.zeros_like(a))
    x = np.arange(1, f.q)
    assert np.array_equal(f.mul(x, f.inv(x)), np.ones_like(x))


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field(3).inv(0)
    with pytest.raises(ZeroDivisionError):
        field(2, 2).div(1, 0)


@settings(max_examples=50, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2), (3, 2), (7, 1)]), st.data())
def test_log_homomorphism(pk, data):
    f = field(*pk)
    a = data.draw(st.integers(1, f.q - 1))
    b = data.draw(st.integers(1, f.q - 1))
    assert f.dlog(f.mul(a, b)) == (f.dlog(a) + f.dlog(b)) % (f.q - 1)
    assert f.pow_primitive(f.dlog(a)) == a


def test_all_vectors_order():
    v = all_vectors(field(3), 2)
    assert v.shape == (9, 2)
    assert v[:4].tolist() == [[0, 0], [0, 1], [0, 2], [1, 0]]
    assert all_vectors(field(2), 0).shape == (1, 0)
