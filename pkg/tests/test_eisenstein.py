from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from kscontext.catalog import builtin_seven_context
from kscontext.eisenstein import (
    ONE,
    W,
    W2,
    ZERO,
    EisensteinScalar,
    ExactMatrix,
    Ket,
    inner_product,
    matrix_product,
    observable_from_ray,
    ray_equal,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
scalars = st.builds(EisensteinScalar, rationals, rationals)
nonzero_scalars = scalars.filter(bool)


def ket(*xs):
    return Ket(xs)


def test_omega_relations():
    assert W * W == W2 == EisensteinScalar(-1, -1)
    assert W * W2 == ONE
    assert 1 + W + W2 == ZERO
    assert W.conjugate() == W2


def test_scalar_normalizes_fractions():
    x = EisensteinScalar(Fraction(4, -6), 2)
    assert x.a == Fraction(-2, 3) and x.a.denominator == 3


@given(scalars, scalars)
def test_conjugate_is_multiplicative(x, y):
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@given(scalars)
def test_conjugate_is_involution(x):
    assert x.conjugate().conjugate() == x


@given(scalars)
def test_norm_matches_complex_modulus(x):
    assert float(x.norm()) == pytest.approx(abs(x.to_complex()) ** 2, abs=1e-9)
    assert x * x.conjugate() == EisensteinScalar(x.norm())


@given(nonzero_scalars)
def test_inverse(x):
    assert x * x.inverse() == ONE


@pytest.mark.parametrize(
    "u, v, expected",
    [
        (ket(1, 0, 0, 0, 0, 0), ket(0, 0, 1, 1, 1, 1), ZERO),
        (ket(0, 1, 0, 1, W, W2), ket(0, 1, 0, 1, W, W2), EisensteinScalar(4)),
        (ket(1, 0, 0, 0, 0, 0), ket(1, 0, 0, 0, 0, 0), ONE),
    ],
)
def test_inner_product_examples(u, v, expected):
    assert inner_product(u, v) == expected


def test_inner_product_dimension_mismatch():
    with pytest.raises(ValueError):
        inner_product(ket(1, 0), ket(1, 0, 0))


kets3 = st.lists(scalars, min_size=3, max_size=3).filter(any).map(Ket)


@given(kets3, kets3)
def test_inner_product_hermitian_symmetry(u, v):
    assert inner_product(u, v) == inner_product(v, u).conjugate()


@given(kets3)
def test_self_inner_product_is_positive_rational(v):
    ip = inner_product(v, v)
    assert ip.is_rational() and ip.a > 0 and ip.a == v.norm_sq()


def test_zero_ket_rejected():
    with pytest.raises(ValueError):
        Ket([0, 0, 0])


def test_ray_equal_examples():
    assert ray_equal(ket(1, 0, 0, 0, 0, 0), ket(W, 0, 0, 0, 0, 0))
    cs = builtin_seven_context()
    b2 = cs.rays[cs.contexts[1][1]]
    b3 = cs.rays[cs.contexts[2][1]]
    assert ray_equal(b2, ket(0, 0, 1, 1, 1, 1)) and ray_equal(b2, b3)
    assert not ray_equal(ket(1, 0, 0, 0, 0, 0), ket(0, 1, 0, 0, 0, 0))


def test_ray_equal_needs_same_support():
    assert not ray_equal(ket(1, 1, 0), ket(1, 0, 0))
    assert not ray_equal(ket(1, 0, 0), ket(1, 1, 0))


@given(kets3, nonzero_scalars, nonzero_scalars)
def test_ray_equal_is_an_equivalence(v, c1, c2):
    u = Ket([c1 * x for x in v])
    w = Ket([c2 * x for x in u])
    assert ray_equal(v, v)
    assert ray_equal(v, u) and ray_equal(u, v)
    assert ray_equal(u, w) and ray_equal(v, w)


def test_observable_of_coordinate_ray():
    a = observable_from_ray(ket(1, 0, 0, 0, 0, 0))
    assert a == ExactMatrix.diagonal([1, -1, -1, -1, -1, -1])
    assert a.trace() == EisensteinScalar(-4)


def test_observables_of_builtin_rays_are_hermitian_involutions():
    identity = ExactMatrix.identity(6)
    for ray in builtin_seven_context().rays:
        a = observable_from_ray(ray)
        assert a.is_hermitian()
        assert a @ a == identity
        assert a.trace() == EisensteinScalar(2 - 6)


def test_matrix_product_examples():
    i6 = ExactMatrix.identity(6)
    d = ExactMatrix.diagonal([1, -1, -1, -1, -1, -1])
    assert matrix_product([i6, i6]) == i6
    assert matrix_product([d, d]) == i6
    b1 = builtin_seven_context().contexts[0]
    cs = builtin_seven_context()
    prod = matrix_product([observable_from_ray(cs.rays[r]) for r in b1])
    assert prod == -i6


def test_matrix_product_dimension_mismatch():
    with pytest.raises(ValueError):
        matrix_product([ExactMatrix.identity(2), ExactMatrix.identity(3)])


def test_matrix_product_is_associative():
    cs = builtin_seven_context()
    a, b, c = (observable_from_ray(cs.rays[r]) for r in (2, 7, 15))
    assert (a @ b) @ c == a @ (b @ c)
