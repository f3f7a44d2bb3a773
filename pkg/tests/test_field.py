import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxclosure.field import RealCyclotomicField, chebyshev_c, cyclotomic_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("M, poly", [
    (1, (2, 1)),
    (2, (0, 1)),
    (3, (-1, 1)),
    (4, (-2, 0, 1)),
    (5, (-1, -1, 1)),
    (6, (-3, 0, 1)),
    (7, (1, -2, -1, 1)),
])
def test_minimal_polynomials(M, poly):
    K = RealCyclotomicField(M)
    assert K.minpoly == poly
    theta = 2 * math.cos(math.pi / M)
    assert abs(sum(c * theta ** i for i, c in enumerate(poly))) < 1e-9


@pytest.mark.parametrize("M", [4, 5, 6, 7, 8, 10, 12])
def test_two_cos_values(M):
    K = RealCyclotomicField(M)
    for m in range(1, M + 1):
        if M % m:
            continue
        x = K.two_cos_pi_over(m)
        assert abs(float(x) - 2 * math.cos(math.pi / m)) < 1e-9


def test_chebyshev_relation():
    # 2cos(k x) as a polynomial in 2cos(x)
    x = 0.37
    for k in range(6):
        c = chebyshev_c(k)
        assert abs(sum(a * (2 * math.cos(x)) ** i for i, a in enumerate(c)) - 2 * math.cos(k * x)) < 1e-9


small = st.integers(-6, 6).map(Fraction)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([5, 7, 8, 12]), st.lists(small, min_size=3, max_size=3),
       st.lists(small, min_size=3, max_size=3))
def test_sign_matches_floating_point(M, a, b):
    K = RealCyclotomicField(M)
    theta = K.theta
    x = K(a[0]) + K(a[1]) * theta + K(a[2]) * theta * theta
    y = K(b[0]) + K(b[1]) * theta
    z = x * y - y
    approx = float(z)
    if abs(approx) > 1e-9:
        assert z.sign() == (1 if approx > 0 else -1)
    else:
        assert z.is_zero()


def test_exact_zero():
    K = RealCyclotomicField(5)
    phi = K.theta
    # the golden ratio satisfies phi^2 = phi + 1
    assert (phi * phi - phi - K.one).is_zero()
    assert (phi * phi - phi - K.one).sign() == 0
