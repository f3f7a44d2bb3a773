"""
Exact arithmetic in the real cyclotomic field Q(2cos(pi/M)).

An element is a polynomial in theta = 2cos(pi/M) with rational coefficients,
reduced modulo the minimal polynomial of theta.  The minimal polynomial comes
from the 2M-th cyclotomic polynomial by the substitution x = z + 1/z.

Signs are decided exactly: theta is isolated in a rational interval that
brackets a sign change of its minimal polynomial, and the interval is bisected
until interval evaluation of the element excludes zero.  A nonzero element
cannot vanish at theta, so the refinement always terminates.

>>> K = RealCyclotomicField(5)
>>> K.minpoly
(-1, -1, 1)
>>> phi = K.theta
>>> phi * phi == phi + K.one
True
>>> (phi - K(2)).sign()
-1
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import reduce

__all__ = [
    "cyclotomic_polynomial",
    "chebyshev_c",
    "RealCyclotomicField",
    "FieldElement",
]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # integer polynomials, low degree first; den is monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        q[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    return q, num[: len(den) - 1]


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    >>> cyclotomic_polynomial(6)
    (1, -1, 1)
    """
    if n < 1:
        raise ValueError("n must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


def chebyshev_c(k: int) -> tuple[int, ...]:
    """Integer polynomial C_k with C_k(z + 1/z) = z^k + z^-k.

    C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}.

    >>> chebyshev_c(3)
    (0, -3, 0, 1)
    """
    prev, cur = [2], [0, 1]
    if k == 0:
        return (2,)
    for _ in range(k - 1):
        nxt = [0] + cur
        for i, c in enumerate(prev):
            nxt[i] -= c
        prev, cur = cur, nxt
    return tuple(cur)


def _lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class RealCyclotomicField:
    """The field Q(theta), theta = 2cos(pi/M).

    For M < 3 theta is rational and the field is Q itself (degree 1).
    """

    def __init__(self, M: int):
        if M < 1:
            raise ValueError("M must be positive")
        self.M = M
        if M < 3:
            # theta = 2cos(pi) = -2 or 2cos(pi/2) = 0
            self.theta_rational = Fraction(-2 if M == 1 else 0)
            self.minpoly: tuple[int, ...] = (-int(self.theta_rational), 1)
        else:
            phi = cyclotomic_polynomial(2 * M)
            d = (len(phi) - 1) // 2
            poly = [0] * (d + 1)
            poly[0] += phi[d]
            for k in range(1, d + 1):
                for i, c in enumerate(chebyshev_c(k)):
                    poly[i] += phi[d + k] * c
            self.minpoly = tuple(poly)
            if len(poly) == 2:
                self.theta_rational = Fraction(-poly[0])
        self.degree = len(self.minpoly) - 1
        self._lock = threading.Lock()
        self._interval = self._isolate()

    @classmethod
    def for_bonds(cls, bonds) -> "RealCyclotomicField":
        """Field large enough for cos(pi/m) for every finite bond m >= 3."""
        return cls(_lcm(sorted({m for m in bonds if m and m >= 3})))

    # -- construction helpers -------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, (Fraction(value),) + (Fraction(0),) * (self.degree - 1))

    def from_poly(self, coeffs) -> "FieldElement":
        """Reduce a polynomial in theta (rational coefficients) to an element."""
        c = [Fraction(x) for x in coeffs]
        mp = self.minpoly
        d = self.degree
        for k in range(len(c) - 1, d - 1, -1):
            lead = c[k]
            if lead:
                for i in range(d + 1):
                    c[k - d + i] -= lead * mp[i]
        c = c[:d] + [Fraction(0)] * (d - len(c))
        return FieldElement(self, tuple(c))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    @property
    def theta(self) -> "FieldElement":
        if self.degree == 1:
            return self(self.theta_rational)
        return self.from_poly([0, 1])

    def two_cos_pi_over(self, m: int) -> "FieldElement":
        """2cos(pi/m) for m dividing M, or m = 2."""
        if m == 2:
            return self.zero
        if m == 1:
            return self(-2)
        if self.M % m:
            raise ValueError(f"2cos(pi/{m}) is not in Q(2cos(pi/{self.M}))")
        return self.from_poly(chebyshev_c(self.M // m))

    # -- sign determination ---------------------------------------------------

    def _minpoly_at(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.minpoly):
            acc = acc * x + c
        return acc

    def _isolate(self) -> tuple[Fraction, Fraction]:
        if self.degree == 1:
            t = self.theta_rational
            return t, t
        approx = 2 * math.cos(math.pi / self.M)
        # other conjugates are 2cos(k pi/M) with k >= 3 odd
        gap = approx - 2 * math.cos(3 * math.pi / self.M)
        radius = Fraction(1, 2**40)
        if gap <= 4 * float(radius):
            raise ArithmeticError(f"cannot isolate 2cos(pi/{self.M}) at double precision")
        lo = Fraction(approx) - radius
        hi = Fraction(approx) + radius
        if self._minpoly_at(lo) * self._minpoly_at(hi) >= 0:
            raise ArithmeticError("isolating interval does not bracket theta")
        return lo, hi

    def _refine(self, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
        mid = (lo + hi) / 2
        f_lo, f_mid = self._minpoly_at(lo), self._minpoly_at(mid)
        if f_mid == 0:
            return mid, mid
        return (lo, mid) if f_lo * f_mid < 0 else (mid, hi)

    def sign(self, coeffs: tuple[Fraction, ...]) -> int:
        if not any(coeffs):
            return 0
        if self.degree == 1:
            v = coeffs[0]
            return (v > 0) - (v < 0)
        lo, hi = self._interval
        for _ in range(4096):
            # theta > 0 here, so interval Horner needs only endpoint products
            a = b = Fraction(0)
            for c in reversed(coeffs):
                prods = (a * lo, a * hi, b * lo, b * hi)
                a, b = min(prods) + c, max(prods) + c
            if a > 0:
                return 1
            if b < 0:
                return -1
            lo, hi = self._refine(lo, hi)
            with self._lock:
                if hi - lo < self._interval[1] - self._interval[0]:
                    self._interval = (lo, hi)
        raise ArithmeticError("sign refinement did not converge")

    def approx(self, coeffs: tuple[Fraction, ...]) -> float:
        t = float(self.theta_rational) if self.degree == 1 else 2 * math.cos(math.pi / self.M)
        return sum(float(c) * t**i for i, c in enumerate(coeffs))

    def __eq__(self, other):
        return isinstance(other, RealCyclotomicField) and other.M == self.M

    def __hash__(self):
        return hash(("RealCyclotomicField", self.M))

    def __repr__(self):
        return f"RealCyclotomicField({self.M})"


class FieldElement:
    """Immutable element of a RealCyclotomicField."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: RealCyclotomicField, coeffs: tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return self.field(other)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return self.field.from_poly(prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def sign(self) -> int:
        return self.field.sign(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __float__(self):
        return self.field.approx(self.coeffs)

    def __repr__(self):
        terms = [f"{c}*θ^{i}" if i else f"{c}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"
