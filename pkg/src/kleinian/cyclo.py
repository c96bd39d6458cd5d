"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as a residue of Q[x] modulo the N-th
cyclotomic polynomial, kept as an integer numerator vector over a single
positive denominator.  Reduction is always modulo Phi_N (never x^N - 1),
so the zero test is coefficientwise and sound.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "CycloField",
    "CycloNum",
    "cyclotomic_polynomial",
    "get_field",
    "root_of_unity",
]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _exact_div_monic(num: list[int], den: tuple[int, ...]) -> list[int]:
    """Divide integer polynomials (low-to-high coefficients) by a monic divisor."""
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for i, di in enumerate(den):
                num[k - dn + i] -= c * di
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients (constant term first) of the n-th cyclotomic polynomial.

    Computed as (x^n - 1) divided exactly by every Phi_d with d a proper
    divisor of n.
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _exact_div_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _coerce_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


class CycloField:
    """The cyclotomic field Q(zeta_N), N >= 1."""

    def __init__(self, order: int):
        if order < 1:
            raise ValueError(f"field order must be positive, got {order}")
        self.order = order
        self.modulus = cyclotomic_polynomial(order)
        self.degree = len(self.modulus) - 1
        d = self.degree
        # x^k mod Phi_N for 0 <= k < max(N, 2d-1), as integer vectors
        self._powers: list[tuple[int, ...]] = []
        vec = [0] * d
        vec[0] = 1
        for _ in range(max(order, 2 * d - 1)):
            self._powers.append(tuple(vec))
            top = vec[-1]
            vec = [0] + vec[:-1]
            if top:
                for i in range(d):
                    vec[i] -= top * self.modulus[i]

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.order == self.order

    def __hash__(self):
        return hash(("CycloField", self.order))

    def __repr__(self):
        return f"CycloField({self.order})"

    def __reduce__(self):
        return (get_field, (self.order,))

    # -- constructors --------------------------------------------------
    def __call__(self, value) -> "CycloNum":
        if isinstance(value, CycloNum):
            if value.field != self:
                raise ValueError(f"element of {value.field} used in {self}")
            return value
        q = _coerce_fraction(value)
        num = [0] * self.degree
        num[0] = q.numerator
        return CycloNum._make(self, num, q.denominator)

    @property
    def zero(self) -> "CycloNum":
        return self(0)

    @property
    def one(self) -> "CycloNum":
        return self(1)

    def from_coefficients(self, coeffs) -> "CycloNum":
        """Element sum_i coeffs[i] * zeta^i; any length, reduced mod Phi_N."""
        fr = [_coerce_fraction(c) for c in coeffs]
        den = 1
        for q in fr:
            den = den * q.denominator // gcd(den, q.denominator)
        acc = [0] * self.degree
        for i, q in enumerate(fr):
            if q:
                c = q.numerator * (den // q.denominator)
                for j, pj in enumerate(self._power(i)):
                    acc[j] += c * pj
        return CycloNum._make(self, acc, den)

    def _power(self, k: int) -> tuple[int, ...]:
        k %= self.order
        return self._powers[k]

    def zeta(self, m: int | None = None, k: int = 1) -> "CycloNum":
        """zeta_m^k inside this field (m defaults to N).

        Besides divisors m of N, m = 2N is accepted for odd N since
        zeta_{2N} = -zeta_N^{(N+1)/2}.
        """
        n = self.order
        m = n if m is None else m
        if n % m == 0:
            return root_of_unity(self, k * (n // m))
        if m == 2 * n and n % 2 == 1:
            base = -root_of_unity(self, (n + 1) // 2)
            return base ** (k % m)
        raise ValueError(f"zeta_{m} is not available in Q(zeta_{n})")

    def sqrt_rational(self, value) -> "CycloNum":
        """A square root of a rational number, if it lies in this field.

        Uses quadratic Gauss sums: for an odd prime p the sum
        sum_a (a/p) zeta_p^a squares to (-1)^((p-1)/2) p.
        """
        q = _coerce_fraction(value)
        if q == 0:
            return self.zero
        n = q.numerator * q.denominator
        sign = -1 if n < 0 else 1
        n = abs(n)
        square, free = 1, 1
        p = 2
        while p * p <= n:
            while n % (p * p) == 0:
                n //= p * p
                square *= p
            if n % p == 0:
                n //= p
                free *= p
            p += 1
        free *= n
        root = self.one
        produced_sign = 1
        f = free
        p = 2
        while f > 1:
            if f % p == 0:
                f //= p
                if p == 2:
                    root = root * (self.zeta(8, 1) + self.zeta(8, 7))
                else:
                    gauss = self.zero
                    for a in range(1, p):
                        leg = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
                        gauss = gauss + self.zeta(p, a) * leg
                    root = root * gauss
                    if p % 4 == 3:
                        produced_sign = -produced_sign
            p += 1
        if produced_sign != sign:
            root = root * self.zeta(4, 1)
        root = root * Fraction(square, q.denominator)
        assert root * root == self(q)
        return root

    def embed(self, x: "CycloNum") -> "CycloNum":
        """Image of x under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M)."""
        src = x.field
        if src == self:
            return x
        if self.order % src.order:
            raise ValueError(f"{src} does not embed in {self}")
        step = self.order // src.order
        acc = [0] * self.degree
        for i, c in enumerate(x.num):
            if c:
                for j, pj in enumerate(self._power(i * step)):
                    acc[j] += c * pj
        return CycloNum._make(self, acc, x.den)


@lru_cache(maxsize=None)
def get_field(order: int) -> CycloField:
    return CycloField(order)


def root_of_unity(field: CycloField, k: int) -> "CycloNum":
    """zeta_N^k reduced modulo Phi_N (k taken modulo N)."""
    return CycloNum._make(field, list(field._power(k)), 1)


class CycloNum:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("field", "num", "den", "_hash")

    def __init__(self, field: CycloField, coefficients):
        made = field.from_coefficients(coefficients)
        self.field, self.num, self.den = field, made.num, made.den
        self._hash = None

    @classmethod
    def _make(cls, field, num, den):
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if den < 0:
            g = -g
        obj = object.__new__(cls)
        obj.field = field
        if g != 1:
            obj.num = tuple(c // g for c in num)
            obj.den = den // g
        else:
            obj.num = tuple(num)
            obj.den = den
        if not any(obj.num):
            obj.den = 1
        obj._hash = None
        return obj

    # -- inspection ----------------------------------------------------
    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.den) for c in self.num)

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self):
        return any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(self.num[0], self.den)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mon = "z" if i == 1 else f"z^{i}"
                if c == 1:
                    terms.append(mon)
                elif c == -1:
                    terms.append(f"-{mon}")
                else:
                    terms.append(f"{c}*{mon}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"<{body} in Q(z{self.field.order})>"

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field.order, self.num, self.den))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, CycloNum):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return self.den == other.den and self.num == other.num
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        return NotImplemented

    # -- arithmetic ----------------------------------------------------
    def _lift(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.field != self.field:
                raise ValueError(f"field mismatch: {self.field} vs {other.field}")
            return other
        return self.field(other)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return CycloNum._make(self.field, [a + b for a, b in zip(self.num, o.num)], self.den)
        return CycloNum._make(
            self.field,
            [a * o.den + b * self.den for a, b in zip(self.num, o.num)],
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return CycloNum._make(self.field, [-a for a in self.num], self.den)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return CycloNum._make(
                self.field, [a * q.numerator for a in self.num], self.den * q.denominator
            )
        if not isinstance(other, CycloNum):
            return NotImplemented
        o = self._lift(other)
        field = self.field
        d = field.degree
        a, b = self.num, o.num
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    if bj:
                        prod[i + j] += ai * bj
        mod = field.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                base = k - d
                for i in range(d):
                    prod[base + i] -= c * mod[i]
        return CycloNum._make(field, prod[:d], self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        field = self.field
        # polynomials as lists of Fractions, low to high
        r0 = [Fraction(c) for c in field.modulus]
        r1 = _trim([Fraction(c, self.den) for c in self.num])
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _divmod_frac(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_sub_frac(s0, _mul_frac(q, s1)))
        # r0 is a nonzero constant
        c = r0[0]
        return field.from_coefficients([x / c for x in s0])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            q = Fraction(other)
            return CycloNum._make(
                self.field, [a * q.denominator for a in self.num], self.den * q.numerator
            )
        o = self._lift(other)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def galois(self, j: int) -> "CycloNum":
        """The automorphism zeta -> zeta^j (j coprime to N)."""
        field = self.field
        if gcd(j, field.order) != 1:
            raise ValueError(f"{j} is not a unit modulo {field.order}")
        acc = [0] * field.degree
        for i, c in enumerate(self.num):
            if c:
                for t, pt in enumerate(field._power(i * j)):
                    acc[t] += c * pt
        return CycloNum._make(field, acc, self.den)

    def conjugate(self) -> "CycloNum":
        """Complex conjugation, zeta -> zeta^(N-1)."""
        return self.galois(self.field.order - 1)


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def _sub_frac(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _mul_frac(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _divmod_frac(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, bi in enumerate(b):
            a[shift + i] -= c * bi
        a = _trim(a[:-1]) if len(a) > 1 else [Fraction(0)]
        if len(a) == 1 and a[0] == 0:
            break
    return _trim(q), _trim(a) if a else [Fraction(0)]
