"""Exact arithmetic in Q(zeta_r), the r-th cyclotomic field.

Elements are polynomials in zeta with Fraction coefficients, reduced mod
the r-th cyclotomic polynomial.  This keeps root-of-unity computations
(projective-bundle root branches, idempotents) exact for any rank.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache


def _poly_divmod(a, b):
    """Divmod of coefficient lists (ascending), Fraction coefficients."""
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        while a and not a[-1]:
            a.pop()
        if len(a) < len(b):
            break
        f = a[-1] / b[-1]
        s = len(a) - len(b)
        q[s] = f
        for i, c in enumerate(b):
            a[s + i] -= f * c
        a.pop()
    while a and not a[-1]:
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(r):
    """Coefficients of Phi_r, ascending, via x^r - 1 = prod_{d|r} Phi_d."""
    num = [Fraction(-1)] + [Fraction(0)] * (r - 1) + [Fraction(1)]
    for d in range(1, r):
        if r % d == 0:
            q, rem = _poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
            num = q
    return tuple(num)


class CycloRational:
    """Element of Q(zeta_r); supports the field operations and bool/==."""

    __slots__ = ("r", "coeffs")

    def __init__(self, r, coeffs):
        phi = cyclotomic_polynomial(r)
        deg = len(phi) - 1
        coeffs = [Fraction(c) if isinstance(c, int) else c for c in coeffs]
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, list(phi))
        coeffs = list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
        self.r = r
        self.coeffs = tuple(coeffs[:deg])

    @classmethod
    def zeta(cls, r, power=1):
        power %= r
        c = [Fraction(0)] * (power + 1)
        c[power] = Fraction(1)
        return cls(r, c)

    @classmethod
    def const(cls, r, v):
        return cls(r, [Fraction(v) if isinstance(v, int) else v])

    def _coerce(self, other):
        if isinstance(other, CycloRational):
            if other.r != self.r:
                raise ValueError("different cyclotomic fields")
            return other
        return CycloRational.const(self.r, other)

    def __add__(self, other):
        other = self._coerce(other)
        return CycloRational(self.r, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloRational(self.r, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycloRational(self.r, [a * f for a in self.coeffs])
        other = self._coerce(other)
        n = len(self.coeffs)
        prod = [Fraction(0)] * (2 * n)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    prod[i + j] += a * b
        return CycloRational(self.r, prod)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = CycloRational.const(self.r, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def inverse(self):
        """Extended Euclid against Phi_r."""
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        a = list(cyclotomic_polynomial(self.r))
        b = list(self.coeffs)
        while b and not b[-1]:
            b.pop()
        # Bezout: s*a + t*b = g
        s0, s1 = [Fraction(1)], [Fraction(0)]
        t0, t1 = [Fraction(0)], [Fraction(1)]

        def padd(u, v):
            n = max(len(u), len(v))
            return [
                (u[i] if i < len(u) else Fraction(0))
                + (v[i] if i < len(v) else Fraction(0))
                for i in range(n)
            ]

        def pmul(u, v):
            out = [Fraction(0)] * (len(u) + len(v) - 1 if u and v else 0)
            for i, x in enumerate(u):
                if x:
                    for j, y in enumerate(v):
                        out[i + j] += x * y
            return out

        while b:
            q, rem = _poly_divmod(a, b)
            a, b = b, rem
            s0, s1 = s1, padd(s0, [-c for c in pmul(q, s1)])
            t0, t1 = t1, padd(t0, [-c for c in pmul(q, t1)])
        # now a = gcd (a nonzero constant since Phi_r is irreducible)
        g = a[-1]
        inv = [c / g for c in t0]
        return CycloRational(self.r, inv)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycloRational.const(self.r, other)
        if not isinstance(other, CycloRational):
            return NotImplemented
        return self.r == other.r and self.coeffs == other.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        return hash((self.r, self.coeffs))

    def to_complex(self):
        z = cmath.exp(2j * cmath.pi / self.r)
        return sum(float(c) * z ** k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        bits = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                bits.append(str(c))
            else:
                zp = "zeta" if k == 1 else f"zeta^{k}"
                bits.append(f"{c}*{zp}" if c != 1 else zp)
        return " + ".join(bits) if bits else "0"
