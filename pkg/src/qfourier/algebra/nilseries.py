"""Nilpotent-ring series with complex floating coefficients.

NumericNilSeries models C[p]/(p^n) with complex double coefficients; it is
the carrier for Gamma-hat classes, z^(c1) twists and z^(-deg/2) rescalings
in the quantum-volume computations.
"""

from __future__ import annotations

import cmath


class NumericNilSeries:
    """Coefficients [c_0, ..., c_{n-1}] of c_0 + c_1 p + ... with p^n = 0."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [complex(c) for c in coeffs]
        if not self.coeffs:
            raise ValueError("length must be at least 1")

    @classmethod
    def const(cls, n, value):
        c = [0j] * n
        c[0] = complex(value)
        return cls(c)

    @classmethod
    def gen(cls, n, scale=1.0):
        """scale * p in C[p]/(p^n)."""
        c = [0j] * n
        if n > 1:
            c[1] = complex(scale)
        return cls(c)

    @property
    def n(self):
        return len(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, NumericNilSeries):
            if other.n != self.n:
                raise ValueError("length mismatch")
            return other
        return NumericNilSeries.const(self.n, other)

    def __add__(self, other):
        other = self._coerce(other)
        return NumericNilSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return NumericNilSeries([-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex)):
            return NumericNilSeries([a * other for a in self.coeffs])
        other = self._coerce(other)
        n = self.n
        out = [0j] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j in range(n - i):
                out[i + j] += a * other.coeffs[j]
        return NumericNilSeries(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        r = NumericNilSeries.const(self.n, 1.0)
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def nilpotent_part(self):
        return NumericNilSeries([0j] + self.coeffs[1:])

    def exp(self):
        """exp(c_0) * exp(nilpotent part), the latter a finite sum."""
        scale = cmath.exp(self.coeffs[0])
        nil = self.nilpotent_part()
        acc = NumericNilSeries.const(self.n, 1.0)
        term = NumericNilSeries.const(self.n, 1.0)
        for k in range(1, self.n):
            term = term * nil * (1.0 / k)
            acc = acc + term
        return acc * scale

    def log(self):
        if self.coeffs[0] == 0:
            raise ValueError("log of a series with zero constant term")
        c0 = self.coeffs[0]
        u = self.nilpotent_part() * (1.0 / c0)
        acc = NumericNilSeries.const(self.n, cmath.log(c0))
        power = NumericNilSeries.const(self.n, 1.0)
        for k in range(1, self.n):
            power = power * u
            acc = acc + power * ((-1.0) ** (k + 1) / k)
        return acc

    def inverse(self):
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series unit part vanishes")
        c0 = self.coeffs[0]
        u = self.nilpotent_part() * (1.0 / c0)
        acc = NumericNilSeries.const(self.n, 1.0)
        power = NumericNilSeries.const(self.n, 1.0)
        for k in range(1, self.n):
            power = power * u
            acc = acc + power * (-1.0) ** k
        return acc * (1.0 / c0)

    def rescale_degree(self, factor):
        """Multiply the p^k coefficient by factor^k (the z^(-deg/2) action)."""
        return NumericNilSeries([c * factor ** k for k, c in enumerate(self.coeffs)])

    def top(self):
        """Coefficient of p^(n-1); the integral over P^(n-1)."""
        return self.coeffs[-1]

    def close_to(self, other, tol=1e-9):
        other = self._coerce(other)
        scale = max(max(abs(c) for c in self.coeffs),
                    max(abs(c) for c in other.coeffs), 1e-300)
        return all(
            abs(a - b) <= tol * scale
            for a, b in zip(self.coeffs, other.coeffs)
        )

    def __repr__(self):
        return "NilSeries[" + ", ".join(f"{c:.12g}" for c in self.coeffs) + "]"
