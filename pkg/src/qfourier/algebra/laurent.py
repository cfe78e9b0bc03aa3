"""Finite Laurent objects in z with quotient-ring coefficients.

These carry the z-dependence of I-function coefficients: finitely many
powers of z (negative powers allowed), each weighted by a RingElement.
"""

from __future__ import annotations

from fractions import Fraction

from .quotient import RingElement


class SingularElementError(ArithmeticError):
    """Raised when inverting an element with vanishing unit part."""


class ZLaurent:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = {k: v for k, v in coeffs.items() if not v.is_zero()}

    @classmethod
    def from_element(cls, elt, z_power=0):
        return cls(elt.ring, {z_power: elt})

    @classmethod
    def scalar(cls, ring, value, z_power=0):
        return cls(ring, {z_power: ring.reduce(value)})

    def is_zero(self):
        return not self.coeffs

    def _coerce(self, other):
        if isinstance(other, ZLaurent):
            if other.ring != self.ring:
                raise ValueError("ZLaurent over different rings")
            return other
        if isinstance(other, RingElement):
            return ZLaurent.from_element(other)
        return ZLaurent.scalar(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        coeffs = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = coeffs.get(k)
            coeffs[k] = v if s is None else s + v
        return ZLaurent(self.ring, coeffs)

    __radd__ = __add__

    def __neg__(self):
        return ZLaurent(self.ring, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        coeffs = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                p = v1 * v2
                if k in coeffs:
                    coeffs[k] = coeffs[k] + p
                else:
                    coeffs[k] = p
        return ZLaurent(self.ring, coeffs)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = ZLaurent.scalar(self.ring, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, (ZLaurent, RingElement, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ring, frozenset((k, hash(v)) for k, v in self.coeffs.items())))

    def shift_z(self, m):
        return ZLaurent(self.ring, {k + m: v for k, v in self.coeffs.items()})

    def unit_part(self):
        """(c, m) with scalar parts summing to c*z^m, or raise if not a monomial."""
        scal = {k: v.constant_term() for k, v in self.coeffs.items()
                if v.constant_term()}
        if len(scal) != 1:
            raise SingularElementError(
                "unit part is not a single z-monomial: %r" % (scal,)
            )
        (m, c), = scal.items()
        return c, m

    def inverse(self):
        """Exact inverse of c*z^m*(1 + nilpotent); see nilpotent_inverse."""
        return nilpotent_inverse(self)

    def substitute_ring(self, target_ring, mapping):
        """Push coefficients through a ring map given on ambient generators."""
        out = {}
        for k, v in self.coeffs.items():
            img = target_ring.reduce(v.poly.substitute(mapping))
            if not img.is_zero():
                out[k] = img
        return ZLaurent(target_ring, out)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            zp = "" if k == 0 else (f"*z^{k}" if k != 1 else "*z")
            bits.append(f"({c.poly!r}){zp}")
        return " + ".join(bits)


def nilpotent_inverse(x):
    """Invert x = c*z^m + (terms with nilpotent ring coefficients).

    The scalar parts of x must form a single monomial c*z^m (the unit part);
    the remainder N/(c z^m) must be nilpotent.  The result satisfies
    result * x == 1 exactly.
    """
    if isinstance(x, RingElement):
        x = ZLaurent.from_element(x)
    if x.is_zero():
        raise SingularElementError("inverse of zero")
    c, m = x.unit_part()
    ring = x.ring
    lead_inv = ZLaurent.scalar(ring, 1 / c, -m)
    n = x * lead_inv - 1  # nilpotent coefficients throughout
    for k, v in n.coeffs.items():
        if v.constant_term():
            raise SingularElementError("non-nilpotent remainder after unit part")
    result = ZLaurent.scalar(ring, 1)
    power = ZLaurent.scalar(ring, 1)
    limit = 4 * (ring.complex_dim if ring.complex_dim is not None else 16) + 4
    for _ in range(limit):
        power = power * n
        if power.is_zero():
            break
        result = result + (power if _ % 2 == 1 else -power)
    else:
        if not power.is_zero():
            raise SingularElementError("remainder is not nilpotent")
    return result * lead_inv


def exp_nilpotent(x):
    """exp of a nilpotent RingElement or nilpotent-coefficient ZLaurent."""
    if isinstance(x, RingElement):
        x = ZLaurent.from_element(x)
    for v in x.coeffs.values():
        if v.constant_term():
            raise ValueError("exp requires a nilpotent argument")
    result = ZLaurent.scalar(x.ring, 1)
    term = ZLaurent.scalar(x.ring, 1)
    k = 1
    limit = 4 * (x.ring.complex_dim if x.ring.complex_dim is not None else 16) + 4
    while k <= limit:
        term = term * x * Fraction(1, k)
        if term.is_zero():
            break
        result = result + term
        k += 1
    else:
        if not term.is_zero():
            raise ValueError("exp argument is not nilpotent")
    return result


def log_one_plus(x):
    """log(1 + x) for nilpotent x; inverse of exp_nilpotent on nilpotents."""
    if isinstance(x, RingElement):
        x = ZLaurent.from_element(x)
    for v in x.coeffs.values():
        if v.constant_term():
            raise ValueError("log(1+x) requires nilpotent x")
    result = ZLaurent(x.ring, {})
    power = ZLaurent.scalar(x.ring, 1)
    k = 1
    limit = 4 * (x.ring.complex_dim if x.ring.complex_dim is not None else 16) + 4
    while k <= limit:
        power = power * x
        if power.is_zero():
            break
        result = result + power * Fraction((-1) ** (k + 1), k)
        k += 1
    else:
        if not power.is_zero():
            raise ValueError("log argument is not nilpotent")
    return result
