"""Exact rational functions in the equivariant parameters and z.

LocalizedFunction is the carrier of shift-operator actions: a reduced
fraction of polynomials over the homogeneous localization of C[lambda, z].
FactoredLinear keeps products of linear forms factored, which is what the
fixed-point transforms consume (cancellation happens factor by factor,
never through expanded polynomial gcds).
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, PolyRing, poly_gcd


class PoleError(ArithmeticError):
    """A genuine pole survived where a regular value was required."""


class LocalizedFunction:
    """num/den with den != 0 in the homogeneous localization.

    Construction normalises cheaply (common monomial factors, scalar
    content, monic denominator); full polynomial gcd reduction is opt-in
    through :meth:`reduced` because primitive-PRS gcds are exponentially
    expensive in several variables.  Equality always cross-multiplies, so
    no contract depends on the normal form.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, reduce=True):
        if den is None:
            den = num.ring.one()
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.ring != den.ring:
            raise ValueError("numerator and denominator over different rings")
        if reduce and not num.is_zero():
            num, den = _cancel_monomial(num, den)
        if num.is_zero():
            den = den.ring.one()
        else:
            _, lc = den._lead()
            if lc != 1:
                inv = 1 / lc
                num = num * inv
                den = den * inv
        self.num = num
        self.den = den

    def reduced(self):
        """Fully gcd-reduced copy; intended for small inputs."""
        if self.num.is_zero() or self.den.is_constant():
            return self
        g = poly_gcd(self.num, self.den)
        if g.is_constant():
            return self
        return LocalizedFunction(self.num.try_divide(g),
                                 self.den.try_divide(g))

    @classmethod
    def from_const(cls, ring, c):
        return cls(ring.const(Fraction(c) if isinstance(c, int) else c),
                   ring.one(), reduce=False)

    @property
    def ring(self):
        return self.num.ring

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def _coerce(self, other):
        if isinstance(other, LocalizedFunction):
            if other.ring != self.ring:
                raise ValueError("rational functions over different rings")
            return other
        if isinstance(other, Poly):
            return LocalizedFunction(other, reduce=False)
        return LocalizedFunction.from_const(self.ring, other)

    def __add__(self, other):
        other = self._coerce(other)
        return LocalizedFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return LocalizedFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return LocalizedFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return LocalizedFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (LocalizedFunction.from_const(self.ring, 1) / self) ** (-n)
        r = LocalizedFunction.from_const(self.ring, 1)
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def __eq__(self, other):
        if not isinstance(other, (LocalizedFunction, Poly, int, Fraction)):
            return NotImplemented
        other = self._coerce(other)
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((frozenset(self.num.terms.items()),
                     frozenset(self.den.terms.items())))

    def substitute(self, mapping):
        return LocalizedFunction(self.num.substitute(mapping),
                                 self.den.substitute(mapping))

    def shift_vars(self, offsets):
        return LocalizedFunction(self.num.shift_vars(offsets),
                                 self.den.shift_vars(offsets))

    def eval_scalar(self, values):
        d = self.den.eval_scalar(values)
        if d == 0:
            raise PoleError("evaluation hit a pole")
        return self.num.eval_scalar(values) / d

    def __repr__(self):
        if self.is_polynomial():
            c = self.den.constant_term()
            return repr(self.num) if c == 1 else f"({self.num!r})/({c})"
        return f"({self.num!r})/({self.den!r})"


def _cancel_monomial(num, den):
    """Divide out the common monomial factor and the rational content."""
    def min_exp(p):
        it = iter(p.terms)
        first = next(it)
        lo = list(first)
        for e in it:
            for i, k in enumerate(e):
                if k < lo[i]:
                    lo[i] = k
        return lo

    lo = [min(a, b) for a, b in zip(min_exp(num), min_exp(den))]
    if any(lo):
        num = Poly(num.ring, {tuple(a - b for a, b in zip(e, lo)): c
                              for e, c in num.terms.items()})
        den = Poly(den.ring, {tuple(a - b for a, b in zip(e, lo)): c
                              for e, c in den.terms.items()})
    cn = num.content()
    cd = den.content()
    if cn and cd and (cn != 1 or cd != 1):
        from math import gcd as igcd

        g = Fraction(igcd(cn.numerator * cd.denominator,
                          cd.numerator * cn.denominator),
                     cn.denominator * cd.denominator)
        if g != 1:
            num = num * (1 / g)
            den = den * (1 / g)
    return num, den


def _univariate_series(poly, var, center, order):
    """Coefficients [c_0..c_order] of poly(center + u) in u, exact."""
    ring = poly.ring
    i = ring.index(var)
    shifted = poly.shift_vars({var: ring.const(center)})
    coeffs = [ring.zero() for _ in range(order + 1)]
    for e, c in shifted.terms.items():
        k = e[i]
        if k <= order:
            rest = list(e)
            rest[i] = 0
            coeffs[k] = coeffs[k] + Poly(ring, {tuple(rest): c})
    return coeffs


def exp_truncated(ring, var, rate, order):
    """Truncated series sum_{k<=order} (rate*var)^k / k! as a Poly.

    ``rate`` may be a scalar or a Poly in the other variables (e.g. a
    symbolic t), which is how integrands like exp(lambda*t) enter residues.
    """
    one = ring.one()
    acc = one
    term = one
    x = ring.gen(var) * rate
    for k in range(1, order + 1):
        term = term * x * Fraction(1, k)
        acc = acc + term
    return acc


def residue_at(f, var, center, max_order=64):
    """Residue of a LocalizedFunction at var = center.

    Computes the coefficient of (var - center)^{-1} in the exact Laurent
    expansion around the pole.  The remaining variables ride along in the
    coefficients.  The pole order must come from denominator factors whose
    lowest term at the center is scalar; anything else is rejected rather
    than guessed (essential or parameter-dependent pole structure).
    """
    ring = f.ring
    center = Fraction(center) if isinstance(center, int) else center
    den_series = _univariate_series(f.den, var, center, max_order)
    v = 0
    while v <= max_order and den_series[v].is_zero():
        v += 1
    if v > max_order:
        raise ZeroDivisionError("zero denominator")
    zero = LocalizedFunction(ring.zero(), ring.one(), reduce=False)
    if v == 0:
        return zero  # regular point
    lead = LocalizedFunction(den_series[v])
    num_series = _univariate_series(f.num, var, center, v)
    # invert the unit series den/u^v up to order v-1; coefficients are
    # rational functions of the remaining variables
    inv = [zero] * v
    inv[0] = LocalizedFunction(ring.one()) / lead
    for k in range(1, v):
        acc = zero
        for j in range(1, k + 1):
            dj = den_series[v + j] if v + j <= max_order else ring.zero()
            if not dj.is_zero():
                acc = acc + LocalizedFunction(dj) * inv[k - j]
        inv[k] = -(acc / lead)
    res = zero
    for a in range(v):
        na = num_series[a]
        if na.is_zero():
            continue
        res = res + LocalizedFunction(na) * inv[v - 1 - a]
    return res
