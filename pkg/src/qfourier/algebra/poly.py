"""Multivariate polynomials with exact coefficients.

Coefficients may be any field element supporting +, -, *, /, ==, bool
(``fractions.Fraction`` for exact work, ``CycloRational`` for root-of-unity
coefficients, ``complex`` for numeric series).  Exponents are stored sparsely
as tuples keyed against a shared :class:`PolyRing` context.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product


class PolyRing:
    """A named tuple of generators with (even) cohomological degrees.

    Two rings compare equal iff they have the same generators and degrees,
    so polynomials built independently over equal rings interoperate.
    """

    __slots__ = ("names", "degrees", "_index")

    def __init__(self, names, degrees=None):
        self.names = tuple(names)
        if degrees is None:
            degrees = (2,) * len(self.names)
        self.degrees = tuple(degrees)
        if len(self.degrees) != len(self.names):
            raise ValueError("one degree per generator required")
        self._index = {n: i for i, n in enumerate(self.names)}

    @property
    def nvars(self):
        return len(self.names)

    def index(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(Fraction(1))

    def const(self, c):
        if not c:
            return Poly(self, {})
        return Poly(self, {(0,) * self.nvars: c})

    def gen(self, name, power=1):
        e = [0] * self.nvars
        e[self.index(name)] = power
        return Poly(self, {tuple(e): Fraction(1)})

    def linear(self, coeffs, const=0):
        """Polynomial sum_i coeffs[i] * x_i + const."""
        terms = {}
        for i, c in enumerate(coeffs):
            c = Fraction(c) if isinstance(c, int) else c
            if c:
                e = [0] * self.nvars
                e[i] = 1
                terms[tuple(e)] = c
        p = Poly(self, terms)
        if const:
            p = p + self.const(Fraction(const) if isinstance(const, int) else const)
        return p

    def monomials_of_weight(self, weight, weights=None):
        """All exponent tuples e with sum e_i * w_i == weight (w_i >= 1)."""
        w = weights if weights is not None else [d // 2 for d in self.degrees]
        out = []

        def rec(i, rem, acc):
            if i == len(w):
                if rem == 0:
                    out.append(tuple(acc))
                return
            wi = w[i]
            for k in range(rem // wi + 1):
                rec(i + 1, rem - k * wi, acc + [k])

        rec(0, weight, [])
        return out

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.names == other.names
            and self.degrees == other.degrees
        )

    def __hash__(self):
        return hash((self.names, self.degrees))

    def __repr__(self):
        return f"PolyRing({', '.join(self.names)})"


class Poly:
    """Sparse multivariate polynomial; no zero coefficients stored."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}

    # -- basic queries --------------------------------------------------

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        z = (0,) * self.ring.nvars
        return all(e == z for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def coh_degree(self):
        """Max cohomological degree sum(e_i * deg_i) over terms."""
        if not self.terms:
            return 0
        degs = self.ring.degrees
        return max(sum(e[i] * degs[i] for i in range(len(e))) for e in self.terms)

    def is_homogeneous(self):
        if not self.terms:
            return True
        degs = self.ring.degrees
        seen = {sum(e[i] * degs[i] for i in range(len(e))) for e in self.terms}
        return len(seen) == 1

    def homogeneous_parts(self):
        """Dict cohomological degree -> homogeneous Poly."""
        degs = self.ring.degrees
        parts = {}
        for e, c in self.terms.items():
            d = sum(e[i] * degs[i] for i in range(len(e)))
            parts.setdefault(d, {})[e] = c
        return {d: Poly(self.ring, t) for d, t in parts.items()}

    def degree_in(self, var):
        i = self.ring.index(var) if isinstance(var, str) else var
        return max((e[i] for e in self.terms), default=-1)

    # -- arithmetic ------------------------------------------------------
    #
    # Operators defer (NotImplemented) on foreign algebra objects so that
    # LocalizedFunction / ZLaurent / RingElement reflected ops take over.

    _SCALARS = (int, float, complex, Fraction)

    @staticmethod
    def _is_scalar(other):
        return isinstance(other, Poly._SCALARS) or type(other).__name__ == "CycloRational"

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise ValueError("polynomials over different rings")
            return other
        if isinstance(other, int):
            other = Fraction(other)
        return self.ring.const(other)

    def __add__(self, other):
        if not isinstance(other, Poly) and not self._is_scalar(other):
            return NotImplemented
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Poly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Poly) and not self._is_scalar(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, Poly) and not self._is_scalar(other):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            if not self._is_scalar(other):
                return NotImplemented
            if isinstance(other, int):
                other = Fraction(other)
            if not other:
                return self.ring.zero()
            return Poly(self.ring, {e: c * other for e, c in self.terms.items()})
        if other.ring != self.ring:
            raise ValueError("polynomials over different rings")
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(Fraction(other))
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- substitution ----------------------------------------------------

    def substitute(self, mapping):
        """Replace generators by polynomials or scalars.

        ``mapping`` maps generator names to Poly (over any ring), int,
        Fraction or other scalars.  Generators absent from the mapping must
        not occur in the polynomial unless the target ring has them.
        """
        target = None
        for v in mapping.values():
            if isinstance(v, Poly):
                target = v.ring
                break
        if target is None:
            target = self.ring

        def as_poly(v):
            if isinstance(v, Poly):
                if v.ring != target:
                    raise ValueError("substitution images over different rings")
                return v
            if isinstance(v, int):
                v = Fraction(v)
            return target.const(v)

        images = {}
        for name in self.ring.names:
            if name in mapping:
                images[name] = as_poly(mapping[name])
            elif name in target._index:
                images[name] = target.gen(name)
            else:
                images[name] = None

        result = target.zero()
        for e, c in self.terms.items():
            term = target.const(c)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                img = images[self.ring.names[i]]
                if img is None:
                    raise KeyError(
                        f"no image for generator {self.ring.names[i]!r}"
                    )
                term = term * img ** k
            result = result + term
        return result

    def shift_vars(self, offsets):
        """Substitute x_i -> x_i + offsets[i] (offsets are Polys or scalars)."""
        mapping = {}
        for i, name in enumerate(self.ring.names):
            off = offsets.get(name) if isinstance(offsets, dict) else offsets[i]
            if off is None:
                continue
            mapping[name] = self.ring.gen(name) + (
                off if isinstance(off, Poly) else self.ring.const(Fraction(off))
            )
        return self.substitute(mapping)

    def eval_scalar(self, values):
        """Evaluate at a full point; values maps name -> scalar."""
        total = 0
        for e, c in self.terms.items():
            v = c
            for i, k in enumerate(e):
                if k:
                    v = v * values[self.ring.names[i]] ** k
            total = total + v
        return total

    # -- division and gcd (Fraction coefficients) ------------------------

    def _lead(self):
        """Leading (exponent, coeff) in graded-lex order."""
        e = max(self.terms, key=lambda e: (sum(e), e))
        return e, self.terms[e]

    def try_divide(self, divisor):
        """Exact division; returns quotient Poly or None if not divisible."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = self
        quot = self.ring.zero()
        de, dc = divisor._lead()
        while not rem.is_zero():
            re, rc = rem._lead()
            qe = tuple(a - b for a, b in zip(re, de))
            if any(k < 0 for k in qe):
                return None
            qterm = Poly(self.ring, {qe: rc / dc})
            quot = quot + qterm
            rem = rem - qterm * divisor
        return quot

    def content(self):
        """Positive rational content (Fraction coefficients only)."""
        from math import gcd

        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den) if num else Fraction(0)

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            c = self.terms[e]
            mono = "*".join(
                f"{self.ring.names[i]}^{k}" if k > 1 else self.ring.names[i]
                for i, k in enumerate(e)
                if k
            )
            if mono:
                bits.append(f"{c}*{mono}" if c != 1 else mono)
            else:
                bits.append(str(c))
        return " + ".join(bits)


# -- multivariate gcd -----------------------------------------------------
#
# Primitive PRS on a recursive dense view.  Only used for rational-function
# normalisation; inputs are small products of linear forms at desk scale.


def _to_univariate(p, var_idx):
    """View p as dict exponent -> Poly in the remaining variables."""
    coeffs = {}
    for e, c in p.terms.items():
        k = e[var_idx]
        rest = e[:var_idx] + (0,) + e[var_idx + 1:]
        coeffs.setdefault(k, {})[rest] = c
    return {k: Poly(p.ring, t) for k, t in coeffs.items()}


def _from_univariate(ring, coeffs, var_idx):
    terms = {}
    for k, poly in coeffs.items():
        for e, c in poly.terms.items():
            e2 = list(e)
            e2[var_idx] += k
            terms[tuple(e2)] = c
    return Poly(ring, terms)


def _poly_content_gcd(coeffs):
    g = None
    for p in coeffs.values():
        g = p if g is None else poly_gcd(g, p)
        if g.is_constant():
            break
    return g


def _pseudo_rem(a, b, var_idx):
    """Pseudo-remainder of a by b in the given variable."""
    da = max(a)
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        new = {}
        for k, c in r.items():
            new[k] = c * lb
        for k, c in b.items():
            kk = k + dr - db
            new[kk] = new.get(kk, c.ring.zero()) - c * lr
        r = {k: c for k, c in new.items() if not c.is_zero()}
    return r


def poly_gcd(a, b):
    """GCD of polynomials with Fraction coefficients, up to a rational unit.

    Result is normalised to content 1 with a positive leading coefficient.
    """
    if a.is_zero():
        return _normalize_gcd(b)
    if b.is_zero():
        return _normalize_gcd(a)
    if a.is_constant() or b.is_constant():
        return a.ring.one()
    # main variable: highest index occurring in either
    nv = a.ring.nvars
    var_idx = max(
        i for i in range(nv) if a.degree_in(i) > 0 or b.degree_in(i) > 0
    )
    if a.degree_in(var_idx) == 0 or b.degree_in(var_idx) == 0:
        ua = _to_univariate(a, var_idx)
        ub = _to_univariate(b, var_idx)
        return _normalize_gcd(poly_gcd(_poly_content_gcd(ua), _poly_content_gcd(ub)))
    ua = _to_univariate(a, var_idx)
    ub = _to_univariate(b, var_idx)
    ca = _poly_content_gcd(ua)
    cb = _poly_content_gcd(ub)
    cont = poly_gcd(ca, cb)
    pa = {k: v.try_divide(ca) for k, v in ua.items()}
    pb = {k: v.try_divide(cb) for k, v in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while True:
        r = _pseudo_rem(pa, pb, var_idx)
        if not r:
            break
        cr = _poly_content_gcd(r)
        r = {k: v.try_divide(cr) for k, v in r.items()}
        pa, pb = pb, r
        if max(pb) == 0:
            return _normalize_gcd(cont)
    g = _from_univariate(a.ring, pb, var_idx) * cont
    return _normalize_gcd(g)


def _normalize_gcd(p):
    if p.is_zero():
        return p
    c = p.content()
    p = Poly(p.ring, {e: v / c for e, v in p.terms.items()})
    _, lc = p._lead()
    if lc < 0:
        p = -p
    return p
