"""Graded quotient rings with a computable normal form.

A :class:`QuotientRing` presents C[x_1..x_k]/I for a homogeneous ideal I
(monomial Stanley-Reisner generators, linear relations, or single
polynomial relations like the projective-bundle relation).  Normal forms
are computed degree by degree through exact row reduction, so no Groebner
machinery is needed; the reduction is idempotent and a ring homomorphism
by construction.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly, PolyRing


class QuotientRing:
    def __init__(self, names, relations, complex_dim=None, degrees=None,
                 integral_table=None):
        """
        names: generator names (all of even cohomological degree, default 2)
        relations: iterable of homogeneous Poly over the ambient ring
        complex_dim: n such that the top nonzero degree is 2n (None: graded
            pieces are reduced on demand without a global bound, e.g. rings
            with free equivariant symbols adjoined)
        integral_table: map top-degree basis exponent tuple -> Fraction
        """
        self.ambient = PolyRing(names, degrees)
        self.relations = []
        for r in relations:
            if isinstance(r, Poly):
                if r.ring != self.ambient:
                    r = r.substitute({n: self.ambient.gen(n) for n in r.ring.names})
            self.relations.append(r)
        for r in self.relations:
            if not r.is_homogeneous():
                raise ValueError("quotient relations must be homogeneous")
        self.complex_dim = complex_dim
        self.integral_table = dict(integral_table) if integral_table else None
        self._rref_cache = {}
        self._weights = [d // 2 for d in self.ambient.degrees]

    # -- normal form -----------------------------------------------------

    def _rewrite_rules(self, weight):
        """RREF rewrite rules in the given half-degree: pivot exp -> tail Poly."""
        if weight in self._rref_cache:
            return self._rref_cache[weight]
        monos = self.ambient.monomials_of_weight(weight, self._weights)
        monos.sort(key=lambda e: (sum(e), e), reverse=True)
        col = {e: i for i, e in enumerate(monos)}
        rows = []
        for rel in self.relations:
            if rel.is_zero():
                continue
            rw = rel.coh_degree() // 2
            if rw > weight:
                continue
            for mult in self.ambient.monomials_of_weight(weight - rw, self._weights):
                prod = rel * Poly(self.ambient, {tuple(mult): Fraction(1)})
                vec = [Fraction(0)] * len(monos)
                for e, c in prod.terms.items():
                    vec[col[e]] = c
                rows.append(vec)
        # exact Gauss-Jordan
        pivots = {}
        r = 0
        for c in range(len(monos)):
            pr = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            pv = rows[r][c]
            rows[r] = [x / pv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
            pivots[c] = r
            r += 1
        rules = {}
        for c, ri in pivots.items():
            tail = {}
            for c2 in range(c + 1, len(monos)):
                v = rows[ri][c2]
                if v:
                    tail[monos[c2]] = -v
            rules[monos[c]] = Poly(self.ambient, tail)
        basis = [monos[c] for c in range(len(monos)) if c not in pivots]
        self._rref_cache[weight] = (rules, basis)
        return self._rref_cache[weight]

    def reduce(self, x):
        """Normal form of a polynomial (or scalar) as a RingElement."""
        if not isinstance(x, Poly):
            x = self.ambient.const(Fraction(x) if isinstance(x, int) else x)
        elif x.ring != self.ambient:
            for i, name in enumerate(x.ring.names):
                if name not in self.ambient._index and x.degree_in(i) > 0:
                    raise KeyError(f"unknown generator {name!r}")
            x = x.substitute({n: self.ambient.gen(n) for n in x.ring.names
                              if n in self.ambient._index})
        out = self.ambient.zero()
        for deg, part in x.homogeneous_parts().items():
            if deg % 2:
                raise ValueError("odd-degree input")
            w = deg // 2
            if self.complex_dim is not None and w > self.complex_dim:
                continue
            rules, _ = self._rewrite_rules(w)
            terms = {}
            for e, c in part.terms.items():
                if e in rules:
                    for e2, c2 in rules[e].terms.items():
                        s = terms.get(e2, 0) + c * c2
                        if s:
                            terms[e2] = s
                        else:
                            terms.pop(e2, None)
                else:
                    s = terms.get(e, 0) + c
                    if s:
                        terms[e] = s
                    else:
                        terms.pop(e, None)
            out = out + Poly(self.ambient, terms)
        return RingElement(self, out)

    def zero(self):
        return self.reduce(0)

    def one(self):
        return self.reduce(1)

    def gen(self, name, power=1):
        return self.reduce(self.ambient.gen(name, power))

    def element(self, poly):
        return self.reduce(poly)

    # -- basis and integration --------------------------------------------

    def basis(self):
        """Monomial basis exponents, all degrees, requires complex_dim."""
        if self.complex_dim is None:
            raise ValueError("ring has no finite degree bound")
        out = []
        for w in range(self.complex_dim + 1):
            _, b = self._rewrite_rules(w)
            out.extend(b)
        return out

    def dimension(self):
        return len(self.basis())

    def basis_of_weight(self, w):
        return self._rewrite_rules(w)[1]

    def integral(self, x):
        """Integration functional; vanishes below the top degree."""
        if self.integral_table is None:
            raise ValueError("ring carries no integral table")
        if isinstance(x, RingElement):
            poly = x.poly
        else:
            poly = self.reduce(x).poly
        total = Fraction(0)
        for e, c in poly.terms.items():
            v = self.integral_table.get(e)
            if v is not None:
                total += c * v
        return total

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and self.ambient == other.ambient
            and {frozenset(r.terms.items()) for r in self.relations}
            == {frozenset(r.terms.items()) for r in other.relations}
        )

    def __hash__(self):
        return hash(self.ambient)

    def __repr__(self):
        return f"QuotientRing({', '.join(self.ambient.names)}; {len(self.relations)} relations)"


class RingElement:
    """Element of a QuotientRing kept in normal form."""

    __slots__ = ("ring", "poly")

    def __init__(self, ring, poly):
        self.ring = ring
        self.poly = poly

    @staticmethod
    def _handles(other):
        return isinstance(other, (RingElement, Poly)) or Poly._is_scalar(other)

    def _coerce(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("elements of different quotient rings")
            return other
        return self.ring.reduce(other)

    def __add__(self, other):
        if not self._handles(other):
            return NotImplemented
        other = self._coerce(other)
        return RingElement(self.ring, self.poly + other.poly)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.ring, -self.poly)

    def __sub__(self, other):
        if not self._handles(other):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        if not self._handles(other):
            return NotImplemented
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise ValueError("elements of different quotient rings")
            return self.ring.reduce(self.poly * other.poly)
        if isinstance(other, Poly):
            return self.ring.reduce(self.poly * other)
        if not Poly._is_scalar(other):
            return NotImplemented
        return RingElement(self.ring, self.poly * other)

    __rmul__ = __mul__

    def __pow__(self, n):
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
            return self.poly == self.ring.ambient.const(Fraction(other))
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.ring == other.ring and self.poly == other.poly

    def __hash__(self):
        return hash((self.ring, frozenset(self.poly.terms.items())))

    def __bool__(self):
        return bool(self.poly)

    def is_zero(self):
        return self.poly.is_zero()

    def constant_term(self):
        return self.poly.constant_term()

    def positive_part(self):
        """The component of positive cohomological degree (nilpotent part)."""
        z = (0,) * self.ring.ambient.nvars
        return RingElement(
            self.ring, Poly(self.ring.ambient,
                            {e: c for e, c in self.poly.terms.items() if e != z})
        )

    def is_nilpotent(self):
        """True when some power vanishes; constant term must be zero."""
        if self.constant_term():
            return False
        if self.ring.complex_dim is not None:
            return True
        p = self
        for _ in range(64):
            p = p * self
            if p.is_zero():
                return True
        return False

    def __repr__(self):
        return f"<{self.poly!r}>"
