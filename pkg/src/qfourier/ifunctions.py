"""Closed-form I- and J-functions as truncated Novikov series.

A NovikovSeries stores finitely many effective exponents d (integer or
1/r-refined), each with a z-Laurent coefficient valued in a quotient ring,
plus the divisor prefactor bookkeeping: the series stands for

    q^(P/z) * sum_d q^d coeff_d,      q^(P/z) = exp(sum_a P_a log q_a / z),

and z q_a d/dq_a acts on the term d as multiplication by z d_a + P_a.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import (
    LocalizedFunction,
    Poly,
    PolyRing,
    QuotientRing,
    ZLaurent,
    nilpotent_inverse,
)


class TruncationError(ArithmeticError):
    pass


class NovikovSeries:
    __slots__ = ("rank", "omega", "coeff_ring", "terms", "prefactor", "order")

    def __init__(self, rank, omega, coeff_ring, terms, prefactor=None, order=0):
        self.rank = rank
        self.omega = tuple(Fraction(o) for o in omega)
        self.coeff_ring = coeff_ring
        self.terms = {}
        for d, c in terms.items():
            key = tuple(Fraction(x) for x in d)
            if not c.is_zero():
                self.terms[key] = c
        self.prefactor = tuple(prefactor) if prefactor is not None else None
        self.order = Fraction(order)

    def pairing(self, d):
        return sum(o * Fraction(x) for o, x in zip(self.omega, d))

    def coefficient(self, d):
        key = tuple(Fraction(x) for x in d)
        return self.terms.get(key, ZLaurent(self.coeff_ring, {}))

    def leading_term(self):
        return self.coefficient((0,) * self.rank)

    def truncate(self, order):
        order = Fraction(order)
        return NovikovSeries(
            self.rank, self.omega, self.coeff_ring,
            {d: c for d, c in self.terms.items() if self.pairing(d) <= order},
            self.prefactor, min(self.order, order),
        )

    def is_zero(self):
        return all(c.is_zero() for d, c in self.terms.items()
                   if self.pairing(d) <= self.order)

    def __add__(self, other):
        self._check_compat(other)
        terms = dict(self.terms)
        for d, c in other.terms.items():
            terms[d] = terms[d] + c if d in terms else c
        return NovikovSeries(self.rank, self.omega, self.coeff_ring, terms,
                             self.prefactor, min(self.order, other.order))

    def __neg__(self):
        return NovikovSeries(self.rank, self.omega, self.coeff_ring,
                             {d: -c for d, c in self.terms.items()},
                             self.prefactor, self.order)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return NovikovSeries(self.rank, self.omega, self.coeff_ring,
                             {d: v * c for d, v in self.terms.items()},
                             self.prefactor, self.order)

    def shift_exponents(self, d0):
        return NovikovSeries(
            self.rank, self.omega, self.coeff_ring,
            {tuple(Fraction(a) + Fraction(b) for a, b in zip(d, d0)): c
             for d, c in self.terms.items()},
            self.prefactor, self.order + self.pairing(d0),
        )

    def _check_compat(self, other):
        if (self.rank, self.omega) != (other.rank, other.omega):
            raise ValueError("incompatible Novikov lattices")
        if self.coeff_ring != other.coeff_ring:
            raise ValueError("incompatible coefficient rings")
        if not _prefactors_equal(self.prefactor, other.prefactor):
            raise ValueError("incompatible divisor prefactors")

    def equal_up_to(self, other, order=None):
        if (self.rank != other.rank or self.coeff_ring != other.coeff_ring
                or not _prefactors_equal(self.prefactor, other.prefactor)):
            return False
        if order is None:
            order = min(self.order, other.order)
        keys = set(self.terms) | set(other.terms)
        for d in keys:
            if self.pairing(d) > order:
                continue
            if self.coefficient(d) != other.coefficient(d):
                return False
        return True

    def change_basis(self, matrix, new_omega=None):
        """Relabel exponents d -> M d (M rational, invertible).

        Writing the series as exp(sum_o P_o log q_o / z) sum_d q^d c_d, a
        relabeling of exponents is a monomial change of the q-variables;
        the prefactor classes transform exactly like the exponents
        (P' = M P) and the grading vector contragradiently, so pairings
        and the divisor-shift rule are both preserved.
        """
        m = [[Fraction(x) for x in row] for row in matrix]
        rank = self.rank
        minv = _invert_matrix(m)
        if new_omega is None:
            new_omega = tuple(
                sum(self.omega[i] * minv[i][j] for i in range(rank))
                for j in range(rank)
            )
        terms = {}
        for d, c in self.terms.items():
            nd = tuple(sum(m[i][j] * d[j] for j in range(rank))
                       for i in range(rank))
            terms[nd] = c
        pref = None
        if self.prefactor is not None:
            pref = tuple(
                sum((m[i][j] * self.prefactor[j] for j in range(rank)),
                    self.coeff_ring.zero())
                for i in range(rank)
            )
        return NovikovSeries(rank, new_omega, self.coeff_ring, terms, pref,
                             self.order)

    def map_coefficients(self, target_ring, mapping):
        """Push the series through a ring map given on ambient generators."""
        terms = {d: c.substitute_ring(target_ring, mapping)
                 for d, c in self.terms.items()}
        pref = None
        if self.prefactor is not None:
            pref = tuple(
                target_ring.reduce(p.poly.substitute(mapping))
                for p in self.prefactor
            )
        return NovikovSeries(self.rank, self.omega, target_ring, terms, pref,
                             self.order)

    def exponents(self):
        return sorted(self.terms, key=lambda d: (self.pairing(d), d))

    def to_records(self):
        """Canonical serialization: exponent / z-power / monomial / value."""
        ring = self.coeff_ring
        records = []
        for d in self.exponents():
            c = self.terms[d]
            for zp in sorted(c.coeffs):
                elt = c.coeffs[zp]
                for e in sorted(elt.poly.terms, key=lambda e: (sum(e), e)):
                    mono = "*".join(
                        f"{ring.ambient.names[i]}^{k}" if k > 1
                        else ring.ambient.names[i]
                        for i, k in enumerate(e) if k
                    ) or "1"
                    records.append({
                        "exponent": [str(x) for x in d],
                        "z_power": zp,
                        "monomial": mono,
                        "coefficient": str(elt.poly.terms[e]),
                    })
        return records

    def __repr__(self):
        n = len(self.terms)
        return (f"NovikovSeries(rank={self.rank}, order={self.order}, "
                f"{n} terms)")


def _prefactors_equal(a, b):
    if a is None and b is None:
        return True
    if a is None or b is None:
        return all(x.is_zero() for x in (b if a is None else a))
    return len(a) == len(b) and all(x == y for x, y in zip(a, b))


def _invert_matrix(m):
    n = len(m)
    aug = [[Fraction(m[r][c]) for c in range(n)]
           + [Fraction(1) if c == r else Fraction(0) for c in range(n)]
           for r in range(n)]
    for c in range(n):
        piv = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


# -----------------------------------------------------------ivy builders --

def projective_ring(n, gen="p"):
    return QuotientRing([gen], [PolyRing([gen]).gen(gen, n)], complex_dim=n - 1)


def j_projective(n, order):
    """Small J-function of P^(n-1) over C[p]/(p^n).

    J = sum_{d <= order} q^(d + p/z) / prod_{k=1}^d (p + k z)^n, with the
    denominators expanded through nilpotent inversion and the q^(p/z)
    prefactor kept as divisor bookkeeping.
    """
    if n < 1 or order < 0:
        raise ValueError("need n >= 1 and order >= 0")
    ring = projective_ring(n)
    p = ring.gen("p")
    one = ZLaurent.scalar(ring, 1)
    terms = {}
    coeff = one
    for d in range(order + 1):
        if d:
            factor = ZLaurent(ring, {0: p, 1: ring.reduce(d)})
            coeff = coeff * nilpotent_inverse(factor) ** n
        terms[(d,)] = coeff
    return NovikovSeries(1, (1,), ring, terms, prefactor=(p,), order=order)


def effective_box(qd, order, margin=2):
    """Exponent candidates: box around the dual cone with a vanishing shell.

    Enumerates beta in [-B, B]^l with -margin_pairing <= <omega, beta> <=
    order, where B is sized so that every dual-cone point of pairing <=
    order is included (desk scale: l <= 2 geometries shipped).  The strip
    of negative pairing is a shell on which vanishing is computed rather
    than assumed.
    """
    l = qd.glsm.l
    omega = qd.glsm.chamber
    pos = min(abs(o) for o in omega if o) if any(omega) else Fraction(1)
    B = int(Fraction(order) / pos) + margin + 1
    lo = -Fraction(margin) * max(abs(o) for o in omega)
    out = []
    for beta in product(range(-B, B + 1), repeat=l):
        pairing = sum(Fraction(o) * b for o, b in zip(omega, beta))
        if lo <= pairing <= order:
            out.append(beta)
    return out


def _hypergeometric_factor(ring, u, m):
    """prod_{c<=0}(u + cz) / prod_{c<=m}(u + cz) as a ZLaurent, u nilpotent.

    m >= 1: invert prod_{c=1..m}(u + cz); m <= -1: multiply by
    prod_{c=m+1..0}(u + cz) = u (u - z) ... ; m = 0: 1.
    """
    one = ZLaurent.scalar(ring, 1)
    if m == 0:
        return one
    if m > 0:
        acc = one
        for c in range(1, m + 1):
            acc = acc * ZLaurent(ring, {0: u, 1: ring.reduce(c)})
        return nilpotent_inverse(acc)
    acc = one
    for c in range(m + 1, 1):
        acc = acc * ZLaurent(ring, {0: u, 1: ring.reduce(c)})
    return acc


def toric_i(qd, order, margin=2):
    """Non-equivariant toric I-function of the quotient as a Novikov series.

    I = sum_beta q^beta prod_i [prod_{c<=0}(u_i + c z)/prod_{c<=D_i.beta}],
    with u_i the Kirwan images of the weights; exponents run over a box
    containing the dual-cone points of pairing <= order, so that vanishing
    outside the support is computed rather than assumed.
    """
    glsm = qd.glsm
    us = [qd.divisor_class(i) for i in range(glsm.n)]
    ring = qd.ring
    terms = {}
    for beta in effective_box(qd, order, margin):
        coeff = ZLaurent.scalar(ring, 1)
        for i in range(glsm.n):
            m = sum(glsm.weights[i][j] * beta[j] for j in range(glsm.l))
            coeff = coeff * _hypergeometric_factor(ring, us[i], m)
            if coeff.is_zero():
                break
        if not coeff.is_zero():
            terms[beta] = coeff
    pref = tuple(qd.kirwan_gen(j) for j in range(glsm.l))
    return NovikovSeries(glsm.l, glsm.chamber, ring, terms, pref, order)


class EquivariantToricI:
    """Fixed-point restrictions of the equivariant toric I-function.

    terms[beta][f] is the restriction to fixed point f of the coefficient,
    as an exact rational function in the auxiliary equivariant parameters
    e1..en and z (spec: equivariant restriction data per fixed point).
    """

    def __init__(self, qd, order, terms, ring):
        self.qd = qd
        self.order = order
        self.terms = terms
        self.ring = ring  # PolyRing (e1..en, z)


def equivariant_toric_i(qd, order, margin=2):
    glsm = qd.glsm
    n, l = glsm.shape
    ring = PolyRing(tuple(f"e{i+1}" for i in range(n)) + ("z",))
    terms = {}
    for beta in effective_box(qd, order, margin):
        row = []
        for fp in qd.fixed_points:
            val = LocalizedFunction(ring.one())
            for a in range(n):
                m = sum(glsm.weights[a][j] * beta[j] for j in range(l))
                if m == 0:
                    continue
                u_form = ring.linear(
                    [Fraction(c) for c in fp.restrictions[a]] + [Fraction(0)]
                )
                z = ring.gen("z")
                if m > 0:
                    den = ring.one()
                    for c in range(1, m + 1):
                        den = den * (u_form + c * z)
                    val = val / LocalizedFunction(den)
                else:
                    num = ring.one()
                    for c in range(m + 1, 1):
                        num = num * (u_form + c * z)
                    val = val * num
            row.append(val)
        terms[beta] = tuple(row)
    return EquivariantToricI(qd, order, terms, ring)


def toric_i_series(qd, order, equivariant=False, margin=2):
    if equivariant:
        return equivariant_toric_i(qd, order, margin)
    return toric_i(qd, order, margin)


# ----------------------------------------------- split bundles and Brown --

def split_bundle_ring(base_dim, lam="lam"):
    """C[h]/(h^(m+1)) with a free equivariant symbol lam adjoined."""
    amb = PolyRing(["h", lam])
    return QuotientRing(["h", lam], [amb.gen("h", base_dim + 1)])


def split_bundle_j(base_dim, twists, order):
    """S^1-equivariant J-function of V = O(m_1) + .. + O(m_r) over P^base_dim.

    J_V = sum_d q^d prod_{k=1}^d (h+kz)^-(base_dim+1)
                  * prod_i prod_{c=m_i d + 1}^{0} (lam + m_i h + c z),
    valid for twists m_i <= 0 (the dual bundle is globally generated).
    A base of dimension 0 is a point: J = 1.
    """
    if any(m > 0 for m in twists):
        raise ValueError("positive twists unsupported")
    if base_dim == 0:
        ring = split_bundle_ring(0)
        one = ZLaurent.scalar(ring, 1)
        return NovikovSeries(1, (1,), ring, {(0,): one},
                             prefactor=(ring.gen("h"),), order=order)
    ring = split_bundle_ring(base_dim)
    h = ring.gen("h")
    lam = ring.gen("lam")
    one = ZLaurent.scalar(ring, 1)
    terms = {}
    base_factor = one
    for d in range(order + 1):
        if d:
            base_factor = base_factor * nilpotent_inverse(
                ZLaurent(ring, {0: h, 1: ring.reduce(d)})
            ) ** (base_dim + 1)
        coeff = base_factor
        for m in twists:
            for c in range(m * d + 1, 1):
                coeff = coeff * ZLaurent(
                    ring, {0: lam + m * h, 1: ring.reduce(c)}
                )
        terms[(d,)] = coeff
    return NovikovSeries(1, (1,), ring, terms, prefactor=(h,), order=order)


def projective_bundle_ring(base_dim, twists):
    """H*(P(V)) by Leray-Hirsch for split V over P^base_dim.

    Generators (b, p) with b^(base_dim+1) = 0 and prod_i (p + m_i b) = 0
    (the relation p^r + c_1(V) p^(r-1) + ... with V-root conventions of the
    displayed Brown formula, i.e. roots m_i b).
    """
    amb = PolyRing(["b", "p"])
    b, p = amb.gen("b"), amb.gen("p")
    rel = amb.one()
    for m in twists:
        rel = rel * (p + m * b)
    r = len(twists)
    return QuotientRing(["b", "p"], [amb.gen("b", base_dim + 1), rel],
                        complex_dim=base_dim + r - 1)


def brown_i(base_dim, twists, order):
    """Brown's projective-bundle I-function for P(V) -> P^base_dim.

    I = sum_k q^k [prod_{c=1}^k prod_i (m_i b + p + c z)]^{-1} J_V^{p + k z},
    with the substitution lam -> p + k z performed in the nilpotent ring of
    P(V).  Exponents are (d, k) = (base degree, fiber degree); prefactor
    classes are (b, p).  For base = point this reduces to j_projective(r).
    """
    r = len(twists)
    if base_dim == 0:
        series = j_projective(r, order)
        return series
    jv = split_bundle_j(base_dim, twists, order)
    ring = projective_bundle_ring(base_dim, twists)
    b, p = ring.gen("b"), ring.gen("p")
    one = ZLaurent.scalar(ring, 1)
    terms = {}
    fiber_factor = one
    for k in range(order + 1):
        if k:
            block = one
            for m in twists:
                block = block * ZLaurent(
                    ring, {0: p + m * b, 1: ring.reduce(k)}
                )
            fiber_factor = fiber_factor * nilpotent_inverse(block)
        for d in range(order + 1 - k):
            jcoeff = jv.coefficient((d,))
            if jcoeff.is_zero():
                continue
            # lam -> p + k z, h -> b inside the P(V) ring
            mapped = ZLaurent(ring, {})
            for zp, elt in jcoeff.coeffs.items():
                poly = elt.poly  # in (h, lam)
                for (eh, el), c in poly.terms.items():
                    img = ring.reduce(c) * (b ** eh)
                    shift = ZLaurent(ring, {0: p, 1: ring.reduce(k)}) ** el \
                        if el else one
                    contrib = (shift * img).shift_z(zp)
                    mapped = mapped + contrib
            coeff = fiber_factor * mapped
            if not coeff.is_zero():
                terms[(d, k)] = coeff
    return NovikovSeries(2, (1, 1), ring, terms, prefactor=(b, p),
                         order=order)
