"""Discrete Fourier transforms of equivariant series.

For X = C^n the transform of a rational function J(lambda, z) is

    I_Y = sum_beta kappa(S^(-beta) J) S^beta,

where kappa clears the canceled hypergeometric factors and substitutes the
nilpotent Kirwan images for the equivariant parameters.  Terms whose image
vanishes drop out; a pole that survives the substitution is a hard error.
Two-step reductions (vector space -> projective space -> point) run
through the fixed-point shift operators, which also drive the tautological
Landau-Ginzburg mirror and the chain-rule verification.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .algebra import (
    LocalizedFunction,
    PoleError,
    Poly,
    PolyRing,
    QuotientRing,
    SingularElementError,
    ZLaurent,
    nilpotent_inverse,
)
from .glsm import GlsmData, quotient_presentation
from .ifunctions import NovikovSeries, effective_box
from .shiftops import apply_shift, shift_ring


class IllDefinedTransformError(ArithmeticError):
    """A Kirwan image kept a genuine pole; reports the offending exponent."""

    def __init__(self, beta, message=""):
        self.beta = tuple(beta)
        super().__init__(
            f"transform ill-defined at beta={self.beta}"
            + (f": {message}" if message else "")
        )


def _kirwan_laurent(qd, f, beta=None):
    """kappa of a rational function: nilpotent substitution into the ring.

    The equivariant parameters map to their nilpotent Kirwan images; the
    denominator must keep an invertible z-part after substitution, which
    is exactly the Laurent-expansion-at-z-infinity mechanism.
    """
    ring = qd.ring
    names = qd.glsm.parameter_names
    images = {name: ring.ambient.gen(name) for name in names}

    def push(poly):
        out = ZLaurent(ring, {})
        zidx = poly.ring.index("z")
        for e, c in poly.terms.items():
            rest = list(e)
            zp = rest[zidx]
            rest[zidx] = 0
            mono = Poly(poly.ring, {tuple(rest): c})
            elt = ring.reduce(mono.substitute(images))
            if not elt.is_zero():
                out = out + ZLaurent(ring, {zp: elt})
        return out

    num = push(f.num)
    den = push(f.den)
    if den.is_zero():
        raise IllDefinedTransformError(beta or (), "denominator image vanishes")
    try:
        inv = nilpotent_inverse(den)
    except SingularElementError as exc:
        raise IllDefinedTransformError(beta or (), str(exc)) from None
    return num * inv


def discrete_ft(J, qd, order, margin=2):
    """I_Y = sum_beta kappa(S^(-beta) J) S^beta for the C^n model.

    ``J`` is a LocalizedFunction in (lambda_1..lambda_l, z); the exponents
    run over a box around the dual cone so that vanishing outside the
    support is computed, not assumed.  The output carries the Kirwan
    images of the parameters as its divisor prefactor.
    """
    glsm = qd.glsm
    D = [list(row) for row in glsm.weights]
    terms = {}
    for beta in effective_box(qd, order, margin):
        shifted = apply_shift(D, [-b for b in beta], J)
        coeff = _kirwan_laurent(qd, shifted, beta)
        if not coeff.is_zero():
            terms[beta] = coeff
    pref = tuple(qd.kirwan_gen(j) for j in range(glsm.l))
    return NovikovSeries(glsm.l, glsm.chamber, qd.ring, terms, pref, order)


def support_check(series, qd):
    """True iff every nonzero exponent lies in the chamber's dual cone.

    Returns (ok, violations).  The dual cone is cut out by the pairings
    with the chamber cone; for the GIT chamber of omega these are the
    pairings with omega itself and with the bounding data of its chamber,
    computed here from the fixed-point subsets: beta is dual-effective iff
    <omega', beta> >= 0 for all omega' in the (closed) chamber, which for
    a simplicial chamber reduces to the bounding rays.
    """
    rays = _chamber_rays(qd)
    violations = []
    for d, c in series.terms.items():
        if c.is_zero():
            continue
        if any(sum(Fraction(r) * x for r, x in zip(ray, d)) < 0 for ray in rays):
            violations.append(tuple(d))
    return (not violations, sorted(violations))


def _chamber_rays(qd):
    """Bounding rays of the GIT chamber containing omega (l <= 2)."""
    glsm = qd.glsm
    l = glsm.l
    omega = glsm.chamber
    if l == 1:
        return [(1 if omega[0] > 0 else -1,)]
    if l != 2:
        raise ValueError("support check implemented for l <= 2")
    from .glsm import chambers as chamber_enum, _cross

    for ch in chamber_enum(list(glsm.weights)):
        r1, r2 = ch.bounding_rays
        if _cross(r1, omega) >= 0 and _cross(omega, r2) >= 0:
            gap_ok = _cross(r1, omega) > 0 or _cross(omega, r2) > 0
            if gap_ok:
                return [r1, r2]
    raise ValueError("omega not located in any chamber")


# ------------------------------------------------------- factored algebra --

class FactoredValue:
    """scalar * prod (linear forms)^multiplicity, forms in (eps_1..eps_n, z).

    The fixed-point transforms only ever multiply, shift and evaluate such
    products, so cancellation is factor-by-factor and evaluation at eps=0
    is a z-Laurent monomial; no polynomial gcd is ever needed.
    """

    __slots__ = ("n", "scalar", "factors")

    def __init__(self, n, scalar=Fraction(1), factors=None):
        self.n = n
        self.scalar = Fraction(scalar)
        self.factors = dict(factors or {})  # form tuple (c_1..c_n, c_z) -> mult

    @staticmethod
    def _normalize(form):
        """Scale so the first nonzero coefficient is positive-primitive."""
        from math import gcd

        num = 0
        den = 1
        for c in form:
            c = Fraction(c)
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        if num == 0:
            raise ZeroDivisionError("zero linear form in a factored value")
        scale = Fraction(num, den)
        lead = next(Fraction(c) for c in form if c)
        if lead < 0:
            scale = -scale
        return tuple(Fraction(c) / scale for c in form), scale

    def times_form(self, form, mult=1):
        out = FactoredValue(self.n, self.scalar, self.factors)
        norm, scale = self._normalize(form)
        out.scalar *= scale ** mult
        m = out.factors.get(norm, 0) + mult
        if m:
            out.factors[norm] = m
        else:
            out.factors.pop(norm, None)
        return out

    def __mul__(self, other):
        if isinstance(other, FactoredValue):
            out = FactoredValue(self.n, self.scalar * other.scalar, self.factors)
            for form, m in other.factors.items():
                mm = out.factors.get(form, 0) + m
                if mm:
                    out.factors[form] = mm
                else:
                    out.factors.pop(form, None)
            return out
        return FactoredValue(self.n, self.scalar * Fraction(other), self.factors)

    __rmul__ = __mul__

    def shift_eps(self, k):
        """eps -> eps + k z: forms (c, cz) -> (c, cz + c . k)."""
        out = FactoredValue(self.n, self.scalar)
        for form, m in self.factors.items():
            shifted = form[:-1] + (
                form[-1] + sum(Fraction(c) * Fraction(kk)
                               for c, kk in zip(form[:-1], k)),
            )
            out = out.times_form(shifted, m)
        return out

    def eval_at_zero(self):
        """Value at eps = 0 as (scalar, z_power); None when a zero factor
        survives upstairs, PoleError when one survives downstairs."""
        scalar = self.scalar
        zpow = 0
        for form, m in self.factors.items():
            cz = form[-1]
            if cz == 0:
                if m > 0:
                    return None  # numerator zero: the term dies
                raise PoleError("pole at eps = 0 survived cancellation")
            scalar *= cz ** m
            zpow += m
        return scalar, zpow

    def __repr__(self):
        return f"FactoredValue({self.scalar}, {self.factors})"


def _u_restriction_form(fp, a, n):
    """u_a|_F as a factored-value form tuple (coeffs of eps, z-coeff 0)."""
    return tuple(Fraction(c) for c in fp.restrictions[a]) + (Fraction(0),)


def fixed_point_j_coefficient(qd, fp, d):
    """Degree-d coefficient of the equivariant J at a fixed point, factored.

    J|_F = sum_d Q^d / prod_a prod_{c=1}^{pairing_a(d)} (u_a|_F + c z);
    implemented for quotients whose Novikov rank is 1 (projective spaces
    and the other single-chamber reductions the chain rule needs).
    """
    glsm = qd.glsm
    n = glsm.n
    val = FactoredValue(n)
    for a in range(n):
        m = sum(glsm.weights[a][j] * d[j] for j in range(glsm.l))
        if m > 0:
            base = _u_restriction_form(fp, a, n)
            for c in range(1, m + 1):
                val = val.times_form(base[:-1] + (base[-1] + c,), -1)
        elif m < 0:
            base = _u_restriction_form(fp, a, n)
            for c in range(m + 1, 1):
                val = val.times_form(base[:-1] + (base[-1] + c,), +1)
    return val


def sigma_shift(qd, fp, k, value):
    """Localized shift operator sigma^k at a fixed point, on factored values.

    Returns (q_exponent_vector, new_value): the prefactor multiplies by the
    hypergeometric factors of the restriction weights with depths
    <u_a|_F-weight, k> and the argument shifts eps -> eps - k z; the
    Novikov bookkeeping exponent is the solution of D_S lq = k_S.
    """
    glsm = qd.glsm
    n, l = glsm.shape
    out = value.shift_eps([-Fraction(kk) for kk in k])
    for a in range(n):
        form = _u_restriction_form(fp, a, n)
        depth = sum(Fraction(form[i]) * Fraction(k[i]) for i in range(n))
        if depth.denominator != 1:
            raise ValueError("non-integral shift depth")
        depth = int(depth)
        if depth > 0:
            for c in range(depth):
                out = out.times_form(form[:-1] + (form[-1] - c,), +1)
        elif depth < 0:
            for c in range(1, -depth + 1):
                out = out.times_form(form[:-1] + (form[-1] + c,), -1)
    # Novikov exponent: lq with sum_j D_{S_j} lq_j = k restricted to S
    from .glsm import _solve_square

    S = fp.subset
    mat = [[Fraction(glsm.weights[i][j]) for j in range(l)] for i in S]
    # lq in the quotient's Novikov lattice Z^l solves (D_S)^T? see below
    rhs = [Fraction(k[i]) for i in S]
    lq = _solve_square(mat, rhs)
    return lq, out


def _point_quotient_kappa(values):
    """kappa for a point quotient: common value of the restrictions at 0.

    values: list of (scalar, zpow) or None per fixed point; the nonzero
    entries must agree, which is the regularity check of the transform.
    """
    seen = None
    for v in values:
        if v is None:
            continue
        if seen is None:
            seen = v
        elif seen != v:
            raise IllDefinedTransformError(
                (), f"fixed-point values disagree: {seen} vs {v}"
            )
    return seen


def fixed_point_ft(qd, order, j_coefficient=None, margin=1):
    """Fourier transform to the point through the residual torus.

    Works for quotients C^n //_omega K with rank-one K (projective-space
    style), using the paper's sigma-operators on fixed-point restrictions:

        F(g) = sum_K kappa(sigma^(-K) g) S^K,

    where the coefficient at S^K takes the Q^0-part of sigma^(-K) g and
    evaluates at eps = 0 (the Kirwan map for the point quotient).  Returns
    a NovikovSeries over Z^n with scalar (point-ring) coefficients.
    """
    glsm = qd.glsm
    n, l = glsm.shape
    if j_coefficient is None:
        j_coefficient = lambda fp, d: fixed_point_j_coefficient(qd, fp, d)
    point_ring = QuotientRing(["o"], [PolyRing(["o"]).gen("o", 1)],
                              complex_dim=0)
    omega_pt = tuple(Fraction(1) for _ in range(n))
    terms = {}
    for K in _nonneg_box(n, order, margin):
        vals = []
        for fp in qd.fixed_points:
            lq, pref = sigma_shift(qd, fp, [-kk for kk in K], FactoredValue(n))
            # need the Q^0 part: J-degree d with d + lq = 0
            d = tuple(-x for x in lq)
            if any(x.denominator != 1 for x in d):
                vals.append(None)
                continue
            d = tuple(int(x) for x in d)
            if any(x < 0 for x in d):
                vals.append(None)
                continue
            coeff = j_coefficient(fp, d)
            if coeff is None:
                vals.append(None)
                continue
            total = pref * coeff.shift_eps([Fraction(kk) for kk in K])
            vals.append(total.eval_at_zero())
        v = _point_quotient_kappa(vals)
        if v is not None and v[0]:
            scalar, zpow = v
            terms[K] = ZLaurent.scalar(point_ring, scalar, zpow)
    return NovikovSeries(n, omega_pt, point_ring, terms, None, order)


def _nonneg_box(n, order, margin):
    rng = range(-margin, order + 1)
    return [K for K in product(rng, repeat=n) if sum(K) <= order]


# ------------------------------------------------------------ tautological --

def full_torus_point_quotient(n):
    """C^n with the full torus (identity weights), quotient a point."""
    weights = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    return quotient_presentation(GlsmData.make(weights, [1] * n))


def tautological_mirror(qd, J=None, order=4):
    """Tautological Landau-Ginzburg mirror from the point-quotient transform.

    Returns (F, W) with F the transformed series and W = z log F truncated;
    the normalization F(0) = 1 is required.  For X = C^n with the full
    torus and J = 1 this gives F = exp((S_1+..+S_n)/z), W = S_1+..+S_n.
    """
    glsm = qd.glsm
    n, l = glsm.shape
    if qd.ring.dimension() != 1:
        raise ValueError("tautological mirror needs a point quotient")
    if n == l:
        ring = shift_ring(glsm.parameter_names)
        if J is None:
            J = LocalizedFunction(ring.one())
        F = discrete_ft(J, qd, order)
        # relabel into the Z^n lattice of the full torus (identity here)
        F = NovikovSeries(n, tuple(Fraction(1) for _ in range(n)),
                          _point_ring(),
                          {d: _rescalar(c) for d, c in F.terms.items()},
                          None, order)
    else:
        F = fixed_point_ft(qd, order)
    const = F.coefficient((0,) * n)
    if not const == ZLaurent.scalar(F.coeff_ring, 1):
        raise ValueError("transform is not normalized: F(0) != 1")
    W = _z_log(F)
    return F, W


def _point_ring():
    return QuotientRing(["o"], [PolyRing(["o"]).gen("o", 1)], complex_dim=0)


def _rescalar(zl):
    ring = _point_ring()
    return ZLaurent(ring, {k: ring.reduce(v.constant_term())
                           for k, v in zl.coeffs.items()})


def _z_log(series):
    """z * log(series) for a series with leading coefficient 1."""
    ring = series.coeff_ring
    one = ZLaurent.scalar(ring, 1)
    x = NovikovSeries(series.rank, series.omega, ring,
                      {d: c for d, c in series.terms.items()
                       if any(Fraction(v) for v in d)},
                      None, series.order)
    acc = NovikovSeries(series.rank, series.omega, ring, {}, None, series.order)
    power = None
    # log(1+x) = sum (-1)^(k+1) x^k / k, truncated by the grading
    max_k = int(series.order / min(
        (series.pairing(d) for d in x.terms if series.pairing(d) > 0),
        default=Fraction(1),
    )) + 1 if x.terms else 1
    power = _series_one(series)
    for k in range(1, max_k + 1):
        power = _series_mul(power, x)
        acc = acc + power.scale(ZLaurent.scalar(ring, Fraction((-1) ** (k + 1), k)))
        if all(c.is_zero() for c in power.terms.values()):
            break
    return NovikovSeries(series.rank, series.omega, ring,
                         {d: c.shift_z(1) for d, c in acc.terms.items()},
                         None, series.order)


def _series_one(model):
    ring = model.coeff_ring
    return NovikovSeries(model.rank, model.omega, ring,
                         {(0,) * model.rank: ZLaurent.scalar(ring, 1)},
                         None, model.order)


def _series_mul(a, b):
    terms = {}
    for d1, c1 in a.terms.items():
        if a.pairing(d1) > a.order:
            continue
        for d2, c2 in b.terms.items():
            d = tuple(x + y for x, y in zip(d1, d2))
            if a.pairing(d) > a.order:
                continue
            c = c1 * c2
            terms[d] = terms[d] + c if d in terms else c
    return NovikovSeries(a.rank, a.omega, a.coeff_ring, terms, None, a.order)


# --------------------------------------------------------------- chain rule --

def f3_transform(n, order):
    """F_3(1) = sum_K S^K / (K! z^|K|): direct transform of 1 for C^n."""
    qd = full_torus_point_quotient(n)
    ring = shift_ring(qd.glsm.parameter_names)
    F = discrete_ft(LocalizedFunction(ring.one()), qd, order)
    return NovikovSeries(n, tuple(Fraction(1) for _ in range(n)),
                         _point_ring(),
                         {d: _rescalar(c) for d, c in F.terms.items()},
                         None, order)


def f2_transform(n, order):
    """F_2(J_{P^(n-1)}): fixed-point transform of the equivariant J-function."""
    qd = quotient_presentation(GlsmData.make([[1]] * n, [1]))
    return fixed_point_ft(qd, order)


def chain_rule_check(n, order):
    """F_2(F_1(1)) == F_3(1) exactly up to the given order."""
    lhs = f2_transform(n, order)
    rhs = f3_transform(n, order)
    return lhs.equal_up_to(rhs, order)
