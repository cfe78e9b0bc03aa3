"""Shift operators on the localized equivariant model of a vector space.

For T = (S^1)^l acting on C^n with weights D_1..D_n, the shift operator of
a cocharacter k acts on rational functions f(lambda, z) by

    S^k f = prod_j [prod_{c<=0}(D_j.lambda + c z) / prod_{c<=-D_j.k}(...)]
            * f(lambda - k z, z),

stored post-cancellation as a finite product.  The difference relations
these operators satisfy generate the GKZ system of the toric quotient; the
non-commutative change of variables S^k -> q^k, lambda_a -> z q_a d/dq_a
turns them into differential operators annihilating the toric I-function.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import LocalizedFunction, Poly, PolyRing

Z = "z"


def shift_ring(parameter_names):
    return PolyRing(tuple(parameter_names) + (Z,))


def _weight_form(ring, row, c=0):
    """D_j . lambda + c*z as a Poly over (lambda, z)."""
    coeffs = [Fraction(x) for x in row] + [Fraction(c)]
    return ring.linear(coeffs)


def shift_prefactor(D, k, ring=None):
    """The finite product prod_{c<=0}/prod_{c<=-D_j.k} after cancellation.

    D_j.k = m > 0 contributes prod_{c=0..m-1}(D_j.lambda - c z) upstairs,
    m < 0 contributes prod_{c=1..-m}(D_j.lambda + c z) downstairs, and
    m = 0 contributes 1.
    """
    l = len(D[0])
    if ring is None:
        ring = shift_ring([f"l{j+1}" for j in range(l)])
    num = ring.one()
    den = ring.one()
    for row in D:
        m = sum(row[j] * k[j] for j in range(l))
        if m > 0:
            for c in range(m):
                num = num * _weight_form(ring, row, -c)
        elif m < 0:
            for c in range(1, -m + 1):
                den = den * _weight_form(ring, row, c)
    return LocalizedFunction(num, den)


def apply_shift(D, k, f):
    """prefactor(lambda, z) * f(lambda - k z, z), gcd-reduced."""
    ring = f.ring
    l = len(D[0])
    pref = shift_prefactor(D, k, ring)
    z = ring.gen(Z)
    offsets = {ring.names[j]: -Fraction(k[j]) * z for j in range(l)}
    return pref * f.shift_vars(offsets)


def check_commutation(D, k, a, trials=20, rng=None):
    """Verify S^k . lambda_a = (lambda_a - k_a z) . S^k on random rational f."""
    import random

    rng = rng or random.Random(0)
    l = len(D[0])
    ring = shift_ring([f"l{j+1}" for j in range(l)])
    lam_a = ring.gen(ring.names[a])
    z = ring.gen(Z)
    for _ in range(trials):
        f = random_rational(ring, rng)
        lhs = apply_shift(D, k, f * lam_a)
        rhs = (lam_a - Fraction(k[a]) * z) * apply_shift(D, k, f)
        if lhs != rhs:
            return False
    return True


def random_rational(ring, rng, max_terms=3, max_exp=2):
    """Small random rational function; denominator guaranteed nonzero."""
    def rand_poly(allow_zero):
        terms = {}
        for _ in range(rng.randrange(1, max_terms + 1)):
            e = tuple(rng.randrange(max_exp + 1) for _ in ring.names)
            c = rng.randrange(-4, 5)
            if c:
                terms[e] = terms.get(e, Fraction(0)) + c
        terms = {e: c for e, c in terms.items() if c}
        if not terms and not allow_zero:
            terms = {(0,) * ring.nvars: Fraction(1 + rng.randrange(3))}
        return Poly(ring, terms)

    num = rand_poly(allow_zero=True)
    den = rand_poly(allow_zero=False)
    return LocalizedFunction(num, den)


class DifferenceRelation:
    """positive(lambda,z) - S^k . negative(lambda,z) annihilates 1."""

    __slots__ = ("cocharacter", "positive", "negative", "ring")

    def __init__(self, cocharacter, positive, negative):
        self.cocharacter = tuple(cocharacter)
        self.positive = positive
        self.negative = negative
        self.ring = positive.ring

    def canonical_text(self):
        k = ",".join(str(x) for x in self.cocharacter)
        return f"[{self.positive!r}] - S^({k}) [{self.negative!r}]"

    def __repr__(self):
        return f"DifferenceRelation({self.canonical_text()})"


def gkz_relation(D, k):
    """The GKZ difference relation of the cocharacter k.

    positive = prod_{i: D_i.k>0} prod_{c=0}^{D_i.k-1} (D_i.lambda - c z),
    negative = prod_{i: D_i.k<0} prod_{c=0}^{-D_i.k-1} (D_i.lambda - c z);
    then (positive - S^k negative) 1 = 0, which is verified on construction.
    """
    if not any(k):
        l = len(D[0])
        ring = shift_ring([f"l{j+1}" for j in range(l)])
        return DifferenceRelation(k, ring.one(), ring.one())
    l = len(D[0])
    ring = shift_ring([f"l{j+1}" for j in range(l)])
    pos = ring.one()
    neg = ring.one()
    for row in D:
        m = sum(row[j] * k[j] for j in range(l))
        if m > 0:
            for c in range(m):
                pos = pos * _weight_form(ring, row, -c)
        elif m < 0:
            for c in range(-m):
                neg = neg * _weight_form(ring, row, -c)
    rel = DifferenceRelation(tuple(k), pos, neg)
    applied = apply_shift(D, k, LocalizedFunction(neg))
    if applied != LocalizedFunction(pos):
        raise AssertionError("GKZ relation failed internal verification")
    return rel


class DifferentialOperator:
    """Sum of terms q^m P(z q d/dq, z), Novikov monomials left of derivatives.

    Terms are stored as {exponent tuple m: Poly in (d_1..d_l, z)} where d_a
    stands for the operator z q_a d/dq_a.  Applying to a Novikov series is
    linear; the derivative acts on explicit q-powers and on the divisor
    prefactor of the series through its stored shift rule.
    """

    __slots__ = ("terms", "ring", "rank")

    def __init__(self, rank, terms, ring=None):
        self.rank = rank
        if ring is None:
            ring = PolyRing(tuple(f"d{j+1}" for j in range(rank)) + (Z,))
        self.ring = ring
        self.terms = {tuple(m): p for m, p in terms.items() if not p.is_zero()}

    def is_zero(self):
        return not self.terms

    def max_shift_pairing(self, omega):
        """Largest <omega, m> over the q-monomials of the operator."""
        if not self.terms:
            return 0
        return max(sum(Fraction(o) * m_i for o, m_i in zip(omega, m))
                   for m in self.terms)

    def canonical_text(self):
        bits = []
        for m in sorted(self.terms):
            mono = "*".join(
                f"q{j+1}^{e}" if e != 1 else f"q{j+1}"
                for j, e in enumerate(m) if e
            ) or "1"
            bits.append(f"{mono} . ({self.terms[m]!r})")
        return " + ".join(bits) if bits else "0"

    def __repr__(self):
        return f"DifferentialOperator({self.canonical_text()})"


def to_differential(rel):
    """Translate a difference relation by S^k -> q^k, lambda_a -> z q_a d_a.

    The operator comes out as q^k N(zqd, z) - P(zqd, z), so the diagonal
    C^n relation with k = 1 becomes q - (z q d/dq)^n.
    """
    lam_names = rel.ring.names[:-1]
    rank = len(lam_names)
    dring = PolyRing(tuple(f"d{j+1}" for j in range(rank)) + (Z,))
    if rel.positive == rel.negative == rel.ring.one() and any(rel.cocharacter):
        # degenerate cocharacter (all D_i.k = 0): the statement is 1 - 1
        return DifferentialOperator(rank, {}, dring)
    subs = {lam_names[j]: dring.gen(f"d{j+1}") for j in range(rank)}
    subs[Z] = dring.gen(Z)
    p_img = rel.positive.substitute(subs)
    n_img = rel.negative.substitute(subs)
    zero_m = (0,) * rank
    terms = {tuple(rel.cocharacter): n_img}
    if tuple(rel.cocharacter) == zero_m:
        terms[zero_m] = n_img - p_img
    else:
        terms[zero_m] = -p_img
    return DifferentialOperator(rank, terms, dring)


def apply_differential(op, series):
    """Apply a differential operator to a NovikovSeries.

    z q_a d/dq_a acts on the term q^(beta + P/z) as multiplication by
    z beta_a + P_a, with P_a the stored divisor-shift class.  The result is
    valid only up to order N - max q-shift of the operator; the returned
    series is truncated there and raises on order underflow.
    """
    from .ifunctions import NovikovSeries, TruncationError

    shift = op.max_shift_pairing(series.omega)
    new_order = series.order - shift
    if new_order < 0:
        raise TruncationError(
            f"operator shifts by {shift} but series order is {series.order}"
        )
    ring = series.coeff_ring
    out_terms = {}
    for m, poly in op.terms.items():
        for beta, coeff in series.terms.items():
            target = tuple(b + mm for b, mm in zip(beta, m))
            if series.pairing(target) > new_order:
                continue
            mult = _eigenvalue_poly(poly, beta, series, ring)
            contrib = coeff * mult
            if target in out_terms:
                out_terms[target] = out_terms[target] + contrib
            else:
                out_terms[target] = contrib
    return NovikovSeries(
        rank=series.rank,
        omega=series.omega,
        coeff_ring=ring,
        terms=out_terms,
        prefactor=series.prefactor,
        order=new_order,
    )


def _eigenvalue_poly(poly, beta, series, ring):
    """Evaluate P(d_1..d_l, z) at d_a = z beta_a + prefactor_a, as ZLaurent."""
    from .algebra import ZLaurent

    pref = series.prefactor
    one = ZLaurent.scalar(ring, 1)
    acc = ZLaurent(ring, {})
    for e, c in poly.terms.items():
        term = ZLaurent.scalar(ring, c)
        for j, k in enumerate(e[:-1]):
            if not k:
                continue
            base = ZLaurent(ring, {1: ring.reduce(Fraction(beta[j]))})
            if pref is not None and not pref[j].is_zero():
                base = base + ZLaurent.from_element(pref[j])
            term = term * base ** k
        zk = e[-1]
        if zk:
            term = term.shift_z(zk)
        acc = acc + term
    return acc
