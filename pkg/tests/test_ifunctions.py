from fractions import Fraction

import pytest

from qfourier.algebra import ZLaurent, nilpotent_inverse
from qfourier.glsm import GlsmData, quotient_presentation
from qfourier.ifunctions import (
    NovikovSeries,
    brown_i,
    equivariant_toric_i,
    j_projective,
    projective_ring,
    split_bundle_j,
    split_bundle_ring,
    toric_i,
)

F1 = GlsmData.make([[1, 0], [0, 1], [1, 0], [1, 1]], [2, 1])


# ------------------------------------------------------------ jProjective --

def test_j_projective_leading_term():
    for n in [1, 2, 3]:
        s = j_projective(n, 4)
        assert s.coefficient((0,)) == ZLaurent.scalar(s.coeff_ring, 1)


def test_j_projective_n1_is_exponential():
    # all p-powers vanish: coefficient of q^d is 1/(d! z^d)
    s = j_projective(1, 5)
    import math

    for d in range(6):
        assert s.coefficient((d,)) == ZLaurent.scalar(
            s.coeff_ring, Fraction(1, math.factorial(d)), -d
        )


def test_j_projective_n2_d1():
    # (p+z)^{-2} in C[p]/(p^2) = z^-2 - 2 p z^-3
    s = j_projective(2, 2)
    ring = s.coeff_ring
    p = ring.gen("p")
    expected = ZLaurent(ring, {-2: ring.one(), -3: -2 * p})
    assert s.coefficient((1,)) == expected
    assert s.prefactor == (p,)


def test_j_projective_denominator_oracle():
    # brute-force oracle: coefficient * prod_{k<=d}(p+kz)^n == 1
    for n in [2, 3]:
        s = j_projective(n, 4)
        ring = s.coeff_ring
        p = ring.gen("p")
        for d in range(1, 5):
            prod = ZLaurent.scalar(ring, 1)
            for k in range(1, d + 1):
                prod = prod * ZLaurent(ring, {0: p, 1: ring.reduce(k)}) ** n
            assert s.coefficient((d,)) * prod == ZLaurent.scalar(ring, 1)


# ---------------------------------------------------------------- toric I --

def test_toric_i_projective_matches_j():
    for n in [2, 3]:
        qd = quotient_presentation(GlsmData.make([[1]] * n, [1]))
        ti = toric_i(qd, 5)
        jp = j_projective(n, 5)
        # same ring up to generator name: map p-series into the glsm ring
        mapped = jp.map_coefficients(ti.coeff_ring, {"p": ti.coeff_ring.ambient.gen("l1")})
        assert ti.equal_up_to(mapped, 5)


def test_toric_i_leading_term():
    qd = quotient_presentation(F1)
    ti = toric_i(qd, 4)
    assert ti.coefficient((0, 0)) == ZLaurent.scalar(ti.coeff_ring, 1)


def test_toric_i_f1_golden_low_degrees():
    # brute-force oracle for selected F1 exponents: the coefficient is the
    # product of hypergeometric factors, checked by multiplying back
    qd = quotient_presentation(F1)
    ti = toric_i(qd, 6)
    ring = ti.coeff_ring
    D = F1.weights
    us = [qd.divisor_class(i) for i in range(4)]
    for beta in [(1, 0), (0, 1), (1, 1), (2, 1), (1, -1)]:
        coeff = ti.coefficient(beta)
        prod = ZLaurent.scalar(ring, 1)
        num = ZLaurent.scalar(ring, 1)
        for i in range(4):
            m = D[i][0] * beta[0] + D[i][1] * beta[1]
            if m > 0:
                for c in range(1, m + 1):
                    prod = prod * ZLaurent(ring, {0: us[i], 1: ring.reduce(c)})
            elif m < 0:
                for c in range(m + 1, 1):
                    num = num * ZLaurent(ring, {0: us[i], 1: ring.reduce(c)})
        assert coeff * prod == num


def test_toric_i_effective_support():
    # the exceptional-curve direction (1,-1) is effective on F1 and the
    # coefficient is nonzero; far outside the dual cone everything dies
    qd = quotient_presentation(F1)
    ti = toric_i(qd, 5)
    assert not ti.coefficient((1, -1)).is_zero()
    assert ti.coefficient((-1, 0)).is_zero()
    assert ti.coefficient((0, -1)).is_zero()
    assert ti.coefficient((-1, 2)).is_zero()


# ------------------------------------------------------------ splitBundleJ --

def test_split_bundle_trivial_twists():
    # trivial bundle over P^1: J has no lam-dependence and equals J_{P^1}
    s = split_bundle_j(1, (0, 0), 3)
    ring = s.coeff_ring
    lam_idx = ring.ambient.index("lam")
    for d, c in s.terms.items():
        for elt in c.coeffs.values():
            assert all(e[lam_idx] == 0 for e in elt.poly.terms)
    jp = j_projective(2, 3)
    mapped_terms = {}
    for d, c in jp.terms.items():
        mapped_terms[d] = c.substitute_ring(ring, {"p": ring.ambient.gen("h")})
    for d in mapped_terms:
        assert s.coefficient(d) == mapped_terms[d]


def test_split_bundle_o_minus1_d1():
    # V = O(-1) over P^1, d=1 coefficient = (lam - h) * (h+z)^{-2}
    s = split_bundle_j(1, (-1,), 2)
    ring = s.coeff_ring
    h, lam = ring.gen("h"), ring.gen("lam")
    hz = ZLaurent(ring, {0: h, 1: ring.one()})
    expected = nilpotent_inverse(hz * hz) * (lam - h)
    assert s.coefficient((1,)) == expected


def test_split_bundle_point_base():
    s = split_bundle_j(0, (0, -1), 5)
    assert s.coefficient((0,)) == ZLaurent.scalar(s.coeff_ring, 1)
    assert all(c.is_zero() for d, c in s.terms.items() if d != (Fraction(0),))


def test_split_bundle_positive_twist_rejected():
    with pytest.raises(ValueError):
        split_bundle_j(1, (1,), 2)


# ---------------------------------------------------------------- Brown I --

@pytest.mark.parametrize("r", [2, 3, 4])
def test_brown_point_base_is_projective_j(r):
    b = brown_i(0, (0,) * r, 5)
    jp = j_projective(r, 5)
    assert b.equal_up_to(jp, 5)


def test_brown_f1_matches_toric():
    """P(O + O(-1)) over P^1 equals toric F1 under the explicit dictionary.

    Exponents: (d, k) -> beta = (d, k - d); ring map h -> l1, p -> l1 + l2.
    """
    order = 6
    qd = quotient_presentation(F1)
    ti = toric_i(qd, order)
    bi = brown_i(1, (0, -1), order)
    # move brown exponents to the glsm basis
    changed = bi.change_basis([[1, 0], [-1, 1]], new_omega=ti.omega)
    amb = ti.coeff_ring.ambient
    mapped = changed.map_coefficients(
        ti.coeff_ring, {"b": amb.gen("l1"), "p": amb.gen("l1") + amb.gen("l2")}
    )
    # compare on the (d,k) <= (3,3) window mapped into the beta lattice
    for d in range(4):
        for k in range(4):
            beta = (d, k - d)
            assert mapped.coefficient(beta) == ti.coefficient(beta), (d, k)
    # prefactors match under the same dictionary
    assert mapped.prefactor == ti.prefactor


def test_brown_prefactor_and_leading():
    bi = brown_i(1, (0, -1), 3)
    assert bi.coefficient((0, 0)) == ZLaurent.scalar(bi.coeff_ring, 1)
    b, p = bi.coeff_ring.gen("b"), bi.coeff_ring.gen("p")
    assert bi.prefactor == (b, p)
    # ring relation of P(O + O(-1)): p(p - b) = 0
    assert (p * (p - b)).is_zero()


# ----------------------------------------------------- equivariant toric I --

def test_equivariant_toric_i_projective_restrictions():
    qd = quotient_presentation(GlsmData.make([[1]] * 2, [1]))
    eq = equivariant_toric_i(qd, 2)
    ring = eq.ring
    e1, e2, z = ring.gen("e1"), ring.gen("e2"), ring.gen("z")
    # at the fixed point {x1 != 0}: u1 -> 0, u2 -> e2 - e1
    # d=1 coefficient: 1/(z * (e2-e1+z))
    from qfourier.algebra import LocalizedFunction

    val = eq.terms[(1,)][0]
    expected = LocalizedFunction(ring.one(), z * (e2 - e1 + z))
    assert val == expected
