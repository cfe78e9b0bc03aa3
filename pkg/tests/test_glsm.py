import random
from fractions import Fraction
from itertools import permutations

import pytest

from qfourier.algebra import Poly, PolyRing
from qfourier.glsm import (
    Chamber,
    EmptyQuotientError,
    GlsmData,
    OrbifoldUnsupportedError,
    UnsupportedRankError,
    chambers,
    in_cone,
    quotient_presentation,
)

DIAG = lambda n: GlsmData.make([[1]] * n, [1])

F1 = GlsmData.make([[1, 0], [0, 1], [1, 0], [1, 1]], [2, 1])
P1xP1 = GlsmData.make([[1, 0], [1, 0], [0, 1], [0, 1]], [1, 1])
P2_GLSM = GlsmData.make([[1]] * 3, [1])


# ------------------------------------------------------------- chambers --

def test_chambers_diagonal():
    ch = chambers([[1], [1], [1]])
    pos = [c for c in ch if c.representative[0] > 0]
    neg = [c for c in ch if c.representative[0] < 0]
    assert len(pos) == 1 and pos[0].nonempty
    assert len(neg) == 1 and not neg[0].nonempty


def test_chambers_c1():
    ch = chambers([[1]])
    flags = {c.representative[0] > 0: c.nonempty for c in ch}
    assert flags[True] is True and flags[False] is False


def test_chambers_f1_count():
    # Ray arrangement of the F1 weights (1,0),(0,1),(1,0),(1,1): three
    # distinct rays, three maximal sectors.  Brute-force oracle: quotient
    # nonempty iff the representative lies in the cone of the weights.
    ch = chambers(list(F1.weights))
    assert len(ch) == 3
    nonempty = [c for c in ch if c.nonempty]
    # F1 chamber (between (1,0) and (1,1)) and the P2 chamber (between
    # (1,1) and (0,1)); the reflex sector has empty quotient
    assert len(nonempty) == 2
    for c in ch:
        assert c.nonempty == in_cone(list(F1.weights), c.representative)


def test_chambers_rank_error():
    with pytest.raises(UnsupportedRankError):
        chambers([[1, 0, 0], [0, 1, 0], [0, 0, 1]])


def test_chambers_permutation_invariance():
    rng = random.Random(9)
    for _ in range(20):
        n = rng.randrange(2, 5)
        D = [[rng.randrange(-2, 3), rng.randrange(-2, 3)] for _ in range(n)]
        if all(not any(r) for r in D):
            continue
        try:
            reps = {tuple(c.representative): c.nonempty for c in chambers(D)}
        except Exception:
            continue
        perm = list(range(n))
        rng.shuffle(perm)
        reps2 = {tuple(c.representative): c.nonempty
                 for c in chambers([D[i] for i in perm])}
        assert reps == reps2


# ------------------------------------------------- quotient presentation --

def test_projective_space_presentation():
    for n in range(1, 6):
        qd = quotient_presentation(DIAG(n))
        lam = qd.ring.gen("l1")
        assert (lam ** n).is_zero()
        assert not (lam ** (n - 1)).is_zero() or n == 1
        assert len(qd.fixed_points) == n
        assert qd.ring.dimension() == n
        assert qd.integrate(lam ** (n - 1)) == 1
        if n >= 2:
            assert qd.integrate(lam ** (n - 2)) == 0


def test_point_quotient():
    qd = quotient_presentation(GlsmData.make([[1, 0], [0, 1]], [1, 1]))
    assert qd.ring.dimension() == 1
    assert len(qd.fixed_points) == 1
    assert qd.integrate(qd.ring.one()) == 1


def test_empty_quotient_error():
    with pytest.raises(EmptyQuotientError):
        quotient_presentation(GlsmData.make([[1]] * 3, [-1]))


def test_orbifold_rejected():
    with pytest.raises(OrbifoldUnsupportedError):
        quotient_presentation(GlsmData.make([[1], [2]], [1]))


def test_f1_presentation():
    qd = quotient_presentation(F1)
    assert qd.ring.dimension() == 4
    assert len(qd.fixed_points) == 4
    l1 = qd.ring.gen("l1")
    l2 = qd.ring.gen("l2")
    # Stanley-Reisner relations: l1^2 = 0, l2*(l1+l2) = 0
    assert (l1 * l1).is_zero()
    assert (l2 * (l1 + l2)).is_zero()
    # intersection numbers of F1: l1.l2 = 1, l2.l2 = -1
    assert qd.integrate(l1 * l2) == 1
    assert qd.integrate(l2 * l2) == -1
    assert qd.integrate(l1) == 0


def test_p2_chamber_of_f1_weights():
    qd = quotient_presentation(GlsmData.make(list(F1.weights), [1, 2]))
    assert qd.ring.dimension() == 3
    assert len(qd.fixed_points) == 3
    # quotient is P^2: u2 = l2 collapses and l1^3 = 0
    l1 = qd.ring.gen("l1")
    assert (l1 ** 3).is_zero()
    assert not (l1 ** 2).is_zero()


def test_p1xp1_presentation():
    qd = quotient_presentation(P1xP1)
    assert qd.ring.dimension() == 4
    l1, l2 = qd.ring.gen("l1"), qd.ring.gen("l2")
    assert (l1 * l1).is_zero() and (l2 * l2).is_zero()
    assert qd.integrate(l1 * l2) == 1


def test_f1_localization_oracle():
    qd = quotient_presentation(F1)
    amb = qd.ring.ambient
    x = (amb.gen("l1") + amb.gen("l2")) ** 2
    # localization oracle vs table for (l1+l2)^2: by bilinearity the value
    # is 2*l1.l2 + l2.l2 + l1.l1 = 2 + (-1) + 0 = 1
    assert qd.integrate(x) == 1
    rng = random.Random(2)
    for _ in range(10):
        aux = [Fraction(rng.randrange(1, 67)) for _ in range(4)]
        try:
            v = qd.integrate_localized(x, aux)
        except Exception:
            continue
        assert v == 1


def test_table_vs_localization_random():
    rng = random.Random(17)
    for qd in [quotient_presentation(DIAG(3)), quotient_presentation(F1),
               quotient_presentation(P1xP1)]:
        amb = qd.ring.ambient
        names = qd.glsm.parameter_names
        for _ in range(10):
            terms = {}
            for _ in range(3):
                e = tuple(rng.randrange(3) for _ in names)
                terms[e] = terms.get(e, Fraction(0)) + rng.randrange(-4, 5)
            x = Poly(amb, {e: Fraction(c) for e, c in terms.items() if c})
            aux = [Fraction(rng.randrange(1, 97)) for _ in range(qd.glsm.n)]
            try:
                v1 = qd.integrate_localized(x, aux)
            except Exception:
                continue
            assert v1 == qd.integrate(x)


def test_fixed_point_count_equals_dimension():
    rng = random.Random(4)
    cases = [DIAG(2), DIAG(4), F1, P1xP1,
             GlsmData.make([[1, 0], [0, 1], [1, 1]], [2, 1])]
    for data in cases:
        qd = quotient_presentation(data)
        assert len(qd.fixed_points) == qd.ring.dimension()


def test_kirwan_kills_relations():
    qd = quotient_presentation(F1)
    for rel in qd.ring.relations:
        assert qd.kirwan(rel).is_zero()


def test_restriction_forms():
    # P^(n-1): u_a|_{p_i} = eps_a - eps_i
    qd = quotient_presentation(DIAG(3))
    for fp in qd.fixed_points:
        (i,) = fp.subset
        for a in range(3):
            form = [Fraction(0)] * 3
            form[a] += 1
            form[i] -= 1
            assert tuple(form) == fp.restrictions[a]


def test_serialization_roundtrip():
    d = F1.to_dict()
    back = GlsmData.from_dict(d)
    assert back == F1
