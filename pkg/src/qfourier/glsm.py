"""Torus actions on C^n: chambers, Kirwan presentations, fixed-point data.

A GlsmData is an integer weight matrix D (rows D_i in Z^l are the torus
weights of the coordinates) plus a stability vector omega.  The associated
GIT quotient is presented as a Stanley-Reisner style quotient ring over
the equivariant parameters, with its integration functional computed by
fixed-point localization over a generic auxiliary direction.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Poly, PolyRing, QuotientRing


class GlsmError(ValueError):
    pass


class OrbifoldUnsupportedError(GlsmError):
    """Some stabilizer is finite but nontrivial (|det D_S| != 1)."""


class EmptyQuotientError(GlsmError):
    pass


class UnsupportedRankError(GlsmError):
    pass


class WallAmbiguityError(GlsmError):
    pass


def _mat_rank(rows):
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = None
        for r in range(rank, len(m)):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pv = m[rank][c]
        m[rank] = [x / pv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def _solve_square(mat, rhs):
    """Exact solve of an l x l rational system; None when singular."""
    l = len(mat)
    aug = [[Fraction(mat[r][c]) for c in range(l)] + [Fraction(rhs[r])]
           for r in range(l)]
    for c in range(l):
        piv = None
        for r in range(c, l):
            if aug[r][c]:
                piv = r
                break
        if piv is None:
            return None
        aug[c], aug[piv] = aug[piv], aug[c]
        pv = aug[c][c]
        aug[c] = [x / pv for x in aug[c]]
        for r in range(l):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][l] for r in range(l)]


def _det(mat):
    l = len(mat)
    if l == 1:
        return Fraction(mat[0][0])
    if l == 2:
        return Fraction(mat[0][0]) * mat[1][1] - Fraction(mat[0][1]) * mat[1][0]
    m = [[Fraction(x) for x in row] for row in mat]
    det = Fraction(1)
    for c in range(l):
        piv = None
        for r in range(c, l):
            if m[r][c]:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        pv = m[c][c]
        for r in range(c + 1, l):
            if m[r][c]:
                f = m[r][c] / pv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def in_cone(vectors, target):
    """Exact test: target in Cone(vectors) (dimension <= 2 by Caratheodory,
    subsets of size <= l in general)."""
    target = [Fraction(t) for t in target]
    l = len(target)
    n = len(vectors)
    if all(t == 0 for t in target):
        return True
    # single generators
    for v in vectors:
        if any(v):
            ratios = {Fraction(t) / Fraction(c) for t, c in zip(target, v) if c}
            if len(ratios) == 1:
                r = ratios.pop()
                if r >= 0 and all(
                    Fraction(t) == r * Fraction(c) for t, c in zip(target, v)
                ):
                    return True
    from itertools import combinations

    for size in range(2, l + 1):
        for subset in combinations(range(n), size):
            sub = [vectors[i] for i in subset]
            if _mat_rank(sub) < size:
                continue
            # least squares is not exact; solve on an independent column set
            cols = _independent_columns(sub, size)
            if cols is None:
                continue
            mat = [[Fraction(sub[j][c]) for j in range(size)] for c in cols]
            rhs = [target[c] for c in cols]
            coeff = _solve_square(mat, rhs)
            if coeff is None or any(c < 0 for c in coeff):
                continue
            ok = all(
                sum(coeff[j] * Fraction(sub[j][c]) for j in range(size)) == target[c]
                for c in range(l)
            )
            if ok:
                return True
    return False


def _independent_columns(rows, need):
    from itertools import combinations

    l = len(rows[0])
    for cols in combinations(range(l), need):
        mat = [[rows[j][c] for c in cols] for j in range(need)]
        if _det([[mat[i][j] for i in range(need)] for j in range(need)]):
            return cols
    return None


@dataclass(frozen=True)
class GlsmData:
    """Integer weight matrix of a torus action plus a stability vector."""

    weights: tuple  # n rows, each a tuple of l ints
    chamber: tuple  # omega in Q^l
    coordinate_names: tuple = ()
    parameter_names: tuple = ()

    def __post_init__(self):
        n, l = self.shape
        if n == 0 or l == 0:
            raise GlsmError("empty weight matrix")
        if any(len(row) != l for row in self.weights):
            raise GlsmError("ragged weight matrix")
        if len(self.chamber) != l:
            raise GlsmError("chamber vector length mismatch")
        if _mat_rank(list(self.weights)) < l:
            raise GlsmError("weight matrix must have full rank l")
        if not self.coordinate_names:
            object.__setattr__(
                self, "coordinate_names", tuple(f"x{i+1}" for i in range(n))
            )
        if not self.parameter_names:
            object.__setattr__(
                self, "parameter_names", tuple(f"l{j+1}" for j in range(l))
            )

    @classmethod
    def make(cls, weights, chamber, coordinate_names=(), parameter_names=()):
        return cls(
            tuple(tuple(int(x) for x in row) for row in weights),
            tuple(Fraction(c) for c in chamber),
            tuple(coordinate_names),
            tuple(parameter_names),
        )

    @property
    def shape(self):
        return len(self.weights), len(self.weights[0]) if self.weights else 0

    @property
    def n(self):
        return self.shape[0]

    @property
    def l(self):
        return self.shape[1]

    def to_dict(self):
        return {
            "weights": [list(r) for r in self.weights],
            "chamber": [str(c) for c in self.chamber],
            "names": {
                "coordinates": list(self.coordinate_names),
                "parameters": list(self.parameter_names),
            },
        }

    @classmethod
    def from_dict(cls, d):
        names = d.get("names", {})
        return cls.make(
            d["weights"],
            [Fraction(str(c)) for c in d["chamber"]],
            names.get("coordinates", ()),
            names.get("parameters", ()),
        )


@dataclass
class Chamber:
    representative: tuple  # rational interior point
    bounding_rays: tuple   # primitive integer rays (or signs for l=1)
    nonempty: bool


def chambers(weights):
    """Chamber representatives of the ray arrangement spanned by the weights.

    Implemented for l <= 2.  Each maximal chamber of the arrangement gets
    one interior rational point; chambers whose quotient is empty (the
    representative lies outside the cone of the weights) are flagged.
    """
    n = len(weights)
    l = len(weights[0])
    if l > 2:
        raise UnsupportedRankError("chamber enumeration implemented for l <= 2")
    if l == 1:
        out = []
        for sign in (1, -1):
            rep = (Fraction(sign),)
            nonempty = any(w[0] * sign > 0 for w in weights)
            out.append(Chamber(rep, ((sign,),), nonempty))
        return out
    # l == 2: sort the distinct ray directions by angle
    def primitive(v):
        g = math.gcd(abs(v[0]), abs(v[1]))
        return (v[0] // g, v[1] // g) if g else (0, 0)

    rays = sorted(
        {primitive(tuple(w)) for w in weights if any(w)},
        key=lambda r: math.atan2(r[1], r[0]),
    )
    if not rays:
        raise GlsmError("all weights vanish")
    out = []
    for i, r1 in enumerate(rays):
        r2 = rays[(i + 1) % len(rays)]
        a1 = math.atan2(r1[1], r1[0])
        a2 = math.atan2(r2[1], r2[0])
        gap = (a2 - a1) % (2 * math.pi)
        if len(rays) == 1:
            gap = 2 * math.pi
        if gap == 0:
            continue
        mid = a1 + gap / 2
        rep = _rationalize_direction(mid, r1, r2, gap)
        nonempty = in_cone(list(weights), rep)
        out.append(Chamber(tuple(rep), (r1, r2), nonempty))
    return out


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _strictly_inside(r1, r2, gap, cand):
    """cand strictly interior to the ccw sector from r1 to r2 (angle gap)."""
    if not any(cand):
        return False
    if gap >= 2 * math.pi - 1e-12:
        # complement of a single ray: anything off the ray r1
        return _cross(r1, cand) != 0 or (
            cand[0] * r1[0] + cand[1] * r1[1] < 0
        )
    if gap <= math.pi:
        return _cross(r1, cand) > 0 and _cross(cand, r2) > 0
    # reflex sector: strictly outside the closed complementary cone (r2->r1)
    inside_comp = _cross(r2, cand) >= 0 and _cross(cand, r1) >= 0
    return not inside_comp


def _rationalize_direction(angle, r1, r2, gap):
    """Rational point strictly between rays r1 and r2 (checked exactly)."""
    if gap < math.pi:
        cand = (Fraction(r1[0] + r2[0]), Fraction(r1[1] + r2[1]))
        if _strictly_inside(r1, r2, gap, cand):
            return cand
    for denom in (12, 120, 1200, 12000):
        cand = (
            Fraction(round(math.cos(angle) * denom), denom),
            Fraction(round(math.sin(angle) * denom), denom),
        )
        if _strictly_inside(r1, r2, gap, cand):
            return cand
    raise GlsmError("could not rationalize a chamber representative")


@dataclass
class FixedPoint:
    subset: tuple          # S with |S| = l, det D_S != 0, omega in Cone(D_S)
    lambda_map: tuple      # l x n matrix: lambda_S = M . eps (rows over Q)
    restrictions: tuple    # n linear forms in eps: u_a|_F
    tangent_weights: tuple # the n-l nonzero restriction forms (a not in S)
    framing: tuple         # indices in S (their restriction forms vanish)


@dataclass
class QuotientData:
    glsm: GlsmData
    ring: QuotientRing
    fixed_points: list
    sr_subsets: list = field(default_factory=list)

    def kirwan(self, poly):
        """Kirwan map C[lambda] -> ring (identity on generators + reduce)."""
        return self.ring.reduce(poly)

    def kirwan_gen(self, j):
        return self.ring.gen(self.glsm.parameter_names[j])

    def divisor_class(self, i):
        """u_i = kappa(D_i . lambda)."""
        amb = self.ring.ambient
        D = self.glsm.weights
        form = amb.linear([Fraction(D[i][j]) for j in range(self.glsm.l)])
        return self.ring.reduce(form)

    def integrate(self, x):
        return self.ring.integral(x)

    def integrate_localized(self, poly, aux):
        """Independent localization route with auxiliary direction ``aux``.

        Computes the exact s -> 0 limit of the fixed-point sum with
        eps = aux * s; the negative s-powers must cancel, which is asserted.
        """
        n, l = self.glsm.shape
        D = self.glsm.weights
        laurent = {}
        parts = poly.homogeneous_parts()
        for F in self.fixed_points:
            lam = [
                sum(F.lambda_map[j][a] * aux[a] for a in range(n))
                for j in range(l)
            ]
            euler = Fraction(1)
            for form in F.tangent_weights:
                w = sum(form[a] * aux[a] for a in range(n))
                if w == 0:
                    raise GlsmError("auxiliary direction not generic")
                euler *= w
            values = {
                self.glsm.parameter_names[j]: lam[j] for j in range(l)
            }
            for deg, part in parts.items():
                k = deg // 2
                val = part.eval_scalar(values)
                if val:
                    key = k - (n - l)
                    laurent[key] = laurent.get(key, Fraction(0)) + val / euler
        for k, v in laurent.items():
            if k < 0 and v != 0:
                raise GlsmError("localization sum has an uncancelled pole")
        return laurent.get(0, Fraction(0))


def fixed_point_subsets(weights, omega):
    """Subsets S (|S| = l) with det D_S != 0 and omega interior to Cone(D_S)."""
    from itertools import combinations

    n = len(weights)
    l = len(weights[0])
    omega = [Fraction(w) for w in omega]
    out = []
    for S in combinations(range(n), l):
        mat_cols = [[weights[i][j] for i in S] for j in range(l)]
        d = _det(mat_cols)
        if not d:
            continue
        coeff = _solve_square(mat_cols, omega)
        if coeff is None:
            continue
        if any(c < 0 for c in coeff):
            continue
        if any(c == 0 for c in coeff):
            raise WallAmbiguityError(
                f"omega lies on a wall of the cone of subset {S}"
            )
        out.append((S, d))
    return out


def quotient_presentation(data):
    """Kirwan presentation of the GIT quotient C^n //_omega T.

    Returns QuotientData with the Stanley-Reisner quotient ring over the
    equivariant parameters, the fixed-point subsets with restriction and
    tangent-weight data, and an integral table normalized so that
    fixed-point localization reproduces it exactly.
    """
    n, l = data.shape
    D = data.weights
    omega = data.chamber
    subsets = fixed_point_subsets(D, omega)
    if not subsets:
        raise EmptyQuotientError("no stable coordinate subsets: empty quotient")
    for S, d in subsets:
        if abs(d) != 1:
            raise OrbifoldUnsupportedError(
                f"subset {S} has |det| = {abs(d)}; orbifold quotients unsupported"
            )

    amb = PolyRing(data.parameter_names)
    # Stanley-Reisner generators: prod_{i in S} u_i for minimal S whose
    # complementary weights do not span omega
    from itertools import combinations

    sr_subsets = []
    relations = []
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            if any(set(prev) <= set(S) for prev in sr_subsets):
                continue
            comp = [D[j] for j in range(n) if j not in S]
            if comp and in_cone(comp, omega):
                continue
            sr_subsets.append(S)
            rel = amb.one()
            for i in S:
                rel = rel * amb.linear([Fraction(D[i][j]) for j in range(l)])
            relations.append(rel)

    ring = QuotientRing(data.parameter_names, relations, complex_dim=n - l)

    # fixed-point restriction data: solve D_i . lambda + eps_i = 0 for i in S
    fps = []
    for S, _ in subsets:
        mat = [[Fraction(D[i][j]) for j in range(l)] for i in S]
        inv_cols = []
        for k in range(l):
            rhs = [Fraction(-1) if idx == k else Fraction(0)
                   for idx in range(l)]
            inv_cols.append(_solve_square(
                [[mat[r][c] for c in range(l)] for r in range(l)], rhs))
        # lambda_j = sum_k (-(D_S)^{-1})_{jk} eps_{S_k}
        lam_map = [[Fraction(0)] * n for _ in range(l)]
        for k, i in enumerate(S):
            for j in range(l):
                lam_map[j][i] = inv_cols[k][j]
        restrictions = []
        for a in range(n):
            form = [Fraction(0)] * n
            form[a] += 1
            for j in range(l):
                for i in range(n):
                    form[i] += Fraction(D[a][j]) * lam_map[j][i]
            restrictions.append(tuple(form))
        tangent = tuple(restrictions[a] for a in range(n) if a not in S)
        fps.append(FixedPoint(
            subset=tuple(S),
            lambda_map=tuple(tuple(r) for r in lam_map),
            restrictions=tuple(restrictions),
            tangent_weights=tangent,
            framing=tuple(S),
        ))

    qd = QuotientData(glsm=data, ring=ring, fixed_points=fps,
                      sr_subsets=sr_subsets)

    # integral table by localization along a generic auxiliary direction
    rng = random.Random(20240 + n * 13 + l)
    top = n - l
    table = {}
    for attempt in range(32):
        aux = [Fraction(rng.randrange(1, 83)) for _ in range(n)]
        try:
            for e in ring.basis_of_weight(top):
                mono = Poly(amb, {tuple(e): Fraction(1)})
                table[tuple(e)] = qd.integrate_localized(mono, aux)
            break
        except GlsmError:
            table.clear()
            continue
    else:
        raise GlsmError("no generic auxiliary direction found")
    ring.integral_table = table
    return qd
