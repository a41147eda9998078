"""Local structure of zero-dimensional affine schemes.

The coordinate ring R/I is handled through its standard-monomial basis and
the multiplication matrices of the variables.  Because these matrices
commute, the local ring at a point P is the joint generalized eigenspace for
the eigenvalues P_i, which gives local lengths and socles by linear algebra
alone.  Minimal generator counts are computed in the truncated local ring
k[x]/m_P^N.
"""

from dataclasses import dataclass, field
from itertools import product
from math import lcm

from . import linalg, upoly
from .errors import (
    ExtensionCapExceeded,
    FieldTooLarge,
    NotAPoint,
    NotZeroDimensional,
    TruncationTooSmall,
    VerificationFailed,
)
from .field import FieldElement, extension
from .ideal import Ideal, eliminate, krull_dim
from .poly import all_exponents, mono_mul


@dataclass(frozen=True)
class QuotientAlgebra:
    ideal: Ideal
    basis: tuple
    matrices: tuple

    @property
    def field(self):
        return self.ideal.ring.field

    @property
    def dim(self):
        return len(self.basis)

    def coordinates(self, f):
        """Coordinate vector of the class of ``f`` in the monomial basis."""
        nf = self.ideal.groebner().normal_form(f)
        vec = [0] * self.dim
        index = {m: i for i, m in enumerate(self.basis)}
        for m, c in nf.terms.items():
            vec[index[m]] = c
        return vec

    def matrices_over(self, embed):
        return [linalg.map_matrix(M, embed) for M in self.matrices]


def quotient_algebra(I):
    gb = I.groebner()
    if not gb.is_zero_dimensional():
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    basis = tuple(gb.standard_monomials())
    index = {m: i for i, m in enumerate(basis)}
    F = I.ring.field
    n = I.ring.nvars
    mats = []
    for j in range(n):
        e = tuple(1 if k == j else 0 for k in range(n))
        M = linalg.zeros(len(basis), len(basis))
        for col, b in enumerate(basis):
            nf = gb.reduce_terms({mono_mul(b, e): 1})
            for m, c in nf.items():
                M[index[m]][col] = c
        mats.append(M)
    for a in range(n):
        for b in range(a + 1, n):
            if not linalg.commute(F, mats[a], mats[b]):
                raise VerificationFailed("multiplication matrices do not commute")
    return QuotientAlgebra(I, basis, tuple(mats))


@dataclass(frozen=True)
class PointSet:
    """Points of V(I) together with the field they were found in."""

    points: tuple
    field: object
    extension_degree: int
    embed: object = field(repr=False, compare=False, default=None)

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


def eliminants(I):
    """For each variable the monic generator of I cap k[x_j] (as coefficient list)."""
    cached = getattr(I, "_eliminants", None)
    if cached is not None:
        return cached
    out = []
    n = I.ring.nvars
    for j in range(n):
        J = eliminate(I, [j])
        gens = J.groebner().elements
        if not gens:
            raise NotZeroDimensional(f"no eliminant in {I.ring.names[j]}")
        g = gens[0]
        coeffs = [0] * (g.total_degree() + 1)
        for m, c in g.terms.items():
            coeffs[m[j]] = c
        out.append(upoly.trim(coeffs))
    I._eliminants = out
    return out


def points_extension_degree(I):
    """Smallest k such that every coordinate eliminant of I splits over F_{q^k}."""
    if I.is_unit():
        return 1
    if krull_dim(I) != 0:
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    F = I.ring.field
    k = 1
    for f in eliminants(I):
        k = lcm(k, upoly.splitting_degree(F, f))
    return k


def rational_points(I, max_ext=4, seed=0, degree=None):
    """All points of V(I) over the smallest extension where every eliminant splits.

    ``degree`` forces the extension degree to be a multiple of the given value,
    so that several ideals can share one working field.
    """
    F = I.ring.field
    if I.is_unit():
        E, embed = extension(F, degree or 1, seed)
        return PointSet((), E, degree or 1, embed)
    if krull_dim(I) != 0:
        raise NotZeroDimensional(f"{I} is not zero-dimensional")
    elims = eliminants(I)
    k = degree or 1
    for f in elims:
        k = lcm(k, upoly.splitting_degree(F, f))
    if k > max_ext:
        raise ExtensionCapExceeded(f"points need an extension of degree {k} > {max_ext}")
    E, embed = extension(F, k, seed)
    root_lists = [upoly.roots(E, [embed(c) for c in f]) for f in elims]
    RE = I.ring.with_field(E)
    gens = [g.to_ring(RE, embed) for g in I.gens]
    pts = []
    for cand in product(*root_lists):
        P = tuple(FieldElement(E, a) for a in cand)
        if all(g.evaluate(P).value == 0 for g in gens):
            pts.append(P)
    return PointSet(tuple(pts), E, k, embed)


def exhaustive_points(I, F=None):
    """Independent oracle: evaluate the generators at every point of F^n."""
    F = F or I.ring.field
    n = I.ring.nvars
    if F.q**n > 10**6:
        raise FieldTooLarge(f"{F.q}^{n} points is too many for an exhaustive sweep")
    if F == I.ring.field:
        gens = I.gens
    else:
        gens = [g.to_ring(I.ring.with_field(F)) for g in I.gens]
    out = []
    for cand in product(range(F.q), repeat=n):
        P = tuple(FieldElement(F, a) for a in cand)
        if all(g.evaluate(P).value == 0 for g in gens):
            out.append(P)
    return out


def _point_field(A, P, embed):
    E = P[0].field if P else A.field
    if embed is None:
        if E != A.field and A.field.degree != 1:
            raise ValueError("an embedding is needed for points over a larger non-prime field")
        embed = _identity
    return E, embed


def _identity(a):
    return a


def _check_point(I, P, E, embed):
    RE = I.ring.with_field(E)
    for g in I.gens:
        if g.to_ring(RE, embed).evaluate(P).value != 0:
            raise NotAPoint(f"{g} does not vanish at {tuple(str(c) for c in P)}")


def local_multiplicity(A, P, embed=None):
    """dim of the joint generalized eigenspace of the M_{x_i} at P."""
    E, embed = _point_field(A, P, embed)
    _check_point(A.ideal, P, E, embed)
    N = A.dim
    stacked = []
    for M, c in zip(A.matrices_over(embed), P):
        stacked.extend(linalg.mat_pow(E, linalg.shift_diagonal(E, M, c.value), N))
    return N - linalg.rank(E, stacked)


def socle_dimension(A, P, embed=None):
    """dim of {v : (M_{x_i} - P_i) v = 0 for all i}, the socle of the local ring."""
    E, embed = _point_field(A, P, embed)
    _check_point(A.ideal, P, E, embed)
    stacked = []
    for M, c in zip(A.matrices_over(embed), P):
        stacked.extend(linalg.shift_diagonal(E, M, c.value))
    return A.dim - linalg.rank(E, stacked)


def _mu_truncated(gens, N):
    """dim (I + m^N)/m^N - dim (mI + m^N)/m^N for gens centred at the origin."""
    ring = gens[0].ring
    E = ring.field
    monos = all_exponents(ring.nvars, N - 1)
    index = {m: i for i, m in enumerate(monos)}
    rows_I, rows_mI = [], []
    for g in gens:
        low = min((sum(m) for m in g.terms), default=N)
        for a in monos:
            if sum(a) + low >= N:
                continue
            vec = [0] * len(monos)
            for m, c in g.terms.items():
                mm = mono_mul(m, a)
                if sum(mm) < N:
                    vec[index[mm]] = E.add(vec[index[mm]], c)
            if any(vec):
                rows_I.append(vec)
                if sum(a) >= 1:
                    rows_mI.append(vec)
    return linalg.rank(E, rows_I) - linalg.rank(E, rows_mI)


def local_min_generators(I, P, N=None, embed=None, multiplicity=None):
    """Minimal number of generators of the localization I_P (Nakayama count)."""
    gens = [g for g in I.gens if g.terms]
    E = P[0].field if P else I.ring.field
    if embed is None:
        if E != I.ring.field and I.ring.field.degree != 1:
            raise ValueError("an embedding is needed for points over a larger non-prime field")
        embed = _identity
    _check_point(I, P, E, embed)
    if N is None:
        if multiplicity is None:
            multiplicity = local_multiplicity(quotient_algebra(I), P, embed)
        N = multiplicity + 1
    RE = I.ring.with_field(E)
    shift = [c.value for c in P]
    centred = [g.to_ring(RE, embed).translate(shift) for g in gens]
    mu = _mu_truncated(centred, N)
    if _mu_truncated(centred, N + 1) != mu:
        raise TruncationTooSmall(f"generator count changes between truncation orders {N} and {N + 1}")
    return mu


@dataclass
class LocalReport:
    point: tuple
    multiplicity: int
    mu: int
    socle_dim: int
    ambient_dim: int
    chart: int = None
    projective_point: tuple = None

    @property
    def is_lci(self):
        return self.mu == self.ambient_dim

    @property
    def is_gorenstein(self):
        return self.socle_dim == 1

    def to_dict(self):
        coords = self.projective_point if self.projective_point is not None else self.point
        return {
            "chart": self.chart,
            "coords": [str(c) for c in coords],
            "length": self.multiplicity,
            "mu": self.mu,
            "socle": self.socle_dim,
            "lci": self.is_lci,
            "gorenstein": self.is_gorenstein,
        }


@dataclass
class ZeroDimReport:
    total_length: int
    locals: list
    field_extension_used: int

    def to_dict(self):
        return {
            "total_length": self.total_length,
            "points": [loc.to_dict() for loc in self.locals],
            "extension_degree": self.field_extension_used,
        }


def analyze_points(I, points, mu_ideal=None):
    """Local reports at the given points (a :class:`PointSet` of V(I))."""
    A = quotient_algebra(I)
    mu_ideal = mu_ideal or I
    n = I.ring.nvars
    out = []
    for P in points:
        mult = local_multiplicity(A, P, points.embed)
        mu = local_min_generators(mu_ideal, P, embed=points.embed, multiplicity=mult)
        soc = socle_dimension(A, P, points.embed)
        out.append(LocalReport(P, mult, mu, soc, n))
    return out


def analyze_zero_dim(I, max_ext=4, seed=0):
    """Points, lengths, generator counts and socles of an affine zero-dim ideal."""
    pts = rational_points(I, max_ext, seed)
    locals_ = analyze_points(I, pts)
    total = sum(loc.multiplicity for loc in locals_)
    return ZeroDimReport(total, locals_, pts.extension_degree)
