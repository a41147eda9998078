"""Degrees of rational self-maps of projective space.

A map f = (F_0 : ... : F_n) of degree d with finite base scheme E_f satisfies
deg f <= d^n - length(E_f), with equality exactly when E_f is a local
complete intersection (equivalently Gorenstein).  This module computes both
sides independently: the base scheme through saturation and chart-wise local
analysis, the degree through lengths of fibers over sampled targets.
"""

import random
from dataclasses import dataclass, field
from itertools import product
from math import lcm

from .errors import (
    ExtensionCapExceeded,
    MixedArity,
    MixedDegrees,
    NoValidSource,
    NotHomogeneous,
    PositiveDimensional,
    PositiveDimensionalBaseLocus,
    PositiveDimensionalFiber,
    RatdegError,
    RingMismatch,
    VerificationFailed,
)
from .field import FieldElement, extension
from .ideal import Ideal, hilbert_length, krull_dim, saturate, saturate_irrelevant
from .poly import PolyRing, ZERO_DEGREE, is_homogeneous, random_poly
from .zerodim import (
    LocalReport,
    ZeroDimReport,
    local_min_generators,
    local_multiplicity,
    points_extension_degree,
    quotient_algebra,
    rational_points,
    socle_dimension,
)

MAX_SOURCE_DRAWS = 100
ATTEMPTS_PER_TRIAL = 20
SAMPLE_FIELD_SIZE = 25


@dataclass(frozen=True)
class RationalMap:
    ring: PolyRing
    components: tuple
    d: int

    @property
    def field(self):
        return self.ring.field

    @property
    def n(self):
        return self.ring.nvars - 1

    def base_ideal(self):
        return Ideal(list(self.components), self.ring)

    def over(self, E, embed):
        """The same map with coefficients pushed into the field E."""
        RE = self.ring.with_field(E)
        return RationalMap(RE, tuple(F.to_ring(RE, embed) for F in self.components), self.d)

    def __call__(self, point):
        return tuple(F.evaluate(point) for F in self.components)

    def to_dict(self):
        return {
            "field": self.field.spec(),
            "vars": list(self.ring.names),
            "components": [str(F) for F in self.components],
        }


def new_map(components, ring=None):
    """Validate homogeneous components of one degree with a finite base locus."""
    components = list(components)
    if not components:
        raise MixedArity("a map needs at least one component")
    ring = ring or components[0].ring
    for i, F in enumerate(components):
        if not F.ring.compatible(ring):
            raise RingMismatch(f"component {i} lives in {F.ring}, expected {ring}")
    if len(components) != ring.nvars:
        raise MixedArity(f"{len(components)} components for {ring.nvars} variables")
    degrees = set()
    for i, F in enumerate(components):
        d = is_homogeneous(F)
        if d is None:
            raise NotHomogeneous(f"component {i} ({F}) is not homogeneous")
        if d is not ZERO_DEGREE:
            degrees.add(d)
    if not degrees:
        raise PositiveDimensionalBaseLocus("all components are zero; the map is undefined everywhere")
    if len(degrees) > 1:
        raise MixedDegrees(f"components have degrees {sorted(degrees)}")
    (d,) = degrees
    if d < 1:
        raise MixedDegrees("components must have positive degree")
    comps = tuple(F if F.ring == ring else F.to_ring(ring) for F in components)
    f = RationalMap(ring, comps, d)
    if krull_dim(f.base_ideal()) > 1:
        raise PositiveDimensionalBaseLocus(
            "the base locus is not finite (a common factor or a positive-dimensional undefined set is present)"
        )
    return f


# -- base locus ---------------------------------------------------------------

def _chart_ideal(f, i):
    chart = f.ring.drop(i)
    return Ideal([F.dehomogenize(i, chart) for F in f.components], chart)


def _projective(P, i, E):
    coords = list(P)
    coords.insert(i, FieldElement(E, 1))
    return tuple(coords)


def base_locus(f, max_ext=4, seed=0):
    """``(delta, ZeroDimReport)`` for the base scheme of ``f``.

    delta is the Hilbert length of the saturated base ideal.  Each point is
    analysed in the chart of its last nonzero coordinate, and the local
    lengths must add up to delta.
    """
    delta = hilbert_length(saturate_irrelevant(f.base_ideal()))
    n1 = f.ring.nvars
    charts = [(i, _chart_ideal(f, i)) for i in range(n1)]
    charts = [(i, I) for i, I in charts if not I.is_unit()]
    k = 1
    for _, I in charts:
        k = lcm(k, points_extension_degree(I))
    if k > max_ext:
        raise ExtensionCapExceeded(f"base points need an extension of degree {k} > {max_ext}")
    locals_ = []
    for i, I in charts:
        pts = rational_points(I, max_ext, seed, degree=k)
        # chart variables after position i correspond to X_{i+1}, ..., X_n
        mine = [P for P in pts if all(c.value == 0 for c in P[i:])]
        if not mine:
            continue
        A = quotient_algebra(I)
        for P in mine:
            mult = local_multiplicity(A, P, pts.embed)
            mu = local_min_generators(I, P, embed=pts.embed, multiplicity=mult)
            soc = socle_dimension(A, P, pts.embed)
            locals_.append(LocalReport(P, mult, mu, soc, n1 - 1, chart=i, projective_point=_projective(P, i, pts.field)))
    total = sum(loc.multiplicity for loc in locals_)
    if total != delta:
        raise VerificationFailed(f"local lengths add up to {total}, Hilbert length is {delta}")
    return delta, ZeroDimReport(total, locals_, k)


# -- fibers -----------------------------------------------------------------

def sample_extension_degree(F, size=SAMPLE_FIELD_SIZE):
    """Smallest e with |F|^e >= size."""
    e = 1
    while F.q**e < size:
        e += 1
    return e


def _random_source(E, n1, rng):
    while True:
        Q = [E.random(rng) for _ in range(n1)]
        if any(Q):
            return tuple(FieldElement(E, a) for a in Q)


def fiber_ideal(f, P):
    """Ideal of the fiber over ``P`` with the base scheme removed.

    ``f`` must already be defined over the field of ``P``.  The 2x2 minors
    P_j F_i - P_i F_j cut out E_f together with the fiber; saturating by one
    F_k with P_k != 0 equals saturating by the whole base ideal (on the minors
    every F_i is a multiple of F_k), and the result is already saturated with
    respect to the irrelevant ideal since F_k lies in it.
    """
    comps = f.components
    vals = [c.value for c in P]
    minors = []
    for i in range(len(comps)):
        for j in range(i + 1, len(comps)):
            g = comps[i].scale(vals[j]) - comps[j].scale(vals[i])
            if g.terms:
                minors.append(g)
    k = max(i for i, v in enumerate(vals) if v)
    return saturate(Ideal(minors, f.ring), comps[k])


def fiber_length(f, P):
    """Length of the fiber over P; raises PositiveDimensional for infinite fibers."""
    return hilbert_length(fiber_ideal(f, P))


def _sampling_field(f, sample_ext):
    e = sample_ext if sample_ext is not None else sample_extension_degree(f.field)
    E, embed = extension(f.field, e)
    return E, embed, f.over(E, embed)


@dataclass
class FiberSample:
    source: tuple
    target: tuple
    length: int = None
    bezout: int = None

    def to_dict(self):
        return {
            "source": [str(c) for c in self.source],
            "target": [str(c) for c in self.target],
            "length": self.length,
            "bezout": self.bezout,
        }


def degree_exact(f, trials=5, seed=0, sample_ext=None, bezout=False):
    """Degree of ``f`` as the largest fiber length over ``trials`` sampled targets.

    Targets are images f(Q) of random sources Q outside the base locus.  Away
    from the base locus the fiber length is at most the degree, with equality
    over general targets; fibers over special targets lose the length that
    sits on the base scheme, so the maximum is the generic value.  Targets
    with positive-dimensional fibers are recorded and skipped.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    rng = random.Random(seed)
    E, embed, fE = _sampling_field(f, sample_ext)
    n1 = f.ring.nvars
    samples = []
    good = 0
    for _ in range(trials * ATTEMPTS_PER_TRIAL):
        for _ in range(MAX_SOURCE_DRAWS):
            Q = _random_source(E, n1, rng)
            P = fE(Q)
            if any(c.value for c in P):
                break
        else:
            raise NoValidSource(f"{MAX_SOURCE_DRAWS} random sources all lie in the base locus; use a larger field")
        s = FiberSample(Q, P)
        try:
            s.length = fiber_length(fE, P)
        except PositiveDimensional:
            samples.append(s)
            continue
        if bezout:
            s.bezout = degree_via_hyperplanes(fE, P)
        samples.append(s)
        good += 1
        if good == trials:
            break
    lengths = [s.length for s in samples if s.length is not None]
    if not lengths:
        raise PositiveDimensionalFiber("every sampled fiber is positive-dimensional; the map is not dominant")
    return max(lengths), samples


def degree_via_hyperplanes(f, P):
    """Length of E_P, the common zeros of P_k F_i - P_i F_k for i != k.

    E_P is cut out by n hypersurfaces of degree d; when it is finite its
    length is d^n.  ``f`` must be defined over the field of ``P``.
    """
    vals = [c.value for c in P]
    k = max(i for i, v in enumerate(vals) if v)
    comps = f.components
    gens = [comps[i].scale(vals[k]) - comps[k].scale(vals[i]) for i in range(len(comps)) if i != k]
    return hilbert_length(saturate_irrelevant(Ideal(gens, f.ring)))


# -- full analysis ------------------------------------------------------------

@dataclass
class DegreeReport:
    map: RationalMap
    delta: int
    bound: int
    base: ZeroDimReport
    lci_all: bool
    gorenstein_all: bool
    degree_exact: int
    fiber_samples: list
    bezout_check: list
    violations: list = field(default_factory=list)

    @property
    def equality(self):
        return self.degree_exact == self.bound

    def to_dict(self):
        return {
            "field": self.map.field.spec(),
            "n": self.map.n,
            "d": self.map.d,
            "delta": self.delta,
            "bound": self.bound,
            "degree": self.degree_exact,
            "lci": self.lci_all,
            "gorenstein": self.gorenstein_all,
            "points": [loc.to_dict() for loc in self.base.locals],
            "samples": [s.to_dict() for s in self.fiber_samples],
            "bezout": self.bezout_check,
            "extension_degree": self.base.field_extension_used,
            "violations": list(self.violations),
        }


def check_invariants(report):
    """List of broken degree-formula invariants (empty when all hold)."""
    out = []
    f = report.map
    expected = f.d**f.n
    if report.degree_exact > report.bound:
        out.append(f"inequality: degree {report.degree_exact} > bound {report.bound}")
    if report.lci_all != report.gorenstein_all:
        out.append("equivalence: lci and Gorenstein disagree")
    for loc in report.base.locals:
        if loc.is_lci != loc.is_gorenstein:
            out.append(f"equivalence: point {[str(c) for c in loc.projective_point]} lci={loc.is_lci} gorenstein={loc.is_gorenstein}")
    if report.equality != report.lci_all:
        out.append(f"equivalence: equality={report.equality} but lci={report.lci_all}")
    if all(loc.multiplicity <= 2 for loc in report.base.locals) and not report.equality:
        out.append("small-length rule: all local lengths <= 2 but the bound is strict")
    for b in report.bezout_check:
        if b != expected:
            out.append(f"bezout: length {b} != {expected}")
    return out


def analyze(f, trials=5, seed=0, max_ext=4, sample_ext=None, bezout=True):
    delta, base = base_locus(f, max_ext, seed)
    bound = f.d**f.n - delta
    deg, samples = degree_exact(f, trials, seed, sample_ext, bezout=bezout)
    lci = all(loc.is_lci for loc in base.locals)
    gor = all(loc.is_gorenstein for loc in base.locals)
    bez = [s.bezout for s in samples if s.bezout is not None]
    report = DegreeReport(f, delta, bound, base, lci, gor, deg, samples, bez)
    report.violations = check_invariants(report)
    return report


# -- brute-force oracle -------------------------------------------------------

def projective_points(E, n1):
    """Normalized representatives of P^{n1-1}(E): last nonzero coordinate is 1."""
    for i in range(n1):
        for head in product(range(E.q), repeat=i):
            yield tuple(head) + (1,) + (0,) * (n1 - 1 - i)


def _eval_terms(E, terms, Q):
    acc = 0
    for m, c in terms:
        t = c
        for v, e in zip(Q, m):
            if e:
                t = E.mul(t, E.pow(v, e))
        acc = E.add(acc, t)
    return acc


def _proportional(E, a, b):
    n = len(a)
    for i in range(n):
        for j in range(i + 1, n):
            if E.sub(E.mul(a[i], b[j]), E.mul(a[j], b[i])):
                return False
    return True


def preimage_count(f, P):
    """Number of points Q of P^n over the field of P, outside the base locus,
    with f(Q) = P.  ``f`` must be defined over that field."""
    E = f.field
    vals = [c.value for c in P]
    if E.degree == 1 and E.p < 2**31:
        return _preimage_count_numpy(f, vals)
    terms = [list(F.terms.items()) for F in f.components]
    count = 0
    for Q in projective_points(E, f.ring.nvars):
        img = [_eval_terms(E, t, Q) for t in terms]
        if any(img) and _proportional(E, img, vals):
            count += 1
    return count


def _preimage_count_numpy(f, vals):
    import numpy as np

    p = f.field.p
    n1 = f.ring.nvars
    count = 0
    for i in range(n1):
        if i:
            grids = np.meshgrid(*[np.arange(p, dtype=np.int64)] * i, indexing="ij")
            head = [g.ravel() for g in grids]
        else:
            head = []
        size = p**i
        cols = head + [np.ones(size, dtype=np.int64)] + [np.zeros(size, dtype=np.int64)] * (n1 - 1 - i)
        img = []
        for F in f.components:
            acc = np.zeros(size, dtype=np.int64)
            for m, c in F.terms.items():
                t = np.full(size, c, dtype=np.int64)
                for col, e in zip(cols, m):
                    for _ in range(e):
                        t = (t * col) % p
                acc = (acc + t) % p
            img.append(acc)
        defined = np.zeros(size, dtype=bool)
        for a in img:
            defined |= a != 0
        ok = defined
        for a in range(n1):
            for b in range(a + 1, n1):
                ok &= (img[a] * vals[b] - img[b] * vals[a]) % p == 0
        count += int(ok.sum())
    return count


# -- census -------------------------------------------------------------------

@dataclass
class CensusRow:
    index: int
    seed: str
    delta: int = None
    bound: int = None
    degree: int = None
    lci: bool = None
    gorenstein: bool = None
    equality: bool = None
    max_local_length: int = None
    bezout: list = None
    redraws: int = 0
    violations: list = field(default_factory=list)
    error: str = None
    map: list = None

    def to_dict(self):
        return {
            "index": self.index,
            "delta": self.delta,
            "bound": self.bound,
            "degree": self.degree,
            "lci": self.lci,
            "gorenstein": self.gorenstein,
            "equality": self.equality,
            "max_local_length": self.max_local_length,
            "bezout": self.bezout,
            "redraws": self.redraws,
            "violations": self.violations,
            "error": self.error,
            "map": self.map,
        }


MAX_REDRAWS = 1000


def random_map(ring, d, rng):
    """A random degree-d map with finite base locus (redrawing as needed)."""
    for draws in range(MAX_REDRAWS):
        comps = [random_poly(ring, d, rng) for _ in range(ring.nvars)]
        try:
            return new_map(comps, ring), draws
        except PositiveDimensionalBaseLocus:
            continue
    raise PositiveDimensionalBaseLocus(f"no valid map in {MAX_REDRAWS} draws")


def census_row(n, d, F, seed, index, trials=5, max_ext=4):
    row_seed = f"census:{seed}:{index}"
    rng = random.Random(row_seed)
    names = [f"X{i}" for i in range(n + 1)]
    ring = PolyRing(F, names)
    row = CensusRow(index, row_seed)
    redraws = 0
    for _ in range(MAX_REDRAWS):
        f, k = random_map(ring, d, rng)
        redraws += k
        try:
            rep = analyze(f, trials=trials, seed=rng.randrange(2**32), max_ext=max_ext)
        except PositiveDimensionalFiber:
            redraws += 1
            continue
        except RatdegError as exc:
            row.error = f"{exc.kind}: {exc}"
            row.map = [str(c) for c in f.components]
            row.redraws = redraws
            return row
        row.delta, row.bound, row.degree = rep.delta, rep.bound, rep.degree_exact
        row.lci, row.gorenstein, row.equality = rep.lci_all, rep.gorenstein_all, rep.equality
        row.max_local_length = max((loc.multiplicity for loc in rep.base.locals), default=0)
        row.bezout = rep.bezout_check
        row.violations = rep.violations
        row.redraws = redraws
        row.map = [str(c) for c in f.components]
        return row
    row.error = "NoValidSource: no dominant map drawn"
    return row


def _census_task(args):
    return census_row(*args)


@dataclass
class CensusResult:
    n: int
    d: int
    field: object
    seed: int
    rows: list

    @property
    def violations(self):
        return [r for r in self.rows if r.violations]

    @property
    def errors(self):
        return [r for r in self.rows if r.error]

    def aggregate(self):
        ok = [r for r in self.rows if r.error is None]
        hist = {}
        for r in ok:
            key = f"delta={r.delta},degree={r.degree}"
            hist[key] = hist.get(key, 0) + 1
        return {
            "rows": len(self.rows),
            "analyzed": len(ok),
            "equality": sum(1 for r in ok if r.equality),
            "strict": sum(1 for r in ok if not r.equality),
            "violations": len(self.violations),
            "errors": len(self.errors),
            "redraws": sum(r.redraws for r in self.rows),
            "histogram": dict(sorted(hist.items())),
        }

    def to_dict(self):
        return {
            "n": self.n,
            "d": self.d,
            "field": self.field.spec(),
            "seed": self.seed,
            "aggregate": self.aggregate(),
            "rows": [r.to_dict() for r in self.rows],
        }


def census(n, d, F, count, seed=0, trials=5, max_ext=4, workers=1):
    """Analyse ``count`` seeded random degree-d maps of P^n over F.

    Maps with a positive-dimensional base locus or positive-dimensional
    fibers are redrawn.  Row i depends only on (seed, i), so the table is the
    same for any number of workers.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    tasks = [(n, d, F, seed, i, trials, max_ext) for i in range(count)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_census_task, tasks))
    else:
        rows = [_census_task(t) for t in tasks]
    return CensusResult(n, d, F, seed, rows)


CSV_FIELDS = ["index", "delta", "bound", "degree", "lci", "gorenstein", "equality", "max_local_length", "redraws", "violations", "error"]


def census_csv(result):
    import csv
    import io

    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_FIELDS)
    for r in result.rows:
        d = r.to_dict()
        d["violations"] = "; ".join(r.violations)
        w.writerow(["" if d[k] is None else d[k] for k in CSV_FIELDS])
    return buf.getvalue()
