"""Groebner bases and the ideal operations built on them.

Buchberger's algorithm with the Gebauer-Moeller pair criteria (which contain
the product and chain criteria), normal selection, and a final
auto-reduction.  Everything else (saturation, intersection, elimination,
Hilbert functions, dimensions) is derived from reduced bases.
"""

import os
from itertools import combinations

from .errors import (
    ComputationBudgetExceeded,
    NotHomogeneous,
    NotZeroDimensional,
    PositiveDimensional,
    RingMismatch,
)
from .field import PrimeField
from .poly import (
    GREVLEX,
    Poly,
    PolyRing,
    block,
    is_homogeneous,
    mono_divides,
    mono_lcm,
    monomials_of_degree,
    ZERO_DEGREE,
)

DEFAULT_BUDGET = 100_000
_budget_override = None


def set_default_budget(budget):
    """Override the S-pair budget for this process (None restores the default)."""
    global _budget_override
    _budget_override = budget


def default_budget():
    if _budget_override is not None:
        return _budget_override
    raw = os.environ.get("RATDEG_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


# -- reduction kernels -------------------------------------------------------

def _reduce(terms, basis, ring):
    """Full reduction of a term dict by ``basis`` (list of (lm, monic terms))."""
    key = ring.key
    F = ring.field
    f = dict(terms)
    rem = {}
    prime = isinstance(F, PrimeField)
    p = F.p
    while f:
        m = max(f, key=key)
        c = f[m]
        for lm, g in basis:
            for x, y in zip(lm, m):
                if x > y:
                    break
            else:
                q = tuple(y - x for x, y in zip(lm, m))
                if prime:
                    for gm, gc in g.items():
                        mm = tuple(a + b for a, b in zip(gm, q))
                        v = (f.get(mm, 0) - c * gc) % p
                        if v:
                            f[mm] = v
                        else:
                            f.pop(mm, None)
                else:
                    for gm, gc in g.items():
                        mm = tuple(a + b for a, b in zip(gm, q))
                        v = F.sub(f.get(mm, 0), F.mul(c, gc))
                        if v:
                            f[mm] = v
                        else:
                            f.pop(mm, None)
                break
        else:
            rem[m] = c
            del f[m]
    return rem


def _monic(terms, ring):
    key = ring.key
    lm = max(terms, key=key)
    F = ring.field
    inv = F.inv(terms[lm])
    if inv == 1:
        return lm, dict(terms)
    return lm, {m: F.mul(c, inv) for m, c in terms.items()}


def _spoly(a, b, ring):
    lma, fa = a
    lmb, fb = b
    L = mono_lcm(lma, lmb)
    qa = tuple(x - y for x, y in zip(L, lma))
    qb = tuple(x - y for x, y in zip(L, lmb))
    F = ring.field
    out = {}
    for m, c in fa.items():
        out[tuple(x + y for x, y in zip(m, qa))] = c
    for m, c in fb.items():
        mm = tuple(x + y for x, y in zip(m, qb))
        v = F.sub(out.get(mm, 0), c)
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _buchberger(polys, ring, budget):
    key = ring.key
    store = []  # (lm, terms) for every polynomial ever added
    active = []
    pairs = []  # (lcm, i, j)

    def update(h):
        nonlocal active, pairs
        lmh = store[h][0]
        C = list(active)
        D = []
        while C:
            g1 = C.pop(0)
            lm1 = store[g1][0]
            L1 = mono_lcm(lmh, lm1)
            if _coprime(lmh, lm1):
                D.append(g1)
                continue
            if any(mono_divides(mono_lcm(lmh, store[g2][0]), L1) for g2 in C):
                continue
            if any(mono_divides(mono_lcm(lmh, store[g2][0]), L1) for g2 in D):
                continue
            D.append(g1)
        E = [(mono_lcm(lmh, store[g][0]), g, h) for g in D if not _coprime(lmh, store[g][0])]
        kept = []
        for L, i, j in pairs:
            if (
                mono_divides(lmh, L)
                and mono_lcm(store[i][0], lmh) != L
                and mono_lcm(store[j][0], lmh) != L
            ):
                continue
            kept.append((L, i, j))
        pairs = kept + E
        active = [g for g in active if not mono_divides(lmh, store[g][0])] + [h]

    for terms in sorted(polys, key=lambda t: key(max(t, key=key))):
        basis = [store[i] for i in active]
        r = _reduce(terms, basis, ring)
        if not r:
            continue
        store.append(_monic(r, ring))
        if sum(store[-1][0]) == 0:
            return [store[-1]]
        update(len(store) - 1)
    processed = 0
    while pairs:
        idx = min(range(len(pairs)), key=lambda t: key(pairs[t][0]))
        _, i, j = pairs.pop(idx)
        processed += 1
        if processed > budget:
            raise ComputationBudgetExceeded(f"more than {budget} S-pairs in one Groebner basis computation")
        s = _spoly(store[i], store[j], ring)
        if not s:
            continue
        r = _reduce(s, [store[a] for a in active], ring)
        if not r:
            continue
        store.append(_monic(r, ring))
        if sum(store[-1][0]) == 0:
            return [store[-1]]
        update(len(store) - 1)

    basis = sorted((store[i] for i in active), key=lambda t: key(t[0]))
    minimal = []
    for lm, f in basis:
        if not any(mono_divides(g[0], lm) for g in minimal):
            minimal.append((lm, f))
    if any(sum(lm) == 0 for lm, _ in minimal):
        return [lm_f for lm_f in minimal if sum(lm_f[0]) == 0]
    reduced = []
    for idx, (lm, f) in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1 :]
        tail = dict(f)
        c = tail.pop(lm)
        r = _reduce(tail, others, ring)
        r[lm] = c
        reduced.append(_monic(r, ring))
    return reduced


# -- Groebner basis object ---------------------------------------------------

class GroebnerBasis:
    """A reduced Groebner basis; ``elements`` sorted by decreasing leading monomial."""

    def __init__(self, ring, pairs):
        self.ring = ring
        self.order = ring.order
        pairs = sorted(pairs, key=lambda t: ring.key(t[0]), reverse=True)
        self._pairs = pairs
        self.elements = tuple(Poly(ring, f) for _, f in pairs)
        self.leading_monomials = tuple(lm for lm, _ in pairs)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(str(g) for g in self.elements)}], {self.order})"

    def is_unit(self):
        return any(sum(lm) == 0 for lm in self.leading_monomials)

    def is_zero(self):
        return not self.elements

    def _check(self, f):
        if not f.ring.compatible(self.ring):
            raise RingMismatch(f"{f.ring} vs {self.ring}")

    def normal_form(self, f):
        self._check(f)
        return Poly(self.ring, _reduce(f.terms, self._pairs, self.ring))

    def reduce_terms(self, terms):
        return _reduce(terms, self._pairs, self.ring)

    def contains(self, f):
        return not self.normal_form(f).terms

    def s_polynomials_reduce_to_zero(self):
        for a, b in combinations(self._pairs, 2):
            s = _spoly(a, b, self.ring)
            if s and _reduce(s, self._pairs, self.ring):
                return False
        return True

    def is_reduced(self):
        for i, (lm, f) in enumerate(self._pairs):
            if self.ring.field.inv(f[lm]) != 1:
                return False
            others = [g[0] for j, g in enumerate(self._pairs) if j != i]
            for m in f:
                if any(mono_divides(o, m) for o in others):
                    return False
        return True

    def is_standard(self, m):
        return not any(mono_divides(lm, m) for lm in self.leading_monomials)

    def is_zero_dimensional(self):
        if self.is_unit():
            return True
        n = self.ring.nvars
        pure = set()
        for lm in self.leading_monomials:
            nz = [i for i, e in enumerate(lm) if e]
            if len(nz) == 1:
                pure.add(nz[0])
        return len(pure) == n

    def standard_monomials(self):
        """All standard monomials of a zero-dimensional basis, ascending."""
        if not self.is_zero_dimensional():
            raise NotZeroDimensional("quotient ring is infinite-dimensional")
        if self.is_unit():
            return []
        n = self.ring.nvars
        start = (0,) * n
        seen = {start}
        frontier = [start]
        while frontier:
            nxt = []
            for m in frontier:
                for i in range(n):
                    mm = m[:i] + (m[i] + 1,) + m[i + 1 :]
                    if mm not in seen and self.is_standard(mm):
                        seen.add(mm)
                        nxt.append(mm)
            frontier = nxt
        return sorted(seen, key=self.ring.key)


def groebner(I, order=None, budget=None):
    """Reduced Groebner basis of an :class:`Ideal` (or list of polys)."""
    if not isinstance(I, Ideal):
        I = Ideal(I)
    return I.groebner(order, budget)


def normal_form(f, G):
    return G.normal_form(f)


# -- ideals -------------------------------------------------------------------

class Ideal:
    def __init__(self, gens, ring=None):
        gens = list(gens)
        if ring is None:
            if not gens:
                raise ValueError("an ideal with no generators needs an explicit ring")
            ring = gens[0].ring
        for g in gens:
            if not g.ring.compatible(ring):
                raise RingMismatch(f"generator in {g.ring}, ideal in {ring}")
        self.ring = ring
        self.gens = tuple(g if g.ring == ring else g.to_ring(ring) for g in gens if g.terms)
        self._gb = {}

    def __repr__(self):
        return f"Ideal({', '.join(str(g) for g in self.gens)})"

    def groebner(self, order=None, budget=None):
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            ring = self.ring if order == self.ring.order else self.ring.with_order(order)
            pairs = _buchberger([g.terms for g in self.gens], ring, budget or default_budget())
            gb = self._gb[order] = GroebnerBasis(ring, pairs)
        return gb

    def _set_groebner(self, gb):
        self._gb[gb.order] = gb

    def contains(self, f):
        return self.groebner().contains(f)

    def __contains__(self, f):
        return self.contains(f)

    def is_unit(self):
        return self.groebner().is_unit()

    def is_homogeneous(self):
        return all(is_homogeneous(g) is not None for g in self.gens)

    def equals(self, other):
        """Ideal equality by mutual membership of generators."""
        return all(other.contains(g) for g in self.gens) and all(self.contains(g) for g in other.gens)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.equals(other)

    __hash__ = object.__hash__

    def __add__(self, other):
        return Ideal(self.gens + tuple(other.gens), self.ring)

    def to_ring(self, ring, embed=None):
        return Ideal([g.to_ring(ring, embed) for g in self.gens], ring)


def unit_ideal(ring):
    return Ideal([ring.one()], ring)


def _fresh_name(names, stem="_t"):
    name = stem
    while name in names:
        name += "_"
    return name


def _prepend_var(ring):
    """Ring with one new variable in front and an order eliminating it."""
    name = _fresh_name(ring.names)
    return PolyRing(ring.field, (name,) + ring.names, block(1))


def _lift(f, ring_t):
    return Poly(ring_t, {(0,) + m: c for m, c in f.terms.items()})


def _drop_first(pairs, ring):
    out = []
    for lm, f in pairs:
        if lm[0] == 0:
            out.append((lm[1:], {m[1:]: c for m, c in f.items()}))
    return out


def _from_elimination(gb_t, ring):
    """Ideal of the t-free part of an elimination basis, with its GB cached."""
    pairs = _drop_first(gb_t._pairs, ring)
    ideal = Ideal([Poly(ring, f) for _, f in pairs], ring)
    # the t-free part is reduced for grevlex on the remaining variables
    ideal._set_groebner(GroebnerBasis(ring if ring.order == GREVLEX else ring.with_order(GREVLEX), pairs))
    return ideal


def saturate(I, g, budget=None):
    """``I : g^infinity`` via elimination of t from ``I + (1 - t g)``."""
    if g.is_zero():
        raise ValueError("saturation by the zero polynomial")
    if not g.ring.compatible(I.ring):
        raise RingMismatch(f"{g.ring} vs {I.ring}")
    var = _single_variable(g)
    if var is not None and I.is_homogeneous():
        return _saturate_variable(I, var, budget)
    return _saturate_eliminate(I, g, budget)


def _saturate_eliminate(I, g, budget=None):
    R = I.ring
    T = _prepend_var(R)
    t = T.var(0)
    gens = [_lift(f, T) for f in I.gens]
    gens.append(T.one() - t * _lift(g, T))
    gb = Ideal(gens, T).groebner(budget=budget)
    return _from_elimination(gb, R)


def _single_variable(g):
    """Index i when g is a nonzero scalar times x_i, else None."""
    if len(g.terms) != 1:
        return None
    (m,) = g.terms
    if sum(m) != 1:
        return None
    return m.index(1)


def _saturate_variable(I, i, budget=None):
    """Homogeneous ``I : x_i^infinity`` by Bayer's trick: grevlex with x_i last,
    then strip the largest power of x_i from each basis element."""
    R = I.ring
    n = R.nvars
    perm = [j if j < i else (j - 1 if j > i else n - 1) for j in range(n)]
    names = [None] * n
    for j, name in enumerate(R.names):
        names[perm[j]] = name
    P = PolyRing(R.field, names, GREVLEX)
    J = Ideal([g.to_ring(P, perm=perm) for g in I.gens], P)
    gb = J.groebner(budget=budget)
    inverse = [perm.index(j) for j in range(n)]
    out = []
    for f in gb.elements:
        k = min(m[-1] for m in f.terms)
        if k:
            f = Poly(P, {m[:-1] + (m[-1] - k,): c for m, c in f.terms.items()})
        out.append(f.to_ring(R, perm=inverse))
    return Ideal(out, R)


def intersect(I, J, budget=None):
    """``I`` cap ``J`` via elimination of t from ``t I + (1 - t) J``."""
    if not I.ring.compatible(J.ring):
        raise RingMismatch(f"{I.ring} vs {J.ring}")
    R = I.ring
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    T = _prepend_var(R)
    t = T.var(0)
    gens = [t * _lift(f, T) for f in I.gens] + [(T.one() - t) * _lift(f, T) for f in J.gens]
    gb = Ideal(gens, T).groebner(budget=budget)
    return _from_elimination(gb, R)


def saturate_irrelevant(I, budget=None):
    """Saturation by the irrelevant ideal, as the intersection of ``I : x_i^inf``."""
    if not I.is_homogeneous():
        raise NotHomogeneous("saturation by the irrelevant ideal needs a homogeneous ideal")
    R = I.ring
    if not I.gens:
        return I
    pieces = []
    for i in range(R.nvars):
        S = _saturate_variable(I, i, budget)
        if not S.is_unit():
            pieces.append(S)
    if not pieces:
        return unit_ideal(R)
    result = pieces[0]
    for S in pieces[1:]:
        result = intersect(result, S, budget)
    return result


def saturate_by_ideal(I, J, budget=None):
    """``I : J^infinity`` as the intersection of the saturations by J's generators."""
    pieces = [saturate(I, g, budget) for g in J.gens]
    pieces = [S for S in pieces if not S.is_unit()]
    if not pieces:
        return unit_ideal(I.ring)
    result = pieces[0]
    for S in pieces[1:]:
        result = intersect(result, S, budget)
    return result


def eliminate(I, keep, budget=None):
    """``I`` intersected with the subring in the variables ``keep`` (indices).

    Returns an ideal of the original ring whose generators only involve the
    kept variables.
    """
    R = I.ring
    n = R.nvars
    drop = [i for i in range(n) if i not in keep]
    if not drop:
        return I
    order = drop + [i for i in range(n) if i in keep]
    perm = [order.index(j) for j in range(n)]
    names = [R.names[j] for j in order]
    P = PolyRing(R.field, names, block(len(drop)))
    gb = Ideal([g.to_ring(P, perm=perm) for g in I.gens], P).groebner(budget=budget)
    inverse = order
    out = []
    for lm, f in gb._pairs:
        if all(lm[k] == 0 for k in range(len(drop))):
            out.append(Poly(P, f).to_ring(R, perm=inverse))
    return Ideal(out, R)


# -- numerical invariants ----------------------------------------------------

def krull_dim(I):
    """Krull dimension of R/I; -1 for the unit ideal."""
    gb = I.groebner()
    if gb.is_unit():
        return -1
    n = I.ring.nvars
    lms = gb.leading_monomials
    supports = [frozenset(i for i, e in enumerate(m) if e) for m in lms]
    for size in range(n, -1, -1):
        for S in combinations(range(n), size):
            S = frozenset(S)
            if not any(sup <= S for sup in supports):
                return size
    return 0


def vs_dimension(I):
    """Dimension of R/I over the ground field (number of standard monomials)."""
    gb = I.groebner()
    if not gb.is_zero_dimensional():
        raise NotZeroDimensional(f"{I} does not have a finite-dimensional quotient")
    return len(gb.standard_monomials())


def standard_basis(I):
    return I.groebner().standard_monomials()


def hilbert_function(gb, D):
    """Number of standard monomials of degree D for a homogeneous basis."""
    n = gb.ring.nvars
    lms = [lm for lm in gb.leading_monomials if sum(lm) <= D]
    return sum(1 for m in monomials_of_degree(n, D) if not any(mono_divides(lm, m) for lm in lms))


def hilbert_length(I, budget=None):
    """Length of the projective scheme of a saturated homogeneous ideal.

    The Hilbert function is evaluated degree by degree until three
    consecutive values agree; the cap is ``(n+1) * d_max + 2``.
    """
    if not I.is_homogeneous():
        raise NotHomogeneous("hilbert_length needs a homogeneous ideal")
    gb = I.groebner(GREVLEX, budget)
    if gb.is_unit():
        return 0
    if krull_dim(_with_gb(I, gb)) > 1:
        raise PositiveDimensional("projective scheme has positive dimension")
    n = I.ring.nvars
    dmax = max((sum(lm) for lm in gb.leading_monomials), default=0)
    dmax = max(dmax, max((f.total_degree() for f in gb.elements), default=0), 1)
    cap = n * dmax + 2
    vals = []
    for D in range(cap + 1):
        vals.append(hilbert_function(gb, D))
        if len(vals) >= 3 and vals[-1] == vals[-2] == vals[-3]:
            return vals[-1]
    raise PositiveDimensional(f"Hilbert function still moving at degree cap {cap}: {vals[-3:]}")


def _with_gb(I, gb):
    J = Ideal(gb.elements, gb.ring)
    J._set_groebner(gb)
    return J


def homogeneous_degree_of(f):
    d = is_homogeneous(f)
    return None if d is ZERO_DEGREE else d
