"""Sparse multivariate polynomials over finite fields.

A :class:`Poly` is a map from exponent tuples to nonzero field-encoded
ints, attached to a :class:`PolyRing` that fixes the field, the variable
names and the monomial order used for leading terms.
"""

from dataclasses import dataclass
from itertools import product

from .errors import ArityMismatch, NotHomogeneous, RingMismatch
from .field import FieldElement


@dataclass(frozen=True)
class MonomialOrder:
    """``lex``, ``grevlex`` or ``block``; ``block`` compares the first
    ``elim`` variables by grevlex, then the rest by grevlex."""

    kind: str = "grevlex"
    elim: int = 0

    def __post_init__(self):
        if self.kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.kind == "block" and self.elim < 1:
            raise ValueError("block order needs elim >= 1")

    def keyfunc(self):
        if self.kind == "lex":
            return tuple
        if self.kind == "grevlex":
            return _grevlex_key
        k = self.elim

        def key(m):
            return (_grevlex_key(m[:k]), _grevlex_key(m[k:]))

        return key

    def __str__(self):
        return f"block({self.elim})" if self.kind == "block" else self.kind


def _grevlex_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


LEX = MonomialOrder("lex")
GREVLEX = MonomialOrder("grevlex")


def block(elim):
    return MonomialOrder("block", elim)


class _ZeroDegree:
    """Homogeneity marker for the zero polynomial (homogeneous of every degree)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO_DEGREE"


ZERO_DEGREE = _ZeroDegree()


class PolyRing:
    def __init__(self, field, names, order=GREVLEX):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = order
        self._keyfunc = order.keyfunc()
        self._keys = {}

    def key(self, m):
        k = self._keys.get(m)
        if k is None:
            k = self._keys[m] = self._keyfunc(m)
        return k

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}; {self.order}]"

    def compatible(self, other):
        return self.field == other.field and self.names == other.names

    # -- constructors -----------------------------------------------------
    def zero(self):
        return Poly(self, {})

    def one(self):
        return self.const(1)

    def const(self, c):
        c = self._coef(c)
        return Poly(self, {(0,) * self.nvars: c} if c else {})

    def var(self, which):
        i = self.names.index(which) if isinstance(which, str) else which
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, c=1):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ArityMismatch(f"monomial {exps} in a ring with {self.nvars} variables")
        c = self._coef(c)
        return Poly(self, {exps: c} if c else {})

    def _coef(self, c):
        if isinstance(c, FieldElement):
            if c.field != self.field:
                raise RingMismatch(f"coefficient from {c.field} in {self}")
            return c.value
        return self.field.from_int(c)

    # -- derived rings ----------------------------------------------------
    def with_order(self, order):
        return PolyRing(self.field, self.names, order)

    def with_field(self, field):
        return PolyRing(field, self.names, self.order)

    def drop(self, i):
        names = self.names[:i] + self.names[i + 1 :]
        order = self.order if self.order.kind != "block" else GREVLEX
        return PolyRing(self.field, names, order)

    def monomials_of_degree(self, d):
        return list(monomials_of_degree(self.nvars, d))


def monomials_of_degree(n, d):
    """Exponent tuples of total degree ``d`` in ``n`` variables."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when monomial ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(b, a):
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms

    # -- coercion ---------------------------------------------------------
    def _other_terms(self, other):
        if isinstance(other, Poly):
            if other.ring is not self.ring and not self.ring.compatible(other.ring):
                raise RingMismatch(f"{other.ring} vs {self.ring}")
            return other.terms
        if isinstance(other, (int, FieldElement)):
            c = self.ring._coef(other)
            return {(0,) * self.ring.nvars: c} if c else {}
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        t = self._other_terms(other)
        if t is None:
            return NotImplemented
        F = self.ring.field
        out = dict(self.terms)
        for m, c in t.items():
            v = F.add(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        t = self._other_terms(other)
        if t is None:
            return NotImplemented
        F = self.ring.field
        out = dict(self.terms)
        for m, c in t.items():
            v = F.sub(out.get(m, 0), c)
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        t = self._other_terms(other)
        if t is None:
            return NotImplemented
        F = self.ring.field
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in t.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                v = F.add(out.get(m, 0), F.mul(c1, c2))
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c):
        """Multiply by a field-encoded int."""
        if c == 0:
            return self.ring.zero()
        F = self.ring.field
        return Poly(self.ring, {m: F.mul(v, c) for m, v in self.terms.items()})

    def mul_term(self, mono, c):
        F = self.ring.field
        return Poly(self.ring, {mono_mul(m, mono): F.mul(v, c) for m, v in self.terms.items()})

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        t = self._other_terms(other)
        if t is None:
            return NotImplemented
        return self.terms == t

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    # -- structure --------------------------------------------------------
    def lm(self):
        return max(self.terms, key=self.ring.key)

    def lc(self):
        return self.terms[self.lm()]

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def total_degree(self):
        return max((sum(m) for m in self.terms), default=-1)

    def coefficient(self, mono):
        return FieldElement(self.ring.field, self.terms.get(tuple(mono), 0))

    def variables(self):
        """Indices of variables that occur."""
        used = set()
        for m in self.terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    # -- maps between rings -----------------------------------------------
    def to_ring(self, ring, embed=None, perm=None):
        """Reinterpret in ``ring``; ``perm[i]`` is the new position of variable i."""
        if perm is None:
            if ring.nvars != self.ring.nvars:
                raise ArityMismatch(f"{self.ring} -> {ring}")
            terms = self.terms
        else:
            terms = {}
            for m, c in self.terms.items():
                e = [0] * ring.nvars
                for i, x in enumerate(m):
                    e[perm[i]] = x
                terms[tuple(e)] = c
        if embed is not None:
            terms = {m: embed(c) for m, c in terms.items()}
        elif ring.field != self.ring.field and self.ring.field.degree != 1:
            raise RingMismatch(f"no embedding given from {self.ring.field} to {ring.field}")
        elif perm is None:
            terms = dict(terms)
        return Poly(ring, terms)

    def evaluate(self, point):
        """Evaluate at a point whose coordinates are FieldElements or ints.

        Coordinates may lie in an extension of a prime coefficient field; the
        coefficients then embed by the identity on encodings.
        """
        if len(point) != self.ring.nvars:
            raise ArityMismatch(f"point of length {len(point)} for {self.ring.nvars} variables")
        F = self.ring.field
        target = F
        vals = []
        for a in point:
            if isinstance(a, FieldElement):
                if a.field != F:
                    if F.degree != 1 or a.field.p != F.p:
                        raise RingMismatch(f"cannot evaluate {self.ring} at a point of {a.field}")
                    target = a.field
                vals.append(a.value)
            else:
                vals.append(F.from_int(a))
        for a in point:
            if isinstance(a, FieldElement) and a.field != target:
                raise RingMismatch("point coordinates lie in different fields")
        E = target
        acc = 0
        for m, c in self.terms.items():
            t = c
            for v, e in zip(vals, m):
                if e:
                    t = E.mul(t, E.pow(v, e))
            acc = E.add(acc, t)
        return FieldElement(E, acc)

    def dehomogenize(self, i, ring=None):
        """Set variable ``i`` to 1; the result lives in the ring without it."""
        d = is_homogeneous(self)
        if d is None:
            raise NotHomogeneous(f"{self} is not homogeneous")
        ring = ring or self.ring.drop(i)
        F = ring.field
        out = {}
        for m, c in self.terms.items():
            mm = m[:i] + m[i + 1 :]
            v = F.add(out.get(mm, 0), c)
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return Poly(ring, out)

    def homogenize(self, ring, i, d=None):
        """Insert variable ``i`` of ``ring`` so that every term has degree ``d``."""
        if d is None:
            d = self.total_degree()
        out = {}
        for m, c in self.terms.items():
            k = d - sum(m)
            if k < 0:
                raise ValueError(f"cannot homogenize to degree {d} below the total degree")
            out[m[:i] + (k,) + m[i:]] = c
        return Poly(ring, out)

    def substitute(self, i, value):
        """Replace variable ``i`` by the field-encoded constant ``value``."""
        F = self.ring.field
        out = {}
        for m, c in self.terms.items():
            e = m[i]
            cc = F.mul(c, F.pow(value, e)) if e else c
            if not cc:
                continue
            mm = m[:i] + (0,) + m[i + 1 :]
            v = F.add(out.get(mm, 0), cc)
            if v:
                out[mm] = v
            else:
                out.pop(mm, None)
        return Poly(self.ring, out)

    def translate(self, shift):
        """``f(x + shift)`` for field-encoded shifts (one per variable)."""
        ring = self.ring
        n = ring.nvars
        F = ring.field
        # binomial expansions of (x_i + s_i)^e, cached per (i, e)
        cache = {}

        def expand(i, e):
            key = (i, e)
            if key not in cache:
                lin = Poly(ring, {tuple(1 if j == i else 0 for j in range(n)): 1})
                if shift[i]:
                    lin = lin + Poly(ring, {(0,) * n: shift[i]})
                cache[key] = lin**e
            return cache[key]

        out = ring.zero()
        for m, c in self.terms.items():
            t = Poly(ring, {(0,) * n: c})
            for i, e in enumerate(m):
                if e:
                    t = t * expand(i, e)
            out = out + t
        return out

    def truncate(self, degree):
        """Drop all terms of total degree ``>= degree``."""
        return Poly(self.ring, {m: c for m, c in self.terms.items() if sum(m) < degree})

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        F = self.ring.field
        names = self.ring.names
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (names[i] if e == 1 else f"{names[i]}^{e}") for i, e in enumerate(m) if e
            )
            cs = F.format(c)
            if " " in cs or "+" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)


def is_homogeneous(f):
    """Common total degree of all terms, ``None`` if mixed, ``ZERO_DEGREE`` for 0."""
    if not f.terms:
        return ZERO_DEGREE
    degs = {sum(m) for m in f.terms}
    return degs.pop() if len(degs) == 1 else None


def arith(a, b, op):
    """``op`` is one of ``"add"``, ``"sub"``, ``"mul"``."""
    if a.ring is not b.ring and not a.ring.compatible(b.ring):
        raise RingMismatch(f"{a.ring} vs {b.ring}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f, point):
    return f.evaluate(point)


def dehomogenize(f, i):
    return f.dehomogenize(i)


def random_poly(ring, degree, rng, homogeneous=True, density=1.0):
    """Seeded random polynomial; dense in the chosen degree(s) by default."""
    F = ring.field
    degs = [degree] if homogeneous else range(degree + 1)
    terms = {}
    for d in degs:
        for m in monomials_of_degree(ring.nvars, d):
            if density < 1.0 and rng.random() > density:
                continue
            c = F.random(rng)
            if c:
                terms[m] = c
    return Poly(ring, terms)


def all_exponents(n, max_deg):
    """All exponent tuples of total degree ``<= max_deg``."""
    return [m for m in product(range(max_deg + 1), repeat=n) if sum(m) <= max_deg]
