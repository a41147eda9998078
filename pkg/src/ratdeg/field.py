"""Prime fields F_p and extension fields F_{p^k}.

Elements are encoded as plain ints so that polynomial and matrix code can
store them in dicts and lists without wrapper objects:

* in F_p an element is its residue ``0 <= a < p``;
* in F_{p^k} = F_p[w]/(m(w)) the element ``c_0 + c_1 w + ... + c_{k-1} w^{k-1}``
  is encoded as ``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.

With this encoding the prime subfield embeds into every extension as the
identity on ints ``0..p-1``, which is what lets a polynomial over F_p be
reread over F_{p^k} without touching its coefficients.

:class:`FieldElement` is the user-facing wrapper with arithmetic operators.
"""

import random
from functools import lru_cache

from . import upoly
from .errors import (
    DegreeTooLarge,
    DivisionByZero,
    FieldTooLarge,
    NotIrreducible,
    NotPrime,
    ParseError,
    RingMismatch,
)

MAX_WORD = 2**63
MAX_EXT_DEGREE = 12
MAX_ENUMERATE = 10**6
_MUL_TABLE_LIMIT = 2**16
_ADD_TABLE_LIMIT = 1024

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class FiniteField:
    """Shared interface of :class:`PrimeField` and :class:`ExtField`."""

    p: int
    degree: int
    q: int

    @property
    def char(self):
        return self.p

    @property
    def prime_field(self):
        return PrimeField(self.p)

    def __call__(self, value):
        if isinstance(value, FieldElement):
            if value.field != self:
                raise RingMismatch(f"element of {value.field} used in {self}")
            return value
        return FieldElement(self, self.from_int(value))

    def from_int(self, n):
        return n % self.p

    def zero(self):
        return FieldElement(self, 0)

    def one(self):
        return FieldElement(self, 1)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def random(self, rng):
        return rng.randrange(self.q)

    def random_element(self, rng):
        return FieldElement(self, self.random(rng))

    def elements(self):
        """All field elements as encoded ints, in increasing encoding order."""
        if self.q > MAX_ENUMERATE:
            raise FieldTooLarge(f"|{self}| = {self.q} exceeds {MAX_ENUMERATE}")
        return range(self.q)

    def enumerate(self):
        return [FieldElement(self, a) for a in self.elements()]

    def frobenius(self, a):
        return self.pow(a, self.p)


class PrimeField(FiniteField):
    """The field Z/pZ for a machine-word prime p."""

    degree = 1

    def __init__(self, p):
        if not isinstance(p, int) or p >= MAX_WORD or not is_prime(p):
            raise NotPrime(f"{p} is not a machine-word prime")
        self.p = p
        self.q = p

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def spec(self):
        return str(self.p)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        if e < 0:
            return pow(self.inv(a), -e, self.p)
        return pow(a, e, self.p)

    @property
    def minimal_poly(self):
        return (0, 1)

    def format(self, a):
        return str(a)


def _is_irreducible(F, f):
    k = upoly.degree(f)
    if k < 1:
        return False
    if k == 1:
        return True
    if any(upoly.evaluate(F, f, a) == 0 for a in range(F.q)):
        return False
    x = [0, 1]
    h = x
    for _ in range(k // 2):
        h = upoly.powmod(F, h, F.q, f)
        if upoly.degree(upoly.gcd(F, f, upoly.sub(F, h, x))) > 0:
            return False
    return True


class ExtField(FiniteField):
    """F_p[w]/(m(w)) for a monic irreducible m of degree k."""

    gen_name = "w"

    def __init__(self, p, minimal_poly):
        base = PrimeField(p)
        m = upoly.trim([c % p for c in minimal_poly])
        k = upoly.degree(m)
        if k < 1 or m[-1] != 1:
            raise NotIrreducible("minimal polynomial must be monic of degree >= 1")
        if k > MAX_EXT_DEGREE:
            raise DegreeTooLarge(f"extension degree {k} exceeds {MAX_EXT_DEGREE}")
        if not _is_irreducible(base, m):
            raise NotIrreducible(f"{m} is reducible over GF({p})")
        self.p = p
        self.degree = k
        self.q = p**k
        self.minimal_poly = tuple(m)
        self._base = base
        self._exp = self._log = self._addt = None
        if self.q <= _MUL_TABLE_LIMIT:
            self._build_mul_tables()
        if p != 2 and self.q <= _ADD_TABLE_LIMIT:
            q = self.q
            self._addt = [self._add_slow(a, b) for a in range(q) for b in range(q)]

    def __eq__(self, other):
        return isinstance(other, ExtField) and other.p == self.p and other.minimal_poly == self.minimal_poly

    def __hash__(self):
        return hash(("F", self.p, self.minimal_poly))

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def spec(self):
        return f"{self.p}^{self.degree}"

    # -- encoding ---------------------------------------------------------
    def decode(self, a):
        p = self.p
        out = []
        for _ in range(self.degree):
            a, r = divmod(a, p)
            out.append(r)
        return out

    def encode(self, vec):
        a = 0
        for c in reversed(vec):
            a = a * self.p + (c % self.p)
        return a

    def generator(self):
        """The class of w (encoded as p when k > 1)."""
        return self.encode([0, 1]) if self.degree > 1 else self.encode([-self.minimal_poly[0]])

    # -- slow-path arithmetic --------------------------------------------
    def _add_slow(self, a, b):
        p = self.p
        out, mult = 0, 1
        for _ in range(self.degree):
            a, ra = divmod(a, p)
            b, rb = divmod(b, p)
            out += ((ra + rb) % p) * mult
            mult *= p
        return out

    def _mul_slow(self, a, b):
        F = self._base
        prod = upoly.mul(F, upoly.trim(self.decode(a)), upoly.trim(self.decode(b)))
        return self.encode(upoly.mod(F, prod, list(self.minimal_poly)))

    def _build_mul_tables(self):
        q = self.q
        order = q - 1
        factors = _prime_factors(order)
        for g in range(2, q) if q > 2 else [1]:
            if all(self._pow_slow(g, order // r) != 1 for r in factors):
                break
        exp = [0] * (2 * order)
        log = [0] * q
        x = 1
        for i in range(order):
            exp[i] = x
            log[x] = i
            x = self._mul_slow(x, g)
        for i in range(order, 2 * order):
            exp[i] = exp[i - order]
        self._exp, self._log = exp, log

    def _pow_slow(self, a, e):
        result = 1
        while e:
            if e & 1:
                result = self._mul_slow(result, a)
            e >>= 1
            if e:
                a = self._mul_slow(a, a)
        return result

    # -- public arithmetic -----------------------------------------------
    def add(self, a, b):
        if self.p == 2:
            return a ^ b
        if self._addt is not None:
            return self._addt[a * self.q + b]
        return self._add_slow(a, b)

    def neg(self, a):
        if self.p == 2 or a == 0:
            return a
        p = self.p
        out, mult = 0, 1
        while a:
            a, r = divmod(a, p)
            out += ((-r) % p) * mult
            mult *= p
        return out

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._mul_slow(a, b)

    def inv(self, a):
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self}")
        if self._exp is not None:
            return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]
        return self._pow_slow(a, self.q - 2)

    def from_int(self, n):
        return n % self.p

    def format(self, a):
        vec = self.decode(a)
        terms = []
        for i in reversed(range(self.degree)):
            c = vec[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                mono = self.gen_name if i == 1 else f"{self.gen_name}^{i}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(terms) if terms else "0"


@lru_cache(maxsize=None)
def make_ext_field(p, k, seed=0):
    """F_{p^k} built from the first irreducible among seeded random candidates.

    ``k == 1`` returns the :class:`PrimeField` itself, so that F_p built this
    way shares element encoding and equality with ``PrimeField(p)``.
    """
    if not isinstance(p, int) or not is_prime(p) or p >= MAX_WORD:
        raise NotPrime(f"{p} is not a machine-word prime")
    if not isinstance(k, int) or k < 1:
        raise DegreeTooLarge(f"extension degree must be a positive integer, got {k}")
    if k > MAX_EXT_DEGREE:
        raise DegreeTooLarge(f"extension degree {k} exceeds {MAX_EXT_DEGREE}")
    if k == 1:
        return PrimeField(p)
    F = PrimeField(p)
    rng = random.Random(f"irreducible:{p}:{k}:{seed}")
    while True:
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible(F, cand):
            return ExtField(p, cand)


def extension(F, j, seed=0):
    """Return ``(E, embed)`` with E of degree ``j`` over ``F``.

    ``embed`` maps encoded elements of F to encoded elements of E and is a
    ring homomorphism.
    """
    if j == 1:
        return F, _identity
    E = make_ext_field(F.p, F.degree * j, seed)
    if F.degree == 1:
        return E, _identity
    # image of F's generator: any root of its minimal polynomial in E
    beta = upoly.roots(E, list(F.minimal_poly))[0]
    powers = [1]
    for _ in range(F.degree - 1):
        powers.append(E.mul(powers[-1], beta))
    cache = {}

    def embed(a):
        r = cache.get(a)
        if r is None:
            r = 0
            for c, bp in zip(F.decode(a), powers):
                if c:
                    r = E.add(r, E.mul(c, bp))
            cache[a] = r
        return r

    return E, embed


def _identity(a):
    return a


def field_from_spec(text, seed=0):
    """Parse ``"p"`` or ``"p^k"`` into a field."""
    raw = text.strip()
    try:
        if "^" in raw:
            a, b = raw.split("^", 1)
            p, k = int(a.strip()), int(b.strip())
        else:
            p, k = int(raw), 1
    except ValueError:
        raise ParseError(f"bad field spec {text!r}") from None
    if p < 2:
        raise NotPrime(f"{p} is not prime")
    return make_ext_field(p, k, seed)


class FieldElement:
    """An element of a finite field with the usual operators."""

    __slots__ = ("field", "value")

    def __init__(self, field, value):
        self.field = field
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise RingMismatch(f"cannot combine elements of {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.div(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, e):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field!r}({self.field.format(self.value)})"

    def __str__(self):
        return self.field.format(self.value)


def invert(a):
    """Multiplicative inverse of a :class:`FieldElement`."""
    return a.inverse()


def enumerate_field(F):
    """Every element of ``F`` exactly once, in encoding order."""
    return F.enumerate()
