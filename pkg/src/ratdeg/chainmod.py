"""Finitely presented modules over truncated polynomial rings F_q[eps]/(eps^m).

These chain rings are local principal ideal rings: every nonzero element is a
unit times a power of eps, so matrices diagonalize (Smith form) and every
finitely presented module is a sum of cyclic modules R/(eps^a) and copies of
R.  Module invariants, kernels and transition matrices are all read off from
the Smith form.
"""

import random
from dataclasses import dataclass
from itertools import product

from . import linalg
from .errors import InvalidModuleData, NotGenerating, NotSurjective, VerificationFailed
from .field import field_from_spec


class ChainRing:
    """R = F[eps]/(eps^m); elements are tuples (c_0, ..., c_{m-1}) of encoded F elements."""

    def __init__(self, field, m):
        if isinstance(field, (int, str)):
            field = field_from_spec(str(field))
        if m < 2:
            raise InvalidModuleData("nilpotency order m must be at least 2")
        self.field = field
        self.m = m
        self.zero = (0,) * m
        self.one = (1,) + (0,) * (m - 1)

    def __eq__(self, other):
        return isinstance(other, ChainRing) and other.field == self.field and other.m == self.m

    def __hash__(self):
        return hash((self.field, self.m))

    def __repr__(self):
        return f"ChainRing({self.field.spec()}, m={self.m})"

    @property
    def size(self):
        return self.field.q**self.m

    def eps(self, a=1):
        """eps^a (zero when a >= m)."""
        if a >= self.m:
            return self.zero
        return tuple(1 if i == a else 0 for i in range(self.m))

    def const(self, c):
        return (self.field.from_int(c) if isinstance(c, int) else c,) + (0,) * (self.m - 1)

    def element(self, coeffs):
        coeffs = [self.field.from_int(c) for c in coeffs]
        if len(coeffs) > self.m:
            raise InvalidModuleData(f"{len(coeffs)} coefficients for m = {self.m}")
        return tuple(coeffs) + (0,) * (self.m - len(coeffs))

    def add(self, a, b):
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        F = self.field
        return tuple(F.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        F = self.field
        return tuple(F.neg(x) for x in a)

    def mul(self, a, b):
        F = self.field
        m = self.m
        out = [0] * m
        for i, x in enumerate(a):
            if x:
                for j in range(m - i):
                    y = b[j]
                    if y:
                        out[i + j] = F.add(out[i + j], F.mul(x, y))
        return tuple(out)

    def valuation(self, a):
        """Exponent of eps dividing a; m for zero."""
        for i, c in enumerate(a):
            if c:
                return i
        return self.m

    def is_unit(self, a):
        return a[0] != 0

    def is_nilpotent(self, a):
        return a[0] == 0

    def is_zero(self, a):
        return not any(a)

    def inv(self, a):
        if not a[0]:
            raise InvalidModuleData(f"{self.format(a)} is not a unit")
        F = self.field
        m = self.m
        c0 = F.inv(a[0])
        out = [c0] + [0] * (m - 1)
        for k in range(1, m):
            acc = 0
            for i in range(1, k + 1):
                if a[i] and out[k - i]:
                    acc = F.add(acc, F.mul(a[i], out[k - i]))
            out[k] = F.neg(F.mul(c0, acc))
        return tuple(out)

    def shift_down(self, a, v):
        """The canonical x with eps^v * x = a (top v coefficients set to zero)."""
        return tuple(a[v:]) + (0,) * v

    def divide(self, a, b):
        """Some x with b * x = a, or None if b does not divide a."""
        vb = self.valuation(b)
        va = self.valuation(a)
        if vb == self.m:
            return self.zero if va == self.m else None
        if va < vb:
            return None
        ub = self.shift_down(b, vb)
        return self.mul(self.shift_down(a, vb), self.inv(ub))

    def reduce(self, a):
        """Image in the residue field R/(eps)."""
        return a[0]

    def random(self, rng):
        return tuple(self.field.random(rng) for _ in range(self.m))

    def elements(self):
        for coeffs in product(range(self.field.q), repeat=self.m):
            yield tuple(coeffs)

    def format(self, a):
        F = self.field
        parts = []
        for i, c in enumerate(a):
            if not c:
                continue
            cs = F.format(c)
            if i == 0:
                parts.append(cs)
            else:
                mono = "eps" if i == 1 else f"eps^{i}"
                parts.append(mono if cs == "1" else f"{cs}*{mono}" if "+" not in cs else f"({cs})*{mono}")
        return " + ".join(parts) if parts else "0"


# -- matrices ---------------------------------------------------------------

def mat_identity(R, n):
    return [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]


def mat_zeros(R, r, c):
    return [[R.zero] * c for _ in range(r)]


def mat_mul(R, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = [R.zero] * cols
        for k in range(inner):
            a = row[k]
            if any(a):
                for j in range(cols):
                    b = B[k][j]
                    if any(b):
                        new[j] = R.add(new[j], R.mul(a, b))
        out.append(new)
    return out


def mat_vec(R, A, v):
    return [row_dot(R, row, v) for row in A]


def row_dot(R, row, v):
    acc = R.zero
    for a, b in zip(row, v):
        if any(a) and any(b):
            acc = R.add(acc, R.mul(a, b))
    return acc


def mat_reduce(R, A):
    """Entrywise reduction mod eps (a matrix over the residue field)."""
    return [[R.reduce(a) for a in row] for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_inverse(R, T):
    """Inverse over R; raises InvalidModuleData when T is not invertible mod eps."""
    n = len(T)
    M = [list(row) + list(e) for row, e in zip(T, mat_identity(R, n))]
    for c in range(n):
        piv = next((i for i in range(c, n) if R.is_unit(M[i][c])), None)
        if piv is None:
            raise InvalidModuleData("matrix is not invertible")
        M[c], M[piv] = M[piv], M[c]
        inv = R.inv(M[c][c])
        M[c] = [R.mul(inv, x) for x in M[c]]
        for i in range(n):
            if i != c and any(M[i][c]):
                f = M[i][c]
                M[i] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[i], M[c])]
    return [row[n:] for row in M]


def is_invertible(R, T):
    if not T:
        return True
    return len(T) == len(T[0]) and linalg.rank(R.field, mat_reduce(R, T)) == len(T)


# -- Smith form ---------------------------------------------------------------

@dataclass
class SmithReport:
    """U * A * V = D with U, V invertible; ``U_inv`` is the inverse of U."""

    U: list
    V: list
    D: list
    U_inv: list
    exponents: list

    @property
    def rank(self):
        return len(self.exponents)


def smith_form(R, A, nrows=None, ncols=None):
    """Diagonalize A over R with pivots of increasing eps-valuation.

    Diagonal entries are normalized to eps^a.  ``exponents`` lists a for the
    nonzero diagonal entries (0 for unit pivots).
    """
    rows = len(A) if nrows is None else nrows
    cols = (len(A[0]) if A else 0) if ncols is None else ncols
    D = [list(r) for r in A] if A else mat_zeros(R, rows, cols)
    U = mat_identity(R, rows)
    U_inv = mat_identity(R, rows)
    V = mat_identity(R, cols)
    exps = []
    for t in range(min(rows, cols)):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = R.valuation(D[i][j])
                if v < R.m and (best is None or v < best[0]):
                    best = (v, i, j)
                    if v == 0:
                        break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, i, j = best
        # move pivot to (t, t)
        if i != t:
            D[t], D[i] = D[i], D[t]
            U[t], U[i] = U[i], U[t]
            for row in U_inv:
                row[t], row[i] = row[i], row[t]
        if j != t:
            for M in (D, V):
                for row in M:
                    row[t], row[j] = row[j], row[t]
        # normalize pivot to eps^v by scaling row t with a unit
        u = R.shift_down(D[t][t], v)
        uinv = R.inv(u)
        D[t] = [R.mul(uinv, x) for x in D[t]]
        U[t] = [R.mul(uinv, x) for x in U[t]]
        for row in U_inv:
            row[t] = R.mul(row[t], u)
        piv = D[t][t]
        # clear column t
        for i2 in range(rows):
            if i2 != t and any(D[i2][t]):
                f = R.divide(D[i2][t], piv)
                D[i2] = [R.sub(x, R.mul(f, y)) for x, y in zip(D[i2], D[t])]
                U[i2] = [R.sub(x, R.mul(f, y)) for x, y in zip(U[i2], U[t])]
                # U_inv <- U_inv * (I + f E_{i2,t})
                for row in U_inv:
                    row[t] = R.add(row[t], R.mul(row[i2], f))
        # clear row t
        for j2 in range(cols):
            if j2 != t and any(D[t][j2]):
                f = R.divide(D[t][j2], piv)
                for M in (D, V):
                    for row in M:
                        row[j2] = R.sub(row[j2], R.mul(f, row[t]))
        exps.append(v)
    return SmithReport(U, V, D, U_inv, exps)


def verify_smith(R, A, rep):
    if mat_mul(R, mat_mul(R, rep.U, A), rep.V) != rep.D:
        return False
    n = len(rep.U)
    if mat_mul(R, rep.U, rep.U_inv) != mat_identity(R, n):
        return False
    for i, row in enumerate(rep.D):
        for j, x in enumerate(row):
            if i != j and any(x):
                return False
    diag = [R.valuation(rep.D[i][i]) for i in range(min(len(rep.D), len(rep.V)))]
    nz = [v for v in diag if v < R.m]
    return nz == sorted(nz) and nz == rep.exponents and is_invertible(R, rep.V)


# -- presented modules --------------------------------------------------------

@dataclass
class PresentedModule:
    """M = R^g / (column span of A); A has g rows, one column per relation."""

    ring: ChainRing
    ngens: int
    relations: list

    def __post_init__(self):
        if self.ngens < 0:
            raise InvalidModuleData("negative generator count")
        if len(self.relations) not in (0, self.ngens):
            raise InvalidModuleData(f"relation matrix has {len(self.relations)} rows for {self.ngens} generators")
        widths = {len(r) for r in self.relations}
        if len(widths) > 1:
            raise InvalidModuleData("ragged relation matrix")
        for row in self.relations:
            for a in row:
                if not isinstance(a, tuple) or len(a) != self.ring.m:
                    raise InvalidModuleData(f"bad ring element {a!r}")
        if not self.relations:
            self.relations = [[] for _ in range(self.ngens)]

    @property
    def nrels(self):
        return len(self.relations[0]) if self.relations else 0

    def smith(self):
        return smith_form(self.ring, self.relations, self.ngens, self.nrels)

    def invariants(self):
        """(free rank, torsion exponents a with summands R/(eps^a), a >= 1)."""
        rep = self.smith()
        torsion = [a for a in rep.exponents if a > 0]
        free = self.ngens - len(rep.exponents)
        return free, torsion

    def is_free(self):
        return not self.invariants()[1]

    def reduced_dimension(self):
        """dim over the residue field of M / eps M."""
        R = self.ring
        return self.ngens - linalg.rank(R.field, mat_reduce(R, self.relations))

    def contains_zero(self, v):
        """Whether the vector v of R^g is zero in M."""
        return solve(self.ring, self.relations, v, self.ngens, self.nrels) is not None

    def to_dict(self):
        R = self.ring
        return {
            "generators": self.ngens,
            "relations": [[R.format(a) for a in row] for row in self.relations],
        }


def free_module(R, g):
    return PresentedModule(R, g, [])


def cyclic_sum(R, exps):
    """R/(eps^a_1) + ... ; an exponent of None (or >= m) gives a free summand."""
    g = len(exps)
    cols = [i for i, a in enumerate(exps) if a is not None and a < R.m]
    rel = [[R.eps(exps[j]) if i == j else R.zero for j in cols] for i in range(g)]
    return PresentedModule(R, g, rel if cols else [])


@dataclass
class NRFreeWitness:
    rank: int
    generators: list
    relations: list

    def all_nilpotent(self, R):
        return all(R.is_nilpotent(a) for row in self.relations for a in row)


def nr_free_rank(M):
    """Rank of M as an NR-free module, with a witness presentation.

    Over the local ring R every finitely generated module is NR-free of rank
    dim M/eps M: the Smith form discards generators killed by a unit, and the
    remaining ones carry only relations eps^a * m_i = 0 with a >= 1.
    """
    R = M.ring
    rep = M.smith()
    keep = [i for i in range(M.ngens) if i >= len(rep.exponents) or rep.exponents[i] > 0]
    gens = [[rep.U_inv[r][i] for r in range(M.ngens)] for i in keep]
    rel_cols = [i for i in keep if i < len(rep.exponents)]
    relations = [[R.eps(rep.exponents[j]) if i == j else R.zero for j in rel_cols] for i in keep]
    w = NRFreeWitness(len(keep), gens, relations)
    if not w.all_nilpotent(R):
        raise VerificationFailed("witness relations are not nilpotent")
    if w.rank != M.reduced_dimension():
        raise VerificationFailed("NR-free rank disagrees with dim M/eps M")
    return w


# -- linear systems and kernels ---------------------------------------------

def matrix_kernel(R, B, ncols=None):
    """Generators of {x : B x = 0} in R^ncols, read off from the Smith form."""
    rows = len(B)
    cols = (len(B[0]) if B else 0) if ncols is None else ncols
    rep = smith_form(R, B, rows, cols)
    gens = []
    for j in range(cols):
        if j < len(rep.exponents):
            a = rep.exponents[j]
            if a == 0:
                continue
            y_j = R.eps(R.m - a)
        else:
            y_j = R.one
        gens.append([R.mul(rep.V[i][j], y_j) for i in range(cols)])
    return gens


def solve(R, B, b, nrows=None, ncols=None):
    """Some x with B x = b, or None."""
    rows = len(B) if nrows is None else nrows
    cols = (len(B[0]) if B else 0) if ncols is None else ncols
    rep = smith_form(R, B, rows, cols)
    c = mat_vec(R, rep.U, b) if rows else []
    y = [R.zero] * cols
    for i in range(rows):
        if i < len(rep.exponents):
            q = R.divide(c[i], rep.D[i][i])
            if q is None:
                return None
            y[i] = q
        elif any(c[i]):
            return None
    return mat_vec(R, rep.V, y)


def submodule_presentation(R, gens, ambient):
    """Present the submodule of R^ambient generated by ``gens`` (list of vectors)."""
    t = len(gens)
    G = [[gens[k][i] for k in range(t)] for i in range(ambient)]
    syz = matrix_kernel(R, G, t) if t else []
    rel = [[s[k] for s in syz] for k in range(t)] if syz else []
    return PresentedModule(R, t, rel)


def _check_surjective(R, phi, r, s):
    if s and linalg.rank(R.field, mat_reduce(R, phi)) != s:
        raise NotSurjective("the map is not surjective modulo eps")


@dataclass
class KernelResult:
    module: PresentedModule
    generators: list
    predicted_rank: int
    computed_rank: int
    free: bool

    @property
    def passed(self):
        return self.predicted_rank == self.computed_rank


def kernel_of_surjection(R, r, s, l, e, phi):
    """Kernel of phi: R^r -> N where N = R^s / (eps^e n_i, i < l).

    ``phi`` is an s x r matrix.  The kernel is the projection to R^r of the
    kernel of [phi | -eps^e E_l] and is NR-free of rank r - s + l; it is free
    when l = 0.
    """
    if not (0 <= l <= s) or not (1 <= e <= R.m - 1):
        raise InvalidModuleData(f"need 0 <= l <= s and 1 <= e <= m-1, got l={l}, e={e}")
    if len(phi) != s or any(len(row) != r for row in phi):
        raise InvalidModuleData(f"phi must be {s} x {r}")
    _check_surjective(R, phi, r, s)
    f = R.eps(e)
    B = [list(phi[i]) + [R.neg(f) if i == j else R.zero for j in range(l)] for i in range(s)]
    full = matrix_kernel(R, B, r + l)
    gens = [v[:r] for v in full if any(any(a) for a in v[:r])]
    K = submodule_presentation(R, gens, r)
    w = nr_free_rank(K)
    predicted = r - s + l
    result = KernelResult(K, gens, predicted, w.rank, K.is_free())
    if result.computed_rank != predicted:
        raise VerificationFailed(f"kernel rank {result.computed_rank} != r - s + l = {predicted}")
    if l == 0 and not result.free:
        raise VerificationFailed("kernel is not free although l = 0")
    return result


def random_surjection(R, r, s, rng):
    """A random s x r matrix over R that is surjective modulo eps."""
    while True:
        phi = [[R.random(rng) for _ in range(r)] for _ in range(s)]
        if not s or linalg.rank(R.field, mat_reduce(R, phi)) == s:
            return phi


# -- brute-force oracle -------------------------------------------------------

def _flat(R, v):
    return [c for a in v for c in a]


def enumerate_kernel(R, r, s, l, e, phi):
    """All x in R^r with phi(x) = 0 in N, by exhaustive enumeration."""
    out = []
    for x in product(list(R.elements()), repeat=r):
        y = mat_vec(R, phi, list(x))
        if all(R.valuation(y[i]) >= e for i in range(l)) and all(not any(y[i]) for i in range(l, s)):
            out.append(list(x))
    return out


def span_dimension(R, vectors):
    """F_q-dimension of the R-span of ``vectors`` (spanned by eps^j * v)."""
    F = R.field
    rows = []
    for v in vectors:
        for j in range(R.m):
            w = [R.mul(R.eps(j), a) for a in v]
            rows.append(_flat(R, w))
    return linalg.rank(F, rows) if rows else 0


def brute_force_kernel_check(R, r, s, l, e, phi, result=None):
    """Compare the algebraic kernel with exhaustive enumeration.

    Returns (kernel size, log_q size, algebraic span dimension, minimal
    generator count from enumeration).  The kernels agree when every
    algebraic generator lies in the enumerated set and the dimensions match.
    """
    F = R.field
    K = enumerate_kernel(R, r, s, l, e, phi)
    members = {tuple(v) for v in K}
    result = result or kernel_of_surjection(R, r, s, l, e, phi)
    for g in result.generators:
        if tuple(g) not in members:
            raise VerificationFailed(f"generator {g} is not in the kernel")
    log_size = 0
    n = len(K)
    while n > 1:
        n //= F.q
        log_size += 1
    eps_K = {tuple(R.mul(R.eps(1), a) for a in v) for v in K}
    log_eps = 0
    n = len(eps_K)
    while n > 1:
        n //= F.q
        log_eps += 1
    return {
        "size": len(K),
        "dimension": log_size,
        "algebraic_dimension": span_dimension(R, result.generators),
        "min_generators": log_size - log_eps,
    }


# -- transition matrices ------------------------------------------------------

def _generates(M, gens):
    R = M.ring
    rows = [[R.reduce(a) for a in g] for g in gens]
    rel_cols = transpose(mat_reduce(R, M.relations), M.ngens) if M.nrels else []
    return linalg.rank(R.field, rows + rel_cols) == M.ngens


def transition_matrix(M, gens1, gens2):
    """Invertible T with gens2_i = sum_j T_ij gens1_j in M.

    Both lists must be minimal generating sets of M.  The reduction of T mod
    eps relates the reduced generators of M/eps M.
    """
    R = M.ring
    for name, gens in (("first", gens1), ("second", gens2)):
        if not _generates(M, gens):
            raise NotGenerating(f"the {name} list does not generate the module")
    minimal = M.reduced_dimension()
    if len(gens1) != minimal or len(gens2) != minimal:
        raise ValueError(f"transition matrices relate minimal generating sets of size {minimal}")
    t = len(gens1)
    B = [[gens1[k][i] for k in range(t)] + list(M.relations[i]) for i in range(M.ngens)]
    T = []
    for g in gens2:
        x = solve(R, B, list(g), M.ngens, t + M.nrels)
        if x is None:
            raise NotGenerating(f"{g} is not in the span of the first list")
        T.append(x[:t])
    if not is_invertible(R, T):
        raise VerificationFailed("transition matrix is not invertible")
    return T


def verify_transition(M, gens1, gens2, T):
    R = M.ring
    for i, g in enumerate(gens2):
        combo = [R.zero] * M.ngens
        for j, h in enumerate(gens1):
            combo = [R.add(a, R.mul(T[i][j], b)) for a, b in zip(combo, h)]
        diff = [R.sub(a, b) for a, b in zip(g, combo)]
        if not M.contains_zero(diff):
            return False
    return is_invertible(R, T)


# -- order of operations ------------------------------------------------------

def order_of_operations_ranks(R, r, s, l, e, phi):
    """(rank of the reduced kernel, rank of the kernel of the reduced map).

    Taking the kernel first gives dim (ker phi) / eps (ker phi) = r - s + l;
    reducing first gives the kernel of the residue-field map, of rank r - s.
    """
    res = kernel_of_surjection(R, r, s, l, e, phi)
    after = res.computed_rank
    phibar = mat_reduce(R, phi)
    before = r - (linalg.rank(R.field, phibar) if s else 0)
    if after - before != l:
        raise VerificationFailed(f"ranks {after} and {before} differ by {after - before}, expected {l}")
    return after, before


DEFAULT_CONFIGS = ((2, 2), (3, 2), (3, 3))


def random_instance(R, rng, free=False, max_r=4):
    r = rng.randint(1, max_r)
    s = rng.randint(1, r)
    l = 0 if free else rng.randint(0, s)
    e = rng.randint(1, R.m - 1)
    return r, s, l, e, random_surjection(R, r, s, rng)


def selftest_rows(configs=DEFAULT_CONFIGS, count=50, seed=0, brute_limit=81):
    """Kernel rank checks on seeded random surjections, one row per instance."""
    rows = []
    for q, m in configs:
        R = ChainRing(q, m)
        rng = random.Random(f"chainmod:{seed}:{q}:{m}")
        for idx in range(count):
            # every fifth instance exercises the free case
            r, s, l, e, phi = random_instance(R, rng, free=(idx % 5 == 0))
            res = kernel_of_surjection(R, r, s, l, e, phi)
            row = {
                "q": q,
                "m": m,
                "r": r,
                "s": s,
                "l": l,
                "e": e,
                "predicted_rank": res.predicted_rank,
                "computed_rank": res.computed_rank,
                "free": res.free,
                "pass": res.passed and (l > 0 or res.free),
            }
            if R.size <= brute_limit and r <= 2:
                bf = brute_force_kernel_check(R, r, s, l, e, phi, res)
                row["brute_force"] = bf["dimension"] == bf["algebraic_dimension"] and bf["min_generators"] == res.computed_rank
                row["pass"] = row["pass"] and row["brute_force"]
            rows.append(row)
    return rows
