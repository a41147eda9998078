"""Dense linear algebra over a finite field (matrices are lists of rows of
field-encoded ints)."""


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[0] * c for _ in range(r)]


def mat_mul(F, A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        new = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                Bk = B[k]
                for j in range(cols):
                    b = Bk[j]
                    if b:
                        new[j] = F.add(new[j], F.mul(a, b))
        out.append(new)
    return out


def mat_vec(F, A, v):
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            if a and b:
                acc = F.add(acc, F.mul(a, b))
        out.append(acc)
    return out


def shift_diagonal(F, A, c):
    """A - c * Id."""
    out = [list(r) for r in A]
    for i in range(len(out)):
        out[i][i] = F.sub(out[i][i], c)
    return out


def mat_pow(F, A, e):
    result = identity(len(A))
    base = A
    while e:
        if e & 1:
            result = mat_mul(F, result, base)
        e >>= 1
        if e:
            base = mat_mul(F, base, base)
    return result


def rref(F, A):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in A]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = F.inv(M[r][c])
        M[r] = [F.mul(x, inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(F, A):
    return len(rref(F, A)[1])


def nullspace(F, A, ncols=None):
    """Basis of {v : A v = 0}."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    R, pivots = rref(F, A)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(R, pivots):
            if row[f]:
                v[pc] = F.neg(row[f])
        basis.append(v)
    return basis


def map_matrix(A, fn):
    return [[fn(x) for x in row] for row in A]


def commute(F, A, B):
    return mat_mul(F, A, B) == mat_mul(F, B, A)
