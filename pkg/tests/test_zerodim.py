import random

import pytest

from ratdeg.errors import ExtensionCapExceeded, NotAPoint, NotZeroDimensional, TruncationTooSmall
from ratdeg.field import FieldElement, PrimeField
from ratdeg.ideal import Ideal, krull_dim, vs_dimension
from ratdeg.poly import PolyRing, random_poly
from ratdeg.zerodim import (
    analyze_zero_dim,
    exhaustive_points,
    local_min_generators,
    local_multiplicity,
    quotient_algebra,
    rational_points,
    socle_dimension,
)


def R(p, names="xy"):
    return PolyRing(PrimeField(p), list(names))


def pt(F, *vals):
    return tuple(FieldElement(F, F.from_int(v)) for v in vals)


def test_quotient_algebra_examples():
    A7 = R(7)
    x, y = A7.gens()
    A = quotient_algebra(Ideal([x**3, y**3, x * y]))
    assert A.dim == 5
    assert sorted(str(A7.monomial(m)) for m in A.basis) == sorted(["1", "x", "x^2", "y", "y^2"])
    B = quotient_algebra(Ideal([x - 3, y - 4]))
    assert [list(map(list, M)) for M in B.matrices] == [[[3]], [[4]]]
    U = PolyRing(PrimeField(7), ["x"])
    C = quotient_algebra(Ideal([U.var(0) ** 2]))
    (M,) = C.matrices
    assert C.dim == 2 and any(any(r) for r in M)
    from ratdeg.linalg import mat_mul

    assert not any(any(r) for r in mat_mul(PrimeField(7), M, M))
    with pytest.raises(NotZeroDimensional):
        quotient_algebra(Ideal([x * y]))


def test_multiplication_matrices_commute_and_act_on_one():
    rng = random.Random(3)
    ring = R(5, "xyz")
    from ratdeg.linalg import mat_mul

    done = 0
    while done < 10:
        gens = [ring.var(i) ** rng.randint(1, 2) + random_poly(ring, 1, rng, homogeneous=False) for i in range(3)]
        I = Ideal(gens, ring)
        if krull_dim(I) != 0:
            continue
        A = quotient_algebra(I)
        F = ring.field
        for i, Mi in enumerate(A.matrices):
            for Mj in A.matrices:
                assert mat_mul(F, Mi, Mj) == mat_mul(F, Mj, Mi)
            one = [0] * A.dim
            one[A.basis.index((0, 0, 0))] = 1
            image = [sum(F.mul(Mi[r][c], one[c]) for c in range(A.dim)) % F.p for r in range(A.dim)]
            assert image == A.coordinates(ring.var(i))
        done += 1


def test_rational_points_examples():
    A7 = R(7)
    x, y = A7.gens()
    P = rational_points(Ideal([x**3, y**3, x * y]))
    assert [tuple(c.value for c in p) for p in P] == [(0, 0)] and P.extension_degree == 1
    A3 = R(3)
    x, y = A3.gens()
    P = rational_points(Ideal([x**2 + 1, y]))
    assert len(P) == 2 and P.extension_degree == 2 and P.field.q == 9
    for p in P:
        assert (p[0] * p[0] + 1).value == 0
    A5 = R(5)
    x, y = A5.gens()
    P = rational_points(Ideal([x - 1, y - 2]))
    assert [tuple(c.value for c in p) for p in P] == [(1, 2)]


def test_extension_cap():
    A = R(2)
    x, y = A.gens()
    # x^5 + x^2 + 1 is irreducible over F_2
    with pytest.raises(ExtensionCapExceeded):
        rational_points(Ideal([x**5 + x**2 + 1, y]), max_ext=4)
    assert rational_points(Ideal([x**5 + x**2 + 1, y]), max_ext=5).extension_degree == 5


def test_local_multiplicity_examples():
    A7 = R(7)
    x, y = A7.gens()
    F = A7.field
    assert local_multiplicity(quotient_algebra(Ideal([x**3, y**3, x * y])), pt(F, 0, 0)) == 5
    assert local_multiplicity(quotient_algebra(Ideal([x * (x - 1), y])), pt(F, 0, 0)) == 1
    assert local_multiplicity(quotient_algebra(Ideal([x**2, y])), pt(F, 0, 0)) == 2
    with pytest.raises(NotAPoint):
        local_multiplicity(quotient_algebra(Ideal([x**2, y])), pt(F, 1, 0))


def test_local_min_generators_examples():
    A7 = R(7)
    x, y = A7.gens()
    F = A7.field
    assert local_min_generators(Ideal([x**3, y**3, x * y]), pt(F, 0, 0)) == 3
    assert local_min_generators(Ideal([x**2, y]), pt(F, 0, 0)) == 2
    assert local_min_generators(Ideal([x, y, x + y]), pt(F, 0, 0)) == 2
    # far-away generators are units locally and do not count as extra
    assert local_min_generators(Ideal([x * (x - 1), y]), pt(F, 0, 0)) == 2


def test_truncation_too_small():
    A7 = R(7)
    x, y = A7.gens()
    F = A7.field
    with pytest.raises(TruncationTooSmall):
        local_min_generators(Ideal([x**3, y**3, x * y]), pt(F, 0, 0), N=2)


def test_socle_dimension_examples():
    A7 = R(7)
    x, y = A7.gens()
    F = A7.field
    assert socle_dimension(quotient_algebra(Ideal([x**3, y**3, x * y])), pt(F, 0, 0)) == 2
    assert socle_dimension(quotient_algebra(Ideal([x**2, y])), pt(F, 0, 0)) == 1
    assert socle_dimension(quotient_algebra(Ideal([x - 2, y - 5])), pt(F, 2, 5)) == 1


def test_points_over_extension_use_embedding():
    A3 = R(3)
    x, y = A3.gens()
    I = Ideal([(x**2 + 1) ** 2, y])
    rep = analyze_zero_dim(I)
    assert rep.field_extension_used == 2
    assert [loc.multiplicity for loc in rep.locals] == [2, 2]
    assert all(loc.is_lci and loc.is_gorenstein for loc in rep.locals)
    assert rep.total_length == vs_dimension(I) == 4


def test_exhaustive_points_agree_with_eliminants():
    rng = random.Random(9)
    ring = R(5, "xyz")
    done = 0
    while done < 15:
        gens = [ring.var(i) ** rng.randint(1, 3) + random_poly(ring, 2, rng, homogeneous=False, density=0.3) for i in range(3)]
        I = Ideal(gens, ring)
        if krull_dim(I) != 0:
            continue
        try:
            found = rational_points(I, max_ext=6)
        except ExtensionCapExceeded:
            continue
        rational = {tuple(c.value for c in p) for p in found if found.extension_degree == 1}
        brute = {tuple(c.value for c in p) for p in exhaustive_points(I)}
        if found.extension_degree == 1:
            assert rational == brute
        else:
            # over the extension, points fixed by Frobenius are exactly the F_5 points
            base = {p for p in found if all(c ** 5 == c for c in p)}
            assert len(base) == len(brute)
            if found.field.q**3 <= 10**6:
                over = {tuple(c.value for c in p) for p in exhaustive_points(I, found.field)}
                assert over == {tuple(c.value for c in p) for p in found}
        done += 1


def _generated_instances(seed, count):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        p = rng.choice([3, 5, 7])
        ring = R(p, "xy")
        x, y = ring.gens()
        # product of a few local pieces with small lengths at random rational points
        k = rng.randint(1, 3)
        pieces = []
        for _ in range(k):
            a, b = rng.randrange(p), rng.randrange(p)
            u, v = x - a, y - b
            shape = rng.choice([[u, v], [u**2, v], [u, v**2], [u**2, u * v, v**2], [u**3, v], [v - u**2, u**3], [u**2, v**2]])
            pieces.append(Ideal(shape, ring))
        I = pieces[0]
        from ratdeg.ideal import intersect

        for J in pieces[1:]:
            I = intersect(I, J)
        out.append(I)
    return out


@pytest.mark.parametrize("seed", range(4))
def test_local_invariants_on_generated_instances(seed):
    for I in _generated_instances(seed, 6):
        rep = analyze_zero_dim(I)
        assert rep.total_length == vs_dimension(I)
        for loc in rep.locals:
            if loc.is_lci:
                assert loc.is_gorenstein
            if loc.multiplicity <= 2:
                assert loc.mu == 2
            assert loc.socle_dim >= 1 and loc.mu >= 2
