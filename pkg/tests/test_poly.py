import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ratdeg.errors import ArityMismatch, NotHomogeneous, RingMismatch
from ratdeg.field import FieldElement, PrimeField, extension, make_ext_field
from ratdeg.poly import GREVLEX, LEX, ZERO_DEGREE, PolyRing, arith, block, dehomogenize, evaluate, is_homogeneous, random_poly


def ring(p=5, names="XYZ", order=GREVLEX):
    return PolyRing(PrimeField(p), list(names), order)


def test_arith_examples():
    R = ring(5, "XY")
    X, Y = R.gens()
    assert arith(X + Y, X - Y, "mul") == X**2 - Y**2
    R2 = ring(2, "XY")
    X2, Y2 = R2.gens()
    assert (X2 + Y2) ** 2 == X2**2 + Y2**2
    assert (X * R.zero()).terms == {}
    assert arith(X, Y, "add") == X + Y and arith(X, Y, "sub") == X - Y


def test_ring_mismatch():
    X = ring(5, "XY").var(0)
    Z = ring(7, "XY").var(0)
    with pytest.raises(RingMismatch):
        X + Z


def test_is_homogeneous_examples():
    R = ring(7)
    X, Y, Z = R.gens()
    assert is_homogeneous(X * Y * Z) == 3
    assert is_homogeneous(X**3 + Y) is None
    assert is_homogeneous(X**3 + Y**3) == 3
    assert is_homogeneous(R.zero()) is ZERO_DEGREE


def test_evaluate_examples():
    R = ring(7)
    X, Y, Z = R.gens()
    F = R.field
    assert evaluate(X * Y * Z, [F(0), F(0), F(1)]) == 0
    assert evaluate(PolyRing(F, ["X"]).var(0) ** 3, [F(2)]) == 1
    R3 = ring(3, "XY")
    A, B = R3.gens()
    assert evaluate(A**3 + B**3, [1, 1]) == 2
    with pytest.raises(ArityMismatch):
        evaluate(X, [1, 2])


def test_evaluate_over_extension():
    R = ring(3, "XY")
    X, Y = R.gens()
    E, _ = extension(R.field, 2)
    w = FieldElement(E, E.generator())
    val = evaluate(X**2 + Y, [w, E.one()])
    assert val == w * w + 1


def test_dehomogenize_examples():
    R = ring(7)
    X, Y, Z = R.gens()
    assert str(dehomogenize(X * Y * Z, 2)) == "X*Y"
    assert str(dehomogenize(X**3, 0)) == "1"
    assert str(dehomogenize(Y**3, 2)) == "Y^3"
    assert dehomogenize(Y**3, 2).ring.names == ("X", "Y")
    with pytest.raises(NotHomogeneous):
        dehomogenize(X**3 + Y, 2)


def test_orders_compare_as_expected():
    for order, expect in [(LEX, "X*Z^2 + Y^3"), (GREVLEX, "Y^3 + X*Z^2")]:
        R = ring(5, "XYZ", order)
        X, Y, Z = R.gens()
        assert str(Y**3 + X * Z**2) == expect
    Rb = ring(5, "XYZ", block(1))
    X, Y, Z = Rb.gens()
    assert (X + Y**5).lm() == (1, 0, 0)


def test_orders_are_multiplicative():
    rng = random.Random(4)
    for order in (LEX, GREVLEX, block(1), block(2)):
        R = ring(5, "XYZ", order)
        key = R.key
        for _ in range(300):
            a, b, c = (tuple(rng.randrange(4) for _ in range(3)) for _ in range(3))
            if key(a) < key(b):
                ac = tuple(x + y for x, y in zip(a, c))
                bc = tuple(x + y for x, y in zip(b, c))
                assert key(ac) < key(bc)


@pytest.mark.parametrize("seed", range(5))
def test_ring_axioms_on_random_triples(seed):
    rng = random.Random(seed)
    R = PolyRing(make_ext_field(3, 2), ["x", "y", "z"])
    for _ in range(20):
        a, b, c = (random_poly(R, rng.randint(0, 3), rng, homogeneous=False, density=0.5) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a - a == R.zero()
        assert all(v for v in (a * b).terms.values())


@pytest.mark.parametrize("seed", range(5))
def test_dehomogenize_inverts_homogenize(seed):
    rng = random.Random(seed)
    A = ring(7, "xy")
    P = ring(7, "xyz")
    for _ in range(20):
        d = rng.randint(0, 4)
        g = random_poly(A, d, rng, homogeneous=False, density=0.6)
        h = g.homogenize(P, 2, d)
        assert is_homogeneous(h) in (d, ZERO_DEGREE)
        assert h.dehomogenize(2) == g


@pytest.mark.parametrize("seed", range(5))
def test_evaluate_is_a_ring_homomorphism(seed):
    rng = random.Random(seed)
    R = ring(11, "xyz")
    F = R.field
    for _ in range(30):
        a = random_poly(R, 3, rng, homogeneous=False, density=0.5)
        b = random_poly(R, 2, rng, homogeneous=False, density=0.5)
        pt = [F.random_element(rng) for _ in range(3)]
        assert evaluate(a * b, pt) == evaluate(a, pt) * evaluate(b, pt)
        assert evaluate(a + b, pt) == evaluate(a, pt) + evaluate(b, pt)


def test_translate_matches_evaluation():
    rng = random.Random(2)
    R = ring(7, "xy")
    F = R.field
    for _ in range(20):
        f = random_poly(R, 3, rng, homogeneous=False)
        s = [F.random(rng) for _ in range(2)]
        g = f.translate(s)
        pt = [F.random(rng) for _ in range(2)]
        shifted = [F.add(a, b) for a, b in zip(pt, s)]
        assert evaluate(g, pt) == evaluate(f, shifted)


_mono = st.tuples(st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=100, deadline=None)
@given(st.dictionaries(_mono, st.integers(1, 6), max_size=6), st.dictionaries(_mono, st.integers(1, 6), max_size=6))
def test_multiplication_degree_is_additive(ta, tb):
    from ratdeg.poly import Poly

    R = ring(7, "xy")
    a, b = Poly(R, dict(ta)), Poly(R, dict(tb))
    if a.terms and b.terms:
        assert (a * b).total_degree() == a.total_degree() + b.total_degree()
