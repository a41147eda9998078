import pytest

from ratdeg.errors import CharacteristicTwo, NotPrime
from ratdeg.field import is_prime
from ratdeg.versch import (
    KernelScene,
    kernel_identity_suite,
    verify_kernel_identity,
    rr_genus2_dims,
    rr_h1_end0,
    rr_line_bundle_chi,
    versch_profile,
)


def test_profile_examples():
    v = versch_profile(3)
    assert (v.delta, v.degree, v.lower, v.upper) == (16, 11, 9, 27)
    v = versch_profile(5)
    assert (v.delta, v.degree) == (80, 45)
    assert v.delta_source == "input from literature"
    with pytest.raises(CharacteristicTwo):
        versch_profile(2)
    with pytest.raises(NotPrime):
        versch_profile(9)


def test_profile_divisibility_and_bounds_up_to_ten_thousand():
    primes = [p for p in range(3, 10001) if is_prime(p)]
    assert len(primes) == 1228
    for p in primes:
        assert (p**3 + 2 * p) % 3 == 0
        v = versch_profile(p)
        assert v.degree * 3 == p**3 + 2 * p
        assert v.delta * 3 == 2 * (p**3 - p)
        assert v.degree + v.delta == p**3
        assert p**2 <= v.degree <= p**3


def test_rr_examples():
    assert rr_h1_end0(2, 2) == 4
    assert rr_h1_end0(1, 1) == 0
    assert rr_h1_end0(2, 3) == 10
    assert rr_line_bundle_chi(0, 2) == -1


def test_rr_forms_agree():
    for g in range(1, 51):
        for n in range(1, 51):
            assert rr_h1_end0(g, n) == (n - 1) + (n * n - 1) * (g - 1)


def test_genus2_dims():
    d = rr_genus2_dims()
    assert d.deg_omega2 == 4 and d.h0_omega2 == 3 and d.h1_omega2 == 0
    assert d.chi_end0_omega == 3 and d.kernels_equal


@pytest.mark.parametrize("p", [5, 7, 11])
def test_kernel_identity_symbolic(p):
    rep = verify_kernel_identity(p)
    assert rep.passed
    assert rep.kernel == [["e11*eps + phi", "phib^2*eps"], ["e21", "phib"]]
    assert rep.kernel == rep.expected_kernel
    assert rep.reduced == rep.expected_reduced
    assert rep.reduced[0][1] == "0"
    S = KernelScene(p)
    # the cocycle -phib * e21 as computed in normal form
    assert rep.cocycle == str(S.nf(-S.phib * S.e[1][0]))


def test_undeformed_bundle():
    rep = verify_kernel_identity(5, (0, 0, 0, 0))
    S = KernelScene(5)
    # with no deformation the kernel is s together with eps*t, whose transition
    # matrix keeps the eps*phib^2 entry; modulo eps it is diagonal
    assert rep.kernel == [[str(S.phi), str(S.nf(S.eps * S.phib**2))], ["0", str(S.phib)]]
    assert rep.reduced == [[str(S.phi), "0"], ["0", str(S.phib)]]
    assert rep.cocycle == "0"


def test_vanishing_lower_left_gives_diagonal_reduction():
    rep = verify_kernel_identity(7, (3, 1, 0, 5))
    S = KernelScene(7)
    assert rep.reduced == [[str(S.phi), "0"], ["0", str(S.phib)]]
    assert rep.cocycle == "0"


def test_suite_with_specializations():
    reps = kernel_identity_suite(specializations=100, seed=0)
    assert len(reps) == 3 * 101
    assert all(r.passed for r in reps)


def test_scene_rejects_bad_characteristic():
    with pytest.raises(CharacteristicTwo):
        KernelScene(2)
    with pytest.raises(NotPrime):
        KernelScene(15)
