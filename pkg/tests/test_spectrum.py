from fractions import Fraction

import pytest

from zpeta.manifold import EvenDimensionError, SpinStructure, enumerate_params, validate
from zpeta.eta import structure_classes
from zpeta.numtheory import odd_primes_upto
from zpeta.spectrum import (
    SpectralIndex,
    dim_ker,
    dim_ker_oracle,
    mult_diff,
    mult_diff_by_index,
    mult_diff_oracle,
)

TRICOSM = validate(3, 1, 0, 1)


def test_spectral_index_validation():
    SpectralIndex(0, 1, 2)  # mu = 1
    SpectralIndex(0, 2, 1)  # mu = 1/2
    with pytest.raises(ValueError):
        SpectralIndex(0, 1, 1)  # h=1 needs integer mu
    with pytest.raises(ValueError):
        SpectralIndex(0, 2, 2)  # h=2 needs half-odd mu
    with pytest.raises(ValueError):
        SpectralIndex(0, 1, 0)
    assert SpectralIndex(0, 2, 3).c_index == 2
    assert SpectralIndex(0, 1, 4).c_index == 2


def test_mult_diff_examples():
    assert mult_diff(TRICOSM, 1, 0, 1) == -2
    assert mult_diff(validate(5, 2, 0, 1), 1, 1, 1) == 5
    for mu in (1, 2, 3, 4):
        assert mult_diff(validate(5, 2, 0, 1), 1, 0, mu) == 0


def test_mult_diff_vanishes_at_p_dividing_mu():
    assert mult_diff(TRICOSM, 1, 1, 3) == 0


def test_mult_diff_nonexceptional_is_zero():
    params = validate(5, 1, 1, 2)
    assert not params.exceptional
    for h, mu in ((1, 4), (2, Fraction(7, 2))):
        for ell in range(5):
            assert mult_diff(params, h, ell, mu) == 0


def test_mult_diff_mu_validation():
    with pytest.raises(ValueError):
        mult_diff(TRICOSM, 1, 0, Fraction(1, 2))
    with pytest.raises(ValueError):
        mult_diff(TRICOSM, 2, 0, 1)
    with pytest.raises(ValueError):
        mult_diff(TRICOSM, 1, 0, Fraction(1, 3))


def test_mult_diff_by_index_matches_mu_form():
    for h in (1, 2):
        for c in range(1, 10):
            mu = Fraction(2 * c - (1 if h == 2 else 0), 2)
            for ell in range(3):
                assert mult_diff_by_index(TRICOSM, h, ell, c) == mult_diff(
                    TRICOSM, h, ell, mu
                )


def test_mult_diff_oracle_examples():
    assert mult_diff_oracle(TRICOSM, 1, 0, 1) == pytest.approx(-2.0, abs=1e-9)
    assert mult_diff_oracle(validate(5, 2, 0, 1), 1, 1, 1) == pytest.approx(5.0, abs=1e-9)
    assert mult_diff_oracle(TRICOSM, 1, 1, 3) == pytest.approx(0.0, abs=1e-9)


def test_mult_diff_matches_oracle():
    for p in odd_primes_upto(13):
        for a in (1, 2, 3):
            params = validate(p, a, 0, 1)
            for h in (1, 2):
                for ell in range(p):
                    for c in range(1, 2 * p + 1):
                        exact = mult_diff_by_index(params, h, ell, c)
                        mu = Fraction(2 * c - (1 if h == 2 else 0), 2)
                        approx = mult_diff_oracle(params, h, ell, mu)
                        assert abs(exact - approx) < 1e-6, (p, a, h, ell, c)


def test_mult_diff_zero_twist_symmetry_for_1_mod_4():
    # a odd, p = 1 mod 4: untwisted differences vanish identically
    for p in (5, 13, 17):
        params = validate(p, 1, 0, 1)
        for c in range(1, 3 * p):
            assert mult_diff_by_index(params, 1, 0, c) == 0
            assert mult_diff_by_index(params, 2, 0, c) == 0


def test_dim_ker_examples():
    triv = structure_classes(TRICOSM)[0]
    assert dim_ker(TRICOSM, triv, 0) == 0
    assert dim_ker(TRICOSM, triv, 1) == 1
    assert dim_ker(TRICOSM, triv, 2) == 1
    p512 = validate(5, 1, 1, 2)
    assert dim_ker(p512, structure_classes(p512)[0], 0) == 8
    p71 = validate(7, 1, 0, 1)
    assert dim_ker(p71, structure_classes(p71)[0], 0) == 2


def test_dim_ker_nontrivial_structures_vanish():
    for params in (TRICOSM, validate(5, 1, 1, 2), validate(7, 1, 0, 1)):
        structs = [s for s in structure_classes(params) if not s.trivial_type]
        for s in structs:
            for ell in range(params.p):
                assert dim_ker(params, s, ell) == 0


def test_dim_ker_parity():
    for params in enumerate_params(11, 40):
        triv = structure_classes(params)[0]
        for ell in range(params.p):
            d = dim_ker(params, triv, ell)
            assert d >= 0
            if params.beta1 > 1:
                assert d % 2 == 0
            elif ell == 0:
                assert d % 2 == 0
            else:
                assert d % 2 == 1


def test_dim_ker_rejects_even_dimension():
    params = validate(5, 1, 1, 1)
    with pytest.raises(EvenDimensionError):
        dim_ker(params, SpinStructure((1,), 1), 0)
    with pytest.raises(EvenDimensionError):
        dim_ker_oracle(params, 0)


def test_dim_ker_rejects_mismatched_structure():
    with pytest.raises(ValueError):
        dim_ker(TRICOSM, SpinStructure((1, 1), 1), 0)


def test_dim_ker_oracle_examples():
    assert dim_ker_oracle(TRICOSM, 1) == pytest.approx(1.0, abs=1e-9)
    assert dim_ker_oracle(validate(5, 1, 1, 2), 0) == pytest.approx(8.0, abs=1e-9)
    assert dim_ker_oracle(validate(7, 1, 0, 1), 0) == pytest.approx(2.0, abs=1e-9)


def test_dim_ker_matches_oracle():
    for params in enumerate_params(11, 36):
        triv = structure_classes(params)[0]
        for ell in range(params.p):
            exact = dim_ker(params, triv, ell)
            assert abs(exact - dim_ker_oracle(params, ell)) < 1e-6, (params, ell)


def test_oracle_suite_full_range():
    # p <= 31, a <= 5, all h and ell, first 3p eigenvalue indices
    from zpeta.cli import suite_oracles

    report = suite_oracles(31, 60)
    assert report.ok, report.failures[:5]
    assert report.cases > 100_000
