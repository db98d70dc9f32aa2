from fractions import Fraction
from math import comb

import pytest

from modcalc.classes import (
    canonical_class,
    delta_class,
    k3_locus_class,
    logan_class,
    slope,
    slope_info,
    total_boundary,
)
from modcalc.errors import SlopeUndefined
from modcalc.pic import (
    B,
    DELTA_IRR,
    LAMBDA,
    DivisorClass,
    ModuliSignature,
    Psi,
    boundary,
    boundary_indices,
)


def test_canonical_class_coefficients():
    sig = ModuliSignature.standard(10, 10)
    K = canonical_class(sig)
    assert K[LAMBDA] == 13
    assert all(K[Psi(i)] == 1 for i in range(1, 11))
    assert K[DELTA_IRR] == -2
    assert K[boundary(1, (), sig)] == -3
    assert K[boundary(9, set(range(1, 11)), sig)] == -3  # the same divisor
    assert K[boundary(1, {1}, sig)] == -2
    assert K[boundary(0, {1, 2}, sig)] == -2
    assert len(K) == 12 + len(boundary_indices(sig))


def test_canonical_class_without_delta_1_empty():
    # on M(2; {1}) the symbol delta_{1:{}} is delta_{1:{1}}, still a divisor
    sig = ModuliSignature.standard(2, 1)
    assert canonical_class(sig)[boundary(1, (), sig)] == -3


def test_logan_class_coefficients():
    D = logan_class(10)
    sig = D.sig
    assert D[LAMBDA] == -1
    assert all(D[Psi(i)] == 1 for i in range(1, 11))
    assert D[DELTA_IRR] == 0
    assert D[boundary(0, {1, 2}, sig)] == -3
    assert D[boundary(0, set(range(1, 11)), sig)] == -55
    assert D[boundary(1, (), sig)] == -1
    assert D[boundary(1, {1}, sig)] == 0
    for ix in boundary_indices(sig):
        assert D[boundary(ix.i, ix.S, sig)] == -comb(abs(len(ix.S) - ix.i) + 1, 2)


def test_logan_delta_5_is_counted_once():
    D = logan_class(10)
    sig = D.sig
    # the two sides of delta_{5:S} give equal coefficients; no doubling
    assert D[boundary(5, (), sig)] == -15
    assert D[boundary(5, {1, 2, 3}, sig)] == -3


def test_k3_class():
    K = k3_locus_class()
    sig = K.sig
    assert sig == ModuliSignature(10)
    assert [K[LAMBDA], K[DELTA_IRR]] == [7, -1]
    assert [K[boundary(i, (), sig)] for i in range(1, 5)] == [-5, -9, -12, -14]
    assert K[boundary(5, (), sig)] == -B


def test_slope_of_k3_class_is_flagged_as_parametric():
    info = slope_info(k3_locus_class())
    assert info.value == 7
    assert info.at_parameter_bound
    assert slope(k3_locus_class()) == 7


def test_slope_of_b_free_class():
    sig = ModuliSignature(4)
    D = DivisorClass(sig, {LAMBDA: 17, DELTA_IRR: -2, boundary(1, (), sig): -3, boundary(2, (), sig): -4})
    assert slope(D) == Fraction(17, 2)
    assert not slope_info(D).at_parameter_bound


def test_slope_needs_every_boundary_coefficient():
    sig = ModuliSignature(4)
    D = DivisorClass(sig, {LAMBDA: 17, DELTA_IRR: -2, boundary(1, (), sig): -3})
    with pytest.raises(SlopeUndefined):
        slope(D)
    with pytest.raises(SlopeUndefined):
        slope(DivisorClass(sig, {LAMBDA: -1, DELTA_IRR: -2, boundary(1, (), sig): -3, boundary(2, (), sig): -4}))
    with pytest.raises(SlopeUndefined):
        slope(canonical_class(ModuliSignature.standard(4, 1)))


def test_total_boundary():
    sig = ModuliSignature(10)
    T = total_boundary(sig)
    assert T[DELTA_IRR] == 1
    assert [T[boundary(i, (), sig)] for i in range(1, 6)] == [1] * 5
    assert len(T) == 6


def test_delta_class_uses_canonical_form():
    sig = ModuliSignature.standard(3, 2)
    assert delta_class(2, sig, {1}) == delta_class(1, sig, {2})
