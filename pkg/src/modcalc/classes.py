"""Named divisor classes and the slope of a divisor on the unpointed moduli space."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from math import comb

from modcalc.errors import SlopeUndefined
from modcalc.pic import (
    B,
    DELTA_IRR,
    LAMBDA,
    BasisClass,
    Delta,
    DivisorClass,
    ModuliSignature,
    ParamValue,
    Psi,
    boundary,
    boundary_indices,
    index_is_valid,
)

K3_BOUNDARY = {1: -5, 2: -9, 3: -12, 4: -14}


@lru_cache(maxsize=32)
def canonical_class(sig: ModuliSignature) -> DivisorClass:
    """13 lambda + sum psi - 2 delta_irr - 2 sum delta_{i:S} - delta_{1:{}}."""
    data: dict[BasisClass, ParamValue] = {LAMBDA: ParamValue(13), DELTA_IRR: ParamValue(-2)}
    for p in sig.labels:
        data[Psi(p)] = ParamValue(1)
    for ix in boundary_indices(sig):
        data[Delta(ix)] = ParamValue(-2)
    if index_is_valid(sig.genus, sig.n, 1, frozenset()):
        d1 = boundary(1, (), sig)
        data[d1] = data[d1] - 1
    return DivisorClass._raw(sig, data)


@lru_cache(maxsize=32)
def logan_class(g: int) -> DivisorClass:
    """Closure of the locus where p_1 + ... + p_g moves in a pencil, on M(g; 1..g).

    Every boundary divisor appears once, with coefficient
    -binom(||S| - i| + 1, 2) read off its representative with i <= g/2.  For
    even g the two representatives with i = g/2 give the same coefficient and
    name the same divisor, so it is counted once.
    """
    sig = ModuliSignature.standard(g, g)
    data: dict[BasisClass, ParamValue] = {LAMBDA: ParamValue(-1)}
    for p in sig.labels:
        data[Psi(p)] = ParamValue(1)
    for ix in boundary_indices(sig):
        c = comb(abs(len(ix.S) - ix.i) + 1, 2)
        if c:
            data[Delta(ix)] = ParamValue(-c)
    return DivisorClass._raw(sig, data)


@lru_cache(maxsize=32)
def k3_locus_class() -> DivisorClass:
    """7 lambda - delta_irr - 5 d1 - 9 d2 - 12 d3 - 14 d4 - B d5 on M(10)."""
    sig = ModuliSignature(10)
    data: dict[BasisClass, ParamValue] = {LAMBDA: ParamValue(7), DELTA_IRR: ParamValue(-1)}
    for i, c in K3_BOUNDARY.items():
        data[boundary(i, (), sig)] = ParamValue(c)
    data[boundary(5, (), sig)] = -B
    return DivisorClass._raw(sig, data)


def delta_class(i: int, sig: ModuliSignature, S=()) -> DivisorClass:
    return DivisorClass(sig, {boundary(i, S, sig): 1})


def lambda_class(sig: ModuliSignature) -> DivisorClass:
    return DivisorClass._raw(sig, {LAMBDA: ParamValue(1)})


def psi_class(label, sig: ModuliSignature) -> DivisorClass:
    return DivisorClass(sig, {Psi(label): 1})


def delta_irr_class(sig: ModuliSignature) -> DivisorClass:
    return DivisorClass._raw(sig, {DELTA_IRR: ParamValue(1)})


def total_boundary(sig: ModuliSignature) -> DivisorClass:
    """delta_irr plus every delta_{i:S}, each with coefficient one."""
    data: dict[BasisClass, ParamValue] = {DELTA_IRR: ParamValue(1)}
    for ix in boundary_indices(sig):
        data[Delta(ix)] = ParamValue(1)
    return DivisorClass._raw(sig, data)


@dataclass(frozen=True)
class SlopeInfo:
    value: Fraction
    # True when some coefficient depends on B and the value was taken at
    # B = 6; increasing boundary coefficients make it the largest slope over
    # the admissible range.
    at_parameter_bound: bool


def slope_info(D: DivisorClass) -> SlopeInfo:
    sig = D.sig
    if sig.n:
        raise SlopeUndefined("slope is defined on the unpointed moduli space only")
    coeffs = [D[LAMBDA]]
    names = ["lambda"]
    coeffs.append(-D[DELTA_IRR])
    names.append("delta_irr")
    for j in range(1, sig.genus // 2 + 1):
        coeffs.append(-D[boundary(j, (), sig)])
        names.append(f"delta_{j}")
    for name, v in zip(names, coeffs):
        if not v:
            raise SlopeUndefined(f"coefficient of {name} is absent")
        if not v.certainly_positive():
            raise SlopeUndefined(f"coefficient of {name} is not positive for all B >= 6 ({v})")
    parametric = any(v.slope for v in coeffs)
    values = [v.at() for v in coeffs]
    return SlopeInfo(values[0] / min(values[1:]), parametric)


def slope(D: DivisorClass) -> Fraction:
    """Harris-Morrison slope a / min(b_irr, b_1, ..., b_[g/2]).

    Raises
    ------
    SlopeUndefined
        If the lambda coefficient or any boundary coefficient is absent or not
        positive for every B >= 6.
    """
    return slope_info(D).value
