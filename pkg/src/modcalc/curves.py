"""Numerical curve classes: linear functionals on the divisor lattice."""

from __future__ import annotations

import json
from typing import Any, Mapping

from modcalc.errors import ConflictingEntry, SerializationError, SignatureMismatch
from modcalc.pic import (
    ZERO,
    BasisClass,
    DivisorClass,
    ModuliSignature,
    ParamValue,
    Scalar,
    SparseClass,
    canonical_basis,
)


class CurveClass(SparseClass):
    """A curve, known only through its intersection numbers with the basis."""

    __slots__ = ()

    @classmethod
    def zero(cls, sig: ModuliSignature) -> CurveClass:
        return cls._raw(sig, {})

    def pairing(self, b: BasisClass) -> ParamValue:
        return self[b]

    def to_json(self) -> dict[str, Any]:
        body = super().to_json()
        return {"curve": True, **body}

    @classmethod
    def from_json(cls, obj: Any) -> CurveClass:
        if not isinstance(obj, dict) or obj.get("curve") is not True:
            raise SerializationError("curve JSON must carry \"curve\": true")
        body = {k: v for k, v in obj.items() if k != "curve"}
        sig, data = cls._from_json_body(body)
        return cls(sig, data)

    @classmethod
    def loads(cls, text: str) -> CurveClass:
        return cls.from_json(json.loads(text))


def pair(C: CurveClass, D: DivisorClass) -> ParamValue:
    """Intersection number C . D."""
    if C.sig != D.sig:
        raise SignatureMismatch(f"curve on {C.sig}, divisor on {D.sig}")
    return pair_mapping(C, D._data)


def pair_mapping(C: CurveClass, coeffs: Mapping[BasisClass, Scalar]) -> ParamValue:
    """Pair C with a linear form given by canonical keys (no validation)."""
    pc = C._data
    total = ZERO
    if len(coeffs) < len(pc):
        for b, v in coeffs.items():
            w = pc.get(b)
            if w is not None:
                total = total + w * v
    else:
        for b, w in pc.items():
            v = coeffs.get(b)
            if v is not None:
                total = total + w * v
    return total


def curve_from_pairings(
    sig: ModuliSignature, entries: Mapping[BasisClass, Scalar]
) -> CurveClass:
    """Build a curve from intersection numbers.

    Keys may use either representative of a boundary divisor; two keys naming
    the same divisor must carry the same value.
    """
    data: dict[BasisClass, ParamValue] = {}
    for b, v in entries.items():
        cb = canonical_basis(b, sig)
        pv = ParamValue.coerce(v)
        if cb in data and data[cb] != pv:
            raise ConflictingEntry(f"{cb.key()} given as both {data[cb]} and {pv}")
        data[cb] = pv
    return CurveClass._raw(sig, data)
