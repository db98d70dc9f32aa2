"""Divisor classes on the moduli space of pointed stable curves.

A class is a sparse vector of exact coefficients over the standard generators
lambda, psi_p, delta_irr and delta_{i:S}.  Coefficients are affine functions
``const + slope * B`` of a single global parameter B, constrained to B >= 6,
which is enough to carry the one unknown coefficient of the K3 divisor.

Boundary symbols are identified under delta_{i:S} = delta_{g-i:S^c} and always
stored under a canonical representative (see :func:`canonicalize_index`).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Any, Iterable, Iterator, Mapping, Union

from modcalc.errors import (
    InvalidIndex,
    InvalidSignature,
    ParameterError,
    SerializationError,
    SignatureMismatch,
)

Label = Union[int, str]
Scalar = Union[int, Fraction, "ParamValue"]

B_LOWER_BOUND = Fraction(6)

_INT_RE = re.compile(r"-?\d+")
_FORBIDDEN = set(",{}: \t\n\"")


# ---------------------------------------------------------------------------
# exact rationals and the B-affine scalar


def to_fraction(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except ValueError as exc:
            raise SerializationError(f"not a rational: {x!r}") from exc
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


Rational = Union[int, Fraction]


def _exact(x: Any) -> Rational:
    # integral values are kept as int: int arithmetic is far cheaper
    t = type(x)
    if t is int:
        return x
    if t is not Fraction:
        x = to_fraction(x)
    return x.numerator if x.denominator == 1 else x


def format_fraction(x: Rational) -> str:
    """Always ``p/q``, never a decimal."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True, slots=True)
class ParamValue:
    """The affine value ``const + slope * B`` for the global parameter B >= 6."""

    const: Rational = 0
    slope: Rational = 0

    def __post_init__(self) -> None:
        if type(self.const) is not int:
            object.__setattr__(self, "const", _exact(self.const))
        if type(self.slope) is not int:
            object.__setattr__(self, "slope", _exact(self.slope))

    @classmethod
    def coerce(cls, x: Scalar) -> ParamValue:
        if isinstance(x, ParamValue):
            return x
        return cls(_exact(x))

    @property
    def is_constant(self) -> bool:
        return self.slope == 0

    def __bool__(self) -> bool:
        return bool(self.const) or bool(self.slope)

    def at(self, b: Fraction | int = B_LOWER_BOUND) -> Fraction:
        if not self.slope:
            return Fraction(self.const)
        return self.const + self.slope * to_fraction(b)

    def as_fraction(self) -> Fraction:
        if self.slope:
            raise ParameterError(f"value {self} depends on B")
        return Fraction(self.const)

    # Sign tests quantify over all B >= 6: the value at B = 6 and the sign of
    # the slope decide them.
    def certainly_positive(self) -> bool:
        if not self.slope:
            return self.const > 0
        return self.at() > 0 and self.slope >= 0

    def certainly_negative(self) -> bool:
        if not self.slope:
            return self.const < 0
        return self.at() < 0 and self.slope <= 0

    def certainly_nonnegative(self) -> bool:
        if not self.slope:
            return self.const >= 0
        return self.at() >= 0 and self.slope >= 0

    def certainly_nonpositive(self) -> bool:
        if not self.slope:
            return self.const <= 0
        return self.at() <= 0 and self.slope <= 0

    def sign(self) -> int | None:
        """-1, 0 or 1 if the sign is the same for every B >= 6, else None."""
        if not self:
            return 0
        if self.certainly_positive():
            return 1
        if self.certainly_negative():
            return -1
        return None

    def __add__(self, other: Scalar) -> ParamValue:
        o = other if type(other) is ParamValue else ParamValue.coerce(other)
        if not (self.slope or o.slope):
            return ParamValue(self.const + o.const)
        return ParamValue(self.const + o.const, self.slope + o.slope)

    __radd__ = __add__

    def __neg__(self) -> ParamValue:
        return ParamValue(-self.const, -self.slope)

    def __sub__(self, other: Scalar) -> ParamValue:
        return self + (-ParamValue.coerce(other))

    def __rsub__(self, other: Scalar) -> ParamValue:
        return ParamValue.coerce(other) - self

    def __mul__(self, other: Scalar) -> ParamValue:
        o = other if type(other) is ParamValue else ParamValue.coerce(other)
        if self.slope and o.slope:
            raise ParameterError(f"product ({self})*({o}) is quadratic in B")
        if not (self.slope or o.slope):
            return ParamValue(self.const * o.const)
        return ParamValue(
            self.const * o.const, self.const * o.slope + self.slope * o.const
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> ParamValue:
        o = ParamValue.coerce(other)
        if o.slope:
            raise ParameterError(f"division by B-dependent value {o}")
        if not o.const:
            raise ZeroDivisionError("division by zero")
        return ParamValue(Fraction(self.const) / o.const, Fraction(self.slope) / o.const)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ParamValue):
            return self.const == other.const and self.slope == other.slope
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.slope == 0 and self.const == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.slope:
            return hash(self.const)
        return hash((self.const, self.slope))

    def __str__(self) -> str:
        if not self.slope:
            return format_fraction(self.const)
        return f"{format_fraction(self.const)} + {format_fraction(self.slope)}*B"

    def __repr__(self) -> str:
        return f"ParamValue({self})"

    def to_json(self) -> str | dict[str, str]:
        if not self.slope:
            return format_fraction(self.const)
        return {"const": format_fraction(self.const), "B": format_fraction(self.slope)}

    @classmethod
    def from_json(cls, obj: Any) -> ParamValue:
        if isinstance(obj, str):
            return cls(_parse_rational(obj))
        if isinstance(obj, dict) and set(obj) == {"const", "B"}:
            return cls(_parse_rational(obj["const"]), _parse_rational(obj["B"]))
        raise SerializationError(f"bad parameter value {obj!r}")


ZERO = ParamValue()
ONE = ParamValue(1)
B = ParamValue(0, 1)


def _parse_rational(s: Any) -> Fraction:
    if not isinstance(s, str) or "/" not in s:
        raise SerializationError(f"rationals must be 'p/q' strings, got {s!r}")
    return to_fraction(s)


# ---------------------------------------------------------------------------
# labels and signatures


def label_key(label: Label) -> tuple[int, Any]:
    """Total order on labels: integers first (numerically), then strings."""
    if isinstance(label, int):
        return (0, label)
    return (1, label)


def check_label(label: Any) -> Label:
    if isinstance(label, bool) or not isinstance(label, (int, str)):
        raise InvalidSignature(f"labels must be int or str, got {label!r}")
    if isinstance(label, str):
        if not label or _INT_RE.fullmatch(label) or _FORBIDDEN & set(label):
            raise InvalidSignature(f"unusable string label {label!r}")
    return label


def parse_label(token: str) -> Label:
    return int(token) if _INT_RE.fullmatch(token) else token


def sorted_labels(labels: Iterable[Label]) -> tuple[Label, ...]:
    return tuple(sorted(labels, key=label_key))


@dataclass(frozen=True)
class ModuliSignature:
    """Genus and marking labels of a moduli space of pointed curves."""

    genus: int
    markings: frozenset = frozenset()

    def __post_init__(self) -> None:
        if isinstance(self.genus, bool) or not isinstance(self.genus, int) or self.genus < 2:
            raise InvalidSignature(f"genus must be an integer >= 2, got {self.genus!r}")
        markings = list(self.markings)
        for label in markings:
            check_label(label)
        frozen = frozenset(markings)
        if len(frozen) != len(markings):
            raise InvalidSignature("marking labels must be distinct")
        object.__setattr__(self, "markings", frozen)

    @classmethod
    def standard(cls, g: int, n: int) -> ModuliSignature:
        return cls(g, frozenset(range(1, n + 1)))

    @cached_property
    def labels(self) -> tuple[Label, ...]:
        return sorted_labels(self.markings)

    @property
    def n(self) -> int:
        return len(self.markings)

    def __str__(self) -> str:
        return f"M({self.genus}; {{{','.join(map(str, self.labels))}}})"

    def to_json(self) -> dict[str, Any]:
        return {"g": self.genus, "markings": list(self.labels)}

    @classmethod
    def from_json(cls, obj: Any) -> ModuliSignature:
        if not isinstance(obj, dict) or set(obj) != {"g", "markings"}:
            raise SerializationError(f"bad signature {obj!r}")
        try:
            return cls(obj["g"], frozenset(obj["markings"]))
        except TypeError as exc:
            raise SerializationError(str(exc)) from exc


# ---------------------------------------------------------------------------
# basis classes


@dataclass(frozen=True, slots=True)
class Lambda:
    def sort_key(self) -> tuple:
        return (0,)

    def key(self) -> str:
        return "lambda"


@dataclass(frozen=True, slots=True)
class Psi:
    label: Label

    def sort_key(self) -> tuple:
        return (1, label_key(self.label))

    def key(self) -> str:
        return f"psi:{self.label}"


@dataclass(frozen=True, slots=True)
class DeltaIrr:
    def sort_key(self) -> tuple:
        return (2,)

    def key(self) -> str:
        return "dirr"


@dataclass(frozen=True, slots=True)
class BoundaryIndex:
    """The pair (i, S) naming delta_{i:S}; instances built by the library are canonical."""

    i: int
    S: frozenset
    # these sit in every hot dictionary, so hash and order key are precomputed
    _hash: int = field(init=False, repr=False, compare=False)
    _sort: tuple = field(init=False, repr=False, compare=False)
    _text: str = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        labels = sorted_labels(self.S)
        object.__setattr__(self, "_hash", hash((self.i, self.S)))
        object.__setattr__(self, "_sort", (self.i, tuple(label_key(x) for x in labels)))
        object.__setattr__(self, "_text", f"{self.i}:{{{','.join(map(str, labels))}}}")

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return self._sort

    def __str__(self) -> str:
        return self._text


@dataclass(frozen=True, slots=True)
class Delta:
    index: BoundaryIndex

    def __hash__(self) -> int:
        return self.index._hash

    def sort_key(self) -> tuple:
        return (3,) + self.index._sort

    def key(self) -> str:
        return "d:" + self.index._text


BasisClass = Union[Lambda, Psi, DeltaIrr, Delta]

LAMBDA = Lambda()
DELTA_IRR = DeltaIrr()


def index_is_valid(g: int, n: int, i: int, S: frozenset) -> bool:
    if not 0 <= i <= g:
        return False
    if i == 0 and len(S) < 2:
        return False
    if i == g and len(S) > n - 2:
        return False
    return True


@lru_cache(maxsize=1 << 16)
def _canonical(i: int, S: frozenset, sig: ModuliSignature) -> BoundaryIndex:
    g = sig.genus
    if not S <= sig.markings:
        raise InvalidIndex(f"labels {set(S - sig.markings)} not in {sig}")
    if not index_is_valid(g, sig.n, i, S):
        raise InvalidIndex(f"delta_{{{i}:{set(S) or '{}'}}} is not a boundary divisor of {sig}")
    Sc = sig.markings - S
    if 2 * i < g:
        return BoundaryIndex(i, S)
    if 2 * i > g:
        return BoundaryIndex(g - i, Sc)
    # tie i = g - i: empty side wins, else the side holding the least label
    if not S:
        return BoundaryIndex(i, S)
    if not Sc:
        return BoundaryIndex(i, Sc)
    least = sig.labels[0]
    return BoundaryIndex(i, S if least in S else Sc)


def canonicalize_index(i: int, S: Iterable[Label], sig: ModuliSignature) -> BoundaryIndex:
    """Canonical representative of delta_{i:S} under delta_{i:S} = delta_{g-i:S^c}.

    The representative has ``i < g - i``; on the tie ``2i = g`` the empty set is
    preferred, otherwise the side containing the least label.

    Raises
    ------
    InvalidIndex
        If (i, S) is not a boundary divisor of ``sig`` (stability fails or a
        label is foreign).
    """
    if isinstance(i, bool) or not isinstance(i, int):
        raise InvalidIndex(f"genus index must be an integer, got {i!r}")
    return _canonical(i, frozenset(S), sig)


def boundary(i: int, S: Iterable[Label], sig: ModuliSignature) -> Delta:
    return Delta(canonicalize_index(i, S, sig))


def try_boundary(i: int, S: frozenset, sig: ModuliSignature) -> Delta | None:
    """Canonical delta_{i:S}, or None when the symbol is not a divisor."""
    if not index_is_valid(sig.genus, sig.n, i, S):
        return None
    return Delta(_canonical(i, S, sig))


def canonical_basis(b: BasisClass, sig: ModuliSignature) -> BasisClass:
    """Validate ``b`` against ``sig`` and return its canonical form."""
    if isinstance(b, Delta):
        return Delta(canonicalize_index(b.index.i, b.index.S, sig))
    if isinstance(b, Psi):
        if b.label not in sig.markings:
            raise InvalidIndex(f"psi_{b.label} is not a class on {sig}")
        return b
    if isinstance(b, (Lambda, DeltaIrr)):
        return b
    raise InvalidIndex(f"not a basis class: {b!r}")


@lru_cache(maxsize=256)
def boundary_indices(sig: ModuliSignature) -> tuple[BoundaryIndex, ...]:
    """Every boundary divisor delta_{i:S} of ``sig`` exactly once, in basis order."""
    found: set[BoundaryIndex] = set()
    labels = sig.labels
    for i in range(sig.genus // 2 + 1):
        for k in range(len(labels) + 1):
            for S in combinations(labels, k):
                fs = frozenset(S)
                if index_is_valid(sig.genus, sig.n, i, fs):
                    found.add(_canonical(i, fs, sig))
    return tuple(sorted(found, key=BoundaryIndex.sort_key))


def basis(sig: ModuliSignature) -> tuple[BasisClass, ...]:
    """The full standard basis of Pic_Q, in the fixed serialization order."""
    out: list[BasisClass] = [LAMBDA]
    out.extend(Psi(p) for p in sig.labels)
    out.append(DELTA_IRR)
    out.extend(Delta(ix) for ix in boundary_indices(sig))
    return tuple(out)


def basis_from_key(key: str, sig: ModuliSignature) -> BasisClass:
    if key == "lambda":
        return LAMBDA
    if key == "dirr":
        return DELTA_IRR
    if key.startswith("psi:"):
        return canonical_basis(Psi(parse_label(key[4:])), sig)
    m = re.fullmatch(r"d:(-?\d+):\{([^{}]*)\}", key)
    if m:
        body = m.group(2)
        S = [parse_label(t) for t in body.split(",")] if body else []
        if len(set(S)) != len(S):
            raise SerializationError(f"repeated label in {key!r}")
        return boundary(int(m.group(1)), S, sig)
    raise SerializationError(f"unknown basis key {key!r}")


# ---------------------------------------------------------------------------
# sparse classes


class SparseClass:
    """Common storage for divisor classes and curve functionals.

    Values are immutable; the coefficient map is canonical (valid keys, no
    zero entries).
    """

    __slots__ = ("sig", "_data", "_hash")

    def __init__(self, sig: ModuliSignature, data: Mapping[BasisClass, Scalar] | None = None):
        self.sig = sig
        merged: dict[BasisClass, ParamValue] = {}
        for b, v in (data or {}).items():
            cb = canonical_basis(b, sig)
            merged[cb] = merged.get(cb, ZERO) + ParamValue.coerce(v)
        object.__setattr__(self, "_data", {b: v for b, v in merged.items() if v})
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, sig: ModuliSignature, data: dict[BasisClass, ParamValue]):
        # keys must already be canonical for ``sig``
        obj = cls.__new__(cls)
        obj.sig = sig
        object.__setattr__(obj, "_data", {b: v for b, v in data.items() if v})
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name: str, value: Any) -> None:
        if name == "sig" and not hasattr(self, "sig"):
            object.__setattr__(self, name, value)
            return
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __getitem__(self, b: BasisClass) -> ParamValue:
        return self._data.get(canonical_basis(b, self.sig), ZERO)

    def items(self) -> list[tuple[BasisClass, ParamValue]]:
        return sorted(self._data.items(), key=lambda kv: kv[0].sort_key())

    def keys(self):
        return self._data.keys()

    def __len__(self) -> int:
        return len(self._data)

    def __iter__(self) -> Iterator[BasisClass]:
        return iter(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def depends_on_B(self) -> bool:
        return any(v.slope for v in self._data.values())

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.sig == other.sig and self._data == other._data

    def __hash__(self) -> int:
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.sig, frozenset(self._data.items()))))
        return self._hash

    def _check_sig(self, other: SparseClass) -> None:
        if self.sig != other.sig:
            raise SignatureMismatch(f"{self.sig} vs {other.sig}")

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._check_sig(other)
        data = dict(self._data)
        for b, v in other._data.items():
            data[b] = data.get(b, ZERO) + v
        return type(self)._raw(self.sig, data)

    def __neg__(self):
        return type(self)._raw(self.sig, {b: -v for b, v in self._data.items()})

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar):
        s = ParamValue.coerce(scalar)
        return type(self)._raw(self.sig, {b: v * s for b, v in self._data.items()})

    __rmul__ = __mul__

    def at(self, b_value: Fraction | int):
        """Substitute a number for B."""
        return type(self)._raw(
            self.sig, {k: ParamValue(v.at(b_value)) for k, v in self._data.items()}
        )

    def __repr__(self) -> str:
        body = ", ".join(f"{b.key()}: {v}" for b, v in self.items())
        return f"{type(self).__name__}({self.sig}, {{{body}}})"

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict[str, Any]:
        return {
            "sig": self.sig.to_json(),
            "coeffs": {b.key(): v.to_json() for b, v in self.items()},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def _from_json_body(cls, obj: Any):
        if not isinstance(obj, dict) or "sig" not in obj or "coeffs" not in obj:
            raise SerializationError("expected an object with 'sig' and 'coeffs'")
        sig = ModuliSignature.from_json(obj["sig"])
        coeffs = obj["coeffs"]
        if not isinstance(coeffs, dict):
            raise SerializationError("'coeffs' must be an object")
        data: dict[BasisClass, ParamValue] = {}
        for key, raw in coeffs.items():
            b = basis_from_key(key, sig)
            if b in data:
                raise SerializationError(f"duplicate entry for {b.key()}")
            data[b] = ParamValue.from_json(raw)
        return sig, data


class DivisorClass(SparseClass):
    """A divisor class; compare with ``==``, combine with ``+``, ``-``, scalar ``*``."""

    __slots__ = ()

    @classmethod
    def zero(cls, sig: ModuliSignature) -> DivisorClass:
        return cls._raw(sig, {})

    @classmethod
    def from_json(cls, obj: Any) -> DivisorClass:
        if isinstance(obj, dict) and obj.get("curve"):
            raise SerializationError("this is a curve class, not a divisor class")
        sig, data = cls._from_json_body(obj)
        return cls(sig, data)

    @classmethod
    def loads(cls, text: str) -> DivisorClass:
        return cls.from_json(json.loads(text))


def combine(terms: Iterable[tuple[Scalar, DivisorClass]]) -> DivisorClass:
    """Exact linear combination ``sum(c * D)``; all classes must share one signature."""
    terms = list(terms)
    if not terms:
        raise ValueError("combine needs at least one term to fix the signature")
    sig = terms[0][1].sig
    acc: dict[BasisClass, ParamValue] = {}
    for c, D in terms:
        if D.sig != sig:
            raise SignatureMismatch(f"{D.sig} vs {sig}")
        s = ParamValue.coerce(c)
        if not s:
            continue
        for b, v in D._data.items():
            acc[b] = acc.get(b, ZERO) + s * v
    return DivisorClass._raw(sig, acc)


def coefficient(D: SparseClass, b: BasisClass) -> ParamValue:
    return D[b]
