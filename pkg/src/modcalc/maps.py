"""Symbolic maps between moduli spaces, divisor pullback and curve pushforward.

A chain ``[m1, m2, ..., mk]`` is the composite in which points go through
``m1`` first.  Pullback therefore applies ``mk`` first; pushforward of a curve
starts from the source of ``m1``.

Pullback rules (all results canonicalized; summands that are not boundary
divisors are dropped; two summands naming the same divisor count once):

* forgetting ``p``: lambda, delta_irr fixed; psi_q -> psi_q - delta_{0:{q,p}};
  delta_{i:S} -> delta_{i:S} + delta_{i:S+p}.
* relabeling: acts on psi and boundary labels.
* gluing a fixed generic rational tail carrying T at ``r``: psi_t -> 0 for t in
  T; delta_{0:T} -> -psi_r; delta_{i:S} with T inside S -> delta_{i:S-T+r};
  delta_{i:S} with S disjoint from T unchanged; partial overlaps -> 0.
* gluing a fixed general genus-i curve at ``x``: delta_j -> delta_{j:{}} +
  delta_{g-j:{}}, minus psi_x when delta_j is the divisor delta_i itself.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable, Iterator, Mapping, Sequence, Union

from modcalc.curves import CurveClass, pair_mapping
from modcalc.errors import InvalidMap, SerializationError
from modcalc.pic import (
    BasisClass,
    Delta,
    DeltaIrr,
    DivisorClass,
    Label,
    Lambda,
    ModuliSignature,
    ParamValue,
    Psi,
    basis,
    check_label,
    label_key,
    parse_label,
    sorted_labels,
    try_boundary,
)

Pulled = dict  # BasisClass -> int (canonical on the source)


def _reps(d: Delta, sig: ModuliSignature) -> tuple[tuple[int, frozenset], tuple[int, frozenset]]:
    ix = d.index
    return (ix.i, ix.S), (sig.genus - ix.i, sig.markings - ix.S)


def _add_boundaries(out: Pulled, deltas: Iterable[Delta | None], coeff: int = 1) -> None:
    # the summands list preimage components; a repeated divisor is one component
    for d in set(x for x in deltas if x is not None):
        out[d] = out.get(d, 0) + coeff


@dataclass(frozen=True)
class Forgetful:
    """M(g; M + p) -> M(g; M) forgetting the marking ``p``."""

    p: Label

    def __post_init__(self) -> None:
        check_label(self.p)

    def source_of(self, target: ModuliSignature) -> ModuliSignature:
        if self.p in target.markings:
            raise InvalidMap(f"forgotten label {self.p} already marks the target {target}")
        return ModuliSignature(target.genus, target.markings | {self.p})

    def target_of(self, source: ModuliSignature) -> ModuliSignature:
        if self.p not in source.markings:
            raise InvalidMap(f"label {self.p} is not a marking of {source}")
        return ModuliSignature(source.genus, source.markings - {self.p})

    def pull_basis(self, b: BasisClass, target: ModuliSignature, source: ModuliSignature) -> Pulled:
        p = self.p
        if isinstance(b, (Lambda, DeltaIrr)):
            return {b: 1}
        if isinstance(b, Psi):
            out: Pulled = {b: 1}
            _add_boundaries(out, [try_boundary(0, frozenset((b.label, p)), source)], -1)
            return out
        i, S = b.index.i, b.index.S
        out = {}
        _add_boundaries(out, [try_boundary(i, S, source), try_boundary(i, S | {p}, source)])
        return out

    def dual_support(self, k: BasisClass, source: ModuliSignature, target: ModuliSignature) -> Iterator[BasisClass]:
        if isinstance(k, (Lambda, DeltaIrr)):
            yield k
        elif isinstance(k, Psi):
            if k.label != self.p:
                yield k
        else:
            for j, S in _reps(k, source):
                d = try_boundary(j, S - {self.p}, target)
                if d is not None:
                    yield d
                if j == 0 and len(S) == 2 and self.p in S:
                    (q,) = S - {self.p}
                    yield Psi(q)

    def to_json(self) -> dict[str, Any]:
        return {"forget": self.p}


@dataclass(frozen=True)
class Permutation:
    """Isomorphism renaming markings; unmentioned labels are fixed.

    ``mapping`` sends source labels to target labels.  It may rename into
    fresh labels, so it also covers identifications between label sets.
    """

    mapping: tuple[tuple[Label, Label], ...]

    def __init__(self, mapping: Mapping[Label, Label] | Iterable[tuple[Label, Label]]):
        items = dict(mapping.items() if isinstance(mapping, Mapping) else mapping)
        for a, b in items.items():
            check_label(a)
            check_label(b)
        if len(set(items.values())) != len(items):
            raise InvalidMap("relabeling is not injective")
        norm = tuple(sorted(((a, b) for a, b in items.items() if a != b), key=lambda ab: label_key(ab[0])))
        object.__setattr__(self, "mapping", norm)

    @property
    def forward(self) -> dict[Label, Label]:
        return dict(self.mapping)

    def _apply(self, labels: frozenset, table: dict[Label, Label]) -> frozenset:
        return frozenset(table.get(x, x) for x in labels)

    def target_of(self, source: ModuliSignature) -> ModuliSignature:
        fwd = self.forward
        if not set(fwd) <= source.markings:
            raise InvalidMap(f"relabeling moves labels {set(fwd) - source.markings} absent from {source}")
        image = self._apply(source.markings, fwd)
        if len(image) != source.n:
            raise InvalidMap("relabeling collides with a fixed label")
        return ModuliSignature(source.genus, image)

    def source_of(self, target: ModuliSignature) -> ModuliSignature:
        inv = {b: a for a, b in self.mapping}
        if not set(inv) <= target.markings:
            raise InvalidMap(f"relabeling targets {set(inv) - target.markings} absent from {target}")
        pre = self._apply(target.markings, inv)
        if len(pre) != target.n or self.target_of(ModuliSignature(target.genus, pre)) != target:
            raise InvalidMap("relabeling collides with a fixed label")
        return ModuliSignature(target.genus, pre)

    def _move(self, b: BasisClass, table: dict[Label, Label], sig: ModuliSignature) -> BasisClass:
        if isinstance(b, Psi):
            return Psi(table.get(b.label, b.label))
        if isinstance(b, Delta):
            d = try_boundary(b.index.i, self._apply(b.index.S, table), sig)
            assert d is not None
            return d
        return b

    def pull_basis(self, b: BasisClass, target: ModuliSignature, source: ModuliSignature) -> Pulled:
        inv = {y: x for x, y in self.mapping}
        return {self._move(b, inv, source): 1}

    def dual_support(self, k: BasisClass, source: ModuliSignature, target: ModuliSignature) -> Iterator[BasisClass]:
        yield self._move(k, self.forward, target)

    def to_json(self) -> dict[str, Any]:
        return {"perm": {str(a): str(b) for a, b in self.mapping}}


@dataclass(frozen=True)
class AttachRationalTail:
    """M(g; R + r) -> M(g; R + T): glue a fixed generic rational tail carrying T at r."""

    T: frozenset
    r: Label

    def __init__(self, T: Iterable[Label], r: Label):
        fs = frozenset(T)
        for x in fs:
            check_label(x)
        check_label(r)
        if len(fs) < 2:
            raise InvalidMap("a rational tail needs at least two markings")
        if r in fs:
            raise InvalidMap("the attaching label must be fresh")
        object.__setattr__(self, "T", fs)
        object.__setattr__(self, "r", r)

    def target_of(self, source: ModuliSignature) -> ModuliSignature:
        if self.r not in source.markings:
            raise InvalidMap(f"attaching label {self.r} is not a marking of {source}")
        if self.T & source.markings:
            raise InvalidMap(f"tail labels {set(self.T & source.markings)} already mark {source}")
        return ModuliSignature(source.genus, (source.markings - {self.r}) | self.T)

    def source_of(self, target: ModuliSignature) -> ModuliSignature:
        if not self.T <= target.markings:
            raise InvalidMap(f"tail labels {set(self.T - target.markings)} absent from {target}")
        if self.r in target.markings:
            raise InvalidMap(f"attaching label {self.r} already marks {target}")
        return ModuliSignature(target.genus, (target.markings - self.T) | {self.r})

    def pull_basis(self, b: BasisClass, target: ModuliSignature, source: ModuliSignature) -> Pulled:
        if isinstance(b, (Lambda, DeltaIrr)):
            return {b: 1}
        if isinstance(b, Psi):
            return {} if b.label in self.T else {b: 1}
        T = self.T
        for j, S in _reps(b, target):
            if j == 0 and S == T:
                return {Psi(self.r): -1}
        for j, S in _reps(b, target):
            if T <= S:
                d = try_boundary(j, (S - T) | {self.r}, source)
                return {} if d is None else {d: 1}
        return {}

    def dual_support(self, k: BasisClass, source: ModuliSignature, target: ModuliSignature) -> Iterator[BasisClass]:
        if isinstance(k, (Lambda, DeltaIrr)):
            yield k
        elif isinstance(k, Psi):
            if k.label == self.r:
                d = try_boundary(0, self.T, target)
                if d is not None:
                    yield d
            else:
                yield k
        else:
            for j, S in _reps(k, source):
                if self.r in S:
                    d = try_boundary(j, (S - {self.r}) | self.T, target)
                    if d is not None:
                        yield d

    def to_json(self) -> dict[str, Any]:
        return {"tail": {"T": list(sorted_labels(self.T)), "r": self.r}}


@dataclass(frozen=True)
class AttachFixedCurve:
    """M(g - i; {x}) -> M(g): glue a fixed general genus-i curve at x."""

    i: int
    x: Label

    def __post_init__(self) -> None:
        check_label(self.x)
        if isinstance(self.i, bool) or not isinstance(self.i, int) or self.i < 1:
            raise InvalidMap(f"attached genus must be >= 1, got {self.i!r}")

    def target_of(self, source: ModuliSignature) -> ModuliSignature:
        if source.markings != frozenset([self.x]):
            raise InvalidMap(f"source must be marked by {self.x} alone, got {source}")
        return ModuliSignature(source.genus + self.i)

    def source_of(self, target: ModuliSignature) -> ModuliSignature:
        if target.n:
            raise InvalidMap(f"target must be unpointed, got {target}")
        if target.genus - self.i < 2:
            raise InvalidMap(f"source genus {target.genus - self.i} below 2")
        return ModuliSignature(target.genus - self.i, frozenset([self.x]))

    def pull_basis(self, b: BasisClass, target: ModuliSignature, source: ModuliSignature) -> Pulled:
        if isinstance(b, (Lambda, DeltaIrr)):
            return {b: 1}
        g = target.genus
        j = b.index.i
        out: Pulled = {}
        # genus-j or genus-(g-j) piece split off away from x
        _add_boundaries(out, [try_boundary(k, frozenset(), source) for k in (j, g - j)])
        own = try_boundary(self.i, frozenset(), target)
        if own == b:
            out[Psi(self.x)] = out.get(Psi(self.x), 0) - 1
        return out

    def dual_support(self, k: BasisClass, source: ModuliSignature, target: ModuliSignature) -> Iterator[BasisClass]:
        if isinstance(k, (Lambda, DeltaIrr)):
            yield k
        else:
            for b in basis(target):
                if isinstance(b, Delta):
                    yield b

    def to_json(self) -> dict[str, Any]:
        return {"attach": {"i": self.i, "x": self.x}}


MapDescriptor = Union[Forgetful, Permutation, AttachRationalTail, AttachFixedCurve]


class MapChain(tuple):
    """Composable sequence of maps; ``MapChain([m1, m2])`` means m2 after m1."""

    def __new__(cls, maps: Iterable[MapDescriptor] = ()):
        return super().__new__(cls, tuple(maps))

    def signatures_from_source(self, source: ModuliSignature) -> list[ModuliSignature]:
        sigs = [source]
        for m in self:
            sigs.append(m.target_of(sigs[-1]))
        return sigs

    def signatures_from_target(self, target: ModuliSignature) -> list[ModuliSignature]:
        sigs = [target]
        for m in reversed(self):
            sigs.append(m.source_of(sigs[-1]))
        sigs.reverse()
        return sigs

    def to_json(self) -> list[dict[str, Any]]:
        return [m.to_json() for m in self]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: Any) -> MapChain:
        if not isinstance(obj, list):
            raise SerializationError("a map chain is a JSON list")
        return cls(map_from_json(m) for m in obj)

    @classmethod
    def loads(cls, text: str) -> MapChain:
        return cls.from_json(json.loads(text))


def _label_from_json(x: Any) -> Label:
    if isinstance(x, str):
        return parse_label(x)
    return x


def map_from_json(obj: Any) -> MapDescriptor:
    if not isinstance(obj, dict) or len(obj) != 1:
        raise SerializationError(f"bad map descriptor {obj!r}")
    (kind, body), = obj.items()
    try:
        if kind == "forget":
            return Forgetful(_label_from_json(body))
        if kind == "perm":
            return Permutation({_label_from_json(a): _label_from_json(b) for a, b in body.items()})
        if kind == "tail":
            return AttachRationalTail([_label_from_json(t) for t in body["T"]], _label_from_json(body["r"]))
        if kind == "attach":
            return AttachFixedCurve(body["i"], _label_from_json(body["x"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise SerializationError(f"bad map descriptor {obj!r}") from exc
    raise SerializationError(f"unknown map kind {kind!r}")


# ---------------------------------------------------------------------------


def pullback(D: DivisorClass, m: MapDescriptor) -> DivisorClass:
    target = D.sig
    source = m.source_of(target)
    acc: dict[BasisClass, ParamValue] = {}
    for b, v in D._data.items():
        for k, c in m.pull_basis(b, target, source).items():
            w = v if c == 1 else c * v
            prev = acc.get(k)
            acc[k] = w if prev is None else prev + w
    return DivisorClass._raw(source, acc)


def pullback_chain(D: DivisorClass, chain: Sequence[MapDescriptor]) -> DivisorClass:
    return _pullback_chain(D, MapChain(chain))


@lru_cache(maxsize=64)
def _pullback_chain(D: DivisorClass, chain: MapChain) -> DivisorClass:
    # classes and maps are immutable, so results can be shared
    for m in reversed(chain):
        D = pullback(D, m)
    return D


def _push_one(C: CurveClass, m: MapDescriptor, exhaustive: bool) -> CurveClass:
    source = C.sig
    target = m.target_of(source)
    if isinstance(m, Permutation) and not exhaustive:
        # an isomorphism: the pushforward just renames the support
        fwd = m.forward
        return CurveClass._raw(target, {m._move(k, fwd, target): v for k, v in C._data.items()})
    if exhaustive:
        candidates: Iterable[BasisClass] = basis(target)
    else:
        # a target class can only pair nonzero if its pullback meets supp(C)
        found: set[BasisClass] = set()
        for k in C._data:
            found.update(m.dual_support(k, source, target))
        candidates = found
    out: dict[BasisClass, ParamValue] = {}
    for b in candidates:
        v = pair_mapping(C, m.pull_basis(b, target, source))
        if v:
            out[b] = v
    return CurveClass._raw(target, out)


def pushforward_curve(
    C: CurveClass, chain: Sequence[MapDescriptor], *, exhaustive: bool = False
) -> CurveClass:
    """Curve pushed along ``chain``, defined by (f_* C) . b = C . f^* b.

    The value on each target basis class is computed from its pullback.  By
    default only target classes whose pullback can meet the support of C are
    visited; ``exhaustive=True`` walks the whole target basis.
    """
    for m in chain:
        C = _push_one(C, m, exhaustive)
    return C
