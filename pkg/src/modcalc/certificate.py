"""Self-verifying certificate documents.

A certificate is a list of stages.  Each stage stores the classes and curves it
talks about inline, and a list of checks phrased only in terms of those stored
objects, so :func:`recheck_certificate` can redo every check from the JSON
document alone.
"""

from __future__ import annotations

import json
from typing import Any, Iterable, Sequence

from modcalc.curves import CurveClass, pair
from modcalc.errors import SerializationError, StageFailure
from modcalc.maps import MapChain, pullback_chain, pushforward_curve
from modcalc.pic import ZERO, Delta, DivisorClass, ParamValue, Scalar, basis_from_key, combine

RELATIONS = ("=", "<0", "<=0", ">=0", ">0")


def relation_holds(value: ParamValue, rel: str, rhs: Scalar = 0) -> bool:
    """Whether ``value rel rhs`` holds for every B >= 6 (``rhs`` only used by "=")."""
    if rel == "=":
        return value == ParamValue.coerce(rhs)
    if rel == "<0":
        return value.certainly_negative()
    if rel == "<=0":
        return value.certainly_nonpositive()
    if rel == ">=0":
        return value.certainly_nonnegative()
    if rel == ">0":
        return value.certainly_positive()
    raise ValueError(f"unknown relation {rel!r}")


def _obj_json(obj: DivisorClass | CurveClass) -> dict:
    return obj.to_json()


def _obj_from_json(obj: Any) -> DivisorClass | CurveClass:
    if isinstance(obj, dict) and obj.get("curve"):
        return CurveClass.from_json(obj)
    return DivisorClass.from_json(obj)


class Stage:
    """One named stage; checks run immediately and raise on failure."""

    def __init__(self, name: str):
        self.name = name
        self.objects: dict[str, DivisorClass | CurveClass] = {}
        self.checks: list[dict[str, Any]] = []
        self.records: dict[str, Any] = {}
        self.verified = False
        self._values: list[tuple[str, ParamValue, str]] = []

    def put(self, name: str, obj: DivisorClass | CurveClass) -> None:
        if name in self.objects and self.objects[name] != obj:
            raise ValueError(f"stage {self.name}: object {name!r} stored twice with different values")
        self.objects[name] = obj

    def record(self, key: str, value: Any) -> None:
        self.records[key] = value

    def _fail(self, detail: str):
        raise StageFailure(self.name, detail)

    def _add(self, check: dict[str, Any]) -> None:
        ok, detail = run_check(check, self.objects)
        if not ok:
            self._fail(detail)
        self.checks.append(check)

    # the check vocabulary

    def check_pair(self, curve: str, divisor: str, rel: str, rhs: Scalar = 0) -> ParamValue:
        v = pair(self.objects[curve], self.objects[divisor])
        check = {"kind": "pair", "curve": curve, "divisor": divisor, "rel": rel, "value": v.to_json()}
        if rel == "=":
            check["rhs"] = ParamValue.coerce(rhs).to_json()
        self._add(check)
        self._values.append((f"{curve}.{divisor}", v, rel))
        return v

    def check_value(self, label: str, value: Scalar, rel: str, rhs: Scalar = 0) -> None:
        v = ParamValue.coerce(value)
        check = {"kind": "value", "label": label, "rel": rel, "value": v.to_json()}
        if rel == "=":
            check["rhs"] = ParamValue.coerce(rhs).to_json()
        self._add(check)
        self._values.append((label, v, rel))

    def check_coefficient(self, name: str, key: str, rhs: Scalar) -> None:
        self._add(
            {"kind": "coefficient", "class": name, "key": key, "rhs": ParamValue.coerce(rhs).to_json()}
        )

    def check_combination(self, target: str, terms: Sequence[tuple[Scalar, str]]) -> None:
        self._add(
            {
                "kind": "combination",
                "target": target,
                "terms": [[ParamValue.coerce(c).to_json(), name] for c, name in terms],
            }
        )

    def check_pullback(self, source: str, chain: MapChain, target: str) -> None:
        self._add({"kind": "pullback", "source": source, "chain": MapChain(chain).to_json(), "target": target})

    def check_pushforward(self, source: str, chain: MapChain, target: str) -> None:
        self._add({"kind": "pushforward", "source": source, "chain": MapChain(chain).to_json(), "target": target})

    def check_boundary_positive(self, name: str) -> None:
        self._add({"kind": "boundary_positive", "class": name})
        # one audit line for all B-dependent coefficients: the smallest at B = 6
        param = [v for v in self.objects[name]._data.values() if v.slope]
        if param:
            least = min(param, key=lambda v: (v.at(), v.slope))
            label = f"least of {len(param)} B-dependent coefficients of {name}"
            self._values.append((label, least, ">0"))

    def check_genus0_free(self, name: str) -> None:
        self._add({"kind": "genus0_free", "class": name})

    def check_dominates(self, smaller: str, larger: str) -> None:
        self._add({"kind": "dominates", "smaller": smaller, "larger": larger})

    def finish(self) -> None:
        self.verified = True

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "verified": self.verified,
            "objects": {k: _obj_json(v) for k, v in self.objects.items()},
            "checks": self.checks,
            "records": self.records,
        }


def run_check(check: dict[str, Any], objects: dict[str, DivisorClass | CurveClass]) -> tuple[bool, str]:
    """Evaluate one check against stored objects; returns (ok, explanation)."""
    kind = check["kind"]
    get = objects.__getitem__
    if kind == "pair":
        v = pair(get(check["curve"]), get(check["divisor"]))
        rhs = ParamValue.from_json(check["rhs"]) if "rhs" in check else ZERO
        if ParamValue.from_json(check["value"]) != v:
            return False, f"{check['curve']}.{check['divisor']} is {v}, certificate says {check['value']}"
        ok = relation_holds(v, check["rel"], rhs)
        return ok, f"{check['curve']}.{check['divisor']} = {v}, wanted {check['rel']} {rhs}"
    if kind == "value":
        v = ParamValue.from_json(check["value"])
        rhs = ParamValue.from_json(check["rhs"]) if "rhs" in check else ZERO
        return relation_holds(v, check["rel"], rhs), f"{check['label']} = {v}, wanted {check['rel']} {rhs}"
    if kind == "coefficient":
        D = get(check["class"])
        v = D[basis_from_key(check["key"], D.sig)]
        rhs = ParamValue.from_json(check["rhs"])
        return v == rhs, f"{check['class']}[{check['key']}] = {v}, wanted {rhs}"
    if kind == "combination":
        terms = [(ParamValue.from_json(c), get(name)) for c, name in check["terms"]]
        got = combine(terms)
        target = get(check["target"])
        if got == target:
            return True, ""
        diff = combine([(1, target), (-1, got)])
        return False, f"{check['target']} differs from the combination at {[b.key() for b in list(diff)[:5]]}"
    if kind == "pullback":
        got = pullback_chain(get(check["source"]), MapChain.from_json(check["chain"]))
        return got == get(check["target"]), f"pullback of {check['source']} differs from {check['target']}"
    if kind == "pushforward":
        got = pushforward_curve(get(check["source"]), MapChain.from_json(check["chain"]))
        return got == get(check["target"]), f"pushforward of {check['source']} differs from {check['target']}"
    if kind == "boundary_positive":
        for b, v in get(check["class"]).items():
            if not isinstance(b, Delta):
                return False, f"{check['class']} has coefficient {v} on {b.key()}"
            if not v.certainly_positive():
                return False, f"{check['class']} has coefficient {v} on {b.key()}"
        return True, ""
    if kind == "genus0_free":
        bad = [b.key() for b, v in get(check["class"]).items() if isinstance(b, Delta) and b.index.i == 0]
        return not bad, f"{check['class']} still meets {bad[:5]}"
    if kind == "dominates":
        diff = combine([(1, get(check["larger"])), (-1, get(check["smaller"]))])
        bad = [(b.key(), str(v)) for b, v in diff.items() if not v.certainly_nonnegative()]
        return not bad, f"{check['smaller']} exceeds {check['larger']} at {bad[:5]}"
    return False, f"unknown check kind {kind!r}"


class Certificate:
    def __init__(self, pipeline: str, conclusion: str):
        self.pipeline = pipeline
        self.conclusion = conclusion
        self.stages: list[Stage] = []
        self.assumptions: list[tuple[str, str]] = []

    def assume(self, claim: str, source: str) -> None:
        self.assumptions.append((claim, source))

    def stage(self, name: str) -> Stage:
        st = Stage(name)
        self.stages.append(st)
        return st

    @property
    def verified(self) -> bool:
        return bool(self.stages) and all(s.verified for s in self.stages)

    def summary(self) -> str:
        done = sum(s.verified for s in self.stages)
        return f"stages {done}/{len(self.stages)} verified"

    def parameter_audit(self) -> list[dict[str, Any]]:
        """Every B-dependent value met so far, with the sign it is certified to have."""
        out = []
        seen = set()
        for st in self.stages:
            for label, v, rel in st._values:
                if not v.slope or (st.name, label, v) in seen:
                    continue
                seen.add((st.name, label, v))
                sign = v.sign()
                out.append(
                    {
                        "stage": st.name,
                        "what": label,
                        "value": v.to_json(),
                        "certified": None if sign is None else {1: ">0", -1: "<0"}[sign],
                    }
                )
        return out

    def to_json(self) -> dict[str, Any]:
        return {
            "pipeline": self.pipeline,
            "stages": [s.to_json() for s in self.stages],
            "assumptions": [{"claim": c, "source": s} for c, s in self.assumptions],
            "conclusion": self.conclusion,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"), ensure_ascii=False)


def recheck_certificate(doc: dict[str, Any] | str) -> dict[str, list[str]]:
    """Redo every check of a certificate document, trusting nothing but its objects.

    Returns a map from stage name to the list of failed-check explanations
    (empty lists everywhere means the certificate holds).
    """
    if isinstance(doc, str):
        doc = json.loads(doc)
    try:
        stages: Iterable[dict[str, Any]] = doc["stages"]
    except (TypeError, KeyError) as exc:
        raise SerializationError("certificate without stages") from exc
    report: dict[str, list[str]] = {}
    for st in stages:
        objects = {k: _obj_from_json(v) for k, v in st["objects"].items()}
        fails = []
        for check in st["checks"]:
            try:
                ok, detail = run_check(check, objects)
            except KeyError as exc:
                ok, detail = False, f"check refers to missing object {exc}"
            if not ok:
                fails.append(detail)
        if not st.get("verified"):
            fails.append("stage not marked verified")
        report[st["name"]] = fails
    return report
