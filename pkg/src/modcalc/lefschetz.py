"""Test curves from nodal Lefschetz pencils on blown-up K3 surfaces.

A K3 surface of genus g is blown up at delta points, through which the curves
of the pencil pass doubly, and at ell points they pass through simply.  After
base change and stabilization the pencil is a one-parameter family Gamma of
genus g - delta curves with 2*delta + ell sections.  Only its intersection
numbers and the invariants of the total space are modelled here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from modcalc.curves import CurveClass
from modcalc.errors import ConsistencyFailure, InvalidSpec
from modcalc.maps import Permutation, pushforward_curve
from modcalc.pic import (
    DELTA_IRR,
    LAMBDA,
    BasisClass,
    ModuliSignature,
    ParamValue,
    Psi,
    boundary,
)

# Pencils whose existence does not follow from the dimension count; value is
# the argument recorded in certificates.
EXISTENCE_WITNESSES: dict[tuple[int, int, int], str] = {
    (11, 1, 8): (
        "a general point of Logan's divisor on M(10,10) gives, via the K3 "
        "extension of the nodal curve C/x1~x2, a pencil in "
        "|H - 2E| through the remaining eight points"
    ),
}


@dataclass(frozen=True)
class PencilSpec:
    g: int
    delta: int
    ell: int

    def violations(self) -> list[str]:
        g, d, l = self.g, self.delta, self.ell
        out = []
        if (g + 1 - 3 * d - l < 2) and (g, d, l) not in EXISTENCE_WITNESSES:
            out.append("g+1−3δ−ℓ ≥ 2")
        if d < 0 or l < 0:
            out.append("δ, ℓ ≥ 0")
        if g - d < 2:
            out.append("g−δ ≥ 2")
        if 2 * (g - d) - 2 - 2 * d - l < 0:
            out.append("2(g−δ)−2−2δ−ℓ ≥ 0")
        return out

    def validate(self) -> PencilSpec:
        bad = self.violations()
        if bad:
            raise InvalidSpec(bad)
        return self

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    @property
    def fiber_genus(self) -> int:
        return self.g - self.delta

    @property
    def base_points(self) -> int:
        return 2 * (self.g - self.delta) - 2 - 2 * self.delta - self.ell

    def existence_note(self) -> str:
        key = (self.g, self.delta, self.ell)
        if key in EXISTENCE_WITNESSES:
            return EXISTENCE_WITNESSES[key]
        return (
            f"h0(H - 2E - F) >= g+1-3δ-ℓ = {self.g + 1 - 3 * self.delta - self.ell} >= 2 "
            "(dimension count, taken as sufficient)"
        )


def _spec(spec: PencilSpec | tuple[int, int, int]) -> PencilSpec:
    if not isinstance(spec, PencilSpec):
        spec = PencilSpec(*spec)
    return spec.validate()


def section_labels(spec: PencilSpec | tuple[int, int, int]) -> list[str]:
    """Markings in section order: e{i}_1, e{i}_2 for each doubled point, then f{j}."""
    spec = spec if isinstance(spec, PencilSpec) else PencilSpec(*spec)
    labels = []
    for i in range(1, spec.delta + 1):
        labels += [f"e{i}_1", f"e{i}_2"]
    labels += [f"f{j}" for j in range(1, spec.ell + 1)]
    return labels


def numbering(spec: PencilSpec | tuple[int, int, int]) -> Permutation:
    """Relabeling that numbers the sections 1, 2, ... in section order."""
    return Permutation({lab: k for k, lab in enumerate(section_labels(spec), start=1)})


def gamma_curve(spec: PencilSpec | tuple[int, int, int], *, numbered: bool = False) -> CurveClass:
    """Intersection numbers of Gamma(g, delta, ell) on M(g - delta; 2 delta + ell).

    With ``numbered=True`` the sections are labelled 1..2δ+ℓ instead of
    e{i}_{1,2}, f{j}.
    """
    spec = _spec(spec)
    g, d, l = spec.g, spec.delta, spec.ell
    labels = section_labels(spec)
    sig = ModuliSignature(g - d, frozenset(labels))
    two_d = 2**d
    data: dict[BasisClass, ParamValue] = {
        LAMBDA: ParamValue(two_d * (g - d + 1)),
        DELTA_IRR: ParamValue(two_d * (18 + 6 * g - 7 * d)),
    }
    if d:
        psi_e = ParamValue(2 ** (d - 1) + 4)
        for i in range(1, d + 1):
            a, b = f"e{i}_1", f"e{i}_2"
            data[Psi(a)] = psi_e
            data[Psi(b)] = psi_e
            data[boundary(0, (a, b), sig)] = ParamValue(2)
    for j in range(1, l + 1):
        data[Psi(f"f{j}")] = ParamValue(two_d)
    C = CurveClass._raw(sig, data)
    if numbered:
        C = pushforward_curve(C, [numbering(spec)])
    return C


@dataclass(frozen=True)
class SurfaceInvariants:
    c1_sq: Fraction
    c2: Fraction
    chi_holo: Fraction
    base_points: int

    def to_json(self) -> dict:
        return {
            "c1_sq": _fmt(self.c1_sq),
            "c2": _fmt(self.c2),
            "chi_holo": _fmt(self.chi_holo),
            "base_points": self.base_points,
        }


def _fmt(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def pencil_surface_invariants(spec: PencilSpec | tuple[int, int, int]) -> SurfaceInvariants:
    """Chern numbers of the total space of the stabilized family."""
    spec = _spec(spec)
    g, d = spec.g, spec.delta
    t = 2**d
    c1_sq = Fraction((6 * t - 8) * g + (6 - 5 * t) * d + 8 - 6 * t)
    c2 = Fraction((6 * t - 4) * g + (6 - 7 * t) * d + 18 * t + 4)
    return SurfaceInvariants(c1_sq, c2, (c1_sq + c2) / 12, spec.base_points)


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": _fmt(self.lhs), "rhs": _fmt(self.rhs), "ok": self.ok}


@dataclass(frozen=True)
class CrossCheckReport:
    spec: PencilSpec
    identities: tuple[Identity, ...] = field(default_factory=tuple)
    # chi(O_Gamma) = 1: the base is an iterated double cover of P^1 branched
    # at two points each time, hence rational
    assumptions: tuple[str, ...] = ("chi(O_base) = 1 (base curve rational)",)

    @property
    def ok(self) -> bool:
        return all(i.ok for i in self.identities)

    def to_json(self) -> dict:
        return {
            "identities": [i.to_json() for i in self.identities],
            "assumptions": list(self.assumptions),
            "ok": self.ok,
        }


def cross_check(spec: PencilSpec | tuple[int, int, int], *, strict: bool = True) -> CrossCheckReport:
    """Check the lambda and delta_irr numbers against the surface invariants.

    (a) Noether: Gamma.lambda = chi(O_X) - chi(O_base) * chi(O_fiber).
    (b) Euler: c2(X) = e(base) * e(fiber) + number of nodes, where the nodes
        are Gamma.delta_irr plus the 2*delta tail nodes.
    """
    spec = _spec(spec)
    C = gamma_curve(spec)
    inv = pencil_surface_invariants(spec)
    h = spec.fiber_genus
    lam = C[LAMBDA].as_fraction()
    dirr = C[DELTA_IRR].as_fraction()
    ids = (
        Identity("noether", lam, inv.chi_holo - 1 * (1 - h)),
        Identity("euler", inv.c2, Fraction(2 * (2 - 2 * h)) + dirr + 2 * spec.delta),
    )
    report = CrossCheckReport(spec, ids)
    if strict and not report.ok:
        broken = [i.name for i in ids if not i.ok]
        raise ConsistencyFailure(f"identities {broken} fail for {spec}")
    return report
