"""Base-locus peeling and the certification pipelines built on it.

The central routine is :func:`peel`.  Given a class D and pairs (E_j, C_j) of
an irreducible effective divisor and a curve covering it with C_j . E_j < 0,
every effective representative of D contains E_j with some multiplicity.
Repeatedly subtracting multiplicities until no C_j pairs negatively with the
remainder converges to the least fixed point, which is computed exactly.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from modcalc.certificate import Certificate
from modcalc.classes import (
    canonical_class,
    delta_class,
    k3_locus_class,
    lambda_class,
    logan_class,
    total_boundary,
)
from modcalc.curves import CurveClass, pair
from modcalc.errors import (
    CrossTermNegative,
    DecompositionFailure,
    FaceCheckFailure,
    ModcalcError,
    NoConvergence,
    NonCoveringCertificate,
    ParameterAmbiguous,
    RatioMismatch,
    SignatureMismatch,
    StageFailure,
)
from modcalc.lefschetz import PencilSpec, gamma_curve, section_labels
from modcalc.linalg import SingularSystem, solve_sparse
from modcalc.maps import (
    AttachFixedCurve,
    AttachRationalTail,
    Forgetful,
    MapChain,
    Permutation,
    pullback_chain,
    pushforward_curve,
)
from modcalc.pic import (
    DELTA_IRR,
    LAMBDA,
    ZERO,
    BoundaryIndex,
    Delta,
    DivisorClass,
    Label,
    ModuliSignature,
    ParamValue,
    boundary,
    boundary_indices,
    combine,
    sorted_labels,
)

SIG_10_10 = ModuliSignature.standard(10, 10)
SIG_10 = ModuliSignature(10)
MAX_SWEEPS = 64
# sweeps without a new component before switching to the exact solve
STALL_SWEEPS = 2


# ---------------------------------------------------------------------------
# peeling


@dataclass(frozen=True)
class CoveringCertificate:
    component: DivisorClass
    curve: CurveClass
    assumption_note: str = ""
    name: str = ""


@dataclass(frozen=True)
class PeelingStep:
    phase: str  # "sweep" or "active-set"
    iteration: int
    updates: int
    # sum of the negative residuals met during the step
    deficit: ParamValue

    def to_json(self) -> dict:
        return {
            "phase": self.phase,
            "iteration": self.iteration,
            "updates": self.updates,
            "deficit": self.deficit.to_json(),
        }


@dataclass(frozen=True)
class PeelingResult:
    components: tuple[DivisorClass, ...]
    multiplicities: tuple[ParamValue, ...]
    remainder: DivisorClass
    residuals: tuple[ParamValue, ...]
    trace: tuple[PeelingStep, ...]
    converged: bool

    def multiplicity(self, component: DivisorClass) -> ParamValue:
        return self.multiplicities[self.components.index(component)]

    def as_map(self) -> dict[DivisorClass, ParamValue]:
        return dict(zip(self.components, self.multiplicities))


def _pairing_rows(certs: Sequence[CoveringCertificate]) -> list[dict[int, ParamValue]]:
    # index basis class -> components containing it, then walk each curve's support
    touching: dict = {}
    for k, c in enumerate(certs):
        for b, v in c.component._data.items():
            touching.setdefault(b, []).append((k, v))
    rows = []
    for c in certs:
        row: dict[int, ParamValue] = {}
        for b, w in c.curve._data.items():
            for k, v in touching.get(b, ()):
                row[k] = row.get(k, ZERO) + w * v
        rows.append({k: v for k, v in row.items() if v})
    return rows


def peel(
    D: DivisorClass,
    certs: Sequence[CoveringCertificate],
    *,
    max_sweeps: int = MAX_SWEEPS,
    stall_sweeps: int = STALL_SWEEPS,
) -> PeelingResult:
    """Least multiplicities t >= 0 with C_j . (D - sum t_k E_k) >= 0 for all j.

    Gauss-Seidel sweeps (the geometric iteration) run first.  After
    ``max_sweeps`` sweeps, or earlier once ``stall_sweeps`` consecutive sweeps
    add no new component (0 disables this), the support of t is taken as an
    active set and solved exactly; the active set is repaired until it is
    consistent.  The answer is always re-verified.

    Raises
    ------
    NonCoveringCertificate
        Some C_j . E_j is not negative for every B >= 6.
    CrossTermNegative
        Some C_j . E_k (k != j) is not nonnegative; the monotone iteration
        would not be justified.
    ParameterAmbiguous
        A pairing matrix entry depends on B, or a residual changes sign on
        B >= 6.
    NoConvergence
        The exact solve does not pass verification.
    """
    certs = list(certs)
    n = len(certs)
    comps = [c.component for c in certs]
    if len(set(comps)) != n:
        raise ValueError("covering certificates must have distinct components")
    for c in certs:
        if c.component.sig != D.sig or c.curve.sig != D.sig:
            raise SignatureMismatch(f"certificate {c.name or '?'} is not on {D.sig}")

    rows_pv = _pairing_rows(certs)
    rows: list[dict[int, Fraction]] = []
    diag: list[Fraction] = []
    for j, row in enumerate(rows_pv):
        for k, v in row.items():
            if v.slope:
                raise ParameterAmbiguous(f"pairing C_{j}.E_{k} = {v} depends on B")
        d = row.get(j, ZERO)
        if not d.certainly_negative():
            raise NonCoveringCertificate(
                f"certificate {certs[j].name or j}: curve . component = {d} is not negative"
            )
        for k, v in row.items():
            if k != j and not v.certainly_nonnegative():
                raise CrossTermNegative(
                    f"curve {certs[j].name or j} meets component {certs[k].name or k} negatively ({v})"
                )
        rows.append({k: Fraction(v.const) for k, v in row.items()})
        diag.append(Fraction(d.const))

    p = [pair(c.curve, D) for c in certs]
    pc = [Fraction(v.const) for v in p]
    ps = [Fraction(v.slope) for v in p]
    tc = [Fraction(0)] * n
    ts = [Fraction(0)] * n

    def residual(j: int) -> tuple[Fraction, Fraction]:
        rc, rs = pc[j], ps[j]
        for k, m in rows[j].items():
            if tc[k] or ts[k]:
                rc -= m * tc[k]
                rs -= m * ts[k]
        return rc, rs

    def sign_of(j: int, rc: Fraction, rs: Fraction) -> int:
        s = ParamValue(rc, rs).sign()
        if s is None:
            raise ParameterAmbiguous(
                f"residual of {certs[j].name or j} is {ParamValue(rc, rs)}, sign depends on B"
            )
        return s

    trace: list[PeelingStep] = []
    exact = False
    stable = 0
    for sweep in range(1, max_sweeps + 1):
        updates, dc, ds = 0, Fraction(0), Fraction(0)
        grew = False
        for j in range(n):
            rc, rs = residual(j)
            if (rc < 0 and not rs) or (rs and sign_of(j, rc, rs) < 0):
                grew |= not (tc[j] or ts[j])
                tc[j] += rc / diag[j]
                ts[j] += rs / diag[j]
                updates += 1
                dc, ds = dc + rc, ds + rs
        trace.append(PeelingStep("sweep", sweep, updates, ParamValue(dc, ds)))
        if not updates:
            exact = True
            break
        stable = 0 if grew else stable + 1
        if stall_sweeps and stable >= stall_sweeps:
            break

    if not exact:
        active = {j for j in range(n) if tc[j] or ts[j]}
        for it in range(1, 2 * n + 2):
            order = sorted(active)
            pos = {j: a for a, j in enumerate(order)}
            sub = [{pos[k]: v for k, v in rows[j].items() if k in pos} for j in order]
            try:
                xc, xs = solve_sparse(sub, [[pc[j] for j in order], [ps[j] for j in order]])
            except SingularSystem as exc:
                raise NoConvergence(f"active-set system is singular: {exc}") from exc
            tc = [Fraction(0)] * n
            ts = [Fraction(0)] * n
            for a, j in enumerate(order):
                tc[j], ts[j] = xc[a], xs[a]
            drop = {j for j in order if sign_of(j, tc[j], ts[j]) < 0}
            res = {j: residual(j) for j in range(n) if j not in active}
            add = {j for j, (rc, rs) in res.items() if sign_of(j, rc, rs) < 0}
            deficit = sum((ParamValue(*res[j]) for j in add), ZERO)
            trace.append(PeelingStep("active-set", it, len(drop) + len(add), deficit))
            if not drop and not add:
                break
            active = (active - drop) | add
        else:
            raise NoConvergence("active-set repair did not settle")

    mult = tuple(ParamValue(tc[j], ts[j]) for j in range(n))
    resid = tuple(ParamValue(*residual(j)) for j in range(n))
    for j in range(n):
        if not mult[j].certainly_nonnegative():
            raise NoConvergence(f"negative multiplicity {mult[j]} for {certs[j].name or j}")
        if not resid[j].certainly_nonnegative():
            raise NoConvergence(f"residual {resid[j]} for {certs[j].name or j} stays negative")
        if mult[j] and resid[j]:
            raise NoConvergence(f"complementarity fails for {certs[j].name or j}")
    remainder = combine([(1, D)] + [(-t, E) for t, E in zip(mult, comps)])
    return PeelingResult(tuple(comps), mult, remainder, resid, tuple(trace), True)


# ---------------------------------------------------------------------------
# the curves of the M(10,10) argument


def _theta_labels(T: Iterable[int]) -> dict[int, int]:
    # order-preserving bijection {1..t} -> T, {t+1..10} -> complement
    Ts = sorted(T)
    if len(Ts) < 2 or set(Ts) - set(range(1, 11)) or len(set(Ts)) != len(Ts):
        raise ValueError(f"T must be a subset of 1..10 with at least two elements, got {Ts}")
    R = [x for x in range(1, 11) if x not in Ts]
    return dict(zip(range(1, 11), Ts + R))


def theta_chain(T: Iterable[int]) -> MapChain:
    """Maps carrying Gamma(11,1,8) to the covering curve of delta_{0:T} on M(10,10).

    The T = {1..t} case swaps markings 1 and 10, forgets 2..t, and glues a
    fixed rational tail carrying 1..t at the point that was marking 1.  Other
    T are the same construction transported by the order-preserving
    bijection {1..t} -> T, {t+1..10} -> complement.
    """
    rho = _theta_labels(T)
    t = len(set(T))
    Ts = [rho[k] for k in range(1, t + 1)]
    e1, e2, *fs = section_labels((11, 1, 8))
    # section order numbered 1..10, then swap 1 <-> 10
    relabel: dict[Label, Label] = {e1: rho[10], e2: rho[2]}
    for j, f in enumerate(fs[:-1], start=3):
        relabel[f] = rho[j]
    relabel[fs[-1]] = "r"
    maps = [Permutation(relabel)]
    maps += [Forgetful(rho[k]) for k in range(2, t + 1)]
    maps.append(AttachRationalTail(Ts, "r"))
    return MapChain(maps)


@lru_cache(maxsize=None)
def _theta_initial(t: int) -> CurveClass:
    return pushforward_curve(gamma_curve((11, 1, 8)), theta_chain(range(1, t + 1)))


def theta_curve(T: Iterable[int], *, via_symmetry: bool = True) -> CurveClass:
    """Covering curve of delta_{0:T}; pairs to -2 with it.

    By default the T = {1..t} curve is computed once per t and relabeled;
    ``via_symmetry=False`` pushes Gamma(11,1,8) along :func:`theta_chain`.
    """
    T = frozenset(T)
    rho = _theta_labels(T)
    if via_symmetry:
        C = pushforward_curve(_theta_initial(len(T)), [Permutation(rho)])
    else:
        C = pushforward_curve(gamma_curve((11, 1, 8)), theta_chain(T))
    v = C[boundary(0, T, SIG_10_10)]
    if v != -2:
        raise ArithmeticError(f"theta curve for {sorted(T)} meets delta_0:T in {v}, expected -2")
    return C


def xi_curve(i: int) -> CurveClass:
    """Gamma(10-i, 0, 1) glued to a fixed general genus-i curve at its section."""
    if not 1 <= i <= 5:
        raise ValueError("i must lie in 1..5")
    (x,) = section_labels((10 - i, 0, 1))
    return pushforward_curve(gamma_curve((10 - i, 0, 1)), [AttachFixedCurve(i, x)])


def forget_all_chain(labels: Iterable[Label]) -> MapChain:
    return MapChain(Forgetful(x) for x in sorted_labels(labels))


# ---------------------------------------------------------------------------
# the effective decomposition of K on M(10,10)


@dataclass(frozen=True)
class Decomposition:
    coefficients: dict[BoundaryIndex, ParamValue]
    divisor: DivisorClass  # K - D10 - 2 pi^* Kbar
    pulled_k3: DivisorClass  # pi^* Kbar

    def c(self, i: int, S: Iterable[Label]) -> ParamValue:
        return self.coefficients[boundary(i, S, SIG_10_10).index]


def decomposition_m1010() -> Decomposition:
    """K - D10 - 2 pi^*Kbar, checked to be a positive combination of boundary divisors."""
    K = canonical_class(SIG_10_10)
    D10 = logan_class(10)
    pulled = pullback_chain(k3_locus_class(), forget_all_chain(SIG_10_10.markings))
    E = combine([(1, K), (-1, D10), (-2, pulled)])
    for b, v in E.items():
        if not isinstance(b, Delta):
            raise DecompositionFailure(f"coefficient of {b.key()} is {v}, expected 0")
    coeffs: dict[BoundaryIndex, ParamValue] = {}
    for ix in boundary_indices(SIG_10_10):
        v = E[Delta(ix)]
        if not v.certainly_positive():
            raise DecompositionFailure(f"c_{ix} = {v} is not positive for all B >= 6")
        coeffs[ix] = v
    return Decomposition(coeffs, E, pulled)


def max_coefficients(coeffs: dict[BoundaryIndex, ParamValue]) -> dict[int, ParamValue]:
    """d_i = max_S c_{i:S}; defined when the c_{i:S} share one slope in B."""
    out: dict[int, ParamValue] = {}
    for i in range(1, 6):
        vals = [v for ix, v in coeffs.items() if ix.i == i]
        slopes = {v.slope for v in vals}
        if len(slopes) != 1:
            raise ParameterAmbiguous(f"c_{i}:S have different B-slopes {sorted(slopes)}")
        out[i] = max(vals, key=lambda v: v.const)
    return out


# ---------------------------------------------------------------------------
# certification pipeline for M(10,10)


ASSUMPTIONS_M1010 = [
    ("The K3 locus closure in M(10) is an irreducible divisor of the stated class, B >= 6.", "Farkas-Popa"),
    ("Logan's divisor D10 on M(10,10) is effective, irreducible, with the stated class.", "Logan"),
    ("Gamma(11,1,8) exists and is a covering curve for D10: " + PencilSpec(11, 1, 8).existence_note(), "covering curve for Logan's divisor"),
    ("The relabel / forget / glue-a-rational-tail image of Gamma(11,1,8) covers delta_{0:T}; relabeling covers every delta_{0:S}.", "covering curves for the rational-tail divisors"),
    ("Each intermediate class in the peeling sequence is effective, starting from K.", "peeling step"),
    ("Gamma(10,0,0) covers the K3 locus; xi_* Gamma(10-i,0,1) covers delta_i.", "covering curves on M(10)"),
    ("The boundary divisors delta_{i:S} are irreducible and rigid; nonnegative combinations of delta_1..delta_5 are rigid.", "boundary rigidity"),
    ("A positive multiple of K is effective (the decomposition), so the Kodaira dimension is >= 0.", "effective decomposition"),
    ("Pullback rules for forgetful, tail- and curve-gluing maps (fixed generic attachments).", "standard pullback formulas"),
]


def _k_component_certs() -> list[CoveringCertificate]:
    D10 = logan_class(10)
    certs = []
    for t in range(2, 11):
        for T in combinations(range(1, 11), t):
            certs.append(
                CoveringCertificate(
                    delta_class(0, SIG_10_10, T),
                    theta_curve(T),
                    "theta curve covers delta_0:T",
                    name="delta_0:{" + ",".join(map(str, T)) + "}",
                )
            )
    certs.append(
        CoveringCertificate(D10, gamma_curve((11, 1, 8), numbered=True), "Gamma(11,1,8) covers D10", "D10")
    )
    return certs


@contextmanager
def _failing_as(stage: str):
    try:
        yield
    except StageFailure:
        raise
    except ModcalcError as exc:
        raise StageFailure(stage, str(exc)) from exc


def certify_kodaira_zero_m1010() -> Certificate:
    """Run and record the five verification stages for M(10,10)."""
    cert = Certificate("m10-10-kodaira-zero", "kappa_eq_zero_given_effectivity")
    for claim, source in ASSUMPTIONS_M1010:
        cert.assume(claim, source)

    K = canonical_class(SIG_10_10)
    D10 = logan_class(10)
    Kbar = k3_locus_class()
    chain10 = forget_all_chain(SIG_10_10.markings)

    # (1) decomposition
    st = cert.stage("decomposition")
    try:
        decomp = decomposition_m1010()
    except DecompositionFailure as exc:
        raise StageFailure("decomposition", str(exc)) from exc
    st.put("K", K)
    st.put("D10", D10)
    st.put("Kbar", Kbar)
    st.put("pi*Kbar", decomp.pulled_k3)
    st.put("E", decomp.divisor)
    st.check_pullback("Kbar", chain10, "pi*Kbar")
    st.check_combination("E", [(1, "K"), (-1, "D10"), (-2, "pi*Kbar")])
    st.check_boundary_positive("E")
    st.finish()

    # (2) peeling of K along the covering curves of D10 and every delta_{0:S}
    st = cert.stage("peeling")
    certs = _k_component_certs()
    with _failing_as("peeling"):
        result = peel(K, certs)
    A = result.remainder
    st.put("K", K)
    st.put("A", A)
    st.put("E", decomp.divisor)
    terms: list[tuple[object, str]] = [(1, "A")]
    for c, t in zip(certs, result.multiplicities):
        cname, kname = "C[" + c.name + "]", "E[" + c.name + "]"
        st.put(kname, c.component)
        st.put(cname, c.curve)
        st.check_pair(cname, kname, "<0")
        st.check_pair(cname, "A", "=", 0)
        terms.append((t, kname))
        if c.name == "D10":
            st.check_value(f"multiplicity[{c.name}]", t, "=", 1)
        else:
            # the peeled multiplicity must reproduce the decomposition coefficient
            st.check_coefficient("E", c.component.items()[0][0].key(), t)
    st.check_combination("K", terms)
    st.check_genus0_free("A")
    st.record("trace", [s.to_json() for s in result.trace])
    st.finish()

    # (3) domination of A by the pullback of a class on M(10)
    st = cert.stage("domination")
    with _failing_as("domination"):
        d = max_coefficients(decomp.coefficients)
    B_class = combine([(2, Kbar)] + [(d[i], delta_class(i, SIG_10)) for i in range(1, 6)])
    pulled_B = pullback_chain(B_class, chain10)
    st.put("A", A)
    st.put("Kbar", Kbar)
    for i in range(1, 6):
        st.put(f"delta_{i}", delta_class(i, SIG_10))
        st.record(f"d_{i}", d[i].to_json())
    st.put("B_class", B_class)
    st.put("pi*B_class", pulled_B)
    st.check_combination("B_class", [(2, "Kbar")] + [(d[i], f"delta_{i}") for i in range(1, 6)])
    st.check_pullback("B_class", chain10, "pi*B_class")
    st.check_dominates("A", "pi*B_class")
    st.finish()

    # (4) rigidity of B_class on M(10)
    st = cert.stage("m10-rigidity")
    G = gamma_curve((10, 0, 0))
    dsum = combine([(d[i], delta_class(i, SIG_10)) for i in range(1, 6)])
    st.put("Kbar", Kbar)
    st.put("B_class", B_class)
    st.put("dsum", dsum)
    st.put("Gamma(10,0,0)", G)
    st.check_pair("Gamma(10,0,0)", "Kbar", "=", -1)
    st.check_pair("Gamma(10,0,0)", "B_class", "=", -2)
    for i in range(1, 6):
        xi = xi_curve(i)
        st.put(f"xi_{i}", xi)
        st.put(f"delta_{i}", delta_class(i, SIG_10))
        st.check_pair(f"xi_{i}", f"delta_{i}", "=", -1)
        st.check_pair(f"xi_{i}", "dsum", "=", -d[i])
        st.check_pair(f"xi_{i}", "dsum", "<0")
    st.finish()

    # (5) parameter audit and assumption ledger
    st = cert.stage("assumptions")
    audit = cert.parameter_audit()
    st.record("B_dependent_values", audit)
    for item in audit:
        if item["certified"] is None:
            raise StageFailure("assumptions", f"{item['what']} depends on B without a certified sign")
        st.check_value(f"{item['stage']}: {item['what']}", ParamValue.from_json(item["value"]), item["certified"])
    st.record("assumption_count", len(cert.assumptions))
    st.finish()
    return cert


# ---------------------------------------------------------------------------
# the face of the effective cone of M(10)


@dataclass(frozen=True)
class FaceReport:
    curve: CurveClass
    pairings: dict[str, ParamValue]
    annihilated: tuple[str, ...]
    certificate: Certificate = field(repr=False, default=None)


def extremal_face_check() -> FaceReport:
    """Check that pi_* Gamma(11,1,0) annihilates Kbar, delta_1, ..., delta_5."""
    G = gamma_curve((11, 1, 0))
    chain = forget_all_chain(section_labels((11, 1, 0)))
    C = pushforward_curve(G, chain)
    cert = Certificate("m10-extremal-face", "face_of_effective_cone_given_extremality")
    cert.assume("pi_* Gamma(11,1,0) is irreducible and covers a dense subset of M(10), hence nef.", "nef curve on M(10)")
    cert.assume("Kbar and delta_1..delta_5 span extremal rays; Pic(M(10)) has rank 7.", "extremality of the K3 and boundary divisors")

    st = cert.stage("nef-curve")
    st.put("Gamma(11,1,0)", G)
    st.put("B_curve", C)
    st.check_pushforward("Gamma(11,1,0)", chain, "B_curve")
    st.put("lambda", lambda_class(SIG_10))
    st.put("delta_irr", DivisorClass(SIG_10, {DELTA_IRR: 1}))
    st.check_pair("B_curve", "lambda", "=", 22)
    st.check_pair("B_curve", "delta_irr", "=", 154)
    other = [b for b in C.keys() if b not in (LAMBDA, DELTA_IRR)]
    if other:
        raise FaceCheckFailure(f"B_curve pairs nonzero with {[b.key() for b in other]}")
    st.finish()

    st = cert.stage("face")
    targets = {"Kbar": k3_locus_class()}
    for i in range(1, 6):
        targets[f"delta_{i}"] = delta_class(i, SIG_10)
    st.put("B_curve", C)
    pairings: dict[str, ParamValue] = {"lambda": pair(C, lambda_class(SIG_10)), "delta_irr": C[DELTA_IRR]}
    annihilated = []
    for name, Dv in targets.items():
        st.put(name, Dv)
        v = pair(C, Dv)
        pairings[name] = v
        if v != 0:
            raise FaceCheckFailure(f"B_curve . {name} = {v}, expected 0")
        st.check_pair("B_curve", name, "=", 0)
        annihilated.append(name)
    st.record("annihilated", annihilated)
    st.finish()
    return FaceReport(C, pairings, tuple(annihilated), cert)


# ---------------------------------------------------------------------------
# slope bound


@dataclass(frozen=True)
class SlopeBound:
    g: int
    delta: int
    curve: CurveClass
    ratio: Fraction
    threshold: Fraction

    @property
    def lam(self) -> Fraction:
        return self.curve[LAMBDA].as_fraction()

    @property
    def boundary_total(self) -> Fraction:
        return pair(self.curve, total_boundary(self.curve.sig)).as_fraction()


def slope_threshold(g: int, delta: int) -> Fraction:
    return 6 + Fraction(12 - delta, g + 1)


def slope_bound(g: int, delta: int) -> SlopeBound:
    """Push Gamma(g+delta, delta, 0) to M(g) and compare its boundary/lambda ratio."""
    if g < 3:
        raise ValueError("slope bound needs g >= 3")
    spec = PencilSpec(g + delta, delta, 0).validate()
    C = pushforward_curve(gamma_curve(spec), forget_all_chain(section_labels(spec)))
    sig = C.sig
    for j in range(1, g // 2 + 1):
        if C[boundary(j, (), sig)]:
            raise RatioMismatch(f"curve meets delta_{j}")
    ratio = pair(C, total_boundary(sig)).as_fraction() / C[LAMBDA].as_fraction()
    threshold = slope_threshold(g, delta)
    if ratio != threshold:
        raise RatioMismatch(f"ratio {ratio} differs from 6 + (12-δ)/(g+1) = {threshold}")
    return SlopeBound(g, delta, C, ratio, threshold)
