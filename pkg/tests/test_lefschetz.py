from fractions import Fraction

import pytest

from modcalc.errors import InvalidSpec
from modcalc.lefschetz import (
    EXISTENCE_WITNESSES,
    PencilSpec,
    cross_check,
    gamma_curve,
    numbering,
    pencil_surface_invariants,
    section_labels,
)
from modcalc.pic import DELTA_IRR, LAMBDA, ModuliSignature, Psi, boundary


def test_gamma_11_1_8():
    C = gamma_curve((11, 1, 8))
    sig = C.sig
    assert sig == ModuliSignature(10, frozenset(section_labels((11, 1, 8))))
    assert C[LAMBDA] == 22
    assert C[DELTA_IRR] == 154
    assert C[Psi("e1_1")] == C[Psi("e1_2")] == 5
    assert all(C[Psi(f"f{j}")] == 2 for j in range(1, 9))
    assert C[boundary(0, {"e1_1", "e1_2"}, sig)] == 2
    assert len(C) == 1 + 10 + 1 + 1


def test_gamma_10_0_0():
    C = gamma_curve((10, 0, 0))
    assert C.sig == ModuliSignature(10)
    assert dict(C.items()) == {LAMBDA: 11, DELTA_IRR: 78}


def test_general_formula_with_two_doubled_points():
    C = gamma_curve((12, 2, 1))
    sig = C.sig
    assert sig.genus == 10 and sig.n == 5
    assert C[LAMBDA] == 4 * 11
    assert C[DELTA_IRR] == 4 * (18 + 72 - 14)
    assert [C[Psi(x)] for x in ("e1_1", "e1_2", "e2_1", "e2_2")] == [6] * 4
    assert C[Psi("f1")] == 4
    assert C[boundary(0, {"e1_1", "e1_2"}, sig)] == C[boundary(0, {"e2_1", "e2_2"}, sig)] == 2
    assert C[boundary(0, {"e1_1", "e2_1"}, sig)] == 0


def test_numbered_sections():
    C = gamma_curve((11, 1, 8), numbered=True)
    sig = ModuliSignature.standard(10, 10)
    assert C.sig == sig
    assert C[Psi(1)] == C[Psi(2)] == 5
    assert C[Psi(10)] == 2
    assert C[boundary(0, {1, 2}, sig)] == 2
    assert numbering((11, 1, 8)).forward["f8"] == 10


@pytest.mark.parametrize(
    "spec,broken",
    [
        ((3, 5, 0), "g+1−3δ−ℓ ≥ 2"),
        ((10, 0, 10), "g+1−3δ−ℓ ≥ 2"),
        ((4, 3, -1), "δ, ℓ ≥ 0"),
        ((3, 2, 0), "g−δ ≥ 2"),
        ((2, 2, 0), "2(g−δ)−2−2δ−ℓ ≥ 0"),
    ],
)
def test_invalid_specs_name_the_violated_inequality(spec, broken):
    with pytest.raises(InvalidSpec) as err:
        gamma_curve(spec)
    assert f"{broken} violated" in str(err.value)
    assert broken in err.value.violations


def test_existence_witness_admits_the_logan_pencil():
    spec = PencilSpec(11, 1, 8)
    assert spec.g + 1 - 3 * spec.delta - spec.ell == 1  # below the dimension count
    assert spec.is_valid
    assert (11, 1, 8) in EXISTENCE_WITNESSES
    assert "Logan" in spec.existence_note()
    assert "dimension count" in PencilSpec(10, 0, 0).existence_note()


def test_surface_invariants():
    inv = pencil_surface_invariants((11, 1, 8))
    assert (inv.c1_sq, inv.c2, inv.chi_holo) == (36, 120, 13)
    assert inv.base_points == 8
    inv = pencil_surface_invariants((10, 0, 0))
    assert (inv.c1_sq, inv.c2, inv.chi_holo, inv.base_points) == (-18, 42, 2, 18)
    assert inv.to_json()["c1_sq"] == "-18/1"


def _valid_grid():
    for g in range(4, 21):
        for d in range(0, 4):
            for ell in range(0, 7):
                spec = PencilSpec(g, d, ell)
                if spec.is_valid:
                    yield spec


def test_cross_check_on_full_valid_grid():
    specs = list(_valid_grid())
    assert len(specs) > 200
    for spec in specs:
        report = cross_check(spec)
        assert report.ok, spec
        assert [i.name for i in report.identities] == ["noether", "euler"]


def test_cross_check_identities_by_hand_at_11_1_8():
    report = cross_check((11, 1, 8))
    noether, euler = report.identities
    # 22 = 13 - 1 * (1 - 10); 120 = 2 * (2 - 20) + 154 + 2
    assert (noether.lhs, noether.rhs) == (22, Fraction(13 - 1 * (1 - 10)))
    assert (euler.lhs, euler.rhs) == (120, 2 * (2 - 20) + 154 + 2)
    assert report.to_json()["ok"] is True
