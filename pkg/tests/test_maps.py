from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modcalc.classes import canonical_class, delta_class, lambda_class, psi_class
from modcalc.curves import CurveClass, pair
from modcalc.errors import InvalidMap, SerializationError
from modcalc.lefschetz import gamma_curve
from modcalc.maps import (
    AttachFixedCurve,
    AttachRationalTail,
    Forgetful,
    MapChain,
    Permutation,
    pullback,
    pullback_chain,
    pushforward_curve,
)
from modcalc.pic import DELTA_IRR, LAMBDA, DivisorClass, ModuliSignature, Psi, basis, boundary

from oracles import forgetful_pullback


def unit(b, sig):
    return DivisorClass(sig, {b: 1})


# -- forgetful maps --------------------------------------------------------


@pytest.mark.parametrize(
    "g,labels,p",
    [(3, (1, 2), 3), (2, (1,), 2), (2, (1, 2, 3), 4), (4, (1, 2), "x"), (10, (1, 2, 3), 4), (10, (), 1)],
)
def test_forgetful_pullback_matches_direct_rules(g, labels, p):
    sig = ModuliSignature(g, frozenset(labels))
    for b in basis(sig):
        D = unit(b, sig)
        assert pullback(D, Forgetful(p)) == forgetful_pullback(D, p), b


def test_forgetful_pullback_of_psi_and_delta_5():
    sig = ModuliSignature(10, frozenset({"p"}))
    # both summands of delta_5 on M(10) name one divisor of M(10; {p})
    pulled = pullback(delta_class(5, ModuliSignature(10)), Forgetful("p"))
    assert pulled == unit(boundary(5, (), sig), sig)
    pulled = pullback(psi_class(1, ModuliSignature.standard(3, 1)), Forgetful(2))
    sig3 = ModuliSignature.standard(3, 2)
    assert pulled == DivisorClass(sig3, {Psi(1): 1, boundary(0, {1, 2}, sig3): -1})


def test_forgetful_commutation_exhaustive_on_m3_3():
    """Every order of forgetting markings of M(3; 1,2,3) gives the same pullbacks."""
    full = ModuliSignature.standard(3, 3)
    for k in (1, 2, 3):
        for forgotten in permutations(full.labels, k):
            target = ModuliSignature(3, full.markings - set(forgotten))
            reference = None
            for order in permutations(forgotten):
                chain = [Forgetful(p) for p in order]
                pulled = [pullback_chain(unit(b, target), chain) for b in basis(target)]
                if reference is None:
                    reference = pulled
                assert pulled == reference, (forgotten, order)
            # and against repeated application of the direct rules
            for b, got in zip(basis(target), reference):
                D = unit(b, target)
                for p in reversed(forgotten):
                    D = forgetful_pullback(D, p)
                assert got == D


def test_forgetful_commutes_with_relabeling_on_m3_3():
    """Forgetting p then renaming equals renaming then forgetting sigma(p)."""
    full = ModuliSignature.standard(3, 3)
    for perm in permutations(full.labels):
        sigma = dict(zip(full.labels, perm))
        for p in full.labels:
            rest = [x for x in full.labels if x != p]
            first_forget = [Forgetful(p), Permutation({x: sigma[x] for x in rest})]
            first_rename = [Permutation(sigma), Forgetful(sigma[p])]
            target = MapChain(first_forget).signatures_from_source(full)[-1]
            assert MapChain(first_rename).signatures_from_source(full)[-1] == target
            for b in basis(target):
                D = unit(b, target)
                assert pullback_chain(D, first_forget) == pullback_chain(D, first_rename), (perm, p, b)


def test_forgetful_signature_errors():
    with pytest.raises(InvalidMap):
        Forgetful(1).source_of(ModuliSignature.standard(3, 2))
    with pytest.raises(InvalidMap):
        Forgetful(5).target_of(ModuliSignature.standard(3, 2))


# -- relabeling ------------------------------------------------------------


def test_permutation_relabels_classes_and_round_trips():
    sig = ModuliSignature.standard(4, 3)
    sigma = Permutation({1: 2, 2: 3, 3: 1})
    inverse = Permutation({2: 1, 3: 2, 1: 3})
    D = canonical_class(sig) + unit(boundary(1, {1}, sig), sig)
    once = pullback(D, sigma)
    assert once[boundary(1, {3}, sig)] == -1  # pulled back, the class names sigma^-1
    assert pullback(once, inverse) == D


def test_permutation_can_rename_into_fresh_labels():
    src = ModuliSignature(3, frozenset({"a", "b"}))
    sigma = Permutation({"a": 1, "b": 2})
    assert sigma.target_of(src) == ModuliSignature.standard(3, 2)
    C = CurveClass(src, {Psi("a"): 3, boundary(0, {"a", "b"}, src): 1})
    pushed = pushforward_curve(C, [sigma])
    tgt = ModuliSignature.standard(3, 2)
    assert pushed == CurveClass(tgt, {Psi(1): 3, boundary(0, {1, 2}, tgt): 1})
    assert pushed == pushforward_curve(C, [sigma], exhaustive=True)


def test_permutation_must_be_injective():
    with pytest.raises(InvalidMap):
        Permutation({1: 3, 2: 3})
    with pytest.raises(InvalidMap):
        Permutation({1: 2}).target_of(ModuliSignature.standard(3, 2))


# -- gluing a rational tail ------------------------------------------------


def test_rational_tail_pullback_rules():
    tail = AttachRationalTail({1, 2}, "r")
    target = ModuliSignature.standard(4, 4)
    source = tail.source_of(target)
    assert source == ModuliSignature(4, frozenset({3, 4, "r"}))

    def pb(b):
        return pullback(unit(b, target), tail)

    assert pb(LAMBDA) == unit(LAMBDA, source)
    assert pb(Psi(1)).is_zero()
    assert pb(Psi(3)) == unit(Psi(3), source)
    assert pb(boundary(0, {1, 2}, target)) == DivisorClass(source, {Psi("r"): -1})
    assert pb(boundary(0, {1, 2, 3}, target)) == unit(boundary(0, {"r", 3}, source), source)
    assert pb(boundary(1, {1, 2}, target)) == unit(boundary(1, {"r"}, source), source)
    assert pb(boundary(1, {3}, target)) == unit(boundary(1, {3}, source), source)
    assert pb(boundary(1, {1, 3}, target)).is_zero()  # splits the tail
    assert pb(boundary(0, {3, 4}, target)) == unit(boundary(0, {3, 4}, source), source)


def test_rational_tail_validation():
    with pytest.raises(InvalidMap):
        AttachRationalTail({1}, "r")
    with pytest.raises(InvalidMap):
        AttachRationalTail({1, 2}, 1)


# -- gluing a fixed curve --------------------------------------------------


@pytest.mark.parametrize("i", [1, 2, 3, 4, 5])
def test_fixed_curve_pullback(i):
    glue = AttachFixedCurve(i, "x")
    target = ModuliSignature(10)
    source = glue.source_of(target)
    assert source == ModuliSignature(10 - i, frozenset({"x"}))
    for j in range(1, 6):
        got = pullback(delta_class(j, target), glue)
        expected = {}
        for k in {j, 10 - j}:
            # delta_{h:{}} on M(h; {x}) would leave x alone on a rational piece
            if k < source.genus:
                d = boundary(k, (), source)
                expected[d] = 1
        if j == i:
            expected[Psi("x")] = -1
        assert got == DivisorClass(source, expected), j
    assert pullback(lambda_class(target), glue) == lambda_class(source)


def test_fixed_curve_errors():
    with pytest.raises(InvalidMap):
        AttachFixedCurve(0, "x")
    with pytest.raises(InvalidMap):
        AttachFixedCurve(9, "x").source_of(ModuliSignature(10))


# -- pushforward -----------------------------------------------------------


CHAINS = [
    [Forgetful("f1"), Forgetful("f2")],
    [Permutation({"e1_1": 1, "e1_2": 2, "f1": 3, "f2": 4}), Forgetful(3), AttachRationalTail({3, 5}, 4)],
    [Forgetful("e1_1"), Forgetful("e1_2"), Permutation({"f1": "y"})],
]


@pytest.mark.parametrize("chain", CHAINS)
def test_pruned_pushforward_agrees_with_full_basis_walk(chain):
    C = gamma_curve((9, 1, 2))
    assert pushforward_curve(C, chain) == pushforward_curve(C, chain, exhaustive=True)


def test_pushforward_to_m10_via_fixed_curve_matches_full_walk():
    C = gamma_curve((7, 0, 1))
    chain = [AttachFixedCurve(3, "f1")]
    assert pushforward_curve(C, chain) == pushforward_curve(C, chain, exhaustive=True)


SIG_SMALL = ModuliSignature.standard(3, 3)
coeff = st.integers(-6, 6)


@settings(max_examples=300)
@given(
    st.dictionaries(st.sampled_from(basis(SIG_SMALL)), coeff, max_size=10),
    st.dictionaries(st.sampled_from(basis(ModuliSignature.standard(3, 1))), coeff, max_size=6),
    st.permutations([1, 2, 3]),
)
def test_projection_formula(curve_data, div_data, order):
    C = CurveClass(SIG_SMALL, curve_data)
    chain = [Forgetful(order[0]), Forgetful(order[1]), Permutation({order[2]: 1})]
    target = MapChain(chain).signatures_from_source(SIG_SMALL)[-1]
    D = DivisorClass(target, {b: v for b, v in div_data.items()})
    pushed = pushforward_curve(C, chain)
    assert pair(pushed, D) == pair(C, pullback_chain(D, chain))
    assert pushed == pushforward_curve(C, chain, exhaustive=True)


# -- serialization ---------------------------------------------------------


def test_chain_json_round_trip_is_byte_exact():
    chain = MapChain(
        [Forgetful(2), Permutation({1: 10}), AttachRationalTail([1, 2], "r"), AttachFixedCurve(3, "x")]
    )
    text = chain.dumps()
    assert text == '[{"forget":2},{"perm":{"1":"10"}},{"tail":{"T":[1,2],"r":"r"}},{"attach":{"i":3,"x":"x"}}]'
    back = MapChain.loads(text)
    assert back == chain
    assert back.dumps() == text


@pytest.mark.parametrize(
    "text", ['{"forget":1}', '[{"spin":1}]', '[{"tail":{"T":[1,2]}}]', '[{"forget":1,"perm":{}}]']
)
def test_bad_chains(text):
    with pytest.raises(SerializationError):
        MapChain.loads(text)


def test_signatures_along_a_chain():
    chain = MapChain([Forgetful(3), AttachRationalTail({1, 2}, "r")])
    sigs = chain.signatures_from_target(ModuliSignature.standard(4, 2))
    assert sigs[0] == ModuliSignature(4, frozenset({"r", 3}))
    assert chain.signatures_from_source(sigs[0]) == sigs
    assert pullback_chain(unit(DELTA_IRR, sigs[-1]), chain) == unit(DELTA_IRR, sigs[0])
