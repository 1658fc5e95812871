import random
from fractions import Fraction

import pytest

from trivec.classify import (TABLE1, TABLE2, TABLE3, classify, classify6,
                             classify6_real, classify7, classify8,
                             classify9_family, is_separable,
                             leclerc_residuals, plucker_residuals,
                             support_reduction)
from trivec.exterior import (AltTensor, canonical_state, embed_three_qutrits,
                             slocc_apply)
from trivec.oracle import random_invertible, random_state


def e(dim, *idx):
    return AltTensor.basis(dim, idx)


def test_table1_labels_and_signatures():
    for sig, label in TABLE1.items():
        out = classify6(canonical_state(6, label))
        assert out.label == label
        assert out.signature == sig


def test_classify6_examples():
    assert classify6(e(6, 1, 2, 3) + e(6, 4, 5, 6)).label == "GHZ"
    w = classify6(e(6, 1, 2, 6) + e(6, 4, 2, 3) + e(6, 1, 5, 3))
    assert (w.label, w.signature) == ("W", (6, 3, 6))
    b = classify6(e(6, 1, 2, 3) + e(6, 1, 5, 6))
    assert (b.label, b.signature) == ("Bisep", (5, 1, 4))


def test_classify6_chain_agrees_with_table_on_random_states():
    rng = random.Random(60)
    for _ in range(300):
        p = random_state(6, rng, bound=3)
        out = classify6(p)
        assert out.classified, out.detail


def test_classify6_real_split():
    plus = canonical_state(6, "GHZ+")
    minus = canonical_state(6, "GHZ-")
    assert classify6_real(plus).label == "GHZ+"
    assert classify6_real(minus).label == "GHZ-"
    assert classify6_real(e(6, 1, 2, 3)).label == "Sep"
    assert classify6_real(minus.to_float()).label == "GHZ-"
    with pytest.raises(ValueError):
        classify6_real(AltTensor.from_terms(6, 3, [((1, 2, 3), 1j)]))


def test_classify7_table_rows():
    for sig, label in TABLE2.items():
        out = classify7(canonical_state(7, label))
        assert (out.label, out.signature) == (label, sig)


def test_classify7_examples():
    assert classify7(e(7, 1, 2, 3)).signature == (0, 3, 0)
    x = classify7(canonical_state(7, "X"))
    assert x.signature == (7, 7, 7)


def test_classify8_table_rows():
    for sig, label in TABLE3.items():
        out = classify8(canonical_state(8, label))
        assert (out.label, out.signature) == (label, sig)


def test_classify8_delegation():
    sep = AltTensor.from_terms(8, 3, [((1, 2, 3), 1)])
    out = classify8(sep)
    assert out.label == "Sep"
    assert out.detail["delegated_to"] == 6
    assert out.detail["roman_equivalent"] == "II"
    # embedded seven-dimensional representatives keep their table labels;
    # those supported on six modes only come back with the six-dim name and
    # its numeral equivalent
    for label, want6 in (("V", "GHZ"), ("VI", None), ("IX", None), ("X", None)):
        emb = AltTensor.from_terms(
            8, 3, list(canonical_state(7, label).terms()))
        g = random_invertible(8, 1234)
        out = classify8(slocc_apply(g, emb))
        if want6 is None:
            assert out.label == label, (label, out)
            assert out.detail["delegated_to"] == 7
        else:
            assert out.label == want6
            assert out.detail["roman_equivalent"] == label


def test_support_reduction_rank():
    # e123 + 2 e124 = e1 ^ e2 ^ (e3 + 2 e4): a separable state of support 3
    p = AltTensor.from_terms(8, 3, [((1, 2, 3), 1), ((1, 2, 4), 2)])
    g, r = support_reduction(p)
    assert r == 3
    rotated = slocc_apply(g, p)
    assert all(t[-1] <= 3 for t, _ in rotated.terms())
    assert classify8(p).label == "Sep"


def test_classify9_families():
    params = {1: (1, 2, 4, 8), 2: (1, 2, 3), 3: (1, 2), 4: (1, 2),
              5: (1,), 6: (1,), 7: ()}
    for fam, ps in params.items():
        out = classify9_family(canonical_state(9, f"family{fam}", ps),
                               compute_rank_t=False)
        assert out.label == f"family{fam}"


def test_classify9_generic_qutrit_lands_in_family2():
    rng = random.Random(61)
    psi = {(m1, m2, m3): Fraction(rng.randint(-4, 4), rng.randint(1, 2))
           for m1 in (1, 2, 3) for m2 in (1, 2, 3) for m3 in (1, 2, 3)}
    out = classify9_family(embed_three_qutrits(psi), compute_rank_t=False)
    assert out.label == "family2"


def test_classify9_qutrit_families_consistent_with_separation():
    # normal forms whose invariant verdicts put them in distinct qutrit
    # families map to the matching fermionic families
    from trivec.invariants import qutrit_normal_invariants
    cases = [(1, 2, 3), (1, 1, 0), (1, 0, 0)]
    for (a, b, c) in cases:
        inv = qutrit_normal_invariants(Fraction(a), Fraction(b), Fraction(c))
        psi = {}
        for trip in ((1, 1, 1), (2, 2, 2), (3, 3, 3)):
            psi[trip] = Fraction(a)
        for trip in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            psi[trip] = Fraction(-b)
        for trip in ((1, 3, 2), (2, 1, 3), (3, 2, 1)):
            psi[trip] = Fraction(c)
        out = classify9_family(embed_three_qutrits(psi), compute_rank_t=False)
        if inv["D36"] != 0:
            assert out.label == "family2"
        elif inv["D24"] != 0 or inv["D21"] != 0:
            assert out.label in ("family3", "family5")
        else:
            assert out.label in ("family6", "family7")


def test_plucker_anchors():
    assert is_separable(e(6, 1, 2, 3))
    assert not is_separable(e(6, 1, 2, 3) + e(6, 4, 5, 6))
    residuals = plucker_residuals(e(6, 1, 2, 3) + e(6, 4, 5, 6))
    assert any(v for _, v in residuals)
    assert is_separable(AltTensor.zero(6, 3))


def test_separability_is_group_invariant():
    rng = random.Random(62)
    for dim in (6, 7, 8, 9):
        sep = e(dim, 1, 2, 3)
        for _ in range(5):
            g = random_invertible(dim, rng)
            assert is_separable(slocc_apply(g, sep))


def test_leclerc_agrees_with_general_residuals():
    rng = random.Random(63)
    for _ in range(40):
        p = random_state(6, rng, bound=3)
        general = all(not v for _, v in plucker_residuals(p))
        block = all(not v for v in leclerc_residuals(p))
        assert general == block
    sep_img = slocc_apply(random_invertible(6, rng), e(6, 1, 2, 3))
    assert all(not v for v in leclerc_residuals(sep_img))


def test_class_labels_stable_under_group():
    rng = random.Random(64)
    for label in ("Sep", "W", "GHZ"):
        p = canonical_state(6, label)
        for _ in range(5):
            assert classify6(slocc_apply(random_invertible(6, rng), p)).label == label
    for label in ("III", "VII", "X"):
        p = canonical_state(7, label)
        for _ in range(3):
            assert classify7(slocc_apply(random_invertible(7, rng), p)).label == label


def test_float_mode_classification():
    ghzf = canonical_state(6, "GHZ").to_float()
    assert classify6(ghzf).label == "GHZ"
    xf = canonical_state(7, "X").to_float()
    assert classify7(xf).label == "X"


def test_classify_dispatch():
    assert classify(canonical_state(6, "W")).label == "W"
    assert classify(canonical_state(7, "IV")).label == "IV"
    with pytest.raises(ValueError):
        classify(AltTensor.zero(5, 3))
