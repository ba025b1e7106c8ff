from fractions import Fraction

import pytest

from asrscore.types import COR, DEL, INS, SUB, Alignment, AlternativeSet, EditOp, percent, tokenize


def test_tokenize_collapses_whitespace():
    assert tokenize("  a\tb \n c ") == ("a", "b", "c")
    assert tokenize("") == ()


@pytest.mark.parametrize(
    "kind,ref,hyp",
    [(COR, "a", "b"), (SUB, "a", "a"), (INS, "a", "b"), (DEL, None, "a"), (SUB, None, "a"), ("XYZ", "a", "a")],
)
def test_editop_rejects_inconsistent_ops(kind, ref, hyp):
    with pytest.raises(ValueError):
        EditOp(kind, ref, hyp)


def test_alignment_counts_and_sides():
    al = Alignment((EditOp(COR, "a", "a"), EditOp(SUB, "b", "c"), EditOp(INS, None, "d"), EditOp(DEL, "e", None)))
    assert al.counts() == {"cor": 1, "sub": 1, "ins": 1, "del": 1}
    assert al.cost == 3
    assert al.ref_tokens == ("a", "b", "e")
    assert al.hyp_tokens == ("a", "c", "d")


def test_alternative_set_validation():
    s = AlternativeSet.of("we're", "we are")
    assert s.members == (("we're",), ("we", "are"))
    with pytest.raises(ValueError):
        AlternativeSet.of("we're")
    with pytest.raises(ValueError):
        AlternativeSet.of("a b", "a b")


@pytest.mark.parametrize(
    "value,text",
    [
        (Fraction(10, 13), "76.92"),
        (Fraction(10, 23), "43.48"),
        (Fraction(1, 8), "12.50"),
        (Fraction(1, 800), "0.13"),  # 0.125 rounds away from zero
        (Fraction(-1, 800), "-0.13"),
        (Fraction(0), "0.00"),
        (Fraction(3), "300.00"),
    ],
)
def test_percent_rounds_half_away_from_zero(value, text):
    assert percent(value) == text


def test_percent_none():
    assert percent(None) is None
