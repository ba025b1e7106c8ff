import pytest
from hypothesis import given
from hypothesis import strategies as st

from asrscore.textnorm import expand_nsw
from asrscore.textnorm import numbers


@pytest.mark.parametrize(
    "n,words",
    [
        (0, "zero"),
        (7, "seven"),
        (13, "thirteen"),
        (21, "twenty one"),
        (100, "one hundred"),
        (105, "one hundred five"),
        (13000, "thirteen thousand"),
        (1000001, "one million one"),
    ],
)
def test_cardinal(n, words):
    assert numbers.cardinal(n) == words


@pytest.mark.parametrize("n,words", [(1, "first"), (2, "second"), (12, "twelfth"), (21, "twenty first"), (30, "thirtieth"), (100, "one hundredth")])
def test_ordinal(n, words):
    assert numbers.ordinal(n) == words


@pytest.mark.parametrize("y,words", [(1998, "nineteen ninety eight"), (2000, "two thousand"), (1905, "nineteen oh five"), (1900, "nineteen hundred"), (2023, "twenty twenty three")])
def test_year(y, words):
    assert numbers.year(y) == words


@pytest.mark.parametrize(
    "raw,expanded",
    [
        ("gave him $100.", "gave him one hundred dollars."),
        ("Just before 8.30 a.m.", "Just before eight thirty AM"),
        ("grew up in the 1980s", "grew up in the nineteen eighties"),
        ("the baggage is 12.7kg", "the baggage is twelve point seven kilograms"),
        ("in the 21st century", "in the twenty first century"),
        ("1/3 of the population", "one third of the population"),
        ("13,000 people", "thirteen thousand people"),
        ("1998/2/30", "february thirtieth nineteen ninety eight"),
    ],
)
def test_golden_vectors(raw, expanded):
    assert expand_nsw(raw) == expanded


@pytest.mark.parametrize(
    "raw,expanded",
    [
        ("$1", "one dollar"),
        ("$2.50", "two dollars fifty cents"),
        ("at 3:05", "at three oh five"),
        ("at 7:00", "at seven o'clock"),
        ("5%", "five percent"),
        ("the '80s", "the eighties"),
        ("1/2 cup", "one half cup"),
        ("3/4 done", "three quarters done"),
        ("7/23 ratio", "seven over twenty three ratio"),
        ("007", "zero zero seven"),
        ("room 12", "room twelve"),
    ],
)
def test_other_categories(raw, expanded):
    assert expand_nsw(raw) == expanded


@pytest.mark.parametrize("raw", ["1/0", "€5", "the 3th"])
def test_rejected_forms_are_left_verbatim_with_warning(raw):
    warnings = []
    assert expand_nsw(raw, warnings) == raw
    assert warnings


@given(st.integers(min_value=0, max_value=10**12))
def test_cardinal_has_no_digits_and_is_injective_on_samples(n):
    words = numbers.cardinal(n)
    assert not any(c.isdigit() for c in words)
    assert words == words.strip() and "  " not in words


@given(st.text(alphabet=st.characters(blacklist_categories=("Cs",)), max_size=40))
def test_expand_never_raises(text):
    expand_nsw(text)


@given(st.integers(min_value=0, max_value=10**9))
def test_expanded_integers_contain_no_digits(n):
    assert not any(c.isdigit() for c in expand_nsw(str(n)))
