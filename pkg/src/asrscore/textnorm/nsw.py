"""Rule-based expansion of non-standard words (numbers, money, dates, times, units).

Rules run category by category; each category is a single regex whose
alternatives are ordered longest-first.  A match the rules cannot read
(month 13, "21th", "5/0") is kept verbatim and shielded from the later
categories, and a warning is recorded.
"""

import logging
import re

from .numbers import MONTHS, cardinal, digits, ordinal, ordinal_word, plural_word, year

logger = logging.getLogger(__name__)

_NUM = r"\d{1,3}(?:,\d{3})+|\d+"
_NOT_AFTER = r"(?<![\w.,/])"
_NOT_BEFORE = r"(?![\w/]|[.,]\d)"

_DATE_RE = re.compile(_NOT_AFTER + r"(\d{4})([/-])(\d{1,2})\2(\d{1,2})" + _NOT_BEFORE)
_TIME_RE = re.compile(
    r"(?<![\w.,:])(\d{1,2})(?:[.:](\d{2}))?\s?([AaPp])\.?\s?[Mm]\.?(?![\w])"
    r"|(?<![\w.,:])(\d{1,2}):(\d{2})(?![\w:]|[.,]\d)"
)
_CURRENCY_RE = re.compile(
    r"\$(" + _NUM + r")(?:\.(\d+))?(?:\s(thousand|million|billion|trillion)\b)?(?![\d])"
)
_OTHER_CURRENCY_RE = re.compile(r"[£€¥₹](?:" + _NUM + r")(?:\.\d+)?")

_UNITS = {
    "kg": ("kilogram", "kilograms"),
    "km": ("kilometer", "kilometers"),
    "cm": ("centimeter", "centimeters"),
    "mm": ("millimeter", "millimeters"),
    "mg": ("milligram", "milligrams"),
    "ml": ("milliliter", "milliliters"),
    "mph": ("mile per hour", "miles per hour"),
    "lbs": ("pound", "pounds"),
    "lb": ("pound", "pounds"),
    "g": ("gram", "grams"),
    "%": ("percent", "percent"),
}
_UNIT_ALT = "|".join(re.escape(u) for u in sorted(_UNITS, key=len, reverse=True))
_UNIT_RE = re.compile(_NOT_AFTER + r"(" + _NUM + r")(?:\.(\d+))?\s?(" + _UNIT_ALT + r")(?![\w])")
_DECIMAL_RE = re.compile(_NOT_AFTER + r"(" + _NUM + r")\.(\d+)" + _NOT_BEFORE)
_DECADE_RE = re.compile(r"(?<![\w.,/'])(\d{3}0)s\b|(?<![\w])'(\d0)s\b")
_ORDINAL_RE = re.compile(_NOT_AFTER + r"(" + _NUM + r")(st|nd|rd|th)\b")
_FRACTION_RE = re.compile(_NOT_AFTER + r"(\d+)/(\d+)" + _NOT_BEFORE)
_GROUPED_RE = re.compile(_NOT_AFTER + r"(\d{1,3}(?:,\d{3})+)" + _NOT_BEFORE)
_CARDINAL_RE = re.compile(_NOT_AFTER + r"(\d+)" + _NOT_BEFORE)

_SHIELD_OPEN = "\ue000"
_SHIELD_CLOSE = "\ue001"
_SHIELD_RE = re.compile(_SHIELD_OPEN + "([a-z]+)" + _SHIELD_CLOSE)

_SPECIAL_DENOMINATORS = {2: "half", 4: "quarter"}
_MAX_FRACTION_DENOMINATOR = 20


def _int(s):
    return int(s.replace(",", ""))


def _number(int_part, frac_part=None):
    words = cardinal(_int(int_part))
    if frac_part:
        words += " point " + digits(frac_part)
    return words


def _ordinal_suffix(n):
    if n % 100 in (11, 12, 13):
        return "th"
    return {1: "st", 2: "nd", 3: "rd"}.get(n % 10, "th")


class _Expander:
    def __init__(self, warnings):
        self.warnings = warnings
        self.shielded = []

    def reject(self, m, why):
        msg = f"cannot normalize {m.group(0)!r}: {why}"
        logger.warning(msg)
        if self.warnings is not None:
            self.warnings.append(msg)
        self.shielded.append(m.group(0))
        return _SHIELD_OPEN + _index_letters(len(self.shielded) - 1) + _SHIELD_CLOSE

    def date(self, m):
        y, mon, day = int(m.group(1)), int(m.group(3)), int(m.group(4))
        if not 1 <= mon <= 12:
            return self.reject(m, "month out of range")
        if not 1 <= day <= 31:
            return self.reject(m, "day out of range")
        return f"{MONTHS[mon - 1]} {ordinal(day)} {year(y)}"

    def time(self, m):
        if m.group(1) is not None:
            hour, minute, meridiem = m.group(1), m.group(2), m.group(3).upper() + "M"
            if not 1 <= int(hour) <= 12:
                return self.reject(m, "hour out of range for a.m./p.m.")
        else:
            hour, minute, meridiem = m.group(4), m.group(5), None
            if int(hour) > 23:
                return self.reject(m, "hour out of range")
        if minute is not None and int(minute) > 59:
            return self.reject(m, "minute out of range")
        words = [cardinal(int(hour))]
        if minute is not None and int(minute) > 0:
            if int(minute) < 10:
                words.append("oh " + cardinal(int(minute)))
            else:
                words.append(cardinal(int(minute)))
        elif meridiem is None:
            words.append("o'clock")
        if meridiem:
            words.append(meridiem)
        return " ".join(words)

    def currency(self, m):
        amount, cents, scale = m.group(1), m.group(2), m.group(3)
        if scale:
            return f"{_number(amount, cents)} {scale} dollars"
        dollars = _int(amount)
        if cents is not None and len(cents) > 2:
            return f"{_number(amount, cents)} dollars"
        parts = []
        if dollars or not cents:
            parts.append(cardinal(dollars) + (" dollar" if dollars == 1 else " dollars"))
        if cents:
            c = int(cents.ljust(2, "0"))
            if c:
                parts.append(cardinal(c) + (" cent" if c == 1 else " cents"))
        return " ".join(parts) if parts else "zero dollars"

    def other_currency(self, m):
        return self.reject(m, "only $ amounts are expanded")

    def unit(self, m):
        amount, frac, unit = m.group(1), m.group(2), m.group(3)
        singular, plural = _UNITS[unit]
        name = singular if (frac is None and _int(amount) == 1) else plural
        return f"{_number(amount, frac)} {name}"

    def decimal(self, m):
        return _number(m.group(1), m.group(2))

    def decade(self, m):
        if m.group(1) is not None:
            words = year(int(m.group(1))).split()
        else:
            words = cardinal(int(m.group(2))).split()
        words[-1] = plural_word(words[-1])
        return " ".join(words)

    def ordinal(self, m):
        n = _int(m.group(1))
        if m.group(2) != _ordinal_suffix(n):
            return self.reject(m, "ordinal suffix does not agree with the number")
        return ordinal(n)

    def fraction(self, m):
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            return self.reject(m, "zero denominator")
        if den == 1 or den > _MAX_FRACTION_DENOMINATOR:
            return f"{cardinal(num)} over {cardinal(den)}"
        word = _SPECIAL_DENOMINATORS.get(den) or ordinal_word(cardinal(den).split()[-1])
        if num != 1:
            word = plural_word(word)
        return f"{cardinal(num)} {word}"

    def grouped(self, m):
        return cardinal(_int(m.group(1)))

    def cardinal(self, m):
        s = m.group(1)
        if len(s) > 1 and s.startswith("0") or len(s) > 15:
            return digits(s)
        n = int(s)
        if len(s) == 4 and 1100 <= n <= 2099:
            return year(n)
        return cardinal(n)


def _index_letters(i):
    out = ""
    while True:
        out = chr(ord("a") + i % 26) + out
        i //= 26
        if not i:
            return out


def _letters_index(s):
    i = 0
    for c in s:
        i = i * 26 + ord(c) - ord("a")
    return i


def expand_nsw(text: str, warnings: list = None) -> str:
    """Rewrite numbers, money, dates, times and units into spoken words.

    Text without digits is returned unchanged.  Problems are appended to
    ``warnings`` (when given) and logged; they never raise.
    """
    if not any(c.isdigit() for c in text):
        return text
    ex = _Expander(warnings)
    for pattern, fn in (
        (_DATE_RE, ex.date),
        (_TIME_RE, ex.time),
        (_CURRENCY_RE, ex.currency),
        (_OTHER_CURRENCY_RE, ex.other_currency),
        (_UNIT_RE, ex.unit),
        (_DECIMAL_RE, ex.decimal),
        (_DECADE_RE, ex.decade),
        (_ORDINAL_RE, ex.ordinal),
        (_FRACTION_RE, ex.fraction),
        (_GROUPED_RE, ex.grouped),
        (_CARDINAL_RE, ex.cardinal),
    ):
        text = pattern.sub(fn, text)
    if ex.shielded:
        text = _SHIELD_RE.sub(lambda m: ex.shielded[_letters_index(m.group(1))], text)
    return text
