"""Toggleable text normalization applied identically to references and hypotheses."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from functools import cached_property, lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from ..types import TokenSeq, tokenize
from .nsw import expand_nsw

RESOURCE_DIR_ENV = "ASRSCORE_RESOURCE_DIR"
INTERJECTIONS_FILE = "interjections_en.txt"
UKUS_FILE = "ukus_en.tsv"

STAGES = ("nsw", "case", "punc", "itj", "ukus")

_QUOTES = {'"', "“", "”"}
_SINGLE_QUOTES = {"'", "‘", "’", "`"}
_HYPHENS = {"-", "‐", "‑", "–", "—"}
_STOPS = {",", ".", "?", "!"}


def _read_resource(name: str) -> str:
    override = os.environ.get(RESOURCE_DIR_ENV)
    if override and (Path(override) / name).is_file():
        return (Path(override) / name).read_text(encoding="utf-8")
    return resources.files("asrscore.textnorm.resources").joinpath(name).read_text(encoding="utf-8")


def parse_interjections(text: str) -> FrozenSet[str]:
    words = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if len(line.split()) != 1:
            raise ValueError(f"interjections line {lineno}: expected one token, got {line!r}")
        words.add(line.lower())
    return frozenset(words)


def parse_ukus(text: str) -> Mapping[str, str]:
    mapping = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        cols = line.split("\t")
        if len(cols) != 2 or not all(c.strip() and len(c.split()) == 1 for c in cols):
            raise ValueError(f"uk-us line {lineno}: expected 'UK<TAB>US', got {line!r}")
        mapping[cols[0].strip().lower()] = cols[1].strip().lower()
    return mapping


@lru_cache(maxsize=None)
def default_interjections() -> FrozenSet[str]:
    return parse_interjections(_read_resource(INTERJECTIONS_FILE))


@lru_cache(maxsize=None)
def default_ukus_map() -> Tuple[Tuple[str, str], ...]:
    return tuple(sorted(parse_ukus(_read_resource(UKUS_FILE)).items()))


@dataclass(frozen=True)
class NormConfig:
    """Which stages run, plus the word lists they use.  Canonical case is lowercase."""

    case_on: bool = True
    punc_on: bool = True
    itj_on: bool = True
    ukus_on: bool = True
    nsw_on: bool = True
    interjection_list: FrozenSet[str] = field(default_factory=default_interjections)
    ukus_map: Tuple[Tuple[str, str], ...] = field(default_factory=default_ukus_map)

    def __post_init__(self):
        object.__setattr__(self, "interjection_list", frozenset(self.interjection_list))
        if isinstance(self.ukus_map, Mapping):
            object.__setattr__(self, "ukus_map", tuple(sorted(self.ukus_map.items())))
        for w in self.interjection_list:
            if not w or any(c.isspace() for c in w):
                raise ValueError(f"interjection {w!r} must be a single token")
        for uk, us in self.ukus_map:
            if len(uk.split()) != 1 or len(us.split()) != 1 or uk != uk.lower() or us != us.lower():
                raise ValueError(f"uk-us pair {uk!r}->{us!r} must be single lowercase words")

    @classmethod
    def all_off(cls) -> "NormConfig":
        return cls(case_on=False, punc_on=False, itj_on=False, ukus_on=False, nsw_on=False)

    def with_stages(self, **flags: bool) -> "NormConfig":
        """``cfg.with_stages(itj=False)`` toggles stages by their short names."""
        changes = {}
        for name, value in flags.items():
            if name not in STAGES:
                raise ValueError(f"unknown stage {name!r}; expected one of {', '.join(STAGES)}")
            changes[f"{name}_on"] = bool(value)
        return replace(self, **changes)

    @cached_property
    def ukus_dict(self) -> dict:
        return dict(self.ukus_map)

    def enabled(self) -> dict:
        return {name: getattr(self, f"{name}_on") for name in STAGES}


def normalize_case(text: str) -> str:
    return text.lower()


def strip_punctuation(text: str) -> str:
    """Remove , . ? ! quotes and hyphens; keep apostrophes inside words.

    A period or comma between two digits is kept ("3.5", "13,000") so that
    numbers survive when NSW expansion is switched off.  Hyphens become
    spaces.  Whitespace in the result is collapsed.
    """
    out = []
    n = len(text)
    for i, c in enumerate(text):
        prev = text[i - 1] if i > 0 else ""
        nxt = text[i + 1] if i + 1 < n else ""
        if c in _STOPS:
            if c in ".," and prev.isdigit() and nxt.isdigit():
                out.append(c)
            continue
        if c in _QUOTES:
            continue
        if c in _SINGLE_QUOTES:
            if prev.isalpha() and nxt.isalpha():
                out.append("'")
            continue
        if c in _HYPHENS:
            out.append(" ")
            continue
        out.append(c)
    return " ".join("".join(out).split())


def remove_interjections(seq: Iterable[str], interjections: Iterable[str]) -> TokenSeq:
    drop = interjections if isinstance(interjections, (set, frozenset)) else set(interjections)
    return tuple(t for t in seq if t not in drop)


def unify_spelling(seq: Iterable[str], mapping) -> TokenSeq:
    if not isinstance(mapping, Mapping):
        mapping = dict(mapping)
    return tuple(mapping.get(t, t) for t in seq)


def normalize(
    text: str,
    cfg: Optional[NormConfig] = None,
    warnings: Optional[list] = None,
    trace: Optional[Callable[[str, str], None]] = None,
) -> TokenSeq:
    """Run the enabled stages in order NSW, CASE, PUNC, tokenize, ITJ, UK-US.

    ``trace(stage, text)`` is called after every enabled stage.
    """
    cfg = cfg or NormConfig()
    if cfg.nsw_on:
        text = expand_nsw(text, warnings)
        if trace:
            trace("nsw", text)
    if cfg.case_on:
        text = normalize_case(text)
        if trace:
            trace("case", text)
    if cfg.punc_on:
        text = strip_punctuation(text)
        if trace:
            trace("punc", text)
    tokens = tokenize(text)
    if cfg.itj_on:
        tokens = remove_interjections(tokens, cfg.interjection_list)
        if trace:
            trace("itj", " ".join(tokens))
    if cfg.ukus_on:
        tokens = unify_spelling(tokens, cfg.ukus_dict)
        if trace:
            trace("ukus", " ".join(tokens))
    return tokens


def normalize_many(texts: Iterable[str], cfg: Optional[NormConfig] = None) -> List[TokenSeq]:
    cfg = cfg or NormConfig()
    return [normalize(t, cfg) for t in texts]
