"""Readers and writers for metadata TSVs, hypothesis TSVs and alternative-set files.

Every parse failure raises :class:`FormatError` carrying the 1-based line
number.  Input may use LF or CRLF line endings; output always uses LF.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Iterator, List, Tuple, Union

from .textnorm import normalize_case, strip_punctuation
from .types import AlternativeSet, tokenize

logger = logging.getLogger(__name__)

METADATA_HEADER = ("ID", "AUDIO", "DURATION", "TEXT")
HYPOTHESIS_HEADER = ("ID", "TEXT")
MAX_DURATION_S = 60.0


class FormatError(ValueError):
    def __init__(self, message: str, line: int = None, source: str = None):
        self.line = line
        self.source = source
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


@dataclass(frozen=True)
class UtteranceRecord:
    id: str
    audio_path: str
    duration_s: float
    text: str


@dataclass(frozen=True)
class HypothesisRecord:
    id: str
    text: str


Source = Union[str, Path, IO[str], Iterable[str]]


def _lines(stream) -> Iterator[Tuple[int, str]]:
    for lineno, line in enumerate(stream, 1):
        yield lineno, line.rstrip("\r\n")


def _open(source: Source):
    if isinstance(source, (str, Path)):
        return open(source, encoding="utf-8", newline="")
    return None


def _source_name(source) -> str:
    if isinstance(source, (str, Path)):
        return str(source)
    return getattr(source, "name", None)


def _with_stream(parse):
    def wrapper(source: Source, *args, **kwargs):
        fh = _open(source)
        name = _source_name(source)
        try:
            return parse(fh if fh is not None else source, name, *args, **kwargs)
        except UnicodeDecodeError as e:
            raise FormatError(f"not valid UTF-8: {e}", source=name) from e
        finally:
            if fh is not None:
                fh.close()

    wrapper.__name__ = parse.__name__
    wrapper.__doc__ = parse.__doc__
    return wrapper


def _check_header(line: str, expected, name) -> None:
    cols = tuple(c.strip().upper() for c in line.split("\t"))
    if cols != expected:
        raise FormatError(f"expected header {'<TAB>'.join(expected)!r}, got {line!r}", 1, name)


@_with_stream
def parse_metadata_tsv(stream, name=None) -> List[UtteranceRecord]:
    """Parse ``ID<TAB>AUDIO<TAB>DURATION<TAB>TEXT`` rows after a header line.

    TEXT runs to the end of the line, so it may contain spaces and tabs.
    """
    records = []
    seen = {}
    for lineno, line in _lines(stream):
        if lineno == 1:
            _check_header(line, METADATA_HEADER, name)
            continue
        if not line.strip():
            continue
        cols = line.split("\t", 3)
        if len(cols) != 4:
            raise FormatError(f"expected 4 tab-separated columns, got {len(cols)}", lineno, name)
        uid, audio, duration, text = cols
        if not uid or any(c.isspace() for c in uid):
            raise FormatError(f"ID must be non-empty and free of whitespace, got {uid!r}", lineno, name)
        if uid in seen:
            raise FormatError(f"duplicate ID {uid!r} (first seen on line {seen[uid]})", lineno, name)
        try:
            dur = float(duration)
        except ValueError:
            raise FormatError(f"unparseable duration {duration!r}", lineno, name) from None
        if not math.isfinite(dur) or dur < 0:
            raise FormatError(f"duration must be a non-negative number, got {duration!r}", lineno, name)
        if dur > MAX_DURATION_S:
            logger.warning("%s:%d: utterance %s lasts %.3fs (> %gs)", name, lineno, uid, dur, MAX_DURATION_S)
        seen[uid] = lineno
        records.append(UtteranceRecord(uid, audio, dur, text))
    return records


def _fmt_duration(d: float) -> str:
    return f"{d:.3f}" if round(d, 3) == d else repr(d)


def write_metadata_tsv(records: Iterable[UtteranceRecord], stream: IO[str]) -> None:
    stream.write("\t".join(METADATA_HEADER) + "\n")
    for r in records:
        stream.write(f"{r.id}\t{r.audio_path}\t{_fmt_duration(r.duration_s)}\t{r.text}\n")


@_with_stream
def parse_hypotheses(stream, name=None) -> List[HypothesisRecord]:
    """Parse ``ID<TAB>TEXT`` rows after a header line.  A row with no TEXT is an empty hypothesis."""
    records = []
    seen = {}
    for lineno, line in _lines(stream):
        if lineno == 1:
            _check_header(line, HYPOTHESIS_HEADER, name)
            continue
        if not line.strip():
            continue
        if "\t" in line:
            uid, text = line.split("\t", 1)
        else:
            uid, text = line, ""
            logger.warning("%s:%d: no TEXT column for %s; scoring an empty hypothesis", name, lineno, uid)
        if not uid or any(c.isspace() for c in uid):
            raise FormatError(f"ID must be non-empty and free of whitespace, got {uid!r}", lineno, name)
        if uid in seen:
            raise FormatError(f"duplicate ID {uid!r} (first seen on line {seen[uid]})", lineno, name)
        seen[uid] = lineno
        records.append(HypothesisRecord(uid, text))
    return records


def write_hypotheses(records: Iterable[HypothesisRecord], stream: IO[str]) -> None:
    stream.write("\t".join(HYPOTHESIS_HEADER) + "\n")
    for r in records:
        stream.write(f"{r.id}\t{r.text}\n")


def normalize_member(text: str) -> Tuple[str, ...]:
    """Alternative members are stored lowercased with punctuation stripped."""
    return tokenize(strip_punctuation(normalize_case(text)))


@_with_stream
def parse_alternatives(stream, name=None) -> List[AlternativeSet]:
    """One set per line, members separated by ``=``; ``#`` starts a comment.

    Members that collapse to the same tokens after normalization
    ("story-teller" and "story teller") are merged with a warning.
    """
    sets = []
    for lineno, line in _lines(stream):
        line = line.split("#", 1)[0]
        if not line.strip():
            continue
        raw = [m.strip() for m in line.split("=")]
        if any(not m for m in raw):
            raise FormatError("empty alternative member", lineno, name)
        if len(set(raw)) != len(raw):
            raise FormatError("duplicate alternative member", lineno, name)
        members = []
        for m in raw:
            tokens = normalize_member(m)
            if not tokens:
                raise FormatError(f"member {m!r} is empty after normalization", lineno, name)
            if tokens in members:
                logger.warning("%s:%d: %r duplicates another member after normalization", name, lineno, m)
                continue
            members.append(tokens)
        if len(members) < 2:
            raise FormatError("an alternative set needs at least two distinct members", lineno, name)
        sets.append(AlternativeSet(tuple(members)))
    return sets


def join_corpus(
    refs: List[UtteranceRecord], hyps: List[HypothesisRecord]
) -> List[Tuple[UtteranceRecord, HypothesisRecord]]:
    """Pair every reference with its hypothesis, in reference order.

    A missing hypothesis is scored as empty (all deletions); a hypothesis
    with no reference is an error.
    """
    by_id = {h.id: h for h in hyps}
    known = {r.id for r in refs}
    extra = [h.id for h in hyps if h.id not in known]
    if extra:
        raise FormatError(f"hypothesis IDs not in the reference set: {', '.join(extra[:10])}")
    pairs = []
    for r in refs:
        h = by_id.get(r.id)
        if h is None:
            logger.warning("no hypothesis for %s; scoring an empty hypothesis", r.id)
            h = HypothesisRecord(r.id, "")
        pairs.append((r, h))
    return pairs
