"""Corpus scoring: normalize both sides, align, and aggregate.

Normalization and symbol registration run sequentially; alignment runs on
a bounded thread pool whose results are merged back in input order, so
output never depends on completion order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Tuple

from .align import align_dae
from .dataset import HypothesisRecord, UtteranceRecord
from .fst import SymbolTable
from .metrics import CorpusScore, corpus_aggregate, score_utterance
from .textnorm import STAGES, NormConfig, normalize
from .types import AlternativeSet, TokenSeq, UtteranceScore

logger = logging.getLogger(__name__)

ALL_STAGES = STAGES + ("dae",)
DEFAULT_WORKERS = 4


@dataclass(frozen=True)
class ScoreConfig:
    norm: NormConfig = field(default_factory=NormConfig)
    dae_on: bool = True

    def with_toggles(self, toggles: Dict[str, bool]) -> "ScoreConfig":
        """Apply ``{"itj": False, "dae": True, ...}``."""
        toggles = dict(toggles)
        dae = toggles.pop("dae", self.dae_on)
        return replace(self, norm=self.norm.with_stages(**toggles), dae_on=bool(dae))

    def enabled(self) -> Dict[str, bool]:
        return {**self.norm.enabled(), "dae": self.dae_on}

    def echo(self) -> dict:
        """What the summary records about the configuration."""
        return {
            "stages": self.enabled(),
            "interjections": sorted(self.norm.interjection_list),
            "ukus_pairs": len(self.norm.ukus_map),
        }


def parse_toggle(spec: str) -> Tuple[str, bool]:
    """``"itj=off"`` -> ``("itj", False)``."""
    name, sep, value = spec.partition("=")
    name, value = name.strip().lower(), value.strip().lower()
    if not sep or name not in ALL_STAGES:
        raise ValueError(f"bad toggle {spec!r}; expected <stage>=<on|off> with stage in {', '.join(ALL_STAGES)}")
    if value not in ("on", "off"):
        raise ValueError(f"bad toggle {spec!r}; value must be on or off")
    return name, value == "on"


@dataclass(frozen=True)
class ScoredUtterance:
    score: UtteranceScore
    ref_tokens: TokenSeq
    hyp_tokens: TokenSeq
    selected_hyp: TokenSeq

    @property
    def uid(self) -> str:
        return self.score.uid


@dataclass(frozen=True)
class CorpusResult:
    utterances: List[ScoredUtterance]
    corpus: CorpusScore
    config: ScoreConfig


def _map_ordered(fn, items, workers: int):
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def score_pairs(
    pairs: Sequence[Tuple[str, str, str]],
    alts: Sequence[AlternativeSet] = (),
    config: Optional[ScoreConfig] = None,
    workers: int = DEFAULT_WORKERS,
) -> CorpusResult:
    """Score ``(uid, ref_text, hyp_text)`` triples."""
    config = config or ScoreConfig()
    if not pairs:
        raise ValueError("no utterances to score")
    use_alts = tuple(alts) if config.dae_on else ()
    normed = []
    for uid, ref_text, hyp_text in pairs:
        warnings: list = []
        ref = normalize(ref_text, config.norm, warnings)
        hyp = normalize(hyp_text, config.norm, warnings)
        for w in warnings:
            logger.debug("%s: %s", uid, w)
        normed.append((uid, ref, hyp))

    table = SymbolTable()
    table.add_alternatives(use_alts)
    for _, ref, hyp in normed:
        table.add_all(ref)
        table.add_all(hyp)
    table.freeze()

    def run(item):
        uid, ref, hyp = item
        res = align_dae(ref, hyp, use_alts, table)
        return ScoredUtterance(
            score_utterance(uid, res.alignment, len(ref), res.selected_hyp_len),
            ref,
            hyp,
            res.selected_hyp,
        )

    scored = _map_ordered(run, normed, workers)
    return CorpusResult(scored, corpus_aggregate(s.score for s in scored), config)


def score_corpus(
    pairs: Sequence[Tuple[UtteranceRecord, HypothesisRecord]],
    alts: Sequence[AlternativeSet] = (),
    config: Optional[ScoreConfig] = None,
    workers: int = DEFAULT_WORKERS,
) -> CorpusResult:
    """Score joined dataset records (see :func:`asrscore.dataset.join_corpus`)."""
    return score_pairs([(r.id, r.text, h.text) for r, h in pairs], alts, config, workers)
