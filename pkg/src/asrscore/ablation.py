"""Ablation sweeps: one WER per (model, configuration) with per-column ranks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .metrics import rank_models
from .scoring import ScoreConfig, score_pairs
from .textnorm import NormConfig
from .types import AlternativeSet, percent

BASELINE = "A0"


@dataclass(frozen=True)
class AblationSpec:
    configs: Tuple[Tuple[str, ScoreConfig], ...]

    def __post_init__(self):
        names = [n for n, _ in self.configs]
        if len(set(names)) != len(names):
            raise ValueError(f"configuration names must be unique: {names}")
        if BASELINE not in names:
            raise ValueError(f"an ablation spec needs the all-on baseline {BASELINE}")

    @property
    def names(self) -> List[str]:
        return [n for n, _ in self.configs]

    def select(self, names: Sequence[str]) -> "AblationSpec":
        lookup = dict(self.configs)
        unknown = [n for n in names if n not in lookup]
        if unknown:
            raise ValueError(f"unknown configurations: {', '.join(unknown)}")
        if BASELINE not in names:
            names = [BASELINE, *names]
        return AblationSpec(tuple((n, lookup[n]) for n in names))


def default_spec(base: Optional[ScoreConfig] = None) -> AblationSpec:
    """A0 is everything on; A1..A5 switch off PUNC, ITJ, UK-US, NSW and DAE in turn."""
    base = base or ScoreConfig()
    return AblationSpec(
        (
            ("A0", base),
            ("A1", base.with_toggles({"punc": False})),
            ("A2", base.with_toggles({"itj": False})),
            ("A3", base.with_toggles({"ukus": False})),
            ("A4", base.with_toggles({"nsw": False})),
            ("A5", base.with_toggles({"dae": False})),
        )
    )


# From the naive pipeline to the full one, cheapest components first.
STACK_ORDER = ("itj", "ukus", "nsw", "dae")


def stacked_configs(base: Optional[ScoreConfig] = None) -> List[Tuple[str, ScoreConfig]]:
    base = base or ScoreConfig()
    cfg = ScoreConfig(
        NormConfig(
            case_on=True,
            punc_on=True,
            itj_on=False,
            ukus_on=False,
            nsw_on=False,
            interjection_list=base.norm.interjection_list,
            ukus_map=base.norm.ukus_map,
        ),
        dae_on=False,
    )
    steps = [("case+punc", cfg)]
    label = "case+punc"
    for stage in STACK_ORDER:
        cfg = cfg.with_toggles({stage: True})
        label = f"{label}+{stage}"
        steps.append((label, cfg))
    return steps


@dataclass(frozen=True)
class AblationTable:
    models: List[str]
    columns: List[str]
    wer: Dict[str, Dict[str, Fraction]]

    def ranks(self) -> Dict[str, Dict[str, int]]:
        by_col = {c: rank_models({m: self.wer[m][c] * 100 for m in self.models}) for c in self.columns}
        return {m: {c: by_col[c][m] for c in self.columns} for m in self.models}

    def cell(self, model: str, column: str) -> str:
        return f"{percent(self.wer[model][column])} ({self.ranks()[model][column]})"

    def rows(self) -> List[List[str]]:
        ranks = self.ranks()
        out = [["model", *self.columns]]
        for m in self.models:
            out.append([m, *(f"{percent(self.wer[m][c])} ({ranks[m][c]})" for c in self.columns)])
        return out


def run_ablation(
    refs: Sequence[Tuple[str, str]],
    hyps_by_model: Mapping[str, Mapping[str, str]],
    alts: Sequence[AlternativeSet],
    configs: Sequence[Tuple[str, ScoreConfig]],
    workers: int = 4,
) -> AblationTable:
    """``refs`` is ``[(uid, text)]``; each model maps uid to hypothesis text (missing = empty)."""
    wer: Dict[str, Dict[str, Fraction]] = {}
    for model, hyps in hyps_by_model.items():
        pairs = [(uid, text, hyps.get(uid, "")) for uid, text in refs]
        wer[model] = {}
        for name, cfg in configs:
            result = score_pairs(pairs, alts, cfg, workers)
            if result.corpus.ter is None:
                raise ValueError("every reference is empty; WER is undefined")
            wer[model][name] = result.corpus.ter
    return AblationTable(list(hyps_by_model), [n for n, _ in configs], wer)
