"""TER, mTER, corpus aggregation and competition ranking.

Rates are exact :class:`~fractions.Fraction` values; rounding happens only
when they are rendered.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Optional, Sequence, Union

from .types import Alignment, UtteranceScore, percent


class UndefinedMetricError(ValueError):
    """TER of an utterance with an empty reference."""


def _cost(alignment: Union[Alignment, int]) -> int:
    return alignment if isinstance(alignment, int) else alignment.cost


def ter(alignment: Union[Alignment, int], ref_len: int) -> Fraction:
    """Edit cost over reference length.  Not clamped: insertions push it past 1."""
    if ref_len <= 0:
        raise UndefinedMetricError("TER is undefined for an empty reference")
    return Fraction(_cost(alignment), ref_len)


def mter(alignment: Union[Alignment, int], ref_len: int, hyp_len: int) -> Fraction:
    """Edit cost over ``max(|ref|, |hyp|)``; always within [0, 1].

    Two empty sides are identical, so the 0/0 case is 0.
    """
    denom = max(ref_len, hyp_len)
    if denom == 0:
        return Fraction(0)
    return Fraction(_cost(alignment), denom)


def score_utterance(uid: str, alignment: Alignment, ref_len: int, hyp_len: int) -> UtteranceScore:
    """Bundle an alignment with its rates.

    ``hyp_len`` is the length of the hypothesis the alignment realized; with
    alternative expansion that is the selected variant.
    """
    return UtteranceScore(
        uid=uid,
        alignment=alignment,
        ref_len=ref_len,
        hyp_len=hyp_len,
        ter=ter(alignment, ref_len) if ref_len > 0 else None,
        mter=mter(alignment, ref_len, hyp_len),
    )


@dataclass(frozen=True)
class CorpusScore:
    n_utts: int
    total_cost: int
    total_ref_len: int
    total_denom_mter: int
    cor: int
    sub: int
    ins: int
    dele: int
    ter: Optional[Fraction]
    mter: Fraction
    macro_ter: Optional[Fraction]
    macro_mter: Fraction
    n_ter_undefined: int

    def summary(self) -> dict:
        return {
            "n_utts": self.n_utts,
            "TER": percent(self.ter),
            "mTER": percent(self.mter),
            "cor": self.cor,
            "sub": self.sub,
            "ins": self.ins,
            "del": self.dele,
            "total_cost": self.total_cost,
            "total_ref_len": self.total_ref_len,
            "total_mter_denominator": self.total_denom_mter,
            "macro_TER": percent(self.macro_ter),
            "macro_mTER": percent(self.macro_mter),
            "n_ter_undefined": self.n_ter_undefined,
        }


def corpus_aggregate(scores: Iterable[UtteranceScore]) -> CorpusScore:
    """Micro-average: summed costs over summed denominators.

    Utterances with an empty reference contribute their cost to the
    numerators; they are left out of the macro TER only.
    """
    scores = list(scores)
    if not scores:
        raise ValueError("cannot aggregate an empty corpus")
    cost = sum(s.cost for s in scores)
    ref_len = sum(s.ref_len for s in scores)
    denom = sum(max(s.ref_len, s.hyp_len) for s in scores)
    defined = [s.ter for s in scores if s.ter is not None]
    return CorpusScore(
        n_utts=len(scores),
        total_cost=cost,
        total_ref_len=ref_len,
        total_denom_mter=denom,
        cor=sum(s.alignment.n_cor for s in scores),
        sub=sum(s.alignment.n_sub for s in scores),
        ins=sum(s.alignment.n_ins for s in scores),
        dele=sum(s.alignment.n_del for s in scores),
        ter=Fraction(cost, ref_len) if ref_len else None,
        mter=Fraction(cost, denom) if denom else Fraction(0),
        macro_ter=sum(defined, Fraction(0)) / len(defined) if defined else None,
        macro_mter=sum((s.mter for s in scores), Fraction(0)) / len(scores),
        n_ter_undefined=len(scores) - len(defined),
    )


def _rendered(value) -> Decimal:
    if isinstance(value, Fraction):
        value = Decimal(value.numerator) / Decimal(value.denominator)
    else:
        value = Decimal(str(value))
    return value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def rank_models(wer_by_model: Mapping[str, object]) -> Dict[str, int]:
    """Competition ranking ("1, 1, 3") on values rounded to 2 decimals, lower is better.

    Pass the numbers in the unit they are reported in, usually percentages.
    """
    keyed = {m: _rendered(v) for m, v in wer_by_model.items()}
    ordered = sorted(keyed.values())
    first = {}
    for pos, v in enumerate(ordered, 1):
        first.setdefault(v, pos)
    return {m: first[v] for m, v in keyed.items()}


def rank_columns(table: Mapping[str, Mapping[str, object]], columns: Sequence[str]) -> Dict[str, Dict[str, int]]:
    """Rank every column of a model x column table independently."""
    return {col: rank_models({m: row[col] for m, row in table.items()}) for col in columns}
