"""ASR transcript scoring with normalization, alternative expansion, TER and mTER."""

__version__ = "0.1.0"

from .align import DaeResult, align_dae, align_dp, align_fst, align_kernel
from .dataset import (
    FormatError,
    HypothesisRecord,
    UtteranceRecord,
    join_corpus,
    parse_alternatives,
    parse_hypotheses,
    parse_metadata_tsv,
)
from .fst import SymbolTable, build_lev, linear_fst, sausage_fst
from .kernels import BACKEND
from .metrics import CorpusScore, UndefinedMetricError, corpus_aggregate, mter, rank_models, score_utterance, ter
from .scoring import ScoreConfig, score_corpus, score_pairs
from .textnorm import NormConfig, normalize
from .types import Alignment, AlternativeSet, EditOp, UtteranceScore, percent, tokenize

__all__ = [
    "BACKEND",
    "Alignment",
    "AlternativeSet",
    "CorpusScore",
    "DaeResult",
    "EditOp",
    "FormatError",
    "HypothesisRecord",
    "NormConfig",
    "ScoreConfig",
    "SymbolTable",
    "UndefinedMetricError",
    "UtteranceRecord",
    "UtteranceScore",
    "align_dae",
    "align_dp",
    "align_fst",
    "align_kernel",
    "build_lev",
    "corpus_aggregate",
    "join_corpus",
    "linear_fst",
    "mter",
    "normalize",
    "parse_alternatives",
    "parse_hypotheses",
    "parse_metadata_tsv",
    "percent",
    "rank_models",
    "sausage_fst",
    "score_corpus",
    "score_pairs",
    "score_utterance",
    "ter",
    "tokenize",
]
