"""Renderers: pretty alignment blocks, JSONL records, summary JSON and CSV tables.

Everything here is a pure function of its inputs so reruns are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Dict, Iterable, List, Optional, Sequence

from . import __version__
from .types import COR, DEL, INS, SUB, Alignment, UtteranceScore, percent

EDIT_MARK = {COR: "", SUB: "S", INS: "I", DEL: "D"}
FIG_KEYS = ("uid", "TER", "mTER", "cor", "sub", "ins", "del")
EXTENSION_PREFIX = "x_"


def _num(rate) -> Optional[float]:
    # 2-decimal strings survive float repr unchanged ("43.48" -> 43.48)
    text = percent(rate)
    return None if text is None else float(text)


def header_line(score: UtteranceScore) -> str:
    c = score.alignment.counts()
    ter = percent(score.ter) if score.ter is not None else "null"
    return (
        f'{{"uid":{json.dumps(score.uid, ensure_ascii=False)}, "TER":{ter}, "mTER":{percent(score.mter)}, '
        f'"cor":{c["cor"]}, "sub":{c["sub"]}, "ins":{c["ins"]}, "del":{c["del"]}}}'
    )


def alignment_rows(alignment: Alignment) -> List[str]:
    """REF, HYP and EDIT rows with every column padded to its widest cell."""
    ref_cells, hyp_cells, edit_cells = [], [], []
    for op in alignment.ops:
        r = op.ref if op.ref is not None else "*"
        h = op.hyp if op.hyp is not None else "*"
        w = max(len(r), len(h))
        ref_cells.append(r.ljust(w))
        hyp_cells.append(h.ljust(w))
        edit_cells.append(EDIT_MARK[op.kind].ljust(w))
    return [
        "  REF  : " + " ".join(ref_cells),
        "  HYP  : " + " ".join(hyp_cells),
        "  EDIT : " + " ".join(edit_cells),
    ]


def render_alignment(score: UtteranceScore) -> str:
    return "\n".join([header_line(score), *alignment_rows(score.alignment)]) + "\n"


def counts_from_rendered(block: str) -> Dict[str, int]:
    """Re-derive counts from a rendered block by reading its EDIT row."""
    lines = block.splitlines()
    ref = next(l for l in lines if l.startswith("  REF  : "))
    edit = next(l for l in lines if l.startswith("  EDIT : "))
    n_cols = len(ref[len("  REF  : "):].split())
    marks = edit[len("  EDIT : "):].split()
    counts = {"sub": marks.count("S"), "ins": marks.count("I"), "del": marks.count("D")}
    counts["cor"] = n_cols - sum(counts.values())
    return counts


def utterance_record(score: UtteranceScore, extras: Optional[dict] = None) -> dict:
    c = score.alignment.counts()
    rec = {
        "uid": score.uid,
        "TER": _num(score.ter),
        "mTER": _num(score.mter),
        "cor": c["cor"],
        "sub": c["sub"],
        "ins": c["ins"],
        "del": c["del"],
    }
    for k, v in (extras or {}).items():
        rec[EXTENSION_PREFIX + k] = v
    return rec


def jsonl(records: Iterable[dict]) -> str:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)


def summary_document(corpus, config_echo: dict, inputs: Optional[dict] = None) -> dict:
    s = corpus.summary()
    return {
        "tool": "asrscore",
        "version": __version__,
        "config": config_echo,
        "inputs": inputs or {},
        "n_utts": s["n_utts"],
        "micro": {
            "TER": _num(corpus.ter),
            "mTER": _num(corpus.mter),
            "cost": s["total_cost"],
            "ref_len": s["total_ref_len"],
            "mter_denominator": s["total_mter_denominator"],
        },
        "macro": {
            "TER": _num(corpus.macro_ter),
            "mTER": _num(corpus.macro_mter),
            "n_ter_undefined": s["n_ter_undefined"],
        },
        "counts": {k: s[k] for k in ("cor", "sub", "ins", "del")},
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def csv_text(rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def text_table(rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in rows) for i in range(len(rows[0]))]
    out = []
    for r in rows:
        out.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def summary_text(corpus) -> str:
    s = corpus.summary()
    return (
        f"utterances: {s['n_utts']}\n"
        f"TER (micro): {s['TER']}  mTER (micro): {s['mTER']}\n"
        f"TER (macro): {s['macro_TER']}  mTER (macro): {s['macro_mTER']}\n"
        f"cor={s['cor']} sub={s['sub']} ins={s['ins']} del={s['del']}\n"
    )
