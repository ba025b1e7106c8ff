"""Command-line entry point.

Exit codes: 0 success, 1 usage or configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path
from typing import Dict, List, Optional

from . import __version__
from .ablation import default_spec, run_ablation, stacked_configs
from .data import minicorpus_dir
from .dataset import FormatError, join_corpus, parse_alternatives, parse_hypotheses, parse_metadata_tsv
from .report import (
    csv_text,
    dumps,
    jsonl,
    render_alignment,
    summary_document,
    summary_text,
    text_table,
    utterance_record,
)
from .scoring import ALL_STAGES, DEFAULT_WORKERS, ScoreConfig, parse_toggle, score_corpus, score_pairs
from .textnorm import RESOURCE_DIR_ENV, default_interjections, default_ukus_map, normalize
from .types import join, percent

logger = logging.getLogger("asrscore")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--toggle", action="append", default=[], metavar="STAGE=on|off",
                   help=f"switch a stage on or off; stages: {', '.join(ALL_STAGES)}")
    p.add_argument("--resource-dir", help=f"directory overriding the bundled word lists (also ${RESOURCE_DIR_ENV})")
    p.add_argument("--trace", action="store_true", help="log every normalization stage")
    p.add_argument("--error-json", action="store_true", help="report failures as JSON on stderr")
    p.add_argument("-q", "--quiet", action="store_true", help="only report errors")


def _inputs(p: argparse.ArgumentParser, hyp_help: str, multi: bool = False) -> None:
    p.add_argument("--ref", help="reference metadata.tsv (ID, AUDIO, DURATION, TEXT)")
    if multi:
        p.add_argument("--hyp", action="append", default=[], metavar="[NAME=]PATH", help=hyp_help)
    else:
        p.add_argument("--hyp", help=hyp_help)
    p.add_argument("--alts", help="alternative-set file, one '=' separated set per line")
    p.add_argument("--demo", action="store_true", help="use the bundled 20-utterance corpus")
    p.add_argument("--workers", type=int, default=DEFAULT_WORKERS, help="alignment threads (default %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="asrscore", description="Score ASR hypotheses with TER and mTER.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("score", help="score one hypothesis file")
    _inputs(p, "hypothesis TSV (ID, TEXT)")
    p.add_argument("--out-dir", help="write utterances.jsonl, summary.json and alignments.txt here")
    p.add_argument("--format", choices=("json", "jsonl", "text", "csv"), default="json",
                   help="what to print on stdout (default %(default)s)")
    _common(p)

    p = sub.add_parser("ablate", help="WER matrix over models and configurations")
    _inputs(p, "hypothesis TSV per model; repeatable", multi=True)
    p.add_argument("--configs", help="comma-separated subset of A0..A5 (A0 is always kept)")
    p.add_argument("--out-dir", help="write ablation.csv and stacked.csv here")
    p.add_argument("--format", choices=("json", "text", "csv"), default="text")
    _common(p)

    p = sub.add_parser("normalize", help="normalize text, one line in, one line out")
    p.add_argument("input", nargs="?", help="UTF-8 text file (default stdin)")
    _common(p)

    p = sub.add_parser("render", help="print alignment blocks")
    _inputs(p, "hypothesis TSV (ID, TEXT)")
    p.add_argument("--uid", action="append", default=[], help="only these utterances")
    p.add_argument("--ref-text", help="ad hoc reference string (with --hyp-text)")
    p.add_argument("--hyp-text", help="ad hoc hypothesis string")
    _common(p)
    return parser


def _config(args) -> ScoreConfig:
    if args.resource_dir:
        if not Path(args.resource_dir).is_dir():
            raise UsageError(f"resource directory {args.resource_dir} does not exist")
        os.environ[RESOURCE_DIR_ENV] = args.resource_dir
        default_interjections.cache_clear()
        default_ukus_map.cache_clear()
    try:
        toggles = dict(parse_toggle(t) for t in args.toggle)
        return ScoreConfig().with_toggles(toggles)
    except ValueError as e:
        raise UsageError(str(e)) from None


def _resolve(args):
    if args.demo:
        d = minicorpus_dir()
        args.ref = args.ref or str(d / "metadata.tsv")
        if isinstance(args.hyp, list):
            args.hyp = args.hyp or [f"model_a={d / 'model_a.tsv'}", f"model_b={d / 'model_b.tsv'}"]
        else:
            args.hyp = args.hyp or str(d / "model_a.tsv")
        args.alts = args.alts or str(d / "alternatives.txt")
    if not args.ref or not args.hyp:
        raise UsageError("--ref and --hyp are required (or --demo)")
    hyp_paths = _models(args.hyp).values() if isinstance(args.hyp, list) else [args.hyp]
    for path in (args.ref, args.alts, *hyp_paths):
        if path and not Path(path).is_file():
            raise UsageError(f"no such file: {path}")


def _digest(path) -> dict:
    data = Path(path).read_bytes()
    return {"name": Path(path).name, "sha256": hashlib.sha256(data).hexdigest()}


def _load_alts(path):
    return parse_alternatives(path) if path else []


def _trace_fn(uid):
    def trace(stage, text):
        logger.info("%s %-4s | %s", uid, stage, text)

    return trace


def _trace_pairs(pairs, cfg: ScoreConfig):
    for r, h in pairs:
        normalize(r.text, cfg.norm, trace=_trace_fn(f"{r.id} ref"))
        normalize(h.text, cfg.norm, trace=_trace_fn(f"{r.id} hyp"))


def _write(out_dir: Optional[str], name: str, text: str) -> None:
    if not out_dir:
        return
    path = Path(out_dir)
    path.mkdir(parents=True, exist_ok=True)
    with open(path / name, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _score_result(args, hyp_path: str, cfg: ScoreConfig):
    refs = parse_metadata_tsv(args.ref)
    if not refs:
        raise FormatError("reference file has no data rows", source=args.ref)
    pairs = join_corpus(refs, parse_hypotheses(hyp_path))
    if args.trace:
        _trace_pairs(pairs, cfg)
    return score_corpus(pairs, _load_alts(args.alts), cfg, args.workers)


def cmd_score(args) -> int:
    _resolve(args)
    cfg = _config(args)
    result = _score_result(args, args.hyp, cfg)
    records = [
        utterance_record(u.score, {
            "ref_len": u.score.ref_len,
            "hyp_len": u.score.hyp_len,
            "cost": u.score.cost,
            "ref": join(u.ref_tokens),
            "hyp": join(u.selected_hyp),
        })
        for u in result.utterances
    ]
    inputs = {"ref": _digest(args.ref), "hyp": _digest(args.hyp)}
    if args.alts:
        inputs["alts"] = _digest(args.alts)
    summary = dumps(summary_document(result.corpus, cfg.echo(), inputs))
    records_text = jsonl(records)
    pretty = "\n".join(render_alignment(u.score) for u in result.utterances)
    _write(args.out_dir, "utterances.jsonl", records_text)
    _write(args.out_dir, "summary.json", summary)
    _write(args.out_dir, "alignments.txt", pretty)
    if args.format == "json":
        sys.stdout.write(summary)
    elif args.format == "jsonl":
        sys.stdout.write(records_text)
    elif args.format == "text":
        sys.stdout.write(pretty + "\n" + summary_text(result.corpus))
    else:
        keys = ["uid", "TER", "mTER", "cor", "sub", "ins", "del"]
        sys.stdout.write(csv_text([keys, *([r[k] for k in keys] for r in records)]))
    return EXIT_OK


def _models(specs: List[str]) -> Dict[str, str]:
    models = {}
    for spec in specs:
        name, sep, path = spec.partition("=")
        if not sep:
            name, path = Path(spec).stem, spec
        if name in models:
            raise UsageError(f"model name {name!r} given twice")
        models[name] = path
    return models


def cmd_ablate(args) -> int:
    _resolve(args)
    base = _config(args)
    spec = default_spec(base)
    if args.configs:
        try:
            spec = spec.select([c.strip() for c in args.configs.split(",") if c.strip()])
        except ValueError as e:
            raise UsageError(str(e)) from None
    refs = parse_metadata_tsv(args.ref)
    if not refs:
        raise FormatError("reference file has no data rows", source=args.ref)
    ref_pairs = [(r.id, r.text) for r in refs]
    hyps = {}
    for name, path in _models(args.hyp).items():
        joined = join_corpus(refs, parse_hypotheses(path))
        hyps[name] = {r.id: h.text for r, h in joined}
    alts = _load_alts(args.alts)
    table = run_ablation(ref_pairs, hyps, alts, spec.configs, args.workers)
    stacked = run_ablation(ref_pairs, hyps, alts, stacked_configs(base), args.workers)

    stacked_rows = [["model", "step", "config", "WER", "rank"]]
    ranks = stacked.ranks()
    for m in stacked.models:
        for step, col in enumerate(stacked.columns):
            stacked_rows.append([m, step, col, percent(stacked.wer[m][col]), ranks[m][col]])
    _write(args.out_dir, "ablation.csv", csv_text(table.rows()))
    _write(args.out_dir, "stacked.csv", csv_text(stacked_rows))
    if args.format == "csv":
        sys.stdout.write(csv_text(table.rows()))
    elif args.format == "json":
        doc = {
            "configs": {n: c.enabled() for n, c in spec.configs},
            "wer": {m: {c: float(percent(v)) for c, v in row.items()} for m, row in table.wer.items()},
            "ranks": table.ranks(),
        }
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write(text_table(table.rows()))
        sys.stdout.write("\n" + text_table(stacked.rows()))
    return EXIT_OK


def cmd_normalize(args) -> int:
    cfg = _config(args)
    if args.input and not Path(args.input).is_file():
        raise UsageError(f"no such file: {args.input}")
    stream = open(args.input, encoding="utf-8", newline="") if args.input else sys.stdin
    try:
        for lineno, line in enumerate(stream, 1):
            warnings: list = []
            trace = _trace_fn(f"line {lineno}") if args.trace else None
            tokens = normalize(line.rstrip("\r\n"), cfg.norm, warnings, trace)
            sys.stdout.write(join(tokens) + "\n")
    finally:
        if args.input:
            stream.close()
    return EXIT_OK


def cmd_render(args) -> int:
    cfg = _config(args)
    if args.ref_text is not None or args.hyp_text is not None:
        alts = _load_alts(args.alts) if args.alts else []
        result = score_pairs([("adhoc", args.ref_text or "", args.hyp_text or "")], alts, cfg, 1)
    else:
        _resolve(args)
        result = _score_result(args, args.hyp, cfg)
    wanted = set(args.uid)
    blocks = [render_alignment(u.score) for u in result.utterances if not wanted or u.uid in wanted]
    sys.stdout.write("\n".join(blocks))
    return EXIT_OK


COMMANDS = {"score": cmd_score, "ablate": cmd_ablate, "normalize": cmd_normalize, "render": cmd_render}


def _fail(args, code: int, kind: str, exc: Exception) -> int:
    if getattr(args, "error_json", False):
        doc = {"error": str(exc), "kind": kind, "exit_code": code}
        if isinstance(exc, FormatError):
            doc.update(line=exc.line, source=exc.source)
        sys.stderr.write(json.dumps(doc) + "\n")
    else:
        sys.stderr.write(f"asrscore: {kind} error: {exc}\n")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.ERROR if args.quiet else (logging.INFO if args.trace else logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s: %(message)s", stream=sys.stderr, force=True)
    try:
        return COMMANDS[args.command](args)
    except UsageError as e:
        return _fail(args, EXIT_USAGE, "usage", e)
    except (FormatError, UnicodeDecodeError) as e:
        return _fail(args, EXIT_DATA, "data", e)
    except ValueError as e:
        return _fail(args, EXIT_DATA, "data", e)
    except OSError as e:
        return _fail(args, EXIT_USAGE, "usage", e)


if __name__ == "__main__":
    sys.exit(main())
