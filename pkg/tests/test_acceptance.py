"""Exit criteria, each at its stated tolerance.

Every test records a PASS/FAIL line that is printed in the terminal
summary; run ``python tests/test_acceptance.py`` to print them directly.
"""

import io
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from itertools import product

import pytest

from asrscore.ablation import run_ablation
from asrscore.align import align_dae, align_dp, align_fst, align_kernel
from asrscore.cli import main as cli_main
from asrscore.data import minicorpus_dir
from asrscore.dataset import join_corpus, parse_alternatives, parse_hypotheses, parse_metadata_tsv
from asrscore.fst import SymbolTable, build_lev, find_spans, naive_lev_arc_count, relation, sausage_fst
from asrscore.kernels import edit_ops
from asrscore.metrics import corpus_aggregate, mter, score_utterance, ter
from asrscore.report import render_alignment
from asrscore.scoring import ScoreConfig
from asrscore.textnorm import (
    default_interjections,
    default_ukus_map,
    expand_nsw,
    normalize_case,
    remove_interjections,
    strip_punctuation,
    unify_spelling,
)
from asrscore.types import AlternativeSet, percent
from conftest import ACCEPTANCE_LINES, EXAMPLE_HYP, EXAMPLE_REF
from oracles import cross_product_min

pytestmark = pytest.mark.acceptance


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as e:
        ACCEPTANCE_LINES[number] = f"FAIL  criterion {number:2d}: {title} ({type(e).__name__}: {' '.join(str(e).split())[:120]})"
        raise
    ACCEPTANCE_LINES[number] = f"PASS  criterion {number:2d}: {title} [{time.perf_counter() - start:.2f}s]"


def _within(start, limit):
    elapsed = time.perf_counter() - start
    assert elapsed < limit, f"took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_worked_example():
    with criterion(1, "worked example: cor=13 sub=0 ins=10 del=0, TER 76.92, mTER 43.48, < 1 s"):
        start = time.perf_counter()
        t = SymbolTable(EXAMPLE_REF + EXAMPLE_HYP)
        lev = build_lev(t)
        al = align_fst(EXAMPLE_REF, EXAMPLE_HYP, lev)
        assert al.counts() == {"cor": 13, "sub": 0, "ins": 10, "del": 0}
        assert align_kernel(EXAMPLE_REF, EXAMPLE_HYP, t) == al
        s = score_utterance("YOU1000000117_S0000168", al, len(EXAMPLE_REF), len(EXAMPLE_HYP))
        assert percent(s.ter) == "76.92"
        assert percent(s.mter) == "43.48"
        header = render_alignment(s).splitlines()[0]
        assert '"TER":76.92, "mTER":43.48, "cor":13, "sub":0, "ins":10, "del":0' in header
        _within(start, 1.0)


NSW_VECTORS = [
    ("gave him $100.", "gave him one hundred dollars."),
    ("Just before 8.30 a.m.", "Just before eight thirty AM"),
    ("grew up in the 1980s", "grew up in the nineteen eighties"),
    ("the baggage is 12.7kg", "the baggage is twelve point seven kilograms"),
    ("in the 21st century", "in the twenty first century"),
    ("1/3 of the population", "one third of the population"),
    ("13,000 people", "thirteen thousand people"),
    ("1998/2/30", "february thirtieth nineteen ninety eight"),
]


def test_criterion_02_normalization_golden_vectors():
    with criterion(2, "normalization golden vectors: 8 NSW, PUNC, ITJ, 3 UK-US (+ CASE, lowercase canonical)"):
        for raw, expected in NSW_VECTORS:
            assert expand_nsw(raw) == expected, raw
        punc_in = "\"'He doesn't say exactly what it is,' said Ruth, a little dubiously. \""
        assert strip_punctuation(punc_in) == "He doesn't say exactly what it is said Ruth a little dubiously"
        assert " ".join(remove_interjections("uh yeah um that's good".split(), default_interjections())) == "yeah that's good"
        m = dict(default_ukus_map())
        for raw, expected in [
            ("she went to the theatre", "she went to the theater"),
            ("such a humour", "such a humor"),
            ("I apologise", "I apologize"),
        ]:
            assert " ".join(unify_spelling(raw.split(), m)) == expected
        assert normalize_case("And then there was Broad Street.") == "and then there was broad street."


ALTERNATIVES_FILE = """\
We're = We are
I'm = I am
gonna = going to
OK = O K = Okay
storyteller = story-teller = story teller
"""

EXPANSIONS = [
    ("we're here early", [["we're", "we are"], ["here early"]]),
    ("i'm gonna be ok", [["i'm", "i am"], ["gonna", "going to"], ["be"], ["ok", "o k", "okay"]]),
    ("he is an excellent storyteller", [["he is an excellent"], ["storyteller", "story teller", "story-teller"]]),
]


def test_criterion_03_alternative_expansion_vectors():
    with criterion(3, "expansion vectors: sausage languages match the bracketed alternatives; member refs cost 0"):
        alts = parse_alternatives(io.StringIO(ALTERNATIVES_FILE))
        for hyp, slots in EXPANSIONS:
            # hyphenated members collapse onto their spaced form after punctuation removal
            slots = [[strip_punctuation(m) for m in slot] for slot in slots]
            expected = {tuple(" ".join(p).split()) for p in product(*slots)}
            t = SymbolTable()
            t.add_alternatives(alts)
            f = sausage_fst(hyp.split(), alts, t)
            language = {tuple(t.symbol(x) for x in i if not t.is_tag(x)) for i, _ in relation(f, 40)}
            assert language == expected, hyp
            for ref in expected:
                t.add_all(ref)
                res = align_dae(ref, hyp.split(), alts, build_lev(t))
                assert res.alignment.cost == 0, (ref, hyp)


def test_criterion_04_fst_matches_dp():
    with criterion(4, "1000 random pairs: align_fst cost and counts equal align_dp exactly, < 10 s"):
        rng = random.Random(4)
        alphabet = [f"w{i}" for i in range(10)]
        start = time.perf_counter()
        lev = build_lev(SymbolTable(alphabet))
        for _ in range(1000):
            ref = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
            hyp = [rng.choice(alphabet) for _ in range(rng.randint(0, 12))]
            a, b = align_fst(ref, hyp, lev), align_dp(ref, hyp)
            assert a.cost == b.cost and a.counts() == b.counts(), (ref, hyp)
        _within(start, 10.0)


DAE_SETS = [
    AlternativeSet.of("we're", "we are"),
    AlternativeSet.of("i'm", "i am"),
    AlternativeSet.of("gonna", "going to"),
    AlternativeSet.of("ok", "o k", "okay"),
    AlternativeSet.of("storyteller", "story teller"),
    AlternativeSet.of("can't", "cannot", "can not"),
]
FILLER = ["we", "are", "here", "i", "am", "going", "to", "be", "a", "story", "can", "not", "the", "good"]


def _dae_case(rng):
    while True:
        ref, hyp = _draw_case(rng)
        if 1 <= len(find_spans(hyp, DAE_SETS)) <= 4:
            return ref, hyp


def _draw_case(rng):
    hyp = []
    for _ in range(rng.randint(0, 4)):
        hyp += [rng.choice(FILLER) for _ in range(rng.randint(0, 3))]
        hyp += list(rng.choice(rng.choice(DAE_SETS).members))
    hyp += [rng.choice(FILLER) for _ in range(rng.randint(0, 3))]
    ref = [rng.choice(FILLER + ["we're", "i'm", "okay"]) for _ in range(rng.randint(0, 12))]
    return ref, hyp


def test_criterion_05_dae_matches_cross_product():
    with criterion(5, "200 random sentences with <= 4 spans: align_dae cost equals cross-product minimum, < 10 s"):
        rng = random.Random(5)
        start = time.perf_counter()
        t = SymbolTable(FILLER + ["we're", "i'm", "okay"])
        t.add_alternatives(DAE_SETS)
        lev = build_lev(t)
        for _ in range(200):
            ref, hyp = _dae_case(rng)
            assert len(find_spans(hyp, DAE_SETS)) <= 4
            res = align_dae(ref, hyp, DAE_SETS, lev)
            assert res.alignment.cost == cross_product_min(ref, hyp, DAE_SETS)[0], (ref, hyp)
        _within(start, 10.0)


def test_criterion_06_mter_properties():
    with criterion(6, "10,000 random pairs: mTER in [0,1], mTER <= TER, symmetric, zero iff equal; TER overflow shown"):
        rng = random.Random(6)
        alphabet = list(range(2, 8))
        seqs = [[rng.choice(alphabet) for _ in range(rng.randint(0, 10))] for _ in range(200)]
        for _ in range(10000):
            a, b = rng.choice(seqs), rng.choice(seqs)
            d = edit_ops(a, b)[0]
            m = mter(d, len(a), len(b))
            assert 0 <= m <= 1
            assert m == mter(edit_ops(b, a)[0], len(b), len(a))
            assert (m == 0) == (a == b)
            if a:
                assert m <= ter(d, len(a))
        # triangle inequality: reported, never asserted
        small = [[rng.randrange(4) + 2 for _ in range(rng.randint(0, 6))] for _ in range(300)]
        violations = []
        for _ in range(5000):
            x, y, z = rng.choice(small), rng.choice(small), rng.choice(small)
            xy = mter(edit_ops(x, y)[0], len(x), len(y))
            yz = mter(edit_ops(y, z)[0], len(y), len(z))
            xz = mter(edit_ops(x, z)[0], len(x), len(z))
            if xz > xy + yz:
                violations.append((x, y, z))
        print(f"triangle-inequality probe: {len(violations)} counterexample triples in 5000 samples")
        if violations:
            print(f"  first: x={violations[0][0]} y={violations[0][1]} z={violations[0][2]}")
        t = ter(3, 1)
        assert t >= 2 and mter(3, 1, 3) <= 1
        assert percent(t) == "300.00"


def _corpus(pairs):
    scores = []
    for i, (ref, hyp) in enumerate(pairs):
        scores.append(score_utterance(str(i), align_dp(ref, hyp), len(ref), len(hyp)))
    return corpus_aggregate(scores)


def test_criterion_07_backward_compatibility():
    with criterion(7, "corpus mTER == TER exactly when |hyp| <= |ref|; mTER < TER on insertion-heavy corpus"):
        rng = random.Random(7)
        alphabet = "abcdef"
        short = []
        for _ in range(300):
            ref = [rng.choice(alphabet) for _ in range(rng.randint(1, 12))]
            hyp = [rng.choice(alphabet) for _ in range(rng.randint(0, len(ref)))]
            short.append((ref, hyp))
        c = _corpus(short)
        assert isinstance(c.mter, Fraction) and c.mter == c.ter
        heavy = []
        for _ in range(300):
            ref = [rng.choice(alphabet) for _ in range(rng.randint(1, 6))]
            heavy.append((ref, ref + [rng.choice(alphabet) for _ in range(rng.randint(1, 8))]))
        c = _corpus(heavy)
        assert c.mter < c.ter


def test_criterion_08_ablation_directions():
    with criterion(8, "bundled corpus: PUNC off strictly raises WER; ITJ off raises WER >= 5% relative, < 5 s"):
        start = time.perf_counter()
        d = minicorpus_dir()
        refs = parse_metadata_tsv(d / "metadata.tsv")
        hyps = {h.id: h.text for h in parse_hypotheses(d / "model_a.tsv")}
        alts = parse_alternatives(d / "alternatives.txt")
        base = ScoreConfig()
        configs = [("A0", base), ("A1", base.with_toggles({"punc": False})), ("A2", base.with_toggles({"itj": False}))]
        table = run_ablation([(r.id, r.text) for r in refs], {"model_a": hyps}, alts, configs)
        wer = table.wer["model_a"]
        assert wer["A1"] > wer["A0"]
        assert wer["A2"] >= wer["A0"] * Fraction(105, 100)
        print(f"WER A0={percent(wer['A0'])} A1(punc off)={percent(wer['A1'])} A2(itj off)={percent(wer['A2'])}")
        _within(start, 5.0)


def test_criterion_09_factored_transducer_scaling():
    with criterion(9, "build_lev arcs/V constant within 10% at V = 10, 100, 1000; naive count is quadratic"):
        ratios, naive = [], []
        for v in (10, 100, 1000):
            lev = build_lev(SymbolTable(f"w{i}" for i in range(v)))
            ratios.append(lev.num_arcs / v)
            naive.append(naive_lev_arc_count(v) / v)
        assert max(ratios) <= min(ratios) * 1.10, ratios
        assert naive[2] / naive[0] > 50
        print(f"arcs/V factored={ratios} naive={naive}")


def test_criterion_10_determinism(tmp_path):
    with criterion(10, "score on the bundled corpus twice: byte-identical JSONL and summary"):
        outs = []
        for name in ("run1", "run2"):
            out = tmp_path / name
            assert cli_main(["score", "--demo", "--out-dir", str(out), "--workers", "4", "-q"]) == 0
            outs.append(((out / "utterances.jsonl").read_bytes(), (out / "summary.json").read_bytes()))
        assert outs[0] == outs[1]


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q", "-s"]))
