import json

from hypothesis import given
from hypothesis import strategies as st

from asrscore.align import align_dp
from asrscore.metrics import score_utterance
from asrscore.report import counts_from_rendered, header_line, jsonl, render_alignment, utterance_record
from conftest import EXAMPLE_HYP, EXAMPLE_REF


def _score(uid, ref, hyp):
    return score_utterance(uid, align_dp(ref, hyp), len(ref), len(hyp))


def test_worked_example_block():
    block = render_alignment(_score("YOU1000000117_S0000168", EXAMPLE_REF, EXAMPLE_HYP))
    head, ref, hyp, edit = block.splitlines()
    assert head == (
        '{"uid":"YOU1000000117_S0000168", "TER":76.92, "mTER":43.48, "cor":13, "sub":0, "ins":10, "del":0}'
    )
    # the published block, up to trailing blanks
    assert ref.rstrip() == (
        "  REF  : FOR OLDER KIDS THAT CAN BE THE SAME *   WE DO IT AS ADULTS *   *    *           *     *   *   *    *   *"
    )
    assert hyp == "  HYP  : " + " ".join(EXAMPLE_HYP)
    assert edit.rstrip() == (
        "  EDIT :                                     I                      I   I    I           I     I   I   I    I   I"
    )
    assert edit[len("  EDIT : "):].count("I") == 10
    # every mark sits under the start of its column
    for pos, ch in enumerate(edit):
        if ch == "I" and pos > 8:
            assert ref[pos] == "*" and hyp[pos] != " "


def test_header_is_json():
    doc = json.loads(header_line(_score("u", ["a"], ["b"])))
    assert doc == {"uid": "u", "TER": 100.0, "mTER": 100.0, "cor": 0, "sub": 1, "ins": 0, "del": 0}


def test_identical_sides_leave_edit_blank():
    edit = render_alignment(_score("u", ["a", "bb"], ["a", "bb"])).splitlines()[3]
    assert edit.strip() == "EDIT :"


def test_deletion_marks():
    _, ref, hyp, edit = render_alignment(_score("u", ["a"], [])).splitlines()
    assert ref.endswith(": a") and hyp.endswith(": *") and edit.endswith(": D")


def test_empty_reference_renders_null_ter():
    head = render_alignment(_score("u", [], ["x"])).splitlines()[0]
    assert '"TER":null' in head and '"mTER":100.00' in head


def test_jsonl_keys_and_extensions():
    rec = utterance_record(_score("u", ["a"], ["a", "b"]), {"cost": 1})
    assert list(rec) == ["uid", "TER", "mTER", "cor", "sub", "ins", "del", "x_cost"]
    line = jsonl([rec])
    assert line.endswith("\n") and json.loads(line) == rec


words = st.lists(st.sampled_from(["a", "bb", "ccc", "dddd"]), max_size=8)


@given(words, words)
def test_rendered_counts_round_trip(ref, hyp):
    s = _score("u", ref, hyp)
    assert counts_from_rendered(render_alignment(s)) == s.alignment.counts()
    rec = utterance_record(s)
    assert {k: rec[k] for k in ("cor", "sub", "ins", "del")} == s.alignment.counts()
