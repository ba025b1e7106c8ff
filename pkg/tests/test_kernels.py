import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from asrscore import kernels
from asrscore.align import lattice_arrays
from asrscore.fst import SymbolTable, sausage_fst
from asrscore.types import AlternativeSet
from oracles import levenshtein

BACKENDS = kernels.backends()
ids = st.lists(st.integers(2, 8), max_size=25)


def test_compiled_backend_is_built():
    # the editable install builds the extension; the fallback still has to exist
    assert "python" in BACKENDS
    if "cython" not in BACKENDS:
        pytest.skip("compiled extension not built in this environment")
    if os.environ.get("ASRSCORE_PURE_PYTHON") == "1":
        pytest.skip("fallback forced by environment")
    assert kernels.BACKEND == "cython"


def test_env_var_forces_fallback():
    env = dict(os.environ, ASRSCORE_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from asrscore import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_edit_ops_codes(name):
    impl = BACKENDS[name]
    assert impl.edit_ops([], []) == (0, b"")
    assert impl.edit_ops([2], []) == (1, bytes([2]))
    assert impl.edit_ops([], [2]) == (1, bytes([3]))
    assert impl.edit_ops([2, 3], [2, 4]) == (1, bytes([0, 1]))


@given(ids, ids)
def test_backends_agree_on_edit_ops(a, b):
    results = {name: impl.edit_ops(a, b) for name, impl in BACKENDS.items()}
    assert len(set(results.values())) == 1
    cost, codes = results["python"]
    assert cost == levenshtein(a, b)
    assert cost == sum(c != 0 for c in codes)


ALTS = [AlternativeSet.of("b", "c d"), AlternativeSet.of("e f", "g", "h")]


@given(st.lists(st.sampled_from("bcdefgh"), max_size=10), st.lists(st.sampled_from("bcdefgh"), max_size=10))
def test_backends_agree_on_lattice(ref, hyp):
    t = SymbolTable("bcdefgh")
    t.add_alternatives(ALTS)
    lattice = lattice_arrays(sausage_fst(hyp, ALTS, t), t)
    ref_ids = [t.find(x) for x in ref]
    results = [tuple(impl.lattice_togo(ref_ids, *lattice)[1]) for impl in BACKENDS.values()]
    assert all(r == results[0] for r in results)


@given(ids, ids)
def test_linear_lattice_equals_edit_distance(a, b):
    offsets = list(range(len(b) + 1)) + [len(b)]
    dst = list(range(1, len(b) + 1))
    for name, impl in BACKENDS.items():
        scale, togo = impl.lattice_togo(a, offsets, dst, b, len(b))
        assert togo[0] // scale == levenshtein(a, b)
        assert togo[0] % scale == len(b)
