"""Reference/hypothesis alignment.

Three routes produce the same alignments:

* ``align_dp`` - textbook dynamic programme over strings, kept as the oracle;
* ``align_fst`` - shortest path through ref o L o hyp built with :mod:`asrscore.fst`;
* ``align_dae`` - the production scorer: runs the compiled kernel over the
  hypothesis sausage (alternative expansion) and recovers which variant
  the optimal path realizes.

All routes share one tie-break: among minimum-cost alignments, the op
sequence that is lexicographically smallest under COR < SUB < DEL < INS.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from . import kernels
from .fst import (
    EPS,
    Arc,
    LevTransducer,
    SymbolTable,
    Wfst,
    compose,
    edit_rank,
    find_spans,
    linear_fst,
    sausage_fst,
    shortest_path,
)
from .types import COR, DEL, INS, SUB, Alignment, AlternativeSet, EditOp, TokenSeq

__all__ = [
    "AlternativeSet",
    "DaeResult",
    "align_dp",
    "align_fst",
    "align_dae",
    "align_kernel",
    "ops_from_path",
]

_KINDS = (COR, SUB, DEL, INS)


@dataclass(frozen=True)
class DaeResult:
    alignment: Alignment
    selected_hyp: TokenSeq

    @property
    def selected_hyp_len(self) -> int:
        return len(self.selected_hyp)


def align_dp(ref: Sequence[str], hyp: Sequence[str]) -> Alignment:
    # Prefix DP over the reversed sequences is a suffix DP over the originals,
    # so the backtrace from the far corner walks the originals left to right.
    r, h = list(reversed(ref)), list(reversed(hyp))
    n, m = len(r), len(h)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        for j in range(1, m + 1):
            d[i][j] = min(
                d[i - 1][j - 1] + (r[i - 1] != h[j - 1]),
                d[i - 1][j] + 1,
                d[i][j - 1] + 1,
            )
    ops = []
    i, j = n, m
    while i or j:
        if i and j and r[i - 1] == h[j - 1] and d[i][j] == d[i - 1][j - 1]:
            ops.append(EditOp(COR, r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif i and j and r[i - 1] != h[j - 1] and d[i][j] == d[i - 1][j - 1] + 1:
            ops.append(EditOp(SUB, r[i - 1], h[j - 1]))
            i, j = i - 1, j - 1
        elif i and d[i][j] == d[i - 1][j] + 1:
            ops.append(EditOp(DEL, r[i - 1], None))
            i -= 1
        else:
            ops.append(EditOp(INS, None, h[j - 1]))
            j -= 1
    return Alignment(tuple(ops))


def _table_ids(table: SymbolTable, tokens: Sequence[str]) -> List[int]:
    return [table.find(t) if table.frozen else table.add(t) for t in tokens]


def _arc_key(table):
    def key(a: Arc):
        if a.ilabel == EPS and table.is_tag(a.olabel):
            return (-1, a.ilabel, a.olabel)
        return (edit_rank(a), a.ilabel, a.olabel)

    return key


def ops_from_path(path, table: SymbolTable) -> Alignment:
    """Edit ops of a shortest path through ref o L o hyp; tag arcs are dropped."""
    ops = []
    for _, a in path:
        if a.ilabel == EPS and (a.olabel == EPS or table.is_tag(a.olabel)):
            continue
        r = table.symbol(a.ilabel) if a.ilabel != EPS else None
        h = table.symbol(a.olabel) if a.olabel != EPS else None
        kind = _KINDS[edit_rank(a)]
        ops.append(EditOp(kind, r, h))
    return Alignment(tuple(ops))


def score_fst(ref: Sequence[str], hyp_fst: Wfst, lev: LevTransducer):
    """Shortest path through ``linear(ref) o left o right o hyp_fst``."""
    ref_fst = linear_fst(ref, lev.table)
    composed = compose(compose(ref_fst, lev.left), compose(lev.right, hyp_fst))
    return shortest_path(composed, key=_arc_key(lev.table))


def align_fst(ref: Sequence[str], hyp: Sequence[str], lev: LevTransducer, alts: Sequence = ()) -> Alignment:
    """Align through explicit FST composition.

    With ``alts`` the hypothesis is expanded into a sausage first; the
    alignment's hypothesis side is then the variant the path went through.
    """
    table = lev.table
    covered = lev.left.arcs_by_ilabel(lev.left.start)
    missing = sorted({t for t, i in zip((*ref, *hyp), _table_ids(table, (*ref, *hyp))) if i not in covered})
    if missing:
        raise ValueError(f"Levenshtein transducer was built without tokens {missing}")
    hyp_fst = sausage_fst(hyp, alts, table) if alts else linear_fst(hyp, table)
    return ops_from_path(score_fst(ref, hyp_fst, lev).path, table)


def _ops_from_codes(codes: bytes, ref: Sequence[str], hyp: Sequence[str]) -> Alignment:
    ops = []
    i = j = 0
    for code in codes:
        if code == 0:
            ops.append(EditOp(COR, ref[i], hyp[j]))
            i += 1
            j += 1
        elif code == 1:
            ops.append(EditOp(SUB, ref[i], hyp[j]))
            i += 1
            j += 1
        elif code == 2:
            ops.append(EditOp(DEL, ref[i], None))
            i += 1
        else:
            ops.append(EditOp(INS, None, hyp[j]))
            j += 1
    return Alignment(tuple(ops))


def align_kernel(ref: Sequence[str], hyp: Sequence[str], table: SymbolTable) -> Alignment:
    """Linear-hypothesis alignment through the compiled kernel."""
    _, codes = kernels.edit_ops(_table_ids(table, ref), _table_ids(table, hyp))
    return _ops_from_codes(codes, ref, hyp)


def lattice_arrays(f: Wfst, table: SymbolTable) -> Tuple[list, list, list, int]:
    """CSR view of an acyclic, topologically numbered acceptor; tag arcs get label 0."""
    if f.start != 0 or len(f.finals) != 1:
        raise ValueError("lattice must start at state 0 and have exactly one final state")
    offsets, dst, labels = [0], [], []
    for s, arcs in enumerate(f.arcs):
        for a in arcs:
            if a.nextstate <= s:
                raise ValueError("lattice states are not in topological order")
            dst.append(a.nextstate)
            labels.append(0 if (a.ilabel == EPS or table.is_tag(a.ilabel)) else a.ilabel)
        offsets.append(len(dst))
    (final,) = f.finals
    return offsets, dst, labels, final


def _closure(states, offsets, dst, labels):
    seen = set(states)
    stack = list(states)
    while stack:
        q = stack.pop()
        for k in range(offsets[q], offsets[q + 1]):
            if labels[k] == 0 and dst[k] not in seen:
                seen.add(dst[k])
                stack.append(dst[k])
    return seen


def _select_variant(ref_ids, lattice, scale, togo, table):
    """Walk the lattice picking, token by token, the smallest token that keeps
    the best (cost, length) reachable.  Every frontier state shares the same
    consumed prefix, so one DP column describes them all.
    """
    offsets, dst, labels, final = lattice
    nq = len(offsets) - 1
    n = len(ref_ids)
    target = togo[0]
    column = [i * scale for i in range(n + 1)]
    frontier = _closure({0}, offsets, dst, labels)
    chosen = []
    while True:
        if final in frontier and column[n] == target:
            return chosen
        nexts = {}
        for q in frontier:
            for k in range(offsets[q], offsets[q + 1]):
                if labels[k]:
                    nexts.setdefault(labels[k], set()).add(dst[k])
        for tok in sorted(nexts, key=table.symbol):
            col = [column[0] + scale + 1]
            for i in range(1, n + 1):
                c = column[i - 1] + 1 + (scale if ref_ids[i - 1] != tok else 0)
                c = min(c, column[i] + scale + 1, col[i - 1] + scale)
                col.append(c)
            states = _closure(nexts[tok], offsets, dst, labels)
            best = min(col[i] + togo[i * nq + q] for q in states for i in range(n + 1))
            if best == target:
                chosen.append(tok)
                column, frontier = col, states
                break
        else:
            raise AssertionError("no continuation keeps the optimum; lattice/kernel mismatch")


def align_dae(
    ref: Sequence[str],
    hyp: Sequence[str],
    alts: Sequence[AlternativeSet],
    lev,
) -> DaeResult:
    """Align ``ref`` against every alternative expansion of ``hyp`` at once.

    The reference is never expanded.  The result carries the variant of
    ``hyp`` realized by the optimal path; among equally cheap variants the
    shorter one wins, then the lexicographically smaller one.  ``lev`` may be
    a :class:`LevTransducer` or just its symbol table; the kernel needs only
    the ids.
    """
    table = lev.table if isinstance(lev, LevTransducer) else lev
    ref, hyp = tuple(ref), tuple(hyp)
    ref_ids = _table_ids(table, ref)
    if not alts or not find_spans(hyp, alts):
        return DaeResult(align_kernel(ref, hyp, table), hyp)
    lattice = lattice_arrays(sausage_fst(hyp, alts, table), table)
    scale, togo = kernels.lattice_togo(ref_ids, *lattice)
    chosen = _select_variant(ref_ids, lattice, scale, togo, table)
    selected = tuple(table.symbol(t) for t in chosen)
    cost, codes = kernels.edit_ops(ref_ids, chosen)
    if cost != togo[0] // scale:
        raise AssertionError("selected variant does not realize the lattice optimum")
    return DaeResult(_ops_from_codes(codes, ref, selected), selected)
