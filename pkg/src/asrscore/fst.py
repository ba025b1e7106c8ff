"""A small weighted FST engine over the tropical semiring.

Just enough machinery to score transcripts: linear and sausage acceptors,
a factored Levenshtein transducer, lazy composition and shortest path.
Costs are non-negative; path cost is the sum of arc costs plus the final
cost of the last state.
"""

from __future__ import annotations

import heapq
import functools
from collections import defaultdict
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

EPS = 0
SUB_AUX = 1
INF = float("inf")


class EmptyLanguageError(ValueError):
    """Raised when an FST has no accepting path."""


class Arc(NamedTuple):
    ilabel: int
    olabel: int
    cost: float
    nextstate: int


class SymbolTable:
    """Bidirectional token <-> id map.

    Id 0 is epsilon and id 1 the substitution auxiliary symbol.  Hash tags
    marking alternative branches live in their own namespace, so a token
    spelled like a tag never collides with one.
    """

    def __init__(self, tokens: Iterable[str] = ()):
        self._symbols: List[str] = ["<eps>", "<sub>"]
        self._token_ids: Dict[str, int] = {}
        self._tag_ids: Dict[str, int] = {}
        self._tag_set = set()
        self._frozen = False
        for t in tokens:
            self.add(t)

    def __len__(self):
        return len(self._symbols)

    def __contains__(self, token):
        return token in self._token_ids

    def add(self, token: str) -> int:
        i = self._token_ids.get(token)
        if i is not None:
            return i
        if not token or any(c.isspace() for c in token):
            raise ValueError(f"invalid token {token!r}")
        if self._frozen:
            raise KeyError(f"token {token!r} not in frozen symbol table")
        i = len(self._symbols)
        self._symbols.append(token)
        self._token_ids[token] = i
        return i

    def add_all(self, tokens: Iterable[str]) -> List[int]:
        return [self.add(t) for t in tokens]

    def tag(self, name: str) -> int:
        i = self._tag_ids.get(name)
        if i is not None:
            return i
        if self._frozen:
            raise KeyError(f"tag {name!r} not in frozen symbol table")
        i = len(self._symbols)
        self._symbols.append(f"#{name}")
        self._tag_ids[name] = i
        self._tag_set.add(i)
        return i

    def add_alternatives(self, alts: Iterable) -> None:
        """Register the tokens and branch tags of alternative sets."""
        for set_index, alt in enumerate(alts):
            for member_index, member in enumerate(_members(alt)):
                self.add_all(member)
                self.tag(_tag_name(set_index, member_index))

    def find(self, token: str) -> int:
        return self._token_ids[token]

    def symbol(self, i: int) -> str:
        return self._symbols[i]

    def token_ids(self) -> List[int]:
        return sorted(self._token_ids.values())

    def tag_ids(self) -> List[int]:
        return sorted(self._tag_ids.values())

    def is_tag(self, i: int) -> bool:
        return i in self._tag_set

    def freeze(self) -> "SymbolTable":
        self._frozen = True
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen


class Wfst:
    def __init__(self):
        self.start = 0
        self.arcs: List[List[Arc]] = []
        self.finals: Dict[int, float] = {}
        self._by_ilabel = None
        self._by_olabel = None

    @property
    def num_states(self) -> int:
        return len(self.arcs)

    @property
    def num_arcs(self) -> int:
        return sum(len(a) for a in self.arcs)

    def add_state(self) -> int:
        self.arcs.append([])
        return len(self.arcs) - 1

    def add_arc(self, state: int, ilabel: int, olabel: int, cost: float, nextstate: int) -> None:
        if cost < 0:
            raise ValueError("arc costs must be non-negative")
        self.arcs[state].append(Arc(ilabel, olabel, float(cost), nextstate))
        self._by_ilabel = self._by_olabel = None

    def set_final(self, state: int, cost: float = 0.0) -> None:
        if cost < 0:
            raise ValueError("final costs must be non-negative")
        self.finals[state] = float(cost)

    def is_final(self, state: int) -> bool:
        return state in self.finals

    def validate(self) -> None:
        n = self.num_states
        if not 0 <= self.start < n:
            raise ValueError("start state does not exist")
        for s, arcs in enumerate(self.arcs):
            for a in arcs:
                if not 0 <= a.nextstate < n:
                    raise ValueError(f"arc from {s} to missing state {a.nextstate}")
                if a.cost < 0:
                    raise ValueError("negative arc cost")

    def arcs_by_ilabel(self, state: int) -> Dict[int, List[Arc]]:
        if self._by_ilabel is None:
            self._by_ilabel = [_index(arcs, 0) for arcs in self.arcs]
        return self._by_ilabel[state]

    def arcs_by_olabel(self, state: int) -> Dict[int, List[Arc]]:
        if self._by_olabel is None:
            self._by_olabel = [_index(arcs, 1) for arcs in self.arcs]
        return self._by_olabel[state]

    def dump(self, table: Optional[SymbolTable] = None) -> str:
        """Line-oriented text form: ``src dst in out cost`` arcs, then ``state cost`` finals."""
        name = table.symbol if table is not None else str
        lines = []
        for s, arcs in enumerate(self.arcs):
            for a in arcs:
                lines.append(f"{s}\t{a.nextstate}\t{name(a.ilabel)}\t{name(a.olabel)}\t{_fmt_cost(a.cost)}")
        for s in sorted(self.finals):
            lines.append(f"{s}\t{_fmt_cost(self.finals[s])}")
        return "\n".join(lines) + "\n"


def _fmt_cost(c):
    return str(int(c)) if float(c).is_integer() else repr(c)


def _index(arcs, field):
    idx = defaultdict(list)
    for a in arcs:
        idx[a[field]].append(a)
    return dict(idx)


def _members(alt):
    return alt.members if hasattr(alt, "members") else tuple(tuple(m) for m in alt)


def _tag_name(set_index, member_index):
    return f"{set_index}.{member_index}"


def linear_fst(seq: Sequence[str], table: SymbolTable) -> Wfst:
    f = Wfst()
    state = f.add_state()
    for tok in seq:
        i = table.add(tok)
        nxt = f.add_state()
        f.add_arc(state, i, i, 0.0, nxt)
        state = nxt
    f.set_final(state)
    return f


def find_spans(seq: Sequence[str], alts: Sequence) -> List[Tuple[int, int, int]]:
    """Greedy left-to-right, longest-first spans of ``seq`` matching an alternative member.

    Returns ``(start, end, set_index)`` triples.  On equal length the
    earlier set wins.
    """
    by_first = defaultdict(list)
    for set_index, alt in enumerate(alts):
        for member in _members(alt):
            by_first[member[0]].append((len(member), set_index, tuple(member)))
    for cands in by_first.values():
        cands.sort(key=lambda c: (-c[0], c[1]))
    spans = []
    seq = tuple(seq)
    p = 0
    while p < len(seq):
        for length, set_index, member in by_first.get(seq[p], ()):
            if seq[p:p + length] == member:
                spans.append((p, p + length, set_index))
                p += length
                break
        else:
            p += 1
    return spans


def sausage_fst(seq: Sequence[str], alts: Sequence, table: SymbolTable) -> Wfst:
    """Expand matched spans of ``seq`` into parallel branches, one per set member.

    Each branch opens with an arc carrying its hash tag (``#set.member`` on
    both sides), followed by the member's tokens; all branches of a slot
    rejoin in one state.  States are numbered in topological order.
    """
    spans = {start: (end, set_index) for start, end, set_index in find_spans(seq, alts)}
    f = Wfst()
    state = f.add_state()
    p = 0
    while p < len(seq):
        if p not in spans:
            i = table.add(seq[p])
            nxt = f.add_state()
            f.add_arc(state, i, i, 0.0, nxt)
            state = nxt
            p += 1
            continue
        end, set_index = spans[p]
        tails = []
        for member_index, member in enumerate(_members(alts[set_index])):
            tag = table.tag(_tag_name(set_index, member_index))
            cur = f.add_state()
            f.add_arc(state, tag, tag, 0.0, cur)
            for tok in member[:-1]:
                i = table.add(tok)
                nxt = f.add_state()
                f.add_arc(cur, i, i, 0.0, nxt)
                cur = nxt
            tails.append((cur, table.add(member[-1])))
        join = f.add_state()
        for cur, i in tails:
            f.add_arc(cur, i, i, 0.0, join)
        state = join
        p = end
    f.set_final(state)
    return f


class LevTransducer(NamedTuple):
    """Levenshtein transducer factored through the substitution auxiliary symbol.

    ``left`` maps each token to itself (0), to the auxiliary symbol (1) or
    to epsilon (1, deletion).  ``right`` maps each token to itself (0), the
    auxiliary symbol to any token (0), epsilon to any token (1, insertion)
    and epsilon to every branch tag (0).  Both factors have one state, so
    the arc count is 6V + tags instead of V^2.
    """

    left: Wfst
    right: Wfst
    table: SymbolTable
    tags: frozenset

    @property
    def num_arcs(self) -> int:
        return self.left.num_arcs + self.right.num_arcs


def build_lev(table: SymbolTable) -> LevTransducer:
    left, right = Wfst(), Wfst()
    left.add_state()
    right.add_state()
    for t in table.token_ids():
        left.add_arc(0, t, t, 0.0, 0)
        left.add_arc(0, t, SUB_AUX, 1.0, 0)
        left.add_arc(0, t, EPS, 1.0, 0)
        right.add_arc(0, t, t, 0.0, 0)
        right.add_arc(0, SUB_AUX, t, 0.0, 0)
        right.add_arc(0, EPS, t, 1.0, 0)
    tags = table.tag_ids()
    for g in tags:
        right.add_arc(0, EPS, g, 0.0, 0)
    left.set_final(0)
    right.set_final(0)
    return LevTransducer(left, right, table, frozenset(tags))


def naive_lev_arc_count(vocab_size: int) -> int:
    """Arcs of the unfactored one-state Levenshtein transducer: V^2 pairs plus 2V."""
    return vocab_size * vocab_size + 2 * vocab_size


def compose(a: Wfst, b: Wfst) -> Wfst:
    """Lazy composition: only state pairs reachable from the start are built.

    Epsilon outputs of ``a`` advance ``a`` alone; epsilon inputs of ``b``
    advance ``b`` alone.
    """
    out = Wfst()
    ids: Dict[Tuple[int, int], int] = {}
    queue = []

    def state_of(pair):
        s = ids.get(pair)
        if s is None:
            s = ids[pair] = out.add_state()
            queue.append(pair)
        return s

    state_of((a.start, b.start))
    out.start = 0
    head = 0
    while head < len(queue):
        p, q = queue[head]
        s = ids[(p, q)]
        head += 1
        a_arcs, b_arcs = a.arcs[p], b.arcs[q]
        if len(a_arcs) <= len(b_arcs):
            b_in = b.arcs_by_ilabel(q)
            for x in a_arcs:
                if x.olabel == EPS:
                    continue
                for y in b_in.get(x.olabel, ()):
                    out.add_arc(s, x.ilabel, y.olabel, x.cost + y.cost, state_of((x.nextstate, y.nextstate)))
        else:
            a_out = a.arcs_by_olabel(p)
            for y in b_arcs:
                if y.ilabel == EPS:
                    continue
                for x in a_out.get(y.ilabel, ()):
                    out.add_arc(s, x.ilabel, y.olabel, x.cost + y.cost, state_of((x.nextstate, y.nextstate)))
        for x in a.arcs_by_olabel(p).get(EPS, ()):
            out.add_arc(s, x.ilabel, EPS, x.cost, state_of((x.nextstate, q)))
        for y in b.arcs_by_ilabel(q).get(EPS, ()):
            out.add_arc(s, EPS, y.olabel, y.cost, state_of((p, y.nextstate)))
        if p in a.finals and q in b.finals:
            out.set_final(s, a.finals[p] + b.finals[q])
    return out


def edit_rank(arc: Arc) -> int:
    """Tie-break rank of an arc as an edit: COR 0, SUB 1, DEL 2, INS 3, epsilon -1."""
    if arc.ilabel != EPS and arc.olabel != EPS:
        return 0 if (arc.ilabel == arc.olabel and arc.cost == 0) else 1
    if arc.ilabel != EPS:
        return 2
    if arc.olabel != EPS:
        return 3
    return -1


class ShortestPath(NamedTuple):
    cost: float
    path: List[Tuple[int, Arc]]


def shortest_distance_to_final(f: Wfst) -> Tuple[List[float], List[Optional[Arc]]]:
    """Backward Dijkstra: best cost from every state to acceptance, and the arc achieving it."""
    n = f.num_states
    dist = [INF] * n
    succ: List[Optional[Arc]] = [None] * n
    rev = [[] for _ in range(n)]
    for s, arcs in enumerate(f.arcs):
        for a in arcs:
            rev[a.nextstate].append((s, a))
    heap = []
    for s, c in f.finals.items():
        dist[s] = c
        heap.append((c, s))
    heapq.heapify(heap)
    done = [False] * n
    while heap:
        d, t = heapq.heappop(heap)
        if done[t]:
            continue
        done[t] = True
        for s, a in rev[t]:
            nd = a.cost + d
            if nd < dist[s]:
                dist[s] = nd
                succ[s] = a
                heapq.heappush(heap, (nd, s))
    return dist, succ


def shortest_path(f: Wfst, key: Optional[Callable[[Arc], object]] = None) -> ShortestPath:
    """Minimum-cost start-to-final path.

    Among equal-cost paths the one whose arc sequence is smallest under
    ``key`` (default: edit rank COR < SUB < DEL < INS, then labels) wins;
    stopping at a final state beats continuing.
    """
    if f.num_states == 0:
        raise EmptyLanguageError("FST has no states")
    key = key or (lambda a: (edit_rank(a), a.ilabel, a.olabel))
    dist, succ = shortest_distance_to_final(f)
    total = dist[f.start]
    if total == INF:
        raise EmptyLanguageError("FST accepts no path")

    def tight(x, y):
        return abs(x - y) <= 1e-9 * max(1.0, abs(x))

    path = []
    s = f.start
    seen = {s}
    while not (s in f.finals and tight(f.finals[s], dist[s])):
        best = None
        for a in f.arcs[s]:
            if a.nextstate in seen or not tight(a.cost + dist[a.nextstate], dist[s]):
                continue
            k = (key(a), a.nextstate)
            if best is None or k < best[0]:
                best = (k, a)
        if best is None:
            # zero-cost cycle blocked the greedy walk; follow the Dijkstra tree instead
            return _tree_path(f, total, succ)
        a = best[1]
        path.append((s, a))
        s = a.nextstate
        seen.add(s)
    return ShortestPath(total, path)


def _tree_path(f, total, succ):
    path = []
    s = f.start
    while succ[s] is not None:
        a = succ[s]
        path.append((s, a))
        s = a.nextstate
    return ShortestPath(total, path)


def path_labels(path: Iterable[Tuple[int, Arc]]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    """Input and output label strings of a path, epsilons removed."""
    ins, outs = [], []
    for _, a in path:
        if a.ilabel != EPS:
            ins.append(a.ilabel)
        if a.olabel != EPS:
            outs.append(a.olabel)
    return tuple(ins), tuple(outs)


def enumerate_paths(f: Wfst, max_arcs: int = 16) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...], float]]:
    """Yield ``(input, output, cost)`` for every accepting path with at most ``max_arcs`` arcs."""
    stack = [(f.start, (), (), 0.0, 0)]
    while stack:
        s, i, o, c, depth = stack.pop()
        if s in f.finals:
            yield i, o, c + f.finals[s]
        if depth == max_arcs:
            continue
        for a in f.arcs[s]:
            stack.append((
                a.nextstate,
                i + ((a.ilabel,) if a.ilabel != EPS else ()),
                o + ((a.olabel,) if a.olabel != EPS else ()),
                c + a.cost,
                depth + 1,
            ))


def relation(f: Wfst, max_arcs: int = 16) -> Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], float]:
    """Minimum cost of every (input, output) pair reachable within ``max_arcs`` arcs."""
    best: Dict = {}
    for i, o, c in enumerate_paths(f, max_arcs):
        if c < best.get((i, o), INF):
            best[(i, o)] = c
    return best


def chain(*fsts: Wfst) -> Wfst:
    """Compose left to right."""
    return functools.reduce(compose, fsts)
