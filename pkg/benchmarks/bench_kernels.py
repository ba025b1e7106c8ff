"""Compare the compiled and pure-Python scoring kernels, plus the generic FST route.

    python benchmarks/bench_kernels.py --pairs 300 --length 40
"""

import argparse
import json
import random
import statistics
import time

from asrscore import kernels
from asrscore.align import align_fst, lattice_arrays
from asrscore.fst import SymbolTable, build_lev, sausage_fst
from asrscore.types import AlternativeSet

SETS = [
    AlternativeSet.of("we're", "we are"),
    AlternativeSet.of("gonna", "going to"),
    AlternativeSet.of("ok", "o k", "okay"),
]


def make_pairs(n, length, vocab, seed):
    rng = random.Random(seed)
    words = [f"w{i}" for i in range(vocab)]
    pairs = []
    for _ in range(n):
        ref = [rng.choice(words) for _ in range(length)]
        hyp = list(ref)
        for _ in range(length // 5):
            k = rng.randrange(len(hyp))
            op = rng.random()
            if op < 0.4:
                hyp[k] = rng.choice(words)
            elif op < 0.7:
                del hyp[k]
            else:
                hyp.insert(k, rng.choice(words))
        # sprinkle alternative-set members so lattices have branches
        for _ in range(max(1, length // 10)):
            hyp.insert(rng.randrange(len(hyp) + 1), rng.choice(["we're", "gonna", "ok"]))
        pairs.append((ref, hyp))
    return words, pairs


def timed(fn, repeat):
    runs = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t0)
    return statistics.median(runs)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=200)
    ap.add_argument("--length", type=int, default=30)
    ap.add_argument("--vocab", type=int, default=500)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--fst-pairs", type=int, default=20, help="the generic route is slow; time fewer pairs")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()

    words, pairs = make_pairs(args.pairs, args.length, args.vocab, args.seed)
    table = SymbolTable(words)
    table.add_alternatives(SETS)
    encoded = [([table.find(t) for t in r], [table.add(t) for t in h]) for r, h in pairs]
    lattices = [lattice_arrays(sausage_fst(h, SETS, table), table) for _, h in pairs]

    rows = []
    for name, impl in sorted(kernels.backends().items()):
        t_edit = timed(lambda: [impl.edit_ops(r, h) for r, h in encoded], args.repeat)
        t_lat = timed(lambda: [impl.lattice_togo(r, *lat) for (r, _), lat in zip(encoded, lattices)], args.repeat)
        rows.append({"route": name, "edit_ops_ms_per_pair": 1e3 * t_edit / len(encoded),
                     "lattice_ms_per_pair": 1e3 * t_lat / len(encoded)})

    lev = build_lev(table)
    sub = pairs[: args.fst_pairs]
    t_fst = timed(lambda: [align_fst(r, h, lev, SETS) for r, h in sub], 1)
    rows.append({"route": "generic-fst", "edit_ops_ms_per_pair": None, "lattice_ms_per_pair": 1e3 * t_fst / len(sub)})

    if args.json:
        print(json.dumps({"args": vars(args), "results": rows}, indent=2))
        return
    print(f"{args.pairs} pairs, ~{args.length} tokens, vocab {args.vocab}; default backend: {kernels.BACKEND}")
    print(f"{'route':<12} {'edit_ops ms/pair':>17} {'lattice ms/pair':>16}")
    for row in rows:
        e = row["edit_ops_ms_per_pair"]
        print(f"{row['route']:<12} {'-' if e is None else f'{e:.3f}':>17} {row['lattice_ms_per_pair']:>16.3f}")
    by = {r["route"]: r for r in rows}
    if "cython" in by:
        print(f"speedup edit_ops: {by['python']['edit_ops_ms_per_pair'] / by['cython']['edit_ops_ms_per_pair']:.1f}x, "
              f"lattice: {by['python']['lattice_ms_per_pair'] / by['cython']['lattice_ms_per_pair']:.1f}x")


if __name__ == "__main__":
    main()
