"""Pure-Python scoring kernels; mirror ``_lattice.pyx`` line for line.

Op codes: 0 COR, 1 SUB, 2 DEL, 3 INS.
"""

OP_COR, OP_SUB, OP_DEL, OP_INS = 0, 1, 2, 3


def edit_ops(ref, hyp):
    """Unit-cost edit distance of two id sequences plus the canonical op string.

    The op string is the lexicographically smallest (COR < SUB < DEL < INS)
    among all minimum-cost alignments, read left to right.
    """
    n, m = len(ref), len(hyp)
    w = m + 1
    # togo[i*w + j]: cheapest way to finish from ref[i:], hyp[j:]
    togo = [0] * ((n + 1) * w)
    for j in range(m + 1):
        togo[n * w + j] = m - j
    for i in range(n - 1, -1, -1):
        r = ref[i]
        row = i * w
        below = row + w
        togo[row + m] = n - i
        for j in range(m - 1, -1, -1):
            best = togo[below + j + 1] + (r != hyp[j])
            c = togo[below + j] + 1
            if c < best:
                best = c
            c = togo[row + j + 1] + 1
            if c < best:
                best = c
            togo[row + j] = best
    ops = bytearray()
    i = j = 0
    while i < n or j < m:
        here = togo[i * w + j]
        if i < n and j < m:
            diag = togo[(i + 1) * w + j + 1]
            if ref[i] == hyp[j]:
                if diag == here:
                    ops.append(OP_COR)
                    i += 1
                    j += 1
                    continue
            elif diag + 1 == here:
                ops.append(OP_SUB)
                i += 1
                j += 1
                continue
        if i < n and togo[(i + 1) * w + j] + 1 == here:
            ops.append(OP_DEL)
            i += 1
        else:
            ops.append(OP_INS)
            j += 1
    return togo[0], bytes(ops)


def lattice_togo(ref, offsets, dst, labels, final):
    """Best (cost, hyp length) from every (ref position, lattice state) to the end.

    The lattice is acyclic with states in topological order, arcs in CSR
    form (``offsets``/``dst``/``labels``) and label 0 for token-free arcs.
    Pairs are packed as ``cost * scale + length`` with ``scale`` larger
    than any reachable length; returns ``(scale, table)`` with the table
    indexed ``i * n_states + q``.
    """
    n = len(ref)
    nq = len(offsets) - 1
    scale = len(dst) + 1
    big = (n + len(dst) + 1) * scale * 4
    togo = [big] * ((n + 1) * nq)
    for q in range(nq - 1, -1, -1):
        lo, hi = offsets[q], offsets[q + 1]
        for i in range(n, -1, -1):
            best = big
            if q == final and i == n:
                best = 0
            if i < n:
                c = togo[(i + 1) * nq + q] + scale
                if c < best:
                    best = c
            for k in range(lo, hi):
                q2 = dst[k]
                lab = labels[k]
                if lab == 0:
                    c = togo[i * nq + q2]
                    if c < best:
                        best = c
                    continue
                c = togo[i * nq + q2] + scale + 1
                if c < best:
                    best = c
                if i < n:
                    c = togo[(i + 1) * nq + q2] + 1
                    if ref[i] != lab:
                        c += scale
                    if c < best:
                        best = c
            togo[i * nq + q] = best
    return scale, togo
