# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled scoring kernels; same contracts as ``_lattice_py``."""

from array import array

from cpython cimport array as carray

OP_COR, OP_SUB, OP_DEL, OP_INS = 0, 1, 2, 3


def edit_ops(ref, hyp):
    cdef carray.array r_arr = array("q", ref)
    cdef carray.array h_arr = array("q", hyp)
    cdef long long[:] r = r_arr
    cdef long long[:] h = h_arr
    cdef Py_ssize_t n = len(r_arr), m = len(h_arr)
    cdef Py_ssize_t w = m + 1
    cdef carray.array togo_arr = array("q", bytes(8 * (n + 1) * w))
    cdef long long[:] togo = togo_arr
    cdef Py_ssize_t i, j, row, below
    cdef long long best, c, here, diag, rv
    for j in range(m + 1):
        togo[n * w + j] = m - j
    for i in range(n - 1, -1, -1):
        rv = r[i]
        row = i * w
        below = row + w
        togo[row + m] = n - i
        for j in range(m - 1, -1, -1):
            best = togo[below + j + 1] + (rv != h[j])
            c = togo[below + j] + 1
            if c < best:
                best = c
            c = togo[row + j + 1] + 1
            if c < best:
                best = c
            togo[row + j] = best
    ops = bytearray(n + m)
    cdef unsigned char[:] o = ops
    cdef Py_ssize_t k = 0
    i = 0
    j = 0
    while i < n or j < m:
        here = togo[i * w + j]
        if i < n and j < m:
            diag = togo[(i + 1) * w + j + 1]
            if r[i] == h[j]:
                if diag == here:
                    o[k] = 0
                    k += 1
                    i += 1
                    j += 1
                    continue
            elif diag + 1 == here:
                o[k] = 1
                k += 1
                i += 1
                j += 1
                continue
        if i < n and togo[(i + 1) * w + j] + 1 == here:
            o[k] = 2
            i += 1
        else:
            o[k] = 3
            j += 1
        k += 1
    return togo[0], bytes(ops[:k])


def lattice_togo(ref, offsets, dst, labels, Py_ssize_t final):
    cdef carray.array r_arr = array("q", ref)
    cdef carray.array off_arr = array("q", offsets)
    cdef carray.array dst_arr = array("q", dst)
    cdef carray.array lab_arr = array("q", labels)
    cdef long long[:] r = r_arr
    cdef long long[:] off = off_arr
    cdef long long[:] d = dst_arr
    cdef long long[:] lab = lab_arr
    cdef Py_ssize_t n = len(r_arr)
    cdef Py_ssize_t nq = len(off_arr) - 1
    cdef long long scale = len(dst_arr) + 1
    cdef long long big = (n + len(dst_arr) + 1) * scale * 4
    cdef carray.array togo_arr = array("q", [big]) * ((n + 1) * nq)
    cdef long long[:] togo = togo_arr
    cdef Py_ssize_t q, i, k, q2
    cdef long long best, c, lb
    for q in range(nq - 1, -1, -1):
        for i in range(n, -1, -1):
            best = big
            if q == final and i == n:
                best = 0
            if i < n:
                c = togo[(i + 1) * nq + q] + scale
                if c < best:
                    best = c
            for k in range(off[q], off[q + 1]):
                q2 = d[k]
                lb = lab[k]
                if lb == 0:
                    c = togo[i * nq + q2]
                    if c < best:
                        best = c
                    continue
                c = togo[i * nq + q2] + scale + 1
                if c < best:
                    best = c
                if i < n:
                    c = togo[(i + 1) * nq + q2] + 1
                    if r[i] != lb:
                        c += scale
                    if c < best:
                        best = c
            togo[i * nq + q] = best
    return scale, togo_arr
