# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: chain sifting and orbit labelling over element indices."""
import numpy as np
cimport numpy as cnp

ctypedef cnp.int64_t i64


def sift_indices(i64[::1] base, i64[:, ::1] pos, i64[:, :, ::1] tinv_pad,
                 i64[::1] strides, perms):
    cdef i64[:, ::1] P = np.ascontiguousarray(perms, dtype=np.int64)
    cdef Py_ssize_t n = P.shape[0], d = P.shape[1], m = base.shape[0]
    out_arr = np.empty(n, dtype=np.int64)
    cdef i64[::1] out = out_arr
    cdef i64[::1] g = np.empty(d, dtype=np.int64)
    cdef Py_ssize_t r, i, x
    cdef i64 u, idx
    cdef bint ok
    for r in range(n):
        for x in range(d):
            g[x] = P[r, x]
        idx = 0
        ok = True
        for i in range(m):
            u = pos[i, g[base[i]]]
            if u < 0:
                ok = False
                break
            idx += u * strides[i]
            for x in range(d):
                g[x] = tinv_pad[i, u, g[x]]
        if ok:
            for x in range(d):
                if g[x] != x:
                    ok = False
                    break
        out[r] = idx if ok else -1
    return out_arr


def orbit_labels(maps):
    cdef i64[:, ::1] M = np.ascontiguousarray(maps, dtype=np.int64)
    cdef Py_ssize_t k = M.shape[0], n = M.shape[1]
    lab_arr = -np.ones(n, dtype=np.int64)
    cdef i64[::1] lab = lab_arr
    cdef i64[::1] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t start, head, tail, s
    cdef i64 cur = 0, v, w
    for start in range(n):
        if lab[start] >= 0:
            continue
        lab[start] = cur
        queue[0] = start
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for s in range(k):
                w = M[s, v]
                if lab[w] < 0:
                    lab[w] = cur
                    queue[tail] = w
                    tail += 1
        cur += 1
    return lab_arr
