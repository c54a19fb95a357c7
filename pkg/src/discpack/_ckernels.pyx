# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled twins of the kernels in ``_pykernels``; same signatures and output order."""

import numpy as np
from libc.math cimport sqrt, fabs

cdef enum:
    MAXLEN = 256


cdef bint _is_canonical(int* w, int n):
    cdef int s, t, a, b
    for s in range(1, n):
        # rotation starting at s
        for t in range(n):
            a = w[(s + t) % n]
            b = w[t]
            if a != b:
                break
        else:
            continue
        if a < b:
            return False
    for s in range(n):
        # reversal, then rotation starting at s
        for t in range(n):
            a = w[(s - t + n) % n]
            b = w[t]
            if a != b:
                break
        else:
            continue
        if a < b:
            return False
    return True


def corona_words(pair_angle, double target, double tol, int max_len):
    cdef double pa[2][2]
    cdef int a, b
    for a in range(2):
        for b in range(2):
            pa[a][b] = float(pair_angle[a][b])
    cdef double min_pair = pa[0][0]
    for a in range(2):
        for b in range(2):
            if pa[a][b] < min_pair:
                min_pair = pa[a][b]
    if max_len > MAXLEN - 1:
        raise ValueError("corona length bound too large")
    cdef double limit = target + tol
    cdef int word[MAXLEN]
    cdef double total[MAXLEN]
    cdef int nxt[MAXLEN]
    cdef int depth, n, first
    cdef double closed
    out = []
    for first in range(2):
        word[0] = first
        total[0] = 0.0
        nxt[0] = 0
        depth = 0
        n = 1
        # visit the root node
        # (n == 1 never closes, only expands)
        while depth >= 0:
            n = depth + 1
            if nxt[depth] == 0:
                # first visit of this node
                if n >= 3:
                    closed = total[depth] + pa[word[depth]][word[0]]
                    if fabs(closed - target) <= tol and _is_canonical(word, n):
                        out.append(tuple([word[t] for t in range(n)]))
                if n >= max_len or total[depth] + 2.0 * min_pair > limit:
                    depth -= 1
                    continue
            if nxt[depth] >= 2:
                depth -= 1
                continue
            a = nxt[depth]
            nxt[depth] += 1
            word[depth + 1] = a
            total[depth + 1] = total[depth] + pa[word[depth]][a]
            nxt[depth + 1] = 0
            depth += 1
    return out


def contact_pairs(x, y, rho, shifts, double reach):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=float)
    cdef double[::1] yv = np.ascontiguousarray(y, dtype=float)
    cdef double[::1] rv = np.ascontiguousarray(rho, dtype=float)
    cdef double[:, ::1] sv = np.ascontiguousarray(np.asarray(shifts, dtype=float).reshape(-1, 2))
    cdef Py_ssize_t n = xv.shape[0], ns = sv.shape[0]
    cdef Py_ssize_t s, i, j
    cdef double sx, sy, dx, dy, d, cut
    cdef bint zero
    out_i, out_j, out_s, out_d = [], [], [], []
    for s in range(ns):
        sx = sv[s, 0]
        sy = sv[s, 1]
        zero = sx == 0.0 and sy == 0.0
        for i in range(n):
            for j in range(n):
                if zero and i == j:
                    continue
                dx = (xv[j] + sx) - xv[i]
                dy = (yv[j] + sy) - yv[i]
                d = sqrt(dx * dx + dy * dy)
                cut = (rv[i] + rv[j]) * (1.0 + reach)
                if d <= cut:
                    out_i.append(i)
                    out_j.append(j)
                    out_s.append(s)
                    out_d.append(d)
    return (
        np.asarray(out_i, dtype=np.intp),
        np.asarray(out_j, dtype=np.intp),
        np.asarray(out_s, dtype=np.intp),
        np.asarray(out_d, dtype=float),
    )
