# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled window-scan kernels.

Same contracts as ``scans_py``: exhaustive periodic window scans for the
maximal mean and the mean-oscillation (sharp) function.  The real-valued
oscillation scan keeps the window contents in a Fenwick tree indexed by value
rank, which brings the full scan down to O(N^2 log N).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, fmax, hypot, pow, sqrt
from libc.stdlib cimport free, malloc
from libc.string cimport memset

cnp.import_array()


cdef void _trailing_max_merge(double* vals, double* out, Py_ssize_t n, Py_ssize_t ell,
                              Py_ssize_t* deque) noexcept nogil:
    # merge max over s in [t-ell+1, t] (mod n) of vals[s] into out[t]
    cdef Py_ssize_t head = 0, tail = 0, i, t
    cdef double v
    for i in range(2 * n):
        v = vals[i % n]
        while tail > head and vals[deque[tail - 1] % n] <= v:
            tail -= 1
        deque[tail] = i
        tail += 1
        while deque[head] < i - ell + 1:
            head += 1
        if i >= n:
            t = i - n
            v = vals[deque[head] % n]
            if v > out[t]:
                out[t] = v


def maximal_mean_scan(double[::1] g):
    cdef Py_ssize_t n = g.shape[0]
    out_arr = np.full(n, -np.inf)
    cdef double[::1] out = out_arr
    cdef double* prefix = <double*> malloc((2 * n + 1) * sizeof(double))
    cdef double* means = <double*> malloc(n * sizeof(double))
    cdef Py_ssize_t* deque = <Py_ssize_t*> malloc(2 * n * sizeof(Py_ssize_t))
    if prefix == NULL or means == NULL or deque == NULL:
        free(prefix); free(means); free(deque)
        raise MemoryError
    cdef Py_ssize_t i, ell, s
    with nogil:
        prefix[0] = 0.0
        for i in range(2 * n):
            prefix[i + 1] = prefix[i] + g[i % n]
        for ell in range(1, n + 1):
            for s in range(n):
                means[s] = (prefix[s + ell] - prefix[s]) / ell
            _trailing_max_merge(means, &out[0], n, ell, deque)
    free(prefix); free(means); free(deque)
    return out_arr


cdef inline Py_ssize_t _upper_bound(double* sorted_vals, Py_ssize_t n, double x) noexcept nogil:
    # number of sorted values <= x
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if sorted_vals[mid] <= x:
            lo = mid + 1
        else:
            hi = mid
    return lo


cdef inline void _fenwick_add(double* sums, long long* cnts, Py_ssize_t n,
                              Py_ssize_t pos, double val, long long dc) noexcept nogil:
    cdef Py_ssize_t i = pos
    while i <= n:
        sums[i] += val
        cnts[i] += dc
        i += i & (-i)


cdef inline void _fenwick_query(double* sums, long long* cnts, Py_ssize_t pos,
                                double* out_sum, long long* out_cnt) noexcept nogil:
    cdef Py_ssize_t i = pos
    cdef double s = 0.0
    cdef long long c = 0
    while i > 0:
        s += sums[i]
        c += cnts[i]
        i -= i & (-i)
    out_sum[0] = s
    out_cnt[0] = c


def sharp_scan_real(double[::1] g):
    """Mean-oscillation maximum for a real signal, O(N^2 log N)."""
    cdef Py_ssize_t n = g.shape[0]
    out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    order = np.argsort(np.asarray(g), kind="stable")
    ranks_arr = np.empty(n, dtype=np.int64)
    ranks_arr[order] = np.arange(1, n + 1)
    sorted_arr = np.ascontiguousarray(np.asarray(g)[order], dtype=np.float64)
    cdef long long[::1] ranks = ranks_arr
    cdef double[::1] sorted_g = sorted_arr
    cdef double* prefix = <double*> malloc((2 * n + 1) * sizeof(double))
    cdef double* osc = <double*> malloc(n * sizeof(double))
    cdef double* fsum = <double*> malloc((n + 1) * sizeof(double))
    cdef long long* fcnt = <long long*> malloc((n + 1) * sizeof(long long))
    cdef Py_ssize_t* deque = <Py_ssize_t*> malloc(2 * n * sizeof(Py_ssize_t))
    if prefix == NULL or osc == NULL or fsum == NULL or fcnt == NULL or deque == NULL:
        free(prefix); free(osc); free(fsum); free(fcnt); free(deque)
        raise MemoryError
    cdef Py_ssize_t i, ell, s, rr
    cdef double m, qsum
    cdef long long qcnt
    with nogil:
        prefix[0] = 0.0
        for i in range(2 * n):
            prefix[i + 1] = prefix[i] + g[i % n]
        for ell in range(1, n + 1):
            memset(fsum, 0, (n + 1) * sizeof(double))
            memset(fcnt, 0, (n + 1) * sizeof(long long))
            for i in range(ell):
                _fenwick_add(fsum, fcnt, n, ranks[i % n], g[i % n], 1)
            for s in range(n):
                m = (prefix[s + ell] - prefix[s]) / ell
                rr = _upper_bound(&sorted_g[0], n, m)
                _fenwick_query(fsum, fcnt, rr, &qsum, &qcnt)
                # sum |g_i - m| over the window = 2 (m * cnt_below - sum_below)
                osc[s] = 2.0 * (m * qcnt - qsum) / ell
                _fenwick_add(fsum, fcnt, n, ranks[s], -g[s], -1)
                _fenwick_add(fsum, fcnt, n, ranks[(s + ell) % n], g[(s + ell) % n], 1)
            _trailing_max_merge(osc, &out[0], n, ell, deque)
    free(prefix); free(osc); free(fsum); free(fcnt); free(deque)
    return out_arr


def sharp_scan_norm(double[:, :, ::1] vri, double r):
    """Mean-oscillation maximum in the l^r norm; vri has shape (N, d, 2)."""
    cdef Py_ssize_t n = vri.shape[0]
    cdef Py_ssize_t d = vri.shape[1]
    out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef int mode  # 1: l1, 2: l2, 0: sup, 3: general
    if r == 1.0:
        mode = 1
    elif r == 2.0:
        mode = 2
    elif r == float("inf"):
        mode = 0
    else:
        mode = 3
    cdef double* sum_re = <double*> malloc(d * sizeof(double))
    cdef double* sum_im = <double*> malloc(d * sizeof(double))
    cdef double* mean_re = <double*> malloc(d * sizeof(double))
    cdef double* mean_im = <double*> malloc(d * sizeof(double))
    cdef double* osc = <double*> malloc(n * sizeof(double))
    cdef Py_ssize_t* deque = <Py_ssize_t*> malloc(2 * n * sizeof(Py_ssize_t))
    if (sum_re == NULL or sum_im == NULL or mean_re == NULL or mean_im == NULL
            or osc == NULL or deque == NULL):
        free(sum_re); free(sum_im); free(mean_re); free(mean_im); free(osc); free(deque)
        raise MemoryError
    cdef Py_ssize_t ell, s, i, w, idx
    cdef double acc, nrm, mod
    with nogil:
        for ell in range(1, n + 1):
            for w in range(d):
                sum_re[w] = 0.0
                sum_im[w] = 0.0
            for i in range(ell):
                idx = i % n
                for w in range(d):
                    sum_re[w] += vri[idx, w, 0]
                    sum_im[w] += vri[idx, w, 1]
            for s in range(n):
                for w in range(d):
                    mean_re[w] = sum_re[w] / ell
                    mean_im[w] = sum_im[w] / ell
                acc = 0.0
                for i in range(s, s + ell):
                    idx = i % n
                    if mode == 2:
                        nrm = 0.0
                        for w in range(d):
                            mod = hypot(vri[idx, w, 0] - mean_re[w], vri[idx, w, 1] - mean_im[w])
                            nrm += mod * mod
                        nrm = sqrt(nrm)
                    elif mode == 1:
                        nrm = 0.0
                        for w in range(d):
                            nrm += hypot(vri[idx, w, 0] - mean_re[w], vri[idx, w, 1] - mean_im[w])
                    elif mode == 0:
                        nrm = 0.0
                        for w in range(d):
                            nrm = fmax(nrm, hypot(vri[idx, w, 0] - mean_re[w],
                                                  vri[idx, w, 1] - mean_im[w]))
                    else:
                        nrm = 0.0
                        for w in range(d):
                            nrm += pow(hypot(vri[idx, w, 0] - mean_re[w],
                                             vri[idx, w, 1] - mean_im[w]), r)
                        nrm = pow(nrm, 1.0 / r)
                    acc += nrm
                osc[s] = acc / ell
                idx = s % n
                for w in range(d):
                    sum_re[w] -= vri[idx, w, 0]
                    sum_im[w] -= vri[idx, w, 1]
                idx = (s + ell) % n
                for w in range(d):
                    sum_re[w] += vri[idx, w, 0]
                    sum_im[w] += vri[idx, w, 1]
            _trailing_max_merge(osc, &out[0], n, ell, deque)
    free(sum_re); free(sum_im); free(mean_re); free(mean_im); free(osc); free(deque)
    return out_arr
