# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled numeric kernels with the same interface as ``_pykernels``.

Integer inputs whose products provably fit in 64 bits run in C; anything
else (big integers, Fractions) is delegated to the pure-Python version.
"""

from libc.stdlib cimport malloc, free

from . import _pykernels

__all__ = ["conv_trunc", "partition_counts", "poly_pow_trunc"]

cdef long long LIMIT = 1LL << 62


cdef bint _small_ints(seq, long long *mx):
    cdef long long m = 0, v
    for x in seq:
        if type(x) is not int:
            return False
        if x > LIMIT or x < -LIMIT:
            return False
        v = x
        if v < 0:
            v = -v
        if v > m:
            m = v
    mx[0] = m
    return True


def conv_trunc(a, b, Py_ssize_t n):
    cdef Py_ssize_t la = min(len(a), n), lb = min(len(b), n), i, j, top
    cdef long long ma = 0, mb = 0
    if n <= 0:
        return []
    if not (_small_ints(a[:la], &ma) and _small_ints(b[:lb], &mb)):
        return _pykernels.conv_trunc(a, b, n)
    # every output coefficient is a sum of at most min(la, lb) products
    if ma and mb and (ma > LIMIT // mb or ma * mb > LIMIT // max(1, min(la, lb))):
        return _pykernels.conv_trunc(a, b, n)
    cdef long long *ca = <long long *> malloc(la * sizeof(long long) + 1)
    cdef long long *cb = <long long *> malloc(lb * sizeof(long long) + 1)
    cdef long long *co = <long long *> malloc(n * sizeof(long long))
    cdef long long ai
    try:
        for i in range(la):
            ca[i] = a[i]
        for j in range(lb):
            cb[j] = b[j]
        for i in range(n):
            co[i] = 0
        for i in range(la):
            ai = ca[i]
            if ai == 0:
                continue
            top = min(lb, n - i)
            for j in range(top):
                co[i + j] += ai * cb[j]
        return [co[i] for i in range(n)]
    finally:
        free(ca)
        free(cb)
        free(co)


def partition_counts(Py_ssize_t n):
    if n > 400:  # p(n) leaves the int64 range a little beyond n = 400
        return _pykernels.partition_counts(n)
    cdef long long *p = <long long *> malloc((n + 1) * sizeof(long long))
    cdef Py_ssize_t m, k, g1, g2
    cdef long long total, sign
    try:
        p[0] = 1
        for m in range(1, n + 1):
            total = 0
            k = 1
            while True:
                g1 = k * (3 * k - 1) // 2
                if g1 > m:
                    break
                sign = 1 if k % 2 else -1
                total += sign * p[m - g1]
                g2 = k * (3 * k + 1) // 2
                if g2 <= m:
                    total += sign * p[m - g2]
                k += 1
            p[m] = total
        return [p[m] for m in range(n + 1)]
    finally:
        free(p)


def poly_pow_trunc(a, e, n):
    result = [0] * n
    if n:
        result[0] = 1
    base = list(a[:n]) + [0] * max(0, n - len(a))
    while e:
        if e & 1:
            result = conv_trunc(result, base, n)
        e >>= 1
        if e:
            base = conv_trunc(base, base, n)
    return result
