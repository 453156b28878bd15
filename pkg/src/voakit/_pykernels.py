"""Pure-Python numeric kernels (reference implementation and fallback)."""

from __future__ import annotations

__all__ = ["conv_trunc", "partition_counts", "poly_pow_trunc"]


def conv_trunc(a, b, n):
    """First ``n`` coefficients of the product of two power series."""
    out = [0] * n
    la, lb = min(len(a), n), min(len(b), n)
    for i in range(la):
        ai = a[i]
        if not ai:
            continue
        top = min(lb, n - i)
        for j in range(top):
            bj = b[j]
            if bj:
                out[i + j] += ai * bj
    return out


def partition_counts(n):
    """``p(0), ..., p(n)`` by Euler's pentagonal recurrence."""
    p = [0] * (n + 1)
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
    return p


def poly_pow_trunc(a, e, n):
    """``a**e`` truncated to ``n`` coefficients (``e >= 0``)."""
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
