# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitset kernels: popcount-based Tanimoto over uint64 words."""

from libc.stdint cimport uint64_t
import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline int _popcount(uint64_t x) nogil:
    x = x - ((x >> 1) & 0x5555555555555555ULL)
    x = (x & 0x3333333333333333ULL) + ((x >> 2) & 0x3333333333333333ULL)
    x = (x + (x >> 4)) & 0x0F0F0F0F0F0F0F0FULL
    return <int>((x * 0x0101010101010101ULL) >> 56)


def popcount(cnp.ndarray[cnp.uint64_t, ndim=1] words):
    cdef Py_ssize_t i
    cdef long total = 0
    for i in range(words.shape[0]):
        total += _popcount(words[i])
    return total


def tanimoto(cnp.ndarray[cnp.uint64_t, ndim=1] a, cnp.ndarray[cnp.uint64_t, ndim=1] b):
    cdef Py_ssize_t i
    cdef long inter = 0, union_ = 0
    cdef uint64_t x, y
    for i in range(a.shape[0]):
        x = a[i]
        y = b[i]
        inter += _popcount(x & y)
        union_ += _popcount(x | y)
    if union_ == 0:
        return 0.0
    return inter / <double>union_


def mean_pairwise_tanimoto(cnp.ndarray[cnp.uint64_t, ndim=2] fps):
    """Mean Tanimoto over all unordered pairs of fingerprint rows."""
    cdef Py_ssize_t n = fps.shape[0], w = fps.shape[1]
    cdef Py_ssize_t i, j, k
    cdef long inter, union_
    cdef double total = 0.0
    cdef long pairs = 0
    cdef uint64_t x, y
    if n < 2:
        return 0.0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                inter = 0
                union_ = 0
                for k in range(w):
                    x = fps[i, k]
                    y = fps[j, k]
                    inter += _popcount(x & y)
                    union_ += _popcount(x | y)
                if union_ > 0:
                    total += inter / <double>union_
                pairs += 1
    return total / pairs
