# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
# distutils: language = c++
"""Compiled term-product kernel; same contract as ``_pykernel.product``."""

from cpython.dict cimport PyDict_GetItem, PyDict_SetItem
from cpython.ref cimport PyObject
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.pair cimport pair

ctypedef unsigned long long u64

KERNEL_NAME = "cython"

DEF MAX_GEN = 3
DEF FIELD_BITS = 8


cdef inline int _field_sum(u64 mon, int lo, int hi) nogil:
    cdef int f, s = 0
    for f in range(lo, hi):
        s += <int>((mon >> (FIELD_BITS * f)) & 0xFF)
    return s


cdef u64 _offset(int n):
    cdef u64 off = 0
    cdef int f
    for f in range(2 * MAX_GEN):
        off |= (<u64>(127 - n)) << (FIELD_BITS * f)
    return off


cdef u64 _high():
    cdef u64 h = 0
    cdef int f
    for f in range(2 * MAX_GEN):
        h |= (<u64>0x80) << (FIELD_BITS * f)
    return h


cdef struct Digest:
    u64 key      # row removed when contracting
    int row
    int aparity
    int dparity
    int idx


cdef Digest* _digest_right(list rkeys, bint contract, int* starts, int* counts):
    cdef Py_ssize_t m = len(rkeys), i
    cdef Digest* d = <Digest*> malloc(m * sizeof(Digest)) if m else NULL
    cdef Digest* tmp
    cdef u64 key, mon
    cdef int a, b, r, pos
    for i in range(256):
        counts[i] = 0
    for i in range(m):
        key = rkeys[i]
        mon = key >> 16
        a = _field_sum(mon, 0, MAX_GEN)
        b = _field_sum(mon, MAX_GEN, 2 * MAX_GEN)
        r = <int>((key >> 8) & 0xFF)
        d[i].key = key - ((<u64>r) << 8) if contract else key
        d[i].row = r
        d[i].aparity = a & 1
        d[i].dparity = (a + b) & 1
        d[i].idx = <int>i
        counts[r] += 1
    if not contract or m == 0:
        return d
    # bucket by row
    pos = 0
    for i in range(256):
        starts[i] = pos
        pos += counts[i]
    tmp = <Digest*> malloc(m * sizeof(Digest))
    cdef int* fill = <int*> malloc(256 * sizeof(int))
    for i in range(256):
        fill[i] = starts[i]
    for i in range(m):
        tmp[fill[d[i].row]] = d[i]
        fill[d[i].row] += 1
    free(fill)
    free(d)
    return tmp


def product(list lkeys, list lvals, list rkeys, list rvals, int n, bint contract):
    if lvals and rvals and type(lvals[0]) is complex and type(rvals[0]) is complex:
        return _product_complex(lkeys, lvals, rkeys, rvals, n, contract)
    return _product_object(lkeys, lvals, rkeys, rvals, n, contract)


cdef dict _product_object(list lkeys, list lvals, list rkeys, list rvals, int n, bint contract):
    cdef int starts[256]
    cdef int counts[256]
    cdef Digest* d = _digest_right(rkeys, contract, starts, counts)
    cdef u64 offset = _offset(n) << 16
    cdef u64 high = _high() << 16
    cdef u64 himask = ~(<u64>0xFFFF)
    cdef u64 key1, base, k
    cdef Py_ssize_t i, j, lo, hi, m = len(rkeys)
    cdef int bp, pp, col
    cdef dict out = {}
    cdef object v1, val, kobj
    cdef PyObject* prev
    try:
        for i in range(len(lkeys)):
            key1 = lkeys[i]
            v1 = lvals[i]
            bp = _field_sum(key1 >> 16, MAX_GEN, 2 * MAX_GEN) & 1
            pp = <int>((((key1 >> 8) & 0xFF) + (key1 & 0xFF)) & 1)
            if contract:
                col = <int>(key1 & 0xFF)
                lo = starts[col]
                hi = lo + counts[col]
                base = key1 - <u64>col
            else:
                lo = 0
                hi = m
                base = key1
            for j in range(lo, hi):
                if ((base & himask) + (d[j].key & himask) + offset) & high:
                    continue
                k = base + d[j].key
                val = v1 * rvals[d[j].idx]
                if (d[j].aparity & bp) ^ (pp & d[j].dparity):
                    val = -val
                kobj = k
                prev = PyDict_GetItem(out, kobj)
                if prev is NULL:
                    PyDict_SetItem(out, kobj, val)
                else:
                    PyDict_SetItem(out, kobj, (<object>prev) + val)
    finally:
        free(d)
    return out


cdef dict _product_complex(list lkeys, list lvals, list rkeys, list rvals, int n, bint contract):
    cdef int starts[256]
    cdef int counts[256]
    cdef Digest* d = _digest_right(rkeys, contract, starts, counts)
    cdef Py_ssize_t m = len(rkeys), ml = len(lkeys), i, j, lo, hi
    cdef double complex* rv = <double complex*> malloc((m + 1) * sizeof(double complex))
    cdef u64 offset = _offset(n) << 16
    cdef u64 high = _high() << 16
    cdef u64 himask = ~(<u64>0xFFFF)
    cdef u64 key1, base, k
    cdef double complex v1, val
    cdef int bp, pp, col
    cdef unordered_map[u64, double complex] acc
    cdef pair[u64, double complex] item
    try:
        for j in range(m):
            rv[j] = rvals[j]
        for i in range(ml):
            key1 = lkeys[i]
            v1 = lvals[i]
            bp = _field_sum(key1 >> 16, MAX_GEN, 2 * MAX_GEN) & 1
            pp = <int>((((key1 >> 8) & 0xFF) + (key1 & 0xFF)) & 1)
            if contract:
                col = <int>(key1 & 0xFF)
                lo = starts[col]
                hi = lo + counts[col]
                base = key1 - <u64>col
            else:
                lo = 0
                hi = m
                base = key1
            for j in range(lo, hi):
                if ((base & himask) + (d[j].key & himask) + offset) & high:
                    continue
                k = base + d[j].key
                val = v1 * rv[d[j].idx]
                if (d[j].aparity & bp) ^ (pp & d[j].dparity):
                    val = -val
                acc[k] += val
    finally:
        free(d)
        free(rv)
    cdef dict out = {}
    for item in acc:
        out[item.first] = complex(item.second.real, item.second.imag)
    return out
