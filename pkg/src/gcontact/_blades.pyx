# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled blade kernels; same contract as ``_blades_py``."""


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int _popcount(unsigned long long m) nogil:
    return __builtin_popcountll(m)


cpdef int popcount(unsigned long long m):
    return _popcount(m)


cdef inline int _wedge_sign(unsigned long long a, unsigned long long b) nogil:
    cdef unsigned long long low
    cdef int swaps = 0
    if a & b:
        return 0
    while b:
        low = b & (~b + 1)
        swaps += _popcount(a & ~((low << 1) - 1))
        b ^= low
    return -1 if swaps & 1 else 1


cpdef int wedge_sign(unsigned long long a, unsigned long long b):
    return _wedge_sign(a, b)


cpdef int contract_sign(int bit, unsigned long long m):
    if not (m >> bit) & 1:
        return 0
    return -1 if _popcount(m & ((1ULL << bit) - 1)) & 1 else 1


cpdef int reversal_sign(int k):
    return -1 if ((k * (k - 1)) // 2) & 1 else 1


def wedge_terms(list amasks, list bmasks):
    cdef Py_ssize_t i, j, na = len(amasks), nb = len(bmasks)
    cdef unsigned long long a, b
    cdef int s
    cdef list out = []
    cdef unsigned long long[::1] av, bv
    import array
    av = array.array("Q", amasks)
    bv = array.array("Q", bmasks)
    for i in range(na):
        a = av[i]
        for j in range(nb):
            b = bv[j]
            s = _wedge_sign(a, b)
            if s:
                out.append((i, j, a | b, s))
    return out
