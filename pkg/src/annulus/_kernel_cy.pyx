# cython: language_level=3
"""Compiled kernel for exact cyclotomic coefficient arithmetic.

Same contract as annulus._kernel_py. Coefficients are Python ints (they must
stay arbitrary precision); the win over the pure kernel is loop and tuple
overhead, which dominates at the small fixed dimensions used here (<= 4).
"""

from math import gcd

BACKEND = "cython"


cpdef tuple mul_nums(tuple a, tuple b, int n):
    cdef int d, i, j, e
    if n == 4:
        return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])
    d = n - 1
    cdef list acc = [0] * d
    extra = 0
    for i in range(d):
        ai = a[i]
        if ai == 0:
            continue
        for j in range(d):
            bj = b[j]
            if bj == 0:
                continue
            e = i + j
            if e >= n:
                e -= n
            if e < d:
                acc[e] = acc[e] + ai * bj
            else:
                extra = extra + ai * bj
    if extra != 0:
        for e in range(d):
            acc[e] = acc[e] - extra
    return tuple(acc)


cpdef tuple normalized(tuple nums, den):
    cdef int d = len(nums)
    cdef int i
    g = 0
    for i in range(d):
        g = gcd(g, nums[i])
        if g == 1:
            break
    if g == 0:
        return (0,) * d, 1
    g = gcd(g, den)
    if den < 0:
        g = -g
    if g == 1:
        return nums, den
    cdef list out = [0] * d
    for i in range(d):
        out[i] = nums[i] // g
    return tuple(out), den // g


cpdef tuple add_frac(tuple anum, aden, tuple bnum, bden):
    cdef int d = len(anum)
    cdef int i
    cdef list out = [0] * d
    if aden == bden:
        for i in range(d):
            out[i] = anum[i] + bnum[i]
        return normalized(tuple(out), aden)
    for i in range(d):
        out[i] = anum[i] * bden + bnum[i] * aden
    return normalized(tuple(out), aden * bden)


cpdef tuple sub_mul(tuple anum, aden, tuple fnum, fden, tuple bnum, bden, int n):
    cdef tuple prod = mul_nums(fnum, bnum, n)
    cdef int d = len(anum)
    cdef int i
    pden = fden * bden
    cdef list out = [0] * d
    for i in range(d):
        out[i] = anum[i] * pden - prod[i] * aden
    return normalized(tuple(out), aden * pden)
