"""Pure-Python kernel for exact cyclotomic coefficient arithmetic.

Scalars are represented as (nums, den): an integer coefficient tuple in the
power basis of Q(zeta_N) (length N-1 for odd prime N, length 2 for N=4) over a
positive integer denominator. `annulus._kernel_cy` is the compiled twin with
the same signatures.
"""

from math import gcd

BACKEND = "pure"


def mul_nums(a, b, n):
    """Coefficient tuple of a*b reduced modulo the N-th cyclotomic polynomial."""
    if n == 4:
        a0, a1 = a
        b0, b1 = b
        return (a0 * b0 - a1 * b1, a0 * b1 + a1 * b0)
    d = n - 1
    acc = [0] * d
    extra = 0  # multiple of zeta^(n-1) = -(1 + zeta + ... + zeta^(d-1))
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
                acc[e] += ai * bj
            else:
                extra += ai * bj
    if extra:
        for e in range(d):
            acc[e] -= extra
    return tuple(acc)


def normalized(nums, den):
    """Canonical form: den > 0 and gcd(content, den) = 1; zero is ((0,..),1)."""
    g = 0
    for c in nums:
        g = gcd(g, c)
        if g == 1:
            break
    if g == 0:
        return (0,) * len(nums), 1
    g = gcd(g, den)
    if den < 0:
        g = -g
    if g != 1:
        nums = tuple(c // g for c in nums)
        den = den // g
    return nums, den


def add_frac(anum, aden, bnum, bden):
    if aden == bden:
        return normalized(tuple(x + y for x, y in zip(anum, bnum)), aden)
    return normalized(
        tuple(x * bden + y * aden for x, y in zip(anum, bnum)), aden * bden
    )


def sub_mul(anum, aden, fnum, fden, bnum, bden, n):
    """a - f*b, normalized. The elimination inner loop."""
    prod = mul_nums(fnum, bnum, n)
    pden = fden * bden
    return normalized(
        tuple(x * pden - y * aden for x, y in zip(anum, prod)), aden * pden
    )
