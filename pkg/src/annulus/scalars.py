"""Exact scalars: residues mod a prime and the cyclotomic field Q(zeta_N).

Every amplitude in the engine is a `Cyc`: an element of Q(zeta_N) with exact
rational coefficients in the power basis, N = p for odd p and N = 4 for p = 2
(the quadratic Theta phase needs i). Equality is exact coefficient equality;
there is no tolerance anywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

if os.environ.get("ANNULUS_PURE") == "1":
    from . import _kernel_py as _kernel
else:
    try:
        from . import _kernel_cy as _kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _kernel


def kernel_backend() -> str:
    """Which scalar kernel is active: 'cython' or 'pure'."""
    return _kernel.BACKEND


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def mod_inverse(a, p: int | None = None) -> int:
    """Inverse of a mod p; raises ValueError("not invertible") on zero input."""
    if isinstance(a, ZpElem):
        p = a.p
        a = a.value
    assert p is not None
    a %= p
    if a == 0:
        raise ValueError("not invertible")
    return pow(a, p - 2, p)


@dataclass(frozen=True)
class ZpElem:
    """A residue in Z/pZ; p must be prime."""

    value: int
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        object.__setattr__(self, "value", self.value % self.p)

    def _lift(self, other) -> "ZpElem":
        if isinstance(other, ZpElem):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        return ZpElem(other, self.p)

    def __add__(self, other):
        return ZpElem(self.value + self._lift(other).value, self.p)

    def __sub__(self, other):
        return ZpElem(self.value - self._lift(other).value, self.p)

    def __mul__(self, other):
        return ZpElem(self.value * self._lift(other).value, self.p)

    def __neg__(self):
        return ZpElem(-self.value, self.p)

    def inverse(self) -> "ZpElem":
        return ZpElem(mod_inverse(self.value, self.p), self.p)

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class Cyc:
    """Element of Q(zeta_N), held as integer numerators over one denominator."""

    __slots__ = ("field", "nums", "den")

    def __init__(self, field: "CycField", nums, den=1, _normalized=False):
        if not _normalized:
            nums, den = _kernel.normalized(tuple(nums), den)
        self.field = field
        self.nums = nums
        self.den = den

    def _check(self, other: "Cyc"):
        if other.field.N != self.field.N:
            raise ValueError("mixed cyclotomic orders")

    def __add__(self, other: "Cyc") -> "Cyc":
        self._check(other)
        nums, den = _kernel.add_frac(self.nums, self.den, other.nums, other.den)
        return Cyc(self.field, nums, den, _normalized=True)

    def __sub__(self, other: "Cyc") -> "Cyc":
        return self + (-other)

    def __neg__(self) -> "Cyc":
        return Cyc(self.field, tuple(-c for c in self.nums), self.den, _normalized=True)

    def __mul__(self, other):
        if isinstance(other, Cyc):
            self._check(other)
            nums = _kernel.mul_nums(self.nums, other.nums, self.field.N)
            nums, den = _kernel.normalized(nums, self.den * other.den)
            return Cyc(self.field, nums, den, _normalized=True)
        if isinstance(other, int):
            return Cyc(self.field, tuple(c * other for c in self.nums), self.den)
        if isinstance(other, Fraction):
            return Cyc(
                self.field,
                tuple(c * other.numerator for c in self.nums),
                self.den * other.denominator,
            )
        return NotImplemented

    __rmul__ = __mul__

    def sub_mul(self, f: "Cyc", b: "Cyc") -> "Cyc":
        """self - f*b in one kernel call."""
        nums, den = _kernel.sub_mul(
            self.nums, self.den, f.nums, f.den, b.nums, b.den, self.field.N
        )
        return Cyc(self.field, nums, den, _normalized=True)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.nums)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, Cyc)
            and self.field.N == other.field.N
            and self.nums == other.nums
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.field.N, self.nums, self.den))

    def inverse(self) -> "Cyc":
        """Field inverse via the multiplication matrix (dimension <= 4)."""
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse in Q(zeta_N)")
        F = self.field
        d = F.dim
        nonzero = [i for i, c in enumerate(self.nums) if c]
        if len(nonzero) == 1:
            # monomial fast path: (c zeta^k / den)^-1 = den zeta^(-k) / c
            k = nonzero[0]
            c = self.nums[k]
            inv_root = F.root_pow(-k) if F.p == 2 else F.omega_pow(-k)
            return inv_root * Fraction(self.den, c)
        cols = []
        for j in range(d):
            cols.append(_kernel.mul_nums(self.nums, F._basis_nums[j], F.N))
        # Solve sum_j x_j * cols[j] = e_0 over Q by elimination on fractions.
        mat = [[Fraction(cols[j][i], self.den) for j in range(d)] for i in range(d)]
        rhs = [Fraction(1 if i == 0 else 0) for i in range(d)]
        for c in range(d):
            piv = next(r for r in range(c, d) if mat[r][c] != 0)
            mat[c], mat[piv] = mat[piv], mat[c]
            rhs[c], rhs[piv] = rhs[piv], rhs[c]
            inv = 1 / mat[c][c]
            mat[c] = [x * inv for x in mat[c]]
            rhs[c] *= inv
            for r in range(d):
                if r != c and mat[r][c] != 0:
                    f = mat[r][c]
                    mat[r] = [x - f * y for x, y in zip(mat[r], mat[c])]
                    rhs[r] -= f * rhs[c]
        out = F.zero
        for j in range(d):
            if rhs[j]:
                out = out + F._basis_cyc[j] * rhs[j]
        return out

    def as_rational(self) -> Fraction | None:
        """The value as a rational if it lies in Q, else None."""
        if any(c != 0 for c in self.nums[1:]):
            return None
        return Fraction(self.nums[0], self.den)

    def __repr__(self):
        return f"Cyc({self.symbolic()})"

    def symbolic(self) -> str:
        """Render like '(1 - 2*w^2)/3', with 'i' for the extra p=2 root."""
        sym = self.field.root_symbol
        terms = []
        for e, c in enumerate(self.nums):
            if c == 0:
                continue
            if e == 0:
                base = str(abs(c))
            else:
                pw = sym if e == 1 else f"{sym}^{e}"
                base = pw if abs(c) == 1 else f"{abs(c)}*{pw}"
            terms.append(("- " if c < 0 else "+ ") + base)
        if not terms:
            return "0"
        body = " ".join(terms)
        body = body[2:] if body.startswith("+ ") else "-" + body[2:]
        if self.den != 1:
            body = f"({body})/{self.den}" if len(terms) > 1 else f"{body}/{self.den}"
        return body


class CycField:
    """Q(zeta_N) for the engine's prime p: N = p (odd p) or N = 4 (p = 2).

    All scalars of one computation share a field instance; mixing orders is
    rejected by the arithmetic.
    """

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.N = 4 if p == 2 else p
        self.dim = 2 if p == 2 else p - 1
        self.root_symbol = "i" if p == 2 else "w"
        self._basis_nums = [
            tuple(1 if i == j else 0 for i in range(self.dim)) for j in range(self.dim)
        ]
        self.zero = Cyc(self, (0,) * self.dim, 1, _normalized=True)
        self.one = Cyc(self, self._basis_nums[0], 1, _normalized=True)
        self._basis_cyc = [
            Cyc(self, nums, 1, _normalized=True) for nums in self._basis_nums
        ]
        self._omega_cache = [self._make_omega(k) for k in range(p)]
        self.inv_p = self.rational(Fraction(1, p))

    def _make_omega(self, k: int) -> Cyc:
        if self.p == 2:
            return self.one if k == 0 else Cyc(self, (-1, 0))
        k %= self.p
        if k < self.dim:
            return self._basis_cyc[k]
        return Cyc(self, (-1,) * self.dim, 1, _normalized=True)

    def omega_pow(self, k: int) -> Cyc:
        """omega^k with omega = exp(2 pi i / p)."""
        return self._omega_cache[k % self.p]

    def root_pow(self, k: int) -> Cyc:
        """zeta_N^k; for p = 2 this is i^k (k taken as an integer)."""
        if self.p != 2:
            return self.omega_pow(k)
        k %= 4
        if k == 0:
            return self.one
        if k == 1:
            return Cyc(self, (0, 1))
        if k == 2:
            return Cyc(self, (-1, 0))
        return Cyc(self, (0, -1))

    def integer(self, n: int) -> Cyc:
        return Cyc(self, (n,) + (0,) * (self.dim - 1))

    def rational(self, q: Fraction) -> Cyc:
        return Cyc(self, (q.numerator,) + (0,) * (self.dim - 1), q.denominator)
