"""Irreducible annular-category representations on 2- and 3-string annuli.

Each family is an explicit labeled basis plus the action of the generating
annular morphisms: (g,h) for bivalent annuli (g in the left region, h in the
right), (a,b,c) for trivalent ones (a left, b right, c middle). The entries
are transcriptions of the representation tables; every sign convention is
inherited from them, nothing is re-derived.

Registry value conventions (all integer arithmetic is raw, reduced mod p by
the Rep classes):
  free   -- names of the basis labels, iterated over Z/p each
  edges  -- free tuple -> object labels per string
  act    -- (free, args...) -> (phase Cyc, new free tuple)
  mu     -- whether the family carries a corner parameter (multiplicity p)
"""

from __future__ import annotations

from .scalars import Cyc, CycField, mod_inverse
from .walls import STAR, BimoduleLabel, wall_product


def theta(field: CycField, x: int, a: int, g: int) -> Cyc:
    """Quadratic phase of the invertible-wall idempotents.

    p = 2: (-1)^(g x) * i^(a g) on canonical representatives; odd p:
    omega^(g x + a g^2 / 2).
    """
    p = field.p
    if p == 2:
        x, a, g = x % 2, a % 2, g % 2
        sign = field.omega_pow(g * x)  # omega = -1
        return sign * field.root_pow(a * g)
    inv2 = mod_inverse(2, p)
    return field.omega_pow(g * x + a * g * g * inv2)


class _Walls:
    """Parameter bundle for one family instance: p plus the wall parameters."""

    def __init__(self, p: int, *walls: BimoduleLabel):
        self.p = p
        self.params = tuple(w.param for w in walls)

    def inv(self, value: int) -> int:
        return mod_inverse(value, self.p)


def _norm(p: int, obj):
    if obj is STAR:
        return STAR
    if isinstance(obj, tuple):
        return (obj[0] % p, obj[1] % p)
    return obj % p


# --------------------------------------------------------------------------
# Bivalent families (lower wall = row, upper wall = column).
# Key: (ekind(lower), ekind(upper), same) with same = whether the two wall
# parameters coincide; only X/X and F/F pairs use the flag.
# Value: dict(params, free, edges, act, src, idem).
#   edges(v, d, w) -> (lower object, upper object)
#   act(v, d, w, g, h, F) -> (phase, new free)
#   src(d, w) -> idempotent source object (lower, upper)
#   idem(d, w, F) -> [(coefficient, (g, h))], the idempotent expression
# --------------------------------------------------------------------------

BIVALENT: dict = {}


def _biv(lo, up, same=None, params=(), free=(), edges=None, act=None, src=None,
         idem=None, name=None):
    BIVALENT[(lo, up, same)] = {
        "params": params, "free": free, "edges": edges, "act": act,
        "src": src, "idem": idem, "name": name,
    }


def _idem_identity(d, w, F):
    return [(F.one, (0, 0))]


def _idem_left(xkey):
    # (1/p) sum_g omega^(g x) gen(g, 0)
    def mk(d, w, F):
        x = d[xkey]
        return [(F.inv_p * F.omega_pow(g * x), (g, 0)) for g in range(w.p)]
    return mk


def _idem_right(xkey):
    # (1/p) sum_g omega^(g x) gen(0, -g)
    def mk(d, w, F):
        x = d[xkey]
        return [(F.inv_p * F.omega_pow(g * x), (0, -g)) for g in range(w.p)]
    return mk


_biv("T", "T", params=("a", "b"), free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), (d["a"] + v[0], d["b"] + v[1])),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), (d["a"], d["b"])),
     idem=_idem_identity)

_biv("T", "L", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), d["a"] + v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), d["a"]),
     idem=_idem_identity)

_biv("T", "R", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), d["a"] + v[0]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), d["a"]),
     idem=_idem_identity)

_biv("T", "F0", free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), STAR),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), STAR),
     idem=_idem_identity)

_biv("T", "X", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), d["a"] + v[0] + w.params[1] * v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), d["a"]),
     idem=_idem_identity)

_biv("T", "F", free=("m", "n"),
     edges=lambda v, d, w: ((v[0], v[1]), STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-w.params[1] * g * v[1]), (v[0] + g, v[1] + h)),
     src=lambda d, w: ((0, 0), STAR),
     idem=_idem_identity)

_biv("L", "T", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: (v[1], (v[0], d["a"] + v[1])),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, (0, d["a"])),
     idem=_idem_identity)

_biv("L", "L", params=("a", "x"), free=("m",),
     edges=lambda v, d, w: (v[0], d["a"] + v[0]),
     act=lambda v, d, w, g, h, F: (F.omega_pow(-g * d["x"]), (v[0] + h,)),
     src=lambda d, w: (0, d["a"]),
     idem=_idem_left("x"))

_biv("L", "R", free=("m", "n"),
     edges=lambda v, d, w: (v[1], v[0]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("L", "F0", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (F.omega_pow(-g * d["x"]), (v[0] + h,)),
     src=lambda d, w: (0, STAR),
     idem=_idem_left("x"))

_biv("L", "X", free=("m", "n"),
     edges=lambda v, d, w: (v[1], v[0] + w.params[1] * v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("L", "F", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-g * (d["x"] + v[0] * w.params[1])), (v[0] + h,)),
     src=lambda d, w: (0, STAR),
     idem=_idem_left("x"))

_biv("R", "T", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: (v[0], (d["a"] + v[0], v[1])),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, (d["a"], 0)),
     idem=_idem_identity)

_biv("R", "L", free=("m", "n"),
     edges=lambda v, d, w: (v[0], v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("R", "R", params=("a", "x"), free=("m",),
     edges=lambda v, d, w: (v[0], d["a"] + v[0]),
     act=lambda v, d, w, g, h, F: (F.omega_pow(h * d["x"]), (v[0] + g,)),
     src=lambda d, w: (0, d["a"]),
     idem=_idem_right("x"))

_biv("R", "F0", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (F.omega_pow(h * d["x"]), (v[0] + g,)),
     src=lambda d, w: (0, STAR),
     idem=_idem_right("x"))

_biv("R", "X", free=("m", "n"),
     edges=lambda v, d, w: (v[0], v[0] + w.params[1] * v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("R", "F", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(h * (d["x"] + w.params[1] * (v[0] + g))), (v[0] + g,)),
     src=lambda d, w: (0, STAR),
     idem=_idem_right("x"))

_biv("F0", "T", free=("m", "n"),
     edges=lambda v, d, w: (STAR, (v[0], v[1])),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (STAR, (0, 0)),
     idem=_idem_identity)

_biv("F0", "L", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (F.omega_pow(-g * d["x"]), (v[0] + h,)),
     src=lambda d, w: (STAR, 0),
     idem=_idem_left("x"))

_biv("F0", "R", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (F.omega_pow(h * d["x"]), (v[0] + g,)),
     src=lambda d, w: (STAR, 0),
     idem=_idem_right("x"))

_biv("F0", "F0", params=("x", "y"), free=(),
     edges=lambda v, d, w: (STAR, STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-g * d["x"] + h * d["y"]), ()),
     src=lambda d, w: (STAR, STAR),
     idem=lambda d, w, F: [
         (F.inv_p * F.inv_p * F.omega_pow(g * d["x"] + h * d["y"]), (g, -h))
         for g in range(w.p) for h in range(w.p)])

_biv("F0", "X", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-g * d["x"]), (v[0] + g + w.params[1] * h,)),
     src=lambda d, w: (STAR, 0),
     idem=lambda d, w, F: [
         (F.inv_p * F.omega_pow(g * d["x"]), (g, -w.inv(w.params[1]) * g))
         for g in range(w.p)])

_biv("F0", "F", free=("alpha",),
     edges=lambda v, d, w: (STAR, STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(h * w.params[1] * (v[0] + g)), (v[0] + g,)),
     src=lambda d, w: (STAR, STAR),
     idem=lambda d, w, F: [(F.inv_p, (0, -g)) for g in range(w.p)])

_biv("X", "T", params=("a",), free=("m", "n"),
     edges=lambda v, d, w: (v[0] + w.params[0] * v[1], (d["a"] + v[0], v[1])),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, (d["a"], 0)),
     idem=_idem_identity)

_biv("X", "L", free=("m", "n"),
     edges=lambda v, d, w: (v[0] + w.params[0] * v[1], v[1]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("X", "R", free=("m", "n"),
     edges=lambda v, d, w: (v[0] + w.params[0] * v[1], v[0]),
     act=lambda v, d, w, g, h, F: (F.one, (v[0] + g, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("X", "F0", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-g * d["x"]), (v[0] + g + w.params[0] * h,)),
     src=lambda d, w: (0, STAR),
     idem=lambda d, w, F: [
         (F.inv_p * F.omega_pow(g * d["x"]), (g, -w.inv(w.params[0]) * g))
         for g in range(w.p)])

_biv("X", "X", same=True, params=("a", "x"), free=("m",),
     edges=lambda v, d, w: (v[0], d["a"] + v[0]),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(h * d["x"]), (v[0] + g + w.params[0] * h,)),
     src=lambda d, w: (0, d["a"]),
     idem=lambda d, w, F: [
         (F.inv_p * F.omega_pow(g * d["x"]), (w.params[0] * g, -g))
         for g in range(w.p)])

_biv("X", "X", same=False, free=("m", "n"),
     edges=lambda v, d, w: (v[0], v[0] + (w.params[1] - w.params[0]) * v[1]),
     act=lambda v, d, w, g, h, F: (
         F.one, (v[0] + g + w.params[0] * h, v[1] + h)),
     src=lambda d, w: (0, 0),
     idem=_idem_identity)

_biv("X", "F", params=("x",), free=("m",),
     edges=lambda v, d, w: (v[0], STAR),
     act=lambda v, d, w, g, h, F: (
         theta(F, d["x"], w.params[0] * w.params[1], h)
         * F.omega_pow(h * w.params[1] * (g + v[0])),
         (v[0] + g + w.params[0] * h,)),
     src=lambda d, w: (0, STAR),
     idem=lambda d, w, F: [
         (F.inv_p * theta(F, d["x"], w.params[0] * w.params[1], g),
          (w.params[0] * g, -g))
         for g in range(w.p)])

_biv("F", "T", free=("m", "n"),
     edges=lambda v, d, w: (STAR, (v[0], v[1])),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(w.params[0] * g * v[1]), (v[0] + g, v[1] + h)),
     src=lambda d, w: (STAR, (0, 0)),
     idem=_idem_identity)

_biv("F", "L", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(g * (v[0] * w.params[0] - d["x"])), (v[0] + h,)),
     src=lambda d, w: (STAR, 0),
     idem=_idem_left("x"))

_biv("F", "R", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(h * (d["x"] - w.params[0] * (v[0] + g))), (v[0] + g,)),
     src=lambda d, w: (STAR, 0),
     idem=_idem_right("x"))

_biv("F", "F0", free=("alpha",),
     edges=lambda v, d, w: (STAR, STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-w.params[0] * h * (v[0] + g)), (v[0] + g,)),
     src=lambda d, w: (STAR, STAR),
     idem=lambda d, w, F: [(F.inv_p, (0, -g)) for g in range(w.p)])

_biv("F", "X", params=("x",), free=("m",),
     edges=lambda v, d, w: (STAR, v[0]),
     act=lambda v, d, w, g, h, F: (
         theta(F, d["x"], -w.params[0] * w.params[1], h)
         * F.omega_pow(-w.params[0] * h * (g + v[0])),
         (v[0] + g + w.params[1] * h,)),
     src=lambda d, w: (STAR, 0),
     idem=lambda d, w, F: [
         (F.inv_p * theta(F, d["x"], -w.params[0] * w.params[1], g),
          (w.params[1] * g, -g))
         for g in range(w.p)])

_biv("F", "F", same=True, params=("x", "y"), free=(),
     edges=lambda v, d, w: (STAR, STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(-g * d["x"] + h * d["y"]), ()),
     src=lambda d, w: (STAR, STAR),
     idem=lambda d, w, F: [
         (F.inv_p * F.inv_p * F.omega_pow(g * d["x"] + h * d["y"]), (g, -h))
         for g in range(w.p) for h in range(w.p)])

_biv("F", "F", same=False, free=("alpha",),
     edges=lambda v, d, w: (STAR, STAR),
     act=lambda v, d, w, g, h, F: (
         F.omega_pow(h * (w.params[1] - w.params[0]) * (v[0] + g)), (v[0] + g,)),
     src=lambda d, w: (STAR, STAR),
     idem=lambda d, w, F: [(F.inv_p, (0, -g)) for g in range(w.p)])


# --------------------------------------------------------------------------
# 2:1 trivalent families (two strings below, one above).
# Key: (ekind(bottom-left), ekind(bottom-right)); the top wall is the unique
# wall product. edges(v, mu, w) -> (bl, br, top); act args (a, b, c) =
# (left region, right region, middle region).
# --------------------------------------------------------------------------

TRI21: dict = {}


def _t21(k1, k2, mu=False, free=(), edges=None, act=None):
    TRI21[(k1, k2)] = {"mu": mu, "free": free, "edges": edges, "act": act}


_t21("T", "T", mu=True, free=("m", "s", "n"),
     edges=lambda v, mu, w: ((v[0], v[1]), (mu - v[1], v[2]), (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c, v[2] + b)))

_t21("T", "L", free=("m", "s", "n"),
     edges=lambda v, mu, w: ((v[0], v[1]), v[2], (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c, v[2] + b)))

_t21("T", "X", free=("m", "s", "n"),
     edges=lambda v, mu, w: (
         (v[0], w.params[1] * v[1] - v[2]), v[2], (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a, v[1] + b, v[2] + w.params[1] * b - c)))

_t21("R", "T", free=("m", "s", "n"),
     edges=lambda v, mu, w: (v[0], (v[1], v[2]), (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c, v[2] + b)))

_t21("R", "L", mu=True, free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * mu), (v[0] + a, v[1] + b)))

_t21("R", "F", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], STAR, (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[1] * (b + v[1])), (v[0] + a, v[1] + b)))

_t21("X", "T", free=("m", "s", "n"),
     edges=lambda v, mu, w: (
         v[0], (v[1], v[2]), (w.params[0] * v[1] + v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a + c * w.params[0], v[1] - c, v[2] + b)))

_t21("F", "L", free=("m", "n"),
     edges=lambda v, mu, w: (STAR, v[1], (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[0] * (a + v[0])), (v[0] + a, v[1] + b)))

_t21("L", "T", mu=True, free=("s", "n"),
     edges=lambda v, mu, w: (v[0], (mu - v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c, v[1] + b)))

_t21("L", "L", free=("s", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c, v[1] + b)))

_t21("L", "X", free=("s", "n"),
     edges=lambda v, mu, w: (w.params[1] * v[0] - v[1], v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + b, v[1] + w.params[1] * b - c)))

_t21("F0", "T", free=("s", "n"),
     edges=lambda v, mu, w: (STAR, (v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c, v[1] + b)))

_t21("F0", "L", mu=True, free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), (v[0] + b,)))

_t21("F0", "F", free=("n",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[1] * (b + v[0])), (v[0] + b,)))

_t21("X", "L", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[1]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a + c * w.params[0], v[1] + b)))

_t21("F", "T", free=("s", "n"),
     edges=lambda v, mu, w: (STAR, (v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-a * w.params[0] * v[0]), (v[0] - c, v[1] + b)))

_t21("T", "R", mu=True, free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), mu - v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c)))

_t21("T", "F0", free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c)))

_t21("T", "F", free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(b * w.params[1] * v[1]), (v[0] + a, v[1] + c)))

_t21("R", "R", free=("m", "s"),
     edges=lambda v, mu, w: (v[0], v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c)))

_t21("R", "F0", mu=True, free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), (v[0] + a,)))

_t21("R", "X", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a, v[1] + w.params[1] * b - c)))

_t21("X", "R", free=("m", "s"),
     edges=lambda v, mu, w: (v[0], v[1], w.params[0] * v[1] + v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a + c * w.params[0], v[1] - c)))

_t21("F", "F0", free=("m",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[0] * (a + v[0])), (v[0] + a,)))

_t21("L", "R", mu=True, free=("s",),
     edges=lambda v, mu, w: (v[0], mu - v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c,)))

_t21("L", "F0", free=("s",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c,)))

_t21("L", "F", free=("s",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(b * w.params[1] * v[0]), (v[0] + c,)))

_t21("F0", "R", free=("s",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c,)))

_t21("F0", "F0", mu=True, free=(),
     edges=lambda v, mu, w: (STAR, STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), ()))

_t21("F0", "X", free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + w.params[1] * b - c,)))

_t21("X", "F0", free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a + c * w.params[0],)))

_t21("F", "R", free=("s",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-a * w.params[0] * v[0]), (v[0] - c,)))

_t21("X", "X", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], w.params[0] * v[1] + v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a + c * w.params[0], v[1] + w.params[1] * b - c)))

_t21("F", "F", free=("m",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * (w.params[0] * (a + v[0]) + b * w.params[1])),
         (v[0] + a + w.inv(w.params[0]) * w.params[1] * b,)))

_t21("X", "F", free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(w.inv(w.params[0]) * b * w.params[1] * (a + v[0])),
         (v[0] + a + c * w.params[0],)))

_t21("F", "X", free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-a * v[0] * w.params[0]),
         (v[0] + w.params[1] * b - c,)))


# --------------------------------------------------------------------------
# 1:2 trivalent families (one string below, two above).
# Key: (ekind(top-left), ekind(top-right)); the bottom wall is the product.
# edges(v, mu, w) -> (tl, tr, bottom); same arg convention (a, b, c).
# --------------------------------------------------------------------------

TRI12: dict = {}


def _t12(k1, k2, mu=False, free=(), edges=None, act=None):
    TRI12[(k1, k2)] = {"mu": mu, "free": free, "edges": edges, "act": act}


_t12("T", "T", mu=True, free=("m", "s", "n"),
     edges=lambda v, mu, w: ((v[0], v[1]), (mu - v[1], v[2]), (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c, v[2] + b)))

_t12("T", "L", free=("m", "s", "n"),
     edges=lambda v, mu, w: ((v[0], v[1]), v[2], (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c, v[2] + b)))

_t12("T", "X", free=("m", "s", "n"),
     edges=lambda v, mu, w: (
         (v[0], v[1]), v[2],
         (v[0], w.inv(w.params[1]) * (v[2] + v[1]))),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a, v[1] - c, v[2] + w.params[1] * b + c)))

_t12("R", "T", free=("m", "s", "n"),
     edges=lambda v, mu, w: (v[0], (v[1], v[2]), (v[0], v[2])),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c, v[2] + b)))

_t12("R", "L", mu=True, free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * mu), (v[0] + a, v[1] + b)))

_t12("R", "F", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], STAR, (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[1] * (b + v[1])), (v[0] + a, v[1] + b)))

_t12("X", "T", free=("m", "s", "n"),
     edges=lambda v, mu, w: (
         v[0], (w.inv(w.params[0]) * (v[1] - v[0]), v[2]), (v[1], v[2])),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a - c * w.params[0], v[1] + a, v[2] + b)))

_t12("F", "L", free=("m", "n"),
     edges=lambda v, mu, w: (STAR, v[1], (v[0], v[1])),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[0] * (a + v[0])), (v[0] + a, v[1] + b)))

_t12("L", "T", mu=True, free=("s", "n"),
     edges=lambda v, mu, w: (v[0], (mu - v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c, v[1] + b)))

_t12("L", "L", free=("s", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c, v[1] + b)))

_t12("L", "X", free=("s", "n"),
     edges=lambda v, mu, w: (
         v[0], v[1], w.inv(w.params[1]) * (v[1] + v[0])),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] - c, v[1] + w.params[1] * b + c)))

_t12("F0", "T", free=("s", "n"),
     edges=lambda v, mu, w: (STAR, (v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c, v[1] + b)))

_t12("F0", "L", mu=True, free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), (v[0] + b,)))

_t12("F0", "F", free=("n",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[1] * (b + v[0])), (v[0] + b,)))

_t12("X", "L", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[1]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a - c * w.params[0], v[1] + b)))

_t12("F", "T", free=("s", "n"),
     edges=lambda v, mu, w: (STAR, (v[0], v[1]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(a * w.params[0] * v[0]), (v[0] + c, v[1] + b)))

_t12("T", "R", mu=True, free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), mu - v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c)))

_t12("T", "F0", free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] - c)))

_t12("T", "F", free=("m", "s"),
     edges=lambda v, mu, w: ((v[0], v[1]), STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-b * w.params[1] * v[1]), (v[0] + a, v[1] - c)))

_t12("R", "R", free=("m", "s"),
     edges=lambda v, mu, w: (v[0], v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + a, v[1] + c)))

_t12("R", "F0", mu=True, free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), (v[0] + a,)))

_t12("R", "X", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a, v[1] + w.params[1] * b + c)))

_t12("X", "R", free=("m", "s"),
     edges=lambda v, mu, w: (
         v[0], w.inv(w.params[0]) * (v[1] - v[0]), v[1]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a - c * w.params[0], v[1] + a)))

_t12("F", "F0", free=("m",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * w.params[0] * (a + v[0])), (v[0] + a,)))

_t12("L", "R", mu=True, free=("s",),
     edges=lambda v, mu, w: (v[0], mu - v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c,)))

_t12("L", "F0", free=("s",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] - c,)))

_t12("L", "F", free=("s",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-b * w.params[1] * v[0]), (v[0] - c,)))

_t12("F0", "R", free=("s",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (F.one, (v[0] + c,)))

_t12("F0", "F0", mu=True, free=(),
     edges=lambda v, mu, w: (STAR, STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (F.omega_pow(-c * mu), ()))

_t12("F0", "X", free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + w.params[1] * b + c,)))

_t12("X", "F0", free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a - c * w.params[0],)))

_t12("F", "R", free=("s",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(a * w.params[0] * v[0]), (v[0] + c,)))

_t12("X", "X", free=("m", "n"),
     edges=lambda v, mu, w: (v[0], v[1], w.params[0] * v[1] + v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.one, (v[0] + a - c * w.params[0], v[1] + w.params[1] * b + c)))

_t12("F", "F", free=("m",),
     edges=lambda v, mu, w: (STAR, STAR, v[0]),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-c * (w.params[0] * (a + v[0]) + b * w.params[1])),
         (v[0] + a + w.inv(w.params[0]) * w.params[1] * b,)))

_t12("X", "F", free=("m",),
     edges=lambda v, mu, w: (v[0], STAR, STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(-w.inv(w.params[0]) * b * w.params[1] * (a + v[0])),
         (v[0] + a - c * w.params[0],)))

_t12("F", "X", free=("n",),
     edges=lambda v, mu, w: (STAR, v[0], STAR),
     act=lambda v, mu, w, a, b, c, F: (
         F.omega_pow(a * v[0] * w.params[0]),
         (v[0] + w.params[1] * b + c,)))


# --------------------------------------------------------------------------
# Representation instances
# --------------------------------------------------------------------------


def _biv_key(lower: BimoduleLabel, upper: BimoduleLabel):
    kl, ku = lower.ekind(), upper.ekind()
    same = None
    if (kl, ku) in (("X", "X"), ("F", "F")):
        same = lower.param == upper.param
    return (kl, ku, same)


class BivalentRep:
    """The irreducible 2-string representation of one defect label."""

    def __init__(self, defect):
        self.defect = defect
        self.lower = defect.lower
        self.upper = defect.upper
        self.p = defect.lower.p
        self.field = None  # bound lazily by act callers
        self.entry = BIVALENT[_biv_key(self.lower, self.upper)]
        self.params = dict(zip(self.entry["params"], defect.params))
        self.walls = _Walls(self.p, self.lower, self.upper)
        self.slots = ("lower", "upper")
        self.regions = ("left", "right")
        self.free_names = self.entry["free"]
        self._basis = None
        self._labels: dict = {}

    def wall_of_slot(self, slot: str) -> BimoduleLabel:
        return self.lower if slot == "lower" else self.upper

    def basis(self):
        if self._basis is None:
            p = self.p
            vecs = [()]
            for _ in range(len(self.free_names)):
                vecs = [v + (x,) for v in vecs for x in range(p)]
            self._basis = vecs
        return self._basis

    def edge_labels(self, vec):
        cached = self._labels.get(vec)
        if cached is None:
            lo, up = self.entry["edges"](vec, self.params, self.walls)
            cached = {"lower": _norm(self.p, lo), "upper": _norm(self.p, up)}
            self._labels[vec] = cached
        return cached

    def act(self, vec, args, field):
        g = args.get("left", 0)
        h = args.get("right", 0)
        phase, new = self.entry["act"](vec, self.params, self.walls, g, h, field)
        return phase, tuple(x % self.p for x in new)


class TrivalentRep:
    """A tabulated trivalent vertex representation.

    direction 'tri21': first/second are the lower-left/lower-right walls and
    the product wall sits on top; 'tri12': first/second on top, product below.
    """

    def __init__(self, direction: str, first: BimoduleLabel,
                 second: BimoduleLabel, corner: int | None = None):
        assert direction in ("tri21", "tri12")
        self.direction = direction
        self.first = first
        self.second = second
        self.p = first.p
        self.third = wall_product(first, second)
        table = TRI21 if direction == "tri21" else TRI12
        self.entry = table[(first.ekind(), second.ekind())]
        if self.entry["mu"]:
            if corner is None:
                raise ValueError(
                    f"{direction} vertex {first.name()}x{second.name()} needs a corner parameter")
            corner %= self.p
        elif corner not in (None, 0):
            raise ValueError(
                f"{direction} vertex {first.name()}x{second.name()} takes no corner parameter")
        self.corner = corner if self.entry["mu"] else None
        self.walls = _Walls(self.p, first, second, self.third)
        if direction == "tri21":
            self.slots = ("bl", "br", "top")
            self._pair_slots = ("bl", "br", "top")
        else:
            self.slots = ("bottom", "tl", "tr")
            self._pair_slots = ("tl", "tr", "bottom")
        self.regions = ("left", "right", "mid")
        self.free_names = self.entry["free"]
        self._basis = None
        self._labels: dict = {}

    @property
    def has_corner(self) -> bool:
        return self.entry["mu"]

    def wall_of_slot(self, slot: str) -> BimoduleLabel:
        if slot == self._pair_slots[0]:
            return self.first
        if slot == self._pair_slots[1]:
            return self.second
        return self.third

    def basis(self):
        if self._basis is None:
            p = self.p
            vecs = [()]
            for _ in range(len(self.free_names)):
                vecs = [v + (x,) for v in vecs for x in range(p)]
            self._basis = vecs
        return self._basis

    def edge_labels(self, vec):
        cached = self._labels.get(vec)
        if cached is None:
            e1, e2, e3 = self.entry["edges"](vec, self.corner, self.walls)
            cached = {
                self._pair_slots[0]: _norm(self.p, e1),
                self._pair_slots[1]: _norm(self.p, e2),
                self._pair_slots[2]: _norm(self.p, e3),
            }
            self._labels[vec] = cached
        return cached

    def act(self, vec, args, field):
        a = args.get("left", 0)
        b = args.get("right", 0)
        c = args.get("mid", 0)
        phase, new = self.entry["act"](vec, self.corner, self.walls, a, b, c, field)
        return phase, tuple(x % self.p for x in new)


def bivalent_action(lower: BimoduleLabel, upper: BimoduleLabel, defect, vec,
                    g: int, h: int, field: CycField):
    """Action of the (g,h) annular generator on a basis vector."""
    rep = BivalentRep(defect)
    if lower != defect.lower or upper != defect.upper:
        raise ValueError("defect does not live on the given wall pair")
    return rep.act(vec, {"left": g, "right": h}, field)


def trivalent_action_21(top, bottom_left, bottom_right, rep: TrivalentRep, vec,
                        a: int, b: int, c: int, field: CycField):
    if rep.direction != "tri21" or rep.third != top or (
            rep.first, rep.second) != (bottom_left, bottom_right):
        raise ValueError("representation does not match the wall triple")
    return rep.act(vec, {"left": a, "right": b, "mid": c}, field)


def trivalent_action_12(bottom, top_left, top_right, rep: TrivalentRep, vec,
                        a: int, b: int, c: int, field: CycField):
    if rep.direction != "tri12" or rep.third != bottom or (
            rep.first, rep.second) != (top_left, top_right):
        raise ValueError("representation does not match the wall triple")
    return rep.act(vec, {"left": a, "right": b, "mid": c}, field)


def composition_phase_bivalent(lower, upper, first, second, field: CycField) -> Cyc:
    """Category composition phase: acting by `first`=(g,h) then `second`=(g',h')
    equals this phase times the (g+g', h+h') generator. Depends only on the
    walls' center associators."""
    (_, h), (g2, _) = first, second
    return field.omega_pow((lower.q - upper.q) * h * g2)


def composition_phase_trivalent(direction, rep: TrivalentRep, first, second,
                                field: CycField) -> Cyc:
    (_, b, c), (a2, b2, _) = first, second
    q1, q2 = rep.first.q, rep.second.q
    q3 = rep.third.q
    if direction == "tri21":
        return field.omega_pow(q1 * c * a2 + q2 * c * b2 - q3 * b * a2)
    return field.omega_pow(q1 * c * a2 + q2 * c * b2 + q3 * b * a2)
