"""Correction terms of lens spaces and the torsion sequence they induce."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .alexander import Verdict, phi_context


_INT64_SAFE = 1_000_000


@lru_cache(maxsize=8192)
def d_numerators(p: int, q: int) -> np.ndarray:
    """Numerators of ``d(L(p, q), i)`` over the common denominator ``4pq``.

    Uses ``d(p,q,i) = ((2i+1-p-q)^2 - pq)/4pq - d(q, [p]_q, [i]_q)``.  Bringing
    the inner term (denominator ``4qr``) over ``4pqr`` and dividing by ``r``
    is exact, which is the statement that every denominator divides ``4pq``.
    """
    if p == 1:
        return np.zeros(1, dtype=np.int64)
    idx = np.arange(p, dtype=np.int64)
    # int64 holds r * p^2 comfortably below this bound
    i = idx if p < _INT64_SAFE else idx.astype(object)
    head = (2 * i + 1 - p - q) ** 2 - p * q
    if q == 1:
        return head
    r = p % q
    num = head * r - p * d_numerators(q, r)[idx % q]
    if np.any(num % r):
        raise ArithmeticError(f"denominator of d(L({p},{q})) does not divide 4pq")
    out = num // r
    out.setflags(write=False)
    return out


def d_lens(p: int, q: int, i: int) -> Fraction:
    """Correction term ``d(L(p, q), i)``; ``L(1, 0)`` is the base case with ``d = 0``."""
    if p < 1 or (p > 1 and not 0 < q < p) or gcd(p, q) != 1:
        raise ValueError(f"L({p}, {q}) is not a lens space")
    if not 0 <= i < p:
        raise ValueError("spin-c label must lie in [0, p)")
    if p == 1:
        return Fraction(0)
    return Fraction(int(d_numerators(p, q)[i]), 4 * p * q)


def d_lens_q1_closed(p: int, i: int) -> Fraction:
    return Fraction((2 * i - p) ** 2 - p, 4 * p)


@dataclass(frozen=True)
class TorsionSequence:
    p: int
    k: int
    c: int
    values: tuple[tuple[int, Fraction], ...]

    def __getitem__(self, i: int) -> Fraction:
        if 2 * abs(i) > self.p:
            return Fraction(0)
        return self.values[i + self.p // 2][1]

    def failures(self) -> list[int]:
        return [i for i, t in self.values if t < 0 or t.denominator != 1]


def _torsion_numerators(p: int, k: int) -> tuple[np.ndarray, int, int]:
    ctx = phi_context(p, k)
    q1 = ctx.q
    half = p // 2
    i = np.arange(-half, half + 1, dtype=np.int64)
    unit = d_numerators(p, 1)[i % p] * q1
    big = d_numerators(p, q1)[(k * i + ctx.c) % p]
    return unit - big, 4 * p * q1, ctx.c


def torsion_sequence(p: int, k: int) -> TorsionSequence:
    """``t_i`` for ``2|i| <= p``.

    The correction terms are paired as
    ``t_i = d(L(p,1), [i]_p) - d(L(p, q_1), [k i + c]_p)``; this orientation
    reproduces ``t_11 = -2`` at ``(22, 5)`` and keeps realized data nonnegative.
    """
    k %= p
    if p == 1:
        return TorsionSequence(1, 0, 0, ((0, Fraction(0)),))
    nums, den, c = _torsion_numerators(p, k)
    half = p // 2
    vals = tuple((i - half, Fraction(int(v), den)) for i, v in enumerate(nums))
    return TorsionSequence(p, k, c, vals)


def check_pos(p: int, k: int) -> Verdict:
    k %= p
    if p == 1:
        return Verdict(True)
    nums, den, _ = _torsion_numerators(p, k)
    bad = np.flatnonzero((nums < 0) | (nums % den != 0))
    if len(bad):
        idx = int(bad[0])
        return Verdict(False, f"t_{idx - p // 2} = {Fraction(int(nums[idx]), den)}")
    return Verdict(True)


__all__ = [
    "TorsionSequence",
    "check_pos",
    "d_lens",
    "d_lens_q1_closed",
    "d_numerators",
    "torsion_sequence",
]
