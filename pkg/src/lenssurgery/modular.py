"""Modular reductions, inverses and the dual class of a surgery coefficient."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def mod_reduce(x: int, p: int) -> int:
    """Reduce ``x`` into ``[0, p)``."""
    return x % p


def mod_reduce_sym(x: int, p: int) -> int:
    """Reduce ``x`` into the symmetric window ``(-p/2, p/2]``.

    For even ``p`` this is ``-p/2 + 1 .. p/2``; for odd ``p`` it is
    ``-(p-1)/2 .. (p-1)/2`` so that every residue has exactly one representative.
    """
    r = x % p
    return r - p if 2 * r > p else r


def window(p: int) -> range:
    """Exponents of the symmetric window, in increasing order."""
    return range(-((p - 1) // 2), p // 2 + 1)


def mod_inverse(k: int, p: int) -> int:
    """Inverse of ``k`` modulo ``p`` in ``(0, p)``; ``p == 1`` gives 1 by convention."""
    if p == 1:
        return 1
    if gcd(k, p) != 1:
        raise ValueError(f"{k} is not invertible modulo {p}")
    return pow(k, -1, p)


@dataclass(frozen=True)
class DualClass:
    """The residues ``{k, -k, k^-1, -k^-1}`` mod ``p``.

    ``reps`` is the sorted multiset of the four reductions, ``min_rep`` its
    smallest positive element.
    """

    p: int
    reps: tuple[int, int, int, int]

    @property
    def min_rep(self) -> int:
        return self.reps[0]

    @property
    def key(self) -> tuple[int, int]:
        return (self.p, self.min_rep)

    def __contains__(self, r: int) -> bool:
        return r % self.p in self.reps

    def distinct(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.reps)))


def dual_class(p: int, k: int) -> DualClass:
    if p < 2:
        raise ValueError("modulus must be at least 2")
    k %= p
    if k == 0 or gcd(k, p) != 1:
        raise ValueError(f"({p}, {k}) is not a coprime pair")
    kinv = mod_inverse(k, p)
    reps = tuple(sorted((k, (-k) % p, kinv, (-kinv) % p)))
    return DualClass(p, reps)  # type: ignore[arg-type]


def canonical_k(p: int, k: int) -> int:
    """Minimal representative of the dual class of ``k``."""
    return dual_class(p, k).min_rep
