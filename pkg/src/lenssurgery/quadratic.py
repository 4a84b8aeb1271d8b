"""Associated quadratic relation of initial data and its tau-decomposition."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .alexander import Verdict
from .modular import mod_inverse, mod_reduce_sym

SIGN_PAIRS = ((1, 1), (1, -1), (-1, 1), (-1, -1))


class BranchUnavailable(ValueError):
    """Raised when ``eta = [n]_a`` has no inverse because ``gcd(a, n) > 1``."""


class UnknotBranch(ValueError):
    """``k1`` in ``{0, 1}``: the relation degenerates to ``a = 0``."""


@dataclass(frozen=True)
class QuadraticRelation:
    a: int
    eps1: int
    eps2: int
    n: int

    def value(self, k1: int) -> int:
        return self.a * k1 * k1 + self.eps1 * k1 + self.eps2

    def holds(self, p: int, k1: int) -> bool:
        return self.value(k1) == self.n * p

    @property
    def signs(self) -> tuple[int, int]:
        return (self.eps1, self.eps2)

    @property
    def branch(self) -> str:
        """``"VII-VIII"`` when ``a == 1``, otherwise ``"general"``."""
        return "VII-VIII" if self.a == 1 else "general"

    def __str__(self) -> str:
        sign = lambda e: "+" if e > 0 else "-"  # noqa: E731
        return f"{self.a}k1^2 {sign(self.eps1)} k1 {sign(self.eps2)} 1 = 0 (n={self.n})"


@dataclass(frozen=True)
class TauDecomposition:
    p: int
    k1: int
    relation: QuadraticRelation
    X: int
    gamma: int
    gamma_prime: int
    tau: int
    D: int
    k2: int
    k1_prime: int
    q1: int
    q2: int

    @property
    def a(self) -> int:
        return self.relation.a

    @property
    def n(self) -> int:
        return self.relation.n

    @property
    def eps1(self) -> int:
        return self.relation.eps1

    @property
    def eps2(self) -> int:
        return self.relation.eps2

    @property
    def eta(self) -> int:
        return self.n % self.a

    @property
    def alpha(self) -> Fraction:
        return self.gamma_prime + self.eps1 * self.eps2 + Fraction(self.a, abs(self.q2))

    @property
    def d(self) -> int:
        return gcd(self.a, self.n)

    @property
    def a1(self) -> int:
        return self.a // self.d

    @property
    def eta1(self) -> int:
        return self.eta // self.d

    def p_from_tau(self) -> Fraction:
        a, n, t, g = self.a, self.n, self.tau, self.gamma
        return a * n * t * t + g * t + Fraction(g * g - self.D, 4 * a * n)


def reduced_k2(p: int, k1: int) -> int:
    """The smaller of ``k1^-1`` and ``p - k1^-1``."""
    inv = mod_inverse(k1, p)
    return min(inv, p - inv)


def _q2(p: int, k1: int) -> int:
    k2 = reduced_k2(p, k1)
    return mod_reduce_sym(k2 * k2, p)


def associated_relation(p: int, k1: int) -> QuadraticRelation:
    """``a k1^2 + eps1 k1 + eps2 = n p`` with ``a = ||q2| - k2|``.

    ``k1`` is expected to be the minimum of its dual class.
    """
    k1 %= p
    if k1 in (0, 1) or p - k1 == 1:
        raise UnknotBranch(f"({p}, {k1}) lies on the unknot branch")
    k2 = reduced_k2(p, k1)
    a = abs(abs(_q2(p, k1)) - k2)
    for e1, e2 in SIGN_PAIRS:
        value = a * k1 * k1 + e1 * k1 + e2
        if value % p == 0:
            return QuadraticRelation(a, e1, e2, value // p)
    raise ArithmeticError(f"no sign pair solves the relation for ({p}, {k1}), a={a}")


def all_relations(p: int, k1: int, a_max: int) -> list[QuadraticRelation]:
    """Every ``(a, eps1, eps2)`` with ``0 <= a <= a_max`` solving the congruence."""
    out = []
    for a in range(a_max + 1):
        for e1, e2 in SIGN_PAIRS:
            value = a * k1 * k1 + e1 * k1 + e2
            if value % p == 0:
                out.append(QuadraticRelation(a, e1, e2, value // p))
    return out


def is_minimal(p: int, k1: int, rel: QuadraticRelation) -> bool:
    return all(r.a >= rel.a for r in all_relations(p, k1, rel.a) if r.a > 0)


def tau_decompose(p: int, k1: int, rel: QuadraticRelation | None = None) -> TauDecomposition:
    k1 %= p
    rel = rel if rel is not None else associated_relation(p, k1)
    a, e1, e2, n = rel.a, rel.eps1, rel.eps2, rel.n
    if a <= 0 or n <= 0 or not rel.holds(p, k1):
        raise ValueError(f"{rel} is not a usable relation for ({p}, {k1})")
    disc = 1 - 4 * a * (e2 - n * p)
    X = isqrt(disc)
    assert X * X == disc and X == 2 * a * k1 + e1
    tau, gamma = divmod(X, 2 * a * n)
    gamma_prime, rem = divmod(gamma - e1, 2 * a)
    assert rem == 0
    k2 = a * k1 + e1
    dec = TauDecomposition(
        p=p,
        k1=k1,
        relation=rel,
        X=X,
        gamma=gamma,
        gamma_prime=gamma_prime,
        tau=tau,
        D=1 - 4 * a * e2,
        k2=k2,
        k1_prime=k2 if e2 == -1 else p - k2,
        q1=k1 * k1 % p,
        q2=_q2(p, k1),
    )
    assert k1 == n * tau + gamma_prime
    assert dec.p_from_tau() == p
    return dec


def is_stable(dec: TauDecomposition) -> bool:
    return dec.tau >= 2


def n_sequences(dec: TauDecomposition, i: int) -> tuple[int, int]:
    """``(n_i, n'_i)`` with ``a n'_i = n n_i + eps2 i``.

    ``i = 0`` and ``i = a`` follow the boundary conventions ``n_0 = 0`` and
    ``n_a = a``.
    """
    a, n, e2 = dec.a, dec.n, dec.eps2
    if gcd(a, n) != 1:
        raise BranchUnavailable(f"gcd(a, n) = {gcd(a, n)}")
    if not 0 <= i <= a:
        raise ValueError(f"index {i} outside 0..{a}")
    if i == 0:
        ni = 0
    elif i == a:
        ni = a
    else:
        ni = (-e2 * mod_inverse(n % a, a) * i) % a
    num = n * ni + e2 * i
    assert num % a == 0
    return ni, num // a


def n_prime(dec: TauDecomposition) -> int:
    """``n'`` defined by ``a n' = n n_{a-1} - eps2``."""
    n_last, _ = n_sequences(dec, dec.a - 1)
    num = dec.n * n_last - dec.eps2
    assert num % dec.a == 0
    return num // dec.a


def integrality_check(dec: TauDecomposition) -> Verdict:
    np_ = n_prime(dec)
    g = dec.gamma_prime
    value = g * g - dec.eps1 * dec.eps2 * np_ * g - np_
    if value % dec.n:
        return Verdict(False, f"residue {value % dec.n} mod {dec.n}")
    return Verdict(True)


def underline_involution(p: int, k1: int, dec: TauDecomposition | None = None) -> tuple[int, int]:
    dec = dec if dec is not None else tau_decompose(p, k1)
    new_p = p - (dec.gamma - dec.a * dec.n) * (2 * dec.tau + 1)
    new_k = k1 + dec.n - 2 * dec.gamma_prime
    return new_p, new_k


__all__ = [
    "BranchUnavailable",
    "QuadraticRelation",
    "TauDecomposition",
    "UnknotBranch",
    "all_relations",
    "associated_relation",
    "integrality_check",
    "is_minimal",
    "is_stable",
    "n_prime",
    "n_sequences",
    "reduced_k2",
    "tau_decompose",
    "underline_involution",
]
