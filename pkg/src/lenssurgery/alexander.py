"""The symmetric Laurent polynomial forced on a lens space surgery.

Two independent constructions are provided.  :func:`delta_via_torus` expands
the Alexander polynomial of a torus knot ``T(h, g)`` with ``hg = +-1 (p)`` and
folds it modulo ``t^p - 1``; :func:`delta_via_phi` evaluates the closed
coefficient formula ``a_i = -m + Phi(k i + c)`` directly.  Both end with the
even-``p`` split of the middle coefficient.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Mapping, NamedTuple

import numpy as np

from .modular import mod_inverse


class Verdict(NamedTuple):
    passed: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.passed


class NoTorusRepresentative(ValueError):
    """None of the four ``(h, g)`` candidates is a coprime pair."""


@dataclass(frozen=True)
class SymmetricPoly:
    """Coefficient table of ``Delta_{p,k}`` on the symmetric window.

    ``terms`` holds the nonzero coefficients as sorted ``(exponent, value)``
    pairs.  When ``p`` is even the middle coefficient is split, so exponents
    ``-p/2`` and ``p/2`` may both carry a half-integer.
    """

    p: int
    terms: tuple[tuple[int, Fraction], ...]

    @classmethod
    def from_mapping(cls, p: int, coeffs: Mapping[int, object]) -> "SymmetricPoly":
        terms = tuple(
            sorted((int(e), Fraction(v)) for e, v in coeffs.items() if Fraction(v) != 0)
        )
        return cls(p, terms)

    @property
    def coeffs(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def __getitem__(self, exponent: int) -> Fraction:
        return self.coeffs.get(exponent, Fraction(0))

    @property
    def genus(self) -> int:
        return max((abs(e) for e, _ in self.terms), default=0)

    def at_one(self) -> Fraction:
        return sum((v for _, v in self.terms), Fraction(0))

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for _, v in self.terms)

    def cyclic_table(self) -> tuple[int, ...]:
        """Values summed per residue mod ``p``; undoes the even-``p`` split."""
        acc = [Fraction(0)] * self.p
        for e, v in self.terms:
            acc[e % self.p] += v
        if any(v.denominator != 1 for v in acc):
            raise ValueError("table does not lift to integer residues")
        return tuple(int(v) for v in acc)

    def digest_source(self) -> str:
        return ";".join(f"{e}:{v}" for e, v in self.terms)

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "coeffs": [[e, v.numerator, v.denominator] for e, v in self.terms],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "SymmetricPoly":
        obj = json.loads(text)
        return cls.from_mapping(obj["p"], {e: Fraction(n, d) for e, n, d in obj["coeffs"]})


@dataclass(frozen=True)
class PhiContext:
    p: int
    k: int
    k_inv: int
    m: int
    q: int
    c: int


def phi_context(p: int, k: int) -> PhiContext:
    k %= p
    k_inv = mod_inverse(k, p)
    m, rem = divmod(k * k_inv - 1, p)
    assert rem == 0
    return PhiContext(p, k, k_inv, m, k * k % p, (k + 1 - p) * (k - 1) // 2)


def phi(ctx: PhiContext, l: int) -> int:
    """Count ``j`` in ``1..k'`` with ``[q j - l]_p`` in ``1..k``."""
    p, k = ctx.p, ctx.k
    return sum(1 for j in range(1, ctx.k_inv + 1) if 1 <= (ctx.q * j - l) % p <= k)


def _phi_table(ctx: PhiContext) -> np.ndarray:
    """``Phi(l)`` for every residue ``l``, by prefix sums over ``[q j]_p``."""
    p = ctx.p
    js = np.arange(1, ctx.k_inv + 1, dtype=np.int64)
    counts = np.bincount((ctx.q * js) % p, minlength=p)
    prefix = np.concatenate(([0], np.cumsum(np.concatenate((counts, counts)))))
    ls = np.arange(p)
    return prefix[ls + ctx.k + 1] - prefix[ls + 1]


def folded_phi(p: int, k: int) -> np.ndarray:
    """Unsplit coefficients indexed by residue: ``out[i % p] = -m + Phi(k i + c)``."""
    if p == 1:
        return np.ones(1, dtype=np.int64)
    ctx = phi_context(p, k)
    table = _phi_table(ctx)
    exps = np.arange(p, dtype=np.int64)
    return -ctx.m + table[(ctx.k * exps + ctx.c) % p]


def _split(p: int, folded: Mapping[int, int] | np.ndarray) -> SymmetricPoly:
    """Apply the even-``p`` split to a residue-indexed table."""
    exps = np.arange(-((p - 1) // 2), p // 2 + 1)
    if isinstance(folded, np.ndarray):
        vals = folded[exps % p]
    else:
        vals = np.array([int(folded[e % p]) for e in exps], dtype=np.int64)
    nz = np.flatnonzero(vals)
    terms = [(int(exps[i]), Fraction(int(vals[i]))) for i in nz]
    if p % 2 == 0 and terms and terms[-1][0] == p // 2:
        half = terms[-1][1] / 2
        terms = [(-(p // 2), half)] + terms[:-1] + [(p // 2, half)]
    return SymmetricPoly(p, tuple(terms))


def delta_via_phi(p: int, k: int) -> SymmetricPoly:
    return _split(p, folded_phi(p, k))


def _torus_dense(h: int, g: int) -> np.ndarray:
    """Unsymmetrized coefficients of ``(t^{hg}-1)(t-1)/((t^g-1)(t^h-1))``."""
    n = h * g
    s = np.zeros(n + 2, dtype=np.int64)
    s[np.arange(h) * g] = 1
    num = np.zeros_like(s)
    num[1:] += s[:-1]
    num -= s
    # exact division by t^h - 1:  q_i = q_{i-h} - num_i
    pad = (-len(num)) % h
    blocks = np.concatenate((num, np.zeros(pad, dtype=np.int64))).reshape(-1, h)
    quot = (-np.cumsum(blocks, axis=0)).ravel()[: len(num)]
    deg = (h - 1) * (g - 1)
    if quot[deg + 1 :].any():
        raise ArithmeticError("division left a remainder")
    return quot[: deg + 1]


def torus_knot_poly(h: int, g: int) -> dict[int, int]:
    """Symmetrized Alexander polynomial of ``T(h, g)`` as ``{exponent: coeff}``."""
    if h < 1 or g < 1 or gcd(h, g) != 1:
        raise ValueError(f"T({h}, {g}) needs coprime positive parameters")
    dense = _torus_dense(h, g)
    shift = (len(dense) - 1) // 2
    return {int(e) - shift: int(v) for e, v in enumerate(dense) if v}


def reduce_mod_tp(poly: Mapping[int, int], p: int) -> SymmetricPoly:
    """Fold exponents into the window by multiples of ``p``, then split."""
    folded: dict[int, int] = {}
    for e, v in poly.items():
        r = e % p
        folded[r] = folded.get(r, 0) + v
    return _split(p, _DefaultZero(folded))


class _DefaultZero(dict):
    def __missing__(self, key):
        return 0


def torus_candidates(p: int, k: int) -> list[tuple[int, int]]:
    """The four ``(h, g)`` candidates in selection order."""
    k %= p
    kinv = mod_inverse(k, p)
    return [(k, kinv), (k, p - kinv), (p - k, kinv), (p - k, p - kinv)]


def torus_representative(p: int, k: int) -> tuple[int, int]:
    for h, g in torus_candidates(p, k):
        if gcd(h, g) == 1:
            return (h, g)
    raise NoTorusRepresentative(f"no coprime torus representative for ({p}, {k})")


def folded_torus(p: int, h: int, g: int) -> np.ndarray:
    dense = _torus_dense(h, g)
    shift = (len(dense) - 1) // 2
    residues = (np.arange(len(dense), dtype=np.int64) - shift) % p
    return np.bincount(residues, weights=dense, minlength=p).astype(np.int64)


def delta_via_torus(p: int, k: int, hg: tuple[int, int] | None = None) -> SymmetricPoly:
    h, g = hg if hg is not None else torus_representative(p, k)
    if gcd(h, g) != 1:
        raise ValueError(f"T({h}, {g}) needs coprime parameters")
    return _split(p, folded_torus(p, h, g))


def delta(p: int, k: int) -> SymmetricPoly:
    """``Delta_{p,k}``; the coefficient formula is the default route."""
    return delta_via_phi(p, k)


def genus(p: int, k: int) -> int:
    return delta_via_phi(p, k).genus


def check_alternating(poly: SymmetricPoly) -> Verdict:
    """Test for the form ``(-1)^m + sum_j (-1)^(m-j) (t^{n_j} + t^{-n_j})``."""
    if not poly.is_integral():
        return Verdict(False, "non-integral")
    coeffs = poly.coeffs
    for e, v in coeffs.items():
        if v not in (-1, 1):
            return Verdict(False, f"coefficient {v} at exponent {e}")
        if coeffs.get(-e, 0) != v:
            return Verdict(False, f"asymmetric at exponent {e}")
    support = sorted(e for e in coeffs if e > 0)
    m = len(support)
    if coeffs.get(0, 0) != (-1) ** m:
        return Verdict(False, "constant term has the wrong sign")
    for j, e in enumerate(support, start=1):
        if coeffs[e] != (-1) ** (m - j):
            return Verdict(False, f"signs do not alternate at exponent {e}")
    assert poly.at_one() == 1
    return Verdict(True)


def is_alternating_table(folded: np.ndarray, p: int) -> bool:
    """Fast alternating test on a residue-indexed unsplit table."""
    folded = np.asarray(folded)
    half = p // 2
    seg = folded[: half + 1].astype(np.int64)
    if p % 2 == 0:
        if seg[half] % 2:
            return False
        seg[half] //= 2
    nz = np.flatnonzero(seg)
    if len(nz) == 0 or nz[0] != 0:
        return False
    vals = seg[nz]
    if np.any(np.abs(vals) != 1) or vals[-1] != 1 or np.any(vals[1:] * vals[:-1] != -1):
        return False
    return _symmetric(folded, p)


def _symmetric(folded: np.ndarray, p: int) -> bool:
    return bool(np.array_equal(folded, folded[(-np.arange(p)) % p]))


def check_ky_form(p: int, k: int, poly: SymmetricPoly) -> Verdict:
    """Compare ``poly`` with the folded torus polynomial for every coprime candidate."""
    found = False
    for h, g in torus_candidates(p, k):
        if gcd(h, g) != 1:
            continue
        found = True
        if delta_via_torus(p, k, (h, g)) == poly:
            return Verdict(True)
    if not found:
        return Verdict(False, "no-torus-representative")
    return Verdict(False, "differs from the torus reduction")


__all__ = [
    "NoTorusRepresentative",
    "PhiContext",
    "SymmetricPoly",
    "Verdict",
    "check_alternating",
    "check_ky_form",
    "delta",
    "delta_via_phi",
    "delta_via_torus",
    "folded_phi",
    "folded_torus",
    "genus",
    "is_alternating_table",
    "phi",
    "phi_context",
    "reduce_mod_tp",
    "torus_candidates",
    "torus_knot_poly",
    "torus_representative",
]
