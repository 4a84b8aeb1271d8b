"""Membership tests for the known lens space surgery families.

Two lists are covered: the doubly primitive knots in the 3-sphere (types I
through X) and their analogues in the Poincare homology sphere (types A1
through K).  Every test runs over all four representatives of the dual
class, so the verdict is a class invariant.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from importlib import resources
from math import gcd, isqrt
from typing import Iterable, Iterator

from .modular import canonical_k, dual_class
from .quadratic import QuadraticRelation, associated_relation, tau_decompose


@dataclass(frozen=True)
class FamilyMatch:
    family: str
    parameter: int | None
    representative: int


@dataclass(frozen=True)
class QuadraticFamily:
    """``p = c2 J^2 + c1 J + c0`` and ``k = k1 J + k0``."""

    tag: str
    p_coeffs: tuple[int, int, int]
    k_coeffs: tuple[int, int]

    def p_at(self, J: int) -> int:
        c2, c1, c0 = self.p_coeffs
        return c2 * J * J + c1 * J + c0

    def k_at(self, J: int) -> int:
        k1, k0 = self.k_coeffs
        return k1 * J + k0

    def member(self, J: int) -> tuple[int, int] | None:
        """``(p, k mod p)`` or ``None`` when the pair is degenerate."""
        p = self.p_at(J)
        if p < 2:
            return None
        k = self.k_at(J) % p
        if k == 0 or gcd(p, k) != 1:
            return None
        return p, k

    def solve(self, p: int) -> list[int | None]:
        c2, c1, c0 = self.p_coeffs
        if c2 == 0 and c1 == 0:
            return [None] if p == c0 else []
        disc = c1 * c1 - 4 * c2 * (c0 - p)
        if disc < 0:
            return []
        s = isqrt(disc)
        if s * s != disc:
            return []
        roots = {(-c1 + t) // (2 * c2) for t in (s, -s) if (-c1 + t) % (2 * c2) == 0}
        return sorted(roots)


SPORADIC_BERGE = {
    "IX": QuadraticFamily("IX", (22, 9, 1), (11, 2)),
    "X": QuadraticFamily("X", (22, 13, 2), (11, 3)),
}

POINCARE_FAMILIES = {
    f.tag: f
    for f in (
        QuadraticFamily("A1", (14, 7, 1), (7, 2)),
        QuadraticFamily("A2", (20, 15, 3), (5, 2)),
        QuadraticFamily("B", (30, 9, 1), (6, 1)),
        QuadraticFamily("C1", (42, 23, 3), (7, 2)),
        QuadraticFamily("C2", (42, 47, 13), (7, 4)),
        QuadraticFamily("D1", (52, 15, 1), (13, 2)),
        QuadraticFamily("D2", (52, 63, 19), (13, 8)),
        QuadraticFamily("E1", (54, 15, 1), (27, 4)),
        QuadraticFamily("E2", (54, 39, 7), (27, 10)),
        QuadraticFamily("F1", (69, 17, 1), (23, 3)),
        QuadraticFamily("F2", (69, 29, 3), (23, 5)),
        QuadraticFamily("G1", (85, 19, 1), (17, 2)),
        QuadraticFamily("G2", (85, 49, 7), (17, 5)),
        QuadraticFamily("H1", (99, 35, 3), (11, 2)),
        QuadraticFamily("H2", (99, 53, 7), (11, 3)),
        QuadraticFamily("I1", (120, 16, 1), (12, 1)),
        QuadraticFamily("I2", (120, 20, 1), (20, 2)),
        QuadraticFamily("I3", (120, 36, 3), (12, 2)),
        QuadraticFamily("J", (120, 104, 22), (12, 5)),
        QuadraticFamily("K", (0, 0, 191), (0, 15)),
    )
}

BERGE_TYPES = ("I", "II", "III+", "III-", "IV+", "IV-", "V+", "V-", "VII", "VIII", "IX", "X")
POINCARE_TYPES = tuple(POINCARE_FAMILIES)
FAMILY_ORDER = {tag: i for i, tag in enumerate(BERGE_TYPES + POINCARE_TYPES)}

MAIN_THEOREM_TYPES = frozenset(
    {"I", "II", "III+", "III-", "IV+", "IV-", "VII", "VIII", "IX", "X"}
    | {f"{letter}{i}" for letter in "ACDEFGH" for i in (1, 2)}
)


def signed_divisors(m: int) -> list[int]:
    m = abs(m)
    if m == 0:
        return []
    small = [d for d in range(1, isqrt(m) + 1) if m % d == 0]
    pos = sorted(set(small) | {m // d for d in small})
    return [-d for d in reversed(pos)] + pos


def _berge_at(p: int, r: int) -> Iterator[tuple[str, int | None]]:
    """Every ``(type, parameter)`` of the 3-sphere list witnessed by ``r``."""
    if r == 1:
        yield "I", 0
        return
    mod = r * r
    for s in (1, -1):
        if (p - s) % r == 0:
            i = ((p - s) // r) % r
            g = gcd(i, r)
            if g == 1:
                yield "I", i
            elif g == 2:
                yield "II", i
    for tag, s in (("III+", 1), ("III-", -1)):
        base = r + s
        for J in signed_divisors(base):
            if (base // J) % 2 and (p - (2 * r - s) * J) % mod == 0:
                yield tag, J
    for tag, s in (("IV+", 1), ("IV-", -1)):
        for J in signed_divisors(2 * r - s):
            if J % 2 and (p - (r + s) * J) % mod == 0:
                yield tag, J
    for tag, s in (("V+", 1), ("V-", -1)):
        for J in signed_divisors(r + s):
            if J % 2 and (p - (r + s) * J) % mod == 0:
                yield tag, J
    if (r * r + r + 1) % p == 0 or (r * r - r + 1) % p == 0:
        yield "VII", None
    if (r * r + r - 1) % p == 0 or (r * r - r - 1) % p == 0:
        yield "VIII", None


def _sort_matches(found: dict[tuple[str, int | None], int]) -> list[FamilyMatch]:
    keys = sorted(found, key=lambda t: (FAMILY_ORDER[t[0]], t[1] is not None, t[1] or 0))
    return [FamilyMatch(tag, param, found[(tag, param)]) for tag, param in keys]


def _quadratic_matches(
    p: int, reps: tuple[int, ...], families: Iterable[QuadraticFamily]
) -> dict[tuple[str, int | None], int]:
    found: dict[tuple[str, int | None], int] = {}
    for fam in families:
        for J in fam.solve(p):
            k = fam.k_at(J or 0) % p
            if k in reps:
                found.setdefault((fam.tag, J), k)
    return found


def match_berge(p: int, k: int) -> list[FamilyMatch]:
    dc = dual_class(p, k)
    found: dict[tuple[str, int | None], int] = {}
    for r in dc.distinct():
        for key in _berge_at(p, r):
            found.setdefault(key, r)
    found.update(
        (key, r)
        for key, r in _quadratic_matches(p, dc.distinct(), SPORADIC_BERGE.values()).items()
        if key not in found
    )
    return _sort_matches(found)


def match_poincare(p: int, k: int) -> list[FamilyMatch]:
    dc = dual_class(p, k)
    return _sort_matches(_quadratic_matches(p, dc.distinct(), POINCARE_FAMILIES.values()))


def match_all(p: int, k: int) -> list[FamilyMatch]:
    return match_berge(p, k) + match_poincare(p, k)


def quadratic_family(tag: str) -> QuadraticFamily:
    if tag in SPORADIC_BERGE:
        return SPORADIC_BERGE[tag]
    if tag in POINCARE_FAMILIES:
        return POINCARE_FAMILIES[tag]
    raise KeyError(f"{tag} is not a quadratic family")


def berge_member(tag: str, r: int, parameter: int | None = None, m: int = 0, sign: int = 1) -> int:
    """Modulus ``p`` of a congruence-family member with class element ``r``.

    ``m`` picks the lift ``p = base + m r^2``; ``sign`` selects the ``+-1`` of
    types I and II.  VII and VIII return ``r^2 + r + 1`` and ``r^2 + r - 1``.
    """
    mod = r * r
    if tag in ("I", "II"):
        return parameter * r + sign + m * mod
    if tag in ("III+", "III-"):
        s = 1 if tag.endswith("+") else -1
        return (2 * r - s) * parameter + m * mod
    if tag in ("IV+", "IV-", "V+", "V-"):
        s = 1 if tag.endswith("+") else -1
        return (r + s) * parameter + m * mod
    if tag == "VII":
        return r * r + r + 1
    if tag == "VIII":
        return r * r + r - 1
    raise KeyError(tag)


def berge_parameters(tag: str, r: int, j_max: int) -> list[int | None]:
    s = -1 if tag.endswith("-") else 1
    if tag in ("I", "II"):
        want = 1 if tag == "I" else 2
        return [i for i in range(r) if gcd(i, r) == want]
    if tag.startswith("III"):
        return [J for J in signed_divisors(r + s) if ((r + s) // J) % 2 and abs(J) <= j_max]
    if tag.startswith("IV"):
        return [J for J in signed_divisors(2 * r - s) if J % 2 and abs(J) <= j_max]
    if tag in ("V+", "V-"):
        return [J for J in signed_divisors(r + s) if J % 2 and abs(J) <= j_max]
    if tag in ("VII", "VIII"):
        return [None]
    raise KeyError(tag)


def berge_members(
    tag: str, r_max: int, j_max: int, lifts: int = 3
) -> Iterator[tuple[int, int | None, int]]:
    """``(r, parameter, p)`` for congruence-family members with ``2 <= r <= r_max``.

    Only ``p > r`` is kept so that ``r`` is a genuine residue.
    """
    for r in range(2, r_max + 1):
        for param in berge_parameters(tag, r, j_max):
            ms = range(lifts) if param is not None else [0]
            signs = (1, -1) if tag in ("I", "II") else (1,)
            for m in ms:
                for sign in signs:
                    p = berge_member(tag, r, param, m, sign)
                    if p > r and gcd(p, r) == 1:
                        yield r, param, p


def quadratic_members(tag: str, j_max: int) -> Iterator[tuple[int | None, int, int]]:
    """``(J, p, k)`` for ``|J| <= j_max``; the constant family K yields once."""
    fam = quadratic_family(tag)
    if fam.p_coeffs[:2] == (0, 0):
        pair = fam.member(0)
        if pair:
            yield None, *pair
        return
    for J in range(-j_max, j_max + 1):
        pair = fam.member(J)
        if pair:
            yield J, *pair


# ---------------------------------------------------------------- fixtures


def _read_csv(name: str) -> list[dict[str, str]]:
    text = resources.files("lenssurgery.data").joinpath(name).read_text()
    return list(csv.DictReader(line for line in text.splitlines() if not line.startswith("#")))


def _poly(row: dict[str, str], prefix: str, J: int) -> int:
    return int(row[prefix + "2"]) * J * J + int(row[prefix + "1"]) * J + int(row[prefix + "0"])


def _j_rule(rule: str, J: int) -> bool:
    return {
        "|J|>=2": abs(J) >= 2,
        "J>=2": J >= 2,
        "J<=-2": J <= -2,
        "J>=1": J >= 1,
        "J<=-1": J <= -1,
        "J=1": J == 1,
        "any": True,
    }[rule]


@dataclass(frozen=True)
class AssocRow:
    family: str
    J: int | None
    p: int
    k1: int
    computed: QuadraticRelation
    expected: QuadraticRelation | None
    tau: int

    @property
    def agrees(self) -> bool:
        return self.expected is not None and self.expected == self.computed

    def expected_holds_at(self) -> int | None:
        """A class representative satisfying the expected relation, if any."""
        if self.expected is None:
            return None
        for r in dual_class(self.p, self.k1).distinct():
            if self.expected.holds(self.p, r):
                return r
        return None


def assoc_expectations() -> list[dict[str, str]]:
    return _read_csv("assoc_relations.csv")


def expected_relation(family: str, J: int | None) -> QuadraticRelation | None:
    """Relation predicted by the fixture for ``family`` at ``J``, if a row covers it."""
    for row in assoc_expectations():
        if row["family"] != family or not _j_rule(row["j_rule"], J or 0):
            continue
        delta = (J > 0) - (J < 0) if J is not None else 1
        eps1 = {"+1": 1, "-1": -1, "-delta": -delta, "delta": delta}[row["eps1"]]
        return QuadraticRelation(_poly(row, "a", J or 0), eps1, int(row["eps2"]), _poly(row, "n", J or 0))
    return None


def reproduce_assoc_table(family: str, J_range: Iterable[int | None]) -> list[AssocRow]:
    fam = quadratic_family(family)
    rows = []
    for J in J_range:
        pair = fam.member(J or 0)
        if pair is None:
            continue
        p, k = pair
        k1 = canonical_k(p, k)
        if k1 == 1:
            continue
        rel = associated_relation(p, k1)
        dec = tau_decompose(p, k1, rel)
        rows.append(AssocRow(family, J, p, k1, rel, expected_relation(family, J), dec.tau))
    return rows


def berge_assoc_shape(rel: QuadraticRelation) -> bool:
    """Shape predicted for stable III/IV members: ``eps2 = -1`` and ``n | a - 2``."""
    return rel.eps2 == -1 and (rel.a - 2) % rel.n == 0


@dataclass(frozen=True)
class Tau1Row:
    p: int
    k1: int
    listed: tuple[tuple[str, int], ...]
    expected: QuadraticRelation
    computed: QuadraticRelation
    tau: int
    matched: tuple[tuple[str, int | None], ...]

    @property
    def agrees(self) -> bool:
        return self.expected == self.computed and self.tau == 1

    @property
    def unmatched_listings(self) -> tuple[tuple[str, int], ...]:
        """Listed ``(type, J)`` pairs the recognizer does not confirm."""
        return tuple(m for m in self.listed if m not in self.matched)


def tau1_fixture() -> list[dict[str, str]]:
    return _read_csv("tau1_relations.csv")


def reproduce_tau1_table() -> list[Tau1Row]:
    out = []
    for row in tau1_fixture():
        p, k1 = int(row["p"]), int(row["k1"])
        listed = tuple(
            (item.split(":")[0], int(item.split(":")[1])) for item in row["types"].split()
        )
        expected = QuadraticRelation(int(row["a"]), int(row["eps1"]), int(row["eps2"]), int(row["n"]))
        computed = associated_relation(p, k1)
        dec = tau_decompose(p, k1, computed)
        matched = tuple((m.family, m.parameter) for m in match_poincare(p, k1))
        out.append(Tau1Row(p, k1, listed, expected, computed, dec.tau, matched))
    return out


def family_table(which: str) -> list[dict[str, str]]:
    return _read_csv({"berge": "berge_families.csv", "poincare": "poincare_families.csv"}[which])


__all__ = [
    "AssocRow",
    "BERGE_TYPES",
    "FamilyMatch",
    "MAIN_THEOREM_TYPES",
    "POINCARE_FAMILIES",
    "POINCARE_TYPES",
    "QuadraticFamily",
    "SPORADIC_BERGE",
    "Tau1Row",
    "berge_assoc_shape",
    "berge_member",
    "berge_members",
    "berge_parameters",
    "quadratic_members",
    "expected_relation",
    "family_table",
    "match_all",
    "match_berge",
    "match_poincare",
    "quadratic_family",
    "reproduce_assoc_table",
    "reproduce_tau1_table",
    "signed_divisors",
]
