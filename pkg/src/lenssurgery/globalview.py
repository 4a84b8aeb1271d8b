"""Cyclically lifted coefficients and their layout on the i-j plane.

The lift ``a~`` is read through ``A(n1, n2, n3) = a~[-g + n1 k1 + n2 k1' + n3]``
and the one-variable slice ``A(x) = A(eps1 eps2 a - 1, eps1 x, 1)``.  Jumps of
``A`` sit next to the floor points ``floor(p l / |q2|)``; :func:`difference_class`
predicts every jump from those points alone, and the block scanner recovers
the staircase structure of the grid ``A(i + j k1)``.
"""

from __future__ import annotations

import csv
import io
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .alexander import SymmetricPoly, phi_context
from .quadratic import TauDecomposition


@dataclass(frozen=True)
class CyclicCoeffs:
    p: int
    k1: int
    k1_inv: int
    table: tuple[int, ...]
    g_bar: int

    def __getitem__(self, i: int) -> int:
        return self.table[i % self.p]


def cyclic_lift(poly: SymmetricPoly, k1: int | TauDecomposition) -> CyclicCoeffs:
    """Sum the window coefficients per residue and attach ``g_bar``.

    ``g_bar = k1'(c - q1) + 1`` solves ``-2 g_bar = k1 + k1' - 2`` mod ``p``.
    """
    if not poly.is_integral():
        raise ValueError("half-integer coefficient tables cannot be lifted")
    if isinstance(k1, TauDecomposition):
        k1 = k1.k1
    p = poly.p
    k1 %= p
    table = poly.cyclic_table()
    if p == 1:
        return CyclicCoeffs(1, 0, 0, table, 0)
    ctx = phi_context(p, k1)
    g_bar = (ctx.k_inv * (ctx.c - ctx.q) + 1) % p
    assert (-2 * g_bar - (k1 + ctx.k_inv - 2)) % p == 0
    return CyclicCoeffs(p, k1, ctx.k_inv, table, g_bar)


def big_a(cc: CyclicCoeffs, n1: int, n2: int, n3: int) -> int:
    return cc[-cc.g_bar + n1 * cc.k1 + n2 * cc.k1_inv + n3]


def a_of_x(cc: CyclicCoeffs, dec: TauDecomposition, x: int) -> int:
    e = dec.eps1 * dec.eps2
    return big_a(cc, e * dec.a - 1, dec.eps1 * x, 1)


def a_profile(cc: CyclicCoeffs, dec: TauDecomposition) -> np.ndarray:
    """``A(x)`` for ``x = 0 .. p-1`` as one array."""
    p = cc.p
    base = -cc.g_bar + (dec.eps1 * dec.eps2 * dec.a - 1) * cc.k1 + 1
    xs = np.arange(p, dtype=np.int64)
    idx = (base + dec.eps1 * cc.k1_inv * xs) % p
    return np.asarray(cc.table, dtype=np.int64)[idx]


def difference(cc: CyclicCoeffs, dec: TauDecomposition, x: int) -> int:
    """``A(x) - A(x - eps1)``."""
    return a_of_x(cc, dec, x) - a_of_x(cc, dec, x - dec.eps1)


def floor_points(dec: TauDecomposition) -> tuple[int, ...]:
    """``floor(p l / |q2|) mod p`` for ``l = 0 .. |q2| - 1``, increasing."""
    q = abs(dec.q2)
    return tuple(dec.p * l // q for l in range(q))


def difference_class(cc: CyclicCoeffs, dec: TauDecomposition, x: int) -> tuple[int, str]:
    """Predicted ``A(x) - A(x - eps1)`` and the case that produced it.

    Only the floor points and the ``a`` special points ``-eps2 q1 j`` enter the
    prediction; the coefficient table is not consulted.
    """
    p = dec.p
    F = _floor_set(dec)
    x %= p
    q1, e2 = dec.q1, dec.eps2
    if dec.eps1 * dec.eps2 == 1:
        special = {(-e2 * q1 * j) % p for j in range(dec.a)}
        if (x - 1) % p in F or (x in special and x in F):
            return -1, "a"
        if x in F:
            return 1, "b1"
        if (x + 1) % p in special and (x + 1) % p in F:
            return 1, "b2"
        if (x - dec.k1) % p in special and (x + 1) % p in F:
            return 1, "b3"
        return 0, "c"
    special = {(-e2 * q1 * j) % p for j in range(1, dec.a + 1)}
    if (x - 1) % p in F and x not in special:
        return -1, "a"
    if x in special and (x - 1) % p in F:
        return 1, "b1"
    if x in F and (x + 1) % p not in special and (x + dec.k1) % p not in special:
        return 1, "b2"
    return 0, "c"


_FLOOR_CACHE: dict[tuple[int, int], frozenset[int]] = {}


def _floor_set(dec: TauDecomposition) -> frozenset[int]:
    key = (dec.p, dec.q2)
    if key not in _FLOOR_CACHE:
        if len(_FLOOR_CACHE) > 256:
            _FLOOR_CACHE.clear()
        _FLOOR_CACHE[key] = frozenset(floor_points(dec))
    return _FLOOR_CACHE[key]


def difference_mismatches(cc: CyclicCoeffs, dec: TauDecomposition) -> list[int]:
    """Every ``x`` in ``[0, p)`` where the prediction and the table disagree."""
    prof = a_profile(cc, dec)
    shift = dec.eps1
    actual = prof - np.roll(prof, shift)
    return [x for x in range(cc.p) if difference_class(cc, dec, x)[0] != actual[x]]


# ------------------------------------------------------------------ floors


def floor_spacings(dec: TauDecomposition) -> list[int]:
    """``floor(p m/|q2|) - floor(p (m-1)/|q2|)`` for ``m = 1 .. |q2|``."""
    q, p = abs(dec.q2), dec.p
    return [p * m // q - p * (m - 1) // q for m in range(1, q + 1)]


def wide_gaps(dec: TauDecomposition) -> list[int]:
    """Distances between consecutive spacings equal to ``tau + 1``, cyclically."""
    sp = floor_spacings(dec)
    wide = [m for m, w in enumerate(sp) if w == dec.tau + 1]
    if len(wide) < 2:
        return []
    return [b - a for a, b in zip(wide, wide[1:])] + [wide[0] + len(sp) - wide[-1]]


def gap_bounds(dec: TauDecomposition) -> tuple[int, int]:
    base = dec.n // dec.alpha
    return int(base), int(base) + 1


def floor_identity(dec: TauDecomposition, m: int) -> bool:
    q, p, n, a = abs(dec.q2), dec.p, dec.n, dec.a
    lhs = m * n * p // q - (m - 1) * n * p // q - (dec.k1 + dec.eps1 * dec.eps2)
    return lhs == m * a // q - (m - 1) * a // q


def in_width_regime(dec: TauDecomposition) -> bool:
    """``alpha < n`` with ``n >= 2``; then every floor spacing is ``tau`` or ``tau + 1``."""
    return dec.n >= 2 and dec.alpha < dec.n


# -------------------------------------------------------------------- grid


@dataclass(frozen=True, eq=False)
class Grid:
    """``values[r, c] = A(i + j k1)`` with ``i = i_values[c]``, ``j = j_values[r]``."""

    i_values: range
    j_values: range
    values: np.ndarray
    k1: int
    p: int

    def at(self, i: int, j: int) -> int | None:
        if i not in self.i_values or j not in self.j_values:
            return None
        return int(self.values[j - self.j_values.start, i - self.i_values.start])

    def to_ascii(self) -> str:
        glyph = {0: ".", 1: "+", -1: "-", 2: "2"}
        lines = []
        for r in reversed(range(len(self.j_values))):
            row = "".join(glyph.get(int(v), "?") for v in self.values[r])
            lines.append(f"{self.j_values[r]:>5} {row}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["j"] + list(self.i_values))
        for r, j in enumerate(self.j_values):
            w.writerow([j] + [int(v) for v in self.values[r]])
        return buf.getvalue()


def grid(cc: CyclicCoeffs, dec: TauDecomposition, i_max: int, j_range: Iterable[int]) -> Grid:
    js = j_range if isinstance(j_range, range) else range(min(j_range), max(j_range) + 1)
    iv = range(0, i_max + 1)
    prof = a_profile(cc, dec)
    xs = (np.arange(iv.start, iv.stop)[None, :] + np.arange(js.start, js.stop)[:, None] * cc.k1)
    return Grid(iv, js, prof[xs % cc.p], cc.k1, cc.p)


@dataclass(frozen=True)
class Block:
    t0: int
    t1: int
    b0: int
    b1: int
    s0: int
    s1: int
    sign: int
    corners: dict[str, int] = field(default_factory=dict, compare=False)

    @property
    def top_width(self) -> int:
        return self.t1 - self.t0 + 1

    @property
    def bottom_width(self) -> int:
        return self.b1 - self.b0 - 1

    @property
    def height(self) -> int:
        return self.s1 - self.s0 + 1

    def width_relation(self, eps_product: int) -> bool:
        if eps_product == 1:
            return self.t1 - self.b0 == self.s1 - self.s0 - 2
        return self.b1 - self.t0 == self.s1 - self.s0 - 2


def _nearest_floor(points: Sequence[int], p: int, x: int) -> int:
    """Index of the floor point cyclically closest to ``x``."""
    x %= p
    pos = bisect_left(points, x)
    best, best_d = 0, p
    for idx in (pos - 1, pos, pos + 1):
        l = idx % len(points)
        d = min((x - points[l]) % p, (points[l] - x) % p)
        if d < best_d:
            best, best_d = l, d
    return best


def find_blocks(g: Grid, dec: TauDecomposition) -> list[Block]:
    """Blocks around every staircase fully visible in ``g``.

    A staircase is a maximal chain of cells of sign ``eps1`` stepping by
    ``(eps1 eps2, 1)``, capped by cells of the opposite sign directly below its
    first cell and above its last.  The staircase fixes ``s0``, ``s1`` and the
    inner corners; the outer corners come from the floor points nearest the two
    ends, so each width is a floor spacing.
    """
    s, sig = dec.eps1 * dec.eps2, dec.eps1
    pts = floor_points(dec)
    q, p = len(pts), dec.p

    def spacing(l: int) -> int:
        # distance from point l-1 to point l, cyclically
        return (pts[l % q] - pts[(l - 1) % q]) % p or p

    blocks = []
    for j in g.j_values:
        for i in g.i_values:
            if g.at(i, j) != sig:
                continue
            before = g.at(i - s, j - 1)
            if before is None or before == sig:
                continue
            ie, je = i, j
            while g.at(ie + s, je + 1) == sig:
                ie, je = ie + s, je + 1
            if g.at(ie + s, je + 1) is None:
                continue
            if g.at(i, j - 1) != -sig or g.at(ie, je + 1) != -sig:
                continue
            lt = _nearest_floor(pts, p, ie + je * g.k1)
            lb = _nearest_floor(pts, p, i + j * g.k1)
            if s == 1:
                tw, bw = spacing(lt), spacing(lb + 1)
                t1, b0 = ie, i
                blk = Block(t1 - tw + 1, t1, b0, b0 + bw + 1, j - 1, je + 1, -sig,
                            {"rt": lt, "lt": (lt - 1) % q, "lb": lb, "rb": (lb + 1) % q})
            else:
                tw, bw = spacing(lt + 1), spacing(lb)
                t0, b1 = ie, i
                blk = Block(t0, t0 + tw - 1, b1 - bw - 1, b1, j - 1, je + 1, -sig,
                            {"lt": lt, "rt": (lt + 1) % q, "rb": lb, "lb": (lb - 1) % q})
            blocks.append(blk)
    return blocks


# -------------------------------------------------------------------- runs


@dataclass(frozen=True)
class Run:
    kind: str
    start: int
    end: int


def _as_sequence(obj: SymmetricPoly | CyclicCoeffs | Sequence[int]) -> list[int]:
    if isinstance(obj, SymmetricPoly):
        return list(obj.cyclic_table())
    if isinstance(obj, CyclicCoeffs):
        return list(obj.table)
    return [int(v) for v in obj]


def find_runs(obj: SymmetricPoly | CyclicCoeffs | Sequence[int]) -> list[Run]:
    """Forbidden (``-1, 0.., -1``) and admitted (``1, 0.., 1``) runs, cyclically.

    ``end`` may exceed the sequence length when a run wraps around.
    """
    seq = _as_sequence(obj)
    p = len(seq)
    nz = [i for i, v in enumerate(seq) if v]
    runs = []
    for idx, i0 in enumerate(nz):
        i1 = nz[(idx + 1) % len(nz)]
        end = i1 if i1 > i0 else i1 + p
        if seq[i0] == seq[i1] == -1:
            runs.append(Run("forbidden", i0, end))
        elif seq[i0] == seq[i1] == 1:
            runs.append(Run("admitted", i0, end))
    return runs


def a2_points(cc: CyclicCoeffs) -> list[int]:
    """Residues where the lifted coefficient equals 2."""
    return [i for i, v in enumerate(cc.table) if v == 2]


__all__ = [
    "Block",
    "CyclicCoeffs",
    "Grid",
    "Run",
    "a2_points",
    "a_of_x",
    "a_profile",
    "big_a",
    "cyclic_lift",
    "difference",
    "difference_class",
    "difference_mismatches",
    "find_blocks",
    "find_runs",
    "floor_identity",
    "floor_points",
    "floor_spacings",
    "gap_bounds",
    "grid",
    "in_width_regime",
    "wide_gaps",
]
