"""Trust and support regions on the lattice S^1 x Z/2.

A lattice term e^{imx} delta_{2p,k} is addressed by (m, k).  Regions are
octagons: independent bounds on the four integer forms

    k,   m,   s = k + m,   d = m - k.

In Wigner coordinates s/2 and d/2 are the Fourier modes of the two wave
functions entering the transform, and the star product contracts d of the
left factor against s of the right one.  Every LatticeFunction carries a
``support`` region (a superset of where the true object can be nonzero) and a
``known`` region (where the stored coefficients are exact).  Products
propagate both with the small octagon closure below, working on the real
relaxation, so every derived trust statement is sound though possibly
conservative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional

Bound = Optional[int]
INF = math.inf

FORMS = ("k", "m", "s", "d")


def _lo(v: Bound) -> float:
    return -INF if v is None else v


def _hi(v: Bound) -> float:
    return INF if v is None else v


def _from_lo(v: float) -> Bound:
    return None if v == -INF else int(math.ceil(v - 1e-9))


def _from_hi(v: float) -> Bound:
    return None if v == INF else int(math.floor(v + 1e-9))


class Octagon:
    """Difference-bound closure for constraints +-x_a +- x_b <= c (reals)."""

    __slots__ = ("n", "mat", "feasible")

    def __init__(self, nvars: int) -> None:
        self.n = 2 * nvars
        self.mat = [[INF] * self.n for _ in range(self.n)]
        for i in range(self.n):
            self.mat[i][i] = 0.0
        self.feasible = True

    @staticmethod
    def _node(var: int, sign: int) -> int:
        return 2 * var if sign > 0 else 2 * var + 1

    def add(self, coeffs: dict[int, int], bound: float) -> None:
        """Impose sum(coeffs[v] * x_v) <= bound with coefficients in {-1, 0, 1}."""
        if bound == INF:
            return
        items = [(v, c) for v, c in coeffs.items() if c]
        mat = self.mat
        if not items:
            if bound < 0:
                self.feasible = False
            return
        if len(items) == 1:
            (v, c), = items
            i = self._node(v, c)
            mat[i ^ 1][i] = min(mat[i ^ 1][i], 2.0 * bound)
            return
        (v1, c1), (v2, c2) = items
        i = self._node(v1, c1)
        j = self._node(v2, c2)
        mat[j ^ 1][i] = min(mat[j ^ 1][i], bound)
        mat[i ^ 1][j] = min(mat[i ^ 1][j], bound)

    def close(self) -> bool:
        if not self.feasible:
            return False
        n, mat = self.n, self.mat
        for k in range(n):
            row_k = mat[k]
            for i in range(n):
                mik = mat[i][k]
                if mik == INF:
                    continue
                row_i = mat[i]
                for j in range(n):
                    v = mik + row_k[j]
                    if v < row_i[j]:
                        row_i[j] = v
        for i in range(n):
            ii = mat[i][i ^ 1]
            for j in range(n):
                alt = (ii + mat[j ^ 1][j]) / 2.0
                if alt < mat[i][j]:
                    mat[i][j] = alt
        for i in range(n):
            if mat[i][i] < -1e-9:
                self.feasible = False
                return False
        return True

    def sup(self, coeffs: dict[int, int]) -> float:
        items = [(v, c) for v, c in coeffs.items() if c]
        if not items:
            return 0.0
        if len(items) == 1:
            (v, c), = items
            i = self._node(v, c)
            return self.mat[i ^ 1][i] / 2.0
        (v1, c1), (v2, c2) = items
        i = self._node(v1, c1)
        j = self._node(v2, c2)
        return self.mat[j ^ 1][i]

    def inf(self, coeffs: dict[int, int]) -> float:
        return -self.sup({v: -c for v, c in coeffs.items()})


@dataclass(frozen=True)
class Region:
    """Octagon {(m, k)}: bounds on k, m, s = k + m and d = m - k (None = open)."""

    k: tuple[Bound, Bound] = (None, None)
    m: tuple[Bound, Bound] = (None, None)
    s: tuple[Bound, Bound] = (None, None)
    d: tuple[Bound, Bound] = (None, None)
    empty: bool = False

    # -- construction ------------------------------------------------------
    @classmethod
    def full(cls) -> "Region":
        return cls()

    @classmethod
    def nothing(cls) -> "Region":
        return cls(empty=True)

    @classmethod
    def rows(cls, lo: Bound, hi: Bound) -> "Region":
        return cls(k=(lo, hi))

    @classmethod
    def hull_of(cls, keys: Iterable[tuple[int, int]]) -> "Region":
        keys = list(keys)
        if not keys:
            return cls.nothing()
        ms = [m for m, _ in keys]
        ks = [k for _, k in keys]
        ss = [m + k for m, k in keys]
        ds = [m - k for m, k in keys]
        return cls(
            k=(min(ks), max(ks)), m=(min(ms), max(ms)), s=(min(ss), max(ss)), d=(min(ds), max(ds))
        )

    # -- predicates ----------------------------------------------------------
    def is_full(self) -> bool:
        return not self.empty and all(getattr(self, f) == (None, None) for f in FORMS)

    def contains(self, m: int, k: int) -> bool:
        if self.empty:
            return False
        for (lo, hi), v in ((self.k, k), (self.m, m), (self.s, k + m), (self.d, m - k)):
            if (lo is not None and v < lo) or (hi is not None and v > hi):
                return False
        return True

    # -- algebra -------------------------------------------------------------
    def intersect(self, other: "Region") -> "Region":
        if self.empty or other.empty:
            return Region.nothing()

        def meet(a: tuple[Bound, Bound], b: tuple[Bound, Bound]) -> tuple[Bound, Bound]:
            lo = _from_lo(max(_lo(a[0]), _lo(b[0])))
            hi = _from_hi(min(_hi(a[1]), _hi(b[1])))
            return (lo, hi)

        return Region(*(meet(getattr(self, f), getattr(other, f)) for f in FORMS)).closed()

    def hull(self, other: "Region") -> "Region":
        if self.empty:
            return other
        if other.empty:
            return self

        def join(a: tuple[Bound, Bound], b: tuple[Bound, Bound]) -> tuple[Bound, Bound]:
            return (_from_lo(min(_lo(a[0]), _lo(b[0]))), _from_hi(max(_hi(a[1]), _hi(b[1]))))

        return Region(*(join(getattr(self, f), getattr(other, f)) for f in FORMS))

    def shift(self, dm: int, dk: int) -> "Region":
        """Translate by (m, k) -> (m + dm, k + dk)."""
        if self.empty:
            return self

        def mv(b: tuple[Bound, Bound], t: int) -> tuple[Bound, Bound]:
            return (None if b[0] is None else b[0] + t, None if b[1] is None else b[1] + t)

        return Region(mv(self.k, dk), mv(self.m, dm), mv(self.s, dm + dk), mv(self.d, dm - dk))

    def conj(self) -> "Region":
        """Image under (m, k) -> (-m, k)."""
        if self.empty:
            return self

        def neg(b: tuple[Bound, Bound]) -> tuple[Bound, Bound]:
            return (None if b[1] is None else -b[1], None if b[0] is None else -b[0])

        return Region(self.k, neg(self.m), neg(self.d), neg(self.s))

    # -- octagon plumbing ----------------------------------------------------
    def constrain(self, octagon: Octagon, s_var: tuple[int, int], d_var: tuple[int, int]) -> None:
        """Impose this region on a point whose s and d are +-(an octagon variable)."""
        if self.empty:
            octagon.feasible = False
            return
        for form, coeffs, scale in self._forms(s_var, d_var):
            lo, hi = getattr(self, form)
            if hi is not None:
                octagon.add(coeffs, scale * hi)
            if lo is not None:
                octagon.add({v: -c for v, c in coeffs.items()}, -scale * lo)

    @staticmethod
    def _forms(s_var: tuple[int, int], d_var: tuple[int, int]):
        (vs, cs), (vd, cd) = s_var, d_var

        def combo(a: int, b: int) -> dict[int, int]:
            out: dict[int, int] = {}
            out[vs] = out.get(vs, 0) + a * cs
            out[vd] = out.get(vd, 0) + b * cd
            return out

        # k = (s - d)/2 and m = (s + d)/2, so the doubled forms carry scale 2
        return (
            ("s", combo(1, 0), 1),
            ("d", combo(0, 1), 1),
            ("k", combo(1, -1), 2),
            ("m", combo(1, 1), 2),
        )

    def violations(self, s_var: tuple[int, int], d_var: tuple[int, int]):
        """Constraints (coeffs, bound) each describing one way to leave the region."""
        out = []
        for form, coeffs, scale in self._forms(s_var, d_var):
            lo, hi = getattr(self, form)
            if hi is not None:
                out.append(({v: -c for v, c in coeffs.items()}, -scale * (hi + 1)))
            if lo is not None:
                out.append((coeffs, scale * (lo - 1)))
        return out

    def closed(self) -> "Region":
        """Tighten all four bounds against each other."""
        if self.empty:
            return self
        octagon = Octagon(2)  # variables: 0 = s, 1 = d
        self.constrain(octagon, (0, 1), (1, 1))
        if not octagon.close():
            return Region.nothing()
        s = (_from_lo(octagon.inf({0: 1})), _from_hi(octagon.sup({0: 1})))
        d = (_from_lo(octagon.inf({1: 1})), _from_hi(octagon.sup({1: 1})))
        k2 = (octagon.inf({0: 1, 1: -1}), octagon.sup({0: 1, 1: -1}))
        m2 = (octagon.inf({0: 1, 1: 1}), octagon.sup({0: 1, 1: 1}))
        k = (_from_lo(k2[0] / 2), _from_hi(k2[1] / 2))
        m = (_from_lo(m2[0] / 2), _from_hi(m2[1] / 2))
        return Region(k, m, s, d)

    def row_span(self) -> tuple[Bound, Bound]:
        return self.closed().k if not self.empty else (0, -1)


# -- interval sets (for choosing a single trusted window) ------------------


def complement_union(bad: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Integer-closed intervals of Z not covered by any interval in ``bad``."""
    bad = sorted((lo, hi) for lo, hi in bad if lo <= hi)
    good: list[tuple[float, float]] = []
    cursor = -INF
    for lo, hi in bad:
        if lo > cursor:
            good.append((cursor, lo - 1))
        cursor = max(cursor, hi + 1)
        if cursor == INF:
            break
    if cursor != INF:
        good.append((cursor, INF))
    return [(lo, hi) for lo, hi in good if lo <= hi]


def choose_window(good: list[tuple[float, float]], rows: Iterable[int]) -> tuple[Bound, Bound]:
    """Pick the good interval holding the most stored rows (lowest on ties)."""
    if not good:
        return (0, -1)
    rows = list(rows)
    best = max(
        range(len(good)),
        key=lambda i: (sum(1 for r in rows if good[i][0] <= r <= good[i][1]), -i),
    )
    lo, hi = good[best]
    return (_from_lo(lo), _from_hi(hi))
