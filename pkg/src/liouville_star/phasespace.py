"""Lattice phase-space algebra on S^1 x Z/2.

Momentum is stored doubled, k = 2p, so semi-integer momenta are exact.  A
LatticeFunction is the finite sum of c_{m,k} e^{imx} delta_{2p,k}.  The star
product of two basis elements is

    (e^{imx} d_{2p,k}) * (e^{im'x} d_{2p,k'}) = e^{i(m+m')x} d_{2p,k'+m}

when k - m = k' + m', and zero otherwise.
"""

from __future__ import annotations

import cmath
import json
import math
from collections import defaultdict
from fractions import Fraction
from typing import Any, Iterable, Iterator, Mapping, NamedTuple, Optional

from .numerics import Coefficient, ExactScalar, FloatScalar, coerce, ZERO
from .regions import INF, Octagon, Region, choose_window, complement_union

__all__ = [
    "CircleFunction",
    "LatticeFunction",
    "Symbol",
    "TraceResult",
    "wigner_transform",
    "star",
    "star_symbol_left",
    "star_symbol_right",
    "conjugate",
    "pointwise_mul",
    "phase_trace",
    "lone_star_trace",
    "sesqui_bracket",
    "star_bar",
    "eval_point",
    "hamiltonian",
    "hamiltonian_bar",
    "momentum_squared",
    "lattice_delta",
    "to_json",
    "from_json",
]


def _unify(raw: Mapping[Any, Any]) -> dict[Any, Coefficient]:
    """Coerce coefficients into one ring, dropping zeros."""
    out: dict[Any, Coefficient] = {}
    floating = False
    for key, value in raw.items():
        c = coerce(value)
        if isinstance(c, FloatScalar):
            floating = True
        out[key] = c
    if floating:
        out = {key: (c if isinstance(c, FloatScalar) else FloatScalar(c.to_complex())) for key, c in out.items()}
    return {key: c for key, c in out.items() if not c.is_zero()}


def _accumulate(target: dict, key: Any, value: Coefficient) -> None:
    prev = target.get(key)
    target[key] = value if prev is None else prev + value


def _scalar_ok(value: Any) -> bool:
    return isinstance(value, (int, Fraction, float, complex, ExactScalar, FloatScalar))


# ---------------------------------------------------------------------------
# Circle functions
# ---------------------------------------------------------------------------


class CircleFunction:
    """Finite Fourier series sum_m a_m e^{imx}."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[int, Any]] = None) -> None:
        self.terms: dict[int, Coefficient] = _unify(terms or {})

    @classmethod
    def constant(cls, c: Any = 1) -> "CircleFunction":
        return cls({0: c})

    @classmethod
    def monomial(cls, m: int, c: Any = 1) -> "CircleFunction":
        return cls({m: c})

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, ExactScalar) for c in self.terms.values())

    def coefficient(self, m: int) -> Coefficient:
        return self.terms.get(m, ZERO)

    def modes(self) -> list[int]:
        return sorted(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Any) -> "CircleFunction":
        if _scalar_ok(other):
            other = CircleFunction.constant(other)
        if not isinstance(other, CircleFunction):
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            _accumulate(out, m, c)
        return CircleFunction(out)

    __radd__ = __add__

    def __neg__(self) -> "CircleFunction":
        return CircleFunction({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Any) -> "CircleFunction":
        return self + (-other)

    def __rsub__(self, other: Any) -> "CircleFunction":
        return (-self) + other

    def __mul__(self, other: Any) -> "CircleFunction":
        if _scalar_ok(other):
            c0 = coerce(other)
            return CircleFunction({m: c * c0 for m, c in self.terms.items()})
        if not isinstance(other, CircleFunction):
            return NotImplemented
        out: dict[int, Coefficient] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                _accumulate(out, m1 + m2, c1 * c2)
        return CircleFunction(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "CircleFunction":
        result = CircleFunction.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, CircleFunction):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items(), key=lambda t: t[0])))

    def conjugate(self) -> "CircleFunction":
        """Complex conjugate of the function: a_m e^{imx} -> conj(a_m) e^{-imx}."""
        return CircleFunction({-m: c.conjugate() for m, c in self.terms.items()})

    def reflect(self) -> "CircleFunction":
        """x -> -x with coefficients kept."""
        return CircleFunction({-m: c for m, c in self.terms.items()})

    def derivative(self, order: int = 1) -> "CircleFunction":
        factor = ExactScalar(0, 0, 1)
        out = {}
        for m, c in self.terms.items():
            out[m] = c * (factor * m) ** order if order else c
        return CircleFunction(out)

    def pairing(self, other: "CircleFunction") -> Coefficient:
        """(1/2pi) int self * other dx, bilinear (no conjugation)."""
        total: Coefficient = ZERO
        small, large = (self, other) if len(self.terms) <= len(other.terms) else (other, self)
        for m, c in small.terms.items():
            c2 = large.terms.get(-m)
            if c2 is not None:
                total = total + c * c2
        return total

    def evaluate(self, x: float) -> complex:
        return sum((c.to_complex() * cmath.exp(1j * m * x) for m, c in self.terms.items()), 0j)

    def truncate_modes(self, lo: Optional[int] = None, hi: Optional[int] = None) -> "CircleFunction":
        return CircleFunction(
            {m: c for m, c in self.terms.items() if (lo is None or m >= lo) and (hi is None or m <= hi)}
        )

    def __repr__(self) -> str:
        body = " + ".join(f"({c})e^{{{m}ix}}" for m, c in sorted(self.terms.items()))
        return f"CircleFunction({body or '0'})"


# ---------------------------------------------------------------------------
# Symbols
# ---------------------------------------------------------------------------


class Symbol:
    """Finite sum of c e^{imx} p^d with d <= 4."""

    __slots__ = ("terms",)
    MAX_DEGREE = 4

    def __init__(self, terms: Iterable[tuple[int, int, Any]]) -> None:
        merged: dict[tuple[int, int], Any] = {}
        for m, d, c in terms:
            if d < 0 or d > self.MAX_DEGREE:
                raise ValueError(f"momentum degree {d} outside 0..{self.MAX_DEGREE}")
            _accumulate(merged, (m, d), coerce(c))
        self.terms: list[tuple[int, int, Coefficient]] = [
            (m, d, c) for (m, d), c in sorted(_unify(merged).items())
        ]

    @classmethod
    def from_circle(cls, f: CircleFunction) -> "Symbol":
        return cls((m, 0, c) for m, c in f.terms.items())

    def conjugate(self) -> "Symbol":
        return Symbol((-m, d, c.conjugate()) for m, d, c in self.terms)

    def modes(self) -> list[int]:
        return sorted({m for m, _, _ in self.terms})

    def __add__(self, other: "Symbol") -> "Symbol":
        return Symbol(self.terms + other.terms)

    def __mul__(self, scalar: Any) -> "Symbol":
        c0 = coerce(scalar)
        return Symbol((m, d, c * c0) for m, d, c in self.terms)

    __rmul__ = __mul__

    def __neg__(self) -> "Symbol":
        return self * -1

    def __sub__(self, other: "Symbol") -> "Symbol":
        return self + (-other)

    def evaluate(self, x: float, p: float) -> complex:
        return sum((c.to_complex() * cmath.exp(1j * m * x) * p**d for m, d, c in self.terms), 0j)

    def __repr__(self) -> str:
        return "Symbol(" + " + ".join(f"({c})e^{{{m}ix}}p^{d}" for m, d, c in self.terms) + ")"


def hamiltonian(coupling: Any = 1) -> Symbol:
    """H = p^2 + m^2 e^{2ix}."""
    c = coerce(coupling)
    return Symbol([(0, 2, 1), (2, 0, c * c)])


def hamiltonian_bar(coupling: Any = 1) -> Symbol:
    return hamiltonian(coupling).conjugate()


def momentum_squared() -> Symbol:
    return Symbol([(0, 2, 1)])


# ---------------------------------------------------------------------------
# Lattice functions
# ---------------------------------------------------------------------------


class TraceResult(NamedTuple):
    value: Coefficient
    complete: bool


class LatticeFunction:
    """Sparse sum of c_{m,k} e^{imx} delta_{2p,k} with trust bookkeeping.

    ``known`` is the region where stored coefficients are exact; terms outside
    it are never stored.  ``support`` bounds where the true object can be
    nonzero.  Untruncated objects have ``known`` equal to the full lattice.
    """

    __slots__ = ("terms", "known", "support", "_window")

    def __init__(
        self,
        terms: Optional[Mapping[tuple[int, int], Any]] = None,
        *,
        window: Optional[tuple[Optional[int], Optional[int]]] = None,
        known: Optional[Region] = None,
        support: Optional[Region] = None,
    ) -> None:
        known = Region.full() if known is None else known
        if window is not None:
            known = known.intersect(Region.rows(*window))
        raw = _unify(terms or {})
        if not known.is_full():
            raw = {key: c for key, c in raw.items() if known.contains(*key)}
        self.terms: dict[tuple[int, int], Coefficient] = raw
        self.known = known
        stored = Region.hull_of(raw)
        if known.is_full():
            self.support = stored
        else:
            self.support = (Region.full() if support is None else support).hull(stored)
        self._window: Optional[tuple[Optional[int], Optional[int]]] = None

    # -- construction helpers ----------------------------------------------
    @classmethod
    def zero(cls) -> "LatticeFunction":
        return cls({})

    @classmethod
    def from_rows(cls, rows: Mapping[int, CircleFunction], **kwargs: Any) -> "LatticeFunction":
        terms = {}
        for k, row in rows.items():
            for m, c in row.terms.items():
                terms[(m, k)] = c
        return cls(terms, **kwargs)

    def with_trust(self, known: Region, support: Optional[Region] = None) -> "LatticeFunction":
        return LatticeFunction(self.terms, known=known, support=support)

    def truncated(self, k_max: int) -> "LatticeFunction":
        """Keep rows k <= k_max and mark the rest untrusted."""
        return LatticeFunction(self.terms, known=self.known.intersect(Region.rows(None, k_max)), support=self.support)

    # -- inspection ----------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, ExactScalar) for c in self.terms.values())

    @property
    def is_untruncated(self) -> bool:
        return self.known.is_full()

    def coefficient(self, m: int, k: int) -> Coefficient:
        return self.terms.get((m, k), ZERO)

    def rows(self) -> list[int]:
        return sorted({k for _, k in self.terms})

    def row(self, k: int) -> CircleFunction:
        return CircleFunction({m: c for (m, kk), c in self.terms.items() if kk == k})

    def max_mode(self) -> int:
        return max((abs(m) for m, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        """c_{-m,k} == conj(c_{m,k}) on every stored term."""
        for (m, k), c in self.terms.items():
            other = self.terms.get((-m, k))
            if other is None or other != c.conjugate():
                return False
        return True

    @property
    def window(self) -> tuple[Optional[int], Optional[int]]:
        """Rows k whose every coefficient is exact (lo > hi means none)."""
        if self._window is None:
            self._window = _row_window(self.known, self.support, self.rows())
        return self._window

    def row_complete(self, k: int) -> bool:
        lo, hi = self.window
        return (lo is None or k >= lo) and (hi is None or k <= hi)

    # -- arithmetic ------------------------------------------------------------
    def _combine(self, other: "LatticeFunction", sign: int) -> "LatticeFunction":
        out = dict(self.terms)
        for key, c in other.terms.items():
            _accumulate(out, key, c if sign > 0 else -c)
        known = self.known.intersect(other.known)
        if known.is_full():
            return LatticeFunction(out)
        return LatticeFunction(out, known=known, support=self.support.hull(other.support))

    def __add__(self, other: Any) -> "LatticeFunction":
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other: Any) -> "LatticeFunction":
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self) -> "LatticeFunction":
        return self * -1

    def __mul__(self, scalar: Any) -> "LatticeFunction":
        if not _scalar_ok(scalar):
            return NotImplemented
        c0 = coerce(scalar)
        terms = {key: c * c0 for key, c in self.terms.items()}
        if self.known.is_full():
            return LatticeFunction(terms)
        return LatticeFunction(terms, known=self.known, support=self.support)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Any) -> "LatticeFunction":
        return self * (1 / coerce(scalar))

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, LatticeFunction):
            return NotImplemented
        return self.terms == other.terms and self.known == other.known

    __hash__ = None  # type: ignore[assignment]

    def agrees_with(self, other: "LatticeFunction", tol: Optional[float] = None) -> bool:
        """Equality on the region where both sides are trusted.

        Exact comparison when ``tol`` is None, otherwise absolute tolerance.
        """
        return not self.disagreements(other, tol)

    def disagreements(self, other: "LatticeFunction", tol: Optional[float] = None) -> list[tuple[int, int]]:
        region = self.known.intersect(other.known)
        bad = []
        for key in set(self.terms) | set(other.terms):
            if not region.contains(*key):
                continue
            a = self.terms.get(key, ZERO)
            b = other.terms.get(key, ZERO)
            if tol is None:
                if isinstance(a, FloatScalar) or isinstance(b, FloatScalar):
                    if a.to_complex() != b.to_complex():
                        bad.append(key)
                elif a != b:
                    bad.append(key)
            elif abs(a.to_complex() - b.to_complex()) > tol:
                bad.append(key)
        return sorted(bad, key=lambda t: (t[1], t[0]))

    def max_abs_within(self, region: Optional[Region] = None) -> float:
        region = self.known if region is None else region
        return max((abs(c.to_complex()) for key, c in self.terms.items() if region.contains(*key)), default=0.0)

    def restricted(self, region: Region) -> "LatticeFunction":
        return LatticeFunction(self.terms, known=self.known.intersect(region), support=self.support)

    def to_float(self) -> "LatticeFunction":
        terms = {key: FloatScalar(c.to_complex()) for key, c in self.terms.items()}
        if self.known.is_full():
            return LatticeFunction(terms)
        return LatticeFunction(terms, known=self.known, support=self.support)

    def __repr__(self) -> str:
        return f"LatticeFunction({len(self.terms)} terms, window={self.window})"


def lattice_delta(k: int, m: int = 0, c: Any = 1) -> LatticeFunction:
    """c e^{imx} delta_{2p,k}."""
    return LatticeFunction({(m, k): c})


# ---------------------------------------------------------------------------
# trust propagation
# ---------------------------------------------------------------------------


def _row_window(known: Region, support: Region, rows: list[int]) -> tuple[Optional[int], Optional[int]]:
    if known.is_full():
        return (None, None)
    if support.empty:
        return (None, None)
    # variables 0 = s, 1 = d of the probe point; rows are (s - d)/2
    bad = []
    for coeffs, bound in known.violations((0, 1), (1, 1)):
        octagon = Octagon(2)
        support.constrain(octagon, (0, 1), (1, 1))
        octagon.add(coeffs, bound)
        if not octagon.close():
            continue
        lo = octagon.inf({0: 1, 1: -1}) / 2
        hi = octagon.sup({0: 1, 1: -1}) / 2
        bad.append((lo if lo == -INF else float(_ceil(lo)), hi if hi == INF else float(_floor(hi))))
    return choose_window(complement_union(bad), rows)


def _ceil(v: float) -> int:
    return int(math.ceil(v - 1e-9))


def _floor(v: float) -> int:
    return int(math.floor(v + 1e-9))


def _product_trust(f: LatticeFunction, g: LatticeFunction, out_rows: list[int]) -> tuple[Region, Region]:
    """Known rows and support of f * g.

    Variables: 0 = S (s of output = s of f), 1 = D (d of output = d of g),
    2 = T (the contracted index, s of g = -d of f).
    """
    f_point = ((0, 1), (2, -1))
    g_point = ((2, 1), (1, 1))
    base = Octagon(3)
    f.support.constrain(base, *f_point)
    g.support.constrain(base, *g_point)
    if not base.close():
        return Region.full(), Region.nothing()

    def span(coeffs: dict[int, int], scale: int) -> tuple[Optional[int], Optional[int]]:
        lo = base.inf(coeffs) / scale
        hi = base.sup(coeffs) / scale
        return (None if lo == -INF else _ceil(lo), None if hi == INF else _floor(hi))

    support = Region(
        k=span({0: 1, 1: -1}, 2), m=span({0: 1, 1: 1}, 2), s=span({0: 1}, 1), d=span({1: 1}, 1)
    ).closed()

    if f.known.is_full() and g.known.is_full():
        return Region.full(), support
    bad = []
    probes = []
    if not f.known.is_full():
        probes.extend(f.known.violations(*f_point))
    if not g.known.is_full():
        probes.extend(g.known.violations(*g_point))
    for coeffs, bound in probes:
        octagon = Octagon(3)
        f.support.constrain(octagon, *f_point)
        g.support.constrain(octagon, *g_point)
        octagon.add(coeffs, bound)
        if not octagon.close():
            continue
        lo = octagon.inf({0: 1, 1: -1}) / 2
        hi = octagon.sup({0: 1, 1: -1}) / 2
        bad.append((lo if lo == -INF else float(_ceil(lo)), hi if hi == INF else float(_floor(hi))))
    lo, hi = choose_window(complement_union(bad), out_rows)
    return Region.rows(lo, hi), support


# ---------------------------------------------------------------------------
# core operations
# ---------------------------------------------------------------------------


def wigner_transform(psi: CircleFunction, phi: CircleFunction) -> LatticeFunction:
    """(1/2pi) int psi(x-y) phi(x+y) e^{2iyp} dy, exactly.

    psi = sum a_j e^{ijx}, phi = sum b_l e^{ilx} give
    sum a_j b_l e^{i(j+l)x} delta_{2p, j-l}.
    """
    out: dict[tuple[int, int], Coefficient] = {}
    for j, a in psi.terms.items():
        for l, b in phi.terms.items():
            _accumulate(out, (j + l, j - l), a * b)
    return LatticeFunction(out)


def star(f: LatticeFunction, g: LatticeFunction) -> LatticeFunction:
    """Groenewold star product, summed bilinearly over the basis rule."""
    left: dict[int, list] = defaultdict(list)
    for (m, k), c in f.terms.items():
        left[k - m].append((m, k, c))
    right: dict[int, list] = defaultdict(list)
    for (m, k), c in g.terms.items():
        right[k + m].append((m, k, c))
    out: dict[tuple[int, int], Coefficient] = {}
    for key, lterms in left.items():
        rterms = right.get(key)
        if not rterms:
            continue
        for m1, _, c1 in lterms:
            for m2, k2, c2 in rterms:
                _accumulate(out, (m1 + m2, k2 + m1), c1 * c2)
    known, support = _product_trust(f, g, sorted({k for _, k in out}))
    if support.empty:
        return LatticeFunction.zero()
    if known.is_full():
        return LatticeFunction(out)
    return LatticeFunction(out, known=known, support=support)


def _power(base: Fraction, d: int) -> Fraction:
    return base**d if d else Fraction(1)


def star_symbol_left(s: Symbol, f: LatticeFunction) -> LatticeFunction:
    """Left action of a symbol: c e^{imx} p^d on c' e^{im'x} d_{2p,k'} gives
    c c' ((k'+m+m')/2)^d e^{i(m+m')x} d_{2p,k'+m}."""
    out: dict[tuple[int, int], Coefficient] = {}
    for m, d, c in s.terms:
        for (m2, k2), c2 in f.terms.items():
            weight = _power(Fraction(k2 + m + m2, 2), d)
            if weight:
                _accumulate(out, (m + m2, k2 + m), c * c2 * weight)
    return _shifted_result(out, f, [(m, m) for m in s.modes()])


def star_symbol_right(f: LatticeFunction, s: Symbol) -> LatticeFunction:
    """Right action: c' e^{im'x} d_{2p,k'} times c e^{imx} p^d gives
    c c' ((k'-m-m')/2)^d e^{i(m+m')x} d_{2p,k'-m}."""
    out: dict[tuple[int, int], Coefficient] = {}
    for m, d, c in s.terms:
        for (m2, k2), c2 in f.terms.items():
            weight = _power(Fraction(k2 - m - m2, 2), d)
            if weight:
                _accumulate(out, (m + m2, k2 - m), c * c2 * weight)
    return _shifted_result(out, f, [(m, -m) for m in s.modes()])


def _shifted_result(out: dict, f: LatticeFunction, shifts: list[tuple[int, int]]) -> LatticeFunction:
    if f.known.is_full():
        return LatticeFunction(out)
    known = Region.full()
    support = Region.nothing()
    for dm, dk in shifts:
        known = known.intersect(f.known.shift(dm, dk))
        support = support.hull(f.support.shift(dm, dk))
    return LatticeFunction(out, known=known, support=support)


def conjugate(f: LatticeFunction) -> LatticeFunction:
    """Complex conjugation: coefficient conjugated, m -> -m, k kept."""
    terms = {(-m, k): c.conjugate() for (m, k), c in f.terms.items()}
    if f.known.is_full():
        return LatticeFunction(terms)
    return LatticeFunction(terms, known=f.known.conj(), support=f.support.conj())


def star_bar(f: LatticeFunction, g: LatticeFunction) -> LatticeFunction:
    """The sign-flipped product conj(conj(f) * conj(g))."""
    return conjugate(star(conjugate(f), conjugate(g)))


def sesqui_bracket(s: Symbol, f: LatticeFunction) -> LatticeFunction:
    """[s, f] for the sesquilinear product: s * conj(f) - f * conj(s)."""
    return star_symbol_left(s, conjugate(f)) - star_symbol_right(f, s.conjugate())


def _row_interval(region: Region) -> tuple[float, float]:
    closed = region.closed()
    if closed.empty:
        return (INF, -INF)
    lo, hi = closed.k
    return (-INF if lo is None else lo, INF if hi is None else hi)


def pointwise_mul(f: LatticeFunction, g: LatticeFunction) -> LatticeFunction:
    """Ordinary product: rows matched in k, modes convolved."""
    rows_f: dict[int, list] = defaultdict(list)
    for (m, k), c in f.terms.items():
        rows_f[k].append((m, c))
    out: dict[tuple[int, int], Coefficient] = {}
    for (m2, k), c2 in g.terms.items():
        for m1, c1 in rows_f.get(k, ()):
            _accumulate(out, (m1 + m2, k), c1 * c2)
    if f.known.is_full() and g.known.is_full():
        return LatticeFunction(out)
    # a row is trusted when each factor is either complete or known to vanish there
    bad = []
    for h in (f, g):
        if h.known.is_full():
            continue
        lo, hi = h.window
        rs_lo, rs_hi = _row_interval(h.support)
        w_lo = -INF if lo is None else lo
        w_hi = INF if hi is None else hi
        if w_lo > w_hi:
            bad.append((rs_lo, rs_hi))
            continue
        if rs_lo < w_lo:
            bad.append((rs_lo, w_lo - 1))
        if rs_hi > w_hi:
            bad.append((w_hi + 1, rs_hi))
    lo, hi = choose_window(complement_union(bad), sorted({k for _, k in out}))
    sf, sg = f.support.closed(), g.support.closed()
    if sf.empty or sg.empty:
        return LatticeFunction.zero()

    def add(a, b):
        return (
            None if a[0] is None or b[0] is None else a[0] + b[0],
            None if a[1] is None or b[1] is None else a[1] + b[1],
        )

    # s and d of the product pick up the other factor's mode
    support = Region(k=sf.k, m=add(sf.m, sg.m), s=add(sf.s, sg.m), d=add(sf.d, sg.m)).intersect(
        Region(k=sg.k, s=add(sg.s, sf.m), d=add(sg.d, sf.m))
    )
    return LatticeFunction(out, known=Region.rows(lo, hi), support=support)


def phase_trace(f: LatticeFunction) -> TraceResult:
    """(1/2pi) int dx sum_p f = sum_k c_{0,k}, with a completeness flag."""
    value: Coefficient = ZERO
    for (m, k), c in sorted(f.terms.items(), key=lambda t: (t[0][1], t[0][0])):
        if m == 0:
            value = value + c
    if f.is_exact is False and isinstance(value, ExactScalar):
        value = FloatScalar(value.to_complex())
    return TraceResult(value, _trace_complete(f))


def _trace_complete(f: LatticeFunction) -> bool:
    if f.known.is_full():
        return True
    on_axis = Region(m=(0, 0))
    reach = f.support.intersect(on_axis)
    if reach.empty:
        return True
    trusted = f.known.intersect(on_axis)
    if trusted.empty:
        return False
    r_lo, r_hi = reach.k
    t_lo, t_hi = trusted.k
    lo_ok = t_lo is None or (r_lo is not None and r_lo >= t_lo)
    hi_ok = t_hi is None or (r_hi is not None and r_hi <= t_hi)
    return lo_ok and hi_ok


def lone_star_trace(f: LatticeFunction, g: LatticeFunction) -> TraceResult:
    """trace(f * g) computed through the pointwise product."""
    return phase_trace(pointwise_mul(f, g))


def eval_point(f: LatticeFunction, x: float, k: int) -> complex:
    """sum_m c_{m,k} e^{imx}; k must be a trusted row."""
    if not f.row_complete(k):
        raise ValueError(f"row k={k} lies outside the trusted window {f.window}")
    return f.row(k).evaluate(x)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def to_json(f: LatticeFunction) -> dict[str, Any]:
    """Canonical form: terms sorted by (k, m)."""
    items = []
    for (m, k), c in sorted(f.terms.items(), key=lambda t: (t[0][1], t[0][0])):
        if isinstance(c, ExactScalar):
            items.append(
                {
                    "m": m,
                    "k": k,
                    "re_rat": _rat(c.re_rat),
                    "re_root2": _rat(c.re_root2),
                    "im_rat": _rat(c.im_rat),
                    "im_root2": _rat(c.im_root2),
                }
            )
        else:
            items.append({"m": m, "k": k, "re": c.re, "im": c.im})
    return {"window": list(f.window), "terms": items}


def from_json(data: Mapping[str, Any] | str) -> LatticeFunction:
    if isinstance(data, str):
        data = json.loads(data)
    terms = {}
    for item in data["terms"]:
        if "re_rat" in item:
            c: Any = ExactScalar(
                Fraction(item["re_rat"]), Fraction(item["re_root2"]), Fraction(item["im_rat"]), Fraction(item["im_root2"])
            )
        else:
            c = FloatScalar(complex(item["re"], item["im"]))
        terms[(item["m"], item["k"])] = c
    lo, hi = data.get("window", [None, None])
    if lo is None and hi is None:
        return LatticeFunction(terms)
    return LatticeFunction(terms, window=(lo, hi))


# doubled momentum convenience for callers reading the table in p
def p_of(k: int) -> Fraction:
    return Fraction(k, 2)


def iter_rows(f: LatticeFunction) -> Iterator[tuple[int, CircleFunction]]:
    for k in f.rows():
        yield k, f.row(k)
