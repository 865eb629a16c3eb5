"""Constructors for the wave functions, Wigner functions and hybrids.

Bessel series are truncated, so every infinite object carries a ``known``
region (where the stored coefficients are exact) and a ``support`` region.
Closed forms and Wigner-transform routes are both provided so that each object
can be cross-checked against an independent construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Literal, Optional

from .numerics import ExactScalar, SQRT2, factorial
from .phasespace import CircleFunction, LatticeFunction, wigner_transform
from .regions import Region

Chirality = Literal["R", "L", "NC"]


@dataclass(frozen=True)
class TruncationSpec:
    """Truncation parameters.

    k_max is the momentum ceiling in p (lattice rows up to 2 * k_max), mode_max
    the highest Fourier mode kept in Bessel series, coupling the Liouville m.
    """

    k_max: int = 10
    mode_max: int = 24
    coupling: Fraction = Fraction(1)

    def __post_init__(self) -> None:
        if self.k_max < 0:
            raise ValueError("k_max must be nonnegative")
        if self.mode_max < self.k_max:
            raise ValueError("mode_max must be at least k_max")
        object.__setattr__(self, "coupling", Fraction(self.coupling))


DEFAULT = TruncationSpec()


def epsilon(n: int) -> int:
    return 1 if n == 0 else 2


def sqrt_epsilon(n: int) -> ExactScalar:
    return ExactScalar(1) if n == 0 else SQRT2


def _inv_fact(n: int) -> Fraction:
    """1/n!, zero for negative n."""
    return Fraction(0) if n < 0 else Fraction(1, factorial(n))


# ---------------------------------------------------------------------------
# circle functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Series:
    """A circle function with the range of modes it is exact on and supported on."""

    func: CircleFunction
    known: tuple[Optional[int], Optional[int]] = (None, None)
    support: tuple[Optional[int], Optional[int]] = (None, None)

    def conj(self) -> "Series":
        def neg(b):
            return (None if b[1] is None else -b[1], None if b[0] is None else -b[0])

        return Series(self.func.conjugate(), neg(self.known), neg(self.support))

    def __mul__(self, c: Any) -> "Series":
        return Series(self.func * c, self.known, self.support)


def _bessel_terms(n: int, spec: TruncationSpec, terms: Optional[int]) -> int:
    if terms is not None:
        return terms
    return max(0, (spec.mode_max - n) // 2)


def bessel_j(n: int, spec: TruncationSpec = DEFAULT, terms: Optional[int] = None) -> CircleFunction:
    """J_n(m e^{ix}) = sum_{k<=K} (-1)^k (m/2)^{n+2k} e^{i(n+2k)x} / (k!(n+k)!)."""
    return bessel_series(n, spec, terms).func


def bessel_series(n: int, spec: TruncationSpec = DEFAULT, terms: Optional[int] = None) -> Series:
    if n < 0:
        raise ValueError("Bessel order must be nonnegative")
    K = _bessel_terms(n, spec, terms)
    half = spec.coupling / 2
    out = {}
    for k in range(K + 1):
        out[n + 2 * k] = Fraction((-1) ** k, factorial(k) * factorial(n + k)) * half ** (n + 2 * k)
    return Series(CircleFunction(out), known=(None, n + 2 * K), support=(n, None))


def _neumann_coeffs(n: int) -> dict[int, Fraction]:
    """A_n(z) = sum_j c_j z^{-j} at unit coupling, keyed by j."""
    if n == 0:
        return {0: Fraction(1)}
    return {
        n - 2 * k: Fraction(2**n * n * factorial(n - k - 1), factorial(k) * 4**k) for k in range(n // 2 + 1)
    }


def neumann_a(n: int, spec: TruncationSpec = DEFAULT) -> CircleFunction:
    """Neumann polynomial A_n(m e^{ix}), a polynomial in e^{-ix}."""
    if n < 0:
        raise ValueError("Neumann order must be nonnegative")
    m = spec.coupling
    if m == 0:
        raise ValueError("A_n(m e^{ix}) is singular at m = 0; use rescaled_pair")
    return CircleFunction({-j: c / m**j for j, c in _neumann_coeffs(n).items()})


def neumann_series(n: int, spec: TruncationSpec = DEFAULT) -> Series:
    return Series(neumann_a(n, spec), support=(-n, 0))


def plane_wave(n: int, basis: Chirality = "R") -> CircleFunction:
    """Orthonormal free solution phi_n for the chosen basis."""
    if basis == "R":
        return CircleFunction.monomial(n)
    if basis == "L":
        return CircleFunction.monomial(-n)
    if basis == "NC":
        if n == 0:
            return CircleFunction.constant(1)
        half = sqrt_epsilon(n) * Fraction(1, 2)
        return CircleFunction({-n: half, n: half * (-1) ** n})
    raise ValueError(f"unknown basis {basis!r}")


def _exact(f: CircleFunction) -> Series:
    modes = f.modes()
    if not modes:
        return Series(f, support=(0, -1))
    return Series(f, support=(modes[0], modes[-1]))


def orthonormality_check(j: int, k: int, spec: TruncationSpec = DEFAULT) -> ExactScalar:
    """(1/2pi) int A_j J_k dx with the truncated Bessel series."""
    return neumann_a(j, spec).pairing(bessel_j(k, spec))


def inhomogeneity(n: int) -> CircleFunction:
    """(-d^2/dx^2 + e^{2ix} - n^2) A_n(e^{ix})."""
    a = neumann_a(n)
    return -a.derivative(2) + CircleFunction.monomial(2) * a - a * (n * n)


def inhomogeneity_expected(n: int) -> CircleFunction:
    if n % 2:
        return CircleFunction.monomial(1, 2 * n)
    return CircleFunction.monomial(2, epsilon(n))


def generating_function_residual(n_max: int) -> dict[tuple[int, int], Fraction | ExactScalar]:
    """Mismatch between sum_{n<=N} sqrt(eps_n) J_n(z) conj(phi_n^NC) and e^{iz sin x}.

    Both sides are expanded as polynomials in z (keys (z power, x mode)) and
    compared for z powers up to N, where the truncated sum is complete.
    """
    lhs: dict[tuple[int, int], Any] = {}
    for n in range(n_max + 1):
        phi_bar = plane_wave(n, "NC").conjugate() * sqrt_epsilon(n)
        for k in range((n_max - n) // 2 + 1):
            a = n + 2 * k
            cz = Fraction((-1) ** k, 2**a * factorial(k) * factorial(n + k))
            for mode, c in phi_bar.terms.items():
                key = (a, mode)
                lhs[key] = lhs.get(key, 0) + c * cz
    rhs: dict[tuple[int, int], Any] = {}
    # e^{iz sin x} = sum_a (z/2)^a (e^{ix} - e^{-ix})^a / a!
    for a in range(n_max + 1):
        for r in range(a + 1):
            coeff = Fraction(math.comb(a, r) * (-1) ** (a - r), 2**a * factorial(a))
            key = (a, 2 * r - a)
            rhs[key] = rhs.get(key, 0) + coeff
    out = {}
    for key in set(lhs) | set(rhs):
        diff = ExactScalar(0) + lhs.get(key, 0) - rhs.get(key, 0)
        if not diff.is_zero():
            out[key] = diff
    return out


# ---------------------------------------------------------------------------
# Wigner transforms with trust bookkeeping
# ---------------------------------------------------------------------------


def _double(b: tuple[Optional[int], Optional[int]]) -> tuple[Optional[int], Optional[int]]:
    return (None if b[0] is None else 2 * b[0], None if b[1] is None else 2 * b[1])


def wigner(psi: Series, phi: Series) -> LatticeFunction:
    """Wigner transform carrying the box trust region s in 2 known(psi), d in 2 known(phi)."""
    raw = wigner_transform(psi.func, phi.func)
    if psi.known == (None, None) and phi.known == (None, None):
        return raw
    known = Region(s=_double(psi.known), d=_double(phi.known)).closed()
    support = Region(s=_double(psi.support), d=_double(phi.support)).closed()
    return LatticeFunction(raw.terms, known=known, support=support)


def _psi(n: int, spec: TruncationSpec) -> Series:
    return bessel_series(n, spec)


def _chi(n: int, spec: TruncationSpec) -> Series:
    return neumann_series(n, spec)


def _phi(n: int, basis: Chirality) -> Series:
    return _exact(plane_wave(n, basis))


def _rows(spec: TruncationSpec) -> Region:
    return Region.rows(None, 2 * spec.k_max)


# ---------------------------------------------------------------------------
# f_n: three routes
# ---------------------------------------------------------------------------


def _wf_support(n: int) -> Region:
    return Region(k=(2 * n, None), s=(2 * n, None), d=(None, -2 * n)).closed()


def wf(n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """f_n from the closed double-factorial series, rows p <= k_max."""
    m2 = spec.coupling**2
    terms = {}
    for p in range(n, spec.k_max + 1):
        pref = Fraction((-1) ** (p - n), 4**p) * m2**p
        for k in range(p - n + 1):
            c = pref / (factorial(k) * factorial(n + k) * factorial(p - k) * factorial(p - k - n))
            terms[(2 * (n - p + 2 * k), 2 * p)] = c
    return LatticeFunction(terms, known=_rows(spec), support=_wf_support(n))


def wf_by_wigner(n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    psi = _psi(n, spec)
    return wigner(psi, psi.conj())


def wf_by_recursion(n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """Forward recursion of the second-order momentum difference equation."""
    m2 = spec.coupling**2
    cos2 = CircleFunction({2: Fraction(1, 2), -2: Fraction(1, 2)}) * m2
    sin2sq = CircleFunction({0: Fraction(1, 2), 4: Fraction(-1, 4), -4: Fraction(-1, 4)}) * (m2 * m2)
    rows: dict[int, CircleFunction] = {}
    zero = CircleFunction()
    for p in range(n, spec.k_max + 1):
        if p == n:
            rows[p] = CircleFunction.constant(Fraction(1, 4**n * factorial(n) ** 2) * m2**n)
            continue
        acc = cos2 * rows.get(p - 1, zero) * Fraction(2 * p - 1, 2 * p)
        prev2 = rows.get(p - 2, zero)
        if not prev2.is_zero():
            acc = acc - sin2sq * prev2 * Fraction(1, 4 * p * (p - 1))
        rows[p] = acc * Fraction(-1, p * p - n * n)
    return LatticeFunction.from_rows({2 * p: r for p, r in rows.items()}, known=_rows(spec), support=_wf_support(n))


def wf_pair(j: int, k: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """f_{j,k} = W(psi_j, conj psi_k)."""
    return wigner(_psi(j, spec), _psi(k, spec).conj())


# ---------------------------------------------------------------------------
# dual WFs
# ---------------------------------------------------------------------------


def dual_wf(k: int, n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """f~_{k,n} = W(conj chi_k, chi_n); finite and exact."""
    return wigner(_chi(k, spec).conj(), _chi(n, spec))


def dual_wf_closed(n: int) -> LatticeFunction:
    """Diagonal f~_n from the single-sum closed form (unit coupling)."""
    if n == 0:
        return LatticeFunction({(0, 0): 1})
    half = n // 2
    terms = {}
    for p in range(0, n + 1):
        for k in range(max(0, n - p - half), min(half, n - p) + 1):
            c = Fraction(4**p * n * n * factorial(n - k - 1) * factorial(k + p - 1), factorial(k) * factorial(n - p - k))
            key = (2 * (n - p - 2 * k), 2 * p)
            terms[key] = terms.get(key, 0) + c
    return LatticeFunction(terms)


def dual_wf_times_h_closed(n: int, side: Literal["right", "left"] = "right") -> LatticeFunction:
    """Closed forms of f~_n * H ("right") and Hbar * f~_n ("left")."""
    base = dual_wf_closed(n) * (n * n)
    sign = 1 if side == "right" else -1
    half = n // 2
    extra: dict[tuple[int, int], Fraction] = {}
    if n == 0:
        extra[(2 * sign, -2)] = Fraction(1)
    elif n % 2:
        for p in range(0, half + 1):
            c = Fraction(n * n * factorial(half + p) * 4 ** (1 + p), factorial(half - p))
            extra[(2 * sign * (1 + p), 2 * p)] = c
    else:
        for p in range(-1, half):
            c = Fraction(2 * n * factorial(half + p) * 4 ** (1 + p), factorial(half - p - 1))
            extra[(2 * sign * (2 + p), 2 * p)] = c
    return base + LatticeFunction(extra)


# ---------------------------------------------------------------------------
# hybrids
# ---------------------------------------------------------------------------


def hybrid_g(n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """g_n = W(psi_n, chi_n)."""
    return hybrid_g_pair(n, n, spec)


def hybrid_g_pair(j: int, k: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    return wigner(_psi(j, spec), _chi(k, spec))


def hybrid_g_closed(n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """g_n from the single-sum closed form (unit coupling), rows p <= k_max."""
    terms = {}
    for p in range(0, spec.k_max + 1):
        if n == 0:
            terms[(2 * p, 2 * p)] = Fraction((-1) ** p, 4**p * factorial(p) ** 2)
            continue
        # the prefactor is n / 4^{p-n}; a 1/(n-1)! here would break trace(g_n) = 1
        pref = Fraction((-1) ** (p - n) * n) / Fraction(4) ** (p - n)
        for k in range(n // 2 + 1):
            c = pref * Fraction((-1) ** k * factorial(n - k - 1), 16**k * factorial(k)) * _inv_fact(p + k) * _inv_fact(p + k - n)
            if c:
                terms[(2 * (p - n) + 4 * k, 2 * p)] = c
    support = Region(k=(2 * (n - n // 2), None), s=(2 * n, None), d=(-2 * n, 0)).closed()
    return LatticeFunction(terms, known=_rows(spec), support=support)


def hybrid_h_pair(j: int, k: int, basis: Chirality = "R", spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """h_{j,k} = W(psi_j, conj phi_k)."""
    return wigner(_psi(j, spec), _phi(k, basis).conj())


def hybrid_h(n: int, chirality: Chirality = "R", spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    return hybrid_h_pair(n, n, chirality, spec)


def hybrid_h_closed(n: int, chirality: Chirality = "R", spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """Chiral closed forms, and the non-chiral combination of the two."""
    if chirality == "R":
        return nondiag_h_closed(n, n, spec)
    if chirality == "L":
        return nondiag_h_closed(n, -n, spec)
    if chirality == "NC":
        if n == 0:
            return hybrid_h_closed(0, "R", spec)
        combo = hybrid_h_closed(n, "L", spec) + hybrid_h_closed(n, "R", spec) * (-1) ** n
        return combo * (sqrt_epsilon(n) * Fraction(1, 2))
    raise ValueError(f"unknown chirality {chirality!r}")


def dual_hybrid_pair(j: int, k: int, basis: Chirality = "R", spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """h~_{j,k} = W(phi_j, chi_k)."""
    return wigner(_phi(j, basis), _chi(k, spec))


def dual_hybrid_h(n: int, chirality: Chirality = "R", spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """h~_n = W(phi_n, chi_n); h~_0 = delta_{p,0} from the integral definition."""
    return dual_hybrid_pair(n, n, chirality, spec)


def dual_hybrid_h_closed(n: int, chirality: Literal["R", "L"] = "R") -> LatticeFunction:
    """The displayed chiral closed forms, including their overall factor n."""
    terms = {}
    half = n // 2
    if n == 0:
        return LatticeFunction(terms)
    for p in range(-n, n + 1):
        if chirality == "R":
            if not 0 <= n - p <= half:
                continue
            c = Fraction(2) ** (2 * p - n) * n * factorial(p - 1) * _inv_fact(n - p)
            mode = 2 * (n - p)
        else:
            if not 0 <= -p <= half:
                continue
            c = Fraction(2) ** (2 * p + n) * n * factorial(n + p - 1) * _inv_fact(-p)
            mode = -2 * (n + p)
        if c:
            terms[(mode, 2 * p)] = c
    return LatticeFunction(terms)


def nondiag_h(n: int, l: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """h_{n,l} = W(psi_n, e^{-ilx}) for any integer l."""
    return wigner(_psi(n, spec), _exact(CircleFunction.monomial(-l)))


def nondiag_h_closed(n: int, l: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """Closed form of h_{n,l}, rows p <= k_max, unit coupling."""
    terms = {}
    for twop in range(n + l, 2 * spec.k_max + 1, 2):
        a = (twop - l - n) // 2
        b = (twop - l + n) // 2
        c = Fraction((-1) ** a) / (Fraction(2) ** (twop - l) * factorial(a) * factorial(b))
        terms[(twop - 2 * l, twop)] = c
    support = Region(s=(2 * n, None), d=(-2 * l, -2 * l)).closed()
    return LatticeFunction(terms, known=_rows(spec), support=support)


def nondiag_h_dual(l: int, n: int, spec: TruncationSpec = DEFAULT) -> LatticeFunction:
    """h~_{l,n} = W(e^{ilx}, chi_n) for any integer l; exact and finite."""
    return wigner(_exact(CircleFunction.monomial(l)), _chi(n, spec))


def nondiag_h_dual_closed(l: int, n: int) -> LatticeFunction:
    """The displayed closed form of h~_{l,n}, with its overall factor n."""
    terms = {}
    for k in range(n // 2 + 1):
        twop = l + n - 2 * k
        c = Fraction(2) ** (twop - l) * n * factorial(n - k - 1) * _inv_fact(k) if n else Fraction(0)
        if c:
            terms[(2 * l - twop, twop)] = c
    return LatticeFunction(terms)


def free_wf(k: int, n: int, basis: Chirality = "R") -> LatticeFunction:
    """e_{k,n} = W(phi_k, conj phi_n)."""
    return wigner(_phi(k, basis), _phi(n, basis).conj())


# ---------------------------------------------------------------------------
# free-particle limit
# ---------------------------------------------------------------------------


def rescaled_pair(n: int, m: Fraction | int, terms: Optional[int] = None) -> tuple[CircleFunction, CircleFunction]:
    """(m^n A_n(m e^{ix}), m^{-n} J_n(m e^{ix})), polynomial in m so m = 0 is allowed."""
    m = Fraction(m)
    K = terms if terms is not None else n + 4
    a = CircleFunction({-j: c * m ** (n - j) for j, c in _neumann_coeffs(n).items()})
    j = CircleFunction(
        {n + 2 * k: Fraction((-1) ** k, 2 ** (n + 2 * k) * factorial(k) * factorial(n + k)) * m ** (2 * k) for k in range(K + 1)}
    )
    return a, j


def free_limit_pair(n: int) -> tuple[CircleFunction, CircleFunction]:
    return CircleFunction.monomial(-n, 2**n * factorial(n)), CircleFunction.monomial(n, Fraction(1, 2**n * factorial(n)))


def rescaled_orthonormality(j: int, k: int, m: Fraction | int) -> ExactScalar:
    a, _ = rescaled_pair(j, m)
    _, b = rescaled_pair(k, m, terms=j + k + 2)
    return a.pairing(b)


def kernel_projection(n: int, k: int, m: Fraction | int, n_terms: Optional[int] = None) -> ExactScalar:
    """(1/(2pi)^2) int int m^n A_n^*(m e^{ix}) J(x, y) m^k A_k(m e^{iy}) with the kernel truncated.

    The kernel J(x, y) = sum_j m^{-2j} J_j(m e^{-ix}) J_j(m e^{iy}) factorizes, so
    the double integral is a sum of products of circle pairings.
    """
    n_terms = max(n, k) + 2 if n_terms is None else n_terms
    a_n, _ = rescaled_pair(n, m)
    a_k, _ = rescaled_pair(k, m)
    total = ExactScalar(0)
    for j in range(n_terms + 1):
        _, jj = rescaled_pair(j, m, terms=n_terms + 2)
        left = a_n.conjugate().pairing(jj.conjugate())
        right = jj.pairing(a_k)
        total = total + left * right
    return total


def kernel_positive_power(q: int, m: Fraction | int, n_terms: int = 6) -> ExactScalar:
    """Kernel integrated in y against e^{iqy}, q >= 1: every term vanishes."""
    total = ExactScalar(0)
    probe = CircleFunction.monomial(q)
    for j in range(n_terms + 1):
        _, jj = rescaled_pair(j, m, terms=n_terms + 2)
        total = total + jj.pairing(probe)
    return total


def kernel_limit_coefficients(n_terms: int) -> dict[int, Fraction]:
    """Coefficients of e^{in(y-x)} in the m = 0 kernel; they are those of I_0 at e^{i(y-x)/2}."""
    out = {}
    for n in range(n_terms + 1):
        _, b = free_limit_pair(n)
        out[n] = b.coefficient(n).as_fraction() ** 2
    return out
