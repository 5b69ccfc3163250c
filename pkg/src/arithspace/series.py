"""Certified Dirichlet-series evaluation and prefix-sum scans.

A certified evaluation pairs the partial sum ``sum_{n<=N} f(n) n^{-s}`` with
a radius that covers both the omitted tail (from a ``GrowthBound``) and the
floating-point error of the partial sum. Only ``Re(s) > alpha + 1`` is
certified: that is where the majorant ``sum C n^{alpha-sigma} log(2+n)^k``
converges.
"""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ._errors import DomainError, RegionError, check_capacity
from ._summation import compensated_cumsum, exact_sum, power_log_tail, power_log_total
from .characters import CharacterTable
from .functions import mobius, one, von_mangoldt
from .norms import TailedValue
from .operators import _checkpoints, convolve
from .tables import FunctionTable, GrowthBound, ValueKind

log = logging.getLogger(__name__)

_EPS = np.finfo(np.float64).eps

ZETA_BOUND = GrowthBound(1.0, 0.0, 0)
MANGOLDT_BOUND = GrowthBound(1.0, 0.0, 1)


@dataclass(frozen=True)
class SeriesEvaluation:
    s: complex
    partial: complex
    N: int
    tail_radius: float
    certified: bool

    def contains(self, z: complex) -> bool:
        return abs(complex(z) - self.partial) <= self.tail_radius

    def within(self, other: "SeriesEvaluation") -> bool:
        """True when this disc lies inside ``other``'s disc."""
        return abs(self.partial - other.partial) + self.tail_radius <= other.tail_radius

    def times(self, other: "SeriesEvaluation") -> tuple[complex, float]:
        """Centre and radius of a disc containing every product of the two discs."""
        ra, rb = self.tail_radius, other.tail_radius
        centre = self.partial * other.partial
        radius = abs(self.partial) * rb + abs(other.partial) * ra + ra * rb
        # rounding of the centre product
        radius += 4 * _EPS * abs(centre)
        return centre, radius

    def to_json(self) -> dict:
        return {
            "s": [self.s.real, self.s.imag],
            "value": [self.partial.real, self.partial.imag],
            "N": self.N,
            "tail": self.tail_radius,
            "certified": self.certified,
        }


def _terms(f: FunctionTable, s: complex, N: int | None = None) -> np.ndarray:
    N = f.N if N is None else N
    logn = np.log(np.arange(1, N + 1, dtype=np.float64))
    return f.as_float()[:N] * np.exp(-complex(s) * logn)


def dirichlet_polynomial(f: FunctionTable, s: complex, N: int | None = None) -> complex:
    """Uncertified finite sum ``sum_{n<=N} f(n) n^{-s}``, correctly rounded over computed terms."""
    return complex(exact_sum(_terms(f, s, N)))


def majorant_sum(sigma: float, N: int) -> TailedValue:
    """Partial sum of ``sum log(2+n)/n^sigma`` with a certified additive tail.

    The tail uses ``int_N^inf log(2+t) t^{-sigma} dt <= N^{1-sigma}
    (log(2+N)/(sigma-1) + 1/(sigma-1)^2)``; the summand decreases for every
    t >= 1 once sigma > 1.
    """
    if not sigma > 1.0:
        raise DomainError(f"majorant sum diverges for sigma={sigma} <= 1")
    check_capacity(N)
    n = np.arange(1, N + 1, dtype=np.float64)
    value = math.fsum((np.log(2.0 + n) * n ** (-sigma)).tolist())
    g = sigma - 1.0
    tail = N ** (-g) * (math.log(2.0 + N) / g + 1.0 / g ** 2) * (1.0 + 1e-12)
    # rounding of N terms, each a few ulps off
    tail += 8 * _EPS * value
    return TailedValue(value, float(tail), True)


def _rounding_radius(s: complex, bound: GrowthBound) -> float:
    # each term f(n) exp(-s log n) is off by about (2|s| log n + 6) ulps of its size;
    # bounded over all n so the radius does not depend on N
    beta = s.real - bound.alpha
    return 2 * _EPS * bound.C * (
        2 * abs(s) * power_log_total(beta, bound.k + 1) + 6 * power_log_total(beta, bound.k)
    )


def evaluate_dirichlet(
    f: FunctionTable, s: complex, bound: GrowthBound, N: int | None = None
) -> SeriesEvaluation:
    """Certified ``D(f; s)`` from the first ``N`` (default: all) table entries."""
    s = complex(s)
    N = f.N if N is None else int(N)
    if not 1 <= N <= f.N:
        raise DomainError(f"N={N} must lie in 1..{f.N}")
    if not s.real > bound.alpha + 1.0:
        raise RegionError(
            f"Re(s)={s.real} is outside the certified half-plane Re(s) > {bound.alpha + 1}"
        )
    head = f if N == f.N else f.resize(N)
    bound.verify(head)
    partial = dirichlet_polynomial(head, s)
    tail = bound.C * power_log_tail(N, s.real - bound.alpha, bound.k)
    return SeriesEvaluation(s, partial, N, float(tail + _rounding_radius(s, bound)), True)


def zeta(s: complex, N: int) -> SeriesEvaluation:
    return evaluate_dirichlet(one(N), s, ZETA_BOUND)


def inv_zeta(s: complex, N: int) -> SeriesEvaluation:
    return evaluate_dirichlet(mobius(N), s, ZETA_BOUND)


def neg_zeta_log_deriv(s: complex, N: int) -> SeriesEvaluation:
    return evaluate_dirichlet(von_mangoldt(N), s, MANGOLDT_BOUND)


def l_function(chi: CharacterTable, s: complex, N: int) -> SeriesEvaluation:
    return evaluate_dirichlet(chi.extend(N), s, ZETA_BOUND)


@dataclass(frozen=True)
class ProductCheck:
    """Residual ``|D(f*g) - D(f) D(g)|`` for finitely supported f, g."""

    residual: float
    magnitude: float  # |D(f) D(g)|
    length: int  # convolution length used

    def passed(self, rtol: float = 1e-10) -> bool:
        return self.residual <= rtol * (1.0 + self.magnitude)


def verify_product(
    f: FunctionTable, g: FunctionTable, s: complex, conv_length: int | None = None
) -> ProductCheck:
    """Check ``D(f*g; s) = D(f; s) D(g; s)`` with all three series as finite sums.

    ``f * g`` is supported up to ``supp(f) * supp(g)``, so the convolution is
    redone at that length. A shorter ``conv_length`` is honoured but logged,
    since it drops terms and breaks the identity.
    """
    s = complex(s)
    a, b = max(f.support(), 1), max(g.support(), 1)
    need = a * b
    length = need if conv_length is None else int(conv_length)
    if length < need:
        log.warning("convolution length %d < %d truncates f*g; expect a mismatch", length, need)
    length = max(length, a, b)
    check_capacity(length, "product convolution")
    h = convolve(f.resize(length), g.resize(length))
    df = dirichlet_polynomial(f.resize(a), s)
    dg = dirichlet_polynomial(g.resize(b), s)
    dh = dirichlet_polynomial(h, s)
    return ProductCheck(abs(dh - df * dg), abs(df * dg), length)


@dataclass(frozen=True)
class TwistedCheck:
    residual: float
    tolerance: float
    l_value: SeriesEvaluation

    @property
    def passed(self) -> bool:
        return self.residual <= self.tolerance


def twisted_series_check(
    f: FunctionTable, chi: CharacterTable, s: complex, support_cap: int
) -> TwistedCheck:
    """Check ``D(f*chi; s) = D(f; s) L(s, chi)`` for f cut to ``n <= support_cap``.

    The left side sums ``(f*chi)(n) n^{-s}`` over ``n <= cap^2`` with chi left
    untruncated; it differs from ``D(f) L`` by at most ``sum |f(d)| d^{-sigma}``
    times the L-tail past ``cap``. The right side uses L certified at
    ``N = cap``, whose radius enters the tolerance through ``|D(f)|``.
    """
    s = complex(s)
    if not s.real > 1.0:
        raise RegionError(f"twisted series check needs Re(s) > 1, got {s.real}")
    a = int(support_cap)
    fa = f.resize(a)
    length = a * a
    check_capacity(length, "twisted convolution")
    left = dirichlet_polynomial(convolve(fa.resize(length), chi.extend(length)), s)
    df = dirichlet_polynomial(fa, s)
    L = l_function(chi, s, a)
    residual = abs(left - df * L.partial)
    abs_df = math.fsum((fa.abs() * np.arange(1, a + 1, dtype=np.float64) ** (-s.real)).tolist())
    tolerance = (abs_df + abs(df)) * L.tail_radius + 1e-10 * (1.0 + abs(df * L.partial))
    return TwistedCheck(residual, tolerance, L)


# -- prefix sums and scans -----------------------------------------------------


def partial_sums(f: FunctionTable) -> FunctionTable:
    """``M_f(x) = sum_{n<=x} f(n)``; exact for integer tables."""
    if f.value_kind is ValueKind.ExactInt:
        vals = f.values
        if vals.dtype != object and int(np.abs(vals).max()) * f.N >= 2 ** 62:
            vals = vals.astype(object)
        return FunctionTable(np.cumsum(vals), ValueKind.ExactInt, f"M[{f.label}]")
    return FunctionTable(compensated_cumsum(f.values), f.value_kind, f"M[{f.label}]")


@dataclass(frozen=True)
class ScanReport:
    X: int
    statistic_label: str
    sup_value: float
    argmax_x: int
    checkpoints: list[tuple[int, float]]
    summary: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "X": self.X,
            "statistic": self.statistic_label,
            "sup_value": self.sup_value,
            "argmax_x": self.argmax_x,
            "checkpoints": [[x, v] for x, v in self.checkpoints],
            **self.summary,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["x", "value"])
        w.writerows((x, repr(v)) for x, v in self.checkpoints)
        return buf.getvalue()


def mertens_scan(X: int, theta: float = 0.5) -> ScanReport:
    """Sup of ``|M(x)| / x^theta`` over ``1 <= x <= X`` with power-of-10 checkpoints."""
    if not 0.0 < theta < 1.0:
        raise DomainError(f"theta must lie in (0, 1), got {theta}")
    X = int(X)
    M = partial_sums(mobius(X)).values
    x = np.arange(1, X + 1, dtype=np.float64)
    stat = np.abs(M).astype(np.float64) / x ** theta
    i = int(np.argmax(stat))
    pts = [(c, float(stat[c - 1])) for c in _checkpoints(X)]
    return ScanReport(
        X, f"|M(x)|/x^{theta:g}", float(stat[i]), i + 1, pts, {"M(X)": int(M[-1])}
    )


def chebyshev_psi(X: int) -> np.ndarray:
    """``psi(x) = sum_{n<=x} Lambda(n)`` for x = 1..X (compensated)."""
    return compensated_cumsum(von_mangoldt(X).values)


def psi_scan(X: int) -> ScanReport:
    """Sup of ``|psi(x) - x| / x`` over ``2 <= x <= X``."""
    X = int(X)
    if X < 2:
        raise DomainError("psi scan needs X >= 2")
    psi = chebyshev_psi(X)
    x = np.arange(1, X + 1, dtype=np.float64)
    stat = np.abs(psi - x) / x
    i = int(np.argmax(stat[1:])) + 1
    pts = [(c, float(stat[c - 1])) for c in _checkpoints(X) if c >= 2]
    return ScanReport(X, "|psi(x)-x|/x", float(stat[i]), i + 1, pts, {"psi(X)": float(psi[-1])})
