"""The hybrid U-norm and the log-sup norm, with certification status.

Two different norms live here and are never mixed:

* ``HybridU``: a weighted l2 coefficient part ``sup_{s>1} (sum |f(n)|^2 /
  (n^{2s} log^2(2+n)))^{1/2}`` plus a log-average part ``sup_{x>=1}
  |sum_{n<=x} f(n)/n| / log(2+x)``.
* ``LogSup``: ``sup_n |f(n)| / log(2+n)``.

Every summand of the l2 part is nonincreasing in s, so its sup over s > 1 is
the monotone limit at s = 1, which is what ``hilbert_sup`` evaluates.

Between consecutive integers the partial sum ``sum_{n<=x} f(n)/n`` is constant
while ``1/log(2+x)`` decreases, so the sup over real ``x`` in ``[n, n+1)`` sits
at ``x = n`` and an integer sweep is exhaustive over ``[1, X]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from ._errors import DivergenceError, DomainError
from ._summation import compensated_cumsum, power_log_tail
from .tables import FunctionTable, GrowthBound, log2p

HILBERT_SUP_NOTE = (
    "sup over s>1 evaluated at s=1: each summand is nonincreasing in s, "
    "so the sup is the monotone limit s->1+"
)


class NormKind(str, enum.Enum):
    HybridU = "HybridU"
    LogSup = "LogSup"

    @classmethod
    def parse(cls, kind) -> "NormKind":
        if isinstance(kind, cls):
            return kind
        key = str(kind).lower()
        if key in ("hybrid", "hybridu", "u"):
            return cls.HybridU
        if key in ("logsup", "log", "log_sup"):
            return cls.LogSup
        raise DomainError(f"unknown norm kind {kind!r}; expected hybrid or logsup")


@dataclass(frozen=True)
class TailedValue:
    """A partial value with a bound on what the truncation left out.

    For the l2 part ``tail`` bounds the omitted *squared* sum, so the true
    value lies in ``[value, upper]`` with ``upper = sqrt(value**2 + tail)``.
    """

    value: float
    tail: float
    certified: bool
    note: str = ""

    @property
    def upper(self) -> float:
        return math.sqrt(self.value ** 2 + self.tail)

    def __iter__(self):
        return iter((self.value, self.tail, self.certified))


class LogAverage(NamedTuple):
    value: float
    argmax: int


@dataclass(frozen=True)
class NormReport:
    norm_kind: NormKind
    value: float
    scan_limit: int
    certified_upper: float | None = None
    argmax_witness: int | None = None
    components: tuple[float, float] | None = None
    notes: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.certified_upper is not None and self.value > self.certified_upper:
            raise ValueError("norm value exceeds its certified upper bound")
        if self.argmax_witness is not None and self.argmax_witness > self.scan_limit:
            raise ValueError("argmax witness beyond scan limit")

    @property
    def certified(self) -> bool:
        return self.certified_upper is not None

    def to_json(self) -> dict:
        hp, la = self.components if self.components else (None, None)
        return {
            "kind": self.norm_kind.value,
            "value": self.value,
            "certified_upper": self.certified_upper,
            "argmax": self.argmax_witness,
            "scan_limit": self.scan_limit,
            "hilbert_part": hp,
            "log_average_part": la,
        }


def hilbert_component(f: FunctionTable, s: float, bound: GrowthBound | None = None) -> TailedValue:
    """Weighted l2 part ``(sum_{n<=N} |f(n)|^2 / (n^{2s} log^2(2+n)))^{1/2}`` at fixed s.

    With a growth bound ``C n^alpha log(2+n)^k`` the omitted squared tail is at
    most ``C^2 sum_{n>N} n^{2alpha-2s} log(2+n)^{2k-2}``, which converges only
    when ``2(s - alpha) > 1``. Without a bound the tail is reported as 0 and the
    value is uncertified.
    """
    if not s >= 1.0:
        raise DomainError(f"hilbert_component needs s >= 1, got {s}")
    N = f.N
    n = np.arange(1, N + 1, dtype=np.float64)
    w = f.abs() / (n ** s * log2p(N))
    value = math.sqrt(math.fsum((w * w).tolist()))
    if bound is None:
        return TailedValue(value, 0.0, False)
    beta = 2.0 * (s - bound.alpha)
    if not beta > 1.0:
        raise DivergenceError(
            f"growth exponent alpha={bound.alpha} leaves the squared tail divergent at s={s}"
        )
    bound.verify(f)
    tail = float(bound.C ** 2 * power_log_tail(N, beta, 2 * bound.k - 2))
    return TailedValue(value, tail, True)


def hilbert_sup(f: FunctionTable, bound: GrowthBound | None = None) -> TailedValue:
    h = hilbert_component(f, 1.0, bound)
    return TailedValue(h.value, h.tail, h.certified, HILBERT_SUP_NOTE)


def log_average_component(f: FunctionTable, X: int | None = None) -> LogAverage:
    """Largest ``|sum_{n<=x} f(n)/n| / log(2+x)`` over integers ``1 <= x <= X``.

    A lower bound on the sup over all x >= 1; the first maximiser is returned.
    """
    X = f.N if X is None else int(X)
    if not 1 <= X <= f.N:
        raise DomainError(f"scan limit X={X} must lie in 1..{f.N}")
    n = np.arange(1, X + 1, dtype=np.float64)
    prefix = compensated_cumsum(f.as_float()[:X] / n)
    ratio = np.abs(prefix) / log2p(X)
    i = int(np.argmax(ratio))
    return LogAverage(float(ratio[i]), i + 1)


def u_norm_hybrid(
    f: FunctionTable,
    bound: GrowthBound | None = None,
    X: int | None = None,
    log_average_bound: float | None = None,
) -> NormReport:
    """Hybrid U-norm report; a lower bound unless both parts carry certificates.

    ``log_average_bound`` is an a-priori global bound on the log-average sup
    that the caller vouches for; nothing here can certify that part alone.
    """
    X = f.N if X is None else int(X)
    h = hilbert_sup(f, bound)
    la = log_average_component(f, X)
    upper = None
    if h.certified and log_average_bound is not None:
        upper = max(h.upper + log_average_bound, h.value + la.value)
    notes = (HILBERT_SUP_NOTE,)
    if upper is None:
        notes += ("log-average part is a scanned lower bound",)
    return NormReport(
        NormKind.HybridU,
        h.value + la.value,
        scan_limit=X,
        certified_upper=upper,
        argmax_witness=la.argmax,
        components=(h.value, la.value),
        notes=notes,
    )


def _log_ratio(f: FunctionTable) -> np.ndarray:
    return f.abs() / log2p(f.N)


def u_norm_log(f: FunctionTable, bound: GrowthBound | None = None) -> NormReport:
    """``max_n |f(n)| / log(2+n)`` over the table, with its first maximiser.

    A bound with ``alpha <= 0`` and ``k <= 1`` caps every untabulated ratio by
    ``C``, which turns the scan into a certified upper bound ``max(value, C)``.
    """
    ratio = _log_ratio(f)
    i = int(np.argmax(ratio))
    value = float(ratio[i])
    upper = None
    if bound is not None and bound.alpha <= 0 and bound.k <= 1:
        bound.verify(f)
        upper = max(value, float(bound.C))
    return NormReport(NormKind.LogSup, value, scan_limit=f.N, certified_upper=upper, argmax_witness=i + 1)


def norm_value(f: FunctionTable, kind=NormKind.LogSup) -> float:
    kind = NormKind.parse(kind)
    if kind is NormKind.LogSup:
        return u_norm_log(f).value
    return u_norm_hybrid(f).value


def truncation_error(f: FunctionTable, M: int, norm_kind=NormKind.LogSup) -> float:
    """Norm of ``f - f 1_{n<=M}`` over the table: a lower bound on the true error."""
    kind = NormKind.parse(norm_kind)
    if not 0 <= M < f.N:
        raise DomainError(f"truncation point M={M} must satisfy 0 <= M < N={f.N}")
    if kind is NormKind.LogSup:
        return float(np.max(_log_ratio(f)[M:]))
    return u_norm_hybrid(f - f.truncate(M)).value


def truncation_curve(f: FunctionTable, Ms, norm_kind=NormKind.LogSup) -> list[tuple[int, float]]:
    return [(int(M), truncation_error(f, int(M), norm_kind)) for M in Ms]
