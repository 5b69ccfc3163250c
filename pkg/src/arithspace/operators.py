"""Convolution algebra, shifts, averaging, and empirical operator-norm probes."""
from __future__ import annotations

import csv
import io
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ._errors import ArithSpaceError, DomainError, LengthMismatchError, check_capacity
from ._summation import compensated_cumsum
from .functions import Kind, build_classical, mobius
from .norms import NormKind, norm_value
from .tables import FunctionTable, ValueKind, log2p

log = logging.getLogger(__name__)

_INT64_SAFE = 2 ** 62


def _padded(values: np.ndarray) -> np.ndarray:
    out = np.zeros(values.shape[0] + 1, dtype=values.dtype)
    out[1:] = values
    return out


def _max_abs(values: np.ndarray) -> int:
    return int(np.abs(values).max()) if values.size else 0


def _int_storage(f: FunctionTable, g: FunctionTable, growth: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = f.values, g.values
    if a.dtype == object or b.dtype == object or _max_abs(a) * _max_abs(b) * growth >= _INT64_SAFE:
        return a.astype(object), b.astype(object)
    return a, b


def convolve(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    """Dirichlet convolution ``(f*g)(n) = sum_{d|n} f(d) g(n/d)`` for n <= N.

    Pairs ``(d, k)`` with ``dk <= N`` are swept grouped by ``m = min(d, k)``:
    for each ``m <= sqrt(N)`` one strided update adds ``f(m)g(k) + f(k)g(m)``
    at every ``mk`` with k > m. Total work is O(N log N) with only sqrt(N)
    vector operations, the accumulation order per output index is fixed, and
    the symmetric pairing makes floating results exactly commutative. Integer
    inputs stay exact.
    """
    if f.N != g.N:
        raise LengthMismatchError(f"cannot convolve lengths {f.N} and {g.N}")
    N = f.N
    kind = max(f.value_kind, g.value_kind)
    if kind is ValueKind.ExactInt:
        a, b = _int_storage(f, g, 2 * math.isqrt(N) + 2)
    else:
        a, b = f.values, g.values
    a, b = _padded(a), _padded(b)
    dtype = np.result_type(a.dtype, b.dtype)
    h = np.zeros(N + 1, dtype=dtype)
    for m in range(1, math.isqrt(N) + 1):
        if a[m] == 0 and b[m] == 0:
            continue
        K = N // m
        h[m * m] += a[m] * b[m]
        if K > m:
            # the (m, k) and (k, m) pairs are added together, so f*g == g*f bit for bit
            h[m * (m + 1) : m * K + 1 : m] += a[m] * b[m + 1 : K + 1] + a[m + 1 : K + 1] * b[m]
    out = h[1:]
    if out.dtype == object and _max_abs(out) < _INT64_SAFE:
        out = out.astype(np.int64)
    return FunctionTable(out, kind, f"({f.label}*{g.label})")


def mobius_invert(g: FunctionTable) -> FunctionTable:
    """``g * mu``: recovers f from ``g = f * 1``."""
    return convolve(g, mobius(g.N))


def pointwise_mul(f: FunctionTable, g: FunctionTable) -> FunctionTable:
    if f.N != g.N:
        raise LengthMismatchError(f"cannot multiply lengths {f.N} and {g.N}")
    kind = max(f.value_kind, g.value_kind)
    if kind is ValueKind.ExactInt:
        a, b = _int_storage(f, g, 1)
    else:
        a, b = f.values, g.values
    return FunctionTable(a * b, kind, f"({f.label}.{g.label})")


def shift(f: FunctionTable, k: int) -> FunctionTable:
    """``(S_k f)(n) = f(n+k)`` on the shrunken range ``n = 1..N-k``."""
    if not 0 <= k < f.N:
        raise DomainError(f"shift k={k} must satisfy 0 <= k < N={f.N}")
    if k == 0:
        return f
    return FunctionTable(f.values[k:], f.value_kind, f"S{k}({f.label})")


def cesaro(f: FunctionTable, W: int) -> FunctionTable:
    """``(A_W f)(n) = (1/W) sum_{j=1}^{W} f(n+j)`` on ``n = 1..N-W``."""
    if not 1 <= W < f.N:
        raise DomainError(f"averaging window W={W} must satisfy 1 <= W < N={f.N}")
    if f.value_kind is ValueKind.ExactInt:
        vals = f.values if _max_abs(f.values) * f.N < _INT64_SAFE else f.values.astype(object)
        prefix = np.concatenate([np.zeros(1, dtype=vals.dtype), np.cumsum(vals)])
        window = prefix[W + 1 :] - prefix[1 : f.N - W + 1]
        out = np.array([w / W for w in window.tolist()]) if window.dtype == object else window / W
        return FunctionTable(out.astype(np.float64), ValueKind.Real, f"A{W}({f.label})")
    prefix = np.concatenate([np.zeros(1, dtype=f.values.dtype), compensated_cumsum(f.values)])
    window = prefix[W + 1 :] - prefix[1 : f.N - W + 1]
    return FunctionTable(window / W, f.value_kind, f"A{W}({f.label})")


def shift_ratio_scan(k: int, limit: int = 100_000) -> tuple[float, int]:
    """Max of ``log(2+n+k)/log(2+n)`` over ``n <= limit`` and its first maximiser."""
    n = np.arange(1, limit + 1, dtype=np.float64)
    r = np.log(2.0 + n + k) / np.log(2.0 + n)
    i = int(np.argmax(r))
    return float(r[i]), i + 1


def shift_constant(k: int, scan_limit: int = 100_000) -> float:
    """``sup_n log(2+n+k)/log(2+n)``, which is attained at n = 1.

    The closed form ``log(3+k)/log(3)`` is cross-checked by scanning
    ``n <= scan_limit``; a scan maximum elsewhere raises.
    """
    if k < 0:
        raise DomainError("shift needs k >= 0")
    _, at = shift_ratio_scan(k, scan_limit)
    if at != 1:
        raise ArithSpaceError(f"shift ratio for k={k} peaks at n={at}, not n=1")
    return math.log(3.0 + k) / math.log(3.0)


def _checkpoints(N: int) -> list[int]:
    pts = [10 ** j for j in range(int(math.log10(N)) + 1) if 10 ** j <= N]
    if not pts or pts[-1] != N:
        pts.append(N)
    return pts


@dataclass(frozen=True)
class ConstantScanReport:
    """Running sup of ``C(n) = sum_{d|n} log(2+d) log(2+n/d) / log^2(2+n)``."""

    N_max: int
    sup_value: float
    argmax_n: int
    trajectory: list[tuple[int, float]]

    def grew_between_checkpoints(self) -> list[bool]:
        sups = [v for _, v in self.trajectory]
        return [b > a for a, b in zip(sups, sups[1:])]

    def to_json(self) -> dict:
        return {
            "N_max": self.N_max,
            "sup_value": self.sup_value,
            "argmax_n": self.argmax_n,
            "trajectory": [[n, v] for n, v in self.trajectory],
            "grew_between_checkpoints": self.grew_between_checkpoints(),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "running_sup"])
        w.writerows((n, repr(v)) for n, v in self.trajectory)
        return buf.getvalue()


def divisor_log_ratio(N: int) -> np.ndarray:
    """``C(n)`` for n = 1..N via one convolution of ``log(2+n)`` with itself."""
    check_capacity(N)
    L = FunctionTable(log2p(N), ValueKind.Real, "log(2+n)")
    return convolve(L, L).values / L.values ** 2


def convolution_constant_scan(N: int) -> ConstantScanReport:
    """Empirical trajectory of the divisor-sum constant; no boundedness is assumed."""
    if N < 1:
        raise DomainError("scan needs N >= 1")
    c = divisor_log_ratio(int(N))
    running = np.maximum.accumulate(c)
    traj = [(x, float(running[x - 1])) for x in _checkpoints(int(N))]
    i = int(np.argmax(c))
    return ConstantScanReport(int(N), float(running[-1]), i + 1, traj)


# -- operator-norm probes ------------------------------------------------------


@dataclass(frozen=True)
class MulBy:
    g: FunctionTable

    @property
    def label(self) -> str:
        return f"MulBy({self.g.label})"

    def apply(self, f: FunctionTable) -> FunctionTable:
        if self.g.N < f.N:
            raise LengthMismatchError(f"multiplier table shorter ({self.g.N}) than input ({f.N})")
        return pointwise_mul(f, self.g.resize(f.N))

    def claimed_bound(self, kind: NormKind) -> float | None:
        # sup_n |g(n)|, read off the tabulated range
        return float(self.g.abs().max()) if kind is NormKind.LogSup else None


@dataclass(frozen=True)
class Shift:
    k: int

    @property
    def label(self) -> str:
        return f"Shift({self.k})"

    def apply(self, f: FunctionTable) -> FunctionTable:
        return shift(f, self.k)

    def claimed_bound(self, kind: NormKind) -> float | None:
        return shift_constant(self.k) if kind is NormKind.LogSup else None


@dataclass(frozen=True)
class Cesaro:
    W: int

    @property
    def label(self) -> str:
        return f"Cesaro({self.W})"

    def apply(self, f: FunctionTable) -> FunctionTable:
        return cesaro(f, self.W)

    def claimed_bound(self, kind: NormKind) -> float | None:
        return None


@dataclass(frozen=True)
class ConvolveBy:
    g: FunctionTable

    @property
    def label(self) -> str:
        return f"ConvolveBy({self.g.label})"

    def apply(self, f: FunctionTable) -> FunctionTable:
        return convolve(f, self.g.resize(f.N))

    def claimed_bound(self, kind: NormKind) -> float | None:
        # the divisor-sum constant is not known to be uniform; claim nothing
        return None


@dataclass(frozen=True)
class OperatorNormEstimate:
    operator_label: str
    lower_bound: float
    claimed_bound: float | None
    witness_function: str
    battery_size: int
    norm_kind: NormKind = NormKind.LogSup
    falsified: bool = False
    ratios: dict = field(default_factory=dict, compare=False, repr=False)

    def to_json(self) -> dict:
        return {
            "operator": self.operator_label,
            "norm_kind": self.norm_kind.value,
            "lower_bound": self.lower_bound,
            "claimed_bound": self.claimed_bound,
            "witness_function": self.witness_function,
            "battery_size": self.battery_size,
            "falsified": self.falsified,
        }


BUILTIN_BATTERY = (
    (Kind.One, {}),
    (Kind.IdPow, {"alpha": 1.0}),
    (Kind.LogPow, {"k": 1}),
    (Kind.Epsilon, {}),
    (Kind.Mobius, {}),
    (Kind.Liouville, {}),
    (Kind.VonMangoldt, {}),
    (Kind.EulerPhi, {}),
    (Kind.DivisorTau, {}),
)


def default_battery(N: int = 10_000, n_spikes: int = 100, seed: int = 0) -> list[FunctionTable]:
    """Built-in functions plus ``n_spikes`` unit spikes ``e_n``.

    Spike positions always include n = 1..10 (where shift constants are
    realised) and are otherwise drawn uniformly from 11..N with ``seed``.
    """
    tables = [build_classical(kind, N, **kw) for kind, kw in BUILTIN_BATTERY]
    fixed = list(range(1, min(10, N, n_spikes) + 1))
    rng = np.random.default_rng(seed)
    extra = max(0, min(n_spikes - len(fixed), N - len(fixed)))
    drawn = rng.choice(np.arange(len(fixed) + 1, N + 1), size=extra, replace=False) if extra else []
    positions = fixed + sorted(int(p) for p in drawn)
    return tables + [FunctionTable.spike(p, N) for p in positions]


def spike_battery(N: int = 10_000, n_spikes: int = 100, seed: int = 0) -> list[FunctionTable]:
    return default_battery(N, n_spikes, seed)[len(BUILTIN_BATTERY):]


def operator_norm_estimate(operator, norm_kind=NormKind.LogSup, battery: Sequence[FunctionTable] | None = None):
    """Lower bound ``max ||T f|| / ||f||`` over a battery, against the claimed bound.

    A lower bound above the claimed bound (beyond 1e-9) is a falsification
    event: it is logged and flagged on the result, never raised.
    """
    kind = NormKind.parse(norm_kind)
    battery = default_battery() if battery is None else list(battery)
    if not battery:
        raise DomainError("operator_norm_estimate needs a nonempty battery")
    best, witness, ratios = -1.0, "", {}
    for f in battery:
        if f.is_zero():
            raise DomainError(f"battery function {f.label!r} is identically zero")
        r = norm_value(operator.apply(f), kind) / norm_value(f, kind)
        ratios[f.label] = r
        if r > best:
            best, witness = r, f.label
    claimed = operator.claimed_bound(kind)
    falsified = claimed is not None and best > claimed + 1e-9
    if falsified:
        log.warning(
            "falsification: %s reaches %.12g > claimed %.12g (witness %s)",
            operator.label, best, claimed, witness,
        )
    return OperatorNormEstimate(
        operator.label, best, claimed, witness, len(battery), kind, falsified, ratios
    )
