"""Sieve-built tables of the classical arithmetic functions."""
from __future__ import annotations

import enum
import math
from functools import lru_cache

import numpy as np

from ._errors import DomainError, check_capacity
from .tables import FunctionTable, GrowthBound, ValueKind


class Kind(str, enum.Enum):
    One = "one"
    IdPow = "id_pow"
    LogPow = "log_pow"
    Epsilon = "epsilon"
    Mobius = "mobius"
    Liouville = "liouville"
    VonMangoldt = "von_mangoldt"
    EulerPhi = "euler_phi"
    DivisorTau = "divisor_tau"

    @property
    def tag(self) -> int:
        """Numeric tag used by the binary cache format."""
        return list(Kind).index(self) + 1

    @classmethod
    def from_tag(cls, tag: int) -> "Kind":
        return list(Kind)[tag - 1]


# short names accepted by the CLI and by ``build_classical``
ALIASES = {
    "one": Kind.One,
    "id": Kind.IdPow,
    "id_pow": Kind.IdPow,
    "log": Kind.LogPow,
    "log_pow": Kind.LogPow,
    "epsilon": Kind.Epsilon,
    "mobius": Kind.Mobius,
    "mu": Kind.Mobius,
    "liouville": Kind.Liouville,
    "mangoldt": Kind.VonMangoldt,
    "von_mangoldt": Kind.VonMangoldt,
    "lambda": Kind.VonMangoldt,
    "phi": Kind.EulerPhi,
    "euler_phi": Kind.EulerPhi,
    "tau": Kind.DivisorTau,
    "divisor_tau": Kind.DivisorTau,
}


def parse_kind(kind) -> Kind:
    if isinstance(kind, Kind):
        return kind
    try:
        return ALIASES[str(kind).lower()]
    except KeyError:
        raise DomainError(
            f"unknown function {kind!r}; expected one of {', '.join(sorted(ALIASES))}"
        ) from None


@lru_cache(maxsize=8)
def _spf(N: int) -> np.ndarray:
    spf = np.zeros(N + 1, dtype=np.int64)
    for p in range(2, math.isqrt(N) + 1):
        if spf[p] == 0:
            seg = spf[p * p :: p]
            seg[seg == 0] = p
    idx = np.arange(N + 1, dtype=np.int64)
    unset = spf == 0
    spf[unset] = idx[unset]
    spf[0] = 0
    spf.setflags(write=False)
    return spf


def sieve_spf(N: int) -> np.ndarray:
    """Smallest-prime-factor table indexed directly by n (length N+1).

    ``spf[n]`` is the least prime dividing n for ``2 <= n <= N``; ``spf[1] = 1``
    and ``spf[0] = 0`` are placeholders. The returned array is read-only.
    """
    if N < 2:
        raise DomainError("sieve_spf needs N >= 2")
    check_capacity(N, "smallest-prime-factor sieve")
    return _spf(int(N))


def primes_upto(N: int) -> np.ndarray:
    if N < 2:
        return np.zeros(0, dtype=np.int64)
    spf = sieve_spf(N)
    idx = np.arange(N + 1)
    return idx[2:][spf[2:] == idx[2:]]


def prime_power_table(N: int) -> tuple[np.ndarray, np.ndarray]:
    """``(base, exponent)`` arrays indexed by n with ``n == base**exponent`` for
    prime powers and ``(0, 0)`` elsewhere; the exact form behind the von Mangoldt table.
    """
    base = np.zeros(N + 1, dtype=np.int64)
    expo = np.zeros(N + 1, dtype=np.int64)
    for p in primes_upto(N).tolist():
        pk, e = p, 1
        while pk <= N:
            base[pk] = p
            expo[pk] = e
            pk *= p
            e += 1
    return base, expo


def _mobius(N: int) -> np.ndarray:
    mu = np.ones(N + 1, dtype=np.int64)
    for p in primes_upto(N).tolist():
        mu[p::p] *= -1
        if p * p <= N:
            mu[p * p :: p * p] = 0
    return mu[1:]


def _big_omega(N: int) -> np.ndarray:
    omega = np.zeros(N + 1, dtype=np.int64)
    for p in primes_upto(N).tolist():
        pk = p
        while pk <= N:
            omega[pk::pk] += 1
            pk *= p
    return omega[1:]


def _euler_phi(N: int) -> np.ndarray:
    phi = np.arange(N + 1, dtype=np.int64)
    for p in primes_upto(N).tolist():
        phi[p::p] -= phi[p::p] // p
    return phi[1:]


def _divisor_tau(N: int) -> np.ndarray:
    tau = np.ones(N + 1, dtype=np.int64)
    for p in primes_upto(N).tolist():
        if p * p > N:
            tau[p::p] *= 2
            continue
        # exponent of p in each multiple j*p, j = 1..N//p
        e = np.ones(N // p, dtype=np.int64)
        step = p
        while step * p <= N:
            e[step - 1 :: step] += 1
            step *= p
        tau[p::p] *= e + 1
    return tau[1:]


def _von_mangoldt(N: int) -> np.ndarray:
    base, _ = prime_power_table(N)
    lam = np.zeros(N + 1, dtype=np.float64)
    pp = base > 0
    lam[pp] = np.log(base[pp].astype(np.float64))
    return lam[1:]


def _id_pow(N: int, alpha: float) -> tuple[np.ndarray, ValueKind]:
    if float(alpha).is_integer() and alpha >= 0:
        a = int(alpha)
        if a * math.log2(max(N, 2)) < 62:
            return np.arange(1, N + 1, dtype=np.int64) ** a, ValueKind.ExactInt
        return np.array([n ** a for n in range(1, N + 1)], dtype=object), ValueKind.ExactInt
    return np.arange(1, N + 1, dtype=np.float64) ** float(alpha), ValueKind.Real


def build_classical(kind, N: int, *, alpha: float = 1.0, k: int = 1) -> FunctionTable:
    """Dense table of a classical arithmetic function on ``n = 1..N``.

    ``alpha`` parameterises ``IdPow`` (``n**alpha``) and ``k`` parameterises
    ``LogPow`` (``(log n)**k``); both are ignored by the other kinds.
    Integer-valued kinds come back as exact ``int64`` tables.
    """
    kind = parse_kind(kind)
    N = int(N)
    if N < 1:
        raise DomainError("tables need N >= 1")
    check_capacity(N)
    return _build(kind, N, float(alpha), k)


@lru_cache(maxsize=32)
def _build(kind: Kind, N: int, alpha: float, k) -> FunctionTable:
    Int, Real = ValueKind.ExactInt, ValueKind.Real
    if kind is Kind.One:
        return FunctionTable(np.ones(N, dtype=np.int64), Int, "one")
    if kind is Kind.Epsilon:
        vals = np.zeros(N, dtype=np.int64)
        vals[0] = 1
        return FunctionTable(vals, Int, "epsilon")
    if kind is Kind.IdPow:
        vals, vk = _id_pow(N, alpha)
        label = "id" if alpha == 1 else f"id^{alpha:g}"
        return FunctionTable(vals, vk, label)
    if kind is Kind.LogPow:
        if int(k) != k or k < 0:
            raise DomainError(f"LogPow needs an integer k >= 0, got {k}")
        logs = np.log(np.arange(1, N + 1, dtype=np.float64))
        vals = np.ones(N) if k == 0 else logs ** int(k)
        return FunctionTable(vals, Real, "log" if k == 1 else f"log^{k}")
    if N < 2:
        # every multiplicative kind is 1 at n = 1; Lambda(1) = 0
        if kind is Kind.VonMangoldt:
            return FunctionTable(np.zeros(1), Real, "von_mangoldt")
        return FunctionTable(np.ones(1, dtype=np.int64), Int, kind.value)
    if kind is Kind.Mobius:
        return FunctionTable(_mobius(N), Int, "mobius")
    if kind is Kind.Liouville:
        omega = _big_omega(N)
        return FunctionTable(1 - 2 * (omega & 1), Int, "liouville")
    if kind is Kind.EulerPhi:
        return FunctionTable(_euler_phi(N), Int, "euler_phi")
    if kind is Kind.DivisorTau:
        return FunctionTable(_divisor_tau(N), Int, "divisor_tau")
    if kind is Kind.VonMangoldt:
        return FunctionTable(_von_mangoldt(N), Real, "von_mangoldt")
    raise DomainError(f"no builder for {kind}")


def one(N: int) -> FunctionTable:
    return build_classical(Kind.One, N)


def epsilon(N: int) -> FunctionTable:
    return build_classical(Kind.Epsilon, N)


def mobius(N: int) -> FunctionTable:
    return build_classical(Kind.Mobius, N)


def liouville(N: int) -> FunctionTable:
    return build_classical(Kind.Liouville, N)


def von_mangoldt(N: int) -> FunctionTable:
    return build_classical(Kind.VonMangoldt, N)


def euler_phi(N: int) -> FunctionTable:
    return build_classical(Kind.EulerPhi, N)


def divisor_tau(N: int) -> FunctionTable:
    return build_classical(Kind.DivisorTau, N)


def identity(N: int, alpha: float = 1.0) -> FunctionTable:
    return build_classical(Kind.IdPow, N, alpha=alpha)


def log_pow(N: int, k: int = 1) -> FunctionTable:
    return build_classical(Kind.LogPow, N, k=k)


def classical_growth_bound(kind, *, alpha: float = 1.0, k: int = 1) -> GrowthBound:
    """A majorant valid for every n (not just tabulated ones)."""
    kind = parse_kind(kind)
    if kind in (Kind.One, Kind.Epsilon, Kind.Mobius, Kind.Liouville):
        return GrowthBound(1.0, 0.0, 0)
    if kind is Kind.VonMangoldt:
        return GrowthBound(1.0, 0.0, 1)  # Lambda(n) <= log n < log(2+n)
    if kind is Kind.LogPow:
        return GrowthBound(1.0, 0.0, int(k))
    if kind is Kind.IdPow:
        return GrowthBound(1.0, float(alpha), 0)
    if kind is Kind.EulerPhi:
        return GrowthBound(1.0, 1.0, 0)
    if kind is Kind.DivisorTau:
        return GrowthBound(2.0, 0.5, 0)  # pairs d <-> n/d, one of them <= sqrt(n)
    raise DomainError(f"no growth bound for {kind}")
