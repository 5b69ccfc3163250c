"""Compensated summation and certified tail bounds for power-log majorants."""
from __future__ import annotations

import math

import numpy as np

from ._errors import CapacityError

# multiplicative padding applied to closed-form bounds evaluated in floating point
_PAD = 1.0 + 1e-12

# longest explicit stretch summed before the closed-form tail bound becomes valid
_MAX_EXPLICIT = 50_000_000


def _cumsum_real(a: np.ndarray) -> np.ndarray:
    s = np.cumsum(a)
    prev = np.empty_like(s)
    prev[0] = 0.0
    prev[1:] = s[:-1]
    # TwoSum error of each sequential step; recovered exactly from the rounded sums
    bb = s - prev
    err = (prev - (s - bb)) + (a - bb)
    return s + np.cumsum(err)


def compensated_cumsum(a: np.ndarray) -> np.ndarray:
    """Prefix sums of a float or complex array with compensated accumulation.

    Each rounding error of the plain sequential ``cumsum`` is recovered with
    TwoSum and accumulated separately, so prefix errors stay at roughly one
    ulp of the running sum instead of growing with the number of terms.
    """
    a = np.asarray(a)
    if a.size == 0:
        return a.astype(float)
    if np.iscomplexobj(a):
        return _cumsum_real(a.real.astype(float)) + 1j * _cumsum_real(a.imag.astype(float))
    return _cumsum_real(a.astype(float))


def exact_sum(a: np.ndarray) -> complex | float:
    """Correctly rounded sum of a real or complex float array (``math.fsum``)."""
    a = np.asarray(a)
    if np.iscomplexobj(a):
        return complex(math.fsum(a.real.tolist()), math.fsum(a.imag.tolist()))
    return math.fsum(a.tolist())


def _majorant_term(n: np.ndarray, beta: float, m: int) -> np.ndarray:
    return n ** (-beta) * np.log(2.0 + n) ** m


def power_log_tail(N: int, beta: float, m: int) -> float:
    """Upper bound on ``sum_{n > N} n**(-beta) * log(2+n)**m`` for ``beta > 1``, integer m.

    The sum is at most the integral from N once the summand is nonincreasing
    (guaranteed when ``beta * log(2+N) >= m``; earlier terms are summed
    explicitly). With ``gamma = beta - 1`` and ``L = log(2+N)``:

    * ``m <= 0``: ``log(2+t)**m <= L**m`` gives ``L**m * N**-gamma / gamma``.
    * ``m > 0``: for ``t >= N``, ``log(2+t) <= log t + log(1+2/N)``, and the
      substitution ``u = log t + log(1+2/N)`` turns the integral into an upper
      incomplete gamma function, closed-form for integer m::

          N**-gamma / gamma * sum_{j=0}^{m} m!/(m-j)! * L**(m-j) / gamma**j
    """
    if not beta > 1.0:
        raise ValueError("power_log_tail needs beta > 1")
    if int(m) != m:
        raise ValueError("power_log_tail needs an integer log exponent")
    m = int(m)
    gamma = beta - 1.0
    N = int(N)
    explicit = 0.0
    N0 = max(N, 1)
    if m > 0:
        N0 = max(N0, math.ceil(math.exp(m / beta)))
    if N0 - N > _MAX_EXPLICIT:
        raise CapacityError(f"tail bound needs {N0 - N} explicit terms (beta={beta}, m={m})")
    if N0 > N:
        explicit = math.fsum(
            _majorant_term(np.arange(N + 1, N0 + 1, dtype=float), beta, m).tolist()
        ) * _PAD
    L = math.log(2.0 + N0)
    if m <= 0:
        tail = L ** m * N0 ** (-gamma) / gamma
    else:
        coeff, acc = 1.0, 0.0
        for j in range(m + 1):
            acc += coeff * L ** (m - j) / gamma ** j
            coeff *= m - j
        tail = N0 ** (-gamma) / gamma * acc
    return explicit + tail * _PAD


def power_log_total(beta: float, m: int) -> float:
    """Upper bound on the full series ``sum_{n >= 1} n**(-beta) * log(2+n)**m``."""
    return power_log_tail(0, beta, m)
