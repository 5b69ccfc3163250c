"""Dense tables of arithmetic functions and certified growth bounds."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from ._errors import BoundViolationError, LengthMismatchError, check_capacity

_INT64_SAFE = 2 ** 62


class ValueKind(enum.IntEnum):
    """Storage class of a table; ordered so that ``max`` gives the promotion."""

    ExactInt = 0
    Real = 1
    Complex = 2

    @classmethod
    def of(cls, values: np.ndarray) -> "ValueKind":
        if np.iscomplexobj(values):
            return cls.Complex
        if values.dtype == object or np.issubdtype(values.dtype, np.integer):
            return cls.ExactInt
        return cls.Real


def _coerce(values: np.ndarray, kind: ValueKind) -> np.ndarray:
    if kind is ValueKind.ExactInt:
        if values.dtype == object:
            return values
        return values.astype(np.int64, copy=False)
    if kind is ValueKind.Real:
        return values.astype(np.float64, copy=False)
    return values.astype(np.complex128, copy=False)


def _fits_int64(values: np.ndarray) -> bool:
    if values.size == 0:
        return True
    return max(abs(int(values.max())), abs(int(values.min()))) < _INT64_SAFE


@dataclass(frozen=True, eq=False)
class FunctionTable:
    """Values ``f(1), ..., f(N)`` of an arithmetic function.

    ``values[n - 1]`` holds ``f(n)``; calling the table, ``f(n)``, reads the same
    entry with 1-based indexing. Integer tables use ``int64`` and fall back to
    Python ints (``object`` dtype) only when a result would overflow. The array
    is read-only once the table is built.
    """

    values: np.ndarray
    value_kind: ValueKind
    label: str = ""

    def __post_init__(self):
        values = np.asarray(self.values)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("a FunctionTable needs a nonempty 1-d array of values")
        kind = ValueKind(self.value_kind)
        values = _coerce(values, kind)
        if kind is not ValueKind.ExactInt and not np.all(np.isfinite(values)):
            raise ValueError(f"table {self.label!r} contains NaN or Inf")
        if values.flags.writeable or values.base is not None:
            values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "value_kind", kind)

    # -- construction -------------------------------------------------------

    @classmethod
    def from_values(cls, values: Iterable, label: str = "", kind: ValueKind | None = None):
        """Build a table from ``f(1), f(2), ...``, inferring the kind if not given."""
        arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values)
        if kind is None:
            kind = ValueKind.of(arr)
            if kind is ValueKind.ExactInt and arr.dtype == object and _fits_int64(arr):
                arr = arr.astype(np.int64)
        return cls(arr, kind, label)

    @classmethod
    def from_function(cls, func: Callable[[int], complex], N: int, label: str = ""):
        check_capacity(N)
        return cls.from_values([func(n) for n in range(1, N + 1)], label)

    @classmethod
    def zeros(cls, N: int, label: str = "zero") -> "FunctionTable":
        check_capacity(N)
        return cls(np.zeros(N, dtype=np.int64), ValueKind.ExactInt, label)

    @classmethod
    def spike(cls, n: int, N: int, height: int = 1) -> "FunctionTable":
        """The indicator ``height * e_n`` on a table of length ``N``."""
        vals = np.zeros(N, dtype=np.int64)
        vals[n - 1] = height
        return cls(vals, ValueKind.ExactInt, f"spike({n})")

    # -- access -------------------------------------------------------------

    @property
    def N(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.N

    def __call__(self, n: int):
        if not 1 <= n <= self.N:
            raise IndexError(f"n={n} outside 1..{self.N}")
        v = self.values[n - 1]
        if self.value_kind is ValueKind.ExactInt:
            return int(v)
        if self.value_kind is ValueKind.Real:
            return float(v)
        return complex(v)

    def abs(self) -> np.ndarray:
        """``|f(n)|`` as float64."""
        return np.abs(self.values).astype(np.float64)

    def as_float(self) -> np.ndarray:
        """Values as float64 or complex128."""
        if self.value_kind is ValueKind.Complex:
            return self.values
        return self.values.astype(np.float64)

    def support(self) -> int:
        """Largest ``n`` with ``f(n) != 0``, or 0 for the zero table."""
        nz = np.flatnonzero(self.values != 0)
        return int(nz[-1]) + 1 if nz.size else 0

    def is_zero(self) -> bool:
        return self.support() == 0

    def truncate(self, M: int) -> "FunctionTable":
        """``f * 1_{n <= M}`` on the same length."""
        vals = np.array(self.values, copy=True)
        vals[M:] = 0
        return FunctionTable(vals, self.value_kind, f"{self.label}|<={M}")

    def resize(self, N: int) -> "FunctionTable":
        """Cut or zero-pad the table to length ``N``."""
        check_capacity(N)
        if N <= self.N:
            return FunctionTable(self.values[:N], self.value_kind, self.label)
        vals = np.zeros(N, dtype=self.values.dtype)
        vals[: self.N] = self.values
        return FunctionTable(vals, self.value_kind, self.label)

    def equals(self, other: "FunctionTable") -> bool:
        """Exact entrywise equality of values (kinds may differ)."""
        return self.N == other.N and bool(np.all(self.values == other.values))

    # -- vector space -------------------------------------------------------

    def _binary(self, other: "FunctionTable", op, sym: str) -> "FunctionTable":
        if self.N != other.N:
            raise LengthMismatchError(f"lengths {self.N} and {other.N} differ")
        kind = max(self.value_kind, other.value_kind)
        a, b = self.values, other.values
        if kind is ValueKind.ExactInt and a.dtype != object and b.dtype != object:
            if not (_fits_int64(a) and _fits_int64(b)):
                a, b = a.astype(object), b.astype(object)
        return FunctionTable(op(a, b), kind, f"({self.label}{sym}{other.label})")

    def __add__(self, other: "FunctionTable") -> "FunctionTable":
        return self._binary(other, np.add, "+")

    def __sub__(self, other: "FunctionTable") -> "FunctionTable":
        return self._binary(other, np.subtract, "-")

    def __neg__(self) -> "FunctionTable":
        return FunctionTable(-self.values, self.value_kind, f"-{self.label}")

    def scale(self, c) -> "FunctionTable":
        """``c * f``; integer scalars keep integer tables exact."""
        if isinstance(c, (int, np.integer)) and self.value_kind is ValueKind.ExactInt:
            vals = self.values
            if vals.dtype != object and abs(int(c)) * max(1, int(np.abs(vals).max())) >= _INT64_SAFE:
                vals = vals.astype(object)
            return FunctionTable(vals * int(c), ValueKind.ExactInt, f"{c}*{self.label}")
        kind = ValueKind.Complex if isinstance(c, complex) else max(self.value_kind, ValueKind.Real)
        vals = self.as_float() * c
        return FunctionTable(vals, kind, f"{c}*{self.label}")

    def __mul__(self, c):
        if isinstance(c, FunctionTable):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        head = ", ".join(str(v) for v in self.values[:6])
        more = ", ..." if self.N > 6 else ""
        return f"FunctionTable({self.label!r}, N={self.N}, {self.value_kind.name}, [{head}{more}])"


@dataclass(frozen=True)
class GrowthBound:
    """Majorant ``|f(n)| <= C * n**alpha * log(2+n)**k`` claimed for every n >= 1."""

    C: float
    alpha: float = 0.0
    k: int = 0

    def __post_init__(self):
        if self.C < 0:
            raise ValueError("GrowthBound needs C >= 0")
        if self.k < 0 or int(self.k) != self.k:
            raise ValueError("GrowthBound needs an integer k >= 0")

    def envelope(self, N: int) -> np.ndarray:
        n = np.arange(1, N + 1, dtype=np.float64)
        return n ** self.alpha * np.log(2.0 + n) ** self.k

    def ratio_max(self, f: FunctionTable) -> float:
        """``max_n |f(n)| / (n**alpha * log(2+n)**k)`` over the table."""
        return float(np.max(f.abs() / self.envelope(f.N)))

    def holds_for(self, f: FunctionTable, rtol: float = 1e-12) -> bool:
        return self.ratio_max(f) <= self.C * (1.0 + rtol)

    def verify(self, f: FunctionTable) -> None:
        """Raise ``BoundViolationError`` unless every tabulated value obeys the bound."""
        worst = self.ratio_max(f)
        if not worst <= self.C * (1.0 + 1e-12):
            raise BoundViolationError(
                f"table {f.label!r} reaches ratio {worst:.6g} > C={self.C} "
                f"for alpha={self.alpha}, k={self.k}"
            )

    @classmethod
    def fitted(cls, f: FunctionTable, alpha: float = 0.0, k: int = 0) -> "GrowthBound":
        """Smallest ``C`` valid on the table (a claim about tabulated n only)."""
        return cls(cls(1.0, alpha, k).ratio_max(f), alpha, k)


def log2p(N: int) -> np.ndarray:
    """``log(2+n)`` for n = 1..N."""
    return np.log(2.0 + np.arange(1, N + 1, dtype=np.float64))


def log2p_scalar(n: float) -> float:
    return math.log(2.0 + n)
