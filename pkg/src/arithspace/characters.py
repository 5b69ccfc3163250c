"""Dirichlet characters mod q, enumerated against canonical generators.

The unit group (Z/qZ)* is split by CRT into prime-power parts. Odd parts are
cyclic, generated by their least primitive root; the 2-part is generated by
-1 (order 2, when 4 | q) and 5 (order 2**(a-2), when 8 | q). A character is
fixed by its exponent vector ``(a_1, ..., a_r)`` with ``chi(g_j) =
exp(2*pi*i*a_j/ord(g_j))``, and ``index`` numbers these vectors in
lexicographic order, so index 0 is always the principal character.

Values are stored exactly as numerators over a common denominator (the group
exponent), which keeps multiplicativity checks exact.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from ._errors import CapacityError, DomainError
from .tables import FunctionTable, ValueKind

#: largest q for which a full character group (phi(q) tables of length q) is built
MAX_GROUP_MODULUS = 5000
#: largest q for a single character
MAX_MODULUS = 10_000_000


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorisation by trial division, ascending primes."""
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def totient(n: int) -> int:
    return reduce(lambda acc, pe: acc * (pe[0] - 1) * pe[0] ** (pe[1] - 1), factorize(n), 1)


def multiplicative_order(g: int, m: int) -> int:
    phi = totient(m)
    order = phi
    for p, _ in factorize(phi):
        while order % p == 0 and pow(g, order // p, m) == 1:
            order //= p
    return order


def primitive_root(m: int) -> int:
    """Least primitive root of an odd prime power ``m`` (or of 2, 4)."""
    phi = totient(m)
    for g in range(1, m):
        if math.gcd(g, m) == 1 and multiplicative_order(g, m) == phi:
            return g
    raise DomainError(f"{m} has no primitive root")


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class UnitGroup:
    """Canonical generator data for (Z/qZ)* plus discrete logs of every residue."""

    q: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    exponent: int
    logs: np.ndarray  # shape (q, r); row r holds the generator exponents of r, or -1

    @property
    def size(self) -> int:
        return math.prod(self.orders)


def _local_generators(p: int, e: int) -> list[tuple[int, int]]:
    m = p ** e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [(3, 2)]
        return [(m - 1, 2), (5, 2 ** (e - 2))]
    return [(primitive_root(m), (p - 1) * p ** (e - 1))]


@lru_cache(maxsize=64)
def unit_group(q: int) -> UnitGroup:
    if q < 1:
        raise DomainError("modulus must be >= 1")
    if q > MAX_MODULUS:
        raise CapacityError(f"modulus {q} exceeds the limit {MAX_MODULUS}")
    gens, orders = [], []
    for p, e in factorize(q):
        m = p ** e
        rest = q // m
        for g, o in _local_generators(p, e):
            # lift: G = g mod m, G = 1 mod rest
            lifted = g if rest == 1 else 1 + rest * (((g - 1) * pow(rest, -1, m)) % m)
            gens.append(lifted % q)
            orders.append(o)
    r = len(gens)
    logs = np.full((q, max(r, 1)), -1, dtype=np.int64)
    if q == 1:
        logs[0, :] = 0
    else:
        elems = np.array([1], dtype=np.int64)
        coords = np.zeros((1, r), dtype=np.int64)
        for j, (g, o) in enumerate(zip(gens, orders)):
            powers = np.array([pow(g, t, q) for t in range(o)], dtype=np.int64)
            elems = (elems[:, None] * powers[None, :] % q).reshape(-1)
            coords = np.repeat(coords, o, axis=0)
            coords[:, j] = np.tile(np.arange(o), coords.shape[0] // o)
        logs[elems, :r] = coords
        if r == 0:
            logs[elems, 0] = 0
    logs.setflags(write=False)
    exponent = reduce(_lcm, orders, 1)
    return UnitGroup(q, tuple(gens), tuple(orders), exponent, logs)


def _root_of_unity(num: np.ndarray, m: int) -> np.ndarray:
    out = np.exp(2j * np.pi * num / m)
    # snap the quarter turns so real characters stay exactly real
    quarter = (4 * num) % m == 0
    turns = (4 * num[quarter]) // m
    out[quarter] = np.array([1, 1j, -1, -1j])[turns % 4]
    return out


@dataclass(frozen=True, eq=False)
class CharacterTable:
    """One Dirichlet character mod ``modulus`` on residues ``0..q-1``.

    ``numerators[r]`` is ``-1`` when ``gcd(r, q) > 1`` and otherwise the integer
    ``a`` with ``chi(r) = exp(2*pi*i*a/root_order)``.
    """

    modulus: int
    index: int
    numerators: np.ndarray
    root_order: int
    order: int
    principal: bool

    @property
    def values(self) -> np.ndarray:
        """``chi(r)`` for ``r = 0..q-1`` as complex128."""
        out = np.zeros(self.modulus, dtype=np.complex128)
        unit = self.numerators >= 0
        out[unit] = _root_of_unity(self.numerators[unit], self.root_order)
        return out

    def __call__(self, n: int) -> complex:
        return complex(self.values[n % self.modulus])

    @property
    def is_real(self) -> bool:
        return self.order <= 2

    def multiplicativity_defects(self) -> list[tuple[int, int]]:
        """Pairs ``(a, b)`` of units mod q where exact multiplicativity fails."""
        q, num, m = self.modulus, self.numerators, self.root_order
        units = np.flatnonzero(num >= 0)
        a, b = np.meshgrid(units, units, indexing="ij")
        lhs = num[(a * b) % q]
        rhs = (num[a] + num[b]) % m
        bad = lhs != rhs
        return list(zip(a[bad].tolist(), b[bad].tolist()))

    def extend(self, N: int, label: str | None = None) -> FunctionTable:
        """Periodic extension ``chi(n) = values[n mod q]`` on ``n = 1..N``."""
        idx = np.arange(1, N + 1) % self.modulus
        label = label or f"chi[{self.modulus},{self.index}]"
        if self.is_real:
            vals = self.values.real.astype(np.int64)
            return FunctionTable(vals[idx], ValueKind.ExactInt, label)
        return FunctionTable(self.values[idx], ValueKind.Complex, label)

    def describe(self) -> dict:
        return {
            "modulus": self.modulus,
            "index": self.index,
            "order": self.order,
            "principal": self.principal,
            "root_order": self.root_order,
            "numerators": self.numerators.tolist(),
        }


def _exponent_vector(index: int, orders: tuple[int, ...]) -> list[int]:
    vec = []
    for o in reversed(orders):
        index, a = divmod(index, o)
        vec.append(a)
    return vec[::-1]


def character(q: int, index: int) -> CharacterTable:
    """The character of the given canonical index mod q."""
    grp = unit_group(int(q))
    if not 0 <= index < grp.size:
        raise DomainError(f"index {index} outside 0..{grp.size - 1} for q={q}")
    vec = _exponent_vector(index, grp.orders)
    m = grp.exponent
    num = np.full(q, -1, dtype=np.int64)
    unit = grp.logs[:, 0] >= 0
    acc = np.zeros(int(unit.sum()), dtype=np.int64)
    for j, (a, o) in enumerate(zip(vec, grp.orders)):
        acc += grp.logs[unit, j] * (a * (m // o))
    num[unit] = acc % m
    g = math.gcd(m, *num[unit].tolist()) if unit.any() else m
    order = m // g
    num.setflags(write=False)
    return CharacterTable(q, index, num, m, order, index == 0)


def character_group(q: int) -> list[CharacterTable]:
    """All phi(q) characters mod q in canonical order; index 0 is principal."""
    q = int(q)
    if q < 1:
        raise DomainError("modulus must be >= 1")
    if q > MAX_GROUP_MODULUS:
        raise CapacityError(f"full character group for q={q} exceeds the limit {MAX_GROUP_MODULUS}")
    grp = unit_group(q)
    return [character(q, i) for i in range(grp.size)]

