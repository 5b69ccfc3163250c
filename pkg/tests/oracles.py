"""Independent reference implementations used only by the tests.

Nothing here imports the code under test; each oracle takes the slow,
obvious route so it can be trusted against the fast one.
"""
import cmath
import itertools
import math
from fractions import Fraction


def trial_division_spf(n):
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def factor(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def mobius_linear_sieve(N):
    """Euler's linear sieve over plain Python lists; returns mu[0..N]."""
    mu = [0] * (N + 1)
    mu[1] = 1
    is_comp = bytearray(N + 1)
    primes = []
    for i in range(2, N + 1):
        if not is_comp[i]:
            primes.append(i)
            mu[i] = -1
        for p in primes:
            ip = i * p
            if ip > N:
                break
            is_comp[ip] = 1
            if i % p == 0:
                mu[ip] = 0
                break
            mu[ip] = -mu[i]
    return mu


def naive_convolve(f, g):
    """Per-n divisor loop on 1-based lists (index 0 unused)."""
    N = len(f) - 1
    h = [0] * (N + 1)
    for n in range(1, N + 1):
        h[n] = sum(f[d] * g[n // d] for d in range(1, n + 1) if n % d == 0)
    return h


def brute_force_characters(q):
    """All homomorphisms (Z/q)* -> C* as dicts r -> exact exponent over phi(q)."""
    units = [r for r in range(q) if math.gcd(r, q) == 1] if q > 1 else [0]
    phi = len(units)
    found = []
    for assign in itertools.product(range(phi), repeat=len(units)):
        chi = dict(zip(units, assign))
        if q == 1:
            ok = chi[0] == 0
        else:
            ok = all(
                chi[(a * b) % q] == (chi[a] + chi[b]) % phi for a in units for b in units
            )
        if ok:
            found.append(chi)
    return found, phi


def character_values(chi, q, phi):
    return [cmath.exp(2j * math.pi * chi[r] / phi) if r in chi else 0 for r in range(q)]


def log_average_exact(values, logs):
    """max_x |sum_{n<=x} f(n)/n| / log(2+x) with exact rational prefix sums."""
    acc = Fraction(0)
    best, at = -1.0, 0
    for x, v in enumerate(values, start=1):
        acc += Fraction(v) / x
        r = abs(float(acc)) / logs(2 + x)
        if r > best:
            best, at = r, x
    return best, at
