"""Seeded check batteries behind ``arithspace verify``."""
from __future__ import annotations

import numpy as np

from .functions import divisor_tau, epsilon, euler_phi, identity, log_pow, mobius, one, von_mangoldt
from .norms import NormKind, norm_value
from .operators import Cesaro, ConvolveBy, MulBy, Shift, convolve, default_battery, operator_norm_estimate
from .series import verify_product
from .tables import FunctionTable, ValueKind

SUITES = ("identities", "norm-axioms", "operator-bounds", "product")


def _result(suite: str, checks: list[dict], **extra) -> dict:
    failures = [c for c in checks if not c["passed"]]
    return {
        "suite": suite,
        "passed": not failures,
        "cases": len(checks),
        "failures": len(failures),
        "checks": checks,
        **extra,
    }


def identities(N: int = 1_000_000, mangoldt_N: int = 100_000) -> dict:
    """mu*1 = eps, 1*1 = tau, mu*id = phi exactly; Lambda = mu*log to 1e-9."""
    mu, o = mobius(N), one(N)
    checks = [
        {"name": "mu*1=epsilon", "N": N, "passed": convolve(mu, o).equals(epsilon(N))},
        {"name": "1*1=tau", "N": N, "passed": convolve(o, o).equals(divisor_tau(N))},
        {"name": "mu*id=phi", "N": N, "passed": convolve(mu, identity(N)).equals(euler_phi(N))},
    ]
    M = min(N, mangoldt_N)
    diff = float(np.max(np.abs(convolve(mobius(M), log_pow(M, 1)).values - von_mangoldt(M).values)))
    checks.append({"name": "Lambda=mu*log", "N": M, "max_abs_diff": diff, "passed": diff <= 1e-9})
    return _result("identities", checks)


def random_finite_table(rng: np.random.Generator, N: int, max_support: int = 1000, integer: bool = False) -> FunctionTable:
    support = int(rng.integers(1, min(max_support, N) + 1))
    vals = np.zeros(N, dtype=np.int64 if integer else np.float64)
    if integer:
        vals[:support] = rng.integers(-10, 11, size=support)
        return FunctionTable(vals, ValueKind.ExactInt, f"rand_int[{support}]")
    vals[:support] = rng.uniform(-10.0, 10.0, size=support)
    return FunctionTable(vals, ValueKind.Real, f"rand[{support}]")


def norm_axioms(seed: int = 42, cases: int = 500, max_support: int = 1000) -> dict:
    """Triangle inequality (slack 1e-9), homogeneity (1e-12 rel), exact positivity."""
    rng = np.random.default_rng(seed)
    checks = []
    for i in range(cases):
        f = random_finite_table(rng, max_support, max_support)
        g = random_finite_table(rng, max_support, max_support)
        c = float(rng.uniform(-5.0, 5.0))
        for kind in NormKind:
            nf, ng = norm_value(f, kind), norm_value(g, kind)
            nsum = norm_value(f + g, kind)
            nscaled = norm_value(f.scale(c), kind)
            homog_err = abs(nscaled - abs(c) * nf) / max(abs(c) * nf, 1e-300)
            ok = nsum <= nf + ng + 1e-9 and homog_err <= 1e-12
            checks.append({"case": i, "kind": kind.value, "triangle_gap": nsum - nf - ng, "homogeneity_rel_err": homog_err, "passed": ok})
        h = random_finite_table(rng, max_support, max_support, integer=True)
        if i % 10 == 0:
            h = FunctionTable.zeros(max_support)
        for kind in NormKind:
            v = norm_value(h, kind)
            checks.append({"case": i, "kind": kind.value, "positivity": True, "passed": (v == 0.0) == h.is_zero()})
    return _result("norm-axioms", checks, seed=seed)


def operator_bounds(seed: int = 0, N: int = 10_000, n_spikes: int = 100) -> dict:
    """Empirical operator norms on the default battery; falsifications are findings."""
    battery = default_battery(N, n_spikes, seed)
    mu = mobius(N)
    ops = [MulBy(mu), Shift(1), Shift(2), Shift(10), Cesaro(10), ConvolveBy(mu)]
    estimates = [operator_norm_estimate(op, NormKind.LogSup, battery) for op in ops]
    checks = [{**e.to_json(), "passed": True} for e in estimates]
    return _result("operator-bounds", checks, seed=seed, falsified=any(e.falsified for e in estimates))


def product(seed: int = 7, cases: int = 100, max_support: int = 200, s: complex = 2 + 3j) -> dict:
    """``D(f*g) = D(f) D(g)`` on random integer pairs, residual <= 1e-10 relative."""
    rng = np.random.default_rng(seed)
    checks = []
    for i in range(cases):
        f = random_finite_table(rng, max_support, max_support, integer=True)
        g = random_finite_table(rng, max_support, max_support, integer=True)
        res = verify_product(f, g, s)
        checks.append({"case": i, "residual": res.residual, "magnitude": res.magnitude, "passed": res.passed(1e-10)})
    return _result("product", checks, seed=seed, s=[s.real, s.imag])


def run_suite(name: str, seed: int | None = None, N: int | None = None) -> dict:
    if name == "identities":
        return identities(N or 1_000_000)
    if name == "norm-axioms":
        return norm_axioms(42 if seed is None else seed)
    if name == "operator-bounds":
        return operator_bounds(0 if seed is None else seed)
    if name == "product":
        return product(7 if seed is None else seed)
    raise ValueError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
