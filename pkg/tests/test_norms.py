import json
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arithspace import (
    DivergenceError,
    DomainError,
    FunctionTable,
    GrowthBound,
    NormKind,
    hilbert_component,
    hilbert_sup,
    log_average_component,
    truncation_error,
    u_norm_hybrid,
    u_norm_log,
)
from arithspace.functions import Kind, build_classical, classical_growth_bound, epsilon, liouville, mobius, one, von_mangoldt
from arithspace.norms import norm_value, truncation_curve

from oracles import log_average_exact

INV_LOG3 = 0.9102392266268374
ONE_HILBERT_INFINITE = 1.028729676970379


def _squared_one_sum(lo, hi, chunk=10_000_000):
    """sum_{lo<n<=hi} 1/(n^2 log^2(2+n)) in float64 chunks, summed with fsum."""
    parts = []
    a = lo + 1
    while a <= hi:
        b = min(hi, a + chunk - 1)
        n = np.arange(a, b + 1, dtype=np.float64)
        parts.append(math.fsum((1.0 / (n * np.log(2.0 + n)) ** 2).tolist()) if b - a < 2e6
                     else float(np.sum(1.0 / (n * np.log(2.0 + n)) ** 2)))
        a = b + 1
    return math.fsum(parts)


def test_epsilon_closed_forms():
    eps = epsilon(1000)
    for s in (1.0, 1.5, 3.0):
        v, tail, certified = hilbert_component(eps, s)
        assert v == pytest.approx(INV_LOG3, rel=1e-15)
        assert tail == 0.0 and not certified
    assert hilbert_sup(eps).value == pytest.approx(INV_LOG3, rel=1e-15)
    la = log_average_component(eps, 1000)
    assert la.value == pytest.approx(INV_LOG3, rel=1e-15) and la.argmax == 1
    rep = u_norm_hybrid(eps)
    assert rep.value == pytest.approx(1.8204784532536748, rel=1e-15)
    assert rep.argmax_witness == 1


def test_zero_is_zero_everywhere():
    z = FunctionTable.zeros(500)
    assert u_norm_hybrid(z).value == 0.0
    assert u_norm_log(z).value == 0.0
    assert log_average_component(z).value == 0.0
    assert hilbert_component(z, 2.0).value == 0.0


def test_one_log_average_matches_rational_oracle():
    o = one(10 ** 6)
    la = log_average_component(o)
    assert la.argmax == 8
    assert la.value == pytest.approx(1.180350359744195, rel=1e-14)
    small, at = log_average_exact([1] * 2000, math.log)
    assert at == 8 and small == pytest.approx(la.value, rel=1e-14)


@given(st.lists(st.integers(-10, 10), min_size=1, max_size=60))
@settings(max_examples=60, deadline=None)
def test_log_average_matches_exact_prefix_sums(vals):
    f = FunctionTable.from_values(vals)
    value, at = log_average_exact(vals, math.log)
    la = log_average_component(f)
    assert la.value == pytest.approx(value, rel=1e-12, abs=1e-15)


@given(st.lists(st.floats(-10, 10), min_size=1, max_size=30))
@settings(max_examples=40, deadline=None)
def test_integer_sweep_dominates_real_sampling(vals):
    f = FunctionTable.from_values(vals)
    la = log_average_component(f)
    xs = np.linspace(1.0, len(vals) + 0.999, 4000)
    prefix = np.concatenate([[0.0], np.cumsum(np.array(vals) / np.arange(1, len(vals) + 1))])
    dense = np.abs(prefix[np.floor(xs).astype(int)]) / np.log(2.0 + xs)
    assert dense.max() <= la.value * (1 + 1e-12) + 1e-15


@pytest.mark.parametrize("kind", list(Kind))
def test_hilbert_component_nonincreasing_in_s(kind):
    f = build_classical(kind, 5000)
    vals = [hilbert_component(f, s).value for s in (1.0, 1.1, 1.5, 2.0, 3.0)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))


def test_hilbert_sup_is_s_equal_one():
    mu = mobius(10 ** 6)
    assert hilbert_sup(mu).value == hilbert_component(mu, 1.0).value
    assert "monotone" in hilbert_sup(mu).note


def test_one_certified_interval_contains_ten_million_sum():
    v, tail, certified = hilbert_component(one(10 ** 4), 1.0, GrowthBound(1.0))
    assert certified
    direct = math.sqrt(_squared_one_sum(0, 10 ** 7))
    assert v <= direct <= math.sqrt(v * v + tail)


def test_one_certified_interval_at_million_contains_hundred_million_sum():
    res = hilbert_component(one(10 ** 6), 1.0, GrowthBound(1.0))
    head = res.value ** 2
    direct = math.sqrt(head + _squared_one_sum(10 ** 6, 10 ** 8))
    assert res.value <= direct <= res.upper
    assert res.value <= ONE_HILBERT_INFINITE <= res.upper


def _integrated_tail(N):
    mp.mp.dps = 25
    return float(mp.quad(lambda t: 1 / (t * mp.log(2 + t)) ** 2, [N, mp.inf]))


def test_width_ratio_tracks_the_true_tail():
    b = GrowthBound(1.0)
    t4 = hilbert_component(one(10 ** 4), 1.0, b).tail
    t5 = hilbert_component(one(10 ** 5), 1.0, b).tail
    ratio = t4 / t5
    assert 10 <= ratio <= 20
    assert ratio == pytest.approx(_integrated_tail(10 ** 4) / _integrated_tail(10 ** 5), rel=0.05)


def test_hilbert_errors():
    with pytest.raises(DomainError):
        hilbert_component(one(10), 0.5)
    with pytest.raises(DivergenceError):
        hilbert_component(one(10), 1.0, GrowthBound(1.0, alpha=0.5))


def test_mobius_log_sup():
    rep = u_norm_log(mobius(1000))
    assert rep.value == pytest.approx(INV_LOG3, rel=1e-15) and rep.argmax_witness == 1


def test_von_mangoldt_log_sup_at_largest_prime():
    N = 10 ** 6
    rep = u_norm_log(von_mangoldt(N), classical_growth_bound(Kind.VonMangoldt))
    assert rep.argmax_witness == 999983
    assert rep.value == pytest.approx(math.log(999983) / math.log(999985), rel=1e-15)
    assert rep.value < 1.0
    assert rep.certified_upper == 1.0


def test_report_json_fields():
    rep = u_norm_hybrid(mobius(100))
    js = rep.to_json()
    assert list(js) == ["kind", "value", "certified_upper", "argmax", "scan_limit", "hilbert_part", "log_average_part"]
    json.dumps(js)
    assert u_norm_log(mobius(100)).to_json()["hilbert_part"] is None


def test_hybrid_certified_upper_needs_both_parts():
    o = one(1000)
    assert u_norm_hybrid(o, GrowthBound(1.0)).certified_upper is None
    rep = u_norm_hybrid(o, GrowthBound(1.0), log_average_bound=1.2)
    assert rep.certified_upper >= rep.value


def test_truncation_examples():
    f = FunctionTable.from_values(list(range(1, 11)) + [0] * 90)
    assert truncation_error(f, 10) == 0.0
    mu = mobius(1000)
    assert truncation_error(mu, 100) == pytest.approx(1 / math.log(103), rel=1e-15)
    curve = [e for _, e in truncation_curve(mu, range(0, 1000, 7))]
    assert all(a >= b for a, b in zip(curve, curve[1:]))
    with pytest.raises(DomainError):
        truncation_error(mu, 1000)


@pytest.mark.parametrize("builder", [mobius, epsilon, liouville])
def test_truncation_shrinks_toward_table_end(builder):
    f = builder(10 ** 4)
    errs = [truncation_error(f, M) for M in (10, 100, 1000, 9999)]
    assert errs[-1] <= 1 / math.log(2 + 10 ** 4)
    assert all(a >= b for a, b in zip(errs, errs[1:]))


def test_log_counterexample_has_constant_error_one():
    N = 10 ** 4
    f = FunctionTable.from_values(np.log(2.0 + np.arange(1, N + 1)))
    assert {truncation_error(f, M) for M in (0, 10, 100, 5000, N - 1)} == {1.0}


def test_length_one_and_norm_kinds():
    f = FunctionTable.from_values([3])
    assert norm_value(f, "logsup") == pytest.approx(3 / math.log(3))
    assert norm_value(f, NormKind.HybridU) == pytest.approx(6 / math.log(3))
    with pytest.raises(DomainError):
        NormKind.parse("l7")
