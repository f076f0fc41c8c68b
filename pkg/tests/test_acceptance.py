"""Acceptance criteria; each test prints one PASS/FAIL line."""

import time

import numpy as np
import pytest

from mtlfilter import checks
from mtlfilter.formula import (
    And, Finally, Globally, Historically, Once, Or, Since, TimeInterval, Until, parse,
)
from mtlfilter.kernel import (
    FUTURE, PAST, centered_gaussian, centered_window, gaussian_window, mass, rect_window,
    sigmoid_window,
)
from mtlfilter.oracle import oracle_continuous, oracle_discrete_trace, sample_oracle_continuous
from mtlfilter.qual import eval_qual_continuous, eval_qual_discrete
from mtlfilter.quant import (
    eval_quant_continuous, eval_quant_continuous_pieces, eval_quant_discrete, spike_rate,
)
from mtlfilter.randgen import (
    random_boolean_pnf, random_continuous_bundle, random_discrete_bundle, random_formula,
    random_quant_formula,
)
from mtlfilter.signal import SignalBundle

from reference import Reference


@pytest.fixture
def verdict(capsys):
    def report(n, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}: {detail}")
        assert ok, detail
    return report


def test_table_values(verdict):
    start = time.perf_counter()
    x = SignalBundle.from_arrays({"p": [1 if 2 <= i <= 6 else 0 for i in range(13)]})
    got = eval_quant_discrete(parse("O[1,4] p"), x).values
    want = (0, 0, 0, 0.25, 0.5, 0.75, 1, 1, 0.75, 0.5, 0.25, 0, 0)
    elapsed = time.perf_counter() - start
    verdict(1, got == want and elapsed < 1, f"O[1,4]p = {got}, {elapsed:.3f}s")


def _suite(name, cases, seed=0):
    start = time.perf_counter()
    cex = checks.run_suite(checks.SUITES[name], seed, cases)
    return cex, time.perf_counter() - start


def test_qualitative_discrete_suite(verdict):
    cex, elapsed = _suite("qual-discrete", 500)
    verdict(2, cex is None and elapsed < 30,
            f"500 cases, {elapsed:.1f}s" if cex is None else cex.report())


def test_qualitative_continuous_suite(verdict):
    start = time.perf_counter()
    cex = checks.run_suite(checks.SUITES["qual-continuous"], 0, 300)
    rng = np.random.default_rng(12)
    dense_bad = 0
    for _ in range(100):
        f, x = random_formula(rng, depth=4), random_continuous_bundle(rng)
        got = eval_qual_continuous(f, x)
        want = oracle_continuous(f, x)
        ts, sampled = sample_oracle_continuous(f, x, 0.01)
        dense_bad += got != want or got.split_cadlag() != want.split_cadlag()
        dense_bad += any(got.contains(t) != bool(v) for t, v in zip(ts, sampled))
    elapsed = time.perf_counter() - start
    ok = cex is None and dense_bad == 0 and elapsed < 60
    verdict(3, ok, f"300 cases + 100 dense at step 0.01, {dense_bad} mismatches, {elapsed:.1f}s"
            if cex is None else cex.report())


def test_quantitative_discrete_suite(verdict):
    cex, elapsed = _suite("quant-discrete", 500)
    verdict(4, cex is None, f"500 cases, {elapsed:.1f}s" if cex is None else cex.report())


def test_quantitative_continuous_suite(verdict):
    cex, elapsed = _suite("quant-continuous", 300)
    x = SignalBundle.from_intervals(30.0, {"p": [(5, 7)]})
    f = parse("O[2,4] p")
    fixture = eval_quant_continuous(f, x).value_at(7.0) == 0 and oracle_continuous(f, x).contains(7)
    verdict(5, cex is None and fixture,
            f"300 cases, {elapsed:.1f}s; O[2,4]p at 7: oracle true, value 0"
            if cex is None else cex.report())


def test_kernel_mass_and_sharp_sigmoid(verdict):
    iv = TimeInterval(1, 6)
    kernels = [rect_window(iv, d, kind) for d in (FUTURE, PAST) for kind in ("discrete", "continuous")]
    kernels += [gaussian_window(iv, d, r, kind) for d in (FUTURE, PAST) for r in (3, 8)
                for kind in ("discrete", "continuous")]
    kernels += [sigmoid_window(iv, d, k, kind) for d in (FUTURE, PAST) for k in (5, 50, 1000)
                for kind in ("discrete", "continuous")]
    worst = max(abs(mass(k) - 1) for k in kernels)
    # filter-output distance on O[1,6]
    x = SignalBundle.from_intervals(30.0, {"p": [(5, 7), (10, 15.5)]})
    f = parse("O[1,6] p")
    rect = eval_quant_continuous(f, x)
    sharp = eval_quant_continuous(f, x, "sigmoid:1000")
    ts = np.arange(0, 30, 0.01)
    dist = max(abs(sharp.value_at(t) - rect.value_at(t)) for t in ts)
    # kernel-value distance away from the two edges
    s = np.linspace(-2, 9, 20001)
    inner = (np.abs(s - 1) > 0.01) & (np.abs(s - 6) > 0.01)
    k_sig, k_rect = sigmoid_window(iv, PAST, 1000), rect_window(iv, PAST)
    kdist = np.max(np.abs(k_sig.eval(s) - k_rect.eval(s))[inner])
    ok = worst <= 1e-9 and dist <= 0.05 and kdist <= 0.05
    verdict(6, ok, f"{len(kernels)} kernels, worst |mass-1| {worst:.1e}; "
                   f"sup output gap {dist:.1e}, kernel gap off edges {kdist:.1e}")


def _shift_checks(rng):
    bad = 0
    for _ in range(60):
        a = int(rng.integers(0, 6))
        phi = random_quant_formula(rng, depth=2)
        xd = random_discrete_bundle(rng)
        T = xd.domain_end
        v = eval_quant_discrete(phi, xd).values
        q = eval_qual_discrete(phi, xd).values
        for op, sign, dual in ((Finally, 1, Globally), (Once, -1, Historically)):
            want = [v[i + sign * a] if 0 <= i + sign * a <= T else 0 for i in range(T + 1)]
            wantq = [q[i + sign * a] if 0 <= i + sign * a <= T else 0 for i in range(T + 1)]
            g = op(TimeInterval(a, a), phi)
            d = dual(TimeInterval(a, a), phi)
            bad += list(eval_quant_discrete(g, xd).values) != want
            bad += list(eval_qual_discrete(g, xd).values) != wantq
            dv = eval_quant_discrete(d, xd).values
            bad += any(dv[i] != want[i] for i in range(T + 1) if 0 <= i + sign * a <= T)
            bad += oracle_discrete_trace(g, xd) != [bool(w) for w in wantq]

        xc = random_continuous_bundle(rng, max_T=16)
        T = xc.domain_end
        phi = random_boolean_pnf(rng, 2) if rng.random() < 0.5 else Once(TimeInterval(0, 2), phi)
        for op, sign, dual in ((Finally, 1, Globally), (Once, -1, Historically)):
            f, d = op(TimeInterval(a, a), phi), dual(TimeInterval(a, a), phi)
            vals = eval_quant_continuous_pieces(f, xc)
            c, r = vals[id(phi)], vals[id(f)]
            dr = eval_quant_continuous(d, xc)
            probes = set(r.xs) | {t - sign * a for t in c.xs}
            probes |= {(p + q) / 2 for p, q in zip(sorted(probes), sorted(probes)[1:])}
            for t in probes:
                if not 0 <= t < T:
                    continue
                u = t + sign * a
                inside = 0 <= u < T
                bad += r.value_at(t) != (c.value_at(u) if inside else 0.0)
                bad += inside and dr.value_at(t) != r.value_at(t)
            s_phi = oracle_continuous(phi, xc)
            s_f = eval_qual_continuous(f, xc)
            bad += s_f != s_phi.dilate(-sign * a, -sign * a)
    return bad


def test_singular_intervals(verdict):
    bad = _shift_checks(np.random.default_rng(21))
    verdict(7, bad == 0, f"F/O[a,a] exact shifts and G/H[a,a] equal in-domain, {bad} mismatches")


def test_spike_rates(verdict):
    rng = np.random.default_rng(33)
    T, width, sigma = 10.0, 0.5, 0.1
    bad_rect, worst_mass = 0, 0.0
    for _ in range(20):
        spikes = np.sort(rng.uniform(0, T, rng.poisson(30)))
        rate = spike_rate(spikes, centered_window(width), T)
        for t in rng.uniform(0, T, 200):
            count = np.sum((spikes >= t - width / 2) & (spikes <= t + width / 2))
            bad_rect += rate.value_at(t) != count / width
        interior = spikes[(spikes >= 3 * sigma) & (spikes <= T - 3 * sigma)]
        grid = np.linspace(0, T, 100001)
        g = spike_rate(interior, centered_gaussian(sigma), T, grid)
        total = np.trapezoid(g, grid)
        if len(interior):
            worst_mass = max(worst_mass, abs(total - len(interior)) / len(interior))
    ok = bad_rect == 0 and worst_mass <= 0.01
    verdict(8, ok, f"20 trains, {bad_rect} rect mismatches, worst gaussian mass error {worst_mass:.2%}")


def _quad_instance(rng):
    def child():
        phi = random_boolean_pnf(rng, 2)
        if rng.random() < 0.5:
            return phi
        op = Finally if rng.random() < 0.5 else Once
        return op(_nonsingular(rng), phi)

    kind = int(rng.integers(6))
    if kind < 2:
        return (Finally, Once)[kind](_nonsingular(rng), child())
    if kind < 4:
        return (Until, Since)[kind - 2](_nonsingular(rng), random_boolean_pnf(rng, 2), child())
    return (And, Or)[kind - 4](child(), child())


def _nonsingular(rng):
    a = int(rng.integers(0, 8))
    return TimeInterval(a, a + int(rng.integers(1, 6)))


def test_quadrature_agreement(verdict):
    rng = np.random.default_rng(44)
    worst = 0.0
    for _ in range(100):
        f = _quad_instance(rng)
        x = random_continuous_bundle(rng, max_T=24)
        r = eval_quant_continuous(f, x)
        try:
            value = r.to_piecewise_linear()
        except ValueError:  # jumps or curved pieces: use the exact pieces
            value = r.value_at
        ref = Reference(f, x)
        for t in rng.uniform(0, x.domain_end, 50):
            worst = max(worst, abs(value(t) - ref.value(f, t)))
    verdict(9, worst <= 1e-6, f"100 instances x 50 points, worst gap {worst:.1e}")
