"""Randomized agreement suites between the filters and the classical oracle.

Each suite draws ``(formula, signal)`` pairs from a seeded generator and
looks for a time where the property fails. A failing case is shrunk
greedily (smaller formula, smaller signal) before it is reported.
"""

from dataclasses import dataclass, replace
from typing import Callable, Optional

import numpy as np

from . import oracle, qual, quant
from .errors import MTLError
from .formula import And, Binary, Const, Not, Or, TimeInterval, Unary
from .randgen import (
    random_continuous_bundle, random_discrete_bundle, random_formula,
    random_quant_formula,
)
from .signal import CONTINUOUS, DiscreteTrace, IntervalSet, SignalBundle, dumps_bundle
from .timeset import TimeSet


@dataclass
class Counterexample:
    suite: str
    formula: object
    signal: SignalBundle
    time: float
    detail: str

    def report(self) -> str:
        return (
            f"counterexample in {self.suite}\n"
            f"  formula: {self.formula}\n"
            f"  signal:  {dumps_bundle(self.signal).strip()}\n"
            f"  time:    {self.time}\n"
            f"  {self.detail}"
        )


# -- violation finders: return (time, detail) or None -----------------------


def _discrete_qual(f, x):
    got = qual.eval_qual_discrete(f, x).values
    want = oracle.oracle_discrete_trace(f, x)
    for i, (g, w) in enumerate(zip(got, want)):
        if bool(g) != bool(w):
            return i, f"filter={g} oracle={int(w)}"
    return None


def _first_point(s: TimeSet):
    p = s.pieces[0]
    if p.lo_closed:
        return p.lo
    return (p.lo + min(p.hi, p.lo + 0.125)) / 2


def _continuous_qual(f, x):
    got = qual.eval_qual_continuous(f, x)
    want = oracle.oracle_continuous(f, x)
    if got == want:
        return None
    diff = got.intersect(want.complement()).union(want.intersect(got.complement()))
    t = _first_point(diff)
    return t, f"filter={int(got.contains(t))} oracle={int(want.contains(t))}"


def _discrete_quant(f, x):
    got = quant.eval_quant_discrete(f, x).values
    want = oracle.oracle_discrete_trace(f, x)
    for i, (g, w) in enumerate(zip(got, want)):
        if (g > 0) != bool(w) or not 0 <= g <= 1:
            return i, f"value={g!r} oracle={int(w)}"
    return None


def _probe_times(end, *point_lists):
    pts = sorted({p for pl in point_lists for p in pl if 0 <= p < end} | {0.0})
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:] + [end])]
    return sorted(set(pts) | set(mids))


def _continuous_quant(f, x):
    got = quant.eval_quant_continuous(f, x)
    want = oracle.oracle_continuous(f, x)
    for t in _probe_times(x.domain_end, got.xs, want.endpoints()):
        v = got.value_at(t)
        if (v > 0 and not want.contains(t)) or not 0 <= v <= 1:
            return t, f"value={v!r} oracle={int(want.contains(t))}"
    return None


@dataclass
class Suite:
    name: str
    title: str
    draw: Callable
    violation: Callable


def _draw_discrete(rng, pnf):
    return random_formula(rng, depth=4, max_bound=8, pnf=pnf), random_discrete_bundle(rng, max_T=32)


def _draw_continuous(rng):
    return random_formula(rng, depth=4, max_bound=8), random_continuous_bundle(rng, max_T=32)


def _draw_continuous_quant(rng):
    return random_quant_formula(rng, depth=3, max_bound=8), random_continuous_bundle(rng, max_T=32)


SUITES = {
    "qual-discrete": Suite("qual-discrete", "qualitative filter = classical (discrete)",
                  lambda rng: _draw_discrete(rng, False), _discrete_qual),
    "qual-continuous": Suite("qual-continuous", "qualitative filter = classical (continuous)",
                  _draw_continuous, _continuous_qual),
    "quant-discrete": Suite("quant-discrete", "quantitative > 0 iff classical (discrete)",
                  lambda rng: _draw_discrete(rng, True), _discrete_quant),
    "quant-continuous": Suite("quant-continuous", "quantitative > 0 implies classical (continuous)",
                  _draw_continuous_quant, _continuous_quant),
}


# -- shrinking --------------------------------------------------------------


def _interval_variants(iv: TimeInterval):
    # a + b strictly decreases, so shrinking terminates
    a, b = iv.lo, iv.hi
    for lo, hi in ((0, b), (a, a), (a, b - 1), (a - 1, b - 1), (0, 0)):
        if 0 <= lo <= hi and lo + hi < a + b:
            yield TimeInterval(lo, hi)


def formula_variants(f):
    """Strictly smaller or simpler formulas derived from ``f``."""
    if isinstance(f, Not):
        yield f.arg
        for v in formula_variants(f.arg):
            yield Not(v)
    elif isinstance(f, (And, Or)):
        yield f.left
        yield f.right
        for v in formula_variants(f.left):
            yield replace(f, left=v)
        for v in formula_variants(f.right):
            yield replace(f, right=v)
    elif isinstance(f, Unary):
        yield f.arg
        for iv in _interval_variants(f.interval):
            yield replace(f, interval=iv)
        for v in formula_variants(f.arg):
            yield replace(f, arg=v)
    elif isinstance(f, Binary):
        yield f.right
        yield f.left
        for iv in _interval_variants(f.interval):
            yield replace(f, interval=iv)
        for v in formula_variants(f.left):
            yield replace(f, left=v)
        for v in formula_variants(f.right):
            yield replace(f, right=v)
    elif not isinstance(f, Const):
        yield Const(True)
        yield Const(False)


def signal_variants(x: SignalBundle):
    props = x.propositions
    if x.time_kind == CONTINUOUS:
        T = x.domain_end
        if T > 1:
            newT = T - 1
            yield SignalBundle(CONTINUOUS, newT, {
                n: IntervalSet.normalized([(lo, min(hi, newT)) for lo, hi in s.intervals if lo < newT], newT)
                for n, s in props.items()
            })
        for n, s in props.items():
            for k in range(len(s.intervals)):
                rest = s.intervals[:k] + s.intervals[k + 1:]
                yield SignalBundle(CONTINUOUS, T, {**props, n: IntervalSet(rest, T)})
        return
    T = x.domain_end
    if T > 0:
        yield SignalBundle(x.time_kind, T - 1, {
            n: DiscreteTrace(tr.values[:-1], T - 1, n) for n, tr in props.items()
        })
        yield SignalBundle(x.time_kind, T - 1, {
            n: DiscreteTrace(tr.values[1:], T - 1, n) for n, tr in props.items()
        })
    for n, tr in props.items():
        for i, v in enumerate(tr.values):
            if v:
                vals = tr.values[:i] + (0,) + tr.values[i + 1:]
                yield SignalBundle(x.time_kind, T, {**props, n: DiscreteTrace(vals, T, n)})


def _fails(suite, f, x):
    try:
        return suite.violation(f, x)
    except MTLError:
        return None


def shrink(suite: Suite, f, x, budget=2000):
    """Greedy descent: take the first simpler variant that still fails."""
    found = _fails(suite, f, x)
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for g in formula_variants(f):
            steps += 1
            r = _fails(suite, g, x)
            if r is not None:
                f, found, improved = g, r, True
                break
        if improved:
            continue
        for y in signal_variants(x):
            steps += 1
            r = _fails(suite, f, y)
            if r is not None:
                x, found, improved = y, r, True
                break
    return f, x, found


def run_suite(suite: Suite, seed=0, cases=500) -> Optional[Counterexample]:
    rng = np.random.default_rng([seed, list(SUITES).index(suite.name)])
    for _ in range(cases):
        f, x = suite.draw(rng)
        if suite.violation(f, x) is not None:
            f, x, (t, detail) = shrink(suite, f, x)
            return Counterexample(suite.name, f, x, t, detail)
    return None
