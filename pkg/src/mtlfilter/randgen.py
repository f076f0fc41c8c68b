"""Random formulas and signals for the property suites."""

import numpy as np

from .formula import (
    FALSE, TRUE, And, Finally, Globally, Historically, Not, Once, Or, Prop,
    Since, TimeInterval, Until,
)
from .signal import CONTINUOUS, DISCRETE, DiscreteTrace, IntervalSet, SignalBundle

PROPS = ("p", "q", "r")
UNARY = (Finally, Globally, Once, Historically)
BINARY = (Until, Since)


def random_interval(rng, max_bound=8, singular_prob=0.15):
    a = int(rng.integers(0, max_bound + 1))
    if rng.random() < singular_prob:
        return TimeInterval(a, a)
    b = int(rng.integers(a, max_bound + 1))
    return TimeInterval(a, b)


def _literal(rng, props, negate):
    if rng.random() < 0.06:
        return TRUE if rng.random() < 0.5 else FALSE
    p = Prop(props[int(rng.integers(len(props)))])
    if negate and rng.random() < 0.35:
        return Not(p)
    return p


def random_formula(rng, depth=4, props=PROPS, max_bound=8, pnf=False):
    """Formula of nesting depth at most ``depth``.

    With ``pnf`` negation only occurs on propositions.
    """
    if depth <= 1 or rng.random() < 0.2:
        return _literal(rng, props, negate=True)
    sub = lambda: random_formula(rng, depth - 1, props, max_bound, pnf)  # noqa: E731
    kinds = ["and", "or", "unary", "unary", "binary"] + ([] if pnf else ["not"])
    kind = kinds[int(rng.integers(len(kinds)))]
    if kind == "not":
        return Not(sub())
    if kind == "and":
        return And(sub(), sub())
    if kind == "or":
        return Or(sub(), sub())
    if kind == "unary":
        cls = UNARY[int(rng.integers(len(UNARY)))]
        return cls(random_interval(rng, max_bound), sub())
    cls = BINARY[int(rng.integers(len(BINARY)))]
    return cls(random_interval(rng, max_bound), sub(), sub())


def random_boolean_pnf(rng, depth=2, props=PROPS, max_bound=8):
    """PNF formula whose continuous quantitative value is {0,1}-valued.

    Built from literals, and/or, and G/H (an infimum of {0,1} values).
    """
    if depth <= 1 or rng.random() < 0.3:
        return _literal(rng, props, negate=True)
    sub = lambda: random_boolean_pnf(rng, depth - 1, props, max_bound)  # noqa: E731
    kind = int(rng.integers(3))
    if kind == 0:
        return And(sub(), sub())
    if kind == 1:
        return Or(sub(), sub())
    cls = Globally if rng.random() < 0.5 else Historically
    return cls(random_interval(rng, max_bound), sub())


def random_quant_formula(rng, depth=3, props=PROPS, max_bound=8):
    """PNF formula whose Until/Since left operands are {0,1}-valued."""
    if depth <= 1 or rng.random() < 0.2:
        return _literal(rng, props, negate=True)
    sub = lambda: random_quant_formula(rng, depth - 1, props, max_bound)  # noqa: E731
    kind = int(rng.integers(5))
    if kind == 0:
        return And(sub(), sub())
    if kind == 1:
        return Or(sub(), sub())
    if kind in (2, 3):
        cls = UNARY[int(rng.integers(len(UNARY)))]
        return cls(random_interval(rng, max_bound), sub())
    cls = BINARY[int(rng.integers(len(BINARY)))]
    left = random_boolean_pnf(rng, depth - 1, props, max_bound)
    return cls(random_interval(rng, max_bound), left, sub())


def random_discrete_bundle(rng, props=PROPS, max_T=32, density=None):
    T = int(rng.integers(0, max_T + 1))
    traces = {}
    for name in props:
        dens = rng.uniform(0.2, 0.8) if density is None else density
        vals = tuple(int(v) for v in rng.random(T + 1) < dens)
        traces[name] = DiscreteTrace(vals, T, name)
    return SignalBundle(DISCRETE, T, traces)


def random_interval_set(rng, T, max_segments=8, grid=0.25):
    n_grid = int(round(T / grid))
    k = int(rng.integers(0, max_segments + 1))
    k = min(k, (n_grid + 1) // 2)
    if k == 0:
        return IntervalSet((), T)
    cuts = np.sort(rng.choice(n_grid + 1, size=2 * k, replace=False)) * grid
    pairs = [(float(cuts[2 * i]), float(cuts[2 * i + 1])) for i in range(k)]
    return IntervalSet(tuple(pairs), T)


def random_continuous_bundle(rng, props=PROPS, max_T=32, max_segments=8, grid=0.25):
    T = float(rng.integers(1, max_T + 1))
    sets = {name: random_interval_set(rng, T, max_segments, grid) for name in props}
    return SignalBundle(CONTINUOUS, T, sets)
