"""Classical (quantifier-based) MTL semantics used as ground truth.

Discrete time is evaluated by literal enumeration of the quantifier
clauses. Continuous time is evaluated set-wise on exact interval endpoints.
Both are slow on purpose: they are written to be obviously faithful to the
clauses, not efficient.
"""

import math
from bisect import bisect_left

import numpy as np

from .errors import OpenIntervalUnsupported, UnknownProposition
from .formula import (
    And, Binary, Const, Finally, Globally, Historically, Not, Once, Or, Prop,
    Since, Unary, Until, subformulas,
)
from .signal import SignalBundle
from .timeset import Piece, TimeSet, intersect_pieces

INF = math.inf


def _offsets(iv):
    """Integer offsets of a (possibly open) interval."""
    lo = iv.lo + 1 if iv.lo_open else iv.lo
    hi = iv.hi - 1 if iv.hi_open else iv.hi
    return range(lo, hi + 1)


def _prop_trace(x: SignalBundle, name):
    try:
        return x.propositions[name].values
    except KeyError:
        raise UnknownProposition(f"unknown proposition {name!r}") from None


def oracle_discrete_trace(f, x: SignalBundle) -> list:
    """Truth value of ``f`` at every ``i`` in ``{0..T}``."""
    T = x.domain_end
    dom = range(T + 1)
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        if isinstance(g, Const):
            out = [g.value] * (T + 1)
        elif isinstance(g, Prop):
            out = [bool(v) for v in _prop_trace(x, g.name)]
        elif isinstance(g, Not):
            a = memo[id(g.arg)]
            out = [not a[i] for i in dom]
        elif isinstance(g, Or):
            a, b = memo[id(g.left)], memo[id(g.right)]
            out = [a[i] or b[i] for i in dom]
        elif isinstance(g, And):
            a, b = memo[id(g.left)], memo[id(g.right)]
            out = [a[i] and b[i] for i in dom]
        elif isinstance(g, Unary):
            phi, offs = memo[id(g.arg)], _offsets(g.interval)
            sign = 1 if isinstance(g, (Finally, Globally)) else -1
            quant = any if isinstance(g, (Finally, Once)) else all
            out = [
                quant(phi[i + sign * d] for d in offs if 0 <= i + sign * d <= T)
                for i in dom
            ]
        elif isinstance(g, Until):
            # exists j in (i + I) ∩ T: psi(j) and forall k in (i, j): phi(k)
            phi, psi = memo[id(g.left)], memo[id(g.right)]
            out = [
                any(
                    psi[i + d] and all(phi[k] for k in range(i + 1, i + d))
                    for d in _offsets(g.interval)
                    if i + d <= T
                )
                for i in dom
            ]
        elif isinstance(g, Since):
            # exists j in (i - I) ∩ T: psi(j) and forall k in (j, i): phi(k)
            phi, psi = memo[id(g.left)], memo[id(g.right)]
            out = [
                any(
                    psi[i - d] and all(phi[k] for k in range(i - d + 1, i))
                    for d in _offsets(g.interval)
                    if i - d >= 0
                )
                for i in dom
            ]
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[id(g)] = out
    return memo[id(f)]


def oracle_discrete(f, x: SignalBundle, i: int) -> bool:
    return oracle_discrete_trace(f, x)[i]


# -- continuous time --------------------------------------------------------


def _prop_set(x: SignalBundle, name) -> TimeSet:
    try:
        s = x.propositions[name]
    except KeyError:
        raise UnknownProposition(f"unknown proposition {name!r}") from None
    return TimeSet.from_cadlag(s.intervals, x.domain_end)


def _check_closed(g):
    if not g.interval.closed:
        raise OpenIntervalUnsupported(f"continuous time needs closed intervals: {g}")


def _until_set(phi: TimeSet, psi: TimeSet, a, b) -> TimeSet:
    """Marking construction for ``phi U[a,b] psi``.

    A witness j with t < j forces the open stretch (t, j) into a single
    maximal component D of phi, i.e. D.lo <= t and j <= D.hi. Ranging j
    over psi ∩ (-inf, D.hi] sweeps t over [j - b, j - a] (for a > 0) or
    [j - b, j) (for a = 0, where j = t needs no phi at all).
    """
    out = list(psi.pieces) if a == 0 else []
    if b > 0:
        for d in phi.pieces:
            cap = Piece(-INF, d.hi, True, True)
            for c in psi.pieces:
                cp = intersect_pieces(c, cap)
                if cp.is_empty():
                    continue
                if a > 0:
                    cand = Piece(cp.lo - b, cp.hi - a, cp.lo_closed, cp.hi_closed)
                else:
                    cand = Piece(cp.lo - b, cp.hi, cp.lo_closed, False)
                cand = intersect_pieces(cand, Piece(d.lo, INF, True, True))
                if not cand.is_empty():
                    out.append(cand)
    return TimeSet(out, psi.end)


def _since_set(phi: TimeSet, psi: TimeSet, a, b) -> TimeSet:
    """Mirror image of :func:`_until_set`: (j, t) inside one component."""
    out = list(psi.pieces) if a == 0 else []
    if b > 0:
        for d in phi.pieces:
            cap = Piece(d.lo, INF, True, True)
            for c in psi.pieces:
                cp = intersect_pieces(c, cap)
                if cp.is_empty():
                    continue
                if a > 0:
                    cand = Piece(cp.lo + a, cp.hi + b, cp.lo_closed, cp.hi_closed)
                else:
                    cand = Piece(cp.lo, cp.hi + b, False, cp.hi_closed)
                cand = intersect_pieces(cand, Piece(-INF, d.hi, True, True))
                if not cand.is_empty():
                    out.append(cand)
    return TimeSet(out, psi.end)


def oracle_continuous_sets(f, x: SignalBundle) -> dict:
    """Exact satisfaction set of every subformula, keyed by ``id``."""
    T = x.domain_end
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        if isinstance(g, Const):
            out = TimeSet.full(T) if g.value else TimeSet.empty(T)
        elif isinstance(g, Prop):
            out = _prop_set(x, g.name)
        elif isinstance(g, Not):
            out = memo[id(g.arg)].complement()
        elif isinstance(g, Or):
            out = memo[id(g.left)].union(memo[id(g.right)])
        elif isinstance(g, And):
            out = memo[id(g.left)].intersect(memo[id(g.right)])
        elif isinstance(g, Unary):
            _check_closed(g)
            a, b = g.interval.lo, g.interval.hi
            phi = memo[id(g.arg)]
            if isinstance(g, Finally):
                # {t : [t+a, t+b] ∩ phi ≠ ∅}
                out = phi.dilate(-b, -a)
            elif isinstance(g, Once):
                out = phi.dilate(a, b)
            elif isinstance(g, Globally):
                # forall j in (t+I) ∩ T  ==  not exists j in (t+I) ∩ T outside phi
                out = phi.complement().dilate(-b, -a).complement()
            else:
                out = phi.complement().dilate(a, b).complement()
        elif isinstance(g, Binary):
            _check_closed(g)
            a, b = g.interval.lo, g.interval.hi
            phi, psi = memo[id(g.left)], memo[id(g.right)]
            out = _until_set(phi, psi, a, b) if isinstance(g, Until) else _since_set(phi, psi, a, b)
        else:
            raise TypeError(f"not a formula: {g!r}")
        memo[id(g)] = out
    return memo


def oracle_continuous(f, x: SignalBundle) -> TimeSet:
    """Exact classical satisfaction set of ``f`` over ``[0, T)``.

    Use :meth:`TimeSet.split_cadlag` to get the cadlag intervals plus the
    isolated points where the set differs from them.
    """
    return oracle_continuous_sets(f, x)[id(f)]


def _left_component(s: TimeSet, t):
    """Piece of ``s`` containing ``(t - eps, t)``, or None."""
    k = bisect_left(s._los, t) - 1
    if k >= 0:
        p = s.pieces[k]
        if p.lo < t <= p.hi:
            return p
    return None


def clause_at(g, t, child_sets) -> bool:
    """Evaluate the top clause of ``g`` at a single time ``t``.

    ``child_sets`` maps ``id`` of each immediate subformula to its exact
    satisfaction set; the quantifiers over ``[t+a, t+b]`` reduce to
    intersection queries on those sets.
    """
    if isinstance(g, Const):
        return g.value
    if isinstance(g, Prop):
        return child_sets[id(g)].contains(t)
    if isinstance(g, Not):
        return not child_sets[id(g.arg)].contains(t)
    if isinstance(g, Or):
        return child_sets[id(g.left)].contains(t) or child_sets[id(g.right)].contains(t)
    if isinstance(g, And):
        return child_sets[id(g.left)].contains(t) and child_sets[id(g.right)].contains(t)
    a, b = g.interval.lo, g.interval.hi
    if isinstance(g, Unary):
        phi = child_sets[id(g.arg)]
        win = Piece(t + a, t + b, True, True) if isinstance(g, (Finally, Globally)) \
            else Piece(t - b, t - a, True, True)
        if isinstance(g, (Finally, Once)):
            return phi.meets(win)
        return not phi.complement().meets(win)
    phi, psi = child_sets[id(g.left)], child_sets[id(g.right)]
    if a == 0 and psi.contains(t):
        return True
    if isinstance(g, Until):
        d = phi.component_at_right(t)
        if d is None:
            return False
        reach = Piece(t, d.hi, False, True)
        return psi.meets(intersect_pieces(reach, Piece(t + a, t + b, True, True)))
    d = _left_component(phi, t)
    if d is None:
        return False
    reach = Piece(d.lo, t, True, False)
    return psi.meets(intersect_pieces(reach, Piece(t - b, t - a, True, True)))


def sample_oracle_continuous(f, x: SignalBundle, step=0.01, times=None):
    """Dense-grid check of ``f``: returns ``(times, bool array)``.

    Subformula sets come from :func:`oracle_continuous_sets`; only the top
    clause is evaluated pointwise, so this cross-checks the set
    construction of the outermost operator.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    sets = oracle_continuous_sets(f, x)
    if isinstance(f, Prop):
        sets[id(f)] = _prop_set(x, f.name)
    if times is None:
        n = int(math.ceil(x.domain_end / step))
        times = [k * step for k in range(n) if k * step < x.domain_end]
    vals = np.array([clause_at(f, t, sets) for t in times], dtype=bool)
    return np.asarray(times, dtype=float), vals
