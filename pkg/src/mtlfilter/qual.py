"""Qualitative MTL semantics as max-min (dioid) filtering.

Discrete time: every temporal operator is a max-min convolution of a
{0,1} trace with an unnormalized rectangular or Kronecker window; G and H
are the complements of F and O applied to the complement.

Continuous time: the supremum over ``j`` of ``min(phi(j), w(t - j))`` has a
piecewise-constant integrand, so it is decided by probing the critical
points of the integrand (and one point between each pair). The output set
is assembled cell by cell over a partition of ``[0, T)`` whose boundaries
are input endpoints shifted by the window bounds.
"""

import numpy as np

from .errors import KernelShapeError, OpenIntervalUnsupported, UnknownProposition
from .formula import (
    And, Binary, Const, Finally, Globally, Historically, Not, Once, Or, Prop,
    Since, TimeInterval, Unary, Until, subformulas,
)
from .kernel import FUTURE, PAST, RECT, Kernel, parse_kernel_spec, rect_window
from .signal import DiscreteTrace, SignalBundle
from .timeset import Piece, TimeSet


def _check_kernel(kernel):
    shape, _ = parse_kernel_spec(kernel) if isinstance(kernel, str) else kernel
    if shape != RECT:
        raise KernelShapeError("qualitative semantics only supports rectangular windows")


def _shift(v: np.ndarray, s: int) -> np.ndarray:
    """``out[i] = v[i - s]``, zero where ``i - s`` leaves the domain."""
    out = np.zeros_like(v)
    n = len(v)
    if s >= 0:
        if s < n:
            out[s:] = v[: n - s]
    elif -s < n:
        out[: n + s] = v[-s:]
    return out


def maxmin_convolve(v: np.ndarray, kernel: Kernel) -> np.ndarray:
    """``out[i] = max_j min(v[j], w[i - j])`` over ``j`` in the domain."""
    out = np.zeros_like(v, dtype=float)
    for s in kernel.integer_lags():
        w = kernel.eval(s)
        if w:
            out = np.maximum(out, np.minimum(_shift(v, int(s)), w))
    return out


def _window(interval, direction):
    return rect_window(interval, direction, "discrete", normalized=False)


def _discrete_temporal(g, memo, n):
    iv = g.interval
    if isinstance(g, Unary):
        phi = memo[id(g.arg)]
        direction = FUTURE if isinstance(g, (Finally, Globally)) else PAST
        if isinstance(g, (Finally, Once)):
            return maxmin_convolve(phi, _window(iv, direction))
        return 1.0 - maxmin_convolve(1.0 - phi, _window(iv, direction))
    phi, psi = memo[id(g.left)], memo[id(g.right)]
    direction = FUTURE if isinstance(g, Until) else PAST
    out = np.zeros(n)
    for j in range(iv.lo, iv.hi + 1):
        if j >= 2:
            # G_[1,j-1] phi (or H_[1,j-1] phi)
            stay = 1.0 - maxmin_convolve(1.0 - phi, _window(TimeInterval(1, j - 1), direction))
        else:
            stay = np.ones(n)
        hit = maxmin_convolve(psi, _window(TimeInterval(j, j), direction))
        out = np.maximum(out, np.minimum(stay, hit))
    return out


def _check_discrete_intervals(g):
    if isinstance(g, (Unary, Binary)) and not g.interval.closed:
        raise OpenIntervalUnsupported(f"discrete evaluation takes closed intervals: {g}")


def eval_qual_discrete(f, x: SignalBundle, kernel="rect") -> DiscreteTrace:
    """Boolean truth trace of ``f`` at every ``i`` in ``{0..T}``."""
    _check_kernel(kernel)
    n = x.domain_end + 1
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        _check_discrete_intervals(g)
        if isinstance(g, Const):
            out = np.full(n, float(g.value))
        elif isinstance(g, Prop):
            if g.name not in x.propositions:
                raise UnknownProposition(f"unknown proposition {g.name!r}")
            out = x.propositions[g.name].as_array()
        elif isinstance(g, Not):
            out = 1.0 - memo[id(g.arg)]
        elif isinstance(g, Or):
            out = np.maximum(memo[id(g.left)], memo[id(g.right)])
        elif isinstance(g, And):
            out = np.minimum(memo[id(g.left)], memo[id(g.right)])
        else:
            out = _discrete_temporal(g, memo, n)
        memo[id(g)] = out
    return DiscreteTrace(tuple(int(v) for v in memo[id(f)]), x.domain_end, str(f))


# -- continuous time --------------------------------------------------------


class _Indexed:
    """A TimeSet with a sorted endpoint array for window probing."""

    def __init__(self, s: TimeSet):
        self.set = s
        self.eps = np.array(s.endpoints(), dtype=float)

    def inner(self, lo, hi):
        """Endpoints strictly between ``lo`` and ``hi``."""
        i = np.searchsorted(self.eps, lo, side="right")
        k = np.searchsorted(self.eps, hi, side="left")
        return self.eps[i:k].tolist()


def _probe_points(lo, hi, inner, lo_closed=True, hi_closed=True):
    """Critical points of a piecewise-constant integrand on a window."""
    knots = [lo] + inner + [hi]
    pts = [lo] if lo_closed else []
    for u, v in zip(knots, knots[1:]):
        if u < v:
            pts.append((u + v) / 2)
        if v != hi:
            pts.append(v)
    if hi_closed and hi != lo:
        pts.append(hi)
    return pts


def _sup_hits(s: _Indexed, lo, hi, end, lo_closed=True, hi_closed=True) -> bool:
    """``sup_{j in window ∩ [0,end)} s(j)`` for a {0,1} set ``s``."""
    if hi < lo or (hi == lo and not (lo_closed and hi_closed)):
        return False
    for j in _probe_points(lo, hi, s.inner(lo, hi), lo_closed, hi_closed):
        if 0 <= j < end and s.set.contains(j):
            return True
    return False


def _filter_point(kernel: Kernel, phi: _Indexed, t, end) -> bool:
    # sup_j min(phi(j), w(t - j)): the unnormalized rect equals 1 on the
    # closed window returned by kernel.window, 0 elsewhere
    lo, hi = kernel.window(t)
    return _sup_hits(phi, lo, hi, end)


def _until_point(a, b, notphi: _Indexed, psi: _Indexed, t, end, future=True) -> bool:
    # sup_{j in [a,b]} min(G_(0,j) phi (t), F_{j} psi (t)); with u = t + j
    # the stay condition is: no failure of phi in (t, u)
    if future:
        lo, hi = t + a, t + b
        inner = sorted(set(notphi.inner(lo, hi)) | set(psi.inner(lo, hi)) | ({end} if lo < end < hi else set()))
    else:
        lo, hi = t - b, t - a
        inner = sorted(set(notphi.inner(lo, hi)) | set(psi.inner(lo, hi)) | ({0} if lo < 0 < hi else set()))
    for u in _probe_points(lo, hi, inner):
        if not (0 <= u < end) or not psi.set.contains(u):
            continue
        if future:
            stays = not _sup_hits(notphi, t, u, end, False, False)
        else:
            stays = not _sup_hits(notphi, u, t, end, False, False)
        if stays:
            return True
    return False


def _assemble(breaks, point_value, end) -> TimeSet:
    pts = sorted({float(b) for b in breaks if 0 <= b < end} | {0.0})
    pieces = []
    for k, x in enumerate(pts):
        nxt = pts[k + 1] if k + 1 < len(pts) else end
        if point_value(x):
            pieces.append(Piece(x, x, True, True))
        if x < nxt and point_value((x + nxt) / 2):
            pieces.append(Piece(x, nxt, False, False))
    return TimeSet(pieces, end)


def _shifted(points, offsets):
    return [x + c for x in points for c in offsets]


def _continuous_temporal(g, memo, end) -> TimeSet:
    iv = g.interval
    if not iv.closed:
        raise OpenIntervalUnsupported(f"continuous time needs closed intervals: {g}")
    a, b = iv.lo, iv.hi
    if isinstance(g, Unary):
        direction = FUTURE if isinstance(g, (Finally, Globally)) else PAST
        kernel = rect_window(iv, direction, "continuous", normalized=False)
        phi = memo[id(g.arg)]
        dual = isinstance(g, (Globally, Historically))
        src = _Indexed(phi.complement() if dual else phi)
        offs = (-a, -b) if direction == FUTURE else (a, b)
        breaks = _shifted(list(src.eps) + [0, end], offs)
        sat = _assemble(breaks, lambda t: _filter_point(kernel, src, t, end), end)
        return sat.complement() if dual else sat
    future = isinstance(g, Until)
    notphi = _Indexed(memo[id(g.left)].complement())
    psi = _Indexed(memo[id(g.right)])
    offs = (0, -a, -b) if future else (0, a, b)
    breaks = _shifted(list(notphi.eps) + list(psi.eps) + [0, end], offs)
    return _assemble(breaks, lambda t: _until_point(a, b, notphi, psi, t, end, future), end)


def eval_qual_continuous_sets(f, x: SignalBundle, kernel="rect") -> dict:
    _check_kernel(kernel)
    end = x.domain_end
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        if isinstance(g, Const):
            out = TimeSet.full(end) if g.value else TimeSet.empty(end)
        elif isinstance(g, Prop):
            if g.name not in x.propositions:
                raise UnknownProposition(f"unknown proposition {g.name!r}")
            out = TimeSet.from_cadlag(x.propositions[g.name].intervals, end)
        elif isinstance(g, Not):
            out = memo[id(g.arg)].complement()
        elif isinstance(g, Or):
            out = memo[id(g.left)].union(memo[id(g.right)])
        elif isinstance(g, And):
            out = memo[id(g.left)].intersect(memo[id(g.right)])
        else:
            out = _continuous_temporal(g, memo, end)
        memo[id(g)] = out
    return memo


def eval_qual_continuous(f, x: SignalBundle, kernel="rect") -> TimeSet:
    """Exact satisfaction set of ``f`` over ``[0, T)``.

    ``result.split_cadlag()`` gives the cadlag intervals plus the isolated
    points where the set differs from them.
    """
    return eval_qual_continuous_sets(f, x, kernel)[id(f)]


def eval_qual(f, x: SignalBundle, kernel="rect"):
    if x.discrete:
        return eval_qual_discrete(f, x, kernel)
    return eval_qual_continuous(f, x, kernel)
