"""Quantitative MTL semantics as real (sum-product) filtering.

A formula in positive normal form maps a signal to values in ``[0, 1]``:
the normalized mass of time points where the subformula holds inside the
operator window. Negation is only allowed on propositions.

Discrete time works on arrays over ``{0..T}``. Continuous time works on
:class:`~mtlfilter.piecewise.Piecewise` functions, which keep rectangular
results exact (polynomial pieces with explicit point values). Smooth
kernels under F/O are evaluated on a sample grid instead.
"""

import math

import numpy as np
from numpy.polynomial import polynomial as P
from scipy import integrate, special

from .errors import (
    KernelShapeError, NonBooleanOperand, NotPNF, OpenIntervalUnsupported,
    UnknownProposition,
)
from .formula import (
    And, Binary, Const, Finally, Globally, Historically, Not, Once, Or, Prop,
    Since, Unary, Until, is_pnf, subformulas,
)
from .kernel import (
    FUTURE, GAUSSIAN, PAST, RECT, Kernel, centered_gaussian, make_window,
    parse_kernel_spec,
)
from .piecewise import Piecewise, envelope
from .signal import CONTINUOUS, DISCRETE, QuantTraceD, SignalBundle
from .timeset import TimeSet

DEFAULT_STEP = 0.01


def _kernel_shape(kernel):
    return parse_kernel_spec(kernel) if isinstance(kernel, str) else kernel


def _check_input(f, kernel):
    if not is_pnf(f):
        raise NotPNF(f"quantitative semantics needs positive normal form: {f}")
    shape, _ = _kernel_shape(kernel)
    if shape != RECT:
        for g in subformulas(f):
            if isinstance(g, (Globally, Historically, Binary)):
                raise KernelShapeError(f"smooth kernels apply to F/O only, found {type(g).__name__}")


def _prop(x: SignalBundle, name):
    try:
        return x.propositions[name]
    except KeyError:
        raise UnknownProposition(f"unknown proposition {name!r}") from None


def _direction(g):
    return FUTURE if isinstance(g, (Finally, Globally, Until)) else PAST


# -- discrete time ----------------------------------------------------------


def convolve(v: np.ndarray, kernel: Kernel) -> np.ndarray:
    """``out[i] = sum_j v[j] * w[i - j]`` over ``j`` in ``{0..T}``."""
    n = len(v)
    out = np.zeros(n)
    for s in kernel.integer_lags():
        w = kernel.eval(s)
        if not w:
            continue
        s = int(s)
        if s >= 0:
            if s < n:
                out[s:] += w * v[: n - s]
        elif -s < n:
            out[: n + s] += w * v[-s:]
    return out


def _window_min(v: np.ndarray, lo: int, hi: int) -> np.ndarray:
    """``out[i] = min v[i + d]`` for ``d`` in ``[lo, hi]`` with ``i + d`` in the domain.

    An empty index set gives 1.
    """
    n = len(v)
    out = np.ones(n)
    for d in range(lo, hi + 1):
        if d >= 0:
            if d < n:
                out[: n - d] = np.minimum(out[: n - d], v[d:])
        elif -d < n:
            out[-d:] = np.minimum(out[-d:], v[: n + d])
    return out


def _shift_value(v: np.ndarray, d: int) -> np.ndarray:
    """``out[i] = v[i + d]``, 0 outside the domain."""
    n = len(v)
    out = np.zeros(n)
    if d >= 0:
        if d < n:
            out[: n - d] = v[d:]
    elif -d < n:
        out[-d:] = v[: n + d]
    return out


def _discrete_temporal(g, memo, kernel):
    iv = g.interval
    if not iv.closed:
        raise OpenIntervalUnsupported(f"discrete evaluation takes closed intervals: {g}")
    a, b = iv.lo, iv.hi
    sign = 1 if _direction(g) == FUTURE else -1
    if isinstance(g, (Finally, Once)):
        w = make_window(kernel, iv, _direction(g), DISCRETE)
        return convolve(memo[id(g.arg)], w)
    if isinstance(g, Globally):
        return _window_min(memo[id(g.arg)], a, b)
    if isinstance(g, Historically):
        return _window_min(memo[id(g.arg)], -b, -a)
    phi, psi = memo[id(g.left)], memo[id(g.right)]
    total = np.zeros(len(phi))
    for j in range(a, b + 1):
        if j >= 2:
            stay = _window_min(phi, 1, j - 1) if sign > 0 else _window_min(phi, -(j - 1), -1)
        else:
            stay = np.ones(len(phi))
        total += stay * _shift_value(psi, sign * j)
    return total / (b - a + 1)


def eval_quant_discrete_arrays(f, x: SignalBundle, kernel="rect") -> dict:
    """Value array of every subformula, keyed by ``id``."""
    _check_input(f, kernel)
    n = x.domain_end + 1
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        if isinstance(g, Const):
            out = np.full(n, float(g.value))
        elif isinstance(g, Prop):
            out = _prop(x, g.name).as_array().astype(float)
        elif isinstance(g, Not):
            out = 1.0 - _prop(x, g.arg.name).as_array()
        elif isinstance(g, Or):
            out = np.maximum(memo[id(g.left)], memo[id(g.right)])
        elif isinstance(g, And):
            out = np.minimum(memo[id(g.left)], memo[id(g.right)])
        else:
            out = _discrete_temporal(g, memo, kernel)
        memo[id(g)] = np.clip(out, 0.0, 1.0)
    return memo


def eval_quant_discrete(f, x: SignalBundle, kernel="rect") -> QuantTraceD:
    """Quantitative value of PNF formula ``f`` at every ``i`` in ``{0..T}``."""
    if not x.discrete:
        raise ValueError("eval_quant_discrete needs a discrete bundle")
    vals = eval_quant_discrete_arrays(f, x, kernel)[id(f)]
    return QuantTraceD(tuple(float(v) for v in vals), x.domain_end)


# -- continuous time: exact rectangular operators ---------------------------


def _breaks(f: Piecewise, offsets, extra=()):
    pts = list(f.xs) + [f.end] + list(extra)
    return [x + c for x in pts for c in offsets]


def pointwise(f: Piecewise, g: Piecewise, take_min=True) -> Piecewise:
    pick = min if take_min else max
    return Piecewise.build(
        list(f.xs) + list(g.xs), f.end,
        lambda t: pick(f.value_at(t), g.value_at(t)),
        lambda lo, hi: envelope([f.poly_on((lo + hi) / 2, lo), g.poly_on((lo + hi) / 2, lo)],
                                hi - lo, take_min),
    )


def shift(f: Piecewise, c, fill) -> Piecewise:
    """``t -> f(t + c)`` where ``t + c`` is in the domain, ``fill`` elsewhere."""
    end = f.end

    def point(t):
        return f.value_at(t + c) if 0 <= t + c < end else fill

    def cell(lo, hi):
        mid = (lo + hi) / 2
        if not 0 <= mid + c < end:
            return [(0.0, [fill])]
        return [(0.0, f.poly_on(mid + c, lo + c))]

    return Piecewise.build(_breaks(f, (-c,)), end, point, cell)


def window_mean(f: Piecewise, a, b, future=True) -> Piecewise:
    """Rectangular filter: ``(1/(b-a)) ∫ f`` over ``(t ± [a,b]) ∩ [0, T)``."""
    width = b - a
    # integral from lower to upper input time, as offsets from t
    hi_off, lo_off = (b, a) if future else (-a, -b)

    def point(t):
        return (f.integral_to(t + hi_off) - f.integral_to(t + lo_off)) / width

    def cell(lo, hi):
        mid = (lo + hi) / 2
        up = f.integral_poly(mid, lo, hi_off)
        down = f.integral_poly(mid, lo, lo_off)
        return [(0.0, P.polysub(up, down) / width)]

    return Piecewise.build(_breaks(f, (-hi_off, -lo_off)), f.end, point, cell)


def _window_bounds(t, a, b, end, future):
    """Window ``(t ± [a,b]) ∩ [0, end)`` as ``(lo, hi, hi_closed)`` or None."""
    if future:
        lo, hi = t + a, t + b
        if lo >= end:
            return None
        return (lo, hi, True) if hi < end else (lo, end, False)
    lo, hi = t - b, t - a
    if hi < 0:
        return None
    return (max(lo, 0.0), hi, True)


def _inf_on(f: Piecewise, lo, hi, hi_closed):
    vals = [f.value_at(lo)]
    if lo < hi:
        vals.append(f.right_limit(lo))
        vals.append(f.left_limit(hi))
        if hi_closed:
            vals.append(f.value_at(hi))
        for k, x in enumerate(f.xs):
            if lo < x < hi:
                vals += [f.pts[k], f.left_limit(x), f.right_limit(x)]
        for x in f.critical_points():
            if lo < x < hi:
                vals.append(f.value_at(x))
    return min(vals)


def window_inf(f: Piecewise, a, b, future=True) -> Piecewise:
    """``inf f`` over ``(t ± [a,b]) ∩ [0, T)``, 1 where that set is empty."""
    end = f.end
    crit = f.critical_points()

    def point(t):
        w = _window_bounds(t, a, b, end, future)
        return 1.0 if w is None else _inf_on(f, *w)

    def cell(lo, hi):
        mid = (lo + hi) / 2
        w = _window_bounds(mid, a, b, end, future)
        if w is None:
            return [(0.0, [1.0])]
        wl, wh, wh_closed = w
        cands = []
        fixed = []
        # moving ends contribute the polynomial of the segment they sit in
        if future or mid - b > 0:
            left_off = a if future else -b
            cands.append(f.poly_on(mid + left_off, lo + left_off))
        else:
            fixed += [f.value_at(0.0), f.right_limit(0.0)]
        if wh_closed:
            right_off = b if future else -a
            cands.append(f.poly_on(mid + right_off, lo + right_off))
        else:
            fixed.append(f.left_limit(end))
        for k, x in enumerate(f.xs):
            if wl < x < wh:
                fixed += [f.pts[k], f.left_limit(x), f.right_limit(x)]
        fixed += [f.value_at(x) for x in crit if wl < x < wh]
        if fixed:
            cands.append([min(fixed)])
        return envelope(cands, hi - lo, take_min=True)

    offs = (-a, -b) if future else (a, b)
    return Piecewise.build(_breaks(f, offs, crit + [0.0]), end, point, cell)


def _first_failure_after(z: TimeSet, t):
    """``inf (z ∩ (t, end))``, or ``end`` if empty."""
    for p in z.pieces:
        if p.hi > t:
            return max(p.lo, t)
    return z.end


def _last_failure_before(z: TimeSet, t):
    """``sup (z ∩ [0, t))``, or ``-inf`` if empty."""
    best = -math.inf
    for p in z.pieces:
        if p.lo < t:
            best = min(p.hi, t)
        else:
            break
    return best


def _until_bounds(t, a, b, z, end, future):
    """Witness offsets ``j`` with an unbroken stretch, as an input-time range."""
    if future:
        lo = t + a
        hi = min(t + b, _first_failure_after(z, t), end)
    else:
        lo = max(t - b, _last_failure_before(z, t), 0.0)
        hi = t - a
    return lo, hi


def until_mean(phi: Piecewise, psi: Piecewise, a, b, future=True) -> Piecewise:
    """Quantitative U/S for a {0,1}-valued left operand.

    The integrand ``G_(0,j) phi (t) * psi(t ± j)`` is ``psi(t ± j)`` until
    the first failure of ``phi`` strictly after (before) ``t``, 0 after it.
    """
    if not phi.is_boolean():
        raise NonBooleanOperand("the left operand of U/S must be {0,1}-valued")
    end = psi.end
    z = phi.true_set().complement()
    fails = z.endpoints()
    width = b - a

    def point(t):
        if a == b:
            u = t + a if future else t - a
            if not 0 <= u < end:
                return 0.0
            stays = (_first_failure_after(z, t) >= u) if future else (_last_failure_before(z, t) <= u)
            return psi.value_at(u) if stays else 0.0
        lo, hi = _until_bounds(t, a, b, z, end, future)
        if hi <= lo:
            return 0.0
        return (psi.integral_to(hi) - psi.integral_to(lo)) / width

    def cell(lo, hi):
        mid = (lo + hi) / 2
        if a == b:
            off = a if future else -a
            u = mid + off
            if not 0 <= u < end:
                return [(0.0, [0.0])]
            stays = (_first_failure_after(z, mid) >= u) if future else (_last_failure_before(z, mid) <= u)
            return [(0.0, psi.poly_on(u, lo + off) if stays else [0.0])]
        wl, wh = _until_bounds(mid, a, b, z, end, future)
        if wh <= wl:
            return [(0.0, [0.0])]
        if future:
            down = psi.integral_poly(mid, lo, a)
            up = psi.integral_poly(mid, lo, b) if wh == mid + b else [psi.integral_to(wh)]
        else:
            up = psi.integral_poly(mid, lo, -a)
            down = psi.integral_poly(mid, lo, -b) if wl == mid - b else [psi.integral_to(wl)]
        return [(0.0, P.polysub(up, down) / width)]

    offs = (0.0, -a, -b) if future else (0.0, a, b)
    breaks = [x + c for x in list(psi.xs) + fails + [0.0, end] for c in offs]
    return Piecewise.build(breaks, end, point, cell)


# -- continuous time: smooth kernels ----------------------------------------


def _grid(end, step):
    n = int(math.ceil(end / step))
    return np.array([k * step for k in range(n) if k * step < end])


def sigmoid_cdf(kernel: Kernel, s):
    """Unscaled ``∫_{-inf}^{s}`` of the logistic-edged window, in closed form.

    With ``u = exp(k s)`` the product of logistics has the antiderivative
    ``(log(u + e^{k lo}) - log(u + e^{k hi})) / (k (1 - e^{-k (hi - lo)}))``
    up to a constant; evaluated with ``logaddexp`` to avoid overflow.
    """
    k, lo, hi = kernel.shape_params["steepness"], kernel.lo, kernel.hi
    s = np.asarray(s, dtype=float)
    prim = np.logaddexp(k * s, k * lo) - np.logaddexp(k * s, k * hi)
    return (prim + k * (hi - lo)) / (k * -np.expm1(-k * (hi - lo)))


def _kernel_cdf(kernel: Kernel, s):
    """Scaled mass of the kernel on lags ``(-inf, s]``, truncated support included."""
    klo, khi = kernel.support
    s = np.clip(s, klo, khi)
    if kernel.shape == GAUSSIAN:
        mu, sigma = (kernel.lo + kernel.hi) / 2, kernel.shape_params["sigma"]
        raw = special.ndtr((s - mu) / sigma) - special.ndtr((klo - mu) / sigma)
    else:
        raw = sigmoid_cdf(kernel, s) - sigmoid_cdf(kernel, klo)
    return raw * kernel._scale


def smooth_filter(f: Piecewise, kernel: Kernel, step=DEFAULT_STEP) -> Piecewise:
    """``∫ f(j) w(t - j) dj`` over ``[0, T)`` sampled on a grid.

    For {0,1} inputs each true stretch contributes a difference of the
    kernel's cumulative mass (normal CDF or the logistic closed form).
    Other inputs use vectorized adaptive quadrature across the grid.
    """
    end = f.end
    ts = _grid(end, step)
    if f.is_boolean():
        vals = np.zeros(len(ts))
        for p in f.true_set().pieces:
            # lags s = t - j for j in the piece
            upper, lower = ts - p.lo, ts - p.hi
            vals += np.maximum(_kernel_cdf(kernel, upper) - _kernel_cdf(kernel, lower), 0.0)
    else:
        klo, khi = kernel.support
        lo, hi = max(0.0, ts[0] - khi), min(end, ts[-1] - klo)
        inner = [x for x in f.xs if lo < x < hi]

        def integrand(j):
            return f.right_limit(j) * kernel.eval(ts - j)

        vals, _ = integrate.quad_vec(integrand, lo, hi, epsabs=1e-10, epsrel=1e-8,
                                     norm="max", points=inner or None, limit=2000)
    return Piecewise.from_samples(ts, np.clip(vals, 0.0, 1.0), end)


# -- continuous driver ------------------------------------------------------


def _continuous_temporal(g, memo, kernel, step):
    iv = g.interval
    if not iv.closed:
        raise OpenIntervalUnsupported(f"continuous time needs closed intervals: {g}")
    a, b = iv.lo, iv.hi
    future = _direction(g) == FUTURE
    if isinstance(g, Binary):
        return until_mean(memo[id(g.left)], memo[id(g.right)], a, b, future)
    phi = memo[id(g.arg)]
    if isinstance(g, (Globally, Historically)):
        if a == b:
            return shift(phi, a if future else -a, 1.0)
        return window_inf(phi, a, b, future)
    if a == b:
        return shift(phi, a if future else -a, 0.0)
    w = make_window(kernel, iv, _direction(g), CONTINUOUS)
    if w.shape == RECT:
        return window_mean(phi, a, b, future)
    return smooth_filter(phi, w, step)


def eval_quant_continuous_pieces(f, x: SignalBundle, kernel="rect", step=DEFAULT_STEP) -> dict:
    """:class:`Piecewise` value of every subformula, keyed by ``id``."""
    _check_input(f, kernel)
    if not step > 0:
        raise ValueError("sample step must be positive")
    end = x.domain_end
    memo = {}
    for g in subformulas(f):
        if id(g) in memo:
            continue
        if isinstance(g, Const):
            out = Piecewise.constant(float(g.value), end)
        elif isinstance(g, Prop):
            out = Piecewise.from_timeset(TimeSet.from_cadlag(_prop(x, g.name).intervals, end))
        elif isinstance(g, Not):
            sat = TimeSet.from_cadlag(_prop(x, g.arg.name).intervals, end)
            out = Piecewise.from_timeset(sat.complement())
        elif isinstance(g, Or):
            out = pointwise(memo[id(g.left)], memo[id(g.right)], take_min=False)
        elif isinstance(g, And):
            out = pointwise(memo[id(g.left)], memo[id(g.right)], take_min=True)
        else:
            out = _continuous_temporal(g, memo, kernel, step)
        memo[id(g)] = out
    return memo


def eval_quant_continuous(f, x: SignalBundle, kernel="rect", step=DEFAULT_STEP) -> Piecewise:
    """Quantitative value of PNF formula ``f`` as a function on ``[0, T)``.

    With rectangular windows the result is exact. A single F/O over
    propositions is piecewise linear (see :meth:`Piecewise.to_piecewise_linear`);
    nested windows raise the polynomial degree.
    """
    if x.discrete:
        raise ValueError("eval_quant_continuous needs a continuous bundle")
    return eval_quant_continuous_pieces(f, x, kernel, step)[id(f)]


def eval_quant(f, x: SignalBundle, kernel="rect", step=DEFAULT_STEP):
    if x.discrete:
        return eval_quant_discrete(f, x, kernel)
    return eval_quant_continuous(f, x, kernel, step)


# -- spike rates ------------------------------------------------------------


def _rect_count(spikes, t, half):
    return np.searchsorted(spikes, t + half, "right") - np.searchsorted(spikes, t - half, "left")


def spike_rate(spikes, window: Kernel, T, times=None):
    """Firing rate ``r(t) = sum_i w(t - t_i)`` of a spike train on ``[0, T)``.

    A centred boxcar of width ``dt`` gives the spike count in
    ``[t - dt/2, t + dt/2]`` divided by ``dt``, returned exactly as a step
    function (:class:`Piecewise`). Other windows are summed at ``times``
    (default: a 0.01 grid) and returned as an array.
    """
    spikes = np.sort(np.asarray(spikes, dtype=float))
    if window.shape == RECT:
        width = window.hi - window.lo
        half = width / 2
        return Piecewise.build(
            [s + c for s in spikes for c in (-half, half)], T,
            lambda t: _rect_count(spikes, t, half) / width,
            lambda lo, hi: [(0.0, [_rect_count(spikes, (lo + hi) / 2, half) / width])],
        )
    if times is None:
        times = _grid(T, DEFAULT_STEP)
    times = np.asarray(times, dtype=float)
    if spikes.size == 0:
        return np.zeros(len(times))
    return np.sum(window.eval(times[:, None] - spikes[None, :]), axis=1)


def sliding_rect_rate(spikes, width, T, times=None):
    """Centred boxcar rate sampled at ``times`` (default: a 0.01 grid)."""
    spikes = np.sort(np.asarray(spikes, dtype=float))
    if times is None:
        times = _grid(T, DEFAULT_STEP)
    times = np.asarray(times, dtype=float)
    return _rect_count(spikes, times, width / 2) / width


def gaussian_rate(spikes, sigma, T, times=None):
    """Sum of untruncated N(0, sigma) densities centred on the spikes."""
    return spike_rate(spikes, centered_gaussian(sigma), T, times)


def binned_rate(spikes, width, T):
    """Spike counts in consecutive bins of ``width`` divided by ``width``.

    Returns ``(left_edges, rates)``; the last bin may be shorter and is
    divided by its own length.
    """
    if not width > 0:
        raise ValueError("bin width must be positive")
    edges = np.arange(0.0, T, width)
    edges = np.append(edges, T)
    counts, _ = np.histogram(np.asarray(spikes, dtype=float), bins=edges)
    return edges[:-1], counts / np.diff(edges)
