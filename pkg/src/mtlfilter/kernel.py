"""Window kernels for the temporal operators.

A kernel is a function of the lag ``s = t - j`` between the output time
``t`` and the input time ``j``; a filter output is
``y(t) = sum_j x(j) * w(t - j)`` (or the integral in continuous time).
Future operators use lags in ``[-b, -a]``, past operators lags in ``[a, b]``.
"""

import math
from dataclasses import dataclass, field
from typing import Mapping, Optional

import numpy as np
from scipy import integrate, special

from .errors import InvalidParam, KernelShapeError
from .formula import TimeInterval

FUTURE = "future"
PAST = "past"

RECT = "rect"
SINGULAR = "singular"
GAUSSIAN = "gaussian"
SIGMOID = "sigmoid_edge"
SMOOTH_SHAPES = (GAUSSIAN, SIGMOID)

GAUSS_TRUNCATION = 3.0  # in standard deviations beyond the nominal support
SIGMOID_WIDENING = 4.0  # in units of 1/steepness


@dataclass(frozen=True)
class Kernel:
    shape: str
    lo: float
    hi: float
    direction: Optional[str] = None
    time_kind: str = "continuous"
    normalized: bool = True
    interval: Optional[TimeInterval] = None
    shape_params: Mapping = field(default_factory=dict, hash=False)
    _scale: float = field(default=1.0, repr=False, compare=False)

    @property
    def discrete(self) -> bool:
        return self.time_kind == "discrete"

    @property
    def smooth(self) -> bool:
        return self.shape in SMOOTH_SHAPES

    @property
    def support(self) -> tuple:
        """Lags where the kernel can be non-zero."""
        if self.shape == GAUSSIAN:
            sigma = self.shape_params["sigma"]
            trunc = self.shape_params.get("truncation")
            if trunc is None:
                return (-math.inf, math.inf)
            return (self.lo - trunc * sigma, self.hi + trunc * sigma)
        if self.shape == SIGMOID:
            w = SIGMOID_WIDENING / self.shape_params["steepness"]
            return (self.lo - w, self.hi + w)
        return (self.lo, self.hi)

    @property
    def width(self) -> float:
        """|I|: point count in discrete time, length in continuous time."""
        if self.discrete:
            return self.hi - self.lo + 1
        return self.hi - self.lo

    def _raw(self, s):
        s = np.asarray(s, dtype=float)
        if self.shape == RECT:
            h = 1.0 / self.width if self.normalized else 1.0
            inside = (s >= self.lo) & (s <= self.hi)
            if self.discrete:
                inside &= s == np.round(s)
            return np.where(inside, h, 0.0)
        if self.shape == SINGULAR:
            hit = s == self.lo
            return np.where(hit, 1.0 if self.discrete else np.inf, 0.0)
        lo, hi = self.support
        inside = (s >= lo) & (s <= hi)
        if self.discrete:
            inside &= s == np.round(s)
        if self.shape == GAUSSIAN:
            mu, sigma = (self.lo + self.hi) / 2, self.shape_params["sigma"]
            vals = np.exp(-0.5 * ((s - mu) / sigma) ** 2) / (sigma * math.sqrt(2 * math.pi))
        else:
            k = self.shape_params["steepness"]
            vals = special.expit(k * (s - self.lo)) * special.expit(-k * (s - self.hi))
        return np.where(inside, vals, 0.0)

    def eval(self, s):
        """Kernel value at lag ``s`` (scalar or array)."""
        out = self._raw(s) * self._scale
        return float(out) if np.ndim(out) == 0 else out

    def window(self, t) -> tuple:
        """Input times ``j`` with ``t - j`` inside the support."""
        lo, hi = self.support
        return (t - hi, t - lo)

    def integer_lags(self) -> np.ndarray:
        lo, hi = self.support
        return np.arange(math.ceil(lo), math.floor(hi) + 1)


def _with_scale(k: Kernel) -> Kernel:
    """Attach the renormalization factor for smooth kernels."""
    if not k.smooth:
        return k
    if k.discrete:
        total = float(np.sum(k._raw(k.integer_lags())))
    elif k.shape == GAUSSIAN:
        lo, hi = k.support
        mu, sigma = (k.lo + k.hi) / 2, k.shape_params["sigma"]
        total = special.ndtr((hi - mu) / sigma) - special.ndtr((lo - mu) / sigma)
    else:
        lo, hi = k.support
        total, _ = integrate.quad(
            lambda s: float(k._raw(s)), lo, hi, points=[k.lo, k.hi],
            epsabs=1e-14, epsrel=1e-13, limit=500,
        )
    if total <= 0:
        raise InvalidParam("kernel has no mass on its support")
    object.__setattr__(k, "_scale", 1.0 / total)
    return k


def _lags(interval: TimeInterval, direction: str):
    if direction == FUTURE:
        return -interval.hi, -interval.lo
    if direction == PAST:
        return interval.lo, interval.hi
    raise InvalidParam(f"direction must be 'future' or 'past', got {direction!r}")


def singular_window(a, direction, time_kind="continuous") -> Kernel:
    iv = TimeInterval(a, a)
    lo, hi = _lags(iv, direction)
    return Kernel(SINGULAR, lo, hi, direction, time_kind, True, iv)


def rect_window(interval: TimeInterval, direction, time_kind="continuous", normalized=True) -> Kernel:
    """Boxcar window over ``interval``; singular intervals give a delta."""
    if interval.singular:
        return singular_window(interval.lo, direction, time_kind)
    lo, hi = _lags(interval, direction)
    return Kernel(RECT, lo, hi, direction, time_kind, normalized, interval)


def gaussian_window(interval: TimeInterval, direction, sigma_reciprocal, time_kind="continuous") -> Kernel:
    """Gaussian centred on the window, truncated 3 sigma beyond it, unit mass.

    ``sigma_reciprocal`` is 1/sigma in time units, so 8 means sigma = 0.125.
    """
    if not sigma_reciprocal > 0:
        raise InvalidParam(f"sigma reciprocal must be positive, got {sigma_reciprocal}")
    lo, hi = _lags(interval, direction)
    params = {"sigma_reciprocal": sigma_reciprocal, "sigma": 1.0 / sigma_reciprocal,
              "truncation": GAUSS_TRUNCATION}
    return _with_scale(Kernel(GAUSSIAN, lo, hi, direction, time_kind, True, interval, params))


def sigmoid_window(interval: TimeInterval, direction, steepness, time_kind="continuous") -> Kernel:
    """Boxcar with logistic edges of slope ``steepness``, unit mass."""
    if not steepness > 0:
        raise InvalidParam(f"steepness must be positive, got {steepness}")
    lo, hi = _lags(interval, direction)
    return _with_scale(
        Kernel(SIGMOID, lo, hi, direction, time_kind, True, interval, {"steepness": steepness})
    )


def centered_window(width) -> Kernel:
    """Continuous boxcar on ``[-width/2, width/2]`` with height 1/width."""
    if not width > 0:
        raise InvalidParam("window width must be positive")
    return Kernel(RECT, -width / 2, width / 2, None, "continuous", True)


def centered_gaussian(sigma) -> Kernel:
    """Untruncated N(0, sigma)."""
    if not sigma > 0:
        raise InvalidParam("sigma must be positive")
    return Kernel(GAUSSIAN, 0.0, 0.0, None, "continuous", True, None,
                  {"sigma": sigma, "sigma_reciprocal": 1.0 / sigma, "truncation": None})


def mass(k: Kernel) -> float:
    """Total kernel mass: a sum in discrete time, an integral otherwise."""
    if k.shape == SINGULAR:
        return 1.0
    if k.discrete:
        return float(np.sum(k.eval(k.integer_lags())))
    lo, hi = k.support
    pts = [p for p in (k.lo, k.hi) if lo < p < hi] or None
    if math.isinf(lo) or math.isinf(hi):
        val, _ = integrate.quad(lambda s: k.eval(s), lo, hi, epsabs=1e-12, epsrel=1e-10, limit=500)
        return val
    val, _ = integrate.quad(lambda s: k.eval(s), lo, hi, points=pts,
                            epsabs=1e-12, epsrel=1e-10, limit=500)
    return val


def parse_kernel_spec(spec: str) -> tuple:
    """``rect | gauss:<recip_sigma> | sigmoid:<k>`` -> (shape, parameter)."""
    spec = spec.strip()
    if spec == "rect":
        return RECT, None
    name, _, arg = spec.partition(":")
    try:
        value = float(arg)
    except ValueError:
        raise InvalidParam(f"bad kernel spec {spec!r}") from None
    if name == "gauss":
        shape = GAUSSIAN
    elif name == "sigmoid":
        shape = SIGMOID
    else:
        raise InvalidParam(f"unknown kernel {name!r}")
    if not value > 0:
        raise InvalidParam(f"kernel parameter must be positive in {spec!r}")
    return shape, value


def make_window(spec, interval: TimeInterval, direction, time_kind, normalized=True) -> Kernel:
    """Build a window from a parsed or textual kernel spec."""
    shape, param = parse_kernel_spec(spec) if isinstance(spec, str) else spec
    if shape == RECT or interval.singular:
        return rect_window(interval, direction, time_kind, normalized)
    if not normalized:
        raise KernelShapeError("smooth kernels have no unnormalized Boolean form")
    if shape == GAUSSIAN:
        return gaussian_window(interval, direction, param, time_kind)
    if shape == SIGMOID:
        return sigmoid_window(interval, direction, param, time_kind)
    raise KernelShapeError(f"unknown kernel shape {shape!r}")
