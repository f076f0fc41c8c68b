"""Piecewise-polynomial functions on ``[0, T)`` with explicit point values.

Continuous-time quantitative results are stored exactly as a
:class:`Piecewise`: breakpoints ``xs[0] = 0 < xs[1] < ...``, the value at
each breakpoint, and one polynomial per open segment ``(xs[k], xs[k+1])``
written in the local variable ``s = t - xs[k]``. Point values are kept
separately so step signals and isolated points are represented without
loss. Rectangular windows over {0,1} inputs yield degree-1 pieces; nesting
windows raises the degree by one per level.
"""

from bisect import bisect_left, bisect_right

import numpy as np
from numpy.polynomial import polynomial as P

from .signal import PiecewiseLinear
from .timeset import Piece, TimeSet

ZERO_TOL = 1e-12


def clean(c) -> np.ndarray:
    c = np.array(c, dtype=float).ravel()
    if c.size == 0:
        return np.zeros(1)
    c[np.abs(c) < ZERO_TOL] = 0.0
    nz = np.nonzero(c)[0]
    return c[: nz[-1] + 1] if nz.size else np.zeros(1)


def shift_poly(c, d) -> np.ndarray:
    """Coefficients of ``s -> p(s + d)``."""
    c = np.asarray(c, dtype=float)
    if c.size == 1 or d == 0:
        return c.copy()
    out = np.zeros(1)
    for coef in c[::-1]:  # Horner on polynomials
        out = P.polyadd(P.polymul(out, [d, 1.0]), [coef])
    return out


def snap(v: float) -> float:
    if abs(v) < ZERO_TOL:
        return 0.0
    if abs(v - 1.0) < ZERO_TOL:
        return 1.0
    return float(v)


def real_roots(c, lo, hi) -> list:
    """Real roots of polynomial ``c`` strictly inside ``(lo, hi)``."""
    c = clean(c)
    if c.size <= 1:
        return []
    if c.size == 2:
        r = [-c[0] / c[1]]
    else:
        r = [z.real for z in np.roots(c[::-1]) if abs(z.imag) <= 1e-9 * max(1.0, abs(z))]
    return sorted(x for x in r if lo < x < hi)


def envelope(polys, length, take_min=True):
    """Pointwise min (or max) of polynomials on ``(0, length)``.

    Returns ``[(offset, coeffs)]`` pieces, coefficients local to each
    piece's own start.
    """
    polys = [clean(p) for p in polys]
    if len(polys) == 1:
        return [(0.0, polys[0])]
    cuts = {0.0, length}
    for i in range(len(polys)):
        for k in range(i + 1, len(polys)):
            cuts.update(real_roots(P.polysub(polys[i], polys[k]), 0.0, length))
    # crossings within rounding distance of the cell ends are noise
    tol = 1e-12 * max(1.0, length)
    cuts = [c for c in sorted(cuts) if c == 0.0 or c == length or tol < c < length - tol]
    pick = min if take_min else max
    out = []
    for u, v in zip(cuts, cuts[1:]):
        mid = (u + v) / 2
        best = pick(polys, key=lambda p: P.polyval(mid, p))
        c = clean(shift_poly(best, u))
        if out and _same_poly(shift_poly(out[-1][1], u - out[-1][0]), c):
            continue
        out.append((u, c))
    return out


def _same_poly(a, b) -> bool:
    a, b = clean(a), clean(b)
    n = max(a.size, b.size)
    a = np.pad(a, (0, n - a.size))
    b = np.pad(b, (0, n - b.size))
    return bool(np.allclose(a, b, rtol=0, atol=1e-11))


class Piecewise:
    __slots__ = ("xs", "pts", "polys", "end", "_cum")

    def __init__(self, xs, pts, polys, end):
        self.xs = [float(x) for x in xs]
        self.pts = [snap(v) for v in pts]
        self.polys = [clean(p) for p in polys]
        self.end = end
        self._cum = None
        if not self.xs or self.xs[0] != 0:
            raise ValueError("first breakpoint must be 0")
        if len(self.pts) != len(self.xs) or len(self.polys) != len(self.xs):
            raise ValueError("need one point value and one polynomial per breakpoint")

    def __repr__(self):
        return f"Piecewise({len(self.xs)} segments, end={self.end})"

    # -- construction -------------------------------------------------------

    @classmethod
    def constant(cls, value, end):
        return cls([0.0], [value], [[value]], end)

    @classmethod
    def from_timeset(cls, ts: TimeSet):
        xs = sorted({0.0} | {float(x) for x in ts.endpoints() if x < ts.end})
        pts, polys = [], []
        for k, x in enumerate(xs):
            nxt = xs[k + 1] if k + 1 < len(xs) else ts.end
            pts.append(1.0 if ts.contains(x) else 0.0)
            polys.append([1.0 if ts.contains((x + nxt) / 2) else 0.0])
        return cls(xs, pts, polys, ts.end)

    @classmethod
    def build(cls, breaks, end, point_fn, cell_fn):
        """Assemble from a partition of ``[0, end)``.

        ``cell_fn(lo, hi)`` returns ``[(offset, coeffs)]`` sub-pieces of the
        open cell ``(lo, hi)``; ``point_fn(t)`` gives exact point values at
        every resulting breakpoint.
        """
        cells = sorted({0.0} | {float(b) for b in breaks if 0 <= b < end})
        xs, polys = [], []
        for k, lo in enumerate(cells):
            hi = cells[k + 1] if k + 1 < len(cells) else end
            for off, c in cell_fn(lo, hi):
                x = lo + off
                if (xs and x <= xs[-1]) or x >= hi:
                    continue
                xs.append(x)
                polys.append(c)
        return cls(xs, [point_fn(x) for x in xs], polys, end).simplified()

    def simplified(self):
        xs, pts, polys = [self.xs[0]], [self.pts[0]], [self.polys[0]]
        for k in range(1, len(self.xs)):
            x, prev = self.xs[k], polys[-1]
            cont = shift_poly(prev, x - xs[-1])
            if _same_poly(cont, self.polys[k]) and abs(P.polyval(0.0, cont) - self.pts[k]) <= 1e-11:
                continue
            xs.append(x)
            pts.append(self.pts[k])
            polys.append(self.polys[k])
        return Piecewise(xs, pts, polys, self.end)

    # -- queries ------------------------------------------------------------

    def seg_end(self, k):
        return self.xs[k + 1] if k + 1 < len(self.xs) else self.end

    def segment_at(self, t) -> int:
        return bisect_right(self.xs, t) - 1

    def value_at(self, t) -> float:
        if not 0 <= t < self.end:
            from .errors import OutOfDomain

            raise OutOfDomain(f"t={t} outside [0,{self.end})")
        k = self.segment_at(t)
        if t == self.xs[k]:
            return self.pts[k]
        return snap(P.polyval(t - self.xs[k], self.polys[k]))

    __call__ = value_at

    def right_limit(self, t) -> float:
        k = self.segment_at(t)
        return snap(P.polyval(t - self.xs[k], self.polys[k]))

    def left_limit(self, t) -> float:
        k = bisect_left(self.xs, t) - 1
        return snap(P.polyval(t - self.xs[k], self.polys[k]))

    def poly_on(self, t_mid, lo):
        """Polynomial of the segment containing ``t_mid``, local to ``lo``."""
        k = self.segment_at(t_mid)
        return shift_poly(self.polys[k], lo - self.xs[k])

    def sample(self, times) -> np.ndarray:
        return np.array([self.value_at(t) for t in times])

    def is_boolean(self) -> bool:
        if any(v not in (0.0, 1.0) for v in self.pts):
            return False
        return all(p.size == 1 and p[0] in (0.0, 1.0) for p in self.polys)

    def max_degree(self) -> int:
        return max(p.size - 1 for p in self.polys)

    def critical_points(self) -> list:
        out = []
        for k, c in enumerate(self.polys):
            if c.size > 2:
                for r in real_roots(P.polyder(c), 0.0, self.seg_end(k) - self.xs[k]):
                    out.append(self.xs[k] + r)
        return out

    # -- integration --------------------------------------------------------

    def _cumulative(self):
        if self._cum is None:
            cum, acc = [], 0.0
            for k, c in enumerate(self.polys):
                cum.append(acc)
                acc += P.polyval(self.seg_end(k) - self.xs[k], P.polyint(c))
            cum.append(acc)
            self._cum = cum
        return self._cum

    def integral_to(self, x) -> float:
        """``∫_0^x f``, with ``x`` clipped to ``[0, end]``."""
        if x <= 0:
            return 0.0
        cum = self._cumulative()
        if x >= self.end:
            return cum[-1]
        k = self.segment_at(x)
        return cum[k] + P.polyval(x - self.xs[k], P.polyint(self.polys[k]))

    def integral_poly(self, t_mid, lo, c):
        """``s -> ∫_0^{lo + s + c} f`` as a polynomial, valid near ``t_mid``."""
        x = t_mid + c
        if x >= self.end:
            return np.array([self._cumulative()[-1]])
        if x <= 0:
            return np.zeros(1)
        k = self.segment_at(x)
        prim = P.polyint(self.polys[k])
        prim = P.polyadd(prim, [self._cumulative()[k]])
        return shift_poly(prim, lo + c - self.xs[k])

    # -- conversion ---------------------------------------------------------

    def true_set(self) -> TimeSet:
        """Support ``{t : f(t) = 1}`` of a {0,1}-valued function."""
        pieces = []
        for k, x in enumerate(self.xs):
            if self.pts[k] == 1.0:
                pieces.append(Piece(x, x, True, True))
            if self.polys[k][0] == 1.0:
                pieces.append(Piece(x, self.seg_end(k), False, False))
        return TimeSet(pieces, self.end)

    def knots(self, step=None):
        """``(t, v)`` rows describing the function.

        Exact for piecewise-linear functions: a jump at ``x`` emits the left
        limit then the point value at the same ``t``, and a point value that
        differs from both neighbours emits three rows. Higher-degree pieces
        (or any ``step``) fall back to a grid.
        """
        if step is not None or self.max_degree() > 1:
            step = step or 0.01
            n = int(np.ceil(self.end / step))
            ts = [k * step for k in range(n) if k * step < self.end]
            return [(t, self.value_at(t)) for t in ts]
        rows = []
        for k, x in enumerate(self.xs):
            if k > 0:
                left = self.left_limit(x)
                if left != self.pts[k]:
                    rows.append((x, left))
            rows.append((x, self.pts[k]))
            right = snap(P.polyval(0.0, self.polys[k]))
            if right != self.pts[k]:
                rows.append((x, right))
        rows.append((self.end, snap(P.polyval(self.end - self.xs[-1], self.polys[-1]))))
        return rows

    def to_piecewise_linear(self) -> PiecewiseLinear:
        """Spec-level knot representation; requires a continuous linear function."""
        if self.max_degree() > 1:
            raise ValueError("function is not piecewise linear")
        rows = self.knots()
        for (t1, _), (t2, _) in zip(rows, rows[1:]):
            if t1 == t2:
                raise ValueError("function has jumps; use knots() instead")
        return PiecewiseLinear(tuple(rows), self.end)

    @classmethod
    def from_samples(cls, times, values, end):
        """Linear interpolation through samples, held constant after the last."""
        times = [float(t) for t in times]
        vals = [snap(float(v)) for v in values]
        polys = []
        for k in range(len(times)):
            if k + 1 < len(times):
                slope = (vals[k + 1] - vals[k]) / (times[k + 1] - times[k])
                polys.append([vals[k], slope])
            else:
                polys.append([vals[k]])
        return cls(times, vals, polys, end)
