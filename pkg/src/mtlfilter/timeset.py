"""Exact subsets of a continuous time domain [0, T).

A :class:`TimeSet` is a finite union of intervals whose endpoints may each
be open or closed, so it can hold degenerate points ``[x, x]`` as well as
left-open pieces. Cadlag Boolean signals only ever need ``[lo, hi)`` pieces
(see :class:`mtlfilter.signal.IntervalSet`), but Until/Since can produce
isolated satisfaction points and everything built on top of those, so the
evaluators work on this more general type and split the result back into a
cadlag part plus exceptional points.

Endpoint arithmetic is plain float arithmetic with exact comparisons.
"""

from bisect import bisect_right
from typing import Iterable, NamedTuple


class Piece(NamedTuple):
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def contains(self, t) -> bool:
        if t < self.lo or t > self.hi:
            return False
        if t == self.lo and not self.lo_closed:
            return False
        if t == self.hi and not self.hi_closed:
            return False
        return True

    def is_empty(self) -> bool:
        if self.lo > self.hi:
            return True
        if self.lo == self.hi:
            return not (self.lo_closed and self.hi_closed)
        return False


def _clip(p: Piece, end) -> Piece:
    lo, lc, hi, hc = p.lo, p.lo_closed, p.hi, p.hi_closed
    if lo < 0:
        lo, lc = 0, True
    if hi >= end:
        hi, hc = end, False
    return Piece(lo, hi, lc, hc)


def _normalize(pieces: Iterable[Piece], end) -> tuple:
    items = []
    for p in pieces:
        p = _clip(Piece(*p), end)
        if not p.is_empty():
            items.append(p)
    # closed left ends sort first so the merge keeps the stronger flag
    items.sort(key=lambda p: (p.lo, not p.lo_closed))
    out = []
    for p in items:
        if out:
            q = out[-1]
            if p.lo < q.hi or (p.lo == q.hi and (q.hi_closed or p.lo_closed)):
                if p.hi > q.hi:
                    out[-1] = Piece(q.lo, p.hi, q.lo_closed, p.hi_closed)
                elif p.hi == q.hi:
                    out[-1] = Piece(q.lo, q.hi, q.lo_closed, q.hi_closed or p.hi_closed)
                continue
        out.append(p)
    return tuple(out)


class TimeSet:
    """Normalized union of intervals inside ``[0, end)``."""

    __slots__ = ("pieces", "end", "_los")

    def __init__(self, pieces=(), end=1.0):
        self.end = end
        self.pieces = _normalize(pieces, end)
        self._los = [p.lo for p in self.pieces]

    @classmethod
    def full(cls, end):
        return cls([Piece(0, end, True, False)], end)

    @classmethod
    def empty(cls, end):
        return cls((), end)

    @classmethod
    def from_cadlag(cls, pairs, end):
        return cls([Piece(lo, hi, True, False) for lo, hi in pairs], end)

    def __repr__(self):
        parts = []
        for p in self.pieces:
            if p.lo == p.hi:
                parts.append(f"{{{p.lo}}}")
            else:
                parts.append(
                    f"{'[' if p.lo_closed else '('}{p.lo}, {p.hi}{']' if p.hi_closed else ')'}"
                )
        return f"TimeSet({' U '.join(parts) or 'empty'}, end={self.end})"

    def __eq__(self, other):
        if not isinstance(other, TimeSet):
            return NotImplemented
        return self.end == other.end and self.pieces == other.pieces

    def __hash__(self):
        return hash((self.end, self.pieces))

    def __bool__(self):
        return bool(self.pieces)

    def _check(self, other):
        if self.end != other.end:
            from .errors import DomainMismatch

            raise DomainMismatch(f"domains [0,{self.end}) and [0,{other.end}) differ")

    def contains(self, t) -> bool:
        k = bisect_right(self._los, t) - 1
        return k >= 0 and self.pieces[k].contains(t)

    def complement(self) -> "TimeSet":
        gaps = []
        cur, cur_closed = 0, True
        for p in self.pieces:
            gaps.append(Piece(cur, p.lo, cur_closed, not p.lo_closed))
            cur, cur_closed = p.hi, not p.hi_closed
        gaps.append(Piece(cur, self.end, cur_closed, False))
        return TimeSet(gaps, self.end)

    def union(self, other: "TimeSet") -> "TimeSet":
        self._check(other)
        return TimeSet(self.pieces + other.pieces, self.end)

    def intersect(self, other: "TimeSet") -> "TimeSet":
        self._check(other)
        out = []
        for p in self.pieces:
            for q in other.pieces:
                if q.lo > p.hi:
                    break
                r = intersect_pieces(p, q)
                if not r.is_empty():
                    out.append(r)
        return TimeSet(out, self.end)

    def dilate(self, lo_off, hi_off) -> "TimeSet":
        """Minkowski sum with the closed interval ``[lo_off, hi_off]``."""
        return TimeSet(
            [Piece(p.lo + lo_off, p.hi + hi_off, p.lo_closed, p.hi_closed) for p in self.pieces],
            self.end,
        )

    def meets(self, piece: Piece) -> bool:
        """True iff the set intersects ``piece``."""
        if piece.is_empty():
            return False
        k = max(bisect_right(self._los, piece.lo) - 1, 0)
        for p in self.pieces[k:]:
            if p.lo > piece.hi:
                break
            if not intersect_pieces(p, piece).is_empty():
                return True
        return False

    def endpoints(self) -> list:
        pts = set()
        for p in self.pieces:
            pts.add(p.lo)
            pts.add(p.hi)
        return sorted(pts)

    def component_at_right(self, t):
        """Piece containing ``(t, t + eps)`` for small eps, or None."""
        k = bisect_right(self._los, t) - 1
        if k >= 0:
            p = self.pieces[k]
            if p.lo <= t < p.hi:
                return p
        return None

    def split_cadlag(self):
        """Split into cadlag pieces plus exceptional points.

        Returns ``(pairs, points_true, points_false)``: ``pairs`` are the
        ``[lo, hi)`` pieces of the right-continuous version of the set,
        ``points_true`` lie in the set but not in that version (isolated
        points, closed right ends) and ``points_false`` lie in that version
        but not in the set (open left ends).
        """
        pairs, pts_true, pts_false = [], [], []
        for p in self.pieces:
            if p.lo < p.hi:
                if pairs and pairs[-1][1] == p.lo:
                    pairs[-1] = (pairs[-1][0], p.hi)
                else:
                    pairs.append((p.lo, p.hi))
                if not p.lo_closed:
                    pts_false.append(p.lo)
            if p.hi_closed:
                pts_true.append(p.hi)
        return pairs, pts_true, pts_false


def intersect_pieces(p: Piece, q: Piece) -> Piece:
    if p.lo > q.lo:
        lo, lc = p.lo, p.lo_closed
    elif q.lo > p.lo:
        lo, lc = q.lo, q.lo_closed
    else:
        lo, lc = p.lo, p.lo_closed and q.lo_closed
    if p.hi < q.hi:
        hi, hc = p.hi, p.hi_closed
    elif q.hi < p.hi:
        hi, hc = q.hi, q.hi_closed
    else:
        hi, hc = p.hi, p.hi_closed and q.hi_closed
    return Piece(lo, hi, lc, hc)
