"""Boolean input signals, result traces and their file formats.

Discrete signals live on ``{0, 1, ..., T}``; continuous signals live on
``[0, T)`` and are piecewise-constant and right-continuous, stored as the
set of times where the proposition holds.
"""

import csv
import io
import json
import math
from bisect import bisect_right
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Union

import numpy as np

from .errors import DomainError, DomainMismatch, OutOfDomain, ParseError

DISCRETE = "discrete"
CONTINUOUS = "continuous"


@dataclass(frozen=True)
class DiscreteTrace:
    values: tuple
    t_end: int
    name: str = "p"

    def __post_init__(self):
        vals = tuple(self.values)
        for v in vals:
            if isinstance(v, bool):
                continue
            if not (isinstance(v, (int, np.integer)) and v in (0, 1)):
                raise DomainError(f"non-Boolean value {v!r} in discrete trace {self.name!r}")
        vals = tuple(int(v) for v in vals)
        if len(vals) != self.t_end + 1:
            raise DomainError(
                f"trace {self.name!r} has {len(vals)} values, expected T+1 = {self.t_end + 1}"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_array(cls, arr, name="p"):
        arr = [int(v) for v in arr]
        return cls(tuple(arr), len(arr) - 1, name)

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=float)


@dataclass(frozen=True)
class IntervalSet:
    """Union of ``[lo, hi)`` intervals inside ``[0, domain_end)``.

    The constructor validates; use :meth:`normalized` to build one from
    arbitrary (possibly overlapping) pairs.
    """

    intervals: tuple
    domain_end: float

    def __post_init__(self):
        ivs = tuple((lo, hi) for lo, hi in self.intervals)
        prev_hi = None
        for lo, hi in ivs:
            if not (0 <= lo < hi <= self.domain_end):
                raise DomainError(f"interval [{lo},{hi}) not inside [0,{self.domain_end})")
            if prev_hi is not None and lo <= prev_hi:
                raise DomainError("intervals must be sorted, disjoint and non-adjacent")
            prev_hi = hi
        object.__setattr__(self, "intervals", ivs)

    @classmethod
    def normalized(cls, pairs, domain_end):
        ivs = sorted((lo, hi) for lo, hi in pairs if lo < hi)
        out = []
        for lo, hi in ivs:
            lo, hi = max(lo, 0), min(hi, domain_end)
            if lo >= hi:
                continue
            if out and lo <= out[-1][1]:
                out[-1] = (out[-1][0], max(out[-1][1], hi))
            else:
                out.append((lo, hi))
        return cls(tuple(out), domain_end)

    def normalize(self):
        return IntervalSet.normalized(self.intervals, self.domain_end)

    def _check(self, other):
        if self.domain_end != other.domain_end:
            raise DomainMismatch(
                f"domains [0,{self.domain_end}) and [0,{other.domain_end}) differ"
            )

    def complement(self):
        out, cur = [], 0
        for lo, hi in self.intervals:
            if cur < lo:
                out.append((cur, lo))
            cur = hi
        if cur < self.domain_end:
            out.append((cur, self.domain_end))
        return IntervalSet(tuple(out), self.domain_end)

    def union(self, other):
        self._check(other)
        return IntervalSet.normalized(self.intervals + other.intervals, self.domain_end)

    def intersect(self, other):
        self._check(other)
        out = []
        for lo, hi in self.intervals:
            for lo2, hi2 in other.intervals:
                a, b = max(lo, lo2), min(hi, hi2)
                if a < b:
                    out.append((a, b))
        return IntervalSet.normalized(out, self.domain_end)

    def contains(self, t) -> bool:
        k = bisect_right([lo for lo, _ in self.intervals], t) - 1
        return k >= 0 and t < self.intervals[k][1]

    def measure(self) -> float:
        return sum(hi - lo for lo, hi in self.intervals)


@dataclass(frozen=True)
class QuantTraceD:
    values: tuple
    t_end: int

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) != self.t_end + 1:
            raise DomainError(f"expected {self.t_end + 1} values, got {len(vals)}")
        if any(not (0.0 <= v <= 1.0) for v in vals):
            raise DomainError("quantitative values must lie in [0, 1]")
        object.__setattr__(self, "values", vals)

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class PiecewiseLinear:
    """Continuous piecewise-linear function given by knots ``(t, v)``.

    Values are linearly interpolated between knots and held constant after
    the last knot. ``bounded`` enforces the [0, 1] range of normalized
    measures; rates (spike-rate traces) set it to False.
    """

    breakpoints: tuple
    domain_end: float
    bounded: bool = True

    def __post_init__(self):
        knots = tuple((float(t), float(v)) for t, v in self.breakpoints)
        ts = [t for t, _ in knots]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise DomainError("knot times must be strictly increasing")
        if ts and (ts[0] < 0 or ts[-1] > self.domain_end):
            raise DomainError("knot times must lie inside [0, domain_end]")
        if self.bounded and any(not (0.0 <= v <= 1.0) for _, v in knots):
            raise DomainError("values must lie in [0, 1]")
        object.__setattr__(self, "breakpoints", knots)

    @property
    def times(self) -> np.ndarray:
        return np.array([t for t, _ in self.breakpoints])

    @property
    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.breakpoints])

    def __call__(self, t):
        return np.interp(t, self.times, self.values)


@dataclass(frozen=True)
class SignalBundle:
    time_kind: str
    domain_end: Union[int, float]
    propositions: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.time_kind not in (DISCRETE, CONTINUOUS):
            raise DomainError(f"unknown time kind {self.time_kind!r}")
        for name, sig in self.propositions.items():
            if self.time_kind == DISCRETE:
                if not isinstance(sig, DiscreteTrace) or sig.t_end != self.domain_end:
                    raise DomainError(f"proposition {name!r} does not match the bundle domain")
            else:
                if not isinstance(sig, IntervalSet) or sig.domain_end != self.domain_end:
                    raise DomainError(f"proposition {name!r} does not match the bundle domain")
        object.__setattr__(self, "propositions", dict(self.propositions))

    @property
    def discrete(self) -> bool:
        return self.time_kind == DISCRETE

    @classmethod
    def from_arrays(cls, arrays: Mapping):
        """Discrete bundle from ``{name: sequence of 0/1}``."""
        props = {n: DiscreteTrace.from_array(v, n) for n, v in arrays.items()}
        ends = {tr.t_end for tr in props.values()}
        if len(ends) != 1:
            raise DomainError("all traces must have the same length")
        return cls(DISCRETE, ends.pop(), props)

    @classmethod
    def from_intervals(cls, T, sets: Mapping):
        """Continuous bundle from ``{name: [(lo, hi), ...]}``."""
        props = {n: IntervalSet.normalized(v, T) for n, v in sets.items()}
        return cls(CONTINUOUS, T, props)


def value_at(s, t) -> float:
    if isinstance(s, DiscreteTrace):
        if not (isinstance(t, (int, np.integer)) or float(t).is_integer()) or not 0 <= t <= s.t_end:
            raise OutOfDomain(f"t={t} outside {{0..{s.t_end}}}")
        return float(s.values[int(t)])
    if isinstance(s, QuantTraceD):
        if not 0 <= t <= s.t_end or not float(t).is_integer():
            raise OutOfDomain(f"t={t} outside {{0..{s.t_end}}}")
        return s.values[int(t)]
    if isinstance(s, IntervalSet):
        if not 0 <= t < s.domain_end:
            raise OutOfDomain(f"t={t} outside [0,{s.domain_end})")
        return 1.0 if s.contains(t) else 0.0
    if isinstance(s, PiecewiseLinear):
        if not 0 <= t <= s.domain_end:
            raise OutOfDomain(f"t={t} outside [0,{s.domain_end}]")
        return float(s(t))
    if hasattr(s, "value_at"):
        return s.value_at(t)
    raise TypeError(f"cannot evaluate {type(s).__name__}")


# -- file formats ---------------------------------------------------------


def _number(v, what):
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ParseError(f"{what} must be a finite number, got {v!r}")
    return v


def bundle_from_obj(obj) -> SignalBundle:
    if not isinstance(obj, dict):
        raise ParseError("top-level JSON value must be an object")
    try:
        kind, T, props = obj["time"], obj["T"], obj["props"]
    except KeyError as exc:
        raise ParseError(f"missing key {exc.args[0]!r}") from None
    T = _number(T, "T")
    if not isinstance(props, dict):
        raise ParseError("'props' must be an object")
    if kind == DISCRETE:
        if not float(T).is_integer() or T < 0:
            raise DomainError(f"discrete T must be a natural number, got {T!r}")
        T = int(T)
        traces = {}
        for name, vals in props.items():
            if not isinstance(vals, list):
                raise ParseError(f"proposition {name!r} must be a list")
            traces[name] = DiscreteTrace(tuple(vals), T, name)
        return SignalBundle(DISCRETE, T, traces)
    if kind == CONTINUOUS:
        if T <= 0:
            raise DomainError(f"continuous T must be positive, got {T!r}")
        sets = {}
        for name, pairs in props.items():
            if not isinstance(pairs, list):
                raise ParseError(f"proposition {name!r} must be a list of [lo, hi] pairs")
            ivs = []
            for pair in pairs:
                if not isinstance(pair, list) or len(pair) != 2:
                    raise ParseError(f"bad interval {pair!r} in {name!r}")
                lo, hi = (_number(v, "interval endpoint") for v in pair)
                if not (0 <= lo < hi <= T):
                    raise DomainError(f"interval [{lo},{hi}) of {name!r} not inside [0,{T})")
                ivs.append((lo, hi))
            ivs.sort()
            for (_, h1), (l2, _) in zip(ivs, ivs[1:]):
                if l2 < h1:
                    raise DomainError(f"overlapping intervals in {name!r}")
            sets[name] = IntervalSet.normalized(ivs, T)
        return SignalBundle(CONTINUOUS, T, sets)
    raise ParseError(f"'time' must be 'discrete' or 'continuous', got {kind!r}")


def bundle_to_obj(b: SignalBundle) -> dict:
    if b.discrete:
        props = {n: list(tr.values) for n, tr in b.propositions.items()}
    else:
        props = {n: [[lo, hi] for lo, hi in s.intervals] for n, s in b.propositions.items()}
    return {"time": b.time_kind, "T": b.domain_end, "props": props}


def dumps_bundle(b: SignalBundle) -> str:
    return json.dumps(bundle_to_obj(b)) + "\n"


def _parse_csv(text: str) -> SignalBundle:
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows or rows[0][0].strip() != "t":
        raise ParseError("CSV header must start with 't'")
    names = [h.strip() for h in rows[0][1:]]
    if not names:
        raise ParseError("CSV has no proposition columns")
    cols = {n: [] for n in names}
    for k, row in enumerate(rows[1:]):
        if len(row) != len(names) + 1:
            raise ParseError(f"row {k + 1} has {len(row)} fields, expected {len(names) + 1}")
        try:
            t = int(row[0])
            vals = [int(v) for v in row[1:]]
        except ValueError:
            raise ParseError(f"row {k + 1} is not integer-valued") from None
        if t != k:
            raise ParseError(f"row {k + 1} has t={t}, expected {k}")
        for n, v in zip(names, vals):
            cols[n].append(v)
    T = len(rows) - 2
    if T < 0:
        raise ParseError("CSV has no data rows")
    return SignalBundle(DISCRETE, T, {n: DiscreteTrace(tuple(v), T, n) for n, v in cols.items()})


def loads_bundle(text: str, format: str = "json") -> SignalBundle:
    if format == "json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from None
        return bundle_from_obj(obj)
    if format == "csv":
        return _parse_csv(text)
    raise ParseError(f"unknown format {format!r}")


def load_bundle(path, format=None) -> SignalBundle:
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "json"
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from None
    return loads_bundle(text, format)


def save_bundle(b: SignalBundle, path, format="json"):
    path = Path(path)
    if format == "json":
        path.write_text(dumps_bundle(b), encoding="utf-8")
    elif format == "csv":
        if not b.discrete:
            raise ParseError("CSV format only supports discrete signals")
        names = list(b.propositions)
        lines = [",".join(["t"] + names)]
        for t in range(b.domain_end + 1):
            lines.append(",".join([str(t)] + [str(b.propositions[n].values[t]) for n in names]))
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    else:
        raise ParseError(f"unknown format {format!r}")


def fmt_num(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if v.is_integer() and abs(v) < 1e15:
        return str(int(v))
    return format(v, ".12g")


def result_csv(rows) -> str:
    """Serialize ``(t, value)`` rows as the ``t,value`` CSV."""
    lines = ["t,value"]
    lines.extend(f"{fmt_num(t)},{fmt_num(v)}" for t, v in rows)
    return "\n".join(lines) + "\n"
