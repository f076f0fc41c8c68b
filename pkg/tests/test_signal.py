import json

import numpy as np
import pytest

from mtlfilter.errors import DomainError, DomainMismatch, OutOfDomain, ParseError
from mtlfilter.signal import (
    DiscreteTrace, IntervalSet, PiecewiseLinear, QuantTraceD, SignalBundle, bundle_to_obj,
    dumps_bundle, fmt_num, load_bundle, loads_bundle, result_csv, save_bundle, value_at,
)


def test_discrete_trace_rejects_non_boolean_and_bad_length():
    with pytest.raises(DomainError):
        DiscreteTrace((0, 2, 1), 2)
    with pytest.raises(DomainError):
        DiscreteTrace((0, 1), 2)
    assert DiscreteTrace((True, False), 1).values == (1, 0)


def test_value_at_discrete_and_continuous():
    tr = DiscreteTrace.from_array([0, 1, 1])
    assert value_at(tr, 1) == 1
    with pytest.raises(OutOfDomain):
        value_at(tr, 3)
    s = IntervalSet(((1.0, 2.0),), 5.0)
    assert value_at(s, 1.0) == 1 and value_at(s, 2.0) == 0
    with pytest.raises(OutOfDomain):
        value_at(s, 5.0)


def test_interval_set_validation_and_normalization():
    with pytest.raises(DomainError):
        IntervalSet(((1, 3), (2, 4)), 10)
    with pytest.raises(DomainError):
        IntervalSet(((1, 2), (2, 4)), 10)
    assert IntervalSet.normalized([(2, 4), (1, 2), (6, 12)], 10).intervals == ((1, 4), (6, 10))


def test_interval_set_algebra():
    a = IntervalSet(((1, 3), (5, 7)), 10)
    b = IntervalSet(((2, 6),), 10)
    assert a.complement().intervals == ((0, 1), (3, 5), (7, 10))
    assert a.union(b).intervals == ((1, 7),)
    assert a.intersect(b).intervals == ((2, 3), (5, 6))
    assert a.measure() == 4
    with pytest.raises(DomainMismatch):
        a.union(IntervalSet((), 11))


def test_quant_trace_range():
    with pytest.raises(DomainError):
        QuantTraceD((0.5, 1.5), 1)


def test_piecewise_linear_interpolates():
    pl = PiecewiseLinear(((0, 0), (2, 1), (4, 0)), 5)
    assert pl(1) == 0.5 and pl(4.5) == 0
    with pytest.raises(DomainError):
        PiecewiseLinear(((0, 0), (0, 1)), 5)


def test_json_round_trip_continuous(tmp_path):
    x = SignalBundle.from_intervals(10.0, {"p": [(1, 2.5)], "q": []})
    path = tmp_path / "x.json"
    save_bundle(x, path)
    assert load_bundle(path) == x
    assert json.loads(dumps_bundle(x))["props"]["p"] == [[1, 2.5]]


def test_json_merges_adjacent_and_rejects_overlap():
    x = loads_bundle('{"time":"continuous","T":10,"props":{"p":[[1,2],[2,3]]}}')
    assert x.propositions["p"].intervals == ((1, 3),)
    with pytest.raises(DomainError):
        loads_bundle('{"time":"continuous","T":10,"props":{"p":[[1,3],[2,4]]}}')
    with pytest.raises(DomainError):
        loads_bundle('{"time":"continuous","T":10,"props":{"p":[[1,11]]}}')


def test_json_errors():
    with pytest.raises(ParseError):
        loads_bundle("{not json")
    with pytest.raises(ParseError):
        loads_bundle('{"time":"sideways","T":3,"props":{}}')
    with pytest.raises(ParseError):
        loads_bundle('{"T":3,"props":{}}')


def test_csv_round_trip(tmp_path):
    x = SignalBundle.from_arrays({"p": [0, 1, 1], "q": [1, 0, 0]})
    path = tmp_path / "x.csv"
    save_bundle(x, path, "csv")
    assert path.read_text().splitlines()[0] == "t,p,q"
    assert load_bundle(path) == x
    with pytest.raises(ParseError):
        loads_bundle("t,p\n0,1\n2,0\n", "csv")


def test_bundle_obj_keeps_integers():
    x = SignalBundle.from_arrays({"p": [0, 1]})
    assert bundle_to_obj(x) == {"time": "discrete", "T": 1, "props": {"p": [0, 1]}}


def test_result_csv_number_format():
    assert fmt_num(3.0) == "3" and fmt_num(0.25) == "0.25" and fmt_num(np.int64(2)) == "2"
    assert result_csv([(0, 0.5), (1.5, 1.0)]) == "t,value\n0,0.5\n1.5,1\n"
