import json
import re

import numpy as np
import pytest

from mtlfilter import quant
from mtlfilter.cli import main, spike_demo

TABLE = {"time": "discrete", "T": 12, "props": {"p": [1 if 2 <= i <= 6 else 0 for i in range(13)]}}


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(json.dumps(obj))
        return str(path)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_table(files, capsys):
    src = files("table1.json", TABLE)
    code, out, _ = run(capsys, "eval", "-f", "O[1,4] p", "-i", src, "-s", "quant")
    assert code == 0
    rows = out.split()
    assert rows[0] == "t,value"
    assert {"3,0.25", "6,1", "10,0.25", "0,0"} <= set(rows)


def test_eval_exit_codes(files, capsys):
    src = files("table1.json", TABLE)
    code, _, err = run(capsys, "eval", "-f", "F[4,2] p", "-i", src)
    assert code == 2 and "interval lower bound exceeds upper" in err
    assert run(capsys, "eval", "-f", "G[1,2] p", "-i", src, "-s", "quant", "-k", "gauss:8")[0] == 3
    assert run(capsys, "eval", "-f", "F[1,2] p", "-i", src, "-s", "qual", "-k", "gauss:8")[0] == 3
    assert run(capsys, "eval", "-f", "F[1,2] p", "-i", src + ".missing")[0] == 2
    assert run(capsys, "eval", "-f", "F[1,2] p", "-i", src, "-k", "gauss:-1")[0] == 2


def test_eval_continuous_outputs(files, capsys):
    src = files("c.json", {"time": "continuous", "T": 20, "props": {"p": [[5, 7]]}})
    code, out, _ = run(capsys, "eval", "-f", "O[2,3] p", "-i", src)
    assert code == 0
    assert json.loads(out) == {"T": 20, "intervals": [[7, 10]], "points_true": [],
                               "points_false": []}
    code, out, _ = run(capsys, "eval", "-f", "O[2,4] p", "-i", src, "-s", "quant")
    assert out.split() == ["t,value", "0,0", "7,0", "9,1", "11,0", "20,0"]
    code, out, _ = run(capsys, "eval", "-f", "O[2,4] p", "-i", src, "-s", "quant", "--sample", "1")
    assert len(out.split()) == 21 and "8,0.5" in out.split()


def test_eval_is_byte_deterministic(files, capsys, tmp_path):
    src = files("c.json", {"time": "continuous", "T": 20, "props": {"p": [[1, 3], [5.5, 9]]}})
    outs = []
    for k in range(2):
        dst = tmp_path / f"o{k}.csv"
        main(["eval", "-f", "O[1,3] p", "-i", src, "-s", "quant", "-k", "sigmoid:5", "-o", str(dst)])
        outs.append(dst.read_bytes())
    assert outs[0] == outs[1] and len(outs[0]) > 100


def _paths(svg):
    return re.findall(r'<path class="series" d="([^"]*)"', svg)


def test_plot_panels(files, tmp_path, capsys):
    src = files("c.json", {"time": "continuous", "T": 20, "props": {"p": [[5, 7]], "q": [[1, 2]]}})
    dst = tmp_path / "out.svg"
    assert main(["plot", "-f", "O[2,3] p", "-i", src, "-o", str(dst)]) == 0
    svg = dst.read_text()
    # one panel per used proposition plus the result
    assert svg.startswith("<svg") and len(_paths(svg)) == 2


def test_plot_qual_values_are_boolean(files, capsys):
    from mtlfilter.cli import plot_panels
    from mtlfilter.formula import parse
    from mtlfilter.qual import eval_qual
    from mtlfilter.signal import load_bundle
    src = files("c.json", {"time": "continuous", "T": 20, "props": {"p": [[5, 7], [12, 13]]}})
    x = load_bundle(src)
    f = parse("O[2,3] p")
    panels = plot_panels(f, x, eval_qual(f, x))
    assert set(panels[-1].vs) <= {0, 1}


def test_plot_empty_signal(files, tmp_path):
    from mtlfilter.cli import plot_panels
    from mtlfilter.formula import parse
    from mtlfilter.quant import eval_quant
    from mtlfilter.signal import load_bundle
    src = files("e.json", {"time": "continuous", "T": 10, "props": {"p": []}})
    x = load_bundle(src)
    f = parse("O[1,6] p")
    panels = plot_panels(f, x, eval_quant(f, x))
    assert set(panels[-1].vs) == {0.0}
    assert main(["plot", "-f", "O[1,6] p", "-i", src, "-s", "quant", "-o", str(tmp_path / "e.svg")]) == 0


def test_spike_demo_outputs(tmp_path, capsys):
    prefix = tmp_path / "rates"
    assert main(["spike-demo", "-n", "30", "-T", "2", "-o", str(prefix)]) == 0
    lines = (tmp_path / "rates.csv").read_text().split()
    assert lines[0] == "t,binned,sliding_rect,gaussian" and len(lines) == 401
    assert len(_paths((tmp_path / "rates.svg").read_text())) == 4


def test_spike_demo_sliding_rate_is_window_count():
    spikes, times, _, sliding, _ = spike_demo(50, 2.0, 0.1, seed=3)
    for t, r in zip(times, sliding):
        count = np.sum((spikes >= t - 0.05) & (spikes <= t + 0.05))
        assert r == pytest.approx(count / 0.1, rel=1e-12, abs=1e-12)


def test_spike_demo_zero_spikes():
    _, _, binned, sliding, gauss = spike_demo(0, 2.0, 0.1)
    assert not binned.any() and not sliding.any() and not gauss.any()


def test_check_passes(capsys):
    code, out, _ = run(capsys, "check", "--cases", "100", "--seed", "4")
    assert code == 0 and out.count("cases ok") == 4
    assert run(capsys, "check", "--cases", "0")[0] == 0


def test_check_catches_broken_clipping(capsys, monkeypatch):
    def broken(v, lo, hi):
        # out-of-domain points count as false
        out = np.ones(len(v))
        for d in range(lo, hi + 1):
            out = np.minimum(out, quant._shift_value(v, d))
        return out
    monkeypatch.setattr(quant, "_window_min", broken)
    code, out, _ = run(capsys, "check", "--suite", "quant-discrete", "--cases", "200")
    assert code == 1 and "counterexample" in out
    body = out[out.index("counterexample"):]
    T = json.loads(re.search(r"signal:\s+(\{.*\})", body).group(1))["T"]
    t = int(re.search(r"time:\s+(\d+)", body).group(1))
    f = re.search(r"formula:\s+(.*)", body).group(1)
    hi = int(re.search(r"[GH]\[\d+,(\d+)\]", f).group(1))
    # the failure comes from a window sticking out of the domain
    assert t + hi > T or t - hi < 0
