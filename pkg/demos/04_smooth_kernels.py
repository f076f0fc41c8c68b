"""Swapping the rectangular window of F/O for smooth ones.

Run: python3 demos/04_smooth_kernels.py   (writes demos/out/smooth.svg)
"""

# %%
from pathlib import Path

import numpy as np

from mtlfilter import SignalBundle, parse
from mtlfilter.errors import KernelShapeError
from mtlfilter.kernel import PAST, mass, make_window
from mtlfilter.formula import TimeInterval
from mtlfilter.quant import eval_quant_continuous
from mtlfilter.svg import LINE, Panel, render

x = SignalBundle.from_intervals(30.0, {"p": [(5, 7), (10, 15.5)]})
f = parse("O[1,6] p")

# %%
# Every window is normalized to unit mass.
for spec in ("rect", "gauss:3", "gauss:8", "sigmoid:5", "sigmoid:1000"):
    k = make_window(spec, TimeInterval(1, 6), PAST, "continuous")
    print(f"{spec:13s} mass {mass(k):.12f}")

# %%
# A Gaussian sits on the window middle, so with sigma well under the window
# length it acts as a blurred delay: edges rise over about 2.6 sigma instead of
# the box's full ramp. A steep sigmoid recovers the box.
ts = np.arange(0, 30, 0.01)
curves = {spec: eval_quant_continuous(f, x, spec) for spec in
          ("rect", "gauss:8", "gauss:3", "sigmoid:1000")}


def rise_time(vals, lo=0.1, hi=0.9):
    # 10-90 rise of the last falling edge, read backwards
    after = ts > 16.5
    t_lo = ts[after][np.argmax(vals[after] < lo)]
    t_hi = ts[after][np.argmax(vals[after] < hi)]
    return t_lo - t_hi


for spec, r in curves.items():
    vals = r.sample(ts)
    print(f"{spec:13s} peak {vals.max():.3f}  edge width {rise_time(vals):.2f}")
gap = np.max(np.abs(curves["sigmoid:1000"].sample(ts) - curves["rect"].sample(ts)))
print("sigmoid:1000 vs rect, largest gap", f"{gap:.1e}")

# %%
# Min-based operators keep the box: smooth windows under G are rejected.
try:
    eval_quant_continuous(parse("G[1,6] p"), x, "gauss:3")
except KernelShapeError as exc:
    print("rejected:", exc)

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
panels = [Panel(spec, list(ts), list(r.sample(ts)), LINE) for spec, r in curves.items()]
(out / "smooth.svg").write_text(render(panels, 30.0, title=str(f)))
print("wrote", out / "smooth.svg")
