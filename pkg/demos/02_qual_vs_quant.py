"""Continuous time: satisfaction sets versus averaged satisfaction.

Run: python3 demos/02_qual_vs_quant.py   (writes demos/out/qual_vs_quant.svg)
"""

# %%
from pathlib import Path

from mtlfilter import SignalBundle, parse
from mtlfilter.cli import plot_panels
from mtlfilter.oracle import oracle_continuous
from mtlfilter.qual import eval_qual_continuous
from mtlfilter.quant import eval_quant_continuous
from mtlfilter.svg import render

x = SignalBundle.from_intervals(30.0, {"p": [(5, 7), (12, 12.5), (18, 24)]})
f = parse("O[2,4] p")

# %%
# The qualitative filter reproduces the classical set, isolated points included.
sat = eval_qual_continuous(f, x)
assert sat == oracle_continuous(f, x)
print("satisfied on", sat.split_cadlag())

# %%
# The quantitative value is the fraction of the window where p held.
val = eval_quant_continuous(f, x)
for t in (7.0, 8.0, 9.0, 14.0, 16.0, 25.0):
    print(f"t={t:5.1f}  set={int(sat.contains(t))}  value={val.value_at(t):.3f}")

# %%
# t = 7 sees p only at the window's closed end: true, yet zero mass.
print("t=7 classical:", sat.contains(7.0), " value:", val.value_at(7.0))

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
panels = plot_panels(f, x, sat)[:-1]
panels += plot_panels(f, x, sat)[-1:] + plot_panels(f, x, val)[-1:]
panels[-2].title, panels[-1].title = "max-min filter", "averaging filter"
(out / "qual_vs_quant.svg").write_text(render(panels, x.domain_end, title=str(f)))
print("wrote", out / "qual_vs_quant.svg")
