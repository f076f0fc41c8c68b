"""Firing rate of a synthetic spike train, three ways.

Run: python3 demos/03_spike_rates.py   (writes demos/out/spikes.csv and .svg)
"""

# %%
from pathlib import Path
from types import SimpleNamespace

import numpy as np

from mtlfilter.cli import cmd_spike_demo, spike_demo

spikes, times, binned, sliding, gauss = spike_demo(n_spikes=40, T=2.0, width=0.1, seed=1)
print(f"{len(spikes)} spikes on [0, 2)")

# %%
# Binned rates depend on where the bin grid falls; the sliding box does not.
k = int(np.searchsorted(times, spikes[10]))
count = np.sum(np.abs(spikes - times[k]) <= 0.05)
print(f"t={times[k]:.3f}: window count {count}, sliding rate {sliding[k]:.1f}, binned {binned[k]:.1f}")

# %%
# A Gaussian window trades the box's jumps for a smooth curve of the same mass;
# spikes near 0 or 2 lose the part of their mass outside the domain.
step = times[1] - times[0]
print("integral of gaussian rate:", round(float(np.sum(gauss) * step), 2), "vs", len(spikes))

# %%
out = Path(__file__).with_name("out")
out.mkdir(exist_ok=True)
args = SimpleNamespace(n_spikes=40, T=2.0, window=0.1, sigma=None, seed=1, step=0.005,
                       output=str(out / "spikes"))
cmd_spike_demo(args)
