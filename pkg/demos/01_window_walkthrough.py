"""Discrete walkthrough: one formula, three readings of the same trace.

Run: python3 demos/01_window_walkthrough.py
"""

# %%
from mtlfilter import SignalBundle, parse
from mtlfilter.oracle import oracle_discrete_trace
from mtlfilter.qual import eval_qual_discrete
from mtlfilter.quant import eval_quant_discrete

# p holds on 2..6 inside 0..12
x = SignalBundle.from_arrays({"p": [1 if 2 <= i <= 6 else 0 for i in range(13)]})
f = parse("O[1,4] p")

# %%
# Classical truth, the max-min filter and the averaging filter side by side.
classical = oracle_discrete_trace(f, x)
boolean = eval_qual_discrete(f, x).values
average = eval_quant_discrete(f, x).values

print(" i  p  classical  max-min  average")
for i in range(13):
    print(f"{i:2d}  {x.propositions['p'].values[i]}  {int(classical[i]):9d}  "
          f"{int(boolean[i]):7d}  {average[i]:7.2f}")

# %%
# The average is positive exactly where the classical answer is true.
assert [v > 0 for v in average] == classical
assert list(boolean) == [int(c) for c in classical]

# %%
# Nested operators compose as filters; G clips windows at the trace end.
for text in ("G[0,2] p", "F[1,3] G[0,1] p", "p U[1,3] !p"):
    g = parse(text)
    print(f"{text:18s}", " ".join(f"{v:.2f}" for v in eval_quant_discrete(g, x).values))
