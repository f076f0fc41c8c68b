"""Command-line front end.

    mtlfilter eval  -f "O[1,4] p" -i signal.json -s quant
    mtlfilter plot  -f "O[2,3] p" -i signal.json -s qual -o out.svg
    mtlfilter spike-demo -n 40 -T 2 -o rates
    mtlfilter check --seed 0 --cases 500

Exit codes: 0 success, 1 property violation (``check``), 2 unparsable
input (formula, signal file, interval, parameter), 3 semantics/kernel
mismatch (smooth kernel where a rectangle is required, non-PNF input,
open intervals in continuous time).
"""

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import checks, oracle, qual, quant
from .errors import (
    KernelShapeError, MTLError, NonBooleanOperand, NotPNF, OpenIntervalUnsupported,
    UnsupportedNegation,
)
from .formula import parse, propositions, to_pnf
from .kernel import RECT, centered_window, parse_kernel_spec
from .piecewise import Piecewise
from .signal import load_bundle, fmt_num, result_csv
from .svg import LINE, STEP, Panel, render
from .timeset import TimeSet

SEMANTICS_ERRORS = (KernelShapeError, NotPNF, OpenIntervalUnsupported, UnsupportedNegation,
                    NonBooleanOperand)


@dataclass
class RunConfig:
    subcommand: str
    formula: Optional[str] = None
    input: Optional[str] = None
    semantics: str = "qual"
    kernel: str = "rect"
    sample_step: float = quant.DEFAULT_STEP
    output: Optional[str] = None
    format: Optional[str] = None
    sample: Optional[float] = None

    def validate(self):
        if not self.sample_step > 0:
            raise ValueError("--step must be positive")
        if self.sample is not None and not self.sample > 0:
            raise ValueError("--sample must be positive")
        shape, _ = parse_kernel_spec(self.kernel)
        if self.semantics != "quant" and shape != RECT:
            raise KernelShapeError(f"{self.semantics} semantics takes rectangular windows only")


# -- evaluation -------------------------------------------------------------


def evaluate(cfg: RunConfig):
    """Run the configured semantics; returns ``(formula, bundle, result)``."""
    cfg.validate()
    f = parse(cfg.formula)
    x = load_bundle(cfg.input)
    if cfg.semantics == "classical":
        res = oracle.oracle_discrete_trace(f, x) if x.discrete else oracle.oracle_continuous(f, x)
    elif cfg.semantics == "qual":
        res = qual.eval_qual(f, x, cfg.kernel)
    else:
        f = to_pnf(f)
        res = quant.eval_quant(f, x, cfg.kernel, cfg.sample_step)
    return f, x, res


def _set_obj(s: TimeSet) -> dict:
    pairs, pts_true, pts_false = s.split_cadlag()
    return {"T": s.end, "intervals": [list(p) for p in pairs],
            "points_true": pts_true, "points_false": pts_false}


def format_result(x, res, fmt=None, sample=None) -> str:
    if x.discrete:
        vals = res.values if hasattr(res, "values") else [int(v) for v in res]
        rows = list(enumerate(vals))
        if fmt == "json":
            return json.dumps({"T": x.domain_end, "values": [v for _, v in rows]}) + "\n"
        return result_csv(rows)
    if isinstance(res, TimeSet):
        if fmt == "csv":
            return result_csv(Piecewise.from_timeset(res).knots(sample))
        return json.dumps(_set_obj(res)) + "\n"
    rows = res.knots(sample)
    if fmt == "json":
        return json.dumps({"T": x.domain_end, "knots": [[t, v] for t, v in rows]}) + "\n"
    return result_csv(rows)


def _emit(text, output):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_eval(cfg: RunConfig) -> int:
    _, x, res = evaluate(cfg)
    _emit(format_result(x, res, cfg.format, cfg.sample), cfg.output)
    return 0


# -- plotting ---------------------------------------------------------------


def _set_panel(title, s: TimeSet) -> Panel:
    rows = Piecewise.from_timeset(s).knots()
    return Panel(title, [t for t, _ in rows], [v for _, v in rows], LINE)


def _discrete_panel(title, vals, T) -> Panel:
    # hold each sample over [i, i+1)
    return Panel(title, list(range(T + 2)), list(vals) + [vals[-1]], STEP)


def plot_panels(f, x, res, sample=None) -> list:
    panels = []
    for name in sorted(propositions(f)):
        sig = x.propositions[name]
        if x.discrete:
            panels.append(_discrete_panel(name, sig.values, x.domain_end))
        else:
            panels.append(_set_panel(name, TimeSet.from_cadlag(sig.intervals, x.domain_end)))
    title = str(f)
    if x.discrete:
        vals = res.values if hasattr(res, "values") else [int(v) for v in res]
        panels.append(_discrete_panel(title, vals, x.domain_end))
    elif isinstance(res, TimeSet):
        panels.append(_set_panel(title, res))
    else:
        rows = res.knots(sample)
        panels.append(Panel(title, [t for t, _ in rows], [v for _, v in rows], LINE))
    return panels


def cmd_plot(cfg: RunConfig) -> int:
    f, x, res = evaluate(cfg)
    end = x.domain_end + 1 if x.discrete else x.domain_end
    svg = render(plot_panels(f, x, res, cfg.sample), end,
                 title=f"{cfg.semantics} semantics, kernel {cfg.kernel}")
    _emit(svg, cfg.output)
    return 0


# -- spike demo -------------------------------------------------------------


def spike_demo(n_spikes=40, T=2.0, width=0.1, sigma=None, seed=0, step=0.005):
    """Poisson spike train (``n_spikes`` uniform times) and its three rates.

    Returns ``(spikes, times, binned, sliding, gaussian)``, all rates
    sampled at ``times``.
    """
    sigma = width / 2 if sigma is None else sigma
    rng = np.random.default_rng(seed)
    spikes = np.sort(rng.uniform(0.0, T, n_spikes))
    times = np.arange(0.0, T, step)
    edges, rates = quant.binned_rate(spikes, width, T)
    binned = rates[np.clip(np.searchsorted(edges, times, "right") - 1, 0, len(rates) - 1)]
    sliding = quant.spike_rate(spikes, centered_window(width), T).sample(times)
    gauss = quant.gaussian_rate(spikes, sigma, T, times)
    return spikes, times, binned, sliding, gauss


def cmd_spike_demo(args) -> int:
    spikes, times, binned, sliding, gauss = spike_demo(
        args.n_spikes, args.T, args.window, args.sigma, args.seed, args.step)
    lines = ["t,binned,sliding_rect,gaussian"]
    for row in zip(times, binned, sliding, gauss):
        lines.append(",".join(fmt_num(v) for v in row))
    prefix = Path(args.output)
    prefix.with_suffix(".csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    spike_ts = [0.0]
    spike_vs = [0.0]
    for s in spikes:
        spike_ts += [s, s, s]
        spike_vs += [0.0, 1.0, 0.0]
    spike_ts.append(args.T)
    spike_vs.append(0.0)
    panels = [
        Panel(f"spikes (n={len(spikes)})", spike_ts, spike_vs, LINE),
        Panel(f"binned rate, bins of {args.window}", list(times), list(binned), STEP),
        Panel(f"sliding rectangular rate, width {args.window}", list(times), list(sliding), STEP),
        Panel(f"gaussian rate, sigma {args.sigma or args.window / 2}", list(times), list(gauss), LINE),
    ]
    prefix.with_suffix(".svg").write_text(render(panels, args.T, title="spike-count rates"),
                                          encoding="utf-8")
    print(f"wrote {prefix.with_suffix('.csv')} and {prefix.with_suffix('.svg')}")
    return 0


# -- check ------------------------------------------------------------------


def cmd_check(args) -> int:
    names = list(checks.SUITES) if args.suite == "all" else [args.suite]
    status = 0
    for name in names:
        suite = checks.SUITES[name]
        cex = checks.run_suite(suite, args.seed, args.cases)
        if cex is None:
            print(f"{name}: {suite.title}: {args.cases} cases ok")
        else:
            print(f"{name}: {suite.title}: FAILED")
            print(cex.report())
            status = 1
    return status


# -- entry point ------------------------------------------------------------


def _add_eval_args(p):
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-i", "--input", required=True, help="signal file (.json or .csv)")
    p.add_argument("-s", "--semantics", choices=("qual", "quant", "classical"), default="qual")
    p.add_argument("-k", "--kernel", default="rect", help="rect | gauss:<1/sigma> | sigmoid:<k>")
    p.add_argument("--step", type=float, default=quant.DEFAULT_STEP,
                   help="grid step for smooth kernels in continuous time")
    p.add_argument("--sample", type=float, default=None,
                   help="emit continuous results on a grid of this step")
    p.add_argument("-o", "--output", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mtlfilter", description="MTL monitoring as filtering")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("eval", help="evaluate a formula over a signal file")
    _add_eval_args(p)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p = sub.add_parser("plot", help="write an SVG of inputs and result")
    _add_eval_args(p)
    p = sub.add_parser("spike-demo", help="rates of a synthetic spike train")
    p.add_argument("-n", "--n-spikes", type=int, default=40)
    p.add_argument("-T", type=float, default=2.0)
    p.add_argument("-w", "--window", type=float, default=0.1, help="bin and sliding window width")
    p.add_argument("--sigma", type=float, default=None, help="gaussian sigma (default window/2)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--step", type=float, default=0.005)
    p.add_argument("-o", "--output", default="spike_rates")
    p = sub.add_parser("check", help="run the randomized agreement suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int, default=500)
    p.add_argument("--suite", choices=("all",) + tuple(checks.SUITES), default="all")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command in ("eval", "plot"):
            cfg = RunConfig(args.command, args.formula, args.input, args.semantics, args.kernel,
                            args.step, args.output, getattr(args, "format", None), args.sample)
            return cmd_eval(cfg) if args.command == "eval" else cmd_plot(cfg)
        if args.command == "spike-demo":
            if args.n_spikes < 0 or not args.T > 0 or not args.window > 0 or not args.step > 0:
                raise ValueError("spike-demo parameters must be positive")
            return cmd_spike_demo(args)
        if args.cases < 0:
            raise ValueError("--cases must be non-negative")
        return cmd_check(args)
    except SEMANTICS_ERRORS as exc:
        print(f"mtlfilter: {exc}", file=sys.stderr)
        return 3
    except (MTLError, ValueError) as exc:
        print(f"mtlfilter: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
