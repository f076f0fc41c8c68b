"""Metric temporal logic monitoring as signal filtering.

Temporal operators are convolutions with window kernels: max-min
convolution gives the classical Boolean verdict, ordinary convolution a
[0, 1] measure of how much of each window satisfies the formula.
"""

from .errors import (
    DomainError, DomainMismatch, FormulaSyntaxError, IntervalError, InvalidParam,
    KernelShapeError, MTLError, NonBooleanOperand, NotPNF, OpenIntervalUnsupported,
    OutOfDomain, ParseError, UnknownProposition, UnsupportedNegation,
)
from .formula import (
    And, Const, Finally, Formula, Globally, Historically, Not, Once, Or, Prop, Since,
    TimeInterval, Until, derived_expansions, format_formula, is_pnf, parse, to_pnf,
)
from .kernel import (
    Kernel, centered_gaussian, centered_window, gaussian_window, make_window, mass,
    rect_window, sigmoid_window,
)
from .oracle import oracle_continuous, oracle_discrete, oracle_discrete_trace
from .piecewise import Piecewise
from .qual import eval_qual, eval_qual_continuous, eval_qual_discrete
from .quant import (
    binned_rate, eval_quant, eval_quant_continuous, eval_quant_discrete, gaussian_rate,
    sliding_rect_rate, spike_rate,
)
from .signal import (
    DiscreteTrace, IntervalSet, PiecewiseLinear, QuantTraceD, SignalBundle, load_bundle,
    loads_bundle, save_bundle, value_at,
)
from .timeset import TimeSet

__version__ = "0.1.0"
