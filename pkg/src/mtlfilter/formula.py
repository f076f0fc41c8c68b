"""MTL abstract syntax, a recursive-descent parser and normal forms.

Concrete syntax::

    f ::= p | true | false | (f) | !f | f & f | f | f
        | F[a,b] f | G[a,b] f | O[a,b] f | H[a,b] f
        | f U[a,b] f | f S[a,b] f

``!`` and the unary temporal operators are prefix operators and bind
tightest, then ``U``/``S`` (non-associative), then ``&``, then ``|``.
``F[a]`` abbreviates ``F[a,a]``.
"""

from dataclasses import dataclass
from typing import Iterator

from .errors import FormulaSyntaxError, IntervalError, UnsupportedNegation


@dataclass(frozen=True)
class TimeInterval:
    lo: int
    hi: int
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if self.lo < 0:
            raise IntervalError(f"interval lower bound {self.lo} is negative")
        if self.lo > self.hi:
            raise IntervalError(
                f"interval lower bound exceeds upper: [{self.lo},{self.hi}]"
            )
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise IntervalError("a singular interval must be closed")

    @property
    def closed(self) -> bool:
        return not (self.lo_open or self.hi_open)

    @property
    def singular(self) -> bool:
        return self.lo == self.hi

    def __str__(self):
        return (
            f"{'(' if self.lo_open else '['}{self.lo},{self.hi}{')' if self.hi_open else ']'}"
        )


class Formula:
    """Base class of all AST nodes."""

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Const(Formula):
    value: bool


@dataclass(frozen=True)
class Prop(Formula):
    name: str


@dataclass(frozen=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Unary(Formula):
    interval: TimeInterval
    arg: Formula


class Finally(Unary):
    pass


class Globally(Unary):
    pass


class Once(Unary):
    pass


class Historically(Unary):
    pass


@dataclass(frozen=True)
class Binary(Formula):
    interval: TimeInterval
    left: Formula
    right: Formula


class Until(Binary):
    pass


class Since(Binary):
    pass


TRUE = Const(True)
FALSE = Const(False)

UNARY_SYMBOLS = {Finally: "F", Globally: "G", Once: "O", Historically: "H"}
BINARY_SYMBOLS = {Until: "U", Since: "S"}
_UNARY_BY_SYMBOL = {v: k for k, v in UNARY_SYMBOLS.items()}
_BINARY_BY_SYMBOL = {v: k for k, v in BINARY_SYMBOLS.items()}
FUTURE = (Finally, Globally, Until)


def format_formula(f: Formula) -> str:
    if isinstance(f, Const):
        return "true" if f.value else "false"
    if isinstance(f, Prop):
        return f.name
    if isinstance(f, Not):
        return f"!{format_formula(f.arg)}"
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    if isinstance(f, Or):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    if isinstance(f, Unary):
        return f"{UNARY_SYMBOLS[type(f)]}{f.interval} {format_formula(f.arg)}"
    if isinstance(f, Binary):
        return (
            f"({format_formula(f.left)} {BINARY_SYMBOLS[type(f)]}{f.interval} "
            f"{format_formula(f.right)})"
        )
    raise TypeError(f"not a formula: {f!r}")


# -- parser ---------------------------------------------------------------

_PUNCT = set("()[],!&|")


def _tokenize(text: str):
    toks, i, n = [], 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in _PUNCT:
            toks.append((c, c, i))
            i += 1
        elif c.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", int(text[i:j]), i))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] in "_."):
                j += 1
            toks.append(("id", text[i:j], i))
            i = j
        else:
            raise FormulaSyntaxError(f"unexpected character {c!r}", i)
    toks.append(("eof", None, n))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0

    def peek(self, off=0):
        return self.toks[min(self.k + off, len(self.toks) - 1)]

    def advance(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            shown = "end of input" if tok[0] == "eof" else repr(tok[1])
            raise FormulaSyntaxError(f"expected {kind!r}, found {shown}", tok[2])
        return tok

    def is_op(self, symbols):
        tok = self.peek()
        return tok[0] == "id" and tok[1] in symbols and self.peek(1)[0] == "["

    def parse(self):
        f = self.or_expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise FormulaSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def or_expr(self):
        f = self.and_expr()
        while self.peek()[0] == "|":
            self.advance()
            f = Or(f, self.and_expr())
        return f

    def and_expr(self):
        f = self.temporal_expr()
        while self.peek()[0] == "&":
            self.advance()
            f = And(f, self.temporal_expr())
        return f

    def temporal_expr(self):
        f = self.unary()
        if self.is_op(_BINARY_BY_SYMBOL):
            cls = _BINARY_BY_SYMBOL[self.advance()[1]]
            interval = self.interval()
            g = self.unary()
            f = cls(interval, f, g)
            if self.is_op(_BINARY_BY_SYMBOL):
                raise FormulaSyntaxError(
                    "U and S are non-associative; add parentheses", self.peek()[2]
                )
        return f

    def unary(self):
        tok = self.peek()
        if tok[0] == "!":
            self.advance()
            return Not(self.unary())
        if self.is_op(_UNARY_BY_SYMBOL):
            cls = _UNARY_BY_SYMBOL[self.advance()[1]]
            interval = self.interval()
            return cls(interval, self.unary())
        return self.atom()

    def interval(self):
        start = self.expect("[")[2]
        lo = self.expect("num")[1]
        hi = lo
        if self.peek()[0] == ",":
            self.advance()
            hi = self.expect("num")[1]
        self.expect("]")
        if lo > hi:
            raise IntervalError(f"interval lower bound exceeds upper: [{lo},{hi}] at position {start}")
        return TimeInterval(lo, hi)

    def atom(self):
        tok = self.advance()
        if tok[0] == "(":
            f = self.or_expr()
            self.expect(")")
            return f
        if tok[0] == "id":
            if tok[1] == "true":
                return TRUE
            if tok[1] == "false":
                return FALSE
            return Prop(tok[1])
        shown = "end of input" if tok[0] == "eof" else repr(tok[1])
        raise FormulaSyntaxError(f"expected a formula, found {shown}", tok[2])


def parse(text: str) -> Formula:
    """Parse concrete MTL syntax into an AST.

    >>> parse("O[1,4] p")
    Once(interval=TimeInterval(lo=1, hi=4, lo_open=False, hi_open=False), arg=Prop(name='p'))
    """
    return _Parser(text).parse()


# -- traversal and rewriting ----------------------------------------------


def children(f: Formula) -> tuple:
    if isinstance(f, Not):
        return (f.arg,)
    if isinstance(f, (And, Or)):
        return (f.left, f.right)
    if isinstance(f, Unary):
        return (f.arg,)
    if isinstance(f, Binary):
        return (f.left, f.right)
    return ()


def subformulas(f: Formula) -> Iterator[Formula]:
    """Post-order traversal, children before parents."""
    for c in children(f):
        yield from subformulas(c)
    yield f


def propositions(f: Formula) -> set:
    return {g.name for g in subformulas(f) if isinstance(g, Prop)}


def depth(f: Formula) -> int:
    cs = children(f)
    return 1 + max((depth(c) for c in cs), default=0)


def intervals(f: Formula):
    return [g.interval for g in subformulas(f) if isinstance(g, (Unary, Binary))]


def is_pnf(f: Formula) -> bool:
    return all(
        isinstance(g.arg, Prop) for g in subformulas(f) if isinstance(g, Not)
    )


_DUAL = {Finally: Globally, Globally: Finally, Once: Historically, Historically: Once}


def to_pnf(f: Formula) -> Formula:
    """Push negations down to the propositions.

    >>> str(to_pnf(parse("!F[1,4] p")))
    'G[1,4] !p'
    """
    return _pnf(f, False)


def _pnf(f, neg):
    if isinstance(f, Const):
        return Const(f.value != neg)
    if isinstance(f, Prop):
        return Not(f) if neg else f
    if isinstance(f, Not):
        return _pnf(f.arg, not neg)
    if isinstance(f, And):
        cls = Or if neg else And
        return cls(_pnf(f.left, neg), _pnf(f.right, neg))
    if isinstance(f, Or):
        cls = And if neg else Or
        return cls(_pnf(f.left, neg), _pnf(f.right, neg))
    if isinstance(f, Unary):
        cls = _DUAL[type(f)] if neg else type(f)
        return cls(f.interval, _pnf(f.arg, neg))
    if isinstance(f, Binary):
        if neg:
            raise UnsupportedNegation(
                f"negation of {BINARY_SYMBOLS[type(f)]} has no dual operator: {format_formula(f)}"
            )
        return type(f)(f.interval, _pnf(f.left, False), _pnf(f.right, False))
    raise TypeError(f"not a formula: {f!r}")


def derived_expansions(f: Formula) -> Formula:
    """Rewrite F/G/O/H into Until/Since with true and negation."""
    if isinstance(f, (Const, Prop)):
        return f
    if isinstance(f, Not):
        return Not(derived_expansions(f.arg))
    if isinstance(f, (And, Or)):
        return type(f)(derived_expansions(f.left), derived_expansions(f.right))
    if isinstance(f, Binary):
        return type(f)(f.interval, derived_expansions(f.left), derived_expansions(f.right))
    arg = derived_expansions(f.arg)
    if isinstance(f, Finally):
        return Until(f.interval, TRUE, arg)
    if isinstance(f, Once):
        return Since(f.interval, TRUE, arg)
    if isinstance(f, Globally):
        return Not(Until(f.interval, TRUE, Not(arg)))
    if isinstance(f, Historically):
        return Not(Since(f.interval, TRUE, Not(arg)))
    raise TypeError(f"not a formula: {f!r}")
