"""A tiny arithmetic language for right-hand sides and exact solutions.

Grammar, loosest binding first::

    expr    := expr ('+' | '-') expr
             | expr ('*' | '/') expr
             | '-' expr                 (binds tighter than * and /)
             | expr '^' expr            (right associative, tighter than unary minus)
             | NAME '(' args ')' | NAME | NUMBER | '(' expr ')'

so ``-t^2`` is ``-(t^2)`` and ``2^-1`` is ``0.5``. Variables are ``t`` and
``u``; ``pi`` and ``e`` are built in and callers may inject further named
constants. ``gammaf(x)`` needs a constant argument and is folded at parse
time.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping, Union

import numpy as np

from .errors import EvaluationError, ExpressionError, UnknownIdentifierError
from .special import gamma

VARIABLES = ("t", "u")
BUILTIN_CONSTANTS = {"pi": math.pi, "e": math.e}
FUNCTIONS = {"sin": 1, "cos": 1, "exp": 1, "log": 1, "pow": 2, "abs": 1, "gammaf": 1}

_BINARY = {"+": (1, "left"), "-": (1, "left"), "*": (2, "left"), "/": (2, "left"), "^": (4, "right")}
_UNARY_PREC = 3

_TOKEN = re.compile(r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Node", ...]


Node = Union[Num, Var, Neg, BinOp, Call]


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(src: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            bad = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExpressionError(f"unexpected character {src[bad]!r}", bad)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(Token("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, constants: Mapping[str, float]):
        self.tokens = tokenize(src)
        self.i = 0
        self.constants = constants

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        if self.tok.text != text:
            raise ExpressionError(f"expected {text!r}, found {self.tok.text or 'end of input'!r}", self.tok.pos)
        self.advance()

    def expression(self, min_prec: int = 1) -> Node:
        left = self.primary()
        while self.tok.kind == "op" and self.tok.text in _BINARY:
            prec, assoc = _BINARY[self.tok.text]
            if prec < min_prec:
                break
            op = self.advance().text
            right = self.expression(prec + 1 if assoc == "left" else prec)
            left = _fold(BinOp(op, left, right))
        return left

    def primary(self) -> Node:
        tok = self.tok
        if tok.kind == "op" and tok.text in "+-":
            self.advance()
            operand = self.expression(_UNARY_PREC)
            return operand if tok.text == "+" else _fold(Neg(operand))
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            self.advance()
            if self.tok.text == "(":
                return self.call(tok)
            if tok.text in FUNCTIONS:
                raise ExpressionError(f"expected '(' after {tok.text}", self.tok.pos)
            if tok.text in VARIABLES:
                return Var(tok.text)
            if tok.text in self.constants:
                return Num(float(self.constants[tok.text]))
            if tok.text in BUILTIN_CONSTANTS:
                return Num(BUILTIN_CONSTANTS[tok.text])
            raise UnknownIdentifierError(f"unknown identifier {tok.text!r}", tok.pos)
        if tok.text == "(":
            self.advance()
            node = self.expression()
            self.expect(")")
            return node
        what = repr(tok.text) if tok.text else "end of input"
        raise ExpressionError(f"unexpected {what}", tok.pos)

    def call(self, name: Token) -> Node:
        if name.text not in FUNCTIONS:
            raise UnknownIdentifierError(f"unknown function {name.text!r}", name.pos)
        self.expect("(")
        args = [self.expression()]
        while self.tok.text == ",":
            self.advance()
            args.append(self.expression())
        self.expect(")")
        arity = FUNCTIONS[name.text]
        if len(args) != arity:
            raise ExpressionError(f"{name.text} takes {arity} argument(s), got {len(args)}", name.pos)
        if name.text == "gammaf":
            if not isinstance(args[0], Num):
                raise ExpressionError("gammaf needs a constant argument", name.pos)
            return Num(gamma(args[0].value))
        return _fold(Call(name.text, tuple(args)))


def _fold(node: Node) -> Node:
    """Collapse subtrees whose children are all literals."""
    children = (node.operand,) if isinstance(node, Neg) else (
        (node.left, node.right) if isinstance(node, BinOp) else node.args)
    if all(isinstance(c, Num) for c in children):
        try:
            return Num(float(evaluate(node, 0.0, 0.0)))
        except EvaluationError:
            return node
    return node


def parse_expression(src: str, constants: Mapping[str, float] | None = None) -> Node:
    """Parse ``src`` into an AST; named ``constants`` are substituted as literals."""
    if not src or not src.strip():
        raise ExpressionError("empty expression", 0)
    constants = dict(constants or {})
    clash = set(constants) & (set(VARIABLES) | set(FUNCTIONS))
    if clash:
        raise ExpressionError(f"constant names shadow reserved identifiers: {sorted(clash)}")
    p = _Parser(src, constants)
    node = p.expression()
    if p.tok.kind != "end":
        raise ExpressionError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return node


def _log(x):
    if np.any(np.asarray(x) <= 0):
        raise EvaluationError("log of a nonpositive number")
    return np.log(x)


def _div(x, y):
    if np.any(np.asarray(y) == 0):
        raise EvaluationError("division by zero")
    return x / y


def _pow(x, y):
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.power(np.asarray(x, dtype=float), y)
    if np.any(np.isnan(out)) and not (np.any(np.isnan(x)) or np.any(np.isnan(y))):
        raise EvaluationError("power of a negative base with non-integer exponent")
    if np.any(np.isinf(out)) and np.any(np.asarray(x) == 0):
        raise EvaluationError("zero raised to a negative power")
    return out


_FUNC_IMPL: dict[str, Callable] = {
    "sin": np.sin, "cos": np.cos, "exp": np.exp, "log": _log, "abs": np.abs, "pow": _pow,
}
_BIN_IMPL: dict[str, Callable] = {
    "+": lambda x, y: x + y, "-": lambda x, y: x - y, "*": lambda x, y: x * y, "/": _div, "^": _pow,
}


def evaluate(node: Node, t=0.0, u=0.0):
    """Evaluate ``node``; ``t`` and ``u`` may be numpy arrays."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return t if node.name == "t" else u
    if isinstance(node, Neg):
        return -evaluate(node.operand, t, u)
    if isinstance(node, BinOp):
        return _BIN_IMPL[node.op](evaluate(node.left, t, u), evaluate(node.right, t, u))
    return _FUNC_IMPL[node.func](*(evaluate(a, t, u) for a in node.args))


def variables(node: Node) -> set[str]:
    if isinstance(node, Var):
        return {node.name}
    if isinstance(node, Num):
        return set()
    if isinstance(node, Neg):
        return variables(node.operand)
    if isinstance(node, BinOp):
        return variables(node.left) | variables(node.right)
    return set().union(*(variables(a) for a in node.args))


def compile_expression(node: Node) -> Callable:
    """Turn an AST into nested closures, avoiding the isinstance dispatch per call."""
    if isinstance(node, Num):
        v = node.value
        return lambda t, u: v
    if isinstance(node, Var):
        return (lambda t, u: t) if node.name == "t" else (lambda t, u: u)
    if isinstance(node, Neg):
        f = compile_expression(node.operand)
        return lambda t, u: -f(t, u)
    if isinstance(node, BinOp):
        f, g, op = compile_expression(node.left), compile_expression(node.right), _BIN_IMPL[node.op]
        return lambda t, u: op(f(t, u), g(t, u))
    fs, impl = [compile_expression(a) for a in node.args], _FUNC_IMPL[node.func]
    return lambda t, u: impl(*(f(t, u) for f in fs))


def to_source(node: Node) -> str:
    """Fully parenthesized text that parses back to an equal tree."""
    if isinstance(node, Num):
        return repr(node.value) if node.value >= 0 else f"({node.value!r})"
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.operand)})"
    if isinstance(node, BinOp):
        return f"({to_source(node.left)} {node.op} {to_source(node.right)})"
    return f"{node.func}({', '.join(to_source(a) for a in node.args)})"


def _simplify(node: Node) -> Node:
    if isinstance(node, BinOp):
        l, r = node.left, node.right
        lz = isinstance(l, Num) and l.value == 0
        rz = isinstance(r, Num) and r.value == 0
        lo = isinstance(l, Num) and l.value == 1
        ro = isinstance(r, Num) and r.value == 1
        if node.op == "+" and lz:
            return r
        if node.op in "+-" and rz:
            return l
        if node.op == "-" and lz:
            return _simplify(Neg(r))
        if node.op == "*" and (lz or rz):
            return Num(0.0)
        if node.op == "*" and lo:
            return r
        if node.op in "*/^" and ro:
            return l
        if node.op == "/" and lz:
            return Num(0.0)
    return _fold(node)


def differentiate(node: Node, var: str = "t") -> Node:
    """Symbolic derivative with respect to ``var``."""
    d = lambda n: differentiate(n, var)  # noqa: E731
    S = _simplify
    if isinstance(node, Num):
        return Num(0.0)
    if isinstance(node, Var):
        return Num(1.0 if node.name == var else 0.0)
    if isinstance(node, Neg):
        return S(Neg(d(node.operand)))
    if isinstance(node, BinOp):
        f, g = node.left, node.right
        if node.op in "+-":
            return S(BinOp(node.op, d(f), d(g)))
        if node.op == "*":
            return S(BinOp("+", S(BinOp("*", d(f), g)), S(BinOp("*", f, d(g)))))
        if node.op == "/":
            num = S(BinOp("-", S(BinOp("*", d(f), g)), S(BinOp("*", f, d(g)))))
            return S(BinOp("/", num, BinOp("^", g, Num(2.0))))
        return _diff_pow(f, g, var)
    f = node.args[0]
    if node.func == "pow":
        return _diff_pow(node.args[0], node.args[1], var)
    inner = d(f)
    if node.func == "sin":
        outer = Call("cos", (f,))
    elif node.func == "cos":
        outer = Neg(Call("sin", (f,)))
    elif node.func == "exp":
        outer = node
    elif node.func == "log":
        outer = BinOp("/", Num(1.0), f)
    else:
        raise ExpressionError(f"{node.func} is not differentiable in this language")
    return S(BinOp("*", outer, inner))


def _diff_pow(f: Node, g: Node, var: str) -> Node:
    S = _simplify
    df = differentiate(f, var)
    if var not in variables(g):
        # d(f^c) = c f^(c-1) f'
        return S(BinOp("*", S(BinOp("*", g, S(BinOp("^", f, S(BinOp("-", g, Num(1.0))))))), df))
    dg = differentiate(g, var)
    # d(f^g) = f^g (g' log f + g f'/f)
    inner = S(BinOp("+", S(BinOp("*", dg, Call("log", (f,)))), S(BinOp("/", S(BinOp("*", g, df)), f))))
    return S(BinOp("*", BinOp("^", f, g), inner))
