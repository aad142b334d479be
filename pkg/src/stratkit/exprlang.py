"""A small closed-form expression language with forward-mode derivatives.

Charts and maps are written as expressions in named variables, so tangent
spaces and Jacobians come from exact dual-number differentiation instead of
finite differences.

Grammar (standard precedence, lowest first)::

    expr    := term  (('+' | '-') term)*
    term    := factor (('*' | '/') factor)*
    factor  := '-' factor | power
    power   := atom ('^' factor)?          # right-associative, binds above unary minus
    atom    := NUMBER | NAME | NAME '(' args ')' | '(' expr ')'
    cmp     := expr ('<' | '<=' | '>' | '>=') expr   # only as if()'s first argument

Functions: sqrt, sin, cos, exp, log, abs, min(a,b), max(a,b) and the lazy
conditional if(cmp, a, b), which evaluates only the taken branch.  ``a ^ b``
with a non-integer exponent requires a > 0 at evaluation time; integral
exponents are specialized and work for any base.

Evaluation never returns silent NaN/inf: domain violations (square root of a
negative, log of a non-positive, division by zero) raise
:class:`ExprEvalError` carrying the byte offset and source text of the
offending subexpression.  Syntax, unknown-identifier and arity errors raise
:class:`ExprSyntaxError` with a byte offset.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

#: Warn when a conditional is evaluated this close to its switching surface.
DEFAULT_SWITCH_TOL = 1e-9

_FUNCTIONS = {"sqrt": 1, "sin": 1, "cos": 1, "exp": 1, "log": 1,
              "abs": 1, "min": 2, "max": 2}
_CMP_OPS = ("<=", ">=", "<", ">")


class ExprSyntaxError(ValueError):
    """Parse-time error with the byte offset of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprEvalError(ArithmeticError):
    """Evaluation-time domain error, pointing at the failing subexpression."""

    def __init__(self, message: str, node: "Expr"):
        super().__init__(f"{message} in '{format_expr(node)}' (at offset {node.pos})")
        self.offset = node.pos
        self.node = node


# --- AST ------------------------------------------------------------------

@dataclass(frozen=True)
class Expr:
    pos: int = field(compare=False, repr=False)


@dataclass(frozen=True)
class Num(Expr):
    value: float = 0.0


@dataclass(frozen=True)
class Var(Expr):
    name: str = ""
    index: int = 0


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr = None


@dataclass(frozen=True)
class BinOp(Expr):
    op: str = ""
    left: Expr = None
    right: Expr = None


@dataclass(frozen=True)
class Call(Expr):
    fn: str = ""
    args: tuple[Expr, ...] = ()


@dataclass(frozen=True)
class If(Expr):
    cmp: str = ""
    lhs: Expr = None
    rhs: Expr = None
    then: Expr = None
    orelse: Expr = None


# --- Tokenizer / parser ----------------------------------------------------

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<number>(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op><=|>=|[-+*/^(),<>])
""", re.VERBOSE)


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        m = _TOKEN_RE.match(src, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {src[i]!r}", i)
        if m.lastgroup != "ws":
            tokens.append((m.lastgroup, m.group(), i))
        i = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, variables: Sequence[str]):
        self.src = src
        self.tokens = _tokenize(src)
        self.k = 0
        self.var_index = {}
        for i, name in enumerate(variables):
            if name in self.var_index:
                raise ValueError(f"duplicate variable name {name!r}")
            if name in _FUNCTIONS or name == "if":
                raise ValueError(f"variable name {name!r} shadows a builtin function")
            self.var_index[name] = i

    def peek(self):
        return self.tokens[self.k]

    def advance(self):
        tok = self.tokens[self.k]
        self.k += 1
        return tok

    def expect(self, text: str):
        kind, val, pos = self.peek()
        if val != text or kind == "end":
            found = repr(val) if kind != "end" else "end of input"
            raise ExprSyntaxError(f"expected {text!r}, found {found}", pos)
        return self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected trailing input {val!r}", pos)
        return e

    def expr(self) -> Expr:
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            _, op, pos = self.advance()
            node = BinOp(pos=node.pos, op=op, left=node, right=self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.peek()[1] in ("*", "/"):
            _, op, pos = self.advance()
            node = BinOp(pos=node.pos, op=op, left=node, right=self.factor())
        return node

    def factor(self) -> Expr:
        kind, val, pos = self.peek()
        if val == "-":
            self.advance()
            return Neg(pos=pos, arg=self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[1] == "^":
            self.advance()
            # right-associative; the exponent may carry a unary minus
            return BinOp(pos=base.pos, op="^", left=base, right=self.factor())
        return base

    def comparison(self) -> Expr:
        lhs = self.expr()
        kind, val, pos = self.peek()
        if val not in _CMP_OPS:
            raise ExprSyntaxError("expected a comparison (<, <=, >, >=) in if(...)", pos)
        self.advance()
        rhs = self.expr()
        return (val, lhs, rhs)

    def atom(self) -> Expr:
        kind, val, pos = self.advance()
        if kind == "number":
            return Num(pos=pos, value=float(val))
        if kind == "name":
            if self.peek()[1] == "(":
                return self.call(val, pos)
            if val in _FUNCTIONS or val == "if":
                raise ExprSyntaxError(f"function {val!r} needs an argument list", pos)
            if val not in self.var_index:
                raise ExprSyntaxError(f"unknown identifier {val!r}", pos)
            return Var(pos=pos, name=val, index=self.var_index[val])
        if val == "(":
            e = self.expr()
            self.expect(")")
            return e
        found = repr(val) if kind != "end" else "end of input"
        raise ExprSyntaxError(f"unexpected {found}", pos)

    def call(self, name: str, pos: int) -> Expr:
        self.expect("(")
        if name == "if":
            cmp_op, lhs, rhs = self.comparison()
            self.expect(",")
            then = self.expr()
            self.expect(",")
            orelse = self.expr()
            self.expect(")")
            return If(pos=pos, cmp=cmp_op, lhs=lhs, rhs=rhs, then=then, orelse=orelse)
        if name not in _FUNCTIONS:
            raise ExprSyntaxError(f"unknown function {name!r}", pos)
        args = [self.expr()]
        while self.peek()[1] == ",":
            self.advance()
            args.append(self.expr())
        self.expect(")")
        if len(args) != _FUNCTIONS[name]:
            raise ExprSyntaxError(
                f"{name}() takes {_FUNCTIONS[name]} argument(s), got {len(args)}", pos)
        return Call(pos=pos, fn=name, args=tuple(args))


def parse(src: str, variables: Sequence[str]) -> Expr:
    """Parse ``src`` over the declared variable list into an AST."""
    return _Parser(src, variables).parse()


# --- Printing --------------------------------------------------------------

def _prec(e: Expr) -> int:
    if isinstance(e, BinOp):
        return {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}[e.op]
    if isinstance(e, Neg):
        return 3
    return 9


def format_expr(e: Expr) -> str:
    """Render an AST back to source; parse(format_expr(e)) == e structurally."""
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Neg):
        inner = format_expr(e.arg)
        if _prec(e.arg) < 3 or isinstance(e.arg, Neg):
            inner = f"({inner})"
        return f"-{inner}"
    if isinstance(e, BinOp):
        lp, rp = _prec(e.left), _prec(e.right)
        p = _prec(e)
        left = format_expr(e.left)
        right = format_expr(e.right)
        if e.op == "^":
            # right-assoc: parenthesize any structured base, keep factor-level right
            if lp <= 4 and not isinstance(e.left, (Num, Var, Call, If)):
                left = f"({left})"
            if rp < 3:
                right = f"({right})"
        else:
            if lp < p:
                left = f"({left})"
            # left-associative operators: a + (b + c) reparses as (a + b) + c,
            # so a same-precedence right child always needs parentheses
            if rp <= p:
                right = f"({right})"
        return f"{left} {e.op} {right}"
    if isinstance(e, Call):
        return f"{e.fn}({', '.join(format_expr(a) for a in e.args)})"
    if isinstance(e, If):
        return (f"if({format_expr(e.lhs)} {e.cmp} {format_expr(e.rhs)}, "
                f"{format_expr(e.then)}, {format_expr(e.orelse)})")
    raise TypeError(f"not an expression node: {e!r}")


def variables_of(e: Expr) -> set[str]:
    """Names of all variables appearing in the expression."""
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Neg):
            stack.append(node.arg)
        elif isinstance(node, BinOp):
            stack.extend((node.left, node.right))
        elif isinstance(node, Call):
            stack.extend(node.args)
        elif isinstance(node, If):
            stack.extend((node.lhs, node.rhs, node.then, node.orelse))
    return out


def substitute(e: Expr, replacements: Mapping[str, Expr]) -> Expr:
    """Replace variables by expression trees (used to compose maps)."""
    if isinstance(e, Num):
        return e
    if isinstance(e, Var):
        return replacements.get(e.name, e)
    if isinstance(e, Neg):
        return Neg(pos=e.pos, arg=substitute(e.arg, replacements))
    if isinstance(e, BinOp):
        return BinOp(pos=e.pos, op=e.op,
                     left=substitute(e.left, replacements),
                     right=substitute(e.right, replacements))
    if isinstance(e, Call):
        return Call(pos=e.pos, fn=e.fn,
                    args=tuple(substitute(a, replacements) for a in e.args))
    if isinstance(e, If):
        return If(pos=e.pos, cmp=e.cmp,
                  lhs=substitute(e.lhs, replacements),
                  rhs=substitute(e.rhs, replacements),
                  then=substitute(e.then, replacements),
                  orelse=substitute(e.orelse, replacements))
    raise TypeError(f"not an expression node: {e!r}")


# --- Evaluation ------------------------------------------------------------

def _check_pow(base: float, exponent: float, node: BinOp) -> None:
    if float(exponent).is_integer():
        if base == 0.0 and exponent < 0:
            raise ExprEvalError("zero raised to a negative power", node)
    elif base <= 0.0:
        raise ExprEvalError(
            "a ^ b with non-integer b requires a > 0", node)


def eval_expr(e: Expr, point: Sequence[float]) -> float:
    """IEEE-double evaluation at a point (one value per declared variable)."""
    pt = [float(x) for x in point]

    def ev(node: Expr) -> float:
        if isinstance(node, Num):
            return node.value
        if isinstance(node, Var):
            if node.index >= len(pt):
                raise ExprEvalError(
                    f"point has {len(pt)} coordinates but variable "
                    f"{node.name!r} has index {node.index}", node)
            return pt[node.index]
        if isinstance(node, Neg):
            return -ev(node.arg)
        if isinstance(node, BinOp):
            a = ev(node.left)
            b = ev(node.right)
            if node.op == "+":
                return a + b
            if node.op == "-":
                return a - b
            if node.op == "*":
                return a * b
            if node.op == "/":
                if b == 0.0:
                    raise ExprEvalError("division by zero", node)
                return a / b
            _check_pow(a, b, node)
            return a ** b
        if isinstance(node, Call):
            args = [ev(a) for a in node.args]
            return _apply_scalar(node, args)
        if isinstance(node, If):
            l = ev(node.lhs)
            r = ev(node.rhs)
            return ev(node.then if _compare(node.cmp, l, r) else node.orelse)
        raise TypeError(f"not an expression node: {node!r}")

    try:
        result = ev(e)
    except OverflowError:
        raise ExprEvalError("overflow to infinity", e) from None
    if not math.isfinite(result):
        raise ExprEvalError("non-finite result", e)
    return result


def _compare(op: str, l: float, r: float) -> bool:
    if op == "<":
        return l < r
    if op == "<=":
        return l <= r
    if op == ">":
        return l > r
    return l >= r


def _apply_scalar(node: Call, args: list[float]) -> float:
    fn = node.fn
    x = args[0]
    if fn == "sqrt":
        if x < 0.0:
            raise ExprEvalError("square root of a negative number", node)
        return math.sqrt(x)
    if fn == "sin":
        return math.sin(x)
    if fn == "cos":
        return math.cos(x)
    if fn == "exp":
        return math.exp(x)
    if fn == "log":
        if x <= 0.0:
            raise ExprEvalError("log of a non-positive number", node)
        return math.log(x)
    if fn == "abs":
        return abs(x)
    if fn == "min":
        return x if x <= args[1] else args[1]
    return x if x >= args[1] else args[1]  # max


@dataclass(frozen=True)
class Dual:
    """Value plus one exact first derivative per declared variable."""

    value: float
    partials: np.ndarray
    warnings: tuple[str, ...] = ()


def eval_dual(e: Expr, point: Sequence[float], n_vars: int | None = None,
              switch_tol: float = DEFAULT_SWITCH_TOL) -> Dual:
    """Evaluate value and gradient together via dual numbers.

    The value component follows exactly the same arithmetic as
    :func:`eval_expr`, so the two never disagree.  Conditionals
    differentiate branch-wise (the taken branch); when the comparison is
    within ``switch_tol`` of switching, a warning is attached to the result
    instead of trusting the one-sided derivative silently.
    """
    pt = [float(x) for x in point]
    n = len(pt) if n_vars is None else n_vars
    warnings: list[str] = []

    def ev(node: Expr) -> tuple[float, np.ndarray]:
        if isinstance(node, Num):
            return node.value, np.zeros(n)
        if isinstance(node, Var):
            if node.index >= len(pt):
                raise ExprEvalError(
                    f"point has {len(pt)} coordinates but variable "
                    f"{node.name!r} has index {node.index}", node)
            g = np.zeros(n)
            g[node.index] = 1.0
            return pt[node.index], g
        if isinstance(node, Neg):
            v, g = ev(node.arg)
            return -v, -g
        if isinstance(node, BinOp):
            av, ag = ev(node.left)
            bv, bg = ev(node.right)
            if node.op == "+":
                return av + bv, ag + bg
            if node.op == "-":
                return av - bv, ag - bg
            if node.op == "*":
                return av * bv, av * bg + bv * ag
            if node.op == "/":
                if bv == 0.0:
                    raise ExprEvalError("division by zero", node)
                return av / bv, (ag * bv - av * bg) / (bv * bv)
            _check_pow(av, bv, node)
            v = av ** bv
            exp_const = not bg.any()
            if float(bv).is_integer() and exp_const:
                if bv == 0.0:
                    return v, np.zeros(n)
                return v, bv * av ** (bv - 1.0) * ag
            if av <= 0.0:
                raise ExprEvalError(
                    "differentiating a ^ b in the exponent requires a > 0", node)
            g = v * (bg * math.log(av) + bv * ag / av)
            return v, g
        if isinstance(node, Call):
            return _apply_dual(node, [ev(a) for a in node.args])
        if isinstance(node, If):
            lv, _ = ev(node.lhs)
            rv, _ = ev(node.rhs)
            if abs(lv - rv) <= switch_tol:
                warnings.append(
                    f"conditional at offset {node.pos} evaluated within "
                    f"{switch_tol:g} of its switching surface "
                    f"(|lhs - rhs| = {abs(lv - rv):.3g})")
            return ev(node.then if _compare(node.cmp, lv, rv) else node.orelse)
        raise TypeError(f"not an expression node: {node!r}")

    try:
        v, g = ev(e)
    except OverflowError:
        raise ExprEvalError("overflow to infinity", e) from None
    if not math.isfinite(v) or not np.all(np.isfinite(g)):
        raise ExprEvalError("non-finite result", e)
    return Dual(value=v, partials=g, warnings=tuple(warnings))


def _apply_dual(node: Call, args: list[tuple[float, np.ndarray]]):
    fn = node.fn
    x, dx = args[0]
    if fn == "sqrt":
        if x < 0.0:
            raise ExprEvalError("square root of a negative number", node)
        r = math.sqrt(x)
        if x == 0.0:
            if dx.any():
                raise ExprEvalError("derivative of sqrt at 0 is unbounded", node)
            return r, np.zeros_like(dx)
        return r, dx / (2.0 * r)
    if fn == "sin":
        return math.sin(x), math.cos(x) * dx
    if fn == "cos":
        return math.cos(x), -math.sin(x) * dx
    if fn == "exp":
        v = math.exp(x)
        return v, v * dx
    if fn == "log":
        if x <= 0.0:
            raise ExprEvalError("log of a non-positive number", node)
        return math.log(x), dx / x
    if fn == "abs":
        slope = math.copysign(1.0, x) if x != 0.0 else 0.0
        return abs(x), slope * dx
    y, dy = args[1]
    if fn == "min":
        return (x, dx) if x <= y else (y, dy)
    return (x, dx) if x >= y else (y, dy)  # max


def jacobian(exprs: Sequence[Expr], point: Sequence[float],
             switch_tol: float = DEFAULT_SWITCH_TOL) -> tuple[np.ndarray, np.ndarray, tuple[str, ...]]:
    """Values and Jacobian of a list of expressions at a point.

    Returns (values, J, warnings) where J[i, j] = d expr_i / d var_j.
    """
    pt = list(point)
    values = np.empty(len(exprs))
    J = np.empty((len(exprs), len(pt)))
    warnings: list[str] = []
    for i, e in enumerate(exprs):
        d = eval_dual(e, pt, switch_tol=switch_tol)
        values[i] = d.value
        J[i, :] = d.partials
        warnings.extend(d.warnings)
    return values, J, tuple(warnings)
