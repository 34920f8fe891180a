"""Expression trees for univariate real functions of t.

A small closed DSL used to describe test functions exactly.  An expression
is a function of the variable ``t`` that may also reference the reserved
symbol ``alpha``, which is bound at evaluation time so one expression can
serve a whole sweep of fractional orders.  The module supports parsing,
canonical printing, IEEE-double evaluation and exact symbolic d/dt.

Grammar (whitespace-insensitive)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?
    atom   := NUMBER | 't' | 'alpha' | 'pi' | 'e'
            | IDENT '(' expr ')' | '(' expr ')'
    IDENT  := sin | cos | exp | ln | sqrt | abs

``^`` is right-associative and binds tighter than unary minus: ``-t^2``
means ``-(t^2)`` and ``t^2^3`` means ``t^(2^3)``.

Canonical form: numeric literals are non-negative (a negative constant is
represented as a negation node, exactly as the parser produces it), so
``parse(to_text(e)) == e`` structurally for every tree built through this
module's constructors.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Optional, Union

from .errors import EvalDomainError, ExprSyntaxError

__all__ = [
    "Expr", "Num", "Sym", "Neg", "Add", "Sub", "Mul", "Div", "Pow", "Call",
    "T", "ALPHA", "FUNCTIONS", "EvalEnv",
    "parse", "to_text", "evaluate", "evaluate_at", "diff_classical",
    "compile_expr", "contains_t", "normalize_t_powers", "substitute_alpha",
]


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Sym:
    name: str  # "t" or "alpha"


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Sym, Neg, Add, Sub, Mul, Div, Pow, Call]

T = Sym("t")
ALPHA = Sym("alpha")

FUNCTIONS = ("sin", "cos", "exp", "ln", "sqrt", "abs")

_CONSTANTS = {"pi": math.pi, "e": math.e}


@dataclass(frozen=True)
class EvalEnv:
    """Point of evaluation: the variable t and the fractional order alpha."""

    t: float
    alpha: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.t):
            raise ValueError(f"t must be finite, got {self.t}")
        if not (0.0 < self.alpha <= 1.0):
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^()])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        tokens.append((kind, m.group(), i))
        i = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message):
        raise ExprSyntaxError(message, self.peek()[2])

    def parse(self) -> Expr:
        if self.peek()[0] == "end":
            self.fail("empty input")
        e = self.expr()
        kind, text, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected token {text!r}", off)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.advance()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            op = self.advance()[1]
            rhs = self.unary()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def unary(self) -> Expr:
        if self.peek()[:2] == ("op", "-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.advance()
            return Pow(base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, text, off = self.peek()
        if kind == "num":
            self.advance()
            return Num(float(text))
        if kind == "name":
            self.advance()
            if text == "t":
                return T
            if text == "alpha":
                return ALPHA
            if text in _CONSTANTS:
                return Num(_CONSTANTS[text])
            if self.peek()[:2] != ("op", "("):
                raise ExprSyntaxError(f"unknown identifier {text!r}", off)
            if text not in FUNCTIONS:
                raise ExprSyntaxError(f"unknown function {text!r}", off)
            self.advance()
            arg = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.advance()
            return Call(text, arg)
        if kind == "op" and text == "(":
            self.advance()
            e = self.expr()
            if self.peek()[:2] != ("op", ")"):
                self.fail("expected ')'")
            self.advance()
            return e
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected token {text!r}")


def parse(text: str) -> Expr:
    """Parse expression text into a tree.  Raises ExprSyntaxError with offset."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_PREC = {Add: 10, Sub: 10, Mul: 20, Div: 20, Neg: 30, Pow: 40}


def _prec(e: Expr) -> int:
    return _PREC.get(type(e), 50)


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _wrap(e: Expr, needs_parens: bool) -> str:
    s = to_text(e)
    return f"({s})" if needs_parens else s


def to_text(e: Expr) -> str:
    """Canonical text such that parse(to_text(e)) reproduces the tree."""
    if isinstance(e, Num):
        return _fmt_num(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        return "-" + _wrap(e.operand, _prec(e.operand) < 30)
    if isinstance(e, (Add, Sub)):
        op = "+" if isinstance(e, Add) else "-"
        return _wrap(e.left, _prec(e.left) < 10) + op + _wrap(e.right, _prec(e.right) <= 10)
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return _wrap(e.left, _prec(e.left) < 20) + op + _wrap(e.right, _prec(e.right) <= 20)
    if isinstance(e, Pow):
        return _wrap(e.base, _prec(e.base) <= 40) + "^" + _wrap(e.exponent, _prec(e.exponent) < 40)
    if isinstance(e, Call):
        return f"{e.func}({to_text(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


# ---------------------------------------------------------------------------
# evaluation

def _pow_value(base: float, ex: float) -> float:
    try:
        return math.pow(base, ex)
    except ValueError:
        raise EvalDomainError(f"{base!r} ^ {ex!r} is not a real number") from None
    except OverflowError:
        raise EvalDomainError(f"{base!r} ^ {ex!r} overflows") from None


def _call_value(func: str, x: float) -> float:
    if func == "sin":
        return math.sin(x)
    if func == "cos":
        return math.cos(x)
    if func == "exp":
        try:
            return math.exp(x)
        except OverflowError:
            raise EvalDomainError(f"exp({x!r}) overflows") from None
    if func == "ln":
        if x <= 0.0:
            raise EvalDomainError(f"ln of non-positive value {x!r}")
        return math.log(x)
    if func == "sqrt":
        if x < 0.0:
            raise EvalDomainError(f"sqrt of negative value {x!r}")
        return math.sqrt(x)
    if func == "abs":
        return abs(x)
    raise EvalDomainError(f"unknown function {func!r}")


def evaluate(e: Expr, env: EvalEnv) -> float:
    """Tree-walking reference evaluator."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Sym):
        return env.t if e.name == "t" else env.alpha
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        denom = evaluate(e.right, env)
        if denom == 0.0:
            raise EvalDomainError("division by zero")
        return evaluate(e.left, env) / denom
    if isinstance(e, Pow):
        return _pow_value(evaluate(e.base, env), evaluate(e.exponent, env))
    if isinstance(e, Call):
        return _call_value(e.func, evaluate(e.arg, env))
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_at(e: Expr, t: float, alpha: float = 1.0) -> float:
    return evaluate(e, EvalEnv(t, alpha))


# Compiled fast path.  Semantics match evaluate(): math.pow is used so a
# negative base with fractional exponent raises instead of going complex.
_EVAL_GLOBALS = {"__builtins__": {}, "math": math, "abs": abs}


def _pycode(e: Expr) -> str:
    if isinstance(e, Num):
        return repr(e.value)
    if isinstance(e, Sym):
        return e.name
    if isinstance(e, Neg):
        return f"(-{_pycode(e.operand)})"
    if isinstance(e, Add):
        return f"({_pycode(e.left)}+{_pycode(e.right)})"
    if isinstance(e, Sub):
        return f"({_pycode(e.left)}-{_pycode(e.right)})"
    if isinstance(e, Mul):
        return f"({_pycode(e.left)}*{_pycode(e.right)})"
    if isinstance(e, Div):
        return f"({_pycode(e.left)}/{_pycode(e.right)})"
    if isinstance(e, Pow):
        return f"math.pow({_pycode(e.base)},{_pycode(e.exponent)})"
    if isinstance(e, Call):
        fn = {"ln": "math.log", "abs": "abs"}.get(e.func, f"math.{e.func}")
        return f"{fn}({_pycode(e.arg)})"
    raise TypeError(f"not an expression node: {e!r}")


def compile_expr(e: Expr) -> Callable[[float, float], float]:
    """Compile a tree to a fast (t, alpha) -> float callable."""
    code = compile(_pycode(e), "<expr>", "eval")

    def fn(t: float, alpha: float = 1.0, _code=code) -> float:
        try:
            return float(eval(_code, _EVAL_GLOBALS, {"t": t, "alpha": alpha}))
        except ZeroDivisionError:
            raise EvalDomainError("division by zero") from None
        except ValueError as exc:
            raise EvalDomainError(str(exc)) from None
        except OverflowError as exc:
            raise EvalDomainError(f"overflow: {exc}") from None

    return fn


# ---------------------------------------------------------------------------
# symbolic differentiation

def contains_t(e: Expr) -> bool:
    if isinstance(e, Sym):
        return e.name == "t"
    if isinstance(e, Num):
        return False
    if isinstance(e, Neg):
        return contains_t(e.operand)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return contains_t(e.left) or contains_t(e.right)
    if isinstance(e, Pow):
        return contains_t(e.base) or contains_t(e.exponent)
    if isinstance(e, Call):
        return contains_t(e.arg)
    raise TypeError(f"not an expression node: {e!r}")


# Folding constructors.  They keep derivative trees small (0/1 identities,
# literal arithmetic, sign normalization) and only ever emit canonical form
# (non-negative Num literals).

def lit(v: float) -> Expr:
    if not math.isfinite(v):
        raise ValueError(f"non-finite literal {v!r}")
    if v < 0:
        return Neg(Num(-v))
    return Num(v)


_ZERO = Num(0.0)
_ONE = Num(1.0)


def _as_number(e: Expr) -> Optional[float]:
    """Literal value of a canonical numeric node (Num or negated Num)."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, Neg) and isinstance(e.operand, Num):
        return -e.operand.value
    return None


def _is_zero(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 0.0


def _is_one(e: Expr) -> bool:
    return isinstance(e, Num) and e.value == 1.0


def _add(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return b
    if _is_zero(b):
        return a
    va, vb = _as_number(a), _as_number(b)
    if va is not None and vb is not None:
        return lit(va + vb)
    if isinstance(b, Neg):
        return _sub(a, b.operand)
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_zero(b):
        return a
    if _is_zero(a):
        return _neg(b)
    va, vb = _as_number(a), _as_number(b)
    if va is not None and vb is not None:
        return lit(va - vb)
    if isinstance(b, Neg):
        return _add(a, b.operand)
    return Sub(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Num):
        return lit(-a.value)
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_zero(a) or _is_zero(b):
        return _ZERO
    if _is_one(a):
        return b
    if _is_one(b):
        return a
    va, vb = _as_number(a), _as_number(b)
    if va is not None and vb is not None:
        product = va * vb
        if math.isfinite(product):
            return lit(product)
    if isinstance(a, Neg) and isinstance(b, Neg):
        return _mul(a.operand, b.operand)
    if isinstance(a, Neg):
        return _neg(_mul(a.operand, b))
    if isinstance(b, Neg):
        return _neg(_mul(a, b.operand))
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_zero(a):
        return _ZERO
    if _is_one(b):
        return a
    if isinstance(a, Neg) and isinstance(b, Neg):
        return _div(a.operand, b.operand)
    if isinstance(a, Neg):
        return _neg(_div(a.operand, b))
    if isinstance(b, Neg):
        return _neg(_div(a, b.operand))
    if isinstance(a, Num) and isinstance(b, Num) and b.value != 0.0:
        q = a.value / b.value
        if math.isfinite(q):
            return lit(q)
    return Div(a, b)


def _pow(base: Expr, ex: Expr) -> Expr:
    if _is_one(ex):
        return base
    if isinstance(ex, Num) and ex.value == 0.0:
        return _ONE
    if _is_one(base):
        return _ONE
    vb, ve = _as_number(base), _as_number(ex)
    if vb is not None and ve is not None:
        try:
            v = math.pow(vb, ve)
        except (ValueError, OverflowError):
            return Pow(base, ex)
        if math.isfinite(v):
            return lit(v)
    return Pow(base, ex)


def normalize_t_powers(e: Expr) -> Expr:
    """Collect powers of t across products into a single power factor.

    t^c * g(t) * t^d becomes g(t) * t^(c+d) (t-free exponents only), and
    (t^c)^d becomes t^(c*d); both are identities on t > 0 and under the
    0^0 = 1 convention at t = 0.  Iterated conformable derivatives produce
    exactly such products, and collecting them keeps the formulas regular
    at t = 0 whenever the net exponent is non-negative.
    """
    if isinstance(e, (Num, Sym)):
        return e
    if isinstance(e, Neg):
        return _neg(normalize_t_powers(e.operand))
    if isinstance(e, Add):
        return _add(normalize_t_powers(e.left), normalize_t_powers(e.right))
    if isinstance(e, Sub):
        return _sub(normalize_t_powers(e.left), normalize_t_powers(e.right))
    if isinstance(e, Call):
        return Call(e.func, normalize_t_powers(e.arg))
    if isinstance(e, Pow):
        base = normalize_t_powers(e.base)
        exponent = normalize_t_powers(e.exponent)
        if (isinstance(base, Pow) and base.base == T
                and not contains_t(base.exponent) and not contains_t(exponent)):
            return _pow(T, _mul(base.exponent, exponent))
        return _pow(base, exponent)
    if isinstance(e, (Mul, Div)):
        numerator: list[Expr] = []
        denominator: list[Expr] = []
        negative = False
        stack: list[tuple[Expr, bool]] = [(e, False)]
        while stack:
            node, inverted = stack.pop()
            if isinstance(node, Mul):
                stack.append((node.left, inverted))
                stack.append((node.right, inverted))
            elif isinstance(node, Div):
                stack.append((node.left, inverted))
                stack.append((node.right, not inverted))
            elif isinstance(node, Neg):
                negative = not negative
                stack.append((node.operand, inverted))
            else:
                (denominator if inverted else numerator).append(
                    normalize_t_powers(node))
        t_exponent = None
        plain_num: list[Expr] = []
        plain_den: list[Expr] = []
        for factors, inverted in ((numerator, False), (denominator, True)):
            for factor in factors:
                if factor == T:
                    contrib = _ONE
                elif (isinstance(factor, Pow) and factor.base == T
                      and not contains_t(factor.exponent)):
                    contrib = factor.exponent
                else:
                    (plain_den if inverted else plain_num).append(factor)
                    continue
                if inverted:
                    contrib = _neg(contrib)
                t_exponent = contrib if t_exponent is None else _add(t_exponent, contrib)
        result = None
        for factor in plain_num:
            result = factor if result is None else _mul(result, factor)
        if t_exponent is not None:
            t_power = _pow(T, t_exponent)
            result = t_power if result is None else _mul(result, t_power)
        if result is None:
            result = _ONE
        for factor in plain_den:
            result = _div(result, factor)
        return _neg(result) if negative else result
    raise TypeError(f"not an expression node: {e!r}")


def substitute_alpha(e: Expr, a: float) -> Expr:
    """Replace the alpha symbol by a literal, folding constant subtrees.

    Folding eliminates t-independent zero coefficients together with the
    factors they multiply (a constant zero times any function is the zero
    function), which keeps specialized derivative formulas regular at t = 0
    whenever the underlying function is.
    """
    if isinstance(e, Num):
        return e
    if isinstance(e, Sym):
        return lit(a) if e.name == "alpha" else e
    if isinstance(e, Neg):
        return _neg(substitute_alpha(e.operand, a))
    if isinstance(e, Add):
        return _add(substitute_alpha(e.left, a), substitute_alpha(e.right, a))
    if isinstance(e, Sub):
        return _sub(substitute_alpha(e.left, a), substitute_alpha(e.right, a))
    if isinstance(e, Mul):
        return _mul(substitute_alpha(e.left, a), substitute_alpha(e.right, a))
    if isinstance(e, Div):
        return _div(substitute_alpha(e.left, a), substitute_alpha(e.right, a))
    if isinstance(e, Pow):
        return _pow(substitute_alpha(e.base, a), substitute_alpha(e.exponent, a))
    if isinstance(e, Call):
        return Call(e.func, substitute_alpha(e.arg, a))
    raise TypeError(f"not an expression node: {e!r}")


def diff_classical(e: Expr) -> Expr:
    """Exact symbolic d/dt.  The symbol ``alpha`` is treated as a constant.

    For ``abs`` the convention d|u|/dt = (u/|u|) u' is used, which leaves the
    derivative undefined (domain error at evaluation) where u = 0.
    """
    if isinstance(e, Num):
        return _ZERO
    if isinstance(e, Sym):
        return _ONE if e.name == "t" else _ZERO
    if isinstance(e, Neg):
        return _neg(diff_classical(e.operand))
    if isinstance(e, Add):
        return _add(diff_classical(e.left), diff_classical(e.right))
    if isinstance(e, Sub):
        return _sub(diff_classical(e.left), diff_classical(e.right))
    if isinstance(e, Mul):
        if not contains_t(e.left):
            return _mul(e.left, diff_classical(e.right))
        if not contains_t(e.right):
            return _mul(diff_classical(e.left), e.right)
        return _add(_mul(diff_classical(e.left), e.right),
                    _mul(e.left, diff_classical(e.right)))
    if isinstance(e, Div):
        if not contains_t(e.right):
            return _div(diff_classical(e.left), e.right)
        num = _sub(_mul(diff_classical(e.left), e.right),
                   _mul(e.left, diff_classical(e.right)))
        return _div(num, _pow(e.right, Num(2.0)))
    if isinstance(e, Pow):
        base, ex = e.base, e.exponent
        if not contains_t(ex):
            # d/dt b^c = c b^(c-1) b'
            return _mul(_mul(ex, _pow(base, _sub(ex, _ONE))), diff_classical(base))
        if not contains_t(base):
            # d/dt c^u = c^u ln(c) u'
            return _mul(_mul(e, Call("ln", base)), diff_classical(ex))
        return _mul(e, _add(_mul(diff_classical(ex), Call("ln", base)),
                            _div(_mul(ex, diff_classical(base)), base)))
    if isinstance(e, Call):
        u = e.arg
        du = diff_classical(u)
        if e.func == "sin":
            return _mul(Call("cos", u), du)
        if e.func == "cos":
            return _neg(_mul(Call("sin", u), du))
        if e.func == "exp":
            return _mul(e, du)
        if e.func == "ln":
            return _div(du, u)
        if e.func == "sqrt":
            return _div(du, _mul(Num(2.0), e))
        if e.func == "abs":
            return _mul(_div(u, e), du)
    raise TypeError(f"not an expression node: {e!r}")
