"""Symbolic scalar fields on R^3.

A :class:`ScalarField` is an immutable expression tree over numeric literals,
the coordinates x, y, z (aliases x1, x2, x3), the binary operators ``+ - * /``,
integer powers ``^``, unary negation, and the functions ``sqrt``, ``sin``,
``cos``, ``exp``.  Fields can be parsed from text, combined with the usual
Python operators, differentiated exactly, printed back to the same grammar,
and evaluated in 64-bit floating point.

Simplification is deliberately limited to constant folding and
neutral-element elimination (``u+0``, ``u*1``, ``u*0``); correctness is
defined by numeric evaluation, never by canonical form.  Construction shares
subtrees and derivatives are cached per node, so repeated differentiation of
derived quantities stays cheap.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ScalarField",
    "Point",
    "parse",
    "evaluate",
    "differentiate",
    "as_field",
    "sqrt",
    "sin",
    "cos",
    "exp",
    "ExpressionSyntaxError",
    "UnknownIdentifier",
    "DomainError",
]

_COORD_NAMES = ("x", "y", "z")
_COORD_INDEX = {"x": 0, "y": 1, "z": 2, "x1": 0, "x2": 1, "x3": 2}
_FUNCTION_NAMES = ("sqrt", "sin", "cos", "exp")

# printing precedence levels
_P_ADD, _P_MUL, _P_UNARY, _P_POW, _P_ATOM = 1, 2, 3, 4, 5


class ExpressionSyntaxError(ValueError):
    """Malformed expression text; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class UnknownIdentifier(ExpressionSyntaxError):
    """An identifier outside x, y, z, x1, x2, x3, sqrt, sin, cos, exp."""

    def __init__(self, name: str, offset: int) -> None:
        ExpressionSyntaxError.__init__(self, f"unknown identifier {name!r}", offset)
        self.name = name


class DomainError(ArithmeticError):
    """Evaluation left the field's domain (zero division, sqrt of a negative, overflow).

    Carries the offending ``point`` and a short description of the
    sub-expression that failed.
    """

    def __init__(self, reason: str, point: tuple[float, float, float], where: str) -> None:
        super().__init__(f"{reason} in '{where}' at point {point}")
        self.reason = reason
        self.point = point
        self.where = where


@dataclass(frozen=True)
class Point:
    """A point of R^3 with finite coordinates."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        for c in (self.x, self.y, self.z):
            try:
                ok = math.isfinite(c)
            except TypeError:
                ok = False
            if not ok:
                raise ValueError(f"point coordinates must be finite, got {c!r}")

    def as_tuple(self) -> tuple[float, float, float]:
        return (float(self.x), float(self.y), float(self.z))

    def __iter__(self):
        return iter(self.as_tuple())


def _point_tuple(p) -> tuple[float, float, float]:
    if isinstance(p, Point):
        return p.as_tuple()
    t = tuple(float(c) for c in p)
    if len(t) != 3:
        raise ValueError(f"expected 3 coordinates, got {len(t)}")
    for c in t:
        if not math.isfinite(c):
            raise ValueError(f"point coordinates must be finite, got {c!r}")
    return t


def _coord_key(var) -> int:
    if isinstance(var, int):
        if var in (0, 1, 2):
            return var
        raise ValueError(f"coordinate index out of range: {var}")
    try:
        return _COORD_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown coordinate {var!r}; expected one of x, y, z") from None


class ScalarField:
    """Base class for symbolic expression nodes.

    Instances are immutable after construction and safe to share between
    threads; evaluation and differentiation never mutate shared state beyond
    an internal derivative cache.
    """

    __slots__ = ("_derivs",)

    _children: tuple = ()
    _prec = _P_ATOM

    # -- arithmetic closure -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _add(self, other)

    def __radd__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _add(other, self)

    def __sub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _sub(self, other)

    def __rsub__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _sub(other, self)

    def __mul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _mul(self, other)

    def __rmul__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _mul(other, self)

    def __truediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _div(self, other)

    def __rtruediv__(self, other):
        other = _coerce(other)
        return NotImplemented if other is None else _div(other, self)

    def __pow__(self, n):
        if not isinstance(n, int):
            raise TypeError("exponents must be Python ints")
        return _pow(self, n)

    def __neg__(self):
        return _neg(self)

    # -- differentiation ----------------------------------------------------

    def diff(self, var) -> "ScalarField":
        """Exact symbolic partial derivative with respect to x, y or z."""
        k = _coord_key(var)
        try:
            cache = self._derivs
        except AttributeError:
            cache = {}
            object.__setattr__(self, "_derivs", cache)
        d = cache.get(k)
        if d is None:
            d = self._diff(k)
            cache[k] = d
        return d

    def _diff(self, k: int) -> "ScalarField":
        raise NotImplementedError

    # -- evaluation ---------------------------------------------------------

    def __call__(self, point) -> float:
        return self.evaluate(point)

    def evaluate(self, point) -> float:
        """Value at ``point``; raises :class:`DomainError` where undefined.

        Iterative with per-call memoisation over shared subtrees, so large
        derived expressions evaluate in time linear in distinct nodes.
        """
        pt = _point_tuple(point)
        memo: dict[int, float] = {}
        stack = [self]
        while stack:
            node = stack[-1]
            if id(node) in memo:
                stack.pop()
                continue
            missing = [c for c in node._children if id(c) not in memo]
            if missing:
                stack.extend(missing)
                continue
            kids = tuple(memo[id(c)] for c in node._children)
            value = node._eval(kids, pt)
            if not math.isfinite(value):
                raise DomainError("non-finite result", pt, node._short_text())
            memo[id(node)] = value
            stack.pop()
        return memo[id(self)]

    def _eval(self, kids: tuple, pt: tuple) -> float:
        raise NotImplementedError

    # -- printing -----------------------------------------------------------

    def to_text(self) -> str:
        """Render back to the expression grammar; parses to an equivalent field."""
        return self._render(_P_ADD)

    def _render(self, min_prec: int) -> str:
        text = self._text()
        if self._prec < min_prec:
            return f"({text})"
        return text

    def _text(self) -> str:
        raise NotImplementedError

    def _short_text(self, depth: int = 4, limit: int = 80) -> str:
        # depth-capped sketch: diagnostics only, cheap even for huge trees
        text = _sketch(self, depth)
        if len(text) > limit:
            return text[: limit - 3] + "..."
        return text

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"ScalarField({self._short_text()!r})"


class Const(ScalarField):
    __slots__ = ("value",)

    def __init__(self, value: float) -> None:
        object.__setattr__(self, "value", float(value))

    @property
    def _prec(self):  # negative literals print like a unary minus
        return _P_ATOM if self.value >= 0 else _P_UNARY

    def _diff(self, k):
        return _ZERO

    def _eval(self, kids, pt):
        return self.value

    def _text(self):
        v = self.value
        if v == int(v) and abs(v) < 1e16:
            return str(int(v))
        return repr(v)


class Var(ScalarField):
    __slots__ = ("index",)

    def __init__(self, index: int) -> None:
        object.__setattr__(self, "index", index)

    def _diff(self, k):
        return _ONE if k == self.index else _ZERO

    def _eval(self, kids, pt):
        return pt[self.index]

    def _text(self):
        return _COORD_NAMES[self.index]


class _Binary(ScalarField):
    __slots__ = ("_children",)

    def __init__(self, a: ScalarField, b: ScalarField) -> None:
        object.__setattr__(self, "_children", (a, b))

    @property
    def a(self):
        return self._children[0]

    @property
    def b(self):
        return self._children[1]


class Add(_Binary):
    __slots__ = ()
    _prec = _P_ADD

    def _diff(self, k):
        return _add(self.a.diff(k), self.b.diff(k))

    def _eval(self, kids, pt):
        return kids[0] + kids[1]

    def _text(self):
        return f"{self.a._render(_P_ADD)} + {self.b._render(_P_MUL)}"


class Sub(_Binary):
    __slots__ = ()
    _prec = _P_ADD

    def _diff(self, k):
        return _sub(self.a.diff(k), self.b.diff(k))

    def _eval(self, kids, pt):
        return kids[0] - kids[1]

    def _text(self):
        return f"{self.a._render(_P_ADD)} - {self.b._render(_P_MUL)}"


class Mul(_Binary):
    __slots__ = ()
    _prec = _P_MUL

    def _diff(self, k):
        return _add(_mul(self.a.diff(k), self.b), _mul(self.a, self.b.diff(k)))

    def _eval(self, kids, pt):
        return kids[0] * kids[1]

    def _text(self):
        return f"{self.a._render(_P_MUL)}*{self.b._render(_P_POW)}"


class Div(_Binary):
    __slots__ = ()
    _prec = _P_MUL

    def _diff(self, k):
        da, db = self.a.diff(k), self.b.diff(k)
        return _sub(_div(da, self.b), _div(_mul(self.a, db), _mul(self.b, self.b)))

    def _eval(self, kids, pt):
        if kids[1] == 0.0:
            raise DomainError("division by zero", pt, self._short_text())
        return kids[0] / kids[1]

    def _text(self):
        return f"{self.a._render(_P_MUL)}/{self.b._render(_P_POW)}"


class Neg(ScalarField):
    __slots__ = ("_children",)
    _prec = _P_UNARY

    def __init__(self, a: ScalarField) -> None:
        object.__setattr__(self, "_children", (a,))

    @property
    def a(self):
        return self._children[0]

    def _diff(self, k):
        return _neg(self.a.diff(k))

    def _eval(self, kids, pt):
        return -kids[0]

    def _text(self):
        return f"-{self.a._render(_P_UNARY)}"


class Pow(ScalarField):
    """Integer power of a field; the only power form the grammar admits."""

    __slots__ = ("_children", "exponent")
    _prec = _P_POW

    def __init__(self, base: ScalarField, exponent: int) -> None:
        object.__setattr__(self, "_children", (base,))
        object.__setattr__(self, "exponent", exponent)

    @property
    def base(self):
        return self._children[0]

    def _diff(self, k):
        n = self.exponent
        return _mul(_mul(Const(n), _pow(self.base, n - 1)), self.base.diff(k))

    def _eval(self, kids, pt):
        try:
            return kids[0] ** self.exponent
        except ZeroDivisionError:
            raise DomainError("zero raised to a negative power", pt, self._short_text()) from None
        except OverflowError:
            raise DomainError("overflow", pt, self._short_text()) from None

    def _text(self):
        return f"{self.base._render(_P_ATOM)}^{self.exponent}"


class Call(ScalarField):
    __slots__ = ("_children", "fn")
    _prec = _P_ATOM

    def __init__(self, fn: str, arg: ScalarField) -> None:
        object.__setattr__(self, "_children", (arg,))
        object.__setattr__(self, "fn", fn)

    @property
    def arg(self):
        return self._children[0]

    def _diff(self, k):
        u = self.arg
        du = u.diff(k)
        if self.fn == "sqrt":
            return _div(du, _mul(_TWO, self))
        if self.fn == "sin":
            return _mul(_call("cos", u), du)
        if self.fn == "cos":
            return _neg(_mul(_call("sin", u), du))
        return _mul(self, du)  # exp

    def _eval(self, kids, pt):
        v = kids[0]
        if self.fn == "sqrt":
            if v < 0.0:
                raise DomainError("square root of a negative number", pt, self._short_text())
            return math.sqrt(v)
        if self.fn == "sin":
            return math.sin(v)
        if self.fn == "cos":
            return math.cos(v)
        try:
            return math.exp(v)
        except OverflowError:
            raise DomainError("overflow", pt, self._short_text()) from None

    def _text(self):
        return f"{self.fn}({self.arg.to_text()})"


_ZERO = Const(0.0)
_ONE = Const(1.0)
_TWO = Const(2.0)


def _sketch(node: ScalarField, depth: int) -> str:
    if depth <= 0:
        return "..."
    if isinstance(node, (Const, Var)):
        return node._text()
    if isinstance(node, Add):
        return f"({_sketch(node.a, depth - 1)} + {_sketch(node.b, depth - 1)})"
    if isinstance(node, Sub):
        return f"({_sketch(node.a, depth - 1)} - {_sketch(node.b, depth - 1)})"
    if isinstance(node, Mul):
        return f"({_sketch(node.a, depth - 1)}*{_sketch(node.b, depth - 1)})"
    if isinstance(node, Div):
        return f"({_sketch(node.a, depth - 1)}/{_sketch(node.b, depth - 1)})"
    if isinstance(node, Neg):
        return f"(-{_sketch(node.a, depth - 1)})"
    if isinstance(node, Pow):
        return f"{_sketch(node.base, depth - 1)}^{node.exponent}"
    return f"{node.fn}({_sketch(node.arg, depth - 1)})"


# -- smart constructors: constant folding and neutral elements only ----------

def _is_const(f, v=None):
    return isinstance(f, Const) and (v is None or f.value == v)


def _add(a, b):
    # neutral elements first: keeps fixed-point transformations identity-stable
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return b
    if _is_const(a) and _is_const(b):
        return Const(a.value + b.value)
    return Add(a, b)


def _sub(a, b):
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    if _is_const(a) and _is_const(b):
        return Const(a.value - b.value)
    return Sub(a, b)


def _mul(a, b):
    if _is_const(b, 1.0):
        return a
    if _is_const(a, 1.0):
        return b
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return _ZERO
    if _is_const(a) and _is_const(b):
        return Const(a.value * b.value)
    return Mul(a, b)


def _div(a, b):
    if _is_const(b, 1.0):
        return a
    if _is_const(a, 0.0):
        return _ZERO
    if _is_const(a) and _is_const(b) and b.value != 0.0:
        return Const(a.value / b.value)
    return Div(a, b)


def _neg(a):
    if _is_const(a):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def _pow(base, n: int):
    if n == 0:
        return _ONE
    if n == 1:
        return base
    if _is_const(base) and not (base.value == 0.0 and n < 0):
        try:
            return Const(base.value ** n)
        except OverflowError:
            pass  # keep the node; evaluation reports the domain error
    return Pow(base, n)


def _call(fn, arg):
    if _is_const(arg):
        v = arg.value
        try:
            if fn == "sqrt":
                folded = math.sqrt(v)
            elif fn == "sin":
                folded = math.sin(v)
            elif fn == "cos":
                folded = math.cos(v)
            else:
                folded = math.exp(v)
            return Const(folded)
        except (ValueError, OverflowError):
            pass  # keep the node; evaluation reports the domain error
    return Call(fn, arg)


def _coerce(v) -> "ScalarField | None":
    if isinstance(v, ScalarField):
        return v
    if isinstance(v, (int, float)):
        return Const(v)
    return None


def as_field(v) -> ScalarField:
    """Coerce a number, expression string or field into a ScalarField."""
    if isinstance(v, str):
        return parse(v)
    f = _coerce(v)
    if f is None:
        raise TypeError(f"cannot convert {type(v).__name__} to ScalarField")
    return f


def sqrt(f) -> ScalarField:
    return _call("sqrt", as_field(f))


def sin(f) -> ScalarField:
    return _call("sin", as_field(f))


def cos(f) -> ScalarField:
    return _call("cos", as_field(f))


def exp(f) -> ScalarField:
    return _call("exp", as_field(f))


# -- parsing ------------------------------------------------------------------


class _Token:
    __slots__ = ("kind", "value", "pos")

    def __init__(self, kind, value, pos):
        self.kind = kind      # "num" | "ident" | "op" | "end"
        self.value = value
        self.pos = pos        # character position in the source


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or (c == "." and i + 1 < n and text[i + 1].isdigit()):
            start = i
            while i < n and text[i].isdigit():
                i += 1
            if i < n and text[i] == ".":
                i += 1
                while i < n and text[i].isdigit():
                    i += 1
            if i < n and text[i] in "eE":
                j = i + 1
                if j < n and text[j] in "+-":
                    j += 1
                if j < n and text[j].isdigit():
                    i = j
                    while i < n and text[i].isdigit():
                        i += 1
            try:
                value = float(text[start:i])
            except ValueError:
                value = math.inf
            if not math.isfinite(value):
                raise ExpressionSyntaxError(
                    f"bad numeric literal {text[start:i]!r}", _byte_offset(text, start)
                )
            tokens.append(_Token("num", value, start))
            continue
        if c.isalpha() or c == "_":
            start = i
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(_Token("ident", text[start:i], start))
            continue
        if c in "+-*/^()":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        raise ExpressionSyntaxError(f"unexpected character {c!r}", _byte_offset(text, i))
    tokens.append(_Token("end", None, n))
    return tokens


class _Parser:
    """Recursive descent with precedence ^ > unary minus > * / > + -."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message: str, tok: _Token):
        raise ExpressionSyntaxError(message, _byte_offset(self.text, tok.pos))

    def parse(self) -> ScalarField:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"unexpected trailing input {tok.value!r}", tok)
        return node

    def expr(self) -> ScalarField:
        node = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.advance().value
            rhs = self.term()
            node = _add(node, rhs) if op == "+" else _sub(node, rhs)
        return node

    def term(self) -> ScalarField:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().value in "*/":
            op = self.advance().value
            rhs = self.unary()
            node = _mul(node, rhs) if op == "*" else _div(node, rhs)
        return node

    def unary(self) -> ScalarField:
        tok = self.peek()
        if tok.kind == "op" and tok.value == "-":
            self.advance()
            return _neg(self.unary())
        return self.power()

    def power(self) -> ScalarField:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "op" and tok.value == "^":
            self.advance()
            # the exponent re-enters at unary level, so -2 and chained
            # right-associative powers of literals are accepted; anything
            # that does not fold to an integer constant is rejected
            exp_tok = self.peek()
            rhs = self.unary()
            if not isinstance(rhs, Const) or rhs.value != int(rhs.value):
                self.fail("exponent must be an integer literal", exp_tok)
            return _pow(base, int(rhs.value))
        return base

    def atom(self) -> ScalarField:
        tok = self.advance()
        if tok.kind == "num":
            return Const(tok.value)
        if tok.kind == "op" and tok.value == "(":
            node = self.expr()
            closing = self.advance()
            if closing.kind != "op" or closing.value != ")":
                self.fail("expected ')'", closing)
            return node
        if tok.kind == "ident":
            name = tok.value
            if name in _COORD_INDEX:
                return Var(_COORD_INDEX[name])
            if name in _FUNCTION_NAMES:
                opening = self.advance()
                if opening.kind != "op" or opening.value != "(":
                    self.fail(f"expected '(' after {name!r}", opening)
                arg = self.expr()
                closing = self.advance()
                if closing.kind != "op" or closing.value != ")":
                    self.fail("expected ')'", closing)
                return _call(name, arg)
            raise UnknownIdentifier(name, _byte_offset(self.text, tok.pos))
        if tok.kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {tok.value!r}", tok)


def parse(text: str) -> ScalarField:
    """Parse expression text into a :class:`ScalarField`.

    Raises :class:`ExpressionSyntaxError` (with a byte offset) on malformed
    input and :class:`UnknownIdentifier` for names outside the grammar.
    """
    if not isinstance(text, str):
        raise TypeError("expression text must be a str")
    if text.strip() == "":
        raise ExpressionSyntaxError("empty expression", 0)
    return _Parser(text).parse()


def evaluate(f: ScalarField, point) -> float:
    """Value of ``f`` at ``point``; see :meth:`ScalarField.evaluate`."""
    return f.evaluate(point)


def differentiate(f: ScalarField, var) -> ScalarField:
    """Exact partial derivative of ``f`` with respect to ``var`` (x, y or z)."""
    return f.diff(var)
