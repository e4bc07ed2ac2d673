# ==========================================
# Nonlinearity Expression Language
# ==========================================
#
# Grammar (highest precedence last):
#   expr   := term (('+' | '-') term)*
#   term   := unary (('*' | '/') unary)*
#   unary  := '-' unary | power
#   power  := atom ('^' unary)?          right-associative
#   atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'
#
# Node kinds:
#   ('num', value) ('var', name) ('neg', child)
#   ('op', symbol, left, right) ('func', name, child)

import math
from dataclasses import dataclass

from utils.errors import DomainError, ExprSyntaxError, UnboundParameter

STATE_VARS = ("xi", "eta")

CONSTANTS = {"pi": math.pi}

FUNCTIONS = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tanh": math.tanh,
    "exp": math.exp,
    "abs": abs,
    "sqrt": math.sqrt,
}

# functions that break C^2 regularity somewhere on the real line
NON_SMOOTH = frozenset({"abs", "sqrt"})

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


@dataclass(frozen=True)
class Token:
    kind: str  # 'num', 'name', 'sym', 'end'
    text: str
    offset: int


@dataclass(frozen=True)
class Expression:
    source: str
    root: tuple

    def __str__(self) -> str:
        return pretty(self)


# ---- tokenizer ----

def _byte_offset(source: str, index: int) -> int:
    return len(source[:index].encode("utf-8"))


def tokenize(source: str) -> list:
    tokens = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch in " \t\r\n":
            i += 1
            continue

        if ch.isdigit() or ch == ".":
            j = i
            while j < n and source[j].isdigit():
                j += 1
            if j < n and source[j] == ".":
                j += 1
                while j < n and source[j].isdigit():
                    j += 1
            if j < n and source[j] in "eE":
                k = j + 1
                if k < n and source[k] in "+-":
                    k += 1
                if k < n and source[k].isdigit():
                    while k < n and source[k].isdigit():
                        k += 1
                    j = k
            text = source[i:j]
            if text == ".":
                raise ExprSyntaxError("Malformed number", _byte_offset(source, i), "digit")
            tokens.append(Token("num", text, _byte_offset(source, i)))
            i = j
            continue

        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (source[j].isalnum() or source[j] == "_"):
                j += 1
            tokens.append(Token("name", source[i:j], _byte_offset(source, i)))
            i = j
            continue

        if ch in "+-*/^()":
            tokens.append(Token("sym", ch, _byte_offset(source, i)))
            i += 1
            continue

        raise ExprSyntaxError(f"Unexpected character {ch!r}", _byte_offset(source, i),
                              "number, name, operator or parenthesis")

    tokens.append(Token("end", "", _byte_offset(source, n)))
    return tokens


# ---- recursive descent parser ----

class _Parser:

    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, tok: Token, expected: str):
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ExprSyntaxError(f"Unexpected {found}, expected {expected}", tok.offset, expected)

    def parse(self) -> tuple:
        node = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            if tok.kind == "sym" and tok.text == ")":
                self.fail(tok, "operator or end of input (unbalanced ')')")
            self.fail(tok, "operator or end of input")
        return node

    def expr(self) -> tuple:
        node = self.term()
        while self.peek().kind == "sym" and self.peek().text in "+-":
            op = self.advance().text
            node = ("op", op, node, self.term())
        return node

    def term(self) -> tuple:
        node = self.unary()
        while self.peek().kind == "sym" and self.peek().text in "*/":
            op = self.advance().text
            node = ("op", op, node, self.unary())
        return node

    def unary(self) -> tuple:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "-":
            self.advance()
            return ("neg", self.unary())
        return self.power()

    def power(self) -> tuple:
        base = self.atom()
        tok = self.peek()
        if tok.kind == "sym" and tok.text == "^":
            self.advance()
            return ("op", "^", base, self.unary())
        return base

    def atom(self) -> tuple:
        tok = self.advance()
        if tok.kind == "num":
            return ("num", float(tok.text))
        if tok.kind == "name":
            nxt = self.peek()
            if nxt.kind == "sym" and nxt.text == "(":
                if tok.text not in FUNCTIONS:
                    raise ExprSyntaxError(f"Unknown function {tok.text!r}", tok.offset,
                                          "one of " + ", ".join(sorted(FUNCTIONS)))
                self.advance()
                arg = self.expr()
                self.close(nxt)
                return ("func", tok.text, arg)
            if tok.text in FUNCTIONS:
                self.fail(nxt, f"'(' after function {tok.text!r}")
            return ("var", tok.text)
        if tok.kind == "sym" and tok.text == "(":
            node = self.expr()
            self.close(tok)
            return node
        self.fail(tok, "number, name or '('")

    def close(self, opener: Token) -> None:
        tok = self.peek()
        if tok.kind == "sym" and tok.text == ")":
            self.advance()
            return
        if tok.kind == "end":
            raise ExprSyntaxError(f"Unclosed parenthesis opened at offset {opener.offset}",
                                  tok.offset, "')'")
        self.fail(tok, "')'")


def parse(source: str) -> Expression:
    """
    Parses infix source text into an Expression.
    """
    return Expression(source=source, root=_Parser(source).parse())


# ---- evaluation ----

def _pow(a: float, b: float) -> float:
    if a < 0 and not float(b).is_integer():
        raise DomainError(f"Non-integer power {b!r} of negative base {a!r}", module="expr")
    if a == 0 and b < 0:
        raise DomainError("Zero raised to a negative power", module="expr")
    try:
        return math.pow(a, b)
    except OverflowError:
        raise DomainError(f"Overflow in {a!r}^{b!r}", module="expr")


def _div(a: float, b: float) -> float:
    if b == 0.0:
        raise DomainError("Division by zero", module="expr")
    return a / b


_BINARY = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _div,
    "^": _pow,
}


def _apply(name: str, x: float) -> float:
    if name == "sqrt" and x < 0:
        raise DomainError(f"sqrt of negative value {x!r}", module="expr")
    try:
        return float(FUNCTIONS[name](x))
    except (OverflowError, ValueError) as exc:
        raise DomainError(f"{name}({x!r}): {exc}", module="expr")


def _compile(node: tuple, params: dict):
    kind = node[0]
    if kind == "num":
        value = node[1]
        return lambda xi, eta: value
    if kind == "var":
        name = node[1]
        if name == "xi":
            return lambda xi, eta: xi
        if name == "eta":
            return lambda xi, eta: eta
        if name in params:
            value = float(params[name])
            return lambda xi, eta: value
        if name in CONSTANTS:
            value = CONSTANTS[name]
            return lambda xi, eta: value
        raise UnboundParameter(f"Unbound parameter {name!r}", module="expr")
    if kind == "neg":
        child = _compile(node[1], params)
        return lambda xi, eta: -child(xi, eta)
    if kind == "op":
        fun = _BINARY[node[1]]
        left = _compile(node[2], params)
        right = _compile(node[3], params)
        return lambda xi, eta: fun(left(xi, eta), right(xi, eta))
    if kind == "func":
        name = node[1]
        child = _compile(node[2], params)
        return lambda xi, eta: _apply(name, child(xi, eta))
    raise ValueError(f"Unknown node kind {kind!r}")


def bind(e: Expression, params: dict):
    """
    Compiles an Expression with parameters bound into a callable (xi, eta) -> float.
    Results that are not finite raise DomainError.
    """
    body = _compile(e.root, params)

    def evaluate(xi: float, eta: float) -> float:
        value = body(float(xi), float(eta))
        if not math.isfinite(value):
            raise DomainError(f"Non-finite value at xi={xi!r}, eta={eta!r}", module="expr")
        return value

    return evaluate


def eval_expr(e: Expression, xi: float, eta: float, params: dict | None = None) -> float:
    """
    Evaluates an Expression in double precision.
    """
    return bind(e, params or {})(xi, eta)


# ---- introspection ----

def _walk(node: tuple):
    yield node
    kind = node[0]
    if kind == "neg":
        yield from _walk(node[1])
    elif kind == "op":
        yield from _walk(node[2])
        yield from _walk(node[3])
    elif kind == "func":
        yield from _walk(node[2])


def free_names(e: Expression) -> set:
    """
    All identifiers other than xi, eta and the builtin constants.
    """
    return {
        node[1] for node in _walk(e.root)
        if node[0] == "var" and node[1] not in STATE_VARS and node[1] not in CONSTANTS
    }


def functions_used(e: Expression) -> set:
    return {node[1] for node in _walk(e.root) if node[0] == "func"}


def depends_on(e: Expression, name: str) -> bool:
    return any(node[0] == "var" and node[1] == name for node in _walk(e.root))


# ---- pretty printing ----

def _prec(node: tuple) -> int:
    if node[0] == "op":
        return _PREC[node[1]]
    if node[0] == "neg":
        return _PREC["neg"]
    return 99


def _num_str(value: float) -> str:
    if value.is_integer() and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def _to_str(node: tuple) -> str:
    kind = node[0]
    if kind == "num":
        return _num_str(node[1])
    if kind == "var":
        return node[1]
    if kind == "func":
        return f"{node[1]}({_to_str(node[2])})"
    if kind == "neg":
        child = node[1]
        s = _to_str(child)
        if _prec(child) < _PREC["neg"]:
            s = f"({s})"
        return "-" + s
    op, left, right = node[1], node[2], node[3]
    p = _PREC[op]
    sl = _to_str(left)
    sr = _to_str(right)
    if op == "^":
        if _prec(left) <= p:
            sl = f"({sl})"
        if right[0] == "op" and _prec(right) < p:
            sr = f"({sr})"
    else:
        if _prec(left) < p:
            sl = f"({sl})"
        if _prec(right) <= p:
            sr = f"({sr})"
    return f"{sl}{op}{sr}"


def pretty(e: Expression) -> str:
    """
    Canonical text for an Expression; parse(pretty(e)).root == e.root.
    """
    return _to_str(e.root)
