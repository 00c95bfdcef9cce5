"""Parser, printer and evaluator for jump-function expressions.

Grammar (whitespace-insensitive, decimal numbers with optional exponent):

    expr    := term (("+"|"-") term)*
    term    := factor (("*"|"/") factor)*
    factor  := "-" factor | primary ("^" factor)?
    primary := NUMBER | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")"

Identifiers are ``v``, the transverse coordinates ``z2 .. zN`` (N is the
hypersurface dimension), the transverse radius ``r`` which expands to
sqrt(z2^2 + ... + zN^2), the constant ``pi``, and the unary functions
exp, log, cosh, sinh, tanh, erf, sqrt.

Exponents must fold to a constant; ``^`` binds tighter than unary minus, so
``-v^2`` reads as ``-(v^2)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from . import jets
from .errors import ArityError, DomainError, ParseError, UnknownIdentifier

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),]))"
)

FUNCTION_NAMES = ("exp", "log", "cosh", "sinh", "tanh", "erf", "sqrt")


# -- AST nodes ----------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


@dataclass(frozen=True)
class Bin:
    op: str          # one of + - * /
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: float  # folded to a constant at parse time


@dataclass(frozen=True)
class Neg:
    arg: "Node"


Node = Num | Var | Call | Bin | Pow | Neg


def variable_names(dim_n: int) -> tuple[str, ...]:
    """Coordinate variables of an n-dimensional matching hypersurface: v, z2..zn."""
    if dim_n < 2:
        raise ValueError("hypersurface dimension must be at least 2")
    return ("v",) + tuple(f"z{k}" for k in range(2, dim_n + 1))


# -- tokenizer / parser --------------------------------------------------------

def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {stripped[0]!r}", at,
                             expected={"number", "identifier", "operator"})
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, dim_n: int):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = set(variable_names(dim_n)) | {"r"}

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, text, offset = self.peek()
        if kind != "op" or text != op:
            raise ParseError(f"expected {op!r}", offset, expected={op})
        return self.advance()

    def parse(self) -> Node:
        node = self.expr()
        kind, text, offset = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {text!r}", offset,
                             expected={"end of input"})
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                node = Bin(text, node, self.term())
            else:
                return node

    def term(self) -> Node:
        node = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "*/":
                self.advance()
                node = Bin(text, node, self.factor())
            else:
                return node

    def factor(self) -> Node:
        kind, text, _ = self.peek()
        if kind == "op" and text == "-":
            self.advance()
            return Neg(self.factor())
        node = self.primary()
        kind, text, offset = self.peek()
        if kind == "op" and text == "^":
            self.advance()
            exponent = self.factor()
            folded = fold_constant(exponent)
            if folded is None:
                raise ParseError("exponent must fold to a constant", offset,
                                 expected={"constant exponent"})
            return Pow(node, folded)
        return node

    def primary(self) -> Node:
        kind, text, offset = self.advance()
        if kind == "num":
            return Num(float(text))
        if kind == "ident":
            nk, nt, _ = self.peek()
            if nk == "op" and nt == "(":
                if text not in FUNCTION_NAMES:
                    raise UnknownIdentifier(f"unknown function {text!r} at offset {offset}")
                self.advance()
                args = [self.expr()]
                while True:
                    k2, t2, o2 = self.peek()
                    if k2 == "op" and t2 == ",":
                        self.advance()
                        args.append(self.expr())
                    else:
                        break
                self.expect_op(")")
                if len(args) != 1:
                    raise ArityError(f"{text} takes exactly 1 argument, got {len(args)}")
                return Call(text, args[0])
            if text == "pi":
                return Num(math.pi)
            if text in self.variables:
                return Var(text)
            raise UnknownIdentifier(f"unknown identifier {text!r} at offset {offset}")
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError(f"expected a value, got {text!r}" if text else "unexpected end of input",
                         offset, expected={"number", "identifier", "("})


def parse_expression(text: str, dim_n: int) -> Node:
    if not text or not text.strip():
        raise ParseError("empty expression", 0, expected={"expression"})
    return _Parser(text, dim_n).parse()


def fold_constant(node: Node):
    """Value of a constant subtree, or None if it mentions a variable."""
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Neg):
        v = fold_constant(node.arg)
        return None if v is None else -v
    if isinstance(node, Bin):
        lv, rv = fold_constant(node.left), fold_constant(node.right)
        if lv is None or rv is None:
            return None
        if node.op == "+":
            return lv + rv
        if node.op == "-":
            return lv - rv
        if node.op == "*":
            return lv * rv
        return lv / rv
    if isinstance(node, Pow):
        bv = fold_constant(node.base)
        return None if bv is None else bv ** node.exponent
    return None


# -- printing -------------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4, "atom": 5}


def _fmt_number(x: float) -> str:
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    return repr(x)


def to_string(node: Node) -> str:
    """Canonical text form; reparses to an equal AST."""
    text, _ = _render(node)
    return text


def _render(node: Node):
    if isinstance(node, Num):
        if node.value < 0:
            return f"-{_fmt_number(-node.value)}", _PREC["neg"]
        return _fmt_number(node.value), _PREC["atom"]
    if isinstance(node, Var):
        return node.name, _PREC["atom"]
    if isinstance(node, Call):
        inner, _ = _render(node.arg)
        return f"{node.fn}({inner})", _PREC["atom"]
    if isinstance(node, Neg):
        inner, prec = _render(node.arg)
        if prec < _PREC["neg"]:
            inner = f"({inner})"
        return f"-{inner}", _PREC["neg"]
    if isinstance(node, Pow):
        base, bprec = _render(node.base)
        if bprec < _PREC["atom"]:
            base = f"({base})"
        return f"{base}^{_fmt_number(node.exponent)}", _PREC["^"]
    if isinstance(node, Bin):
        left, lp = _render(node.left)
        right, rp = _render(node.right)
        prec = _PREC[node.op]
        if lp < prec:
            left = f"({left})"
        # - and / are left-associative: parenthesise an equal-precedence right child
        if rp < prec or (rp == prec and node.op in "-/"):
            right = f"({right})"
        return f"{left} {node.op} {right}", prec
    raise TypeError(f"not an AST node: {node!r}")


# -- evaluation -------------------------------------------------------------------

def evaluate(node: Node, env: dict):
    """Evaluate on numbers or jets; env maps variable names to values.

    ``r`` is synthesised from the z-variables on first use.
    """
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        if node.name == "r" and "r" not in env:
            znames = sorted((n for n in env if re.fullmatch(r"z\d+", n)),
                            key=lambda n: int(n[1:]))
            zs = [env[name] for name in znames]
            if not zs:
                raise DomainError("r is undefined without transverse coordinates")
            acc = zs[0] * zs[0]
            for z in zs[1:]:
                acc = acc + z * z
            env["r"] = jets.sqrt(acc)
        return env[node.name]
    if isinstance(node, Neg):
        return -evaluate(node.arg, env)
    if isinstance(node, Call):
        return jets.FUNCTIONS[node.fn](evaluate(node.arg, env))
    if isinstance(node, Pow):
        base = evaluate(node.base, env)
        if not isinstance(base, jets.JetScalar):
            if node.exponent != int(node.exponent):
                if base < 0.0:
                    raise DomainError("non-integer power of a negative base")
                if base == 0.0 and node.exponent < 0.0:
                    raise DomainError("zero raised to a negative power")
            elif base == 0.0 and node.exponent < 0:
                raise DomainError("zero raised to a negative power")
        return base ** node.exponent
    if isinstance(node, Bin):
        left = evaluate(node.left, env)
        right = evaluate(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        if isinstance(right, (int, float)) and right == 0.0:
            raise DomainError("division by zero")
        return left / right
    raise TypeError(f"not an AST node: {node!r}")


def ast_to_dict(node: Node) -> dict:
    """JSON-friendly tree dump (used by the CLI parse command)."""
    if isinstance(node, Num):
        return {"kind": "number", "value": node.value}
    if isinstance(node, Var):
        return {"kind": "variable", "name": node.name}
    if isinstance(node, Call):
        return {"kind": "call", "fn": node.fn, "arg": ast_to_dict(node.arg)}
    if isinstance(node, Neg):
        return {"kind": "neg", "arg": ast_to_dict(node.arg)}
    if isinstance(node, Pow):
        return {"kind": "pow", "base": ast_to_dict(node.base), "exponent": node.exponent}
    if isinstance(node, Bin):
        return {"kind": "binary", "op": node.op,
                "left": ast_to_dict(node.left), "right": ast_to_dict(node.right)}
    raise TypeError(f"not an AST node: {node!r}")
