"""Expression grammar shared by the CLI and fixture files.

Tokens: identifiers, integer literals, the scalar symbols i and h, the
operators + - * / ^ and parentheses.  ^ binds tighter than * which binds
tighter than + and -; exponents are non-negative integer literals; / is
only division by an exact scalar constant (it exists so renderings such as
-1/2*i*h^2 read back).  Parsing evaluates directly into engine values, so
render-then-parse is the identity on canonical renderings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .phasepoly import VariableSpace
from .scalar import HBAR, HbarScalar, I
from .weyl import WeylElement, WeylSignature


class ExprSyntaxError(ValueError):
    """Syntax or binding error, with a character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    position: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(Token("int", text[start:pos], start))
            continue
        if ch.isalpha():
            start = pos
            while pos < n and text[pos].isalnum():
                pos += 1
            tokens.append(Token("ident", text[start:pos], start))
            continue
        if ch in "+-*/^()":
            tokens.append(Token(ch, ch, pos))
            pos += 1
            continue
        raise ExprSyntaxError(f"unexpected character {ch!r}", pos)
    tokens.append(Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token], bindings: dict):
        self.tokens = tokens
        self.bindings = bindings
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def expect(self, kind: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            raise ExprSyntaxError(
                f"expected {kind!r}, found {token.text or 'end of input'!r}",
                token.position,
            )
        return self.advance()

    def parse(self):
        value = self.expression()
        tail = self.peek()
        if tail.kind != "end":
            raise ExprSyntaxError(
                f"unexpected {tail.text!r}", tail.position
            )
        return value

    def expression(self):
        value = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.advance()
            rhs = self.term()
            value = value + rhs if op.kind == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek().kind in ("*", "/"):
            op = self.advance()
            rhs = self.factor()
            if op.kind == "*":
                value = value * rhs
            else:
                if not isinstance(rhs, HbarScalar) or not rhs.is_constant():
                    raise ExprSyntaxError(
                        "division is only by exact scalar constants",
                        op.position,
                    )
                value = value / rhs.as_gaussian()
        return value

    def factor(self):
        token = self.peek()
        if token.kind == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self):
        value = self.atom()
        if self.peek().kind == "^":
            self.advance()
            exponent = self.expect("int")
            value = value ** int(exponent.text)
        return value

    def atom(self):
        token = self.advance()
        if token.kind == "int":
            return HbarScalar.of(int(token.text))
        if token.kind == "ident":
            if token.text == "i":
                return I
            if token.text == "h":
                return HBAR
            try:
                return self.bindings[token.text]
            except KeyError:
                raise ExprSyntaxError(
                    f"unknown identifier {token.text!r}", token.position
                ) from None
        if token.kind == "(":
            value = self.expression()
            self.expect(")")
            return value
        raise ExprSyntaxError(
            f"unexpected {token.text or 'end of input'!r}", token.position
        )


def bindings_for_space(space: VariableSpace) -> dict:
    return {name: space.var(name) for name in space.names}


def bindings_for_signature(signature: WeylSignature) -> dict:
    names = signature.generator_names()
    return {
        name: WeylElement.generator(signature, index)
        for index, name in enumerate(names)
    }


def parse_expression(text: str, bindings: dict | None = None):
    """Parse into an HbarScalar, ClassicalPoly, or WeylElement."""
    parser = _Parser(tokenize(text), bindings or {})
    try:
        return parser.parse()
    except ExprSyntaxError:
        raise
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ExprSyntaxError(str(exc), 0) from exc


def parse_scalar(text: str) -> HbarScalar:
    value = parse_expression(text, {})
    if not isinstance(value, HbarScalar):
        raise ExprSyntaxError("expected a scalar expression", 0)
    return value
