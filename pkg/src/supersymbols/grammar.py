"""Shared text grammar for coefficients, symbols and Weyl elements.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := power (['*'|'/'] power)*        juxtaposition means '*'
    power  := atom ['^' int]                  int may be negative, e.g. t^-2
    atom   := integer | name | '(' expr ')'

Names resolve either to coefficient parameters (``alpha``, ``h``, ``w`` ...)
or to algebra generators supplied by the caller (``t``, ``tau``, ``x1`` ...).
Scalars and algebra elements are kept apart while parsing so that division
and negative powers are only applied to scalars or to monomial generators.
"""

import re

from .coeff import ALIASES, OMEGA, OMEGA_NAME, Coefficient, param, parameter_names


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_Ͱ-Ͽ][A-Za-z_0-9Ͱ-Ͽ]*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class Algebra:
    """Hooks for a target algebra; the default parses plain coefficients."""

    generators = ()

    def generator(self, name, power):
        raise KeyError(name)

    def from_scalar(self, c):
        return c

    def mul(self, x, y):
        return x * y


class _Parser:
    def __init__(self, text, algebra):
        self.tokens = _tokenize(text)
        self.i = 0
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[0] != "op" or tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])
        return tok

    # values are Coefficient (scalar) or algebra elements
    def _is_scalar(self, v):
        return isinstance(v, Coefficient)

    def _promote(self, v):
        return self.algebra.from_scalar(v) if self._is_scalar(v) else v

    def _add(self, x, y, sign):
        if self._is_scalar(x) and self._is_scalar(y):
            return x + y if sign > 0 else x - y
        x, y = self._promote(x), self._promote(y)
        return x + y if sign > 0 else x - y

    def _mul(self, x, y):
        if self._is_scalar(x) and self._is_scalar(y):
            return x * y
        if self._is_scalar(x):
            return x * y
        if self._is_scalar(y):
            return y * x
        return self.algebra.mul(x, y)

    def parse(self):
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                rhs = self.term()
                value = self._add(value, rhs, 1 if tok[1] == "+" else -1)
            else:
                return value

    def _starts_factor(self, tok):
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        value = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = self._mul(value, self.power())
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                divisor = self.power()
                if not self._is_scalar(divisor):
                    raise ParseError("can only divide by a scalar", tok[2])
                if divisor.is_zero():
                    raise ParseError("division by zero", tok[2])
                value = self._mul(value, divisor.inverse())
            elif self._starts_factor(tok):
                value = self._mul(value, self.power())
            else:
                return value

    def _exponent(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "(":
            self.take()
            k = self._signed_int()
            self.expect(")")
            return k
        return self._signed_int()

    def _signed_int(self):
        tok = self.take()
        sign = 1
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            tok = self.take()
        if tok[0] != "int":
            raise ParseError("expected an integer exponent", tok[2])
        return sign * tok[1]

    def power(self):
        tok = self.take()
        if tok[0] == "name" and tok[1] in self.algebra.generators:
            k = 1
            if self.peek()[0] == "op" and self.peek()[1] == "^":
                self.take()
                k = self._exponent()
            return self.algebra.generator(tok[1], k)
        value = self.atom(tok)
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            caret = self.take()
            k = self._exponent()
            if self._is_scalar(value):
                if k < 0 and value.is_zero():
                    raise ParseError("negative power of zero", caret[2])
                return value**k
            if k < 0:
                raise ParseError("negative powers only apply to scalars and monomial generators", caret[2])
            result = self.algebra.from_scalar(Coefficient(1))
            for _ in range(k):
                result = self.algebra.mul(result, value)
            return result
        return value

    def atom(self, tok):
        kind, val, pos = tok
        if kind == "int":
            return Coefficient(val)
        if kind == "name":
            if val == OMEGA_NAME:
                return OMEGA
            name = ALIASES.get(val, val)
            if name in parameter_names():
                return param(name)
            raise ParseError(f"unknown name {val!r}", pos)
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        raise ParseError(f"unexpected token {val!r}", pos)


def parse(text, algebra=None):
    return _Parser(text, algebra or Algebra()).parse()


def parse_coefficient(text):
    value = parse(text)
    if not isinstance(value, Coefficient):
        raise ParseError("expected a coefficient expression", 0)
    return value
