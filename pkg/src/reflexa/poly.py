"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of nonnegative exponents, one per ring variable.  A
polynomial maps monomials to nonzero field elements.
"""

from __future__ import annotations

import re

from .fields import QQ, Field, FieldMismatch

Monomial = tuple


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def deglex_key(m: Monomial):
    return (sum(m), m)


def lex_key(m: Monomial):
    return m


ORDERS = {"grevlex": grevlex_key, "deglex": deglex_key, "lex": lex_key}


def order_key(order: str):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class PolyRing:
    """k[x_1, ..., x_n] with a fixed variable order."""

    def __init__(self, field: Field, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
                raise ValueError(f"bad variable name {n!r}")
        self.field = field
        self.names = names
        self.nvars = len(names)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self.field == other.field and self.names == other.names

    def __hash__(self):
        return hash((self.field, self.names))

    def __repr__(self):
        return f"{self.field.name}[{','.join(self.names)}]"

    def one_mono(self) -> Monomial:
        return (0,) * self.nvars

    def zero(self) -> Poly:
        return Poly(self, {})

    def one(self) -> Poly:
        return Poly(self, {self.one_mono(): self.field.one})

    def const(self, c) -> Poly:
        c = self.field(c)
        return Poly(self, {self.one_mono(): c} if c else {})

    def var(self, i: int) -> Poly:
        m = [0] * self.nvars
        m[i] = 1
        return Poly(self, {tuple(m): self.field.one})

    def monomial(self, m: Monomial, c=None) -> Poly:
        c = self.field.one if c is None else self.field(c)
        return Poly(self, {tuple(m): c} if c else {})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self)


class Poly:
    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    def _check(self, other: Poly):
        if self.ring != other.ring:
            if self.ring.field != other.ring.field:
                raise FieldMismatch(f"{self.ring.field} vs {other.ring.field}")
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def _coerce(self, other):
        if isinstance(other, Poly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, self.ring.field.zero) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        zero = self.ring.field.zero
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, zero) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> Poly:
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Poly(self.ring, {m: c * v for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> Poly:
        return Poly(self.ring, {mono_mul(m, mono): c * v for m, v in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get(self.ring.one_mono(), self.ring.field.zero)

    def sorted_terms(self, order: str = "grevlex"):
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading(self, order: str = "grevlex"):
        key = order_key(order)
        m = max(self.terms, key=key)
        return m, self.terms[m]

    def monic(self, order: str = "grevlex") -> Poly:
        _, c = self.leading(order)
        return self.scale(self.ring.field.one / c)

    def to_str(self, order: str = "grevlex") -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms(order):
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(self.ring.names, m)
                if e
            )
            neg = _is_negative(c)
            mag = -c if neg else c
            if not mono:
                body = str(mag)
            elif mag == self.ring.field.one:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Poly({self.to_str()!r})"


def _is_negative(c) -> bool:
    # prime-field residues print as their representative in [0, p)
    try:
        return c < 0
    except TypeError:
        return False


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class UnknownVariable(PolySyntaxError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise PolySyntaxError(f"unexpected character {text[start]!r}", text, start)
        start = m.start(m.lastindex)
        kind = ("num", "name", "op")[m.lastindex - 1]
        value = m.group(m.lastindex)
        if value == "**":
            value = "^"
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    # expr   := ['+'|'-'] term (('+'|'-') term)*
    # term   := factor (('*'|'/') factor)*
    # factor := atom ('^' num)?
    # atom   := num | name | '(' expr ')' | '-' factor

    def __init__(self, text: str, ring: PolyRing):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise PolySyntaxError(msg, self.text, tok[2])

    def parse(self) -> Poly:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Poly:
        sign = None
        if self.peek()[1] in ("+", "-"):
            sign = self.take()[1]
        p = self.term()
        if sign == "-":
            p = -p
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Poly:
        p = self.factor()
        while self.peek()[1] in ("*", "/"):
            op_tok = self.take()
            q = self.factor()
            if op_tok[1] == "*":
                p = p * q
            else:
                if q.degree() > 0 or q.is_zero():
                    self.fail("division only by a nonzero constant", op_tok)
                p = p.scale(self.ring.field.one / q.constant_term())
        return p

    def factor(self) -> Poly:
        p = self.atom()
        if self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "num":
                self.fail("exponent must be a nonnegative integer")
            self.take()
            p = p ** int(tok[1])
        return p

    def atom(self) -> Poly:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return self.ring.const(int(value))
        if kind == "name":
            try:
                idx = self.ring.names.index(value)
            except ValueError:
                raise UnknownVariable(f"unknown variable {value!r}", self.text, pos) from None
            return self.ring.var(idx)
        if value == "(":
            p = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return p
        if value == "-":
            return -self.factor()
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected token {value!r}", tok)


def parse_poly(text: str, ring_or_vars, field: Field = QQ) -> Poly:
    """Parse ``text`` into a polynomial.

    ``ring_or_vars`` is a :class:`PolyRing` or a sequence of variable names
    (then ``field`` is used).
    """
    ring = ring_or_vars if isinstance(ring_or_vars, PolyRing) else PolyRing(field, ring_or_vars)
    return _Parser(text, ring).parse()
