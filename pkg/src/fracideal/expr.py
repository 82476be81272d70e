"""Ideal expressions over a fixed domain.

Grammar, loosest binding first::

    expr    := inter (':' inter)*
    inter   := prod (('∩' | '^') prod)*
    prod    := post ('*' post)*
    post    := primary ('^-1' | '^v' | '^t' | '⁻¹' | 'ᵛ' | 'ᵗ')*
    primary := IDENT | '(' elem (',' elem)* ')' | '(' expr ')'
    elem    := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := INT ['/' INT] | 'w'

``^`` directly followed by ``-1``, ``v`` or ``t`` is a postfix operator and
an intersection otherwise.  Identifiers: ``D`` (or ``S``) for the domain,
``O`` and ``C`` for the maximal order and the conductor of a quadratic order,
``M`` for the maximal ideal of a numerical semigroup.  Semigroup elements are
plain integers.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FracIdealError
from .lattice import Rat
from .quadratic import QuadOrder

POSTFIX = {"^-1": "inverse", "⁻¹": "inverse", "^v": "v", "ᵛ": "v", "^t": "t", "ᵗ": "t"}

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<post>\^\s*-\s*1|\^\s*[vt](?![\w])|⁻¹|ᵛ|ᵗ)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z_]\w*)
  | (?P<op>[()+\-*/,:^∩])
    """,
    re.VERBOSE,
)


class ExprParseError(FracIdealError, ValueError):
    """Syntax or evaluation error at a character offset of ``text``."""

    def __init__(self, message: str, text: str, pos: int):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.text}\n{' ' * self.pos}^"

    def __str__(self) -> str:
        return f"{self.message} (column {self.pos + 1})\n{self.caret()}"


@dataclass(frozen=True)
class Token:
    kind: str  # num, ident, op, post, end
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    text = text.replace("−", "-")
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind == "post":
            out.append(Token("post", re.sub(r"\s", "", m.group()), pos))
        elif kind != "ws":
            out.append(Token(kind, m.group(), pos))
        pos = m.end()
    out.append(Token("end", "", len(text)))
    return out


class _Backtrack(Exception):
    pass


class Evaluator:
    """Recursive-descent parser that evaluates as it goes."""

    def __init__(self, domain, text: str):
        self.domain = domain
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0
        self.quadratic = isinstance(domain, QuadOrder)

    # -- token helpers -------------------------------------------------------
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: Token | None = None) -> ExprParseError:
        tok = tok or self.tok
        return ExprParseError(message, self.text, tok.pos)

    def accept(self, *texts: str) -> Token | None:
        if self.tok.kind in ("op", "post") and self.tok.text in texts:
            t = self.tok
            self.i += 1
            return t
        return None

    def expect(self, text: str) -> Token:
        t = self.accept(text)
        if t is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return t

    def wrap(self, tok: Token, fn, *args):
        # surface backend errors at the operator that triggered them
        try:
            return fn(*args)
        except FracIdealError as exc:
            raise self.error(str(exc), tok) from None
        except ValueError as exc:
            raise self.error(str(exc), tok) from None

    # -- grammar -------------------------------------------------------------
    def parse(self):
        result = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")
        return result

    def expr(self):
        left = self.inter()
        while (op := self.accept(":")) is not None:
            right = self.inter()
            left = self.wrap(op, left.colon, right)
        return left

    def inter(self):
        left = self.prod()
        while (op := self.accept("∩", "^")) is not None:
            right = self.prod()
            left = self.wrap(op, lambda a, b: a & b, left, right)
        return left

    def prod(self):
        left = self.post()
        while (op := self.accept("*")) is not None:
            right = self.post()
            left = self.wrap(op, lambda a, b: a * b, left, right)
        return left

    def post(self):
        value = self.primary()
        while self.tok.kind == "post":
            op = self.tok
            self.i += 1
            value = self.wrap(op, getattr(value, POSTFIX[op.text]))
        return value

    def primary(self):
        tok = self.tok
        if tok.kind == "ident":
            self.i += 1
            return self.identifier(tok)
        if self.accept("(") is None:
            found = tok.text or "end of input"
            raise self.error(f"expected an ideal, found {found!r}")
        start = self.i
        try:
            gens = self.generator_list()
        except _Backtrack as bt:
            reached = bt.args[0] if bt.args else None
            self.i = start
        else:
            return self.wrap(tok, self.domain.ideal, gens)
        try:
            inner = self.expr()
            self.expect(")")
        except ExprParseError as exc:
            # report whichever reading got further into the input
            if reached is not None and reached.pos > exc.pos:
                found = reached.text or "end of input"
                raise self.error(f"expected ',' or ')', found {found!r}", reached) from None
            raise
        return inner

    def identifier(self, tok: Token):
        name = tok.text
        d = self.domain
        if name in ("D", "S"):
            return d.one()
        if self.quadratic and name == "O":
            return d.maximal
        if self.quadratic and name == "C":
            return d.conductor
        if not self.quadratic and name == "M":
            return d.maximal_ideal
        raise self.error(f"unknown identifier {name!r}", tok)

    def generator_list(self) -> list:
        gens = [self.element()]
        while self.accept(","):
            gens.append(self.element())
        if self.tok.kind != "op" or self.tok.text != ")":
            raise _Backtrack(self.tok)
        self.i += 1
        return gens

    # -- elements --------------------------------------------------------------
    def element(self):
        negate = self.accept("-") is not None
        if not negate:
            self.accept("+")
        total = self.term()
        if negate:
            total = self.negate(total)
        while (op := self.accept("+", "-")) is not None:
            nxt = self.term()
            total = self.add(total, self.negate(nxt) if op.text == "-" else nxt)
        return total

    def term(self):
        value = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*" and self._factor_follows():
            op = self.tok
            self.i += 1
            if not self.quadratic:
                raise self.error("semigroup elements are plain integers", op)
            value = self.domain.mul(value, self.factor())
        return value

    def _factor_follows(self) -> bool:
        nxt = self.tokens[self.i + 1]
        return nxt.kind == "num" or (nxt.kind == "ident" and nxt.text == "w")

    def factor(self):
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            q = Rat(int(tok.text))
            if self.accept("/"):
                den = self.tok
                if den.kind != "num":
                    raise self.error("expected a denominator")
                self.i += 1
                if int(den.text) == 0:
                    raise self.error("division by zero", den)
                if not self.quadratic:
                    raise self.error("semigroup elements are plain integers", den)
                q /= int(den.text)
            return self.domain.element(q) if self.quadratic else int(q)
        if tok.kind == "ident" and tok.text == "w":
            if not self.quadratic:
                raise self.error("w is only defined for quadratic orders", tok)
            self.i += 1
            return self.domain.element(0, 1)
        raise _Backtrack()

    def add(self, x, y):
        if self.quadratic:
            return (x[0] + y[0], x[1] + y[1])
        return x + y

    def negate(self, x):
        if self.quadratic:
            return (-x[0], -x[1])
        return -x


def evaluate(domain, text: str):
    """Evaluate ``text`` to an ideal of ``domain``; raises ExprParseError."""
    return Evaluator(domain, text).parse()


def generator_expr(domain, ideal) -> str:
    """A generator list for ``ideal`` that :func:`evaluate` reads back."""
    return "(" + ", ".join(domain.format_element(g) for g in ideal.generators()) + ")"
