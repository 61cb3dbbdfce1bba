"""Text <-> polynomial conversion.

Grammar (whitespace-insensitive):

    poly     :=  ['+'|'-'] term (('+'|'-') term)*
    term     :=  rational ['*'] factor ('*' factor)*
              |  rational
              |  factor ('*' factor)*
    factor   :=  var adjoint? ('^' posint)?
              |  '(' poly ')' adjoint?
    adjoint  :=  "'"
    rational :=  integer | integer '/' posint | decimal

The adjoint marker is a postfix apostrophe and multiplication is always
an explicit '*' (a rational directly followed by a factor is also
accepted, per the optional '*' after the coefficient).  Powers expand
eagerly to repeated letters.  Variables must be declared in the context;
an apostrophe on a self-adjoint variable is an error.

The same grammar doubles as the wire format: every CLI flag and JSON
field carrying a polynomial uses it.  A variable context is declared
separately as a comma list of names, with a trailing apostrophe marking
a non-self-adjoint declaration (e.g. "X1,X2" or "X'").
"""

from __future__ import annotations

import re
from fractions import Fraction

from .freealg import EMPTY_WORD, NcPoly, VarContext, Word, word_key

_TOKEN_RE = re.compile(
    r"(?P<number>\d+\.\d+|\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^()'])"
)
_WS_RE = re.compile(r"\s*")


class PolyParseError(ValueError):
    """Syntax or context error, with the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind: str, text: str, pos: int):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        i = _WS_RE.match(text, i).end()
        if i >= n:
            break
        m = _TOKEN_RE.match(text, i)
        if not m:
            raise PolyParseError(f"unexpected character {text[i]!r}", i)
        kind = m.lastgroup
        tok_text = m.group()
        tokens.append(_Token("op" if kind == "op" else kind, tok_text, i))
        i = m.end()
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ctx: VarContext):
        self.ctx = ctx
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str) -> _Token:
        tok = self.next()
        if tok.kind != "op" or tok.text != op:
            raise PolyParseError(f"expected {op!r}", tok.pos)
        return tok

    # poly := ['+'|'-'] term (('+'|'-') term)*
    def parse_poly(self) -> NcPoly:
        total = NcPoly.zero(self.ctx)
        sign = 1
        tok = self.peek()
        if tok.kind == "op" and tok.text in "+-":
            self.next()
            sign = -1 if tok.text == "-" else 1
        total = total + self.parse_term().scale(sign)
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                self.next()
                sign = -1 if tok.text == "-" else 1
                total = total + self.parse_term().scale(sign)
            else:
                return total

    def parse_term(self) -> NcPoly:
        tok = self.peek()
        coeff = Fraction(1)
        have_coeff = False
        if tok.kind == "number":
            coeff = self.parse_rational()
            have_coeff = True
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text == "*":
                self.next()
                poly = self.parse_factors()
                return poly.scale(coeff)
        poly = NcPoly.constant(self.ctx, coeff)
        tok = self.peek()
        if tok.kind == "name" or (tok.kind == "op" and tok.text == "("):
            poly = poly * self.parse_factors()
        elif not have_coeff:
            raise PolyParseError("expected a term", tok.pos)
        return poly

    def parse_factors(self) -> NcPoly:
        poly = self.parse_factor()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text == "*":
                self.next()
                poly = poly * self.parse_factor()
            else:
                return poly

    def parse_factor(self) -> NcPoly:
        tok = self.next()
        if tok.kind == "name":
            try:
                var_index = self.ctx.names.index(tok.text)
            except ValueError:
                raise PolyParseError(f"unknown variable {tok.text!r}", tok.pos) from None
            starred = self.maybe_adjoint(tok)
            letter = self.ctx.letter(var_index, starred)
            power = self.maybe_power()
            return NcPoly.monomial(self.ctx, Word((letter,) * power))
        if tok.kind == "op" and tok.text == "(":
            inner = self.parse_poly()
            self.expect_op(")")
            if self.maybe_adjoint(tok):
                inner = inner.star()
            return inner
        raise PolyParseError("expected a variable or '('", tok.pos)

    def maybe_adjoint(self, at: _Token) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "'":
            self.next()
            name = at.text if at.kind == "name" else None
            if name is not None and self.ctx.selfadjoint[self.ctx.names.index(name)]:
                raise PolyParseError(
                    f"variable {name!r} is self-adjoint; adjoint marker not allowed", tok.pos
                )
            return True
        return False

    def maybe_power(self) -> int:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "^":
            self.next()
            num = self.next()
            if num.kind != "number" or "." in num.text:
                raise PolyParseError("expected a positive integer exponent", num.pos)
            power = int(num.text)
            if power < 1:
                raise PolyParseError("exponent must be positive", num.pos)
            return power
        return 1

    def parse_rational(self) -> Fraction:
        tok = self.next()
        if "." in tok.text:
            return Fraction(tok.text)
        value = int(tok.text)
        nxt = self.peek()
        if nxt.kind == "op" and nxt.text == "/":
            self.next()
            den_tok = self.next()
            if den_tok.kind != "number" or "." in den_tok.text:
                raise PolyParseError("expected an integer denominator", den_tok.pos)
            den = int(den_tok.text)
            if den == 0:
                raise PolyParseError("zero denominator", den_tok.pos)
            return Fraction(value, den)
        return Fraction(value)


def parse(text: str, ctx: VarContext) -> NcPoly:
    """Parse an expression in the grammar above into an exact polynomial."""
    parser = _Parser(text, ctx)
    poly = parser.parse_poly()
    tok = parser.peek()
    if tok.kind != "end":
        raise PolyParseError(f"unexpected trailing input {tok.text!r}", tok.pos)
    return poly


def parse_var_context(spec: str) -> VarContext:
    """Parse a comma list of variable declarations ("X1,X2" or "X'")."""
    names: list[str] = []
    flags: list[bool] = []
    for raw in spec.split(","):
        entry = raw.strip()
        if not entry:
            raise ValueError(f"empty variable declaration in {spec!r}")
        selfadjoint = True
        if entry.endswith("'"):
            selfadjoint = False
            entry = entry[:-1].strip()
        names.append(entry)
        flags.append(selfadjoint)
    return VarContext(tuple(names), tuple(flags))


def rational_str(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def word_str(ctx: VarContext, w: Word) -> str:
    """Canonical text of one word; the empty word prints as "1"."""
    if not len(w):
        return "1"
    return "*".join(ctx.letter_name(l) for l in w)


def word_compact(ctx: VarContext, w: Word) -> str:
    """Dense text of one word, letters juxtaposed (for report lines)."""
    if not len(w):
        return "1"
    return "".join(ctx.letter_name(l) for l in w)


def print_canonical(p: NcPoly) -> str:
    """Deterministic canonical form; parse(print_canonical(p)) == p exactly.

    Terms are emitted in the canonical graded word order with
    integer-normalized rational coefficients.
    """
    if p.is_zero():
        return "0"
    ctx = p.context
    pieces: list[str] = []
    for w in sorted(p.terms, key=word_key):
        c = p.terms[w]
        mag = abs(c)
        if not len(w):
            body = rational_str(mag)
        elif mag == 1:
            body = word_str(ctx, w)
        else:
            body = f"{rational_str(mag)}*{word_str(ctx, w)}"
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(pieces)
