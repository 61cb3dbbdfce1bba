"""Exact arithmetic in the free *-algebra over a declared variable context.

A polynomial is a finitely supported map from words to rational
coefficients (Fraction).  Words are tuples of letters; a letter is a
variable index plus a "starred" flag.  Variables declared self-adjoint
have no starred letter at all (X* = X); the others come paired with a
formal adjoint letter, written X' in text form.

All values are immutable after construction and every operation is a
pure function, so everything here is safe to share across threads.
Coefficients stay exact rationals throughout; floats never enter this
module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

RationalLike = Fraction | int


class ContextMismatchError(ValueError):
    """Operands were built over different variable contexts."""


class Letter(NamedTuple):
    """One letter of a word: a variable index and its adjoint flag.

    Tuple ordering (var_index, then starred with False < True) is exactly
    the canonical letter order used for sorting words.
    """

    var_index: int
    starred: bool


@dataclass(frozen=True)
class VarContext:
    """Declared noncommuting variables: names plus self-adjointness flags."""

    names: tuple[str, ...]
    selfadjoint: tuple[bool, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError("context needs at least one variable")
        if len(self.names) != len(self.selfadjoint):
            raise ValueError("names and selfadjoint flags differ in length")
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name: {name!r}")

    @property
    def var_count(self) -> int:
        return len(self.names)

    def letter(self, var_index: int, starred: bool = False) -> Letter:
        """Validated letter constructor; self-adjoint variables are never starred."""
        if not 0 <= var_index < self.var_count:
            raise ValueError(f"variable index {var_index} out of range")
        if starred and self.selfadjoint[var_index]:
            raise ValueError(
                f"variable {self.names[var_index]!r} is self-adjoint; no adjoint letter"
            )
        return Letter(var_index, starred)

    def letters(self) -> tuple[Letter, ...]:
        """All distinct letters in canonical order."""
        out: list[Letter] = []
        for i, sa in enumerate(self.selfadjoint):
            out.append(Letter(i, False))
            if not sa:
                out.append(Letter(i, True))
        out.sort()
        return tuple(out)

    def star_letter(self, letter: Letter) -> Letter:
        if self.selfadjoint[letter.var_index]:
            return letter
        return Letter(letter.var_index, not letter.starred)

    def letter_name(self, letter: Letter) -> str:
        return self.names[letter.var_index] + ("'" if letter.starred else "")


@dataclass(frozen=True)
class Word:
    """A finite (possibly empty) product of letters; degree = length."""

    letters: tuple[Letter, ...] = ()

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def concat(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)


EMPTY_WORD = Word()


def word_key(w: Word) -> tuple[int, tuple[Letter, ...]]:
    """Sort key for the canonical graded order: by length, then letterwise."""
    return (len(w.letters), w.letters)


def word_compare(a: Word, b: Word) -> int:
    """-1, 0 or +1 in the canonical graded order."""
    ka, kb = word_key(a), word_key(b)
    return (ka > kb) - (ka < kb)


def word_star(ctx: VarContext, w: Word) -> Word:
    """Reverse the word and flip adjoint flags of non-self-adjoint letters."""
    return Word(tuple(ctx.star_letter(l) for l in reversed(w.letters)))


class NcPoly:
    """A noncommutative polynomial: context + word-to-Fraction term map.

    Stored coefficients are never zero.  Instances are treated as
    immutable; all arithmetic returns new polynomials.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: VarContext, terms: Mapping[Word, RationalLike] | None = None):
        cleaned: dict[Word, Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = Fraction(c)
                if c:
                    cleaned[w] = c
        self.context = context
        self.terms = cleaned

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, ctx: VarContext) -> "NcPoly":
        return cls(ctx)

    @classmethod
    def constant(cls, ctx: VarContext, value: RationalLike) -> "NcPoly":
        return cls(ctx, {EMPTY_WORD: Fraction(value)})

    @classmethod
    def one(cls, ctx: VarContext) -> "NcPoly":
        return cls.constant(ctx, 1)

    @classmethod
    def monomial(cls, ctx: VarContext, w: Word, coeff: RationalLike = 1) -> "NcPoly":
        return cls(ctx, {w: Fraction(coeff)})

    @classmethod
    def variable(cls, ctx: VarContext, var_index: int, starred: bool = False) -> "NcPoly":
        return cls.monomial(ctx, Word((ctx.letter(var_index, starred),)))

    # -- queries ------------------------------------------------------

    def coeff(self, w: Word) -> Fraction:
        return self.terms.get(w, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int | None:
        """Length of the longest stored word; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(len(w) for w in self.terms)

    def sorted_words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def star(self) -> "NcPoly":
        ctx = self.context
        return NcPoly(ctx, {word_star(ctx, w): c for w, c in self.terms.items()})

    def is_symmetric(self) -> bool:
        ctx = self.context
        for w, c in self.terms.items():
            if self.terms.get(word_star(ctx, w)) != c:
                return False
        return True

    # -- arithmetic ---------------------------------------------------

    def _check_context(self, other: "NcPoly") -> None:
        if self.context != other.context:
            raise ContextMismatchError("polynomials from different variable contexts")

    def __add__(self, other: "NcPoly | RationalLike") -> "NcPoly":
        if not isinstance(other, NcPoly):
            other = NcPoly.constant(self.context, other)
        self._check_context(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return NcPoly(self.context, out)

    __radd__ = __add__

    def __neg__(self) -> "NcPoly":
        return NcPoly(self.context, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NcPoly | RationalLike") -> "NcPoly":
        if not isinstance(other, NcPoly):
            other = NcPoly.constant(self.context, other)
        return self + (-other)

    def __rsub__(self, other: RationalLike) -> "NcPoly":
        return (-self) + other

    def __mul__(self, other: "NcPoly | RationalLike") -> "NcPoly":
        if not isinstance(other, NcPoly):
            return self.scale(other)
        self._check_context(other)
        out: dict[Word, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa.concat(wb)
                out[w] = out.get(w, Fraction(0)) + ca * cb
        return NcPoly(self.context, out)

    def __rmul__(self, other: RationalLike) -> "NcPoly":
        return self.scale(other)

    def scale(self, factor: RationalLike) -> "NcPoly":
        factor = Fraction(factor)
        return NcPoly(self.context, {w: c * factor for w, c in self.terms.items()})

    # -- comparison ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NcPoly):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self):  # mutable dict inside; keep unhashable
        raise TypeError("NcPoly is not hashable")

    def __repr__(self) -> str:
        names = self.context.letter_name
        parts = []
        for w in self.sorted_words():
            body = "*".join(names(l) for l in w) or "1"
            parts.append(f"{self.terms[w]}*{body}")
        return "NcPoly(" + (" + ".join(parts) or "0") + ")"


def poly_sum(ctx: VarContext, polys: Iterable[NcPoly]) -> NcPoly:
    total = NcPoly.zero(ctx)
    for p in polys:
        total = total + p
    return total
