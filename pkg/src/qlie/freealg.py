"""Words and noncommutative polynomials over a finite alphabet.

A word is stored as a plain ``str`` of single-character letters, the empty
string being the identity word ``I``.  An :class:`NCPoly` is a finitely
supported map from words to :class:`~qlie.coeffs.RatFunc` with no zero
coefficients stored.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .coeffs import ONE, ZERO, RatFunc, Scalar

Word = str
EMPTY: Word = ""
_SCALARS = (RatFunc, int, Fraction)


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of single-character letters.

    The order is the rendering order: terms of equal degree are sorted
    lexicographically by letter rank.
    """

    letters: str
    rank: Mapping[str, int] = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.letters)) != len(self.letters) or not self.letters:
            raise ValueError(f"bad alphabet {self.letters!r}")
        if any(not ch.isalpha() or ch == "I" for ch in self.letters):
            raise ValueError("letters must be single alphabetic characters other than I")
        object.__setattr__(self, "rank", {ch: i for i, ch in enumerate(self.letters)})

    def __contains__(self, letter: str) -> bool:
        return letter in self.rank

    def check_word(self, w: Word) -> Word:
        for ch in w:
            if ch not in self.rank:
                raise AlphabetMismatch(f"letter {ch!r} not in alphabet {self.letters!r}")
        return w

    def sort_key(self, w: Word):
        return (len(w), tuple(self.rank[ch] for ch in w))

    def words(self, length: int) -> Iterator[Word]:
        for letters in itertools.product(self.letters, repeat=length):
            yield "".join(letters)


# rank orders match the normal-form shapes B^l C^m and C^m A^t
TWO_LETTERS = Alphabet("BA")
THREE_LETTERS = Alphabet("BCA")


def render_word(w: Word) -> str:
    """``"BCCCA"`` -> ``"B*C^3*A"``; the empty word renders as ``I``."""
    if not w:
        return "I"
    parts = []
    for letter, run in itertools.groupby(w):
        n = len(list(run))
        parts.append(letter if n == 1 else f"{letter}^{n}")
    return "*".join(parts)


def runs(w: Word) -> list[tuple[str, int]]:
    """Run-length view of a word, e.g. ``"BBCA"`` -> ``[("B", 2), ("C", 1), ("A", 1)]``."""
    return [(letter, len(list(run))) for letter, run in itertools.groupby(w)]


class NCPoly:
    """Element of the free algebra over ``alphabet`` with RatFunc coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, Scalar] | None = None):
        self.alphabet = alphabet
        clean: dict[Word, RatFunc] = {}
        for w, c in (terms or {}).items():
            alphabet.check_word(w)
            c = RatFunc.coerce(c)
            if c:
                clean[w] = c
        self.terms = clean

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: dict[Word, RatFunc]) -> "NCPoly":
        # trusted constructor: terms already checked and free of zeros
        p = cls.__new__(cls)
        p.alphabet = alphabet
        p.terms = terms
        return p

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "NCPoly":
        return cls._raw(alphabet, {})

    @classmethod
    def one(cls, alphabet: Alphabet) -> "NCPoly":
        return cls._raw(alphabet, {EMPTY: ONE})

    @classmethod
    def word(cls, alphabet: Alphabet, w: Word, coeff: Scalar = 1) -> "NCPoly":
        return cls(alphabet, {w: coeff})

    @classmethod
    def scalar(cls, alphabet: Alphabet, c: Scalar) -> "NCPoly":
        return cls(alphabet, {EMPTY: c})

    # inspection

    def __iter__(self) -> Iterator[tuple[Word, RatFunc]]:
        return iter(self.items())

    def items(self) -> list[tuple[Word, RatFunc]]:
        """Terms in canonical order: degree, then letter rank."""
        return sorted(self.terms.items(), key=lambda t: self.alphabet.sort_key(t[0]))

    def support(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def coefficient(self, w: Word) -> RatFunc:
        return self.terms.get(w, ZERO)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def scalar_value(self) -> RatFunc:
        """The coefficient of I, provided no other word occurs."""
        if any(w for w in self.terms):
            raise ValueError(f"{self} is not a scalar")
        return self.terms.get(EMPTY, ZERO)

    def is_scalar(self) -> bool:
        return all(not w for w in self.terms)

    # arithmetic

    def _check(self, other: "NCPoly") -> None:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatch(
                f"alphabets differ: {self.alphabet.letters!r} vs {other.alphabet.letters!r}"
            )

    def _lift(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return NCPoly.scalar(self.alphabet, RatFunc.coerce(other))

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for w, c in other.terms.items():
            add_term(out, w, c)
        return NCPoly._raw(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly._raw(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "NCPoly":
        c = RatFunc.coerce(c)
        if not c:
            return NCPoly.zero(self.alphabet)
        if c.is_one():
            return self
        return NCPoly._raw(self.alphabet, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, _SCALARS):
            return self.scale(other)
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._check(other)
        out: dict[Word, RatFunc] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                add_term(out, w1 + w2, c1 * c2)
        return NCPoly._raw(self.alphabet, out)

    def __rmul__(self, other):
        # scalars are central
        if isinstance(other, _SCALARS):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        c = RatFunc.coerce(other)
        return self.scale(c.inverse())

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a noncommutative polynomial")
        result = NCPoly.one(self.alphabet)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            return self.alphabet == other.alphabet and self.terms == other.terms
        if isinstance(other, _SCALARS):
            return self == NCPoly.scalar(self.alphabet, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.alphabet.letters, frozenset(self.terms.items())))

    # text

    def render(self) -> str:
        """Canonical text: ``(coeff)*word`` terms joined by `` + ``."""
        if not self.terms:
            return "0"
        pieces = []
        for w, c in self.items():
            if c.is_one():
                pieces.append(render_word(w))
            elif not w:
                pieces.append(f"({c.render()})")
            else:
                pieces.append(f"({c.render()})*{render_word(w)}")
        return " + ".join(pieces)

    __str__ = render

    def __repr__(self):
        return f"NCPoly({self.render()!r})"


def add_term(acc: dict[Word, RatFunc], w: Word, c: RatFunc) -> None:
    """In-place ``acc[w] += c`` dropping zeros."""
    old = acc.get(w)
    if old is None:
        if c:
            acc[w] = c
        return
    new = old + c
    if new:
        acc[w] = new
    else:
        del acc[w]


def letter(alphabet: Alphabet, name: str) -> NCPoly:
    return NCPoly.word(alphabet, alphabet.check_word(name))


def word_poly(alphabet: Alphabet, w: Word, coeff: Scalar = 1) -> NCPoly:
    return NCPoly.word(alphabet, w, coeff)


def multiply(p: NCPoly, q: NCPoly) -> NCPoly:
    return p * q


def bracket(p: NCPoly, q: NCPoly) -> NCPoly:
    """The commutator ``pq - qp``."""
    return p * q - q * p


def linear_combination(alphabet: Alphabet, pairs: Iterable[tuple[Scalar, NCPoly]]) -> NCPoly:
    out: dict[Word, RatFunc] = {}
    for c, p in pairs:
        c = RatFunc.coerce(c)
        if not c:
            continue
        if p.alphabet != alphabet:
            raise AlphabetMismatch("alphabet mismatch in linear combination")
        for w, v in p.terms.items():
            add_term(out, w, c * v)
    return NCPoly._raw(alphabet, out)


class GeneratorMap:
    """Images of the source letters; extends to a unital algebra map."""

    def __init__(self, source: Alphabet, target: Alphabet, images: Mapping[str, NCPoly]):
        for ch, img in images.items():
            if ch not in source:
                raise AlphabetMismatch(f"{ch!r} is not a source letter")
            if img.alphabet != target:
                raise AlphabetMismatch(f"image of {ch!r} is not over the target alphabet")
        self.source = source
        self.target = target
        self.images = dict(images)
        self._cache: dict[Word, NCPoly] = {EMPTY: NCPoly.one(target)}

    def image_of_word(self, w: Word) -> NCPoly:
        hit = self._cache.get(w)
        if hit is not None:
            return hit
        head = w[0]
        if head not in self.images:
            raise KeyError(f"no image given for letter {head!r}")
        result = self.images[head] * self.image_of_word(w[1:])
        self._cache[w] = result
        return result

    def __call__(self, p: NCPoly) -> NCPoly:
        return apply_generator_map(self, p)


def apply_generator_map(m: GeneratorMap, p: NCPoly) -> NCPoly:
    if p.alphabet != m.source:
        raise AlphabetMismatch("polynomial is not over the map's source alphabet")
    return linear_combination(m.target, ((c, m.image_of_word(w)) for w, c in p.terms.items()))


def identity_map(alphabet: Alphabet) -> GeneratorMap:
    return GeneratorMap(alphabet, alphabet, {ch: letter(alphabet, ch) for ch in alphabet.letters})
