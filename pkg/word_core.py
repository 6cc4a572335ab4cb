"""
Word Core Module
Exact free-group word arithmetic over a countable indexed alphabet
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple, Union

logger = logging.getLogger(__name__)


class WordError(ValueError):
    """Raised when a letter or word violates the reduced-word invariants."""


# =============================
# Data Models
# =============================


@dataclass(frozen=True, slots=True)
class Letter:
    """A run-length syllable: generator `index` raised to a nonzero `exponent`."""
    index: int
    exponent: int

    def __post_init__(self):
        if self.index < 0:
            raise WordError(f"Generator index must be non-negative, got {self.index}")
        if self.exponent == 0:
            raise WordError(f"Zero exponent on generator {self.index}")

    def inverse(self) -> Letter:
        return Letter(self.index, -self.exponent)


RawLetter = Union[Letter, Tuple[int, int]]


@dataclass(frozen=True, slots=True)
class Word:
    """
    A reduced word. Adjacent letters always carry distinct indices, and the
    empty tuple is the identity element.
    """
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        for left, right in zip(self.letters, self.letters[1:]):
            if left.index == right.index:
                raise WordError(
                    f"Word is not reduced: adjacent letters share index {left.index}"
                )

    @classmethod
    def generator(cls, index: int, exponent: int = 1) -> Word:
        return cls((Letter(index, exponent),))

    @classmethod
    def identity(cls) -> Word:
        return cls(())

    @property
    def is_identity(self) -> bool:
        return not self.letters

    @property
    def length(self) -> int:
        """Length in the generators, i.e. the sum of absolute exponents."""
        return sum(abs(letter.exponent) for letter in self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def inverse(self) -> Word:
        return invert(self)


# =============================
# Core operations
# =============================


def _as_letter(raw: RawLetter) -> Letter:
    if isinstance(raw, Letter):
        return raw
    index, exponent = raw
    return Letter(index, exponent)


def reduce(raw: Iterable[RawLetter]) -> Word:
    """
    Freely reduce a sequence of letters.

    Args:
        raw: Letters or (index, exponent) pairs, in order

    Returns:
        Word: The unique reduced word for the same free-group element

    Raises:
        WordError: If a letter has exponent 0
    """
    stack: list[Letter] = []
    for item in raw:
        letter = _as_letter(item)
        if stack and stack[-1].index == letter.index:
            merged = stack[-1].exponent + letter.exponent
            stack.pop()
            if merged:
                stack.append(Letter(letter.index, merged))
        else:
            stack.append(letter)
    return Word(tuple(stack))


def multiply(*words: Word) -> Word:
    """Reduced product of the given words, left to right."""
    raw: list[Letter] = []
    for word in words:
        raw.extend(word.letters)
    return reduce(raw)


def invert(u: Word) -> Word:
    return Word(tuple(letter.inverse() for letter in reversed(u.letters)))


def word_power(u: Word, k: int) -> Word:
    if k < 0:
        return word_power(invert(u), -k)
    return reduce(u.letters * k)


def conjugate(w: Word, g: Word) -> Word:
    """Return g^-1 · w · g."""
    return multiply(invert(g), w, g)


def cyclic_reduce(w: Word) -> Tuple[Word, Word]:
    """
    Strip cancelling letters from both ends of a word.

    Args:
        w: Reduced word

    Returns:
        Tuple[Word, Word]: (core, conjugator) with w = conjugate(core, conjugator)
        and core's first and last letters not cancelling
    """
    letters = list(w.letters)
    peeled: list[Letter] = []
    while len(letters) >= 2:
        first, last = letters[0], letters[-1]
        if first.index != last.index or (first.exponent > 0) == (last.exponent > 0):
            break
        amount = min(abs(first.exponent), abs(last.exponent))
        step = amount if first.exponent > 0 else -amount
        peeled.append(Letter(first.index, step))
        if first.exponent == step:
            letters.pop(0)
        else:
            letters[0] = Letter(first.index, first.exponent - step)
        # the tail letter carries the opposite sign
        if last.exponent == -step:
            letters.pop()
        else:
            letters[-1] = Letter(last.index, last.exponent + step)
    core = Word(tuple(letters))
    conjugator = invert(reduce(peeled))
    return core, conjugator


def support(w: Word) -> frozenset[int]:
    """Generator indices occurring in w; its size is n(w) for the fixed basis."""
    return frozenset(letter.index for letter in w.letters)


def power_of_generator(w: Word, index: int) -> Optional[int]:
    """Return m when w = x_index^m, otherwise None."""
    if w.is_identity:
        return 0
    if len(w.letters) == 1 and w.letters[0].index == index:
        return w.letters[0].exponent
    return None


def _syllable_core(w: Word) -> Tuple[Word, Word]:
    # Like cyclic_reduce, but also merges a same-signed first/last pair so the
    # core reads as a reduced cyclic word.
    core, conjugator = cyclic_reduce(w)
    if len(core.letters) >= 2 and core.letters[0].index == core.letters[-1].index:
        last = Word((core.letters[-1],))
        rotated = conjugate(core, invert(last))
        return rotated, multiply(last, conjugator)
    return core, conjugator


def is_conjugate(u: Word, v: Word) -> Optional[Word]:
    """
    Decide conjugacy in the free group.

    Args:
        u: Reduced word
        v: Reduced word

    Returns:
        Optional[Word]: A conjugator c with conjugate(u, c) = v, or None
    """
    if u.is_identity or v.is_identity:
        return Word.identity() if u.is_identity and v.is_identity else None

    core_u, conj_u = _syllable_core(u)
    core_v, conj_v = _syllable_core(v)
    if len(core_u.letters) != len(core_v.letters):
        return None

    syllables = core_v.letters
    for shift in range(len(syllables)):
        if syllables[shift:] + syllables[:shift] != core_u.letters:
            continue
        prefix = Word(syllables[:shift])
        candidate = multiply(invert(conj_u), invert(prefix), conj_v)
        if conjugate(u, candidate) != v:
            raise AssertionError("Conjugator certification failed")
        return candidate
    return None


def random_word(rng: random.Random, max_length: int, max_index: int) -> Word:
    """Seeded random reduced word of length at most `max_length` over x_0..x_max_index."""
    length = rng.randint(0, max_length)
    raw = [(rng.randint(0, max_index), rng.choice((1, -1))) for _ in range(length)]
    return reduce(raw)
