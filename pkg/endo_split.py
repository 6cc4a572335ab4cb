"""
Endo Split Module
Conjugate-idempotent endomorphisms of free groups, the homomorphism e : F -> G,
the constructive splitting chain and detection of inner endomorphisms
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field

import thompson_f
from thompson_f import FWord
from word_core import (
    Word,
    conjugate,
    invert,
    is_conjugate,
    multiply,
    power_of_generator,
    random_word,
    reduce,
    support,
    word_power,
)

logger = logging.getLogger(__name__)

DEFAULT_INNER_BOUND = 8


class EndoError(ValueError):
    """Raised when an endomorphism input or a precondition is invalid."""


class WitnessError(EndoError):
    """Raised when f^2(x) = x0^-1 f(x) x0 fails on some generator."""


class SplitFault(AssertionError):
    """An internal post-check of the splitting chain failed."""


# =============================
# Data Models
# =============================


@dataclass(frozen=True, slots=True)
class FreeEndo:
    """An endomorphism of the free group on x_0..x_{rank-1}, given on generators."""
    rank: int
    images: Tuple[Word, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise EndoError(f"Rank must be positive, got {self.rank}")
        if len(self.images) != self.rank:
            raise EndoError(f"Expected {self.rank} images, got {len(self.images)}")
        for s, image in enumerate(self.images):
            out_of_range = [index for index in support(image) if index >= self.rank]
            if out_of_range:
                raise EndoError(
                    f"Image of x{s} uses x{min(out_of_range)} outside rank {self.rank}"
                )


@dataclass(frozen=True, slots=True)
class ConjIdemWitness:
    """An endomorphism f with f^2(x) = x0^-1 · f(x) · x0 for every x."""
    endo: FreeEndo
    x0: Word

    def __post_init__(self):
        out_of_range = [index for index in support(self.x0) if index >= self.endo.rank]
        if out_of_range:
            raise EndoError(f"x0 uses x{min(out_of_range)} outside rank {self.endo.rank}")
        if not check_conj_idem(self.endo, self.x0):
            raise WitnessError(f"f^2(x) != x0^-1 f(x) x0 for x0 = {self.x0}")


class SplitResult(BaseModel):
    """A power f^n conjugated into an idempotent g(x) = y · f^n(x) · y^-1"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    power: int = Field(description="The exponent n of f^n")
    conjugator: Word = Field(description="The element y conjugating f^n into g")
    idempotent: FreeEndo = Field(description="The endomorphism g with g∘g = g")


class InnerSearchResult(BaseModel):
    """Outcome of the bounded search for a conjugator realizing f as inner"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    conjugator: Optional[Word] = Field(default=None, description="Certified a with f(x) = a^-1 x a")
    definitive: bool = Field(description="True when the verdict does not depend on the bound")
    reason: str = Field(description="Short explanation of the verdict")


# =============================
# Endomorphism arithmetic
# =============================


def apply(f: FreeEndo, w: Word) -> Word:
    """Substitute images[s] for every x_s in w and reduce."""
    pieces: List[Word] = []
    for letter in w.letters:
        if letter.index >= f.rank:
            raise EndoError(f"x{letter.index} is outside the free group of rank {f.rank}")
        pieces.append(word_power(f.images[letter.index], letter.exponent))
    return multiply(*pieces)


def compose(f: FreeEndo, g: FreeEndo) -> FreeEndo:
    """f ∘ g, i.e. x -> f(g(x))."""
    if f.rank != g.rank:
        raise EndoError(f"Cannot compose rank {f.rank} with rank {g.rank}")
    return FreeEndo(f.rank, tuple(apply(f, image) for image in g.images))


def identity_endo(rank: int) -> FreeEndo:
    return FreeEndo(rank, tuple(Word.generator(s) for s in range(rank)))


def inner_endo(rank: int, a: Word) -> FreeEndo:
    """The inner endomorphism x -> a^-1 · x · a."""
    return FreeEndo(rank, tuple(conjugate(Word.generator(s), a) for s in range(rank)))


def power(f: FreeEndo, n: int) -> FreeEndo:
    """n-fold composite of f; n = 0 gives the identity."""
    if n < 0:
        raise EndoError(f"Power must be non-negative, got {n}")
    result = identity_endo(f.rank)
    for _ in range(n):
        result = compose(f, result)
    return result


def check_conj_idem(f: FreeEndo, x0: Word) -> bool:
    """True iff f^2(x_s) = x0^-1 · f(x_s) · x0 on every generator."""
    return all(
        apply(f, image) == conjugate(image, x0)
        for image in f.images
    )


def x_sequence(wit: ConjIdemWitness, i: int) -> Word:
    """x_i = f^i(x0)."""
    if i < 0:
        raise EndoError(f"Index must be non-negative, got {i}")
    x = wit.x0
    for _ in range(i):
        x = apply(wit.endo, x)
    return x


def _power_images(f: FreeEndo, upto: int) -> List[FreeEndo]:
    powers = [identity_endo(f.rank)]
    for _ in range(upto):
        powers.append(compose(f, powers[-1]))
    return powers


def verify_conjugation_identity(
    wit: ConjIdemWitness, m: int, i: int, k: int, printed_exponent: bool = False
) -> bool:
    """
    Check x_i^-k · f^m(x) · x_i^k = f^{m+k}(x) on every generator, for m > i.

    Args:
        wit: Conjugate-idempotent witness (f, x0)
        m: Power of f on the left, strictly larger than i
        i: Index of the conjugating element x_i
        k: Power of x_i
        printed_exponent: Compare against f^{m+(i+1)k} instead, which only
            agrees with the derived identity when i = 0 or the images commute

    Returns:
        bool: Whether the identity holds on all generators

    Raises:
        EndoError: If m <= i or k < 1
    """
    if m <= i:
        raise EndoError(f"The identity needs m > i, got m={m}, i={i}")
    if k < 1:
        raise EndoError(f"k must be positive, got {k}")
    target = m + (i + 1) * k if printed_exponent else m + k
    f = wit.endo
    powers = _power_images(f, max(m, target))
    x_i_k = word_power(x_sequence(wit, i), k)
    return all(
        conjugate(powers[m].images[s], x_i_k) == powers[target].images[s]
        for s in range(f.rank)
    )


def make_idempotent_from_preimage(wit: ConjIdemWitness, y: Word) -> FreeEndo:
    """
    Build g(x) = y · f(x) · y^-1 from a preimage y of x0.

    Raises:
        EndoError: If f(y) != x0
        SplitFault: If the result is not idempotent
    """
    f = wit.endo
    if apply(f, y) != wit.x0:
        raise EndoError(f"f(y) = {apply(f, y)} does not equal x0 = {wit.x0}")
    y_inverse = invert(y)
    g = FreeEndo(f.rank, tuple(conjugate(image, y_inverse) for image in f.images))
    if compose(g, g) != g:
        raise SplitFault("g∘g != g after conjugating by a preimage of x0")
    return g


def image_bootstrap(wit: ConjIdemWitness, i: int, k: int, witness_v: Word, t: int) -> bool:
    """
    Check x_i^k = f^{i+t}(v), which follows from x_i^k = f^{i+1}(v) by
    conjugating t - 1 times with x_i.
    """
    if t < 1:
        raise EndoError(f"t must be positive, got {t}")
    lifted = apply(power(wit.endo, i + t), witness_v)
    return lifted == word_power(x_sequence(wit, i), k)


def splitting_power(
    wit: ConjIdemWitness, i: int, k: int, witness_v: Word, bump: bool = True
) -> SplitResult:
    """
    Turn x_i^k = f^{i+1}(v) into an idempotent conjugate of f^n, n = k·(i+1).

    With n > i the element X0 = x_i^n satisfies f^{2n}(x) = X0^-1 f^n(x) X0,
    and y = v^{i+1} is a preimage of X0 under f^n.

    Args:
        wit: Conjugate-idempotent witness (f, x0)
        i: Index with x_i^k in the image of f^{i+1}
        k: Positive power of x_i
        witness_v: Word v with f^{i+1}(v) = x_i^k
        bump: Move i = 0 to i = 1 first, by applying f to the witness equation

    Returns:
        SplitResult: n, y and g = y · f^n(x) · y^-1 with g∘g = g

    Raises:
        EndoError: If the witness equation fails or k < 1
        SplitFault: If an internal post-check fails
    """
    if k < 1:
        raise EndoError(f"k must be positive, got {k}")
    f = wit.endo
    target = word_power(x_sequence(wit, i), k)
    if apply(power(f, i + 1), witness_v) != target:
        raise EndoError(f"f^{i + 1}(v) != x_{i}^{k} for v = {witness_v}")

    if bump and i == 0:
        # f(x_0^k) = x_1^k and f(f(v)) = f^2(v): the same v now witnesses i = 1
        i = 1
        logger.info("[Endo Split] Moved the witness equation from i=0 to i=1")

    n = k * (i + 1)
    if not image_bootstrap(wit, i, k, witness_v, n - i):
        raise SplitFault(f"x_{i}^{k} is not f^{n}(v) after bootstrapping")

    f_n = power(f, n)
    big_x0 = word_power(x_sequence(wit, i), n)
    y = word_power(witness_v, i + 1)
    try:
        power_witness = ConjIdemWitness(f_n, big_x0)
    except WitnessError as e:
        raise SplitFault(f"f^{n} is not conjugate-idempotent with x_{i}^{n}: {str(e)}")

    g = make_idempotent_from_preimage(power_witness, y)
    logger.info("[Endo Split] Split f^%d with conjugator of length %d", n, y.length)
    return SplitResult(power=n, conjugator=y, idempotent=g)


# =============================
# The homomorphism e : F -> G
# =============================


def e_hom(wit: ConjIdemWitness, w: FWord) -> Word:
    """
    Image of w under a_k -> x_k.

    Raises:
        SplitFault: If e fails to respect the relations of F up to the largest
            index in w
    """
    if w.is_identity:
        return w
    depth = max(support(w))
    if not relation_check(wit, depth):
        raise SplitFault(f"e does not respect the relations of F up to a_{depth}")
    images = [wit.x0]
    for _ in range(depth):
        images.append(apply(wit.endo, images[-1]))
    return multiply(*(word_power(images[letter.index], letter.exponent) for letter in w.letters))


def relation_check(wit: ConjIdemWitness, depth: int) -> bool:
    """e(a_i)^-1 · e(a_j) · e(a_i) = e(a_{j+1}) for all i < j <= depth."""
    xs = [wit.x0]
    for _ in range(depth + 1):
        xs.append(apply(wit.endo, xs[-1]))
    return all(
        conjugate(xs[j], xs[i]) == xs[j + 1]
        for j in range(depth + 1)
        for i in range(j)
    )


def kernel_witness_to_splitting(wit: ConjIdemWitness, w: FWord) -> SplitResult:
    """
    Split a power of f from an element a_i^n · s^{i+1}(b) of the kernel of e.

    The tail s^{i+1}(b) is pulled back letter by letter: a_j becomes
    f^{j-i-1}(x0), so f^{i+1}(v) = e(s^{i+1}(b)) = x_i^-n.

    Raises:
        EndoError: If w is not written in standard form, is trivial in F,
            or is not in the kernel of e
    """
    form = thompson_f.standard_form_check(w)
    if form is None:
        raise EndoError(f"{w} is not written as a_i^n · s^(i+1)(b) with i in (0, 1)")
    if thompson_f.is_trivial(w):
        raise EndoError("The kernel witness must be non-trivial in F")
    if not e_hom(wit, w).is_identity:
        raise EndoError(f"{w} is not a kernel element: e(w) = {e_hom(wit, w)}")

    tail = thompson_f.shift(form.b, form.i + 1)
    pulled_back = [wit.x0]
    for _ in range(max(support(tail), default=0)):
        pulled_back.append(apply(wit.endo, pulled_back[-1]))
    v = multiply(*(
        word_power(pulled_back[letter.index - form.i - 1], letter.exponent)
        for letter in tail.letters
    ))

    witness_v = invert(v) if form.n > 0 else v
    logger.info("[Endo Split] Kernel element gives i=%d, n=%d", form.i, form.n)
    return splitting_power(wit, form.i, abs(form.n), witness_v, bump=False)


def find_kernel_witness(
    wit: ConjIdemWitness, max_length: int, max_index: int
) -> Optional[FWord]:
    """Shortlex search for a non-trivial standard-form element of ker(e)."""
    for candidate in thompson_f.reduced_words(max_length, max_index):
        if thompson_f.standard_form_check(candidate) is None:
            continue
        if not e_hom(wit, candidate).is_identity:
            continue
        if thompson_f.is_trivial(candidate):
            continue
        return candidate
    return None


# =============================
# Inner endomorphisms
# =============================


def _alternating(bound: int) -> Iterator[int]:
    yield 0
    for k in range(1, bound + 1):
        yield k
        yield -k


def inner_search(f: FreeEndo, exp_bound: int = DEFAULT_INNER_BOUND) -> InnerSearchResult:
    """
    Search for a with f(x_s) = a^-1 · x_s · a on every generator.

    The solutions for one generator form the coset <x_s>·a(s); the search walks
    the first coset with exponents 0, 1, -1, 2, -2, ... up to exp_bound.
    """
    cosets: List[Word] = []
    for s, image in enumerate(f.images):
        representative = is_conjugate(Word.generator(s), image)
        if representative is None:
            return InnerSearchResult(
                definitive=True, reason=f"f(x{s}) is not conjugate to x{s}"
            )
        cosets.append(representative)

    base = Word.generator(0)
    for k in _alternating(exp_bound):
        candidate = multiply(word_power(base, k), cosets[0])
        if all(
            power_of_generator(multiply(candidate, invert(cosets[s])), s) is not None
            for s in range(1, f.rank)
        ):
            if inner_endo(f.rank, candidate) != f:
                raise SplitFault(f"Inner conjugator {candidate} failed certification")
            return InnerSearchResult(
                conjugator=candidate, definitive=True, reason="certified on all generators"
            )

    return InnerSearchResult(
        definitive=False, reason=f"no common conjugator with exponents up to {exp_bound}"
    )


def is_inner(f: FreeEndo, exp_bound: int = DEFAULT_INNER_BOUND) -> Optional[Word]:
    return inner_search(f, exp_bound).conjugator


def min_support_conjugator(target: Word, base_index: int, seed: Word, exp_bound: int) -> Word:
    """
    Among the conjugators x_base^k · seed, |k| <= exp_bound, pick one using the
    fewest generators; ties go to the smallest |k|, then k >= 0.
    """
    base = Word.generator(base_index)
    if conjugate(base, seed) != target:
        raise EndoError(f"{seed} does not conjugate x{base_index} onto {target}")

    def rank_key(k: int) -> Tuple[int, int, int]:
        candidate = multiply(word_power(base, k), seed)
        return len(support(candidate)), abs(k), 0 if k >= 0 else 1

    best = min(range(-exp_bound, exp_bound + 1), key=rank_key)
    return multiply(word_power(base, best), seed)


def recenter(f: FreeEndo, z: int) -> FreeEndo:
    """h(x) = a · f(x) · a^-1 where f(x_z) = a^-1 x_z a, so that h(x_z) = x_z."""
    if not 0 <= z < f.rank:
        raise EndoError(f"Generator x{z} is outside rank {f.rank}")
    a = is_conjugate(Word.generator(z), f.images[z])
    if a is None:
        raise EndoError(f"f(x{z}) is not conjugate to x{z}")
    a_inverse = invert(a)
    return FreeEndo(f.rank, tuple(conjugate(image, a_inverse) for image in f.images))


def conjugates_every_test_word(f: FreeEndo, words: Iterable[Word]) -> bool:
    """True iff f(w) is conjugate to w for every test word."""
    return all(is_conjugate(w, apply(f, w)) is not None for w in words)


# =============================
# Seeded instances
# =============================


def random_retraction(rng: random.Random, rank: int, max_len: int) -> FreeEndo:
    """A random g with g∘g = g: a non-empty set of generators is fixed and the rest land in it."""
    fixed = sorted(rng.sample(range(rank), rng.randint(1, rank)))
    images: List[Word] = []
    for s in range(rank):
        if s in fixed:
            images.append(Word.generator(s))
            continue
        length = rng.randint(0, max_len)
        raw = [(rng.choice(fixed), rng.choice((1, -1))) for _ in range(length)]
        images.append(reduce(raw))
    return FreeEndo(rank, tuple(images))


def random_conj_idem_witness(
    rng: random.Random, rank: int, max_len: int
) -> Tuple[ConjIdemWitness, Word]:
    """
    f = c^-1 · g(x) · c for a random retraction g, with x0 = f(c).

    Returns:
        Tuple[ConjIdemWitness, Word]: The witness and the preimage c of x0
    """
    g = random_retraction(rng, rank, max_len)
    c = random_word(rng, max_len, rank - 1)
    f = FreeEndo(rank, tuple(conjugate(image, c) for image in g.images))
    return ConjIdemWitness(f, apply(f, c)), c


def random_trivial_image_witness(rng: random.Random, rank: int, max_len: int) -> ConjIdemWitness:
    """
    The endomorphism sending every generator to 1, with a random non-trivial x0.

    x0 lies outside im f = {1}, so x_0 = x0 while x_k = 1 for k >= 1.
    """
    if max_len < 1:
        raise EndoError(f"Need max_len >= 1 for a non-trivial x0, got {max_len}")
    x0 = Word.identity()
    while x0.is_identity:
        x0 = random_word(rng, max_len, rank - 1)
    return ConjIdemWitness(FreeEndo(rank, (Word.identity(),) * rank), x0)


def random_kernel_element(rng: random.Random, i: int, n: int, tail_len: int) -> FWord:
    """
    a_i^n followed by a tail over indices >= i+1 with exponent sum -n.

    Such a word lies in ker(e) whenever all x_k coincide, as for the witnesses
    built by random_conj_idem_witness, and for i = 1 whenever x_k = 1 for all
    k >= 1, as for random_trivial_image_witness.
    """
    if i not in (0, 1) or n == 0:
        raise EndoError(f"Need i in (0, 1) and n != 0, got i={i}, n={n}")
    raw: List[Tuple[int, int]] = [(i, n)]
    raw.extend(
        (rng.randint(i + 1, i + 3), rng.choice((1, -1))) for _ in range(tail_len)
    )
    balance = -sum(exponent for _, exponent in raw)
    if balance:
        raw.append((rng.randint(i + 1, i + 3), balance))
    return reduce(raw)


