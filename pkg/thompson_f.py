"""
Thompson F Module
Thompson's group F: normal forms, the shift, the faithful dyadic PL representation
and a dual-oracle word problem
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from itertools import product
from typing import Iterator, List, Literal, Optional, Tuple, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, field_validator

from dyadic_pl import PLMap, compose, equal_pl, generator_pl, identity_pl
from word_core import (
    Letter,
    Word,
    conjugate,
    cyclic_reduce,
    invert,
    multiply,
    reduce,
    support,
    word_power,
)

logger = logging.getLogger(__name__)

# Elements of F are reduced free words whose letter index i reads as a_i.
FWord: TypeAlias = Word

# The representation is a left action: rho(u·v) = rho(u) ∘ rho(v).
# This is the orientation under which a_i^-1 a_j a_i = a_{j+1} holds for the
# model generators; ensure_presentation() refuses to run otherwise.
COMPOSITION_CONVENTION: Literal["left", "right"] = "left"

DEFAULT_SEARCH_RADIUS = 6


class OracleDisagreement(AssertionError):
    """The normal-form and PL deciders returned different verdicts."""


class PresentationMismatch(RuntimeError):
    """The PL model does not satisfy the defining relations of F."""


# =============================
# Data Models
# =============================


class StandardForm(BaseModel):
    """An element a_i^n · s^{i+1}(b) with i in {0, 1} and n != 0"""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    i: Literal[0, 1] = Field(description="Index of the leading generator block")
    n: int = Field(description="Nonzero exponent of the leading block")
    b: Word = Field(description="Element whose (i+1)-fold shift forms the tail")

    @field_validator("n")
    @classmethod
    def _nonzero(cls, value: int) -> int:
        if value == 0:
            raise ValueError("n must be nonzero")
        return value


# =============================
# Shift and normal form
# =============================


def shift(w: FWord, k: int) -> FWord:
    """s^k: every generator index increases by k."""
    if k < 0:
        raise ValueError(f"Shift amount must be non-negative, got {k}")
    if k == 0:
        return w
    return Word(tuple(Letter(letter.index + k, letter.exponent) for letter in w.letters))


def unshift(w: FWord, k: int) -> FWord:
    """Inverse of shift on words whose indices are all >= k."""
    if any(letter.index < k for letter in w.letters):
        raise ValueError(f"Cannot unshift by {k}: word uses an index below {k}")
    return Word(tuple(Letter(letter.index - k, letter.exponent) for letter in w.letters))


# A positive word with non-decreasing indices is kept as runs [index, count],
# one run per distinct index, in increasing index order.
Runs: TypeAlias = List[List[int]]


def _append_positive(p: Runs, j: int, count: int) -> None:
    # p · a_j^count: larger indices move up by count
    position = bisect_right(p, j, key=lambda run: run[0])
    for run in p[position:]:
        run[0] += count
    if position and p[position - 1][0] == j:
        p[position - 1][1] += count
    else:
        p.insert(position, [j, count])


def _slide(q: Runs, j: int) -> Tuple[int, int]:
    # a_j moving right through q: each smaller letter raises its index by one
    t = 0
    while t < len(q) and q[t][0] < j:
        j += q[t][1]
        t += 1
    return t, j


def _push_syllable(p: Runs, q: Runs, j: int, exponent: int) -> None:
    """Right-multiply the element p·q^-1 by a_j^exponent, keeping the p·q^-1 shape."""
    t, j = _slide(q, j)
    if exponent < 0:
        if t < len(q) and q[t][0] == j:
            q[t][1] -= exponent
        else:
            q.insert(t, [j, -exponent])
        return
    remaining = exponent
    if t < len(q) and q[t][0] == j:
        cancelled = min(remaining, q[t][1])
        q[t][1] -= cancelled
        remaining -= cancelled
        if not q[t][1]:
            del q[t]
    if remaining:
        for run in q[t:]:
            run[0] += remaining
        _append_positive(p, j, remaining)


def _trim(p: Runs, q: Runs) -> None:
    # a_t · v · a_t^-1 = v shifted down by one when v only uses indices >= t+2
    while True:
        runs_p = {run[0]: run for run in p}
        runs_q = {run[0]: run for run in q}
        candidates = [
            t for t in runs_p.keys() & runs_q.keys()
            if t + 1 not in runs_p and t + 1 not in runs_q
        ]
        if not candidates:
            return
        t = max(candidates)
        steps = min(runs_p[t][1], runs_q[t][1])
        larger = [run[0] for run in p + q if run[0] > t]
        if larger:
            steps = min(steps, min(larger) - t - 1)
        for runs, by_index in ((p, runs_p), (q, runs_q)):
            for run in runs:
                if run[0] > t:
                    run[0] -= steps
            by_index[t][1] -= steps
            if not by_index[t][1]:
                runs.remove(by_index[t])


def normal_form(w: FWord) -> FWord:
    """
    Canonical representative p·q^-1 of w in F.

    p and q are positive words with non-decreasing indices, and whenever a_t
    and a_t^-1 both occur, a_{t+1} or a_{t+1}^-1 occurs too. Each syllable
    a_j^e is absorbed in one step, so large exponents cost nothing extra.

    Args:
        w: Any word in the a-generators

    Returns:
        FWord: The unique normal form; equal elements of F share it
    """
    p: Runs = []
    q: Runs = []
    for letter in w.letters:
        _push_syllable(p, q, letter.index, letter.exponent)
    _trim(p, q)
    return reduce([(i, count) for i, count in p] + [(j, -count) for j, count in reversed(q)])


# =============================
# PL representation and the word problem
# =============================


def pl_power(m: PLMap, count: int) -> PLMap:
    """m composed with itself count >= 0 times, by repeated squaring."""
    result, square = identity_pl(), m
    while count:
        if count & 1:
            result = compose(result, square)
        count >>= 1
        if count:
            square = compose(square, square)
    return result


def to_pl(w: FWord) -> PLMap:
    """Image of w under the representation a_n -> A_n."""
    result = identity_pl()
    for letter in w.letters:
        step = generator_pl(letter.index, inverse=letter.exponent < 0)
        syllable = pl_power(step, abs(letter.exponent))
        if COMPOSITION_CONVENTION == "left":
            result = compose(result, syllable)
        else:
            result = compose(syllable, result)
    return result


def words_equal(u: FWord, v: FWord) -> bool:
    """
    Decide u = v in F with both the normal form and the PL representation.

    Raises:
        OracleDisagreement: If the two deciders disagree
    """
    by_normal_form = normal_form(u) == normal_form(v)
    by_pl = equal_pl(to_pl(u), to_pl(v))
    if by_normal_form != by_pl:
        logger.error("[Thompson F] Oracle disagreement on %s vs %s", u, v)
        raise OracleDisagreement(
            f"Normal form says {by_normal_form}, PL map says {by_pl} for {u} vs {v}"
        )
    return by_pl


def is_trivial(w: FWord) -> bool:
    return words_equal(w, Word.identity())


def _gen(index: int, exponent: int = 1) -> FWord:
    return Word.generator(index, exponent)


def verify_presentation(depth: int) -> bool:
    """Check rho(a_i^-1 a_j a_i) = rho(a_{j+1}) for all 0 <= i < j <= depth."""
    for j in range(depth + 1):
        for i in range(j):
            lhs = to_pl(conjugate(_gen(j), _gen(i)))
            if not equal_pl(lhs, to_pl(_gen(j + 1))):
                logger.warning("[Thompson F] Relation fails for i=%d, j=%d", i, j)
                return False
    return True


def ensure_presentation(depth: int = 10) -> None:
    if not verify_presentation(depth):
        raise PresentationMismatch(
            f"The {COMPOSITION_CONVENTION} composition convention violates the relations of F"
        )


def commuting_family_check(i_max: int, exp_bound: int) -> bool:
    """
    Check that c_i = a_{3i}^-1 a_{3i+1}, i <= i_max, commute pairwise and that
    no product c_0^k0 ··· c_imax^kimax with 0 < max|k_t| <= exp_bound is trivial.
    """
    family = [multiply(_gen(3 * i, -1), _gen(3 * i + 1)) for i in range(i_max + 1)]
    for i, c_i in enumerate(family):
        for c_j in family[i + 1:]:
            if not words_equal(multiply(c_i, c_j), multiply(c_j, c_i)):
                logger.info("[Thompson F] Family members fail to commute")
                return False

    exponent_range = range(-exp_bound, exp_bound + 1)
    for exponents in product(exponent_range, repeat=len(family)):
        if not any(exponents):
            continue
        word = multiply(*(word_power(c, k) for c, k in zip(family, exponents)))
        if is_trivial(word):
            logger.info("[Thompson F] Relation among family members: %s", exponents)
            return False
    return True


# =============================
# Standard forms a_i^n · s^{i+1}(b)
# =============================


def render_standard_form(form: StandardForm) -> FWord:
    return multiply(_gen(form.i, form.n), shift(form.b, form.i + 1))


def standard_form_check(w: FWord) -> Optional[StandardForm]:
    """Read w literally as a_i^n followed by a tail in indices >= i+1."""
    if w.is_identity:
        return None
    head, tail = w.letters[0], w.letters[1:]
    if head.index not in (0, 1):
        return None
    if any(letter.index < head.index + 1 for letter in tail):
        return None
    b = unshift(Word(tail), head.index + 1)
    return StandardForm(i=head.index, n=head.exponent, b=b)


def standard_form_of(w: FWord) -> Optional[StandardForm]:
    """
    Recognize the element w as a_i^n · s^{i+1}(b), whichever word spells it.

    The lowest index in the normal form fixes i; inside the subgroup generated
    by a_i, a_{i+1}, ... the exponent sum of a_i is a homomorphism, so it fixes n.
    """
    nf = normal_form(w)
    if nf.is_identity:
        return None
    i = min(support(nf))
    if i > 1:
        return None
    n = sum(letter.exponent for letter in nf.letters if letter.index == i)
    if n == 0:
        return None
    rest = normal_form(multiply(_gen(i, -n), nf))
    if any(letter.index <= i for letter in rest.letters):
        return None
    return StandardForm(i=i, n=n, b=unshift(rest, i + 1))


def reduced_words(max_length: int, max_index: int) -> Iterator[Word]:
    """All reduced words of length <= max_length over a_0..a_max_index, in shortlex order."""
    steps = [(index, sign) for index in range(max_index + 1) for sign in (1, -1)]
    layer: List[Tuple[Tuple[int, int], ...]] = [()]
    yield Word.identity()
    for _ in range(max_length):
        following = []
        for prefix in layer:
            for index, sign in steps:
                if prefix and prefix[-1] == (index, -sign):
                    continue
                extended = prefix + ((index, sign),)
                following.append(extended)
                yield reduce(extended)
        layer = following


def standard_form_search(
    w: FWord, radius: int = DEFAULT_SEARCH_RADIUS
) -> Optional[Tuple[FWord, StandardForm]]:
    """
    Bounded search for a conjugator carrying w into standard form.

    Args:
        w: Element of F that is not the identity
        radius: Maximum conjugator length and generator index

    Returns:
        Optional[Tuple[FWord, StandardForm]]: (conjugator, form), certified with
        words_equal; None means "not found within radius"

    Raises:
        ValueError: If w is trivial in F
    """
    if is_trivial(w):
        raise ValueError("The identity has no standard form")

    core, core_conjugator = cyclic_reduce(normal_form(w))
    for tried, g in enumerate(reduced_words(radius, radius)):
        form = standard_form_of(conjugate(core, g))
        if form is None:
            continue
        conjugator = multiply(invert(core_conjugator), g)
        if not words_equal(conjugate(w, conjugator), render_standard_form(form)):
            raise OracleDisagreement(f"Standard form certification failed for {w}")
        logger.info("[Thompson F] Standard form found after %d conjugators", tried + 1)
        return conjugator, form
    return None


# =============================
# The shift as a conjugate-idempotent endomorphism of F
# =============================


def shift_idempotent_check(j_max: int) -> bool:
    """s^2(a_j) = a_0^-1 · s(a_j) · a_0 in F for all j <= j_max."""
    return all(
        words_equal(shift(_gen(j), 2), conjugate(shift(_gen(j), 1), _gen(0)))
        for j in range(j_max + 1)
    )


def shift_conjugation_identity(m: int, i: int, k: int, j_max: int) -> bool:
    """
    a_i^-k · s^m(a_j) · a_i^k = s^{m+k}(a_j) in F for all j <= j_max, where
    x_i = s^i(a_0) = a_i plays the role of the i-th conjugating element.
    """
    if m <= i:
        raise ValueError(f"The identity needs m > i, got m={m}, i={i}")
    if k < 0:
        raise ValueError(f"Conjugating power must be non-negative, got {k}")
    conjugator = word_power(_gen(i), k)
    return all(
        words_equal(conjugate(shift(_gen(j), m), conjugator), shift(_gen(j), m + k))
        for j in range(j_max + 1)
    )
