"""
Dyadic PL Module
Exact dyadic rationals and dyadic piecewise-linear homeomorphisms of [0, 1]
"""

from __future__ import annotations

import functools
import logging
from bisect import bisect_right
from typing import Iterable, List, Optional, Sequence, Tuple

import regex as re

logger = logging.getLogger(__name__)


class PLMapError(ValueError):
    """Raised when a breakpoint list does not describe a dyadic PL homeomorphism."""


_DYADIC_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*2\s*\^\s*(\d+))?\s*$")


class DyadicRational:
    """
    Exact value numerator / 2**exponent, always normalized: exponent == 0 or
    numerator is odd. Instances are immutable.
    """

    __slots__ = ("_numerator", "_exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if exponent < 0:
            numerator <<= -exponent
            exponent = 0
        if numerator == 0:
            exponent = 0
        elif exponent:
            trailing = (numerator & -numerator).bit_length() - 1
            if trailing:
                drop = min(trailing, exponent)
                numerator >>= drop
                exponent -= drop
        self._numerator = numerator
        self._exponent = exponent

    @property
    def numerator(self) -> int:
        return self._numerator

    @property
    def exponent(self) -> int:
        return self._exponent

    @classmethod
    def parse(cls, text: str) -> DyadicRational:
        """Parse `p` or `p/2^e`."""
        match = _DYADIC_PATTERN.match(text)
        if not match:
            raise PLMapError(f"Not a dyadic rational: {text!r}")
        numerator = int(match.group(1))
        exponent = int(match.group(2)) if match.group(2) else 0
        return cls(numerator, exponent)

    def _aligned(self, other: DyadicRational) -> Tuple[int, int, int]:
        e = max(self._exponent, other._exponent)
        return (
            self._numerator << (e - self._exponent),
            other._numerator << (e - other._exponent),
            e,
        )

    def __add__(self, other: DyadicRational) -> DyadicRational:
        a, b, e = self._aligned(other)
        return DyadicRational(a + b, e)

    def __sub__(self, other: DyadicRational) -> DyadicRational:
        a, b, e = self._aligned(other)
        return DyadicRational(a - b, e)

    def __mul__(self, other: DyadicRational) -> DyadicRational:
        return DyadicRational(self._numerator * other._numerator, self._exponent + other._exponent)

    def __neg__(self) -> DyadicRational:
        return DyadicRational(-self._numerator, self._exponent)

    def scale(self, k: int) -> DyadicRational:
        """Multiply by 2**k (k may be negative)."""
        return DyadicRational(self._numerator, self._exponent - k)

    def halve(self) -> DyadicRational:
        return self.scale(-1)

    def double(self) -> DyadicRational:
        return self.scale(1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DyadicRational):
            return NotImplemented
        return self._numerator == other._numerator and self._exponent == other._exponent

    def __hash__(self) -> int:
        return hash((self._numerator, self._exponent))

    def __lt__(self, other: DyadicRational) -> bool:
        a, b, _ = self._aligned(other)
        return a < b

    def __le__(self, other: DyadicRational) -> bool:
        a, b, _ = self._aligned(other)
        return a <= b

    def __gt__(self, other: DyadicRational) -> bool:
        a, b, _ = self._aligned(other)
        return a > b

    def __ge__(self, other: DyadicRational) -> bool:
        a, b, _ = self._aligned(other)
        return a >= b

    def __repr__(self) -> str:
        return f"DyadicRational({self._numerator}, {self._exponent})"

    def __str__(self) -> str:
        return f"{self._numerator}/2^{self._exponent}"


ZERO = DyadicRational(0)
ONE = DyadicRational(1)

Point = Tuple[DyadicRational, DyadicRational]


def _slope_exponent(p: Point, q: Point) -> Optional[int]:
    # (dy/dx) is a power of two exactly when the normalized numerators agree,
    # since both are odd; the power is the exponent difference.
    dx = q[0] - p[0]
    dy = q[1] - p[1]
    if dx.numerator <= 0 or dy.numerator <= 0 or dx.numerator != dy.numerator:
        return None
    return dx.exponent - dy.exponent


def _prune(points: List[Point]) -> List[Point]:
    pruned: List[Point] = [points[0]]
    for current, following in zip(points[1:], points[2:]):
        if _slope_exponent(pruned[-1], current) != _slope_exponent(current, following):
            pruned.append(current)
    if len(points) > 1:
        pruned.append(points[-1])
    return pruned


class PLMap:
    """
    A dyadic PL homeomorphism of [0, 1] stored as its canonical pruned
    breakpoint sequence. Equal maps have identical breakpoint tuples.
    """

    __slots__ = ("_breakpoints", "_inputs")

    def __init__(self, breakpoints: Iterable[Point], *, validate: bool = True):
        points = list(breakpoints)
        if validate:
            _validate(points)
        self._breakpoints: Tuple[Point, ...] = tuple(_prune(points))
        self._inputs: Tuple[DyadicRational, ...] = tuple(x for x, _ in self._breakpoints)

    @property
    def breakpoints(self) -> Tuple[Point, ...]:
        return self._breakpoints

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PLMap):
            return NotImplemented
        return self._breakpoints == other._breakpoints

    def __hash__(self) -> int:
        return hash(self._breakpoints)

    def __repr__(self) -> str:
        inner = ", ".join(f"({x}, {y})" for x, y in self._breakpoints)
        return f"PLMap([{inner}])"


def _validate(points: Sequence[Point]) -> None:
    if len(points) < 2:
        raise PLMapError("A PL map needs at least the two endpoints")
    if points[0] != (ZERO, ZERO) or points[-1] != (ONE, ONE):
        raise PLMapError("First breakpoint must be (0,0) and last must be (1,1)")
    for p, q in zip(points, points[1:]):
        if not (p[0] < q[0] and p[1] < q[1]):
            raise PLMapError(f"Breakpoints must increase strictly: {p} then {q}")
        if _slope_exponent(p, q) is None:
            raise PLMapError(f"Slope between {p} and {q} is not a power of 2")


def _eval_segment(m: PLMap, t: DyadicRational) -> DyadicRational:
    inputs = m._inputs
    position = bisect_right(inputs, t) - 1
    if position >= len(inputs) - 1:
        position = len(inputs) - 2
    x0, y0 = m._breakpoints[position]
    if t == x0:
        return y0
    x1, y1 = m._breakpoints[position + 1]
    slope = _slope_exponent((x0, y0), (x1, y1))
    return y0 + (t - x0).scale(slope)


def eval_at(m: PLMap, t: DyadicRational) -> DyadicRational:
    """
    Exact image of t under m.

    Args:
        m: PL map
        t: Dyadic point in [0, 1]

    Returns:
        DyadicRational: m(t)

    Raises:
        PLMapError: If t lies outside [0, 1]
    """
    if t < ZERO or t > ONE:
        raise PLMapError(f"Point {t} lies outside [0, 1]")
    return _eval_segment(m, t)


def invert_pl(m: PLMap) -> PLMap:
    return PLMap(((y, x) for x, y in m.breakpoints), validate=False)


def compose(outer: PLMap, inner: PLMap) -> PLMap:
    """
    Exact composite outer ∘ inner.

    The breakpoints are inner's breakpoints together with the inner-preimages
    of outer's breakpoints; the images of the latter are outer's outputs.
    """
    inverse_inner = invert_pl(inner)
    pulled = [(_eval_segment(inverse_inner, p), q) for p, q in outer.breakpoints]
    pushed = [(x, _eval_segment(outer, y)) for x, y in inner.breakpoints]

    merged: List[Point] = []
    i = j = 0
    while i < len(pulled) or j < len(pushed):
        if j >= len(pushed) or (i < len(pulled) and pulled[i][0] < pushed[j][0]):
            candidate = pulled[i]
            i += 1
        else:
            candidate = pushed[j]
            j += 1
        if merged and merged[-1][0] == candidate[0]:
            continue
        merged.append(candidate)
    return PLMap(merged, validate=False)


def equal_pl(m1: PLMap, m2: PLMap) -> bool:
    return m1.breakpoints == m2.breakpoints


def identity_pl() -> PLMap:
    return _IDENTITY


_IDENTITY = PLMap([(ZERO, ZERO), (ONE, ONE)])


@functools.lru_cache(maxsize=None)
def generator_pl(n: int, inverse: bool = False) -> PLMap:
    """
    The model generator A_n: identity on [0, 1 - 2^-n] and the affine copy
    of A_0 = (0,0),(1/2,1/4),(3/4,1/2),(1,1) on [1 - 2^-n, 1].
    """
    if n < 0:
        raise PLMapError(f"Generator index must be non-negative, got {n}")
    model = [(ZERO, ZERO), (DyadicRational(1, 1), DyadicRational(1, 2)),
             (DyadicRational(3, 2), DyadicRational(1, 1)), (ONE, ONE)]
    start = ONE - DyadicRational(1, n)
    points: List[Point] = [(ZERO, ZERO)] if n else []
    points.extend((start + x.scale(-n), start + y.scale(-n)) for x, y in model)
    generator = PLMap(points)
    return invert_pl(generator) if inverse else generator


def max_exponent(m: PLMap) -> int:
    """Largest denominator exponent among the breakpoint coordinates."""
    return max(max(x.exponent, y.exponent) for x, y in m.breakpoints)


def render_pl(m: PLMap) -> List[str]:
    """One line per breakpoint: `<num>/2^<exp> -> <num>/2^<exp>`."""
    return [f"{x} -> {y}" for x, y in m.breakpoints]


def support_interval(m: PLMap) -> Optional[Tuple[DyadicRational, DyadicRational]]:
    """Smallest closed interval outside which m is the identity; None for the identity."""
    points = m.breakpoints
    moving = [
        k for k in range(len(points) - 1)
        if points[k][0] != points[k][1] or points[k + 1][0] != points[k + 1][1]
    ]
    if not moving:
        return None
    return points[moving[0]][0], points[moving[-1] + 1][0]
