"""Exact affine action of BS(1,2)^d on the dyadic rationals.

``a = x -> x + 1`` and ``t = x -> x / 2`` satisfy ``t^-1 a t = a^2`` when a
word is evaluated leftmost letter outermost, which is the convention used
here and by the pullback map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from ..errors import AlphabetError
from ..freegroup import Generator, Word


@dataclass(frozen=True)
class DyadicRational:
    """``numerator * 2**exponent`` with an odd numerator (or zero)."""

    numerator: int
    exponent: int = 0

    def __post_init__(self):
        n, e = self.numerator, self.exponent
        if n == 0:
            e = 0
        else:
            tz = (n & -n).bit_length() - 1
            n >>= tz
            e += tz
        object.__setattr__(self, "numerator", n)
        object.__setattr__(self, "exponent", e)

    @classmethod
    def of(cls, value: Union[int, Fraction, str, "DyadicRational"]) -> "DyadicRational":
        if isinstance(value, DyadicRational):
            return value
        frac = Fraction(value)
        den = frac.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls(frac.numerator, -(den.bit_length() - 1))

    def __add__(self, other: "DyadicRational") -> "DyadicRational":
        e = min(self.exponent, other.exponent)
        n = (self.numerator << (self.exponent - e)) + (other.numerator << (other.exponent - e))
        return DyadicRational(n, e)

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self.numerator, self.exponent)

    def __sub__(self, other: "DyadicRational") -> "DyadicRational":
        return self + (-other)

    def scale(self, k: int) -> "DyadicRational":
        """Multiply by ``2**k``."""
        return DyadicRational(self.numerator, self.exponent + k)

    def __bool__(self) -> bool:
        return self.numerator != 0

    def to_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.numerator << self.exponent)
        return Fraction(self.numerator, 1 << -self.exponent)

    def __str__(self) -> str:
        return str(self.to_fraction())


ZERO = DyadicRational(0)


@dataclass(frozen=True)
class AffineMap:
    """``x -> 2**k * x + q``."""

    k: int = 0
    q: DyadicRational = ZERO

    def __post_init__(self):
        object.__setattr__(self, "q", DyadicRational.of(self.q))

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        # self o other
        return AffineMap(self.k + other.k, other.q.scale(self.k) + self.q)

    def inverse(self) -> "AffineMap":
        return AffineMap(-self.k, -self.q.scale(-self.k))

    def __call__(self, x) -> DyadicRational:
        return DyadicRational.of(x).scale(self.k) + self.q

    def is_identity(self) -> bool:
        return self.k == 0 and not self.q

    def __str__(self) -> str:
        return f"({self.k},{self.q})"


IDENTITY = AffineMap()

_A = AffineMap(0, DyadicRational(1))
_T = AffineMap(-1, ZERO)

BS12_IMAGES = {Generator("a"): (_A,), Generator("t"): (_T,)}
BS12_SQUARED_IMAGES = {
    Generator("a"): (_A, IDENTITY),
    Generator("t"): (_T, IDENTITY),
    Generator("b"): (IDENTITY, _A),
    Generator("u"): (IDENTITY, _T),
}


def builtin_images(generators: Iterable[Generator]):
    """The built-in table covering ``generators``, or None."""
    gens = set(generators)
    for table in (BS12_IMAGES, BS12_SQUARED_IMAGES):
        if gens <= set(table):
            return table
    return None


def dyadic_eval(w: Union[Word, Iterable], images: Mapping[Generator, Sequence[AffineMap]]) -> tuple:
    """Compose the affine images along ``w`` factor by factor.

    ``w`` may be a Word or any sequence of letters; unreduced sequences are
    evaluated as written.
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    widths = {len(v) for v in images.values()}
    if len(widths) > 1:
        raise ValueError("image lists have different numbers of factors")
    width = widths.pop() if widths else 0
    inverses = {}
    acc = [IDENTITY] * width
    for g, s in letters:
        try:
            maps = images[g]
        except KeyError:
            raise AlphabetError(f"no affine image for generator {g}") from None
        if s < 0:
            maps = inverses.get(g)
            if maps is None:
                maps = inverses[g] = tuple(m.inverse() for m in images[g])
        acc = [x @ y for x, y in zip(acc, maps)]
    return tuple(acc)
