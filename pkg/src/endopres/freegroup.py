"""Free-group words over named, optionally level-indexed generators.

Words are always stored freely reduced. Generators carry an optional integer
``level`` so that the family ``a_{j,i}`` of a kernel presentation can be
shifted arithmetically instead of being encoded into flat strings.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

from .errors import AlphabetError

__all__ = [
    "Generator",
    "Letter",
    "Word",
    "FreeEndomorphism",
    "reduce",
    "invert",
    "multiply",
    "exp_sum",
    "cyclic_reduce",
    "substitute",
    "apply_endo",
    "compose",
    "enumerate_monoid",
    "monoid_levels",
]


class Generator(tuple):
    """A named generator, optionally carrying an integer level.

    A plain tuple underneath so that hashing and equality stay in C; words
    routinely reach millions of letters.
    """

    __slots__ = ()

    def __new__(cls, name: str, level: Optional[int] = None):
        if not isinstance(name, str) or not name or not name[0].isalpha() or not all(
            ch.isalnum() or ch == "_" for ch in name
        ):
            raise ValueError(f"invalid generator name: {name!r}")
        if not name.isascii():
            raise ValueError(f"generator names must be ASCII: {name!r}")
        if level is not None:
            level = int(level)
        return tuple.__new__(cls, (name, level))

    def __getnewargs__(self):
        return tuple(self)

    @property
    def name(self) -> str:
        return self[0]

    @property
    def level(self) -> Optional[int]:
        return self[1]

    @property
    def indexed(self) -> bool:
        return self[1] is not None

    def at(self, level: int) -> "Generator":
        return Generator(self[0], level)

    def sort_key(self):
        return (self[0], self[1] is not None, self[1] or 0)

    def __lt__(self, other: "Generator") -> bool:
        return self.sort_key() < other.sort_key()

    def __gt__(self, other: "Generator") -> bool:
        return self.sort_key() > other.sort_key()

    def __le__(self, other: "Generator") -> bool:
        return self.sort_key() <= other.sort_key()

    def __ge__(self, other: "Generator") -> bool:
        return self.sort_key() >= other.sort_key()

    def __repr__(self) -> str:
        return f"Generator({self[0]!r})" if self[1] is None else f"Generator({self[0]!r}, {self[1]})"

    def __str__(self) -> str:
        return self[0] if self[1] is None else f"{self[0]}@{self[1]}"


class Letter(NamedTuple):
    gen: Generator
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.gen, -self.sign)


def _push(stack: list, letter: Letter) -> None:
    if stack and stack[-1].gen == letter.gen and stack[-1].sign == -letter.sign:
        stack.pop()
    else:
        stack.append(letter)


class Word:
    """An element of a free group, held as a freely reduced letter tuple.

    Every constructor reduces, so ``==`` is equality in the free group.
    """

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[Letter] = ()):
        stack: list = []
        for letter in letters:
            if letter.sign not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {letter.sign}")
            _push(stack, letter)
        self.letters: tuple = tuple(stack)
        self._hash = None

    @classmethod
    def _trusted(cls, letters: tuple) -> "Word":
        w = cls.__new__(cls)
        w.letters = letters
        w._hash = None
        return w

    @classmethod
    def gen(cls, g: Generator, exponent: int = 1) -> "Word":
        sign = 1 if exponent > 0 else -1
        return cls._trusted((Letter(g, sign),) * abs(exponent))

    @classmethod
    def of(cls, *parts) -> "Word":
        """Build a word from generators, ``(generator, exponent)`` pairs or words."""
        stack: list = []
        for part in parts:
            if isinstance(part, Word):
                for letter in part.letters:
                    _push(stack, letter)
            elif isinstance(part, Generator):
                _push(stack, Letter(part, 1))
            else:
                g, e = part
                for letter in cls.gen(g, e).letters:
                    _push(stack, letter)
        return cls._trusted(tuple(stack))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else invert(self)
        out = Word()
        for _ in range(abs(n)):
            out = multiply(out, base)
        return out

    def generators(self) -> set:
        return {letter.gen for letter in self.letters}

    def syllables(self) -> list:
        """Run-length form: list of ``(generator, exponent)`` pairs."""
        out: list = []
        for g, s in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += s
            else:
                out.append([g, s])
        return [(g, e) for g, e in out]

    def sort_key(self):
        return tuple((g.sort_key(), -s) for g, s in self.letters)

    def __repr__(self) -> str:
        if not self.letters:
            return "Word(1)"
        parts = [str(g) if e == 1 else f"{g}^{e}" for g, e in self.syllables()]
        return f"Word({'*'.join(parts)})"


def reduce(letters: Iterable[Letter]) -> Word:
    return Word(letters)


def invert(w: Word) -> Word:
    table = {letter: Letter(letter.gen, -letter.sign) for letter in set(w.letters)}
    return Word._trusted(tuple(map(table.__getitem__, reversed(w.letters))))


def multiply(u: Word, v: Word) -> Word:
    left, right = u.letters, v.letters
    k = 0
    limit = min(len(left), len(right))
    while k < limit:
        a, b = left[-1 - k], right[k]
        if a.gen != b.gen or a.sign != -b.sign:
            break
        k += 1
    return Word._trusted(left[: len(left) - k] + right[k:])


def exp_sum(w: Word, x: Generator) -> int:
    return sum(s for g, s in w.letters if g == x)


def cyclic_reduce(w: Word) -> Word:
    letters = w.letters
    i, j = 0, len(letters) - 1
    while i < j and letters[i].gen == letters[j].gen and letters[i].sign == -letters[j].sign:
        i += 1
        j -= 1
    return Word._trusted(letters[i : j + 1])


def substitute(w: Word, images: Mapping[Generator, Word]) -> Word:
    """Apply the homomorphism of free groups given by ``images`` to ``w``."""
    table = {}
    for letter in set(w.letters):
        g, s = letter
        try:
            image = images[g]
        except KeyError:
            raise AlphabetError(f"generator {g} has no image") from None
        seq = image.letters if s > 0 else invert(image).letters
        table[letter] = (seq, Letter(seq[0].gen, -seq[0].sign) if seq else None)
    stack: list = []
    for seq, head_inverse in map(table.__getitem__, w.letters):
        # images are reduced, so cancellation only happens at the seam
        if stack and stack[-1] == head_inverse:
            k, n = 0, len(seq)
            while k < n and stack and stack[-1] == (seq[k].gen, -seq[k].sign):
                stack.pop()
                k += 1
            stack.extend(seq[k:])
        else:
            stack.extend(seq)
    return Word._trusted(tuple(stack))


class FreeEndomorphism:
    """A total map from a finite alphabet to words over the same alphabet.

    Equality is extensional: two endomorphisms are equal when their image
    maps agree after reduction.
    """

    __slots__ = ("alphabet", "images", "_hash")

    def __init__(self, alphabet: Sequence[Generator], images: Mapping[Generator, Word]):
        alphabet = tuple(alphabet)
        members = set(alphabet)
        if len(members) != len(alphabet):
            raise ValueError("alphabet has repeated generators")
        missing = [g for g in alphabet if g not in images]
        if missing:
            raise AlphabetError(f"no image for {', '.join(map(str, missing))}")
        extra = [g for g in images if g not in members]
        if extra:
            raise AlphabetError(f"image given for {', '.join(map(str, extra))} outside the alphabet")
        for g in alphabet:
            stray = images[g].generators() - members
            if stray:
                raise AlphabetError(
                    f"image of {g} uses {', '.join(sorted(map(str, stray)))} outside the alphabet"
                )
        self.alphabet = alphabet
        self.images = {g: images[g] for g in alphabet}
        self._hash = None

    @classmethod
    def identity(cls, alphabet: Sequence[Generator]) -> "FreeEndomorphism":
        return cls(alphabet, {g: Word.gen(g) for g in alphabet})

    def __call__(self, w: Word) -> Word:
        return apply_endo(self, w)

    def __getitem__(self, g: Generator) -> Word:
        return self.images[g]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FreeEndomorphism) and self.images == other.images

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.images.items()))
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{g}->{w!r}" for g, w in self.images.items())
        return f"FreeEndomorphism({body})"


def apply_endo(f: FreeEndomorphism, w: Word) -> Word:
    return substitute(w, f.images)


def compose(f: FreeEndomorphism, g: FreeEndomorphism) -> FreeEndomorphism:
    """Return ``f o g``, i.e. ``x -> f(g(x))``."""
    if set(f.alphabet) != set(g.alphabet):
        raise AlphabetError("cannot compose endomorphisms over different alphabets")
    return FreeEndomorphism(g.alphabet, {x: apply_endo(f, g.images[x]) for x in g.alphabet})


def monoid_levels(
    endos: Sequence[FreeEndomorphism],
    depth: int,
    alphabet: Optional[Sequence[Generator]] = None,
) -> list:
    """Breadth-first walk of the free monoid on ``endos`` up to ``depth``.

    Returns ``(length, endomorphism)`` pairs starting with the identity.
    Entries extensionally equal to an earlier one are dropped, and so are
    their extensions (they coincide with extensions of the earlier entry).
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    endos = list(endos)
    if alphabet is None:
        alphabet = endos[0].alphabet if endos else ()
    identity = FreeEndomorphism.identity(alphabet)
    seen = {identity}
    out = [(0, identity)]
    frontier = [identity]
    for k in range(1, depth + 1):
        nxt = []
        for prefix in frontier:
            for phi in endos:
                h = compose(prefix, phi)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    out.append((k, h))
        if not nxt:
            break
        frontier = nxt
    return out


def enumerate_monoid(
    endos: Sequence[FreeEndomorphism],
    depth: int,
    alphabet: Optional[Sequence[Generator]] = None,
) -> list:
    return [h for _, h in monoid_levels(endos, depth, alphabet)]
