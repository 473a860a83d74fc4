"""Random generators and small independent reference implementations."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from endopres.freegroup import Generator, Letter, Word

PLAIN = tuple(Generator(c) for c in "abcd")


def letters_strategy(gens=PLAIN, max_size=12):
    return st.lists(
        st.builds(Letter, st.sampled_from(gens), st.sampled_from((1, -1))),
        max_size=max_size,
    )


def words(gens=PLAIN, max_size=12):
    return letters_strategy(gens, max_size).map(Word)


def naive_reduce(letters) -> list:
    """Delete one adjacent inverse pair at a time until none is left."""
    out = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(out) - 1):
            (g, s), (h, r) = out[i], out[i + 1]
            if g == h and s == -r:
                del out[i : i + 2]
                changed = True
                break
    return out


def random_letters(rng: random.Random, gens, n: int) -> list:
    return [Letter(rng.choice(gens), rng.choice((1, -1))) for _ in range(n)]


def random_word(rng: random.Random, gens, n: int) -> Word:
    return Word(random_letters(rng, gens, n))


# Grigorchuk group acting on finite binary strings, straight from the
# defining recursion; shares no code with the oracle under test.
def _act(letter: str, v: tuple) -> tuple:
    if not v:
        return v
    x, rest = v[0], v[1:]
    if letter == "a":
        return (1 - x,) + rest
    table = {"b": ("a", "c"), "c": ("a", "d"), "d": (None, "b")}
    nxt = table[letter][x]
    return (x,) + (_act(nxt, rest) if nxt else rest)


def grig_acts_trivially(word: str, depth: int) -> bool:
    vertices = [()]
    for _ in range(depth):
        vertices = [v + (b,) for v in vertices for b in (0, 1)]
    for v in vertices:
        w = v
        for ch in word:
            w = _act(ch, w)
        if w != v:
            return False
    return True
