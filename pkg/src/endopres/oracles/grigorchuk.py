"""Word problem of the first Grigorchuk group via its wreath recursion.

``a`` swaps the two subtrees at the root; ``b = (a, c)``, ``c = (a, d)``,
``d = (1, b)``.  Words are handled as strings over ``abcd``; inverse signs
are dropped since every generator is an involution.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional, Union

from ..errors import AlphabetError
from ..freegroup import Word

_KLEIN = {
    ("b", "c"): "d", ("c", "b"): "d",
    ("b", "d"): "c", ("d", "b"): "c",
    ("c", "d"): "b", ("d", "c"): "b",
}
_SECTIONS = {"b": ("a", "c"), "c": ("a", "d"), "d": ("", "b")}


def as_grig_word(w: Union[Word, str]) -> str:
    if isinstance(w, str):
        bad = set(w) - set("abcd")
        if bad:
            raise AlphabetError(f"letters {''.join(sorted(bad))} are not in abcd")
        return w
    out = []
    for g, _ in w.letters:
        if g.indexed or g.name not in ("a", "b", "c", "d"):
            raise AlphabetError(f"generator {g} is not one of a, b, c, d")
        out.append(g.name)
    return "".join(out)


def grig_normalize(w: Union[Word, str]) -> str:
    """Cancel ``x^2`` and multiply adjacent letters of ``{b, c, d}``.

    The result alternates ``a`` with single letters of ``{b, c, d}``.
    """
    stack = []
    for ch in as_grig_word(w):
        if stack and stack[-1] == ch:
            stack.pop()
        elif stack and ch != "a" and stack[-1] != "a":
            stack[-1] = _KLEIN[(stack[-1], ch)]
        else:
            stack.append(ch)
    return "".join(stack)


def _sections(s: str) -> tuple:
    swap = s.count("a") % 2 == 1
    halves = []
    for start in (0, 1):
        pos = start
        out = []
        for ch in s:
            if ch == "a":
                pos ^= 1
            else:
                out.append(_SECTIONS[ch][pos])
        halves.append("".join(out))
    return swap, halves[0], halves[1]


def grig_sections(w: Union[Word, str]) -> tuple:
    """``(root_swap, left, right)`` of the normalized word.

    Sections are read with the word acting on the right, letter by letter.
    """
    swap, left, right = _sections(grig_normalize(w))
    return swap, grig_normalize(left), grig_normalize(right)


@lru_cache(maxsize=1 << 16)
def _witness(s: str) -> Optional[tuple]:
    if not s:
        return None
    if len(s) == 1:
        return ("", f"letter-{s}")
    swap, left, right = _sections(s)
    if swap:
        return ("", "swap")
    for branch, sub in (("0", left), ("1", right)):
        found = _witness(grig_normalize(sub))
        if found is not None:
            return (branch + found[0], found[1])
    return None


def grig_witness(w: Union[Word, str]) -> Optional[str]:
    """None if ``w`` is trivial, else the first vertex where it acts nontrivially."""
    found = _witness(grig_normalize(w))
    if found is None:
        return None
    path, reason = found
    return f"vertex={path or 'root'}:{reason}"


def grig_is_trivial(w: Union[Word, str]) -> bool:
    return grig_witness(w) is None
