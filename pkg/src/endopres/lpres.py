"""Finite presentations and finite L-presentations.

An L-presentation ``<X | Q | R | Phi>`` presents ``F(X)/N`` where ``N`` is the
normal closure of ``Q`` together with every image of ``R`` under the free
monoid generated by ``Phi``.  :func:`expand` materialises that relator set up
to a bounded composition length.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from .errors import AlphabetError, DegreeError, NotAscendingError
from .freegroup import (
    Generator,
    Word,
    cyclic_reduce,
    invert,
    monoid_levels,
    multiply,
    substitute,
)

__all__ = [
    "FinitePresentation",
    "LPresentation",
    "ExpansionReport",
    "expand",
    "classify",
    "check_dyck_hom",
    "hnn_embed",
    "cyclic_key",
]


def _check_words(words, members, what):
    for w in words:
        stray = w.generators() - members
        if stray:
            raise AlphabetError(
                f"{what} uses {', '.join(sorted(map(str, stray)))} outside the generators"
            )


def total_degree(w: Word, degree: Mapping[Generator, int]) -> int:
    return sum(s * degree[g] for g, s in w.letters)


@dataclass(frozen=True)
class FinitePresentation:
    generators: tuple
    relators: tuple = ()
    degree: Optional[dict] = None

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("repeated generator in presentation")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))
        members = set(gens)
        _check_words(self.relators, members, "relator")
        if self.degree is not None:
            unknown = [g for g in self.degree if g not in members]
            if unknown:
                raise DegreeError(f"degree assigned to unknown generator {unknown[0]}")
            degree = {g: int(self.degree.get(g, 0)) for g in gens}
            object.__setattr__(self, "degree", degree)
            for r in self.relators:
                if total_degree(r, degree) != 0:
                    raise DegreeError(
                        f"relator {r!r} has total degree {total_degree(r, degree)}, "
                        "so the degree map does not induce a map onto Z"
                    )

    def __hash__(self):
        return hash((self.generators, self.relators))


@dataclass(frozen=True)
class LPresentation:
    generators: tuple
    fixed: tuple = ()
    seeds: tuple = ()
    endos: dict = field(default_factory=dict)

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("repeated generator in L-presentation")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "fixed", tuple(self.fixed))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "endos", dict(self.endos))
        members = set(gens)
        _check_words(self.fixed, members, "fixed relator")
        _check_words(self.seeds, members, "seed relator")
        for name, phi in self.endos.items():
            if set(phi.alphabet) != members:
                raise AlphabetError(f"endomorphism {name} is not defined on exactly the generators")

    def ascending(self) -> bool:
        return not self.fixed

    def __hash__(self):
        return hash((self.generators, self.fixed, self.seeds))


@dataclass(frozen=True)
class ExpansionReport:
    depth: int
    dedup: str
    entries: tuple  # (depth, word) in emission order
    generated: tuple  # per depth, before dedup
    kept: tuple  # per depth, after dedup

    @property
    def relators(self) -> list:
        return [w for _, w in self.entries]


def _least_rotation(letters: tuple) -> tuple:
    n = len(letters)
    if n == 0:
        return ()
    keys = [(g.sort_key(), -s) for g, s in letters]
    best = min(range(n), key=lambda i: keys[i:] + keys[:i])
    return tuple(keys[best:] + keys[:best])


def cyclic_key(w: Word) -> tuple:
    """Canonical key of ``w`` up to cyclic permutation and inversion."""
    c = cyclic_reduce(w)
    return min(_least_rotation(c.letters), _least_rotation(invert(c).letters))


def expand(
    lp: LPresentation,
    depth: int,
    dedup: str = "exact",
    jobs: int = 1,
) -> ExpansionReport:
    """Relators ``Q`` plus ``phi(r)`` for ``phi`` in ``Phi*`` of length <= depth.

    Ordering is by depth, then seed index (fixed relators first), then the
    canonical print.  Trivial words are dropped since they add nothing to
    the normal closure.
    """
    from .presfmt import print_word

    if dedup not in ("exact", "cyclic"):
        raise ValueError(f"unknown dedup mode {dedup!r}")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    levels = monoid_levels(list(lp.endos.values()), depth, lp.generators)

    def images(item):
        k, phi = item
        return [(k, idx, phi(r)) for idx, r in enumerate(lp.seeds)]

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            produced = [x for chunk in pool.map(images, levels) for x in chunk]
    else:
        produced = [x for item in levels for x in images(item)]

    # fixed relators keep their order ahead of every seed image
    candidates = [(0, i - len(lp.fixed), w) for i, w in enumerate(lp.fixed)] + produced
    candidates.sort(key=lambda c: (c[0], c[1], print_word(c[2])))

    generated = [0] * (depth + 1)
    kept = [0] * (depth + 1)
    seen = set()
    entries = []
    for k, _, w in candidates:
        generated[k] += 1
        if not w:
            continue
        key = w if dedup == "exact" else cyclic_key(w)
        if key in seen:
            continue
        seen.add(key)
        kept[k] += 1
        entries.append((k, w))
    return ExpansionReport(depth, dedup, tuple(entries), tuple(generated), tuple(kept))


def classify(lp: LPresentation) -> dict:
    # in-memory presentations are finite by construction
    return {"finite": True, "ascending": lp.ascending()}


def check_dyck_hom(
    p: FinitePresentation,
    images: Mapping[Generator, Word],
    is_trivial: Callable[[Word], bool],
) -> bool:
    """True iff every relator of ``p`` maps to a trivial element.

    Then ``images`` induces a well-defined homomorphism out of the presented
    group.
    """
    missing = [g for g in p.generators if g not in images]
    if missing:
        raise AlphabetError(f"no image for {', '.join(map(str, missing))}")
    return all(is_trivial(substitute(r, images)) for r in p.relators)


def _fresh(name: str, taken: set) -> Generator:
    while name in taken:
        name += "_"
    return Generator(name)


def hnn_embed(lp: LPresentation) -> FinitePresentation:
    """One stable letter ``t_<name>`` per endomorphism conjugating ``x`` to ``phi(x)``."""
    if not lp.ascending():
        raise NotAscendingError(
            "HNN embedding needs an ascending L-presentation (no fixed relators)"
        )
    taken = {g.name for g in lp.generators}
    stable = []
    for name in lp.endos:
        t = _fresh(f"t_{name}", taken)
        taken.add(t.name)
        stable.append(t)
    relators = list(lp.seeds)
    for t, phi in zip(stable, lp.endos.values()):
        tw = Word.gen(t)
        for x in lp.generators:
            conj = multiply(multiply(invert(tw), Word.gen(x)), tw)
            relators.append(multiply(conj, invert(phi[x])))
    return FinitePresentation(lp.generators + tuple(stable), tuple(relators))
