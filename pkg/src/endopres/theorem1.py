"""Ascending finite L-presentations for kernels of maps onto Z.

Given a finite presentation with a degree map onto the integers and a set
of boundary certificates, :func:`derive_lpres` produces an L-presentation
of the kernel over the window alphabet ``{a_{j,i} : |i| <= N}`` with two
endomorphisms ``eta`` (shift up) and ``tau`` (shift down).

Certificates are input, never searched for: finding a window word equal to
``a_{j,N+1}`` in the kernel is a membership problem with no general
algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .errors import AlphabetError, CertificateError, DegreeError, PreconditionError, WindowError
from .freegroup import (
    FreeEndomorphism,
    Generator,
    Letter,
    Word,
    apply_endo,
    exp_sum,
    substitute,
)
from .lpres import FinitePresentation, LPresentation

__all__ = [
    "NormalizedPresentation",
    "WindowAlphabet",
    "CertificateSet",
    "DerivedLPresentation",
    "neumann_normalize",
    "rs_rewrite",
    "shift",
    "window_bound",
    "gamma",
    "gamma_word",
    "build_endos",
    "derive_lpres",
    "lemma5_check",
    "lemma5_failures",
]


@dataclass(frozen=True)
class NormalizedPresentation:
    t: Generator
    base: tuple
    relators: tuple
    flipped: bool = False  # the original t had degree -1
    substitutions: tuple = ()  # (new base generator, original generator, degree)

    def __post_init__(self):
        for r in self.relators:
            if exp_sum(r, self.t) != 0:
                raise DegreeError(f"relator {r!r} has nonzero exponent sum in {self.t}")
        members = set(self.base) | {self.t}
        for r in self.relators:
            stray = r.generators() - members
            if stray:
                raise AlphabetError(f"relator uses {', '.join(sorted(map(str, stray)))}")


def _fresh(name: str, taken: set) -> str:
    while name in taken:
        name += "_"
    return name


def neumann_normalize(p: FinitePresentation, t: Generator) -> NormalizedPresentation:
    """Tietze-rewrite ``p`` so every generator but ``t`` has degree 0.

    Each generator ``g`` of nonzero degree is replaced by ``g * t^-deg(g)``
    under the name ``<g>_<t>``.  If ``t`` has degree -1 it is replaced by its
    inverse first.
    """
    if p.degree is None:
        raise DegreeError("presentation has no degree map")
    if t not in p.generators:
        raise AlphabetError(f"{t} is not a generator of the presentation")
    indexed = [g for g in p.generators if g.indexed]
    if indexed:
        raise PreconditionError(f"generator {indexed[0]} is already level-indexed")
    d_t = p.degree[t]
    if d_t not in (1, -1):
        raise DegreeError(
            f"distinguished generator {t} has degree {d_t}; it must be +1 or -1"
        )
    flipped = d_t == -1
    taken = {g.name for g in p.generators}
    images = {t: Word.gen(t, d_t)}
    base = []
    subs = []
    for g in p.generators:
        if g == t:
            continue
        d = p.degree[g]
        if d == 0:
            base.append(g)
            images[g] = Word.gen(g)
        else:
            b = Generator(_fresh(f"{g.name}_{t.name}", taken))
            taken.add(b.name)
            base.append(b)
            subs.append((b, g, d))
            images[g] = Word.of(b, (t, d))
    relators = []
    for r in p.relators:
        w = substitute(r, images)
        if exp_sum(w, t) != 0:
            raise DegreeError(f"relator {r!r} has nonzero total degree")
        relators.append(w)
    return NormalizedPresentation(t, tuple(base), tuple(relators), flipped, tuple(subs))


def rs_rewrite(w: Word, np: Union[NormalizedPresentation, Generator]) -> Word:
    """Rewrite a zero-exponent word as a word in the ``a_{j,i}``.

    A base letter read after a prefix of total t-exponent ``c`` becomes the
    same letter at level ``-c``, so that ``t^-i a t^i`` rewrites to ``a@i``.
    """
    t = np if isinstance(np, Generator) else np.t
    if exp_sum(w, t) != 0:
        raise PreconditionError(f"word {w!r} has nonzero exponent sum in {t}")
    c = 0
    out = []
    for g, s in w.letters:
        if g == t:
            c += s
        elif g.indexed:
            raise PreconditionError(f"letter {g} is already level-indexed")
        else:
            out.append(Letter(g.at(-c), s))
    return Word(out)


def shift(w: Word, k: int) -> Word:
    table = {}
    for letter in set(w.letters):
        g = letter.gen
        if not g.indexed:
            raise PreconditionError(f"cannot shift unindexed letter {g}")
        table[letter] = Letter(Generator(g.name, g.level + k), letter.sign)
    return Word._trusted(tuple(map(table.__getitem__, w.letters)))


def window_bound(words: Iterable[Word]) -> int:
    return max((abs(g.level) for w in words for g in w.generators() if g.indexed), default=0)


@dataclass(frozen=True)
class WindowAlphabet:
    base: tuple  # plain generators a_1 .. a_m
    bound: int

    def __post_init__(self):
        object.__setattr__(self, "base", tuple(self.base))
        if self.bound < 0:
            raise ValueError("window bound must be non-negative")
        if any(g.indexed for g in self.base):
            raise ValueError("window base generators must be unindexed")

    @property
    def generators(self) -> tuple:
        n = self.bound
        return tuple(g.at(i) for g in self.base for i in range(-n, n + 1))

    def __contains__(self, g: Generator) -> bool:
        return (
            g.indexed and abs(g.level) <= self.bound and Generator(g.name) in self.base
        )

    def __len__(self) -> int:
        return len(self.base) * (2 * self.bound + 1)


@dataclass(frozen=True)
class CertificateSet:
    """Boundary words ``up[a] = a@(N+1)`` and ``down[a] = a@-(N+1)`` in the kernel.

    Only the syntax is checked here.  Whether the words really represent
    those elements is the caller's obligation; an oracle can certify it.
    """

    window: WindowAlphabet
    up: dict
    down: dict
    _memo: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        base = set(self.window.base)
        for label, rows in (("up", self.up), ("down", self.down)):
            if set(rows) != base:
                missing = sorted(map(str, base - set(rows)))
                extra = sorted(map(str, set(rows) - base))
                raise CertificateError(
                    f"{label} certificates do not match the base generators"
                    + (f"; missing {', '.join(missing)}" if missing else "")
                    + (f"; unexpected {', '.join(extra)}" if extra else "")
                )
            for g, w in rows.items():
                bad = [x for x in w.generators() if x not in self.window]
                if bad:
                    raise CertificateError(
                        f"{label} certificate for {g} uses {bad[0]} outside the window "
                        f"|level| <= {self.window.bound}"
                    )

    @property
    def bound(self) -> int:
        return self.window.bound

    def __hash__(self):
        return hash((self.window, tuple(self.up.items()), tuple(self.down.items())))


@dataclass(frozen=True)
class DerivedLPresentation:
    lp: LPresentation
    eta: FreeEndomorphism
    tau: FreeEndomorphism
    normalized: NormalizedPresentation
    certs: CertificateSet
    n_min: int


def _base_gen(certs: CertificateSet, j) -> Generator:
    if isinstance(j, int):
        return certs.window.base[j]
    g = Generator(j) if isinstance(j, str) else Generator(j.name)
    if g not in certs.window.base:
        raise AlphabetError(f"{g} is not a base generator of the window")
    return g


def gamma(certs: CertificateSet, j, i: int) -> Word:
    """Window word for ``a_{j,i}``, unfolded from the certificates.

    Levels inside the window map to themselves, ``+-(N+1)`` to the
    certificates, and further levels via ``gamma(a_{j,i+1}) = gamma(s(gamma(a_{j,i})))``
    (mirrored below the window).  Results are memoised on ``certs``.
    """
    g = _base_gen(certs, j)
    n = certs.bound
    if abs(i) <= n:
        return Word.gen(g.at(i))
    memo = certs._memo
    if (g, i) in memo:
        return memo[(g, i)]
    step = 1 if i > 0 else -1
    level = step * (n + 1)
    memo.setdefault((g, level), (certs.up if step > 0 else certs.down)[g])
    while level != i:
        nxt = level + step
        if (g, nxt) not in memo:
            memo[(g, nxt)] = gamma_word(certs, shift(memo[(g, level)], step))
        level = nxt
    return memo[(g, i)]


def gamma_word(certs: CertificateSet, w: Word) -> Word:
    """Apply ``gamma`` letterwise to an indexed word and reduce."""
    images = {}
    for x in w.generators():
        if not x.indexed:
            raise PreconditionError(f"gamma needs indexed letters, got {x}")
        images[x] = gamma(certs, x.name, x.level)
    return substitute(w, images)


def build_endos(certs: CertificateSet) -> tuple:
    n = certs.bound
    gens = certs.window.generators
    eta, tau = {}, {}
    for x in gens:
        base = Generator(x.name)
        eta[x] = certs.up[base] if x.level == n else Word.gen(base.at(x.level + 1))
        tau[x] = certs.down[base] if x.level == -n else Word.gen(base.at(x.level - 1))
    return FreeEndomorphism(gens, eta), FreeEndomorphism(gens, tau)


def derive_lpres(
    p: FinitePresentation,
    t: Generator,
    certs: Optional[CertificateSet],
    n: Optional[int] = None,
) -> DerivedLPresentation:
    """Normalize, rewrite each relator to level 0, check the window, assemble."""
    np = neumann_normalize(p, t)
    seeds = [rs_rewrite(r, np) for r in np.relators]
    n_min = window_bound(seeds)
    if n is not None and n < n_min:
        raise WindowError(f"N = {n} is too small; the rewritten relators need N >= {n_min}", n_min)
    if certs is None:
        raise CertificateError(
            "certificates required: boundary words for a_{j,N+1} and a_{j,-(N+1)} "
            f"must be supplied (N >= {n_min})"
        )
    if certs.bound < n_min:
        raise WindowError(
            f"certificate N = {certs.bound} is too small; the rewritten relators need "
            f"N >= {n_min}",
            n_min,
        )
    if n is not None and n != certs.bound:
        raise CertificateError(f"requested N = {n} but the certificates are for N = {certs.bound}")
    if set(certs.window.base) != set(np.base):
        raise CertificateError(
            "certificate generators "
            + " ".join(sorted(g.name for g in certs.window.base))
            + " do not match the normalized base generators "
            + " ".join(g.name for g in np.base)
        )
    window = WindowAlphabet(np.base, certs.bound)
    if window != certs.window:
        certs = CertificateSet(window, certs.up, certs.down)
    eta, tau = build_endos(certs)
    lp = LPresentation(window.generators, (), tuple(seeds), {"eta": eta, "tau": tau})
    return DerivedLPresentation(lp, eta, tau, np, certs, n_min)


def _as_range(i_range) -> list:
    if isinstance(i_range, tuple) and len(i_range) == 2:
        lo, hi = i_range
        return list(range(lo, hi + 1))
    return sorted(i_range)


def lemma5_failures(certs: CertificateSet, seeds: Iterable[Word], i_range) -> list:
    """Pairs ``(seed index, i)`` where ``gamma(shift(r, i))`` differs from the
    matching ``eta``/``tau`` power applied to ``r``."""
    eta, tau = build_endos(certs)
    indices = _as_range(i_range)
    failures = []
    for k, r in enumerate(seeds):
        powers = {0: r}
        up = r
        for i in range(1, max([0] + indices) + 1):
            up = apply_endo(eta, up)
            powers[i] = up
        down = r
        for i in range(-1, min([0] + indices) - 1, -1):
            down = apply_endo(tau, down)
            powers[i] = down
        for i in indices:
            if gamma_word(certs, shift(r, i)) != powers[i]:
                failures.append((k, i))
    return failures


def lemma5_check(certs: CertificateSet, seeds: Iterable[Word], i_range) -> bool:
    return not lemma5_failures(certs, seeds, i_range)
