"""Pulling window words back to the ambient group and checking relator sets."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

from ..errors import AlphabetError, PreconditionError
from ..freegroup import Generator, Word, _push, invert
from ..lpres import FinitePresentation, LPresentation, expand
from .dyadic import builtin_images, dyadic_eval
from .grigorchuk import grig_witness
from .snf import exponent_vector, lattice_solve, relator_matrix, snf

# An oracle maps a word to None when it is trivial, otherwise to a short
# witness string without whitespace.
Oracle = Callable[[Word], Optional[str]]


@dataclass(frozen=True)
class PullbackMap:
    """How to read window words as words of the ambient group.

    An indexed letter ``x@i`` becomes ``via^-i * image(x) * via^i`` where
    ``image(x)`` defaults to ``x`` itself; an unindexed letter needs an
    explicit entry in ``images``.
    """

    via: Generator = Generator("t")
    images: dict = field(default_factory=dict)  # generator name -> Word
    target: Optional[tuple] = None
    affine: Optional[dict] = None  # Generator -> tuple of AffineMap

    def __call__(self, w: Word) -> Word:
        return pullback(w, self.via, self.images)


def pullback(w: Word, t: Generator, images: Optional[Mapping[str, Word]] = None) -> Word:
    images = images or {}
    cache = {}
    stack: list = []
    for g, s in w.letters:
        key = (g, s)
        seq = cache.get(key)
        if seq is None:
            if g.indexed:
                core = images.get(g.name)
                if core is None:
                    core = Word.gen(Generator(g.name))
                conj = Word.of((t, -g.level), core, (t, g.level))
            elif g.name in images:
                conj = images[g.name]
            else:
                raise PreconditionError(f"cannot pull back unindexed letter {g} without an image")
            seq = cache[key] = (conj if s > 0 else invert(conj)).letters
        for letter in seq:
            _push(stack, letter)
    return Word._trusted(tuple(stack))


@dataclass
class VerificationReport:
    total: int = 0
    failures: list = field(default_factory=list)  # (relator, depth, witness)
    oracle: str = ""
    necessary_only: bool = False

    @property
    def verified(self) -> bool:
        return not self.failures

    def text(self) -> str:
        from ..presfmt import print_word

        lines = []
        if self.necessary_only:
            lines.append(f"# oracle {self.oracle}: necessary condition only, a pass is not a proof")
        for w, k, witness in self.failures:
            lines.append(f"FAIL {k} {print_word(w)} {witness}")
        if self.verified:
            lines.append(f"OK {self.total}")
        else:
            lines.append(f"FAILED {len(self.failures)}/{self.total}")
        return "\n".join(lines) + "\n"


def grigorchuk_oracle() -> Oracle:
    return grig_witness


def dyadic_oracle(images: Optional[Mapping[Generator, Sequence]] = None) -> Oracle:
    """Oracle evaluating words through affine images (built-in tables if None)."""

    def check(w: Word) -> Optional[str]:
        table = images if images is not None else builtin_images(w.generators())
        if table is None:
            raise AlphabetError(
                "no affine images for generators "
                + " ".join(sorted(map(str, w.generators())))
            )
        value = dyadic_eval(w, table)
        if all(m.is_identity() for m in value):
            return None
        return ";".join(map(str, value))

    return check


class AbelianOracle:
    """Relator-lattice membership of the exponent vector; necessary condition only."""

    necessary_only = True

    def __init__(self, p: FinitePresentation):
        self.generators = p.generators
        self.matrix = relator_matrix(p)
        if self.matrix:
            snf(self.matrix)  # fail early on malformed input

    @classmethod
    def from_lpres(cls, lp: LPresentation) -> "AbelianOracle":
        """Oracle for the abelianization of the L-presented group itself.

        The lattice is spanned by ``Q`` and the orbit of ``R`` under the
        abelianized endomorphisms.  Ascending chains of lattices stabilize,
        so the closure loop ends.
        """
        gens = lp.generators
        actions = [[exponent_vector(phi[x], gens) for x in gens] for phi in lp.endos.values()]
        orbit = []
        queue = [exponent_vector(w, gens) for w in lp.seeds]
        while queue:
            v = queue.pop()
            if not any(v) or lattice_solve(orbit, v) is not None:
                continue
            orbit.append(v)
            for images in actions:
                queue.append([sum(c * img[j] for c, img in zip(v, images)) for j in range(len(gens))])
        oracle = cls.__new__(cls)
        oracle.generators = gens
        oracle.matrix = [exponent_vector(w, gens) for w in lp.fixed] + orbit
        return oracle

    def __call__(self, w: Word) -> Optional[str]:
        vec = exponent_vector(w, self.generators)
        if lattice_solve(self.matrix, vec) is None:
            return "abelianization:not-in-relator-lattice"
        return None


def verify_lpres(
    lp: LPresentation,
    depth: int,
    oracle: Oracle,
    pull: Optional[Callable[[Word], Word]] = None,
    dedup: str = "exact",
    jobs: int = 1,
    name: str = "",
) -> VerificationReport:
    report = expand(lp, depth, dedup=dedup, jobs=jobs)

    def check(entry):
        k, w = entry
        target = pull(w) if pull is not None else w
        return k, w, oracle(target)

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(check, report.entries))
    else:
        results = [check(e) for e in report.entries]
    failures = [(w, k, witness) for k, w, witness in results if witness is not None]
    return VerificationReport(
        total=len(results),
        failures=failures,
        oracle=name,
        necessary_only=getattr(oracle, "necessary_only", False),
    )
