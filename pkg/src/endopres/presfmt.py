"""Text formats for words, presentations, L-presentations, certificates and
pullback maps.

Word grammar (whitespace between tokens is ignored)::

    word  := term { ["*"] term }
    term  := atom { "^" (int | atom) }
    atom  := ident | "(" word ")" | "[" word "," word "]" | "1"
    ident := letter { letter | digit | "_" } [ "@" int ]
    int   := ["-"] digit { digit }

``x^n`` is a power, ``x^y`` is ``y^-1 x y`` and ``[x,y]`` is
``x^-1 y^-1 x y``.  ``a^t^u`` reads as ``(a^t)^u``.

Documents are line oriented.  A ``[section]`` header is followed by
``key = value`` lines; ``#`` starts a comment.  List-valued keys (``gens``,
``rels``, ``fixed``, ``seeds``, ``endo <name>``) may be repeated and
accumulate.  Printers emit a canonical form that parses back to an equal
value.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple, Optional

from .freegroup import FreeEndomorphism, Generator, Word, invert, multiply
from .lpres import ExpansionReport, FinitePresentation, LPresentation
from .oracles.dyadic import AffineMap, DyadicRational
from .oracles.verify import PullbackMap
from .theorem1 import CertificateSet, WindowAlphabet

__all__ = [
    "SourceSpan",
    "ParseError",
    "UnknownGeneratorError",
    "WindowViolationError",
    "MissingRowError",
    "parse_word",
    "parse_presentation",
    "parse_lpres",
    "parse_certs",
    "parse_map",
    "parse_document",
    "print_word",
    "print_presentation",
    "print_lpres",
    "print_certs",
    "print_map",
    "print_expansion",
]


@dataclass(frozen=True)
class SourceSpan:
    line: int
    column: int

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


class ParseError(ValueError):
    def __init__(self, span: SourceSpan, expected: str, found: str, detail: str = ""):
        self.span = span
        self.expected = expected
        self.found = found
        self.detail = detail
        msg = f"{span}: expected {expected}, found {found!r}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class UnknownGeneratorError(ParseError):
    def __init__(self, span: SourceSpan, identifier: str, expected: str = "a declared generator"):
        self.identifier = identifier
        super().__init__(span, expected, identifier, f"unknown generator {identifier}")


class WindowViolationError(ParseError):
    pass


class MissingRowError(ParseError):
    pass


# -- lexing -----------------------------------------------------------------

class Token(NamedTuple):
    kind: str  # ident, int, arrow, end, or the punctuation character itself
    text: str
    span: SourceSpan


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<arrow>->)
    |(?P<ident>[A-Za-z][A-Za-z0-9_]*(?:@-?[0-9]+)?)
    |(?P<int>-?[0-9]+)
    |(?P<punct>[*^()\[\],;:/])
    """,
    re.VERBOSE,
)


def _lex(text: str, line: int = 1, column: int = 1) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        span = SourceSpan(line, column + pos)
        if m is None:
            raise ParseError(span, "a token", text[pos])
        kind = m.lastgroup
        if kind == "punct":
            kind = m.group()
        if kind != "ws":
            tokens.append(Token(kind, m.group(), span))
        pos = m.end()
    tokens.append(Token("end", "", SourceSpan(line, column + len(text))))
    return tokens


def _found(tok: Token) -> str:
    return "end of input" if tok.kind == "end" else tok.text


def _ident_generator(tok: Token) -> Generator:
    name, _, level = tok.text.partition("@")
    return Generator(name, int(level) if level else None)


# -- words ------------------------------------------------------------------

Resolver = Callable[[Token], Generator]


def _alphabet_resolver(alphabet: Optional[Iterable[Generator]]) -> Resolver:
    members = None if alphabet is None else set(alphabet)

    def resolve(tok: Token) -> Generator:
        g = _ident_generator(tok)
        if members is not None and g not in members:
            raise UnknownGeneratorError(tok.span, tok.text)
        return g

    return resolve


class _Parser:
    def __init__(self, tokens: list, resolve: Resolver):
        self.tokens = tokens
        self.pos = 0
        self.resolve = resolve

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "end":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(tok.span, what, _found(tok))
        return self.advance()

    def at_end(self) -> bool:
        return self.peek().kind == "end"

    def _starts_atom(self, tok: Token) -> bool:
        return tok.kind in ("ident", "(", "[") or (tok.kind == "int" and tok.text == "1")

    def word(self) -> Word:
        w = self.term()
        while True:
            tok = self.peek()
            if tok.kind == "*":
                self.advance()
                w = multiply(w, self.term())
            elif self._starts_atom(tok):
                w = multiply(w, self.term())
            else:
                return w

    def term(self) -> Word:
        w = self.atom()
        while self.peek().kind == "^":
            self.advance()
            tok = self.peek()
            if tok.kind == "int":
                self.advance()
                w = w ** int(tok.text)
            elif self._starts_atom(tok):
                c = self.atom()
                w = multiply(multiply(invert(c), w), c)
            else:
                raise ParseError(tok.span, "an integer or atom after '^'", _found(tok))
        return w

    def atom(self) -> Word:
        tok = self.peek()
        if tok.kind == "ident":
            self.advance()
            return Word.gen(self.resolve(tok))
        if tok.kind == "int" and tok.text == "1":
            self.advance()
            return Word()
        if tok.kind == "(":
            self.advance()
            w = self.word()
            self.expect(")", "')'")
            return w
        if tok.kind == "[":
            self.advance()
            x = self.word()
            self.expect(",", "',' inside commutator")
            y = self.word()
            self.expect("]", "']'")
            return Word.of(invert(x), invert(y), x, y)
        raise ParseError(tok.span, "a generator, '1', '(' or '['", _found(tok))

    def word_list(self, sep: str = ";") -> list:
        words = []
        while not self.at_end():
            words.append(self.word())
            if self.peek().kind == sep:
                self.advance()
            elif not self.at_end():
                tok = self.peek()
                raise ParseError(tok.span, f"'{sep}' or end of line", _found(tok))
        return words

    def finish(self) -> None:
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(tok.span, "end of line", _found(tok))


def parse_word(
    text: str,
    alphabet: Optional[Iterable[Generator]] = None,
    line: int = 1,
    column: int = 1,
) -> Word:
    """Parse one word; identifiers must belong to ``alphabet`` unless it is None."""
    parser = _Parser(_lex(text, line, column), _alphabet_resolver(alphabet))
    w = parser.word()
    parser.finish()
    return w


# -- documents --------------------------------------------------------------

_HEADER = re.compile(r"\s*\[([A-Za-z][A-Za-z0-9_-]*)\]\s*$")
_ENTRY = re.compile(r"(\s*)([A-Za-z][A-Za-z0-9_]*)(?:\s+([A-Za-z][A-Za-z0-9_]*))?\s*=[ \t]*")


class _Entry(NamedTuple):
    key: str
    arg: Optional[str]
    value: str
    key_span: SourceSpan
    value_span: SourceSpan

    def parser(self, resolve: Resolver) -> _Parser:
        return _Parser(_lex(self.value, self.value_span.line, self.value_span.column), resolve)


class _Section(NamedTuple):
    name: str
    span: SourceSpan
    entries: list


def _sections(text: str) -> list:
    sections = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        header = _HEADER.match(line)
        if header:
            sections.append(_Section(header.group(1), SourceSpan(lineno, line.index("[") + 1), []))
            continue
        col = len(line) - len(line.lstrip()) + 1
        if not sections:
            raise ParseError(SourceSpan(lineno, col), "section header", line.strip().split()[0])
        m = _ENTRY.match(line)
        if m is None:
            raise ParseError(SourceSpan(lineno, col), "'key = value'", line.strip())
        sections[-1].entries.append(
            _Entry(
                m.group(2),
                m.group(3),
                line[m.end():],
                SourceSpan(lineno, m.start(2) + 1),
                SourceSpan(lineno, m.end() + 1),
            )
        )
    if not sections:
        raise ParseError(SourceSpan(1, 1), "section header", "end of input")
    return sections


def _section(text: str, name: str) -> _Section:
    found = [s for s in _sections(text) if s.name == name]
    if not found:
        raise ParseError(SourceSpan(1, 1), f"a [{name}] section", "end of input")
    if len(found) > 1:
        raise ParseError(found[1].span, f"a single [{name}] section", f"[{name}]")
    return found[0]


def _check_keys(section: _Section, allowed: dict) -> None:
    """``allowed`` maps key to whether it takes an argument."""
    for e in section.entries:
        if e.key not in allowed:
            raise ParseError(e.key_span, "one of " + ", ".join(allowed), e.key)
        if allowed[e.key] and e.arg is None:
            raise ParseError(e.value_span, f"a name after '{e.key}'", "=")
        if not allowed[e.key] and e.arg is not None:
            raise ParseError(e.key_span, f"'=' after '{e.key}'", e.arg)


def _generator_list(section: _Section, key: str) -> tuple:
    gens = []
    seen = set()
    for e in section.entries:
        if e.key != key:
            continue
        p = e.parser(_alphabet_resolver(None))
        while not p.at_end():
            tok = p.expect("ident", "a generator name")
            g = _ident_generator(tok)
            if g in seen:
                raise ParseError(tok.span, "a new generator name", tok.text, "duplicate generator")
            seen.add(g)
            gens.append(g)
            if p.peek().kind == ",":
                p.advance()
    return tuple(gens)


def _words(section: _Section, key: str, resolve: Resolver) -> list:
    out = []
    for e in section.entries:
        if e.key == key:
            out.extend(e.parser(resolve).word_list())
    return out


def _parse_int(p: _Parser, what: str) -> int:
    return int(p.expect("int", what).text)


def parse_presentation(text: str) -> FinitePresentation:
    section = _section(text, "group")
    _check_keys(section, {"gens": False, "deg": False, "rels": False})
    gens = _generator_list(section, "gens")
    resolve = _alphabet_resolver(gens)
    degree = None
    for e in section.entries:
        if e.key != "deg":
            continue
        degree = {} if degree is None else degree
        p = e.parser(resolve)
        while not p.at_end():
            tok = p.expect("ident", "a generator name")
            g = resolve(tok)
            if g in degree:
                raise ParseError(tok.span, "each generator at most once", tok.text, "duplicate degree")
            p.expect(":", "':'")
            degree[g] = _parse_int(p, "an integer degree")
            if p.peek().kind == ",":
                p.advance()
    rels = _words(section, "rels", resolve)
    return FinitePresentation(gens, tuple(rels), degree)


def _parse_endo_lines(entries: list, gens: tuple, resolve: Resolver, name: str) -> FreeEndomorphism:
    images = {}
    for e in entries:
        p = e.parser(resolve)
        while not p.at_end():
            tok = p.expect("ident", "a generator name")
            g = resolve(tok)
            if g in images:
                raise ParseError(tok.span, "each generator mapped once", tok.text, f"duplicate image in endo {name}")
            p.expect("arrow", "'->'")
            images[g] = p.word()
            if p.peek().kind == ",":
                p.advance()
            elif not p.at_end():
                bad = p.peek()
                raise ParseError(bad.span, "',' or end of line", _found(bad))
    missing = [g for g in gens if g not in images]
    if missing:
        raise ParseError(
            entries[0].key_span,
            f"an image for {missing[0]} in endo {name}",
            "end of mapping",
            "endomorphisms must be total on the generators",
        )
    return FreeEndomorphism(gens, images)


def parse_lpres(text: str) -> LPresentation:
    section = _section(text, "lpres")
    _check_keys(section, {"gens": False, "fixed": False, "seeds": False, "endo": True})
    gens = _generator_list(section, "gens")
    resolve = _alphabet_resolver(gens)
    fixed = _words(section, "fixed", resolve)
    seeds = _words(section, "seeds", resolve)
    grouped = {}
    for e in section.entries:
        if e.key == "endo":
            grouped.setdefault(e.arg, []).append(e)
    endos = {name: _parse_endo_lines(es, gens, resolve, name) for name, es in grouped.items()}
    return LPresentation(gens, tuple(fixed), tuple(seeds), endos)


def parse_certs(text: str) -> CertificateSet:
    section = _section(text, "certs")
    _check_keys(section, {"N": False, "up": True, "down": True})
    n_entries = [e for e in section.entries if e.key == "N"]
    if not n_entries:
        raise ParseError(section.span, "an 'N = <bound>' line", "end of section")
    if len(n_entries) > 1:
        raise ParseError(n_entries[1].key_span, "a single N line", "N")
    p = n_entries[0].parser(_alphabet_resolver(None))
    tok = p.peek()
    n = _parse_int(p, "a non-negative integer")
    p.finish()
    if n < 0:
        raise ParseError(tok.span, "a non-negative integer", tok.text)

    rows = {"up": {}, "down": {}}
    base = []
    for e in section.entries:
        if e.key in rows:
            if e.arg in rows[e.key]:
                raise ParseError(e.key_span, f"one '{e.key} {e.arg}' row", f"{e.key} {e.arg}", "duplicate row")
            rows[e.key][e.arg] = e
            if e.arg not in base:
                base.append(e.arg)
    for kind, other in (("up", "down"), ("down", "up")):
        for name, e in rows[other].items():
            if name not in rows[kind]:
                raise MissingRowError(e.key_span, f"a '{kind} {name}' row", "end of section", "missing row")

    names = set(base)

    def resolve(tok: Token) -> Generator:
        g = _ident_generator(tok)
        if g.name not in names:
            raise UnknownGeneratorError(tok.span, tok.text, "a window generator")
        if g.level is None:
            raise ParseError(tok.span, "an indexed generator name@level", tok.text)
        if abs(g.level) > n:
            raise WindowViolationError(
                tok.span, f"a level within [-{n}, {n}]", tok.text, "outside the window"
            )
        return g

    words = {}
    for kind in ("up", "down"):
        words[kind] = {}
        for name, e in rows[kind].items():
            p = e.parser(resolve)
            words[kind][Generator(name)] = p.word()
            p.finish()
    window = WindowAlphabet(tuple(Generator(b) for b in base), n)
    return CertificateSet(window, words["up"], words["down"])


def _parse_rational(p: _Parser) -> DyadicRational:
    tok = p.peek()
    num = _parse_int(p, "an integer")
    den = 1
    if p.peek().kind == "/":
        p.advance()
        den = _parse_int(p, "a denominator")
    try:
        return DyadicRational.of(Fraction(num, den))
    except (ValueError, ZeroDivisionError):
        raise ParseError(tok.span, "a dyadic rational", f"{num}/{den}") from None


def parse_map(text: str) -> PullbackMap:
    """Parse a ``[map]`` section and an optional ``[affine]`` section."""
    section = _section(text, "map")
    target = _generator_list(section, "target") or None
    resolve = _alphabet_resolver(target)
    via = Generator("t")
    images = {}
    for e in section.entries:
        if e.key == "target":
            continue
        if e.arg is not None:
            raise ParseError(e.key_span, f"'=' after '{e.key}'", e.arg)
        p = e.parser(resolve)
        if e.key == "via":
            via = resolve(p.expect("ident", "a generator name"))
            p.finish()
            continue
        if e.key in images:
            raise ParseError(e.key_span, "each generator mapped once", e.key, "duplicate image")
        images[e.key] = p.word()
        p.finish()
    affine = None
    if any(s.name == "affine" for s in _sections(text)):
        asec = _section(text, "affine")
        affine = {}
        for e in asec.entries:
            if e.arg is not None:
                raise ParseError(e.key_span, f"'=' after '{e.key}'", e.arg)
            p = e.parser(_alphabet_resolver(None))
            maps = []
            while True:
                p.expect("(", "'(' starting an affine map (k, q)")
                k = _parse_int(p, "an integer multiplier exponent")
                p.expect(",", "','")
                q = _parse_rational(p)
                p.expect(")", "')'")
                maps.append(AffineMap(k, q))
                if p.peek().kind != ";":
                    break
                p.advance()
            p.finish()
            affine[Generator(e.key)] = tuple(maps)
        if len({len(v) for v in affine.values()}) > 1:
            raise ParseError(asec.span, "the same number of factors for every generator", "[affine]")
    return PullbackMap(via, images, target, affine)


_PARSERS = {
    "group": parse_presentation,
    "lpres": parse_lpres,
    "certs": parse_certs,
    "map": parse_map,
}


def parse_document(text: str) -> dict:
    """Parse every known section of a document, keyed by section name."""
    out = {}
    for s in _sections(text):
        if s.name == "affine":
            if not any(x.name == "map" for x in _sections(text)):
                raise ParseError(s.span, "an [affine] section to follow a [map] section", "[affine]")
            continue
        if s.name not in _PARSERS:
            raise ParseError(s.span, "one of " + ", ".join(f"[{k}]" for k in _PARSERS), f"[{s.name}]")
        out[s.name] = _PARSERS[s.name](text)
    return out


# -- printing ---------------------------------------------------------------

def print_word(w: Word) -> str:
    if not w:
        return "1"
    return "*".join(str(g) if e == 1 else f"{g}^{e}" for g, e in w.syllables())


def _gens_line(key: str, gens: Iterable[Generator]) -> str:
    body = " ".join(map(str, gens))
    return f"{key} = {body}" if body else f"{key} ="


def print_presentation(p: FinitePresentation) -> str:
    lines = ["[group]", _gens_line("gens", p.generators)]
    if p.degree is not None:
        body = " ".join(f"{g}:{d}" for g, d in p.degree.items() if d)
        lines.append(f"deg = {body}" if body else "deg =")
    lines.extend(f"rels = {print_word(r)}" for r in p.relators)
    return "\n".join(lines) + "\n"


def print_endo(name: str, phi: FreeEndomorphism) -> str:
    body = ", ".join(f"{g} -> {print_word(w)}" for g, w in phi.images.items())
    return f"endo {name} = {body}"


def print_lpres(lp: LPresentation) -> str:
    lines = ["[lpres]", _gens_line("gens", lp.generators)]
    lines.extend(f"fixed = {print_word(w)}" for w in lp.fixed)
    lines.extend(f"seeds = {print_word(w)}" for w in lp.seeds)
    lines.extend(print_endo(name, phi) for name, phi in lp.endos.items())
    return "\n".join(lines) + "\n"


def print_certs(c: CertificateSet) -> str:
    lines = ["[certs]", f"N = {c.bound}"]
    for g in c.window.base:
        lines.append(f"up {g} = {print_word(c.up[g])}")
        lines.append(f"down {g} = {print_word(c.down[g])}")
    return "\n".join(lines) + "\n"


def print_map(m: PullbackMap) -> str:
    lines = ["[map]"]
    if m.target is not None:
        lines.append(_gens_line("target", m.target))
    lines.append(f"via = {m.via}")
    lines.extend(f"{name} = {print_word(w)}" for name, w in m.images.items())
    if m.affine is not None:
        lines.append("[affine]")
        for g, maps in m.affine.items():
            lines.append(f"{g} = " + "; ".join(f"({a.k}, {a.q})" for a in maps))
    return "\n".join(lines) + "\n"


def print_expansion(report: ExpansionReport) -> str:
    lines = ["[lpres-expansion]", f"depth = {report.depth}", f"dedup = {report.dedup}"]
    for k, (made, kept) in enumerate(zip(report.generated, report.kept)):
        lines.append(f"# depth {k}: {made} generated, {kept} kept")
    lines.extend(print_word(w) for w in report.relators)
    return "\n".join(lines) + "\n"
