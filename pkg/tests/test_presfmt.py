import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endopres import fixtures
from endopres.errors import PreconditionError
from endopres.freegroup import Generator, Word
from endopres.oracles import AffineMap, DyadicRational
from endopres.presfmt import (
    MissingRowError,
    ParseError,
    SourceSpan,
    UnknownGeneratorError,
    WindowViolationError,
    parse_certs,
    parse_document,
    parse_lpres,
    parse_map,
    parse_presentation,
    parse_word,
    print_certs,
    print_lpres,
    print_map,
    print_presentation,
    print_word,
)

a, b, c, d, t, u, z = (Generator(x) for x in "abcdtuz")


def L(*pairs):
    return Word.of(*pairs)


# -- words -------------------------------------------------------------------

def test_parse_word_examples():
    assert parse_word("a^t * a^-2") == L((t, -1), a, t, (a, -2))
    assert parse_word("1") == Word()
    assert parse_word("[a,b]") == L((a, -1), (b, -1), a, b)


def test_parse_word_grammar():
    assert parse_word("a b") == parse_word("a*b")
    assert parse_word("(a*b)^2") == L(a, b, a, b)
    assert parse_word("a^2^3") == L((a, 6))
    assert parse_word("(b^2)^z") == L((z, -1), (b, 2), z)
    assert parse_word("a^b^c") == parse_word("(a^b)^c")
    assert parse_word("a@-2*b@3") == L(Generator("a", -2), Generator("b", 3))
    assert parse_word("[a, [b, c]]") == parse_word("a^-1*[b,c]^-1*a*[b,c]")
    assert parse_word("1*a*1") == L(a)


def test_parse_word_alphabet_and_spans():
    with pytest.raises(UnknownGeneratorError) as err:
        parse_word("a*x", alphabet=[a, b])
    assert err.value.span == SourceSpan(1, 3) and err.value.identifier == "x"
    with pytest.raises(ParseError) as err:
        parse_word("a*(b")
    assert err.value.span == SourceSpan(1, 5)
    with pytest.raises(ParseError) as err:
        parse_word("a^")
    assert str(err.value).startswith("1:3:")
    with pytest.raises(ParseError):
        parse_word("a ! b")


def test_print_word_examples():
    assert print_word(L((t, -1), a, t, (a, -2))) == "t^-1*a*t*a^-2"
    assert print_word(Word()) == "1"
    assert print_word(parse_word("a*a")) == "a^2"
    assert print_word(parse_word("a@-1^3")) == "a@-1^3"


# -- documents ---------------------------------------------------------------

def test_parse_presentation_bs_square():
    p = parse_presentation(fixtures.BS_SQUARE_PRES)
    assert p.generators == (a, b, t, u)
    assert len(p.relators) == 6
    assert p.degree == {a: 0, b: 0, t: 1, u: 1}


def test_parse_presentation_z2_and_errors():
    p = parse_presentation("[group]\ngens = a t\nrels = [a,t]\n")
    assert p.generators == (a, t) and p.relators == (parse_word("[a,t]"),)
    assert p.degree is None
    with pytest.raises(UnknownGeneratorError) as err:
        parse_presentation("[group]\ngens = a t\nrels = [a,x]\n")
    assert err.value.span == SourceSpan(3, 11)


def test_parse_presentation_rejects_degree_breaking_relator():
    with pytest.raises(PreconditionError):
        parse_presentation("[group]\ngens = a t\ndeg = t:1\nrels = a*t\n")


def test_parse_lpres_lysenok():
    lp = parse_lpres(fixtures.LYSENOK_LPRES)
    assert lp.generators == (a, b, c, d)
    assert [print_word(w) for w in lp.fixed] == ["a^2", "b^2", "c^2", "d^2", "b*c*d"]
    assert lp.seeds == (parse_word("(a*d)^4"), parse_word("(a*d*a*c*a*c)^4"))
    sigma = lp.endos["sigma"]
    assert sigma[a] == parse_word("a*c*a") and sigma[d] == parse_word("c")


def test_parse_lpres_hand_form():
    lp = parse_lpres(fixtures.BS_SQUARE_LPRES)
    assert lp.generators == (a, b, z) and lp.fixed == ()
    assert lp.seeds == tuple(parse_word(s) for s in ("[a,b]", "a^z*a^-2", "(b^2)^z*b^-1"))
    assert set(lp.endos) == {"eta", "tau"}


def test_parse_lpres_endo_must_be_total():
    text = "[lpres]\ngens = a b c d\nendo s = a -> a, b -> b, c -> c\n"
    with pytest.raises(ParseError, match="image for d"):
        parse_lpres(text)


def test_endo_may_span_several_lines():
    text = "[lpres]\ngens = a b\nendo s = a -> b\nendo s = b -> a*b\n"
    assert parse_lpres(text).endos["s"][b] == parse_word("a*b")


def test_parse_certs_z2():
    certs = parse_certs(fixtures.Z2_CERTS)
    assert certs.bound == 1 and certs.window.base == (a,)
    assert certs.up[a] == L(Generator("a", 1)) and certs.down[a] == L(Generator("a", -1))


def test_parse_certs_errors():
    with pytest.raises(WindowViolationError) as err:
        parse_certs("[certs]\nN = 1\nup a = a@2\ndown a = a@-1\n")
    assert err.value.span == SourceSpan(3, 8)
    with pytest.raises(MissingRowError):
        parse_certs("[certs]\nN = 1\nup a = a@1\ndown a = a@-1\nup b = b@1\n")
    with pytest.raises(ParseError):
        parse_certs("[certs]\nup a = a@1\ndown a = a@-1\n")
    with pytest.raises(UnknownGeneratorError):
        parse_certs("[certs]\nN = 1\nup a = x@1\ndown a = a@-1\n")


def test_parse_map_with_affine():
    m = parse_map(fixtures.Z2_MAP)
    assert m.via == t and m.target == (a, t)
    assert m.affine[a] == (AffineMap(0, DyadicRational(1)), AffineMap())
    m = parse_map(fixtures.BS_SQUARE_MAP)
    assert m.images["z"] == parse_word("t*u^-1") and m.affine is None


def test_comments_and_blank_lines_are_ignored():
    text = "# header\n\n[group]   # trailing\ngens = a t # two\n\nrels = [a,t] # one\n"
    assert parse_presentation(text).relators == (parse_word("[a,t]"),)


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("", 1, 1),
        ("gens = a\n", 1, 1),
        ("[group]\ngens = a\nrels = a*(\n", 3, 11),
        ("[group]\ngens = a\nrelz = a\n", 3, 1),
        ("[group]\ngens = a a\n", 2, 10),
        ("[lpres]\ngens = a\nendo s = a => a\n", 3, 12),
        ("[group]\ngens = a\n[group]\ngens = b\n", 3, 1),
        ("[certs]\nN = -1\n", 2, 5),
        ("[map]\nvia = t\n[affine]\na = (0, 1/3)\n", 4, 9),
        ("[group]\ngens = a\nrels = a ^ ^\n", 3, 12),
    ],
)
def test_parse_errors_carry_spans(text, line, column):
    with pytest.raises(ParseError) as err:
        parse_document(text)
    assert err.value.span == SourceSpan(line, column)
    assert str(err.value).startswith(f"{line}:{column}: expected ")


# -- round trips -------------------------------------------------------------

FIXTURE_TEXTS = [
    fixtures.LYSENOK_LPRES,
    fixtures.BS_SQUARE_PRES,
    fixtures.BS_SQUARE_CERTS,
    fixtures.BS_SQUARE_LPRES,
    fixtures.BS_SQUARE_MAP,
    fixtures.Z2_PRES,
    fixtures.Z2_CERTS,
    fixtures.Z2_MAP,
    fixtures.BS12_PRES,
]

PRINTERS = {
    "group": print_presentation,
    "lpres": print_lpres,
    "certs": print_certs,
    "map": print_map,
}


def reprint(text):
    return "".join(PRINTERS[k](v) for k, v in parse_document(text).items())


@pytest.mark.parametrize("text", FIXTURE_TEXTS)
def test_fixture_round_trip(text):
    docs = parse_document(text)
    once = reprint(text)
    assert parse_document(once) == docs
    assert reprint(once) == once


_LINE_MUTATIONS = st.sampled_from(["(", ")", "^", "*", "@", "-", "[", ",", "]", "=", "x", "9", "->", ";", " ", "#"])


@settings(max_examples=300, deadline=None)
@given(st.sampled_from(FIXTURE_TEXTS), st.integers(0, 10_000), _LINE_MUTATIONS, st.booleans())
def test_mangled_input_fails_cleanly(text, pos, piece, delete):
    pos %= len(text) + 1
    mangled = text[:pos] + text[pos + 1 :] if delete else text[:pos] + piece + text[pos:]
    try:
        parse_document(mangled)
    except ParseError as exc:
        assert exc.span.line >= 1 and exc.span.column >= 1
        assert re.match(r"\d+:\d+: expected ", str(exc))
    except PreconditionError:
        pass  # well-formed text whose content violates a precondition
