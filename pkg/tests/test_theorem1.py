import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from endopres import fixtures
from endopres.errors import AlphabetError, CertificateError, DegreeError, PreconditionError, WindowError
from endopres.freegroup import Generator, Letter, Word, exp_sum, substitute
from endopres.lpres import FinitePresentation, expand
from endopres.oracles import PullbackMap, dyadic_oracle, verify_lpres
from endopres.presfmt import parse_certs, parse_map, parse_presentation, parse_word, print_word
from endopres.theorem1 import (
    CertificateSet,
    WindowAlphabet,
    build_endos,
    derive_lpres,
    gamma,
    gamma_word,
    lemma5_check,
    lemma5_failures,
    neumann_normalize,
    rs_rewrite,
    shift,
    window_bound,
)

from helpers import words

a, b, t, u = (Generator(x) for x in "abtu")


def at(g, i):
    return g.at(i)


def W(text):
    return parse_word(text)


def z2():
    return parse_presentation(fixtures.Z2_PRES), parse_certs(fixtures.Z2_CERTS)


def bs_square():
    return parse_presentation(fixtures.BS_SQUARE_PRES), parse_certs(fixtures.BS_SQUARE_CERTS)


def undo_normalization(np, original_degree_of_t):
    """Inverse Tietze substitution back to the original generators."""
    images = {np.t: Word.gen(np.t, original_degree_of_t)}
    for g in np.base:
        images[g] = Word.gen(g)
    for new, old, deg in np.substitutions:
        images[new] = Word.of(old, (np.t, -deg * original_degree_of_t))
    return images


# -- normalization -----------------------------------------------------------

def test_normalize_z2_is_unchanged():
    p, _ = z2()
    np = neumann_normalize(p, t)
    assert np.relators == p.relators and np.base == (a,) and not np.flipped
    assert exp_sum(np.relators[0], t) == 0


def test_normalize_bs_square_substitutes_u():
    p, _ = bs_square()
    np = neumann_normalize(p, t)
    w = Generator("u_t")
    assert np.base == (a, b, w)
    assert np.substitutions == ((w, u, 1),)
    # [t, u] becomes [t, w t]
    assert Word.of((t, -1), (t, -1), (w, -1), t, w, t) in np.relators
    for r in np.relators:
        assert exp_sum(r, t) == 0


def test_normalize_undoes_to_the_input():
    p, _ = bs_square()
    np = neumann_normalize(p, t)
    back = undo_normalization(np, 1)
    assert tuple(substitute(r, back) for r in np.relators) == p.relators


def test_normalize_flips_negative_t():
    p = FinitePresentation((a, t), (W("t*a*t^-1*a^-2"),), {t: -1})
    np = neumann_normalize(p, t)
    assert np.flipped
    assert np.relators == (W("t^-1*a*t*a^-2"),)


def test_normalize_preconditions():
    with pytest.raises(DegreeError):
        FinitePresentation((a, t), (W("a*t"),), {t: 1})
    with pytest.raises(DegreeError):
        neumann_normalize(FinitePresentation((a, t), (W("[a,t]"),)), t)
    with pytest.raises(DegreeError):
        neumann_normalize(FinitePresentation((a, t), (W("[a,t^2]"),), {t: 2}), t)
    with pytest.raises(AlphabetError):
        neumann_normalize(FinitePresentation((a, t), (), {t: 1}), Generator("s"))


def test_normalized_name_avoids_clashes():
    p = FinitePresentation((t, u, Generator("u_t")), (W("u*t^-1*u_t"),), {t: 1, u: 1})
    np = neumann_normalize(p, t)
    assert [str(g) for g in np.base] == ["u_t_", "u_t"]


# -- rewriting ---------------------------------------------------------------

def test_rs_rewrite_examples():
    assert rs_rewrite(W("t^-1*a*t"), t) == Word.gen(at(a, 1))
    assert rs_rewrite(W("a^-1*b^-1*a*b"), t) == Word.of(
        (at(a, 0), -1), (at(b, 0), -1), at(a, 0), at(b, 0)
    )
    assert rs_rewrite(W("t^-1*a*t*a^-2"), t) == Word.of(at(a, 1), (at(a, 0), -2))


def test_rs_rewrite_needs_zero_exponent():
    with pytest.raises(PreconditionError):
        rs_rewrite(W("t*a"), t)


def test_shift_examples():
    assert shift(Word.gen(at(a, 0)), 1) == Word.gen(at(a, 1))
    w = Word.of(at(a, 1), (at(b, -2), -1))
    assert shift(w, 0) == w
    assert shift(Word.of(at(a, 1), at(b, -2)), -1) == Word.of(at(a, 0), at(b, -3))
    with pytest.raises(PreconditionError):
        shift(W("a"), 1)


def test_window_bound_examples():
    assert window_bound([Word.of(at(a, 1), (at(a, 0), -2))]) == 1
    assert window_bound([]) == 0
    assert window_bound([Word.of(at(a, -3), at(b, 2))]) == 3


@settings(deadline=None)
@given(words((a, b, t), 16))
def test_rs_rewrite_is_conjugation_equivariant(w):
    # balance the exponent of t so the word lies in the kernel
    r = w * Word.gen(t, -exp_sum(w, t))
    for i in (-3, 1, 4):
        conj = Word.gen(t, -i) * r * Word.gen(t, i)
        assert rs_rewrite(conj, t) == shift(rs_rewrite(r, t), i)


# -- certificates, gamma and the endomorphisms ------------------------------

def test_gamma_examples():
    _, certs = z2()
    assert gamma(certs, "a", 0) == Word.gen(at(a, 0))
    assert gamma(certs, "a", -1) == Word.gen(at(a, -1))
    assert gamma(certs, "a", 2) == certs.up[a]
    assert gamma(certs, "a", 3) == Word.gen(at(a, 1))
    assert gamma(certs, a, -7) == Word.gen(at(a, -1))


def test_gamma_unfolds_hand_trace():
    # N = 0, up a = a@0^2: gamma(a@k) = a@0^(2^k)
    win = WindowAlphabet((a,), 0)
    certs = CertificateSet(win, {a: Word.gen(at(a, 0), 2)}, {a: Word.gen(at(a, 0), -1)})
    for k in range(1, 8):
        assert gamma(certs, "a", k) == Word.gen(at(a, 0), 2**k)
        assert gamma(certs, "a", -k) == Word.gen(at(a, 0), (-1) ** k)


def test_gamma_stays_in_window():
    _, certs = bs_square()
    for g in certs.window.base:
        for i in range(-12, 13):
            assert gamma(certs, g, i).generators() <= set(certs.window.generators)


def test_gamma_word_needs_indexed_letters():
    _, certs = z2()
    with pytest.raises(PreconditionError):
        gamma_word(certs, W("a"))


def test_build_endos_z2():
    _, certs = z2()
    eta, tau = build_endos(certs)
    m1, m0, p1 = at(a, -1), at(a, 0), at(a, 1)
    assert eta.images == {m1: Word.gen(m0), m0: Word.gen(p1), p1: Word.gen(p1)}
    assert tau.images == {m1: Word.gen(m1), m0: Word.gen(m1), p1: Word.gen(m0)}


def test_certificate_syntax_checks():
    win = WindowAlphabet((a,), 1)
    with pytest.raises(CertificateError):
        CertificateSet(win, {a: Word.gen(at(a, 2))}, {a: Word.gen(at(a, -1))})
    with pytest.raises(CertificateError):
        CertificateSet(win, {a: Word.gen(at(a, 1))}, {})


# -- derivation --------------------------------------------------------------

def test_derive_z2():
    p, certs = z2()
    derived = derive_lpres(p, t, certs)
    lp = derived.lp
    assert [str(g) for g in lp.generators] == ["a@-1", "a@0", "a@1"]
    assert [print_word(w) for w in lp.seeds] == ["a@0^-1*a@1"]
    assert lp.fixed == ()
    assert (lp.endos["eta"], lp.endos["tau"]) == build_endos(certs)
    assert derived.n_min == 1
    depth1 = expand(lp, 1).relators
    assert [print_word(w) for w in depth1] == ["a@0^-1*a@1", "a@-1^-1*a@0"]


def test_derive_bs_square_shape():
    p, certs = bs_square()
    derived = derive_lpres(p, t, certs)
    assert len(derived.lp.generators) == 3 * (2 * 2 + 1)
    assert len(derived.lp.seeds) == 6
    assert derived.lp.ascending()
    # the rewritten [t, u_t t] reaches level 2
    assert derived.n_min == 2
    assert Word.of((at(Generator("u_t"), 2), -1), at(Generator("u_t"), 1)) in derived.lp.seeds


def test_derive_refusals():
    p, certs = z2()
    with pytest.raises(CertificateError, match="certificates required"):
        derive_lpres(p, t, None)
    with pytest.raises(WindowError) as err:
        derive_lpres(p, t, certs, n=0)
    assert err.value.n_min == 1
    with pytest.raises(CertificateError):
        derive_lpres(p, t, certs, n=2)
    other = CertificateSet(WindowAlphabet((b,), 1), {b: Word.gen(at(b, 1))}, {b: Word.gen(at(b, -1))})
    with pytest.raises(CertificateError):
        derive_lpres(p, t, other)
    small = CertificateSet(WindowAlphabet((a,), 0), {a: Word.gen(at(a, 0))}, {a: Word.gen(at(a, 0))})
    with pytest.raises(WindowError):
        derive_lpres(p, t, small)


def test_bs12_refuses_without_certificates_and_wrong_ones_fail_verification():
    p = parse_presentation(fixtures.BS12_PRES)
    with pytest.raises(CertificateError):
        derive_lpres(p, t, None)
    wrong = CertificateSet(WindowAlphabet((a,), 1), {a: Word.gen(at(a, 1))}, {a: Word.gen(at(a, -1))})
    derived = derive_lpres(p, t, wrong)
    report = verify_lpres(derived.lp, 2, dyadic_oracle(), PullbackMap(t))
    assert not report.verified


# -- the window identity -----------------------------------------------------

def test_lemma5_at_zero_is_trivial():
    p, certs = bs_square()
    seeds = derive_lpres(p, t, certs).lp.seeds
    for r in seeds:
        assert gamma_word(certs, shift(r, 0)) == r
    assert lemma5_check(certs, seeds, [0])


def test_lemma5_z2_and_bs_square():
    for p, certs in (z2(), bs_square()):
        seeds = derive_lpres(p, t, certs).lp.seeds
        assert lemma5_failures(certs, seeds, (-10, 10)) == []


def test_lemma5_is_independent_of_certificate_truth():
    p, _ = z2()
    bad = CertificateSet(
        WindowAlphabet((a,), 1), {a: Word.gen(at(a, 0), 2)}, {a: Word.gen(at(a, -1))}
    )
    derived = derive_lpres(p, t, bad)
    assert lemma5_check(bad, derived.lp.seeds, (-10, 10))
    report = verify_lpres(derived.lp, 3, dyadic_oracle(parse_map(fixtures.Z2_MAP).affine), PullbackMap(t))
    assert not report.verified


def test_lemma5_detects_a_wrong_endomorphism_comparison():
    # sanity check that the comparison is not vacuous
    _, certs = z2()
    seed = Word.of((at(a, 0), -1), at(a, 1))
    tampered = Word.of((at(a, 0), -1), at(a, 1), at(a, 1))
    assert lemma5_check(certs, [seed], (-3, 3))
    assert gamma_word(certs, shift(tampered, 2)) != gamma_word(certs, shift(seed, 2))


@settings(max_examples=40, deadline=None)
@given(
    st.integers(1, 2),
    st.integers(0, 2),
    st.data(),
)
def test_lemma5_holds_for_arbitrary_certificates(m, n, data):
    base = (a, b)[:m]
    win = WindowAlphabet(base, n)
    gens = win.generators
    letter = st.builds(Letter, st.sampled_from(gens), st.sampled_from((1, -1)))
    word = st.lists(letter, max_size=4).map(Word)
    up = {g: data.draw(word) for g in base}
    down = {g: data.draw(word) for g in base}
    seeds = data.draw(st.lists(word, min_size=1, max_size=2))
    certs = CertificateSet(win, up, down)
    assert lemma5_failures(certs, seeds, (-5, 5)) == []
