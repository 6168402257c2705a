import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from eden.errors import InvalidInput
from eden.graphs import LabeledGraph
from eden.lattice import Configuration, Pattern, Window
from eden.subshift import (
    Subshift, contains, corpus, corpus_names, count_language, determinize, distinguishing_word, equal_language,
    format_shift, higher_block, is_subshift_of, language, load_shift, minimize, parse_shift,
)

CORPUS = corpus()


def test_corpus_has_ten_named_shifts():
    assert len(corpus_names()) == 10
    assert {"full-2", "golden-mean", "even", "rll-1-3"} <= set(corpus_names())


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_language_matches_brute_force(name):
    X = CORPUS[name]
    for n in range(1, 13):
        if X.kind == "full":
            assert count_language(X, Window.interval(0, n - 1)) == X.k ** n
            if n <= 5:
                assert len(set(X.allowed_words(n))) == X.k ** n
            continue
        expected = oracles.language(X, n)
        assert set(X.allowed_words(n)) == expected, (name, n)
        assert count_language(X, Window.interval(0, n - 1)) == len(expected)


def test_even_shift_counts():
    X = CORPUS["even"]
    assert [count_language(X, Window.interval(0, n - 1)) for n in range(1, 8)] == [2, 4, 7, 12, 20, 33, 54]


def test_language_on_gapped_windows():
    X = CORPUS["golden-mean"]
    w = Window(1, [(0,), (2,)])
    pats = language(X, w)
    assert len(pats) == 4  # the middle cell can always be 0
    assert X.is_allowed(Pattern.from_cells(1, {(0,): 1, (2,): 1}))
    assert not X.is_allowed(Pattern.word("11"))


def test_inclusion_and_distinguishing_words():
    full, gm, even = CORPUS["full-2"], CORPUS["golden-mean"], CORPUS["even"]
    assert is_subshift_of(gm, full) and not is_subshift_of(full, gm)
    assert not is_subshift_of(even, gm) and not is_subshift_of(gm, even)
    assert is_subshift_of(CORPUS["rll-1-3"], gm)
    assert distinguishing_word(full, gm) == ((1, 1), "left")
    assert distinguishing_word(gm, gm) is None
    assert equal_language(higher_block(gm, 2), higher_block(gm, 2))


def test_contains_periodic_points():
    even = CORPUS["even"]
    assert contains(even, Configuration.periodic((3,), "100"))
    assert not contains(even, Configuration.periodic((2,), "10"))
    assert contains(even, Configuration.constant(1))
    gm = CORPUS["golden-mean"]
    assert contains(gm, Configuration.finite_support(0, Pattern.word("101")))
    assert not contains(gm, Configuration.finite_support(0, Pattern.word("0110")))


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_text_round_trip(name):
    X = CORPUS[name]
    Y = parse_shift(format_shift(X))
    assert Y.kind == X.kind and Y.k == X.k
    for n in range(1, 8):
        assert set(Y.allowed_words(n)) == set(X.allowed_words(n))


def test_bad_inputs():
    with pytest.raises(InvalidInput):
        load_shift("no-such-shift")
    with pytest.raises(InvalidInput):
        parse_shift("dim=1\n11\n")
    with pytest.raises(InvalidInput):
        parse_shift("alphabet=2; dim=1; kind=sofic\na -> b\n")
    with pytest.raises(InvalidInput):
        Subshift.sft(2, ["12"])


def test_alias_with_shift_suffix():
    assert load_shift("even-shift").name == "even"


@st.composite
def random_graphs(draw):
    n = draw(st.integers(1, 4))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1), st.integers(0, 1)),
                          min_size=1, max_size=8, unique=True))
    return LabeledGraph(n, tuple(edges), 2)


@settings(max_examples=40, deadline=None)
@given(random_graphs())
def test_determinize_and_minimize_preserve_language(g):
    X = Subshift.sofic(g)
    expected = [oracles.sofic_language([(s, a, t) for s, t, a in g.edges], g.n_vertices, n) for n in range(1, 7)]
    for Y in (determinize(X), minimize(X)):
        for n, words in enumerate(expected, 1):
            assert set(Y.allowed_words(n)) == words
    assert minimize(X).presentation().is_right_resolving


def test_two_dimensional_hard_square_counts():
    forbidden = [Pattern.from_cells(2, {(0, 0): 1, (1, 0): 1}), Pattern.from_cells(2, {(0, 0): 1, (0, 1): 1})]
    X = Subshift(2, 2, "sft", forbidden, name="hard-square")
    assert len(language(X, Window.box((0, 0), (1, 1)))) == 7
    assert len(language(X, Window.box((0, 0), (2, 2)))) == 63  # independent sets of the 3x3 grid
    full = Subshift.full(2, 2)
    assert len(language(full, Window.box((0, 0), (1, 1)))) == 16


def test_two_dimensional_text_format():
    X = parse_shift("alphabet=2; dim=2\n11\n1/1\n")
    assert X.dim == 2 and len(X.forbidden) == 2
    assert len(language(X, Window.box((0, 0), (1, 1)))) == 7


def test_random_words_agree_with_language_dfa():
    rng = random.Random(7)
    X = CORPUS["rll-1-3"]
    allowed = set(oracles.language(X, 10))
    for _ in range(200):
        w = tuple(rng.randrange(2) for _ in range(10))
        assert X.is_allowed(Pattern.word(w)) == (w in allowed)
