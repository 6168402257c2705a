from fractions import Fraction

import pytest

from eden.errors import InconclusiveError, InvalidInput
from eden.lattice import Pattern, Window
from eden.specification import (
    gap_failures, gluing_oracle, ie_density_bound, independence_density, is_independence_set,
    strong_irreducibility_gap, weak_specification_check,
)
from eden.subshift import Subshift, corpus

CORPUS = corpus()
GAPS = {"full-2": 0, "full-3": 0, "golden-mean": 1, "even": 2, "no-111": 1, "rll-1-3": 3, "zero": 0,
        "odd": None, "period-2": None, "sunny-side-up": None}


@pytest.mark.parametrize("name", sorted(GAPS))
def test_gap_goldens(name):
    cert = strong_irreducibility_gap(CORPUS[name])
    assert (cert.gap if cert else None) == GAPS[name]


@pytest.mark.parametrize("name", sorted(GAPS))
def test_gap_agrees_with_gluing_oracle(name):
    X = CORPUS[name]
    max_len = 4 if X.k == 3 else 6
    assert gluing_oracle(X, max_len=max_len, max_gap=8) == GAPS[name]


@pytest.mark.parametrize("name", [n for n, g in GAPS.items() if g])
def test_gap_is_tight(name):
    X = CORPUS[name]
    g = GAPS[name]
    assert gap_failures(X, g) == []
    fails = gap_failures(X, g - 1)
    assert fails
    u, v, c = fails[0]
    # the refutation really fails: no filler of length c joins u and v
    dfa = X.language_dfa()
    fills = X.allowed_words(c) if c else [()]
    word = lambda s: tuple(int(ch) for ch in s)
    assert not any(dfa.accepts(word(u) + f + word(v)) for f in fills)


def test_even_shift_refutation_at_one_free_cell():
    cert = strong_irreducibility_gap(CORPUS["even"])
    assert ("10", "01", 1) in cert.refutations


def test_inconclusive_when_words_exceed_bound():
    with pytest.raises(InconclusiveError):
        strong_irreducibility_gap(CORPUS["rll-1-3"], L=2)


def test_max_gap_cap():
    assert strong_irreducibility_gap(CORPUS["rll-1-3"], max_gap=2) is None


def test_weak_specification_examples():
    gm = CORPUS["golden-mean"]
    assert not weak_specification_check(gm, 1.0, 0)
    assert weak_specification_check(gm, 1.0, 1)
    # eps = 1/4 widens each target by metric_radius = 2 cells on both sides
    assert weak_specification_check(CORPUS["full-2"], 0.25, 4)
    assert not weak_specification_check(CORPUS["full-2"], 0.25, 3)
    assert not weak_specification_check(CORPUS["odd"], 1.0, 4)
    with pytest.raises(InvalidInput):
        weak_specification_check(gm, 1.0, -1)


def test_weak_specification_with_small_eps_needs_more_room():
    even = CORPUS["even"]
    assert weak_specification_check(even, 1.0, 2)
    assert not weak_specification_check(even, 1.0, 1)
    assert weak_specification_check(even, 0.5, 4)
    assert not weak_specification_check(even, 0.5, 3)


def test_independence_sets():
    gm = CORPUS["golden-mean"]
    A = [Pattern.word("0"), Pattern.word("1")]
    assert is_independence_set(gm, A, [0, 2])
    assert not is_independence_set(gm, A, [0, 1])
    full = CORPUS["full-2"]
    assert is_independence_set(full, A, [0, 1, 2, 3])


def test_independence_density_values():
    gm = CORPUS["golden-mean"]
    A = [Pattern.word("0"), Pattern.word("1")]
    for n in range(1, 5):
        rep = independence_density(gm, A, Window.interval(-n, n))
        assert rep.phi == n + 1  # alternate cells
        assert is_independence_set(gm, A, rep.subset)
    rep = independence_density(CORPUS["full-2"], A, Window.interval(-3, 3))
    assert rep.density == 1
    rep = independence_density(CORPUS["zero"], [Pattern.word("0")], Window.interval(-2, 2))
    assert rep.density == 1


def test_independence_density_lower_bound():
    for name in ("golden-mean", "even", "rll-1-3", "no-111"):
        X = CORPUS[name]
        cert = strong_irreducibility_gap(X)
        A = [Pattern.word("0"), Pattern.word("1")]
        bound = ie_density_bound(X, A, cert)
        assert bound == Fraction(1, 2 * cert.gap + 1)
        rep = independence_density(X, A, Window.interval(-4, 4))
        assert rep.density >= bound


def test_independence_rejects_bad_input():
    with pytest.raises(InvalidInput):
        independence_density(CORPUS["golden-mean"], [Pattern.word("11")], Window.interval(0, 2))
    with pytest.raises(InvalidInput):
        independence_density(CORPUS["full-2"], [Pattern.word("0")], Window.interval(0, 30))


def test_two_dimensional_rejected():
    with pytest.raises(InvalidInput):
        strong_irreducibility_gap(Subshift.full(2, 2))
