import math

import pytest

import oracles
from eden.entropy import (
    entropy_estimate, entropy_exact_1d, entropy_gap_bound, gap_bound_details, sep_count, spn_count,
)
from eden.errors import InvalidInput
from eden.lattice import Window
from eden.subshift import Subshift, corpus, count_language

CORPUS = corpus()


def _oracle_entropy(X):
    if X.kind == "full":
        return math.log(X.k)
    if X.kind == "sft":
        m = max(len(p) for p in X.forbidden)
        A = oracles.de_bruijn_matrix(X.k, [p.symbols for p in X.forbidden], max(m, 2))
    else:
        n = X.graph.n_vertices
        A = [[0] * n for _ in range(n)]
        for s, t, _ in X.graph.edges:
            A[s][t] += 1
    root = oracles.perron_root_by_bisection(A)
    return math.log(root) if root > 0 else 0.0


def test_full_shift_is_log_k():
    assert abs(entropy_exact_1d(CORPUS["full-2"]).value - math.log(2)) <= 1e-12
    assert abs(entropy_exact_1d(CORPUS["full-3"]).value - math.log(3)) <= 1e-12


def test_golden_mean_and_even():
    for name in ("golden-mean", "even"):
        h = entropy_exact_1d(CORPUS[name])
        assert h.method == "exact_perron"
        assert abs(h.value - oracles.log_golden()) <= 1e-9
        assert h.lower <= oracles.log_golden() <= h.upper


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_exact_entropy_matches_bisection_oracle(name):
    X = CORPUS[name]
    h = entropy_exact_1d(X)
    assert abs(h.value - _oracle_entropy(X)) <= 1e-9
    assert h.error_bound <= 1e-9


@pytest.mark.parametrize("name", ["golden-mean", "even", "no-111", "rll-1-3", "full-2"])
def test_estimate_error_bound_is_honest(name):
    X = CORPUS[name]
    h = entropy_exact_1d(X).value
    for n in (5, 15, 30):
        est = entropy_estimate(X, n)
        assert est.value >= h - 1e-12  # subadditivity: estimates approach from above
        assert est.value - h <= est.error_bound + 1e-12
    assert abs(entropy_estimate(X, 30).value - h) <= 0.03


def test_sep_equals_spn_and_widens_with_eps():
    X = CORPUS["golden-mean"]
    for n in range(4):
        assert sep_count(X, n, 1.0) == spn_count(X, n, 1.0) == count_language(X, Window.interval(-n, n))
        assert sep_count(X, n, 0.25) == count_language(X, Window.interval(-n - 2, n + 2))
    est = entropy_estimate(X, 10, eps=0.25, kind="spn")
    assert est.method == "spn_estimate(10)"


def test_zero_entropy_shifts():
    for name in ("zero", "period-2", "sunny-side-up"):
        assert abs(entropy_exact_1d(CORPUS[name]).value) <= 1e-12


def test_gap_bound_full_vs_golden_mean():
    Y, Z = CORPUS["full-2"], CORPUS["golden-mean"]
    gap = entropy_exact_1d(Y).value - entropy_exact_1d(Z).value
    assert abs(gap - (math.log(2) - oracles.log_golden())) <= 1e-9
    d = gap_bound_details(Y, Z)
    assert d.y0_word == "11"
    assert 0 < d.value < gap
    assert d.eta <= 0.1
    assert entropy_gap_bound(Y, Z, eta=2 ** -6) < gap


def test_gap_bound_rejects_bad_pairs():
    with pytest.raises(InvalidInput):
        gap_bound_details(CORPUS["golden-mean"], CORPUS["full-2"])
    with pytest.raises(InvalidInput):
        gap_bound_details(CORPUS["golden-mean"], CORPUS["golden-mean"])
    with pytest.raises(InvalidInput):
        gap_bound_details(CORPUS["sunny-side-up"], CORPUS["zero"])  # no strong irreducibility


def test_two_dimensional_rejected():
    with pytest.raises(InvalidInput):
        entropy_exact_1d(Subshift.full(2, 2))
