"""Brute-force oracles that share no code with the library's decision procedures."""

import itertools
import math

import sympy

PAD = 4


def _sft_words(k, forbidden, length):
    """All words of the given length containing no forbidden word (DFS with suffix pruning)."""
    forbidden = [tuple(f) for f in forbidden]
    out = []

    def rec(prefix):
        for f in forbidden:
            if len(prefix) >= len(f) and tuple(prefix[len(prefix) - len(f):]) == f:
                return
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        for a in range(k):
            prefix.append(a)
            rec(prefix)
            prefix.pop()

    rec([])
    return out


def _graph_words(edges, n_vertices, length):
    """Labels of all paths of the given length in an edge list (src, label, dst)."""
    layer = {((), v) for v in range(n_vertices)}
    for _ in range(length):
        layer = {(word + (a,), t) for word, v in layer for s, a, t in edges if s == v}
    return {word for word, _ in layer}


def sft_language(k, forbidden, n, pad=PAD):
    """Centres of length n of locally admissible words of length n + 2 * pad."""
    return {w[pad: pad + n] for w in _sft_words(k, forbidden, n + 2 * pad)}


def sofic_language(edges, n_vertices, n, pad=PAD):
    return {w[pad: pad + n] for w in _graph_words(edges, n_vertices, n + 2 * pad)}


def language(X, n):
    """Brute-force language of a corpus shift from its raw description."""
    if X.kind == "full":
        return set(itertools.product(range(X.k), repeat=n))
    if X.kind == "sft":
        return sft_language(X.k, [p.symbols for p in X.forbidden], n)
    edges = [(s, a, t) for s, t, a in X.graph.edges]
    return sofic_language(edges, X.graph.n_vertices, n)


def eca_image_words(rule, n):
    """Images of all binary words of length n + 2 under an elementary rule."""
    out = set()
    for w in itertools.product((0, 1), repeat=n + 2):
        out.add(tuple((rule >> (4 * w[i] + 2 * w[i + 1] + w[i + 2])) & 1 for i in range(n)))
    return out


def perron_root_by_bisection(matrix, tol=1e-15):
    """Largest real root of the characteristic polynomial, by bisection in exact arithmetic."""
    M = sympy.Matrix(matrix)
    x = sympy.Symbol("x")
    p = sympy.Poly(M.charpoly(x).as_expr(), x)
    hi = sympy.Rational(max(1, int(max(sum(abs(v) for v in row) for row in matrix))) + 1)
    lo = sympy.Rational(0)
    # the Perron root is the largest real root: p > 0 beyond it
    roots_above = p.count_roots(lo, hi)
    if roots_above == 0:
        return 0.0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if p.count_roots(mid, hi) > 0:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)


def de_bruijn_matrix(k, forbidden, m):
    """Transfer matrix on (m-1)-blocks of an SFT whose forbidden words have length <= m."""
    states = list(itertools.product(range(k), repeat=m - 1))
    index = {s: i for i, s in enumerate(states)}
    forb = [tuple(f) for f in forbidden]
    A = [[0] * len(states) for _ in states]
    for s in states:
        for a in range(k):
            word = s + (a,)
            if any(word[i: i + len(f)] == f for f in forb for i in range(len(word) - len(f) + 1)):
                continue
            A[index[s]][index[word[1:]]] += 1
    return A


def log_golden():
    return math.log((1 + math.sqrt(5)) / 2)
