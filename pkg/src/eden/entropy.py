"""Topological entropy of 1D subshifts (natural logarithm).

* exact: log of the spectral radius of the minimal language automaton, enclosed
  by Collatz-Wielandt bounds on each strongly connected component;
* estimates: (1/|F_n|) log sep(X, F_n, eps), with a rigorous error bound built
  from the same enclosure;
* the entropy-gap lower bound for a proper subsystem of a strongly irreducible
  shift.

Metric conventions: two points are (F, eps)-separated when rho(sx, sy) >= eps for
some s in F. Under the 2**-j metric this means they differ within radius
r = floor(log2(1/eps)) of F, so sep counts patterns on F + [-r, r]. Spanning
uses the strict inequality rho < eps, which gives the same count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from eden.errors import InvalidInput
from eden.graphs import strongly_connected_components
from eden.lattice import Window, metric_radius, separation_radius
from eden.specification import strong_irreducibility_gap
from eden.subshift import Subshift, count_language, equal_language, language_difference

ENCLOSURE_WIDTH = 1e-10


@dataclass(frozen=True)
class EntropyValue:
    value: float
    method: str  # exact_perron | sep_estimate(n) | spn_estimate(n)
    error_bound: float
    lower: float | None = None
    upper: float | None = None

    def to_dict(self) -> dict:
        out = {"value": self.value, "method": self.method, "error_bound": self.error_bound}
        if self.lower is not None:
            out["lower"] = self.lower
            out["upper"] = self.upper
        return out


@dataclass(frozen=True)
class _Component:
    states: tuple
    lo: float  # enclosure of the spectral radius
    hi: float
    kappa: float  # max/min ratio of the positive test vector (path-count constant)


def _perron_enclosure(B: np.ndarray, width: float = ENCLOSURE_WIDTH, max_iter: int = 100000):
    """Collatz-Wielandt enclosure [lo, hi] of the spectral radius of an irreducible nonnegative B.

    Returns (lo, hi, x) with x > 0 the final test vector.
    """
    n = B.shape[0]
    if n == 1:
        r = float(B[0, 0])
        return r, r, np.ones(1)
    vals, vecs = np.linalg.eig(B)
    x = np.abs(vecs[:, int(np.argmax(vals.real))].real)
    if not np.all(x > 0):
        x = np.ones(n)
    x = x / x.max()
    M = B + np.eye(n)  # primitive, same Perron vector, radius shifted by one
    lo = hi = None
    for _ in range(max_iter):
        y = M @ x
        ratios = y / x
        lo, hi = float(ratios.min()) - 1.0, float(ratios.max()) - 1.0
        if hi - lo <= width:
            break
        x = y / y.max()
    return max(lo, 0.0), hi, x


def _components(X: Subshift):
    def build():
        dfa = X.language_dfa()
        A = dfa.adjacency()
        adj = [[t for t in row if t >= 0] for row in dfa.delta]
        comps = []
        for states in strongly_connected_components(dfa.n_states, adj):
            states = tuple(states)
            B = A[np.ix_(states, states)]
            if len(states) == 1 and B[0, 0] == 0:
                comps.append(_Component(states, 0.0, 0.0, 1.0))
                continue
            lo, hi, x = _perron_enclosure(B)
            comps.append(_Component(states, lo, hi, float(x.max() / x.min())))
        return dfa, comps

    return X._cached("entropy_components", build)


def entropy_exact_1d(X: Subshift) -> EntropyValue:
    """log of the spectral radius, enclosed to width <= 1e-10."""
    X._require_1d("exact entropy")
    if X.is_empty:
        raise InvalidInput("the empty subshift has no entropy")
    _, comps = _components(X)
    # a nonempty subshift has a cycle in its automaton, so the radius is at least 1
    lo = max(1.0, max(c.lo for c in comps))
    hi = max(lo, max(c.hi for c in comps))
    value = math.log((lo + hi) / 2)
    err = math.log(hi) - math.log(lo)
    return EntropyValue(value, "exact_perron", err, math.log(lo), math.log(hi))


def sep_count(X: Subshift, n: int, eps: float) -> int:
    """Maximal size of an (F_n, eps)-separated set: patterns on [-(n+r), n+r]."""
    if n < 0:
        raise InvalidInput("n must be nonnegative")
    r = separation_radius(eps)
    return count_language(X, Window.interval(-(n + r), n + r))


def spn_count(X: Subshift, n: int, eps: float) -> int:
    """Minimal size of an (F_n, eps)-spanning set (strict inequality): same windows as sep_count."""
    return sep_count(X, n, eps)


def _count_bound_log(X: Subshift, length: int) -> float:
    """log B with |L_length| <= B * lambda_hi**length.

    Paths of the language automaton are split by the chain of components they
    visit: inside a component c at most kappa_c * lambda**t paths of length t
    leave a state, and each of the j - 1 component changes picks a position
    (length + 1 ways) and an edge (k ways).
    """
    dfa, comps = _components(X)
    comp_of = {}
    for i, c in enumerate(comps):
        for s in c.states:
            comp_of[s] = i
    succ = [set() for _ in comps]
    for q, row in enumerate(dfa.delta):
        for t in row:
            if t >= 0 and comp_of[t] != comp_of[q]:
                succ[comp_of[q]].add(comp_of[t])
    factor = math.log(X.k * (length + 1))
    memo = {}

    def log_weight(i):  # log of kappa_i * (1 + factor' * sum of successor weights)
        if i not in memo:
            terms = [factor + log_weight(j) for j in succ[i]]
            memo[i] = math.log(comps[i].kappa) + (_logsumexp([0.0] + terms))
        return memo[i]

    return log_weight(comp_of[dfa.initial])


def _logsumexp(values) -> float:
    top = max(values)
    return top + math.log(sum(math.exp(v - top) for v in values))


def entropy_estimate(X: Subshift, n: int, eps: float = 1.0, kind: str = "sep") -> EntropyValue:
    """(1/|F_n|) log sep(X, F_n, eps) with a rigorous one-sided error bound.

    Submultiplicativity gives estimate >= h; the component bound above gives
    estimate - h <= [log B + N log lambda_hi] / |F_n| - log lambda_lo with N the
    widened window length.
    """
    X._require_1d("entropy estimates")
    if kind not in ("sep", "spn"):
        raise InvalidInput("kind must be 'sep' or 'spn'")
    if X.is_empty:
        raise InvalidInput("the empty subshift has no entropy")
    count = (sep_count if kind == "sep" else spn_count)(X, n, eps)
    size = 2 * n + 1
    value = math.log(count) / size
    exact = entropy_exact_1d(X)
    length = size + 2 * separation_radius(eps)
    bound = (_count_bound_log(X, length) + length * exact.upper) / size - exact.lower
    return EntropyValue(value, f"{kind}_estimate({n})", max(bound, 0.0))


@dataclass(frozen=True)
class GapBound:
    value: float
    eta: float
    y0_word: str
    y0_radius: int
    gap: int
    gap_prime: int
    window_size: int
    sep: int

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def gap_bound_details(Y: Subshift, Z: Subshift, eta: float | None = None) -> GapBound:
    """Concrete choices behind the entropy-gap bound.

    y0 is a point of Y containing the shortest (then least) word w of L(Y) outside
    L(Z), centred so that every point of Z differs from y0 within radius r0; eta
    is the largest 2**-k with k >= 4 (eta <= 1/10) and 2**-k <= 2**-r0, capped by
    the requested eta. F = [-g', g'] where g' = g + 2 * metric_radius(eta/4) is
    the weak-specification gap for tolerance eta/4 derived from Y's gap g.
    """
    if Y.k != Z.k:
        raise InvalidInput("Y and Z live over different alphabets")
    if Z.is_empty or Y.is_empty:
        raise InvalidInput("both subshifts must be nonempty")
    if language_difference(Z, Y) is not None:
        raise InvalidInput("Z is not contained in Y")
    if equal_language(Y, Z):
        raise InvalidInput("Z must be a proper subsystem of Y")
    cert = strong_irreducibility_gap(Y)
    if cert is None:
        raise InvalidInput("Y has no strong-irreducibility certificate")
    w = language_difference(Y, Z)
    a = (len(w) - 1) // 2
    r0 = len(w) - 1 - a
    k = max(4, r0)
    if eta is not None:
        if not 0 < eta <= 1:
            raise InvalidInput("eta must lie in (0, 1]")
        k = max(k, metric_radius(eta))
    eta_used = 2.0 ** -k
    g_prime = cert.gap + 2 * metric_radius(eta_used / 4)
    size = 2 * g_prime + 1
    sep = sep_count(Z, g_prime, eta_used)
    value = math.log1p(1.0 / sep) / size
    return GapBound(value, eta_used, "".join(map(str, w)), r0, cert.gap, g_prime, size, sep)


def entropy_gap_bound(Y: Subshift, Z: Subshift, eta: float | None = None) -> float:
    """(1/|F|) log(1 + 1/sep(Z, F, eta)), a lower bound on h(Y) - h(Z)."""
    return gap_bound_details(Y, Z, eta).value
