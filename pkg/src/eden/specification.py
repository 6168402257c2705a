"""Strong irreducibility, weak specification and combinatorial independence (1D).

Gap convention: a gap g means F = [-g, g]; two windows are "separated" when
their distance exceeds g, i.e. at least g free cells lie between two intervals.

The strong-irreducibility gap is decided exactly. For an essential presentation
G, a word u leaves the walk in the vertex set Fwd(u) and a word v can start
from exactly the vertices P(v). Then u f v is allowed for some f of length c iff
the c-step successor set of Fwd(u) meets P(v). Both families are finite (subset
construction on G and on its reverse), and successor sets are eventually
periodic in c, so the set of failing c is computed exactly for every pair.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from eden.errors import InconclusiveError, InvalidInput
from eden.graphs import LabeledGraph, iter_bits, subset_dfa
from eden.lattice import Pattern, Window, metric_radius
from eden.subshift import Subshift, capacity_limit


@dataclass(frozen=True)
class GluingCertificate:
    gap: int
    witness_policy: str
    checked_length: int
    failures: tuple = ()
    refutations: tuple = field(default=(), compare=False)  # (u, v, free cells) showing gap - 1 fails

    def to_dict(self) -> dict:
        return {
            "gap": self.gap,
            "checked_length": self.checked_length,
            "witness_policy": self.witness_policy,
            "failures": [list(f) for f in self.failures],
            "refutations": [{"u": u, "v": v, "free_cells": c} for u, v, c in self.refutations],
        }


def _word(w) -> str:
    return "".join(str(s) for s in w)


def _reverse(g: LabeledGraph) -> LabeledGraph:
    return LabeledGraph(g.n_vertices, tuple((t, s, a) for s, t, a in g.edges), g.alphabet_size)


def _gap_analysis(X: Subshift):
    """Exact failing free-cell counts for every (Fwd, P) pair.

    Returns (last_failure, periodic_failure, checked_length, witnesses) where
    last_failure is the largest failing c in the preperiodic range (or -1),
    periodic_failure is a failing (u, v, c) that recurs forever (or None), and
    witnesses maps each failing c to a shortest failing (u, v).
    """
    X._require_1d("strong irreducibility")
    g = X.presentation()
    if g.n_vertices == 0:
        raise InvalidInput("the empty subshift has no gluing gap")
    limit = capacity_limit()
    fwd = subset_dfa(g, limit=limit)
    bwd = subset_dfa(_reverse(g), limit=limit)
    fwd_words = fwd.shortest_words()
    bwd_words = bwd.shortest_words()
    checked = max(len(w) for w in fwd_words.values()) + max(len(w) for w in bwd_words.values())
    # one-step successor sets under any label
    step = [0] * g.n_vertices
    for s, t, _ in g.edges:
        step[s] |= 1 << t

    def succ(mask):
        out = 0
        for v in iter_bits(mask):
            out |= step[v]
        return out

    fwd_items = sorted(((fwd.masks[q], w) for q, w in fwd_words.items() if w),
                       key=lambda item: (len(item[1]), item[1]))
    bwd_items = sorted(((bwd.masks[q], w[::-1]) for q, w in bwd_words.items() if w),
                       key=lambda item: (len(item[1]), item[1]))
    last_failure = -1
    periodic = None
    witnesses = {}
    for mask, u in fwd_items:
        orbit, seen = [], {}
        m = mask
        while m not in seen:
            seen[m] = len(orbit)
            orbit.append(m)
            m = succ(m)
        pre = seen[m]
        for p, v in bwd_items:
            for c, sm in enumerate(orbit):
                if sm & p:
                    continue
                if c >= pre:
                    if periodic is None or (len(u) + len(v), u, v) < (len(periodic[0]) + len(periodic[1]),
                                                                       periodic[0], periodic[1]):
                        periodic = (u, v, c)
                else:
                    last_failure = max(last_failure, c)
                    if c not in witnesses or (len(u) + len(v), u, v) < (len(witnesses[c][0]) + len(witnesses[c][1]),
                                                                        *witnesses[c]):
                        witnesses[c] = (u, v)
    return last_failure, periodic, checked, witnesses


def strong_irreducibility_gap(X: Subshift, max_gap: int = 16, L: int = 64) -> GluingCertificate | None:
    """Smallest gap g <= max_gap at which any two allowed words glue, or None.

    Raises InconclusiveError when conclusiveness would need words longer than L.
    """
    last, periodic, checked, witnesses = _gap_analysis(X)
    if checked > L:
        raise InconclusiveError(f"a conclusive check needs words of length {checked} > L = {L}")
    if periodic is not None:
        return None
    gap = last + 1
    if gap > max_gap:
        return None
    refutations = tuple((_word(u), _word(v), c) for c, (u, v) in sorted(witnesses.items()) if c == gap - 1)
    policy = ("exact: successor-set orbits of the forward and backward subset families "
              "of the essential presentation")
    return GluingCertificate(gap, policy, checked, (), refutations)


def gap_failures(X: Subshift, gap: int) -> list:
    """Word pairs (u, v, c) that fail to glue with c >= gap free cells (empty iff gap works)."""
    last, periodic, _, witnesses = _gap_analysis(X)
    out = [(_word(u), _word(v), c) for c, (u, v) in sorted(witnesses.items()) if c >= gap]
    if periodic is not None:
        u, v, c = periodic
        out.append((_word(u), _word(v), c))
    return out


def gluing_oracle(X: Subshift, max_len: int = 6, max_gap: int = 8):
    """Brute force: smallest g with u f v allowed for all words u, v (|.| <= max_len), all c in [g, max_gap].

    Returns None when even max_gap fails. Independent of the subset-family argument.
    """
    words = [w for n in range(1, max_len + 1) for w in X.allowed_words(n)]
    dfa = X.language_dfa()
    fills = {c: X.allowed_words(c) if c else [()] for c in range(max_gap + 1)}
    failing = set()
    for c in range(max_gap + 1):
        for u in words:
            for v in words:
                if not any(dfa.accepts(u + f + v) for f in fills[c]):
                    failing.add(c)
                    break
            if c in failing:
                break
    if max_gap in failing:
        return None
    return max(failing) + 1 if failing else 0


def weak_specification_check(X: Subshift, eps: float, g: int, box_bound: int = 3, placement_bound: int = 3,
                             max_boxes: int = 3) -> bool:
    """Exhaustive weak-specification test on families of 2..max_boxes intervals.

    Intervals have lengths 1..box_bound and consecutive ones are separated by
    more than g, i.e. g..g+placement_bound free cells. Each target is an allowed
    word on its interval widened by the metric radius m of eps, so agreement
    there means eps-shadowing. One point of X must match every target at once.
    """
    X._require_1d("weak specification")
    if g < 0:
        raise InvalidInput("gap must be nonnegative")
    m = metric_radius(eps)
    graph = X.presentation()
    succ = graph.successor_masks()
    full = (1 << graph.n_vertices) - 1
    any_step = [0] * graph.n_vertices
    for s, t, _ in graph.edges:
        any_step[s] |= 1 << t
    cache = {}

    def read(mask, word):
        key = (mask, word)
        if key not in cache:
            out = mask
            for a in word:
                nxt = 0
                for v in iter_bits(out):
                    nxt |= succ[a][v]
                out = nxt
                if not out:
                    break
            cache[key] = out
        return cache[key]

    def free(mask, c):
        key = (mask, -1 - c)
        if key not in cache:
            out = mask
            for _ in range(c):
                nxt = 0
                for v in iter_bits(out):
                    nxt |= any_step[v]
                out = nxt
            cache[key] = out
        return cache[key]

    targets = {n: X.allowed_words(n + 2 * m) for n in range(1, box_bound + 1)}
    for count in range(2, max_boxes + 1):
        for lengths in _tuples(range(1, box_bound + 1), count):
            for spacing in _tuples(range(g, g + placement_bound + 1), count - 1):
                free_cells = [c - 2 * m for c in spacing]
                lists = [targets[n] for n in lengths]
                if min(free_cells) >= 0:
                    if not _all_glue(read, free, full, lists, free_cells):
                        return False
                elif not _overlapping_glue(X, lists, free_cells):
                    return False
    return True


def _tuples(values, count):
    if count == 0:
        yield ()
        return
    for head in values:
        for rest in _tuples(values, count - 1):
            yield (head,) + rest


def _all_glue(read, free, full, word_lists, free_cells) -> bool:
    """Every choice of one word per list glues with the given free-cell counts.

    The outcome after a prefix of choices depends only on the reachable vertex
    set, so results are memoised per (position, vertex set).
    """
    memo = {}

    def rec(i, mask):
        key = (i, mask)
        if key not in memo:
            memo[key] = scan(i, mask)
        return memo[key]

    def scan(i, mask):
        for w in word_lists[i]:
            nxt = read(mask, w)
            if nxt and i + 1 < len(word_lists):
                nxt = free(nxt, free_cells[i])
            if not nxt:
                return False
            if i + 1 < len(word_lists) and not rec(i + 1, nxt):
                return False
        return True

    return rec(0, full)


def _overlapping_glue(X: Subshift, word_lists, free_cells) -> bool:
    """Widened windows overlap (negative free cells): merge targets cell by cell."""
    starts = [0]
    for w, c in zip(word_lists, free_cells):
        starts.append(starts[-1] + len(w[0]) + c)
    for choice in _product(word_lists):
        cells = {}
        for start, w in zip(starts, choice):
            for i, s in enumerate(w):
                if cells.setdefault((start + i,), s) != s:
                    return False
        if not X.is_allowed(Pattern.from_cells(1, cells)):
            return False
    return True


def _product(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product(lists[1:]):
            yield (head,) + rest


# -- independence ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndependenceReport:
    tuple: tuple
    window: Window
    subset: tuple
    phi: int
    density: Fraction

    def to_dict(self) -> dict:
        return {
            "cylinders": [{str(c[0]): s for c, s in p.as_dict().items()} for p in self.tuple],
            "window": [c[0] for c in self.window.cells],
            "independence_subset": list(self.subset),
            "phi": self.phi,
            "density": f"{self.density.numerator}/{self.density.denominator}",
        }


def is_independence_set(X: Subshift, cylinders: Sequence[Pattern], J: Sequence[int]) -> bool:
    """Whether every assignment of cylinders to the positions of J is realized by one point of X.

    Scans left to right keeping the distinct (vertex mask, pending constraints)
    states of all assignment prefixes; one dead state refutes independence.
    """
    J = sorted(set(J))
    if not J:
        return True
    g = X.presentation()
    succ = g.successor_masks()
    full = (1 << g.n_vertices) - 1
    cyl = [tuple((c[0], s) for c, s in p.as_dict().items()) for p in cylinders]
    lo = min(J) + min(off for cl in cyl for off, _ in cl)
    hi = max(J) + max(off for cl in cyl for off, _ in cl)
    states = {(full, ())}
    jset = set(J)
    for i in range(lo, hi + 1):
        if i in jset:
            nxt = set()
            for mask, pending in states:
                for cl in cyl:
                    merged = dict(pending)
                    for off, s in cl:
                        pos = i + off
                        if pos < i:
                            # constraint on a cell already read: the state records no history, so
                            # only cylinders anchored at or right of their position are scanned
                            raise InvalidInput("cylinder windows must lie in [0, ...)")
                        if merged.setdefault(pos, s) != s:
                            return False
                    nxt.add((mask, tuple(sorted(merged.items()))))
            states = nxt
        nxt = set()
        for mask, pending in states:
            forced = dict(pending).pop(i, None)
            if forced is None:
                out = 0
                for a in range(X.k):
                    for v in iter_bits(mask):
                        out |= succ[a][v]
            else:
                out = 0
                for v in iter_bits(mask):
                    out |= succ[forced][v]
            if not out:
                return False
            nxt.add((out, tuple((p, s) for p, s in pending if p != i)))
        states = nxt
    return True


def _normalize_cylinders(X: Subshift, cylinders) -> list:
    out = []
    for p in cylinders:
        if isinstance(p, dict):
            p = Pattern.from_cells(1, {(int(c),): s for c, s in p.items()})
        if p.dim != 1:
            raise InvalidInput("independence is computed for 1D cylinders")
        if len(p) == 0:
            raise InvalidInput("cylinders need nonempty windows")
        if not X.is_allowed(p):
            raise InvalidInput(f"cylinder {p!r} is not in the language")
        out.append(p)
    if not out:
        raise InvalidInput("the tuple must contain at least one cylinder")
    return out


def independence_density(X: Subshift, cylinders, K: Window) -> IndependenceReport:
    """Exact phi_A(K) = largest independence subset of K, by branch and bound (|K| <= 20)."""
    X._require_1d("independence density")
    cylinders = _normalize_cylinders(X, cylinders)
    if any(min(c[0] for c in p.window.cells) < 0 for p in cylinders):
        shift = min(min(c[0] for c in p.window.cells) for p in cylinders)
        cylinders = [p.translate((-shift,)) for p in cylinders]
    cells = sorted(c[0] for c in K.cells)
    if len(cells) > 20:
        raise InvalidInput("independence density is computed exactly only for |K| <= 20")
    if not cells:
        raise InvalidInput("K must be nonempty")
    best = []
    memo = {}

    def independent(J):
        key = tuple(J)
        if key not in memo:
            memo[key] = is_independence_set(X, cylinders, J)
        return memo[key]

    def search(i, chosen):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if i == len(cells) or len(chosen) + len(cells) - i <= len(best):
            return
        cand = chosen + [cells[i]]
        if independent(cand):
            search(i + 1, cand)
        search(i + 1, chosen)

    search(0, [])
    phi = len(best)
    return IndependenceReport(tuple(cylinders), K, tuple(best), phi, Fraction(phi, len(cells)))


def ie_density_bound(X: Subshift, cylinders, cert: GluingCertificate) -> Fraction:
    """Guaranteed lower bound 1/|F| = 1/(2g+1) on the independence density."""
    _normalize_cylinders(X, cylinders)
    return Fraction(1, 2 * cert.gap + 1)
