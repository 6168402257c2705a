"""Subshifts over a finite alphabet: full shifts, SFTs and sofic shifts.

In one dimension every subshift is reduced to an essential edge-labeled graph
(its *presentation*); SFT forbidden patterns are recompiled to a uniform block
length first. Language questions then become questions about that graph or
about the minimal DFA of its factor language.

Two-dimensional SFTs are supported only through horizontal strips of bounded
height, recast as 1D SFTs over column symbols.
"""

from __future__ import annotations

import itertools
import os
import re
import threading
from dataclasses import dataclass
from functools import reduce
from pathlib import Path
from typing import Iterable, Sequence

from eden.errors import CapacityError, InvalidInput
from eden.graphs import (
    DFA, LabeledGraph, cyclic_vertices, difference_word, iter_bits, reachable, step_mask, subset_dfa,
)
from eden.lattice import Configuration, Pattern, Window, parse_pattern

DEFAULT_STRIP_BOUND = 8
DEFAULT_CAPACITY = 1 << 20


def capacity_limit(default: int = DEFAULT_CAPACITY) -> int:
    """Enumeration limit, overridable through ``EDEN_CAPACITY``."""
    raw = os.environ.get("EDEN_CAPACITY")
    if not raw:
        return default
    try:
        return int(float(raw))
    except ValueError:
        raise InvalidInput(f"EDEN_CAPACITY must be a number, got {raw!r}") from None


@dataclass(frozen=True)
class Alphabet:
    size: int
    names: tuple = ()

    def __post_init__(self):
        if self.size < 1:
            raise InvalidInput("alphabet needs at least one symbol")
        if self.names and len(self.names) != self.size:
            raise InvalidInput("symbol names do not match the alphabet size")


class Subshift:
    """An immutable subshift; derived presentations are memoised behind a lock."""

    KINDS = ("full", "sft", "sofic")

    def __init__(self, alphabet: Alphabet | int, dim: int = 1, kind: str = "full",
                 forbidden: Iterable[Pattern] = (), graph: LabeledGraph | None = None, name: str | None = None):
        if isinstance(alphabet, int):
            alphabet = Alphabet(alphabet)
        if kind not in self.KINDS:
            raise InvalidInput(f"unknown subshift kind {kind!r}")
        forbidden = tuple(forbidden)
        for p in forbidden:
            if len(p) == 0:
                raise InvalidInput("forbidden patterns need nonempty windows")
            if p.dim != dim:
                raise InvalidInput(f"forbidden pattern of dimension {p.dim} in a {dim}-dimensional shift")
            if any(not 0 <= s < alphabet.size for s in p.symbols):
                raise InvalidInput("forbidden pattern uses a symbol outside the alphabet")
        if kind == "sofic":
            if graph is None or dim != 1:
                raise InvalidInput("sofic shifts are one-dimensional and need a graph")
            if graph.alphabet_size != alphabet.size:
                raise InvalidInput("graph labels and alphabet disagree")
        if kind == "sft" and not forbidden:
            kind = "full"
        self.alphabet = alphabet
        self.dim = dim
        self.kind = kind
        self.forbidden = tuple(sorted(set(forbidden), key=lambda p: (p.window.cells, p.symbols)))
        self.graph = graph
        self.name = name
        self._memo = {}
        self._lock = threading.RLock()

    @classmethod
    def full(cls, k: int, dim: int = 1, name: str | None = None) -> "Subshift":
        return cls(k, dim, "full", name=name or f"full-{k}")

    @classmethod
    def sft(cls, k: int, forbidden: Iterable[Pattern | str], dim: int = 1, name: str | None = None) -> "Subshift":
        pats = [Pattern.word(p) if isinstance(p, str) else p for p in forbidden]
        return cls(k, dim, "sft", pats, name=name)

    @classmethod
    def sofic(cls, graph: LabeledGraph, name: str | None = None) -> "Subshift":
        return cls(graph.alphabet_size, 1, "sofic", graph=graph, name=name)

    @property
    def k(self) -> int:
        return self.alphabet.size

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<Subshift{label} kind={self.kind} k={self.k} dim={self.dim}>"

    def _cached(self, key, build):
        with self._lock:
            if key not in self._memo:
                self._memo[key] = build()
            return self._memo[key]

    def _require_1d(self, what: str):
        if self.dim != 1:
            raise InvalidInput(f"{what} is only available for one-dimensional subshifts")

    # -- presentations -------------------------------------------------------

    @property
    def block_length(self) -> int:
        """Uniform block length m the forbidden list is recompiled to."""
        if self.kind != "sft":
            return 1
        return max(max(h - l + 1 for l, h in zip(*p.window.bounds())) for p in self.forbidden)

    def presentation(self) -> LabeledGraph:
        """Essential edge-labeled graph whose bi-infinite label sequences form the shift."""
        self._require_1d("a graph presentation")
        return self._cached("presentation", self._build_presentation)

    def _build_presentation(self) -> LabeledGraph:
        k = self.k
        if self.kind == "full":
            return LabeledGraph(1, tuple((0, 0, a) for a in range(k)), k, ((),))
        if self.kind == "sofic":
            return self.graph.trim()
        m = self.block_length
        rules = _word_rules(self.forbidden)
        if m == 1:
            banned = {r[0][1] for r in rules}
            return LabeledGraph(1, tuple((0, 0, a) for a in range(k) if a not in banned), k, ((),)).trim()
        if k ** m > capacity_limit():
            raise CapacityError(f"recoding to {m}-blocks needs {k ** m} blocks")
        vertices = _avoiding_words(k, rules, m - 1)
        index = {w: i for i, w in enumerate(vertices)}
        edges = []
        for w in _avoiding_words(k, rules, m):
            s, t = index.get(w[:-1]), index.get(w[1:])
            if s is not None and t is not None:
                edges.append((s, t, w[-1]))
        return LabeledGraph(len(vertices), tuple(edges), k, tuple(vertices)).trim()

    def language_dfa(self) -> DFA:
        """Minimal partial DFA of the factor language (every live state accepts)."""
        self._require_1d("a language automaton")

        def build():
            g = self.presentation()
            if g.n_vertices == 0:
                return DFA([[-1] * self.k], self.k, 0)
            return subset_dfa(g, limit=capacity_limit()).minimize()

        return self._cached("dfa", build)

    @property
    def is_empty(self) -> bool:
        if self.dim == 1:
            return self.presentation().n_vertices == 0
        return False

    # -- language queries ----------------------------------------------------

    def is_allowed(self, p: Pattern) -> bool:
        """Whether the pattern occurs in some point of the shift (1D: exact)."""
        if len(p) == 0:
            return not self.is_empty
        if any(not 0 <= s < self.k for s in p.symbols):
            return False
        if self.dim != 1:
            return p in language(self, p.window)
        g = self.presentation()
        if g.n_vertices == 0:
            return False
        succ = g.successor_masks()
        full = (1 << g.n_vertices) - 1
        assign = p.as_dict()
        (lo,), (hi,) = p.window.bounds()
        mask = full
        for i in range(lo, hi + 1):
            s = assign.get((i,))
            if s is None:
                mask = reduce(lambda acc, a: acc | step_mask(succ, mask, a), range(self.k), 0)
            else:
                mask = step_mask(succ, mask, s)
            if not mask:
                return False
        return True

    def allowed_words(self, n: int) -> list:
        self._require_1d("word enumeration")
        if n == 0:
            return [()]
        return self.language_dfa().words(n)


def _word_rules(forbidden: Sequence[Pattern]) -> list:
    """1D forbidden patterns as tuples of (offset, symbol) normalised to start at 0."""
    rules = []
    for p in forbidden:
        lo = p.window.bounds()[0][0]
        rules.append(tuple((c[0] - lo, s) for c, s in zip(p.window.cells, p.symbols)))
    return rules


def _avoiding_words(k: int, rules: list, length: int) -> list:
    """Words of the given length with no occurrence of any rule, in lexicographic order."""
    by_last = {}
    for r in rules:
        by_last.setdefault(r[-1][0], []).append(r)
    out = []

    def rec(prefix):
        n = len(prefix)
        if n == length:
            out.append(tuple(prefix))
            return
        for a in range(k):
            prefix.append(a)
            bad = False
            for last, rs in by_last.items():
                start = n - last
                if start < 0:
                    continue
                for r in rs:
                    if all(prefix[start + off] == s for off, s in r):
                        bad = True
                        break
                if bad:
                    break
            if not bad:
                rec(prefix)
            prefix.pop()

    rec([])
    return out


# -- operations -----------------------------------------------------------------


def _masks_through(X: Subshift, window: Window, fixed=None):
    """Walk the hull of a 1D window with vertex-set masks.

    Yields (assignment tuple, mask) for every assignment of the window cells that
    keeps the mask nonempty; cells outside the window are left free.
    """
    g = X.presentation()
    succ = g.successor_masks()
    full = (1 << g.n_vertices) - 1
    (lo,), (hi,) = window.bounds()
    in_window = [((i,) in window) for i in range(lo, hi + 1)]

    def free_step(mask):
        out = 0
        for a in range(X.k):
            out |= step_mask(succ, mask, a)
        return out

    def rec(pos, mask, chosen):
        if pos > hi:
            yield tuple(chosen), mask
            return
        if not in_window[pos - lo]:
            nxt = free_step(mask)
            if nxt:
                yield from rec(pos + 1, nxt, chosen)
            return
        for a in range(X.k):
            nxt = step_mask(succ, mask, a)
            if nxt:
                chosen.append(a)
                yield from rec(pos + 1, nxt, chosen)
                chosen.pop()

    if g.n_vertices:
        yield from rec(lo, full, [])


def language(X: Subshift, w: Window, strip_bound: int = DEFAULT_STRIP_BOUND, margin: int = 0) -> frozenset:
    """Patterns on ``w`` that occur in some point of X.

    1D answers are exact. In 2D the box must have height at most ``strip_bound``
    and the answer is the set of patterns extendable to the horizontal strip of
    height ``height + 2*margin`` (exact for full shifts, an over-approximation for
    general SFTs, since extendability to the plane is undecidable).
    """
    if w.dim != X.dim:
        raise InvalidInput("window and subshift dimensions differ")
    if len(w) == 0:
        return frozenset({Pattern(w, ())}) if not X.is_empty else frozenset()
    if X.dim == 1:
        return frozenset(Pattern(w, symbols) for symbols, _ in _masks_through(X, w))
    if X.dim != 2:
        raise InvalidInput("only dimensions 1 and 2 are supported")
    return _strip_language(X, w, strip_bound, margin)


def count_language(X: Subshift, w: Window) -> int:
    """|language(X, w)| for a 1D window without enumerating the patterns."""
    X._require_1d("pattern counting")
    if len(w) == 0:
        return 0 if X.is_empty else 1
    if w.is_box:
        return X.language_dfa().count_words(len(w))
    g = X.presentation()
    if g.n_vertices == 0:
        return 0
    succ = g.successor_masks()
    (lo,), (hi,) = w.bounds()
    counts = {(1 << g.n_vertices) - 1: 1}
    for i in range(lo, hi + 1):
        nxt = {}
        for mask, c in counts.items():
            if (i,) in w:
                for a in range(X.k):
                    t = step_mask(succ, mask, a)
                    if t:
                        nxt[t] = nxt.get(t, 0) + c
            else:
                t = 0
                for a in range(X.k):
                    t |= step_mask(succ, mask, a)
                if t:
                    nxt[t] = nxt.get(t, 0) + c
        counts = nxt
    return sum(counts.values())


def contains(X: Subshift, x: Configuration) -> bool:
    """Membership of a periodic or finite-support configuration."""
    if x.dim != X.dim:
        raise InvalidInput("configuration and subshift dimensions differ")
    if any(not 0 <= s < X.k for s in x.symbols_used()):
        return False
    if X.kind == "full":
        return True
    if X.kind == "sft":
        return not _forbidden_occurs(X.forbidden, x)
    return _sofic_contains(X.presentation(), x)


def _forbidden_occurs(forbidden, x: Configuration) -> bool:
    for p in forbidden:
        cells = p.window.cells
        if x.is_periodic:
            box = Window.box((0,) * x.dim, tuple(q - 1 for q in x.period))
            translates = box.cells
        else:
            if all(s == x.background for s in p.symbols):
                return True
            translates = {tuple(e - c for e, c in zip(ex, cell)) for ex in x.exceptional.window for cell in cells}
        for v in translates:
            if all(x.at(tuple(a + b for a, b in zip(c, v))) == s for c, s in zip(cells, p.symbols)):
                return True
    return False


def _word_relation(g: LabeledGraph, word) -> list:
    """rel[v] = mask of vertices reachable from v along a path labeled ``word``."""
    succ = g.successor_masks()
    rel = []
    for v in range(g.n_vertices):
        mask = 1 << v
        for a in word:
            mask = step_mask(succ, mask, a)
        rel.append(mask)
    return rel


def _sofic_contains(g: LabeledGraph, x: Configuration) -> bool:
    if g.n_vertices == 0:
        return False
    if x.is_periodic:
        rel = _word_relation(g, x.fundamental.symbols)
        adj = [list(iter_bits(m)) for m in rel]
        return bool(cyclic_vertices(g.n_vertices, adj))
    b = x.background
    back = [list(iter_bits(m)) for m in _word_relation(g, (b,))]
    cyc = cyclic_vertices(g.n_vertices, back)
    left_ok = reachable(cyc, back)
    rev = [[] for _ in range(g.n_vertices)]
    for v, ws in enumerate(back):
        for w in ws:
            rev[w].append(v)
    right_ok = reachable(cyc, rev)
    if len(x.exceptional) == 0:
        return bool(cyc)
    (lo,), (hi,) = x.exceptional.window.bounds()
    word = [x.at((i,)) for i in range(lo, hi + 1)]
    rel = _word_relation(g, word)
    right_mask = sum(1 << v for v in right_ok)
    return any(rel[v] & right_mask for v in left_ok)


def language_difference(X: Subshift, Y: Subshift):
    """Shortest (then lexicographically least) word of X's language missing from Y's, or None."""
    _check_comparable(X, Y)
    return difference_word(X.language_dfa(), Y.language_dfa())


def _check_comparable(X: Subshift, Y: Subshift):
    if X.dim != 1 or Y.dim != 1:
        raise InvalidInput("language comparison is only decidable here in one dimension")
    if X.k != Y.k:
        raise InvalidInput("subshifts live over different alphabets")


def is_subshift_of(Z: Subshift, Y: Subshift) -> bool:
    return language_difference(Z, Y) is None


def equal_language(X: Subshift, Y: Subshift) -> bool:
    _check_comparable(X, Y)
    return X.language_dfa().canonical_key() == Y.language_dfa().canonical_key()


def distinguishing_word(X: Subshift, Y: Subshift):
    """A shortest word in exactly one of the two languages, with the side it belongs to."""
    a, b = language_difference(X, Y), language_difference(Y, X)
    if a is None and b is None:
        return None
    if b is None or (a is not None and (len(a), a) <= (len(b), b)):
        return a, "left"
    return b, "right"


def determinize(X: Subshift) -> Subshift:
    """Right-resolving presentation by subset construction, trimmed to its essential part."""
    X._require_1d("determinization")
    g = X.presentation()
    if g.is_right_resolving:
        return Subshift.sofic(g, name=X.name)
    dfa = subset_dfa(g, limit=capacity_limit())
    names = tuple(tuple(iter_bits(m)) for m in dfa.masks)
    rr = LabeledGraph(dfa.n_states, dfa.to_graph().edges, X.k, names).trim()
    return Subshift.sofic(rr, name=X.name)


def follower_merge(g: LabeledGraph) -> LabeledGraph:
    """Merge vertices of a right-resolving graph that have the same follower set."""
    if not g.is_right_resolving:
        raise InvalidInput("follower-set merging needs a right-resolving graph")
    delta = [[-1] * g.alphabet_size for _ in range(g.n_vertices)]
    for s, t, a in g.edges:
        delta[s][a] = t
    block = [0] * g.n_vertices
    n_blocks = 1 if g.n_vertices else 0
    while True:
        sigs = {}
        new = [sigs.setdefault((block[q],) + tuple(block[t] if t >= 0 else -1 for t in delta[q]), len(sigs))
               for q in range(g.n_vertices)]
        if len(sigs) == n_blocks:
            break
        block, n_blocks = new, len(sigs)
    edges = sorted({(block[s], block[t], a) for s, t, a in g.edges})
    return LabeledGraph(n_blocks, tuple(edges), g.alphabet_size)


def minimize(X: Subshift) -> Subshift:
    """Follower-separated right-resolving presentation (the Fischer cover when X is irreducible)."""
    rr = determinize(X)
    merged = follower_merge(rr.presentation()).trim()
    return Subshift.sofic(merged, name=X.name)


def block_graph(g: LabeledGraph, length: int):
    """States (vertex, last length-1 symbols) and transitions carrying full length-blocks.

    Returns (states, edges) with edges as (src, dst, symbol, block) where ``block``
    is the tuple of the last ``length`` symbols read. Only states reached by an
    actual path of ``length-1`` edges are kept.
    """
    if length < 1:
        raise InvalidInput("block length must be positive")
    states = [(v, ()) for v in range(g.n_vertices)]
    out_edges = [[] for _ in range(g.n_vertices)]
    for s, t, a in g.edges:
        out_edges[s].append((t, a))
    for _ in range(length - 1):
        states = sorted({(t, u + (a,)) for v, u in states for t, a in out_edges[v]})
    index = {s: i for i, s in enumerate(states)}
    edges = []
    for i, (v, u) in enumerate(states):
        for t, a in out_edges[v]:
            block = u + (a,)
            j = index.get((t, block[1:]))
            if j is not None:
                edges.append((i, j, a, block))
    return states, edges


def higher_block(X: Subshift, n: int) -> Subshift:
    """The n-block recoding X^[n], a sofic shift over the alphabet of allowed n-words."""
    X._require_1d("higher-block recoding")
    if n == 1:
        return X
    g = X.presentation()
    words = sorted({blk for *_, blk in block_graph(g, n)[1]})
    code = {w: i for i, w in enumerate(words)}
    states, edges = block_graph(g, n)
    graph = LabeledGraph(len(states), tuple((s, t, code[blk]) for s, t, _, blk in edges), len(words))
    return Subshift.sofic(graph.trim(), name=f"{X.name or 'X'}^[{n}]")


# -- two-dimensional strips -------------------------------------------------------


def strip_subshift(X: Subshift, height: int, strip_bound: int = DEFAULT_STRIP_BOUND) -> Subshift:
    """1D SFT over column symbols for the horizontal strip Z x [0, height).

    A column is encoded as sum(col[y] * k**y). Forbidden patterns are applied to
    every translate lying fully inside the strip.
    """
    if X.dim != 2:
        raise InvalidInput("strips are defined for 2D subshifts")
    if height > strip_bound:
        raise CapacityError(f"strip height {height} exceeds the bound {strip_bound}")
    k = X.k
    ncols = k ** height
    if X.kind == "full":
        return Subshift.full(ncols, name=f"strip({height})")
    width = max(max(h - l + 1 for l, h in zip(*p.window.bounds())) for p in X.forbidden)
    if ncols ** width > capacity_limit():
        raise CapacityError(f"strip recoding needs {ncols ** width} column blocks")
    columns = [tuple((c // k ** y) % k for y in range(height)) for c in range(ncols)]
    shapes = []
    for p in X.forbidden:
        (lx, ly), (hx, hy) = p.window.bounds()
        cells = [((cx - lx, cy - ly), s) for (cx, cy), s in zip(p.window.cells, p.symbols)]
        for dy in range(0, height - (hy - ly)):
            shapes.append([((cx, cy + dy), s) for (cx, cy), s in cells])

    def block_ok(block):
        n = len(block)
        for cells in shapes:
            span = max(cx for (cx, _), _ in cells) + 1
            for off in range(0, n - span + 1):
                if all(columns[block[off + cx]][cy] == s for (cx, cy), s in cells):
                    return False
        return True

    forbidden = []
    for w in range(1, width + 1):
        for block in itertools.product(range(ncols), repeat=w):
            if not block_ok(block):
                # only minimal offenders are needed
                if w == 1 or (block_ok(block[1:]) and block_ok(block[:-1])):
                    forbidden.append(Pattern.word(block))
    return Subshift(ncols, 1, "sft", forbidden, name=f"strip({height})")


def _strip_language(X: Subshift, w: Window, strip_bound: int, margin: int) -> frozenset:
    if not w.is_box:
        raise InvalidInput("2D languages are computed on boxes only")
    (x0, y0), (x1, y1) = w.bounds()
    h = y1 - y0 + 1
    strip = strip_subshift(X, h + 2 * margin, strip_bound)
    k = X.k
    out = set()
    for symbols, _ in _masks_through(strip, Window.interval(x0, x1)):
        assign = {}
        for dx, col in enumerate(symbols):
            for dy in range(h):
                assign[(x0 + dx, y0 + dy)] = (col // k ** (dy + margin)) % k
        out.add(Pattern(w, assign))
    return frozenset(out)


# -- text formats -------------------------------------------------------------------
#
#   alphabet=<k>; dim=<d>[; kind=sft|sofic][; name=<name>]
#   SFT body: one forbidden pattern per line, either in pattern text form
#   (dim=...; cells=...) or compact: a 1D word of digits where '.' marks a cell
#   outside the window, and 2D rows joined by '/' (first row is y=0).
#   Sofic body: one edge per line, ``src -label-> dst``.

_EDGE_RE = re.compile(r"^(\S+)\s+-(\d+)->\s+(\S+)$")


def _parse_compact(line: str, dim: int) -> Pattern:
    rows = line.split("/") if dim == 2 else [line]
    if dim not in (1, 2) or (dim == 1 and "/" in line):
        raise InvalidInput(f"cannot read compact pattern {line!r} in dimension {dim}")
    cells = {}
    for y, row in enumerate(rows):
        for x, ch in enumerate(row.strip()):
            if ch == ".":
                continue
            if not ch.isdigit():
                raise InvalidInput(f"bad symbol {ch!r} in {line!r}")
            cells[(x,) if dim == 1 else (x, y)] = int(ch)
    if not cells:
        raise InvalidInput(f"empty forbidden pattern {line!r}")
    return Pattern.from_cells(dim, cells)


def parse_shift(text: str, name: str | None = None) -> Subshift:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or "alphabet=" not in lines[0]:
        raise InvalidInput("shift file must start with an 'alphabet=<k>; dim=<d>' header")
    header = {}
    for part in lines[0].split(";"):
        if part.strip():
            key, _, value = part.partition("=")
            header[key.strip()] = value.strip()
    try:
        k = int(header["alphabet"])
        dim = int(header.get("dim", "1"))
    except ValueError:
        raise InvalidInput(f"bad header {lines[0]!r}") from None
    kind = header.get("kind", "sft")
    name = header.get("name", name)
    body = lines[1:]
    if kind == "sofic":
        vertex_ids, edges = {}, []
        for ln in body:
            m = _EDGE_RE.match(ln)
            if not m:
                raise InvalidInput(f"bad edge line {ln!r}; expected 'src -label-> dst'")
            s, a, t = m.groups()
            for v in (s, t):
                vertex_ids.setdefault(v, len(vertex_ids))
            edges.append((vertex_ids[s], vertex_ids[t], int(a)))
        g = LabeledGraph(len(vertex_ids), tuple(edges), k, tuple(vertex_ids))
        return Subshift.sofic(g, name=name)
    if kind not in ("sft", "full"):
        raise InvalidInput(f"unknown kind {kind!r}")
    forbidden = [parse_pattern(ln) if ln.startswith("dim=") else _parse_compact(ln, dim) for ln in body]
    return Subshift(k, dim, "sft" if forbidden else "full", forbidden, name=name)


def format_shift(X: Subshift) -> str:
    head = f"alphabet={X.k}; dim={X.dim}"
    if X.kind == "sofic":
        g = X.graph
        name = (lambda v: str(g.names[v]).replace(" ", "")) if g.names else (lambda v: f"v{v}")
        lines = [head + "; kind=sofic"] + [f"{name(s)} -{a}-> {name(t)}" for s, t, a in g.edges]
    else:
        from eden.lattice import format_pattern

        lines = [head] + [format_pattern(p) for p in X.forbidden]
    if X.name:
        lines[0] += f"; name={X.name}"
    return "\n".join(lines) + "\n"


CORPUS_DIR = Path(__file__).parent / "corpus"


def corpus_names() -> list:
    return sorted(p.stem for p in CORPUS_DIR.glob("*.shift"))


def load_shift(ref: str | os.PathLike) -> Subshift:
    """Load a subshift from a corpus name (e.g. ``golden-mean``) or a file path."""
    ref = str(ref)
    path = CORPUS_DIR / f"{ref}.shift"
    if not path.exists() and ref.endswith("-shift"):
        path = CORPUS_DIR / f"{ref[:-len('-shift')]}.shift"  # e.g. "even-shift"
    if not path.exists():
        path = Path(ref)
        if not path.exists():
            raise InvalidInput(f"no corpus shift or file named {ref!r}")
    return parse_shift(path.read_text(), name=path.stem)


def corpus() -> dict:
    return {n: load_shift(n) for n in corpus_names()}
