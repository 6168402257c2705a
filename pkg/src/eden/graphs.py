"""Edge-labeled graphs and deterministic automata over a finite alphabet.

Vertex sets are Python ints used as bitmasks. A DFA here is partial: a missing
transition (``-1``) means the word dies, and every live state accepts, which is
exactly the shape of a factorial, extendable subshift language.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from eden.errors import InvalidInput


@dataclass(frozen=True)
class LabeledGraph:
    n_vertices: int
    edges: tuple  # (source, target, label)
    alphabet_size: int
    names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        edges = tuple(tuple(int(x) for x in e) for e in self.edges)
        for s, t, a in edges:
            if not (0 <= s < self.n_vertices and 0 <= t < self.n_vertices):
                raise InvalidInput(f"edge {(s, t, a)} references a missing vertex")
            if not 0 <= a < self.alphabet_size:
                raise InvalidInput(f"edge label {a} outside alphabet of size {self.alphabet_size}")
        object.__setattr__(self, "edges", edges)

    @property
    def is_right_resolving(self) -> bool:
        seen = set()
        for s, _, a in self.edges:
            if (s, a) in seen:
                return False
            seen.add((s, a))
        return True

    def successor_masks(self) -> list:
        """succ[a][v] = bitmask of targets of a-labeled edges leaving v."""
        succ = [[0] * self.n_vertices for _ in range(self.alphabet_size)]
        for s, t, a in self.edges:
            succ[a][s] |= 1 << t
        return succ

    def predecessor_masks(self) -> list:
        pred = [[0] * self.n_vertices for _ in range(self.alphabet_size)]
        for s, t, a in self.edges:
            pred[a][t] |= 1 << s
        return pred

    def trim(self) -> "LabeledGraph":
        """Largest essential subgraph: every kept vertex has an in- and an out-edge."""
        alive = set(range(self.n_vertices))
        edges = list(self.edges)
        while True:
            has_out = {s for s, t, _ in edges}
            has_in = {t for s, t, _ in edges}
            keep = alive & has_out & has_in
            new_edges = [e for e in edges if e[0] in keep and e[1] in keep]
            if keep == alive and len(new_edges) == len(edges):
                break
            alive, edges = keep, new_edges
        order = sorted(alive)
        index = {v: i for i, v in enumerate(order)}
        names = tuple(self.names[v] for v in order) if self.names else ()
        return LabeledGraph(len(order), tuple((index[s], index[t], a) for s, t, a in edges),
                            self.alphabet_size, names)

    def __str__(self):
        name = (lambda v: str(self.names[v])) if self.names else str
        return "\n".join(f"{name(s)} -{a}-> {name(t)}" for s, t, a in self.edges)


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def step_mask(succ: Sequence, mask: int, symbol: int) -> int:
    table = succ[symbol]
    out = 0
    for v in iter_bits(mask):
        out |= table[v]
    return out


@dataclass
class DFA:
    """Partial DFA; ``delta[q][a] == -1`` is the dead transition."""

    delta: list
    alphabet_size: int
    initial: int = 0
    masks: list = field(default_factory=list)

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def run(self, word: Iterable[int], state=None) -> int:
        q = self.initial if state is None else state
        for a in word:
            if q < 0:
                return -1
            q = self.delta[q][a]
        return q

    def accepts(self, word) -> bool:
        return self.run(word) >= 0

    def minimize(self) -> "DFA":
        """Moore refinement followed by canonical BFS renumbering (symbols ascending)."""
        n, k = self.n_states, self.alphabet_size
        block = [0] * n
        n_blocks = 1
        while True:
            sigs = {}
            new_block = []
            for q in range(n):
                sig = (block[q],) + tuple(block[t] if t >= 0 else -1 for t in self.delta[q])
                new_block.append(sigs.setdefault(sig, len(sigs)))
            if len(sigs) == n_blocks:
                break
            block, n_blocks = new_block, len(sigs)
        reps = {}
        for q in range(n):
            reps.setdefault(block[q], q)
        order = {block[self.initial]: 0}
        queue = deque([block[self.initial]])
        delta = []
        while queue:
            b = queue.popleft()
            row = []
            for a in range(k):
                t = self.delta[reps[b]][a]
                if t < 0:
                    row.append(-1)
                    continue
                tb = block[t]
                if tb not in order:
                    order[tb] = len(order)
                    queue.append(tb)
                row.append(order[tb])
            delta.append(row)
        return DFA(delta, k, 0)

    def canonical_key(self) -> tuple:
        return tuple(tuple(r) for r in self.minimize().delta)

    def count_words(self, length: int) -> int:
        counts = {self.initial: 1}
        for _ in range(length):
            nxt = {}
            for q, c in counts.items():
                for t in self.delta[q]:
                    if t >= 0:
                        nxt[t] = nxt.get(t, 0) + c
            counts = nxt
        return sum(counts.values())

    def words(self, length: int):
        """All accepted words of the given length in lexicographic order."""
        out = []

        def rec(q, prefix):
            if len(prefix) == length:
                out.append(prefix)
                return
            for a in range(self.alphabet_size):
                t = self.delta[q][a]
                if t >= 0:
                    rec(t, prefix + (a,))

        rec(self.initial, ())
        return out

    def to_graph(self) -> LabeledGraph:
        edges = [(q, t, a) for q, row in enumerate(self.delta) for a, t in enumerate(row) if t >= 0]
        return LabeledGraph(self.n_states, tuple(edges), self.alphabet_size)

    def adjacency(self):
        import numpy as np

        A = np.zeros((self.n_states, self.n_states))
        for q, row in enumerate(self.delta):
            for t in row:
                if t >= 0:
                    A[q, t] += 1
        return A

    def shortest_words(self) -> list:
        """For each reachable state, its lexicographically least shortest access word."""
        access = {self.initial: ()}
        queue = deque([self.initial])
        while queue:
            q = queue.popleft()
            for a, t in enumerate(self.delta[q]):
                if t >= 0 and t not in access:
                    access[t] = access[q] + (a,)
                    queue.append(t)
        return access


def subset_dfa(graph: LabeledGraph, initial_mask: int | None = None, limit: int = 1 << 20) -> DFA:
    """Subset construction from ``initial_mask`` (default: all vertices)."""
    from eden.errors import CapacityError

    succ = graph.successor_masks()
    if initial_mask is None:
        initial_mask = (1 << graph.n_vertices) - 1
    index = {initial_mask: 0}
    masks = [initial_mask]
    delta = []
    queue = deque([initial_mask])
    while queue:
        m = queue.popleft()
        row = []
        for a in range(graph.alphabet_size):
            t = step_mask(succ, m, a)
            if not t:
                row.append(-1)
                continue
            if t not in index:
                if len(index) >= limit:
                    raise CapacityError(f"subset construction exceeded {limit} states")
                index[t] = len(masks)
                masks.append(t)
                queue.append(t)
            row.append(index[t])
        delta.append(row)
    return DFA(delta, graph.alphabet_size, 0, masks)


def difference_word(d1: DFA, d2: DFA):
    """Shortest, then lexicographically least, word accepted by d1 and rejected by d2."""
    if d1.alphabet_size != d2.alphabet_size:
        raise InvalidInput("alphabet sizes differ")
    start = (d1.initial, d2.initial)
    parent = {start: None}
    queue = deque([start])
    while queue:
        p = queue.popleft()
        q1, q2 = p
        for a in range(d1.alphabet_size):
            t1 = d1.delta[q1][a]
            if t1 < 0:
                continue
            t2 = d2.delta[q2][a]
            if t2 < 0:
                word = [a]
                node = p
                while parent[node] is not None:
                    node, sym = parent[node]
                    word.append(sym)
                return tuple(reversed(word))
            nxt = (t1, t2)
            if nxt not in parent:
                parent[nxt] = (p, a)
                queue.append(nxt)
    return None


def strongly_connected_components(n: int, adj: Sequence[Iterable[int]]) -> list:
    """Tarjan, iterative; components come out in reverse topological order."""
    index = [0] * n
    low = [0] * n
    on_stack = [False] * n
    visited = [False] * n
    stack, comps = [], []
    counter = 1
    adj = [list(a) for a in adj]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        visited[root] = True
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            if i < len(adj[v]):
                work[-1] = (v, i + 1)
                w = adj[v][i]
                if not visited[w]:
                    visited[w] = True
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            else:
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(sorted(comp))
    return comps


def cyclic_vertices(n: int, adj: Sequence[Iterable[int]]) -> set:
    """Vertices lying on some cycle."""
    adj = [list(a) for a in adj]
    out = set()
    for comp in strongly_connected_components(n, adj):
        if len(comp) > 1 or comp[0] in adj[comp[0]]:
            out.update(comp)
    return out


def reachable(sources: Iterable[int], adj: Sequence[Iterable[int]]) -> set:
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen
