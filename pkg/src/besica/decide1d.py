"""Exact surjectivity, preinjectivity and injectivity decisions for CA over Z.

A CA of radius ``r`` is read as a labelled de Bruijn graph: nodes are blocks
of ``2r`` states, an edge appends one state and carries the rule's output on
the ``2r+1`` window it spans.  Configurations are bi-infinite paths and their
images are the label sequences.

* surjectivity: the subset construction never reaches the empty set;
* preinjectivity: the pair graph has no "diamond", i.e. no path from the
  diagonal back to the diagonal that uses a disagreeing edge;
* injectivity: no bi-infinite path of the pair graph uses a disagreeing edge.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .automaton import CellularAutomaton
from .config import Pattern
from .errors import DomainError


@dataclass(frozen=True)
class DeBruijnGraph:
    states: int
    radius: int
    # out[u] = list of (v, appended state, label)
    out: tuple

    @property
    def n_nodes(self) -> int:
        return len(self.out)


def window_rule(A: CellularAutomaton) -> tuple[int, list]:
    """The rule rewritten on the contiguous window ``[-r, r]``: returns ``(r, table)``."""
    G = A.group
    if G.family != "Z" or G.rank != 1:
        raise DomainError("1D decision procedures need a CA over Z")
    r = max(abs(x[0]) for x in A.neighborhood)
    offsets = [x[0] + r for x in A.neighborhood]
    table = [A.local([w[o] for o in offsets]) for w in product(range(A.states), repeat=2 * r + 1)]
    return r, table


def de_bruijn(A: CellularAutomaton) -> DeBruijnGraph:
    r, table = window_rule(A)
    q = A.states
    n_nodes = q ** (2 * r)
    out = []
    for u in range(n_nodes):
        edges = []
        for s in range(q):
            window = u * q + s
            v = window % n_nodes if n_nodes > 1 else 0
            edges.append((v, s, table[window]))
        out.append(tuple(edges))
    return DeBruijnGraph(q, r, tuple(out))


def preimage_count(A: CellularAutomaton, w) -> int:
    """Number of words of length ``len(w) + 2r`` that the CA maps onto ``w``."""
    w = list(w)
    if not w:
        raise DomainError("word must be nonempty")
    g = de_bruijn(A)
    counts = [1] * g.n_nodes
    for sym in w:
        nxt = [0] * g.n_nodes
        for u, cu in enumerate(counts):
            if cu:
                for v, _, label in g.out[u]:
                    if label == sym:
                        nxt[v] += cu
        counts = nxt
    return sum(counts)


def goe_word(A: CellularAutomaton):
    """A shortest word with no preimage, or ``None`` when the CA is surjective."""
    g = de_bruijn(A)
    start = frozenset(range(g.n_nodes))
    parent = {start: None}
    queue = deque([start])
    while queue:
        subset = queue.popleft()
        for sym in range(g.states):
            nxt = frozenset(v for u in subset for v, _, label in g.out[u] if label == sym)
            if nxt in parent:
                continue
            parent[nxt] = (subset, sym)
            if not nxt:
                word = []
                node = nxt
                while parent[node] is not None:
                    node, s = parent[node]
                    word.append(s)
                return word[::-1]
            queue.append(nxt)
    return None


def is_surjective_z(A: CellularAutomaton) -> bool:
    return goe_word(A) is None


def is_balanced(A: CellularAutomaton) -> bool:
    """Each output state has exactly ``|Q|^{2r}`` preimage windows (necessary for surjectivity)."""
    r, table = window_rule(A)
    want = A.states ** (2 * r)
    return all(table.count(s) == want for s in range(A.states))


def _pair_edges(g: DeBruijnGraph):
    """Pair-graph edges ``((u, v), (u2, v2), differs)`` with equal labels."""
    for u in range(g.n_nodes):
        for v in range(g.n_nodes):
            for u2, a, la in g.out[u]:
                for v2, b, lb in g.out[v]:
                    if la == lb:
                        yield (u, v), (u2, v2), a != b, a, b


def is_preinjective_z(A: CellularAutomaton):
    """Return ``(True, None)`` or ``(False, (p1, p2))`` with a shortest mutually erasable pair.

    Breadth-first search over (pair node, has-diverged) from the diagonal;
    the first return to the diagonal after diverging is a minimal diamond.
    The two words read along it, shared end blocks included, are the patterns.
    """
    g = de_bruijn(A)
    succ: dict = {}
    for P, P2, differs, a, b in _pair_edges(g):
        succ.setdefault(P, []).append((P2, differs, a, b))
    starts = [((d, d), False) for d in range(g.n_nodes)]
    parent = {s: None for s in starts}
    queue = deque(starts)
    goal = None
    while queue and goal is None:
        state = queue.popleft()
        P, diverged = state
        for P2, differs, a, b in succ.get(P, ()):
            nxt = (P2, diverged or differs)
            if nxt in parent:
                continue
            parent[nxt] = (state, a, b)
            if nxt[1] and P2[0] == P2[1]:
                goal = nxt
                break
            queue.append(nxt)
    if goal is None:
        return True, None
    xs, ys = [], []
    state = goal
    while parent[state] is not None:
        state, a, b = parent[state]
        xs.append(a)
        ys.append(b)
    xs.reverse()
    ys.reverse()
    r, q = g.radius, g.states
    block = state[0][0]
    prefix = [(block // q ** (2 * r - 1 - i)) % q for i in range(2 * r)]
    x, y = prefix + xs, prefix + ys
    # the boundary blocks are shared context, so they belong to the support
    support = range(len(x))
    p1 = Pattern({(i,): x[i] for i in support})
    p2 = Pattern({(i,): y[i] for i in support})
    return False, (p1, p2)


def _infinite_nodes(nodes, edges, forward: bool) -> set:
    """Nodes with an infinite forward (or backward) path: trim sinks (or sources) repeatedly."""
    alive = set(nodes)
    adj: dict = {}
    for P, P2 in edges:
        src, dst = (P, P2) if forward else (P2, P)
        adj.setdefault(src, set()).add(dst)
    changed = True
    while changed:
        changed = False
        for P in list(alive):
            if not (adj.get(P, set()) & alive):
                alive.discard(P)
                changed = True
    return alive


def is_injective_z(A: CellularAutomaton) -> bool:
    """No two distinct bi-infinite configurations share an image."""
    g = de_bruijn(A)
    edges = [(P, P2, differs) for P, P2, differs, _, _ in _pair_edges(g)]
    nodes = {(u, v) for u in range(g.n_nodes) for v in range(g.n_nodes)}
    plain = [(P, P2) for P, P2, _ in edges]
    ahead = _infinite_nodes(nodes, plain, forward=True)
    behind = _infinite_nodes(nodes, plain, forward=False)
    return not any(differs and P in behind and P2 in ahead for P, P2, differs in edges)


@dataclass
class EcaRow:
    code: int
    surjective: bool
    preinjective: bool
    injective: bool
    balanced: bool
    witness: tuple | None
    goe: list | None


def eca_sweep(codes=range(256)) -> list:
    from .automaton import eca
    rows = []
    for code in codes:
        A = eca(code)
        pre, witness = is_preinjective_z(A)
        goe = goe_word(A)
        rows.append(EcaRow(code, goe is None, pre, is_injective_z(A), is_balanced(A), witness, goe))
    return rows
