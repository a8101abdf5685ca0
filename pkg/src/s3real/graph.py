"""Loopless multigraphs and the graph surgery used by the constructions.

Vertices are small integers.  Graph values are never mutated after
construction: every operation returns a new :class:`MultiGraph`.  Edges are
reported in canonical order, i.e. sorted pairs ``(a, b)`` with ``a < b`` and
repeated once per parallel instance; orientations elsewhere in the package
are bit vectors aligned with that order (bit 0 means ``a -> b``).
"""

from __future__ import annotations

from collections import Counter, deque
from itertools import combinations
from typing import Iterable, Sequence

from .sequences import DegreeSequence


class GraphError(ValueError):
    """A graph operation was called outside its valid domain."""


def _key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class MultiGraph:
    __slots__ = ("_adj", "_hash", "_edges")

    def __init__(self, adjacency: dict[int, dict[int, int]]):
        # adjacency is trusted here; use from_edge_list for untrusted input
        self._adj = adjacency
        self._hash = None
        self._edges = None

    # -- construction -------------------------------------------------------

    @classmethod
    def from_edge_list(cls, pairs: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "MultiGraph":
        adj: dict[int, dict[int, int]] = {int(v): {} for v in vertices}
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            adj.setdefault(u, {})
            adj.setdefault(v, {})
            adj[u][v] = adj[u].get(v, 0) + 1
            adj[v][u] = adj[v].get(u, 0) + 1
        return cls(adj)

    @classmethod
    def from_multiplicities(cls, mult: dict[tuple[int, int], int], vertices: Iterable[int] = ()) -> "MultiGraph":
        pairs = [(u, v) for (u, v), k in mult.items() for _ in range(k)]
        return cls.from_edge_list(pairs, vertices)

    @classmethod
    def complete(cls, n: int, start: int = 1) -> "MultiGraph":
        ids = range(start, start + n)
        return cls.from_edge_list(combinations(ids, 2), ids)

    @classmethod
    def cycle(cls, ids: Sequence[int]) -> "MultiGraph":
        ids = list(ids)
        return cls.from_edge_list(zip(ids, ids[1:] + ids[:1]), ids)

    # -- inspection ---------------------------------------------------------

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(self._adj))

    @property
    def order(self) -> int:
        return len(self._adj)

    def __contains__(self, v) -> bool:
        return v in self._adj

    def edges(self) -> tuple[tuple[int, int], ...]:
        """All edge instances in canonical order."""
        if self._edges is None:
            out = []
            for u in sorted(self._adj):
                for v in sorted(self._adj[u]):
                    if u < v:
                        out.extend([(u, v)] * self._adj[u][v])
            self._edges = tuple(out)
        return self._edges

    def distinct_edges(self) -> list[tuple[int, int]]:
        return sorted({e for e in self.edges()})

    @property
    def edge_count(self) -> int:
        return len(self.edges())

    def multiplicity(self, u: int, v: int) -> int:
        return self._adj.get(u, {}).get(v, 0)

    def has_edge(self, u: int, v: int) -> bool:
        return self.multiplicity(u, v) > 0

    def degree(self, v: int) -> int:
        return sum(self._adj[v].values())

    def neighbors(self, v: int) -> list[int]:
        return sorted(self._adj[v])

    def degrees(self) -> dict[int, int]:
        return {v: sum(nb.values()) for v, nb in self._adj.items()}

    def max_id(self) -> int:
        return max(self._adj) if self._adj else 0

    def fresh_id(self) -> int:
        return self.max_id() + 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented
        return self._adj == other._adj

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vertices, self.edges()))
        return self._hash

    def __repr__(self):
        return f"MultiGraph(n={self.order}, m={self.edge_count})"

    def copy_adjacency(self) -> dict[int, dict[int, int]]:
        return {v: dict(nb) for v, nb in self._adj.items()}

    # -- elementary edits (all return new graphs) --------------------------

    def with_edges(self, pairs: Iterable[tuple[int, int]], remove: Iterable[tuple[int, int]] = ()) -> "MultiGraph":
        adj = self.copy_adjacency()
        for u, v in remove:
            if adj.get(u, {}).get(v, 0) == 0:
                raise GraphError(f"edge {u}{v} is absent")
            for a, b in ((u, v), (v, u)):
                adj[a][b] -= 1
                if adj[a][b] == 0:
                    del adj[a][b]
        for u, v in pairs:
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            for a, b in ((u, v), (v, u)):
                adj.setdefault(a, {})
                adj[a][b] = adj[a].get(b, 0) + 1
        return MultiGraph(adj)

    def without_vertex(self, v: int) -> "MultiGraph":
        if v not in self._adj:
            raise GraphError(f"no vertex {v}")
        adj = {u: {w: k for w, k in nb.items() if w != v} for u, nb in self._adj.items() if u != v}
        return MultiGraph(adj)

    def induced(self, vs: Iterable[int]) -> "MultiGraph":
        keep = set(vs)
        missing = keep - set(self._adj)
        if missing:
            raise GraphError(f"unknown vertices {sorted(missing)}")
        return MultiGraph({u: {w: k for w, k in self._adj[u].items() if w in keep} for u in keep})


def from_edge_list(pairs, vertices=()) -> MultiGraph:
    return MultiGraph.from_edge_list(pairs, vertices)


def degree_sequence(g: MultiGraph) -> DegreeSequence:
    return DegreeSequence(tuple(g.degrees().values()))


def is_simple(g: MultiGraph) -> bool:
    return all(k == 1 for nb in g._adj.values() for k in nb.values())


def is_connected(g: MultiGraph) -> bool:
    vs = g.vertices
    if not vs:
        return True
    seen = {vs[0]}
    todo = [vs[0]]
    while todo:
        u = todo.pop()
        for w in g._adj[u]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(vs)


# -- the proof operations ----------------------------------------------------

def lift(g: MultiGraph, u: int, v: int, w: int) -> MultiGraph:
    """Delete ``u`` and add one edge ``vw`` (the graph written G_[u,vw])."""
    if u not in g:
        raise GraphError(f"no vertex {u}")
    if v == w:
        raise GraphError("lifting needs two distinct neighbours")
    if g.degree(u) < 4:
        raise GraphError(f"vertex {u} has degree {g.degree(u)} < 4")
    if not (g.has_edge(u, v) and g.has_edge(u, w)):
        raise GraphError(f"{u}{v} and {u}{w} must both be edges")
    return g.without_vertex(u).with_edges([(v, w)])


def contract(g: MultiGraph, edge_set: Iterable[tuple[int, int]]) -> tuple[MultiGraph, dict[int, int]]:
    """Identify the ends of every edge in ``edge_set`` and drop the loops.

    Each merged class is named by its smallest vertex id.  Returns the
    quotient and the old-id -> new-id map.
    """
    parent = {v: v for v in g.vertices}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edge_set:
        if not g.has_edge(u, v):
            raise GraphError(f"edge {u}{v} is not in the graph")
        ru, rv = find(u), find(v)
        if ru != rv:
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    mapping = {v: find(v) for v in g.vertices}
    pairs = [(mapping[a], mapping[b]) for a, b in g.edges() if mapping[a] != mapping[b]]
    return MultiGraph.from_edge_list(pairs, set(mapping.values())), mapping


def contract_vertices(g: MultiGraph, vs: Iterable[int]) -> tuple[MultiGraph, dict[int, int]]:
    """Contract every edge with both ends in ``vs``."""
    keep = set(vs)
    inner = [(a, b) for a, b in g.distinct_edges() if a in keep and b in keep]
    return contract(g, inner)


def join(g: MultiGraph, h: MultiGraph) -> MultiGraph:
    common = set(g.vertices) & set(h.vertices)
    if common:
        raise GraphError(f"vertex ids overlap: {sorted(common)}")
    pairs = list(g.edges()) + list(h.edges())
    pairs += [(a, b) for a in g.vertices for b in h.vertices]
    return MultiGraph.from_edge_list(pairs, g.vertices + h.vertices)


def complement(g: MultiGraph) -> MultiGraph:
    if not is_simple(g):
        raise GraphError("complement is defined for simple graphs only")
    vs = g.vertices
    pairs = [(a, b) for a, b in combinations(vs, 2) if not g.has_edge(a, b)]
    return MultiGraph.from_edge_list(pairs, vs)


def inverse_layoff(g: MultiGraph, targets: Sequence[int]) -> MultiGraph:
    """Add a fresh vertex joined to exactly ``targets``."""
    if len(set(targets)) != len(targets):
        raise GraphError("duplicate target vertex")
    if len(targets) < 4:
        raise GraphError("the new vertex needs degree at least 4")
    if not is_simple(g):
        raise GraphError("inverse layoff expects a simple graph")
    for t in targets:
        if t not in g:
            raise GraphError(f"no vertex {t}")
    x = g.fresh_id()
    return g.with_edges([(x, t) for t in targets])


def inverse_lift(g: MultiGraph, targets: Sequence[int], split_edge: tuple[int, int]) -> MultiGraph:
    """Add a vertex adjacent to ``targets`` and to both ends of ``split_edge``,
    deleting ``split_edge``.  Lifting the new vertex back restores ``g``."""
    u, w = split_edge
    if len(set(targets)) != len(targets):
        raise GraphError("duplicate target vertex")
    if len(targets) < 2:
        raise GraphError("need at least two targets")
    if u in targets or w in targets:
        raise GraphError("split edge touches a target")
    if not is_simple(g):
        raise GraphError("inverse lift expects a simple graph")
    if not g.has_edge(u, w):
        raise GraphError(f"split edge {u}{w} is absent")
    for t in targets:
        if t not in g:
            raise GraphError(f"no vertex {t}")
    x = g.fresh_id()
    return g.with_edges([(x, t) for t in targets] + [(x, u), (x, w)], remove=[(u, w)])


def expand_k6(g: MultiGraph, u: int, quotas: Sequence[int]) -> MultiGraph:
    """Replace ``u`` by a K6, handing u's neighbours (ascending) to the first
    ``len(quotas)`` clique vertices in blocks of the given sizes.

    The first clique vertex reuses the id ``u``; the other five are fresh.
    Contracting the clique therefore gives back ``g`` exactly.
    """
    if not is_simple(g):
        raise GraphError("K6 expansion expects a simple graph")
    if not 1 <= len(quotas) <= 5 or any(q < 1 for q in quotas):
        raise GraphError(f"bad quotas {list(quotas)}")
    nbrs = g.neighbors(u)
    if sum(quotas) != len(nbrs):
        raise GraphError(f"quotas sum to {sum(quotas)}, vertex {u} has degree {len(nbrs)}")
    clique = k6_clique_of(u, g)
    pairs = list(combinations(clique, 2))
    pos = 0
    for vi, q in zip(clique, quotas):
        pairs += [(vi, x) for x in nbrs[pos:pos + q]]
        pos += q
    return _add_vertices(g.without_vertex(u), clique).with_edges(pairs)


def _add_vertices(g: MultiGraph, vs: Iterable[int]) -> MultiGraph:
    adj = g.copy_adjacency()
    for v in vs:
        adj.setdefault(v, {})
    return MultiGraph(adj)


def k6_clique_of(u: int, g_before: MultiGraph) -> list[int]:
    """The six clique ids :func:`expand_k6` uses when expanding ``u``."""
    fresh = g_before.fresh_id()
    return [u] + list(range(fresh, fresh + 5))


def has_path_avoiding(g: MultiGraph, vs: Sequence[int], avoid: Iterable[tuple[int, int]]) -> bool:
    """True if two distinct members of ``vs`` are joined by a path that uses
    no edge from ``avoid`` (one instance removed per listed pair)."""
    h = g.with_edges([], remove=avoid)
    targets = set(vs)
    comp: dict[int, int] = {}
    for s in h.vertices:
        if s in comp:
            continue
        comp[s] = s
        todo = [s]
        while todo:
            x = todo.pop()
            for y in h._adj[x]:
                if y not in comp:
                    comp[y] = s
                    todo.append(y)
    seen = Counter(comp[v] for v in targets)
    return any(c >= 2 for c in seen.values())


# -- orientations ---------------------------------------------------------------

def orientation_arcs(g: MultiGraph, bits: Sequence[int]) -> list[tuple[int, int]]:
    edges = g.edges()
    if len(bits) != len(edges):
        raise GraphError(f"orientation has {len(bits)} bits for {len(edges)} edges")
    return [(a, b) if not bit else (b, a) for (a, b), bit in zip(edges, bits)]


def bits_from_code(code: int, m: int) -> list[int]:
    return [(code >> i) & 1 for i in range(m)]


def is_strongly_connected(g: MultiGraph, orientation: Sequence[int]) -> bool:
    arcs = orientation_arcs(g, orientation)
    vs = g.vertices
    if len(vs) <= 1:
        return True
    out: dict[int, set[int]] = {v: set() for v in vs}
    inn: dict[int, set[int]] = {v: set() for v in vs}
    for a, b in arcs:
        out[a].add(b)
        inn[b].add(a)

    def reach(adj):
        seen = {vs[0]}
        todo = [vs[0]]
        while todo:
            x = todo.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    todo.append(y)
        return len(seen) == len(vs)

    return reach(out) and reach(inn)


def boundary_of(g: MultiGraph, orientation: Sequence[int]) -> dict[int, int]:
    """Outdegree minus indegree, reduced mod 3, at every vertex."""
    net = {v: 0 for v in g.vertices}
    for a, b in orientation_arcs(g, orientation):
        net[a] += 1
        net[b] -= 1
    return {v: x % 3 for v, x in net.items()}


# -- Hamiltonicity via the Bondy–Chvátal closure --------------------------------

def bc_closure(g: MultiGraph) -> tuple[MultiGraph, list[tuple[int, int]]]:
    """Closure of a simple graph and the order in which edges were inserted.

    Pairs are scanned lexicographically; passes repeat until a full pass adds
    nothing.  Degrees are updated after each insertion.
    """
    if not is_simple(g):
        raise GraphError("closure is defined for simple graphs only")
    vs = g.vertices
    n = len(vs)
    adj = {v: set(g._adj[v]) for v in vs}
    deg = {v: len(adj[v]) for v in vs}
    added: list[tuple[int, int]] = []
    changed = True
    while changed:
        changed = False
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                if b not in adj[a] and deg[a] + deg[b] >= n:
                    adj[a].add(b)
                    adj[b].add(a)
                    deg[a] += 1
                    deg[b] += 1
                    added.append((a, b))
                    changed = True
    closure = g.with_edges(added)
    return closure, added


def is_ham_cycle(g: MultiGraph, cycle: Sequence[int]) -> bool:
    vs = g.vertices
    if len(cycle) != len(vs) or set(cycle) != set(vs) or len(vs) < 3:
        return False
    return all(g.has_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def _unwind(cycle: list[int], x: int, y: int, adj: dict[int, set[int]]) -> list[int]:
    """Reroute a Hamiltonian cycle through ``xy`` so it avoids ``xy``.

    ``adj`` must not contain ``xy`` and must satisfy ``deg(x) + deg(y) >= n``.
    """
    n = len(cycle)
    i = cycle.index(x)
    # orient the cycle so that it reads x ... y along a Hamiltonian path
    if cycle[(i + 1) % n] == y:
        path = [cycle[(i - k) % n] for k in range(n)]
    else:
        path = [cycle[(i + k) % n] for k in range(n)]
    assert path[0] == x and path[-1] == y
    for j in range(1, n - 2):
        # p_j is path[j], p_{j+1} is path[j+1] (0-based, path[0] = x)
        if path[j + 1] in adj[x] and path[j] in adj[y]:
            return [x] + _rotate(path, j)
    raise GraphError(f"no crossing pair for {x}{y}; degree condition violated")


def _rotate(path: list[int], j: int) -> list[int]:
    # x p_{j+1} ... p_n(=y) p_j p_{j-1} ... p_1, with x = p_0
    return path[j + 1:] + path[1:j + 1][::-1]


def hamiltonian_cycle(g: MultiGraph, search_cap: int = 200_000) -> list[int] | None:
    """A Hamiltonian cycle of a simple graph, or None.

    If the closure is complete, a cycle of the closure is unwound edge by edge
    (newest insertion first) until it only uses edges of ``g``.  Otherwise a
    depth-first search runs for at most ``search_cap`` extension steps; None
    then means no cycle was found within that budget.
    """
    vs = g.vertices
    n = len(vs)
    if n < 3:
        raise GraphError("a Hamiltonian cycle needs at least three vertices")
    closure, added = bc_closure(g)
    if closure.edge_count == n * (n - 1) // 2:
        adj = {v: set(closure._adj[v]) for v in vs}
        cycle = list(vs)
        for x, y in reversed(added):
            adj[x].discard(y)
            adj[y].discard(x)
            pos = cycle.index(x)
            if cycle[(pos + 1) % n] == y or cycle[(pos - 1) % n] == y:
                cycle = _unwind(cycle, x, y, adj)
        return cycle
    return _search_ham_cycle(g, search_cap)


def _search_ham_cycle(g: MultiGraph, cap: int) -> list[int] | None:
    vs = g.vertices
    n = len(vs)
    adj = {v: g.neighbors(v) for v in vs}
    start = vs[0]
    path = [start]
    on_path = {start}
    steps = 0
    stack = [iter(adj[start])]
    while stack:
        steps += 1
        if steps > cap:
            return None
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            on_path.discard(path.pop())
            continue
        if nxt in on_path:
            continue
        path.append(nxt)
        on_path.add(nxt)
        if len(path) == n:
            if g.has_edge(nxt, start):
                return path
            on_path.discard(path.pop())
            continue
        stack.append(iter(adj[nxt]))
    return None


# -- isomorphism for small graphs ------------------------------------------------

def find_embedding(pattern: MultiGraph, host: MultiGraph, spanning: bool = False) -> dict[int, int] | None:
    """Bijection ``pattern -> host`` preserving multiplicities.

    With ``spanning=True`` host multiplicities only need to dominate the
    pattern's, i.e. the pattern is a spanning subgraph of ``host``.
    """
    pv, hv = pattern.vertices, host.vertices
    if len(pv) != len(hv):
        return None
    if not spanning and pattern.edge_count != host.edge_count:
        return None
    pdeg, hdeg = pattern.degrees(), host.degrees()
    if not spanning and sorted(pdeg.values()) != sorted(hdeg.values()):
        return None
    order = sorted(pv, key=lambda v: -pdeg[v])
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def ok(p, h):
        if spanning:
            if hdeg[h] < pdeg[p]:
                return False
        elif hdeg[h] != pdeg[p]:
            return False
        for q, hq in mapping.items():
            a, b = pattern.multiplicity(p, q), host.multiplicity(h, hq)
            if (b < a) if spanning else (a != b):
                return False
        return True

    def extend(i):
        if i == len(order):
            return True
        p = order[i]
        for h in hv:
            if h in used or not ok(p, h):
                continue
            mapping[p] = h
            used.add(h)
            if extend(i + 1):
                return True
            del mapping[p]
            used.discard(h)
        return False

    return dict(mapping) if extend(0) else None


def is_isomorphic(g: MultiGraph, h: MultiGraph) -> bool:
    return find_embedding(g, h) is not None


# -- text formats ---------------------------------------------------------------

def to_edge_list_text(g: MultiGraph) -> str:
    lines = [f"{a} {b}" for a, b in g.edges()]
    touched = {v for e in g.edges() for v in e}
    lines += [str(v) for v in g.vertices if v not in touched]
    return "\n".join(lines) + "\n"


def parse_edge_list_text(text: str) -> MultiGraph:
    """Inverse of :func:`to_edge_list_text`; ``#`` starts a comment and a line
    holding a single id declares an isolated vertex."""
    pairs, singles = [], []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        try:
            ids = [int(p) for p in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integer ids, got {raw!r}") from None
        if len(ids) == 1:
            singles.append(ids[0])
        elif len(ids) == 2:
            pairs.append((ids[0], ids[1]))
        else:
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
    return MultiGraph.from_edge_list(pairs, singles)


def to_dot(g: MultiGraph, name: str = "G", dashed: Iterable[tuple[int, int]] = ()) -> str:
    dashed_left = Counter(_key(*e) for e in dashed)
    lines = [f"graph {name} {{"]
    for v in g.vertices:
        lines.append(f"  {v};")
    for a, b in g.edges():
        style = ""
        if dashed_left[(a, b)]:
            dashed_left[(a, b)] -= 1
            style = " [style=dashed]"
        lines.append(f"  {a} -- {b}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"
