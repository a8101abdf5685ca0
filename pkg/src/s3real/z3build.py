"""Certificate-producing construction of Z3-connected simple realizations.

The search works on degree sequences and is memoised per sequence.  Moves,
tried in order:

* atlas: the sequence is one of the stored Z3-connected graphs;
* wheel: the graph is a W4 glued onto a smaller Z3-connected graph.  A hub
  entry ``h >= 4`` and four rim entries ``r_i >= 3`` collapse to one entry
  ``h + sum(r_i) - 16``;
* attach: the graph is a smaller Z3-connected graph plus one vertex with at
  least two edges (Havel-Hakimi style choice of neighbours);
* oracle: for small edge counts, a Havel-Hakimi realization is perturbed by
  seeded double-edge swaps until the exhaustive oracle accepts one.

A wheel collapse preserves ``sum = 4n - 4`` while attaching a vertex of
degree ``d`` raises ``sum - 4n`` by ``2d - 4``, so tight sequences with
minimum degree 3 are reachable only through wheels or the oracle.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .atlas import ENTRIES, entry_for_sequence
from .certificates import Attach, W4Contract, Z3Certificate, Z3Kernel, Z3Oracle
from .graph import MultiGraph
from .oracles import is_z3_connected
from .sequences import DegreeSequence, SequenceError, _seq, is_graphic, is_z3_realizable

DEFAULT_BUDGET = 20_000
DEFAULT_ORACLE_EDGES = 22
SWAP_TRIES = 60


class Unconstructed(RuntimeError):
    """The builder gave up; existence is not in doubt, only construction."""


@dataclass(frozen=True)
class Z3Result:
    graph: MultiGraph
    cert: Z3Certificate


def havel_hakimi(seq) -> MultiGraph:
    """Realization on ids ``1..n`` in sequence order (raises if not graphic)."""
    seq = _seq(seq)
    need = {i + 1: d for i, d in enumerate(seq.degrees)}
    pairs = []
    while True:
        live = sorted((v for v in need if need[v] > 0), key=lambda v: (-need[v], v))
        if not live:
            break
        v = live[0]
        k = need[v]
        others = live[1:k + 1]
        if len(others) < k:
            raise SequenceError(f"{seq} is not graphic")
        need[v] = 0
        for w in others:
            need[w] -= 1
            pairs.append((v, w))
    return MultiGraph.from_edge_list(pairs, range(1, seq.n + 1))


def _pick_by_degree(g: MultiGraph, wanted: Counter, exclude=()) -> list[int]:
    """Lowest ids whose current degrees cover the multiset ``wanted``."""
    left = Counter(wanted)
    out = []
    for v in g.vertices:
        if v in exclude:
            continue
        d = g.degree(v)
        if left[d] > 0:
            left[d] -= 1
            out.append(v)
    if sum(left.values()):
        raise AssertionError(f"degree pattern {dict(wanted)} not present")
    return out


def _valid_target(seq: DegreeSequence) -> bool:
    if seq.n == 1:
        return seq.degrees == (0,)
    if seq.n < 5 or seq.min < 2 or not is_graphic(seq):
        return False
    return is_z3_realizable(seq)


class Z3Builder:
    def __init__(self, budget: int = DEFAULT_BUDGET, seed: int = 0,
                 oracle_edges: int = DEFAULT_ORACLE_EDGES):
        self.budget = budget
        self.seed = seed
        self.oracle_edges = oracle_edges
        self._memo: dict[tuple[int, ...], Z3Result | None] = {}
        self.spent = 0

    # -- public ---------------------------------------------------------------

    def build(self, seq) -> Z3Result:
        seq = _seq(seq)
        if not _valid_target(seq):
            raise SequenceError(f"{seq} has no Z3-connected simple realization")
        self.spent = 0
        res = self._search(seq)
        if res is None:
            raise Unconstructed(
                f"unconstructed: no certificate found for {seq} within budget {self.budget}"
                " (existence of a Z3-connected realization is guaranteed)")
        return res

    # -- search -----------------------------------------------------------------

    def _search(self, seq: DegreeSequence) -> Z3Result | None:
        key = seq.degrees
        if key in self._memo:
            return self._memo[key]
        self.spent += 1
        if self.spent > self.budget:
            return None
        self._memo[key] = None  # guards against cycles while exploring
        res = self._atlas(seq) or self._wheel(seq) or self._attach(seq) or self._oracle(seq)
        if res is not None or self.spent <= self.budget:
            self._memo[key] = res
        else:
            del self._memo[key]
        return res

    def _atlas(self, seq):
        if seq.degrees == (0,):
            return Z3Result(MultiGraph.from_edge_list([], [1]), Z3Oracle())
        entry = entry_for_sequence(seq, "Z3")
        if entry is None:
            return None
        return Z3Result(entry.graph, Z3Kernel(entry.name))

    def _wheel_moves(self, seq: DegreeSequence):
        count = Counter(seq.degrees)
        values = sorted(count, reverse=True)
        for h in (v for v in values if v >= 4):
            rest = count.copy()
            rest[h] -= 1
            rim_vals = sorted((v for v in rest if v >= 3 and rest[v] > 0), reverse=True)
            for rims in combinations_with_replacement(rim_vals, 4):
                use = Counter(rims)
                if any(use[v] > rest[v] for v in use):
                    continue
                left = rest - use
                d = h + sum(rims) - 16
                quotient = list(left.elements())
                if d > 0:
                    quotient.append(d)
                if not quotient:
                    quotient = [0]
                yield h, rims, d, DegreeSequence(tuple(quotient))

    def _wheel(self, seq: DegreeSequence):
        if seq.n < 5:
            return None
        for h, rims, d, quotient in self._wheel_moves(seq):
            if not _valid_target(quotient) or (quotient.n > 1 and d < 2):
                continue
            sub = self._search(quotient)
            if sub is None:
                continue
            return self._expand_wheel(sub, h, rims, d)
        return None

    def _expand_wheel(self, sub: Z3Result, h: int, rims, d: int) -> Z3Result:
        q = sub.graph
        x = _pick_by_degree(q, Counter([d]))[0]
        nbrs = q.neighbors(x)
        fresh = q.fresh_id()
        rim_ids = list(range(fresh, fresh + 4))
        base = q.without_vertex(x)
        pairs = [(x, r) for r in rim_ids]
        pairs += [(rim_ids[i], rim_ids[(i + 1) % 4]) for i in range(4)]
        quotas = [(x, h - 4)] + [(r, val - 3) for r, val in zip(rim_ids, rims)]
        pos = 0
        for v, k in quotas:
            pairs += [(v, w) for w in nbrs[pos:pos + k]]
            pos += k
        g = MultiGraph.from_edge_list(pairs, list(base.vertices) + [x] + rim_ids)
        g = g.with_edges(base.edges())
        return Z3Result(g, W4Contract((x, *rim_ids), sub.cert))

    def _attach_moves(self, seq: DegreeSequence):
        degs = list(seq.degrees)
        seen = set()
        for dx in sorted(set(degs)):
            if dx < 2:
                continue
            rest = list(degs)
            rest.remove(dx)
            if dx > len(rest):
                continue
            variants = [
                list(range(dx)),  # the largest entries
                [i for i in range(len(rest)) if rest[i] > 2][-dx:],  # the smallest entries above 2
            ]
            for idx in variants:
                if len(idx) != dx:
                    continue
                child = [r - 1 if i in idx else r for i, r in enumerate(rest)]
                key = tuple(sorted(child, reverse=True))
                if key in seen:
                    continue
                seen.add(key)
                yield dx, Counter(child[i] for i in idx), DegreeSequence(key)

    def _attach(self, seq: DegreeSequence):
        for dx, wanted, child in self._attach_moves(seq):
            if not _valid_target(child) or child.n == 1:
                continue
            sub = self._search(child)
            if sub is None:
                continue
            c = sub.graph
            targets = _pick_by_degree(c, wanted)
            x = c.fresh_id()
            g = c.with_edges([(x, t) for t in targets])
            return Z3Result(g, Attach(x, sub.cert))
        return None

    def _oracle(self, seq: DegreeSequence):
        if seq.total // 2 > self.oracle_edges:
            return None
        rng = random.Random(f"{self.seed}:{seq}")
        g = havel_hakimi(seq)
        for _ in range(SWAP_TRIES):
            self.spent += 1
            if is_z3_connected(g):
                return Z3Result(g, Z3Oracle())
            g = _random_swap(g, rng, 3)
        return None


def _random_swap(g: MultiGraph, rng: random.Random, rounds: int) -> MultiGraph:
    """Degree-preserving double-edge swaps that keep the graph simple."""
    for _ in range(rounds):
        edges = g.distinct_edges()
        for _ in range(20):
            (a, b), (c, d) = rng.sample(edges, 2)
            if rng.random() < 0.5:
                c, d = d, c
            if len({a, b, c, d}) < 4 or g.has_edge(a, d) or g.has_edge(c, b):
                continue
            g = g.with_edges([(a, d), (c, b)], remove=[(a, b), (c, d)])
            break
    return g


_DEFAULT = None


def build_z3_realization(seq, budget: int | None = None, seed: int = 0) -> Z3Result:
    """Z3-connected simple realization of ``seq`` with its certificate."""
    global _DEFAULT
    if budget is None and seed == 0:
        if _DEFAULT is None:
            _DEFAULT = Z3Builder()
        return _DEFAULT.build(seq)
    return Z3Builder(budget=budget or DEFAULT_BUDGET, seed=seed).build(seq)
