"""Exhaustive orientation oracles.

An orientation of a graph with ``m`` edges is an integer code in
``[0, 2**m)``; bit ``i`` set means edge ``i`` (canonical order) runs from its
larger endpoint to its smaller one.  Boundary classes are indexed by the
residues of the first ``n - 1`` vertices in base 3; the last residue is fixed
by the zero-sum condition.

The scan is vectorised with numpy over chunks of consecutive codes.  Any
interval of codes can be scanned on its own and the partial reports merged,
so the work splits across processes by code prefix.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping, Sequence

import numpy as np

from .graph import GraphError, MultiGraph, bits_from_code, boundary_of, is_strongly_connected
from .sequences import DegreeSequence, _seq

DEFAULT_EDGE_CAP = 26
CHUNK_BITS = 16


class CapExceeded(GraphError):
    """The graph has more edges than the oracle is allowed to enumerate."""


@dataclass(frozen=True)
class BoundaryFunction:
    residues: Mapping[int, int]

    def __post_init__(self):
        res = {int(v): int(x) % 3 for v, x in dict(self.residues).items()}
        if sum(res.values()) % 3:
            raise ValueError(f"boundary does not sum to 0 mod 3: {res}")
        object.__setattr__(self, "residues", res)

    @classmethod
    def zero(cls, g: MultiGraph) -> "BoundaryFunction":
        return cls({v: 0 for v in g.vertices})

    def check_domain(self, g: MultiGraph):
        if set(self.residues) != set(g.vertices):
            raise ValueError("boundary domain differs from the vertex set")

    def class_index(self, vertices: Sequence[int]) -> int:
        idx = 0
        for i, v in enumerate(vertices[:-1]):
            idx += self.residues[v] * 3 ** i
        return idx


def boundary_from_class(vertices: Sequence[int], idx: int) -> BoundaryFunction:
    res = {}
    total = 0
    for v in vertices[:-1]:
        res[v] = idx % 3
        total += idx % 3
        idx //= 3
    if vertices:
        res[vertices[-1]] = (-total) % 3
    return BoundaryFunction(res)


@dataclass
class AchievabilityReport:
    """Per-class results of scanning the codes in ``[lo, hi)``.

    ``witness_any`` and ``witness_strong`` hold the smallest code reaching each
    class (-1 for none).  ``counts`` buckets every scanned orientation by class;
    it is only complete when the scan was not cut short.
    """

    vertices: tuple[int, ...]
    edge_count: int
    require_strong: bool
    lo: int
    hi: int
    witness_any: np.ndarray
    witness_strong: np.ndarray | None
    counts: np.ndarray
    complete: bool = True

    @property
    def classes(self) -> int:
        return len(self.witness_any)

    @property
    def achievable(self) -> np.ndarray:
        return self.witness_any >= 0

    @property
    def achievable_strong(self) -> np.ndarray | None:
        return None if self.witness_strong is None else self.witness_strong >= 0

    def all_achievable(self, strong: bool = False) -> bool:
        flags = self.achievable_strong if strong else self.achievable
        if flags is None:
            raise ValueError("strong connectivity was not scanned")
        return bool(flags.all())

    def witness(self, beta: BoundaryFunction, strong: bool = False) -> list[int] | None:
        idx = beta.class_index(self.vertices)
        table = self.witness_strong if strong else self.witness_any
        if table is None:
            raise ValueError("strong connectivity was not scanned")
        code = int(table[idx])
        return None if code < 0 else bits_from_code(code, self.edge_count)

    def missing(self, strong: bool = False) -> list[BoundaryFunction]:
        flags = self.achievable_strong if strong else self.achievable
        return [boundary_from_class(self.vertices, int(i)) for i in np.flatnonzero(~flags)]


def _min_witness(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.where(a < 0, b, a)
    both = (a >= 0) & (b >= 0)
    out[both] = np.minimum(a[both], b[both])
    return out


def merge_reports(a: AchievabilityReport, b: AchievabilityReport) -> AchievabilityReport:
    """Combine scans of disjoint code ranges.  Associative and commutative."""
    if (a.vertices, a.edge_count, a.require_strong) != (b.vertices, b.edge_count, b.require_strong):
        raise ValueError("reports describe different scans")
    strong = None
    if a.witness_strong is not None:
        strong = _min_witness(a.witness_strong, b.witness_strong)
    return AchievabilityReport(
        vertices=a.vertices,
        edge_count=a.edge_count,
        require_strong=a.require_strong,
        lo=min(a.lo, b.lo),
        hi=max(a.hi, b.hi),
        witness_any=_min_witness(a.witness_any, b.witness_any),
        witness_strong=strong,
        counts=a.counts + b.counts,
        complete=a.complete and b.complete,
    )


def prefix_ranges(m: int, prefix_bits: int) -> list[tuple[int, int]]:
    """Split ``[0, 2**m)`` by the value of the top ``prefix_bits`` bits."""
    prefix_bits = min(prefix_bits, m)
    step = 1 << (m - prefix_bits)
    return [(p * step, (p + 1) * step) for p in range(1 << prefix_bits)]


class _Tables:
    """Byte-indexed lookup tables for boundary and adjacency masks."""

    def __init__(self, g: MultiGraph):
        self.vertices = g.vertices
        pos = {v: i for i, v in enumerate(self.vertices)}
        self.n = n = len(self.vertices)
        self.edges = [(pos[a], pos[b]) for a, b in g.edges()]
        self.m = m = len(self.edges)
        self.groups = (m + 7) // 8
        byte = np.arange(256)
        self.net = np.zeros((self.groups, 256, n), dtype=np.int16)
        self.out = np.zeros((self.groups, 256, n), dtype=np.int64)
        self.inn = np.zeros((self.groups, 256, n), dtype=np.int64)
        for e, (a, b) in enumerate(self.edges):
            grp, bit = divmod(e, 8)
            flipped = ((byte >> bit) & 1).astype(bool)
            # unflipped: a -> b
            self.net[grp, :, a] += np.where(flipped, -1, 1).astype(np.int16)
            self.net[grp, :, b] += np.where(flipped, 1, -1).astype(np.int16)
            self.out[grp, :, a] |= np.where(flipped, 0, 1 << b)
            self.out[grp, :, b] |= np.where(flipped, 1 << a, 0)
            self.inn[grp, :, b] |= np.where(flipped, 0, 1 << a)
            self.inn[grp, :, a] |= np.where(flipped, 1 << b, 0)
        self.weights = (3 ** np.arange(max(n - 1, 0))).astype(np.int64)
        self.full = (1 << n) - 1

    def _bytes(self, codes: np.ndarray):
        return [((codes >> (8 * k)) & 0xFF) for k in range(self.groups)]

    def classes(self, codes: np.ndarray) -> np.ndarray:
        if self.n <= 1:
            return np.zeros(len(codes), dtype=np.int64)
        net = np.zeros((len(codes), self.n), dtype=np.int16)
        for k, byt in enumerate(self._bytes(codes)):
            net += self.net[k][byt]
        res = np.mod(net[:, :-1], 3).astype(np.int64)
        return res @ self.weights

    def _masks(self, codes, table):
        acc = np.zeros((len(codes), self.n), dtype=np.int64)
        for k, byt in enumerate(self._bytes(codes)):
            acc |= table[k][byt]
        return acc

    def _reaches_all(self, adj: np.ndarray) -> np.ndarray:
        reach = np.ones(len(adj), dtype=np.int64)
        while True:
            new = reach.copy()
            for v in range(self.n):
                has = ((reach >> v) & 1).astype(bool)
                new[has] |= adj[has, v]
            if np.array_equal(new, reach):
                return reach == self.full
            reach = new

    def strong(self, codes: np.ndarray) -> np.ndarray:
        if self.n <= 1:
            return np.ones(len(codes), dtype=bool)
        if len(codes) == 0:
            return np.zeros(0, dtype=bool)
        ok = self._reaches_all(self._masks(codes, self.out))
        sub = codes[ok]
        ok[ok] = self._reaches_all(self._masks(sub, self.inn))
        return ok


def _first_codes(classes: np.ndarray, codes: np.ndarray, size: int) -> np.ndarray:
    out = np.full(size, -1, dtype=np.int64)
    uniq, first = np.unique(classes, return_index=True)
    out[uniq] = codes[first]
    return out


def _check_cap(g: MultiGraph, edge_cap: int | None):
    cap = DEFAULT_EDGE_CAP if edge_cap is None else edge_cap
    if g.edge_count > cap:
        raise CapExceeded(f"{g.edge_count} edges exceeds the oracle cap of {cap}")


def achievable_boundaries(
    g: MultiGraph,
    require_strong: bool = True,
    edge_cap: int | None = None,
    code_range: tuple[int, int] | None = None,
    stop_when_complete: bool = False,
) -> AchievabilityReport:
    """Scan orientation codes and bucket them by boundary class.

    With ``stop_when_complete`` the scan ends once every class is reached
    (strongly, if required); the report is then marked incomplete.
    """
    _check_cap(g, edge_cap)
    t = _Tables(g)
    size = 3 ** max(t.n - 1, 0)
    lo, hi = code_range if code_range is not None else (0, 1 << t.m)
    wit_any = np.full(size, -1, dtype=np.int64)
    wit_strong = np.full(size, -1, dtype=np.int64) if require_strong else None
    counts = np.zeros(size, dtype=np.int64)
    chunk = 1 << CHUNK_BITS
    start = lo
    complete = True
    while start < hi:
        codes = np.arange(start, min(start + chunk, hi), dtype=np.int64)
        start += len(codes)
        cls = t.classes(codes)
        counts += np.bincount(cls, minlength=size)
        wit_any = _min_witness(wit_any, _first_codes(cls, codes, size))
        if require_strong:
            todo = wit_strong[cls] < 0
            cand, ccls = codes[todo], cls[todo]
            good = t.strong(cand)
            wit_strong = _min_witness(wit_strong, _first_codes(ccls[good], cand[good], size))
        if stop_when_complete:
            done = (wit_strong if require_strong else wit_any) >= 0
            if done.all() and start < hi:
                complete = False
                break
    return AchievabilityReport(
        vertices=t.vertices,
        edge_count=t.m,
        require_strong=require_strong,
        lo=lo,
        hi=hi if complete else start,
        witness_any=wit_any,
        witness_strong=wit_strong,
        counts=counts,
        complete=complete,
    )


def _scan_job(args):
    g, strong, cap, rng = args
    return achievable_boundaries(g, strong, cap, rng)


def achievable_boundaries_parallel(g: MultiGraph, require_strong: bool = True, edge_cap: int | None = None,
                                   workers: int | None = None, prefix_bits: int = 4) -> AchievabilityReport:
    """Full scan split by code prefix over a process pool."""
    from concurrent.futures import ProcessPoolExecutor

    _check_cap(g, edge_cap)
    jobs = [(g, require_strong, edge_cap, r) for r in prefix_ranges(g.edge_count, prefix_bits)]
    workers = workers or os.cpu_count() or 1
    if workers <= 1:
        parts = [_scan_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_scan_job, jobs))
    return functools.reduce(merge_reports, parts)


def _cache_key(g: MultiGraph):
    return (g.vertices, g.edges())


@functools.lru_cache(maxsize=4096)
def _decide(key, strong: bool, cap: int | None) -> bool:
    vertices, edges = key
    g = MultiGraph.from_edge_list(edges, vertices)
    rep = achievable_boundaries(g, strong, cap, stop_when_complete=True)
    flags = rep.achievable_strong if strong else rep.achievable
    return bool(flags.all())


def is_s3_connected(g: MultiGraph, edge_cap: int | None = None) -> bool:
    _check_cap(g, edge_cap)
    return _decide(_cache_key(g), True, edge_cap)


def is_z3_connected(g: MultiGraph, edge_cap: int | None = None) -> bool:
    _check_cap(g, edge_cap)
    return _decide(_cache_key(g), False, edge_cap)


def find_beta_orientation(g: MultiGraph, beta: BoundaryFunction, require_strong: bool = False,
                          edge_cap: int | None = None, prune: bool = True) -> list[int] | None:
    """Smallest orientation code realising ``beta`` (as a bit list), or None.

    Depth-first over edges from the highest index down, trying bit 0 first,
    so leaves are visited in increasing code order.  With ``prune`` a branch is
    cut once some vertex can no longer reach its residue.
    """
    _check_cap(g, edge_cap)
    beta.check_domain(g)
    vs = g.vertices
    pos = {v: i for i, v in enumerate(vs)}
    edges = [(pos[a], pos[b]) for a, b in g.edges()]
    m = len(edges)
    target = [beta.residues[v] for v in vs]
    left = [0] * len(vs)
    for a, b in edges:
        left[a] += 1
        left[b] += 1
    net = [0] * len(vs)
    bits = [0] * m

    def feasible(v):
        r = left[v]
        if r == 0:
            return (net[v] - target[v]) % 3 == 0
        if r == 1:
            return (net[v] - target[v]) % 3 != 0
        return True

    def leaf_ok():
        if any((net[v] - target[v]) % 3 for v in range(len(vs))):
            return False
        return not require_strong or is_strongly_connected(g, bits)

    def go(e):
        if e < 0:
            return leaf_ok()
        a, b = edges[e]
        left[a] -= 1
        left[b] -= 1
        for bit in (0, 1):
            s = 1 if bit == 0 else -1
            net[a] += s
            net[b] -= s
            bits[e] = bit
            if not prune or (feasible(a) and feasible(b)):
                if go(e - 1):
                    return True
            net[a] -= s
            net[b] += s
        left[a] += 1
        left[b] += 1
        bits[e] = 0
        return False

    if go(m - 1):
        return list(bits)
    return None


def validate_witness(g: MultiGraph, bits: Sequence[int], beta: BoundaryFunction, strong: bool) -> bool:
    """Independent re-check of a witness orientation."""
    if boundary_of(g, bits) != beta.residues:
        return False
    return not strong or is_strongly_connected(g, bits)


def modulo3_orientation(g: MultiGraph, edge_cap: int | None = None) -> list[int] | None:
    """A strongly connected orientation with outdegree = indegree mod 3."""
    return find_beta_orientation(g, BoundaryFunction.zero(g), True, edge_cap)


# -- realization oracle ---------------------------------------------------------

MAX_BRUTE_N = 8


def brute_force_realization(seq, simple_only: bool = True) -> MultiGraph | None:
    """Backtracking search for a graph with the given degrees (n <= 8).

    Vertices are numbered ``1..n`` in sequence order.  With
    ``simple_only=False`` parallel edges are allowed (loops never are).
    """
    seq = _seq(seq)
    n = seq.n
    if n > MAX_BRUTE_N:
        raise CapExceeded(f"brute-force realization is capped at n={MAX_BRUTE_N}")
    need = list(seq.degrees)
    if sum(need) % 2:
        return None
    chosen: list[tuple[int, int]] = []

    def fill(i):
        while i < n and need[i] == 0:
            i += 1
        if i == n:
            return True
        later = [j for j in range(i + 1, n) if need[j] > 0]
        if sum(need[j] for j in later) < need[i]:
            return False
        if simple_only:
            if len(later) < need[i]:
                return False
            for pick in combinations(later, need[i]):
                for j in pick:
                    need[j] -= 1
                    chosen.append((i + 1, j + 1))
                saved, need[i] = need[i], 0
                if fill(i + 1):
                    return True
                need[i] = saved
                for j in pick:
                    need[j] += 1
                    chosen.pop()
            return False
        return _spread(i, later, 0, need[i])

    def _spread(i, later, k, remaining):
        if remaining == 0:
            saved, need[i] = need[i], 0
            if fill(i + 1):
                return True
            need[i] = saved
            return False
        if k == len(later):
            return False
        j = later[k]
        for take in range(min(remaining, need[j]), -1, -1):
            need[j] -= take
            chosen.extend([(i + 1, j + 1)] * take)
            if _spread(i, later, k + 1, remaining - take):
                return True
            need[j] += take
            del chosen[len(chosen) - take:]
        return False

    if fill(0):
        return MultiGraph.from_edge_list(chosen, range(1, n + 1))
    return None


def brute_is_graphic(seq) -> bool:
    return brute_force_realization(seq, simple_only=True) is not None


def degree_sequence_of(g: MultiGraph) -> DegreeSequence:
    return DegreeSequence(tuple(g.degrees().values()))
