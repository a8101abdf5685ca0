"""Constructive S3-connected realizations of degree sequences.

``realize`` follows the inductive case split for sequences with minimum
degree at least 4 and degree sum at least ``6n - 4``.  Every branch either
recurses on a shorter sequence (laying off or lifting a minimum-degree
vertex, or contracting a K6) and undoes the reduction on the graph, or ends
at a stored graph, a small explicit base, or a Z3-connected graph plus a
Hamiltonian cycle of its complement.  Each result carries a certificate
that :func:`s3real.certificates.verify` can check and a trace of the branch
labels taken.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations, islice, product

from .atlas import build_join_family, entry_for_sequence
from .certificates import (
    Certificate,
    K6Expansion,
    Kernel,
    LayoffExpansion,
    LiftExpansion,
    ScriptReduction,
    Z3Kernel,
    Z3PlusHam,
)
from .graph import (
    MultiGraph,
    complement,
    expand_k6,
    hamiltonian_cycle,
    inverse_layoff,
    inverse_lift,
    k6_clique_of,
)
from .sequences import (
    DegreeSequence,
    _seq,
    is_graphic,
    is_z3_realizable,
    laying_sequence,
    lifting_sequence,
    minus2_sequence,
)
from .z3build import Z3Builder, _pick_by_degree

TARGET_TRIES = 5000


class RealizationRejected(ValueError):
    """The sequence has no S3-connected simple realization."""

    def __init__(self, seq: DegreeSequence, condition: str):
        super().__init__(f"{seq} rejected: {condition}")
        self.seq = seq
        self.condition = condition


class CaseExhausted(RuntimeError):
    """A branch the case analysis guarantees was not available (a bug)."""


@dataclass(frozen=True)
class RealizationResult:
    graph: MultiGraph
    certificate: Certificate
    trace: tuple[str, ...]

    @property
    def sequence(self) -> DegreeSequence:
        return DegreeSequence(tuple(self.graph.degrees().values()))


def rejection_reason(seq) -> str | None:
    """The first violated condition, or None if ``seq`` should be accepted."""
    seq = _seq(seq)
    if not is_graphic(seq):
        return "not graphic"
    if seq.min < 4:
        return f"minimum degree d_n = {seq.min} < 4"
    bound = 6 * seq.n - 4
    if seq.total < bound:
        return f"degree sum {seq.total} < 6n-4 = {bound}"
    return None


def _ascending(seq: DegreeSequence, k: int) -> Counter:
    """Degrees, one lower than in ``seq``, of the ``k`` largest entries."""
    return Counter(x - 1 for x in seq.degrees[:k])


def _target_choices(g: MultiGraph, wanted: Counter):
    """Vertex sets covering the degree multiset ``wanted``, lowest ids first."""
    yield _pick_by_degree(g, wanted)
    pools = []
    for deg, cnt in sorted(wanted.items()):
        verts = [v for v in g.vertices if g.degree(v) == deg]
        pools.append(combinations(verts, cnt))
    for combo in islice(product(*pools), TARGET_TRIES):
        yield [v for part in combo for v in part]


class Realizer:
    """Memoised realizer; one instance gives identical answers per sequence."""

    def __init__(self, z3_builder: Z3Builder | None = None, ham_cap: int = 200_000):
        self.z3 = z3_builder or Z3Builder()
        self.ham_cap = ham_cap
        self._memo: dict[tuple[int, ...], RealizationResult] = {}

    # -- entry points ------------------------------------------------------------

    def realize(self, seq) -> RealizationResult:
        seq = _seq(seq)
        why = rejection_reason(seq)
        if why is not None:
            raise RealizationRejected(seq, why)
        return self._realize(seq)

    def _realize(self, seq: DegreeSequence) -> RealizationResult:
        key = seq.degrees
        if key not in self._memo:
            self._memo[key] = self._dispatch(seq)
        return self._memo[key]

    def _child(self, seq: DegreeSequence, why: str) -> RealizationResult:
        reason = rejection_reason(seq)
        if reason is not None:
            raise CaseExhausted(f"{why}: reduced sequence {seq} is {reason}")
        return self._realize(seq)

    # -- top-level split -----------------------------------------------------------

    def _dispatch(self, seq: DegreeSequence) -> RealizationResult:
        n, s, dn = seq.n, seq.total, seq.min
        d = seq.degrees
        if n == 7 or d[1] == n - 1:
            return self.realize_two_large(seq)
        if dn >= 7:
            return self._layoff(seq, "layoff: d_n >= 7")
        if dn == 6:
            if s >= 6 * n + 2:
                return self._layoff(seq, "layoff: d_n = 6, sum >= 6n+2")
            label = "lift: (6^8) onto (6^3,5^4)" if n == 8 else "lift: (6^n) onto (6^(n-5),5^4)"
            return self._lift(seq, label)
        if dn == 5:
            if s >= 6 * n:
                return self._layoff(seq, "layoff: d_n = 5, sum >= 6n")
            if s == 6 * n - 2:
                if d[2] == 5:
                    return self.build_z3_plus_ham(seq, "z3+ham: d_n = 5, sum = 6n-2, d_3 = 5")
                return self._lift(seq, "lift: d_n = 5, sum = 6n-2, d_3 >= 6")
            return self.realize_min5_tight(seq)
        if dn == 4:
            if s >= 6 * n - 2:
                if d[3] >= 5:
                    return self._layoff(seq, "layoff: d_n = 4, sum >= 6n-2, d_4 >= 5")
                return self._lift(seq, "lift: d_n = 4, sum >= 6n-2, d_4 = 4")
            return self._lift(seq, "lift: d_n = 4, sum = 6n-4")
        raise CaseExhausted(f"no branch for {seq}")

    # -- two vertices of full degree ---------------------------------------------------

    def realize_two_large(self, seq) -> RealizationResult:
        seq = _seq(seq)
        n, s, dn = seq.n, seq.total, seq.min
        d = seq.degrees
        if d[0] != n - 1 or d[1] != n - 1 or dn < 4 or s < 6 * n - 4 or n < 7:
            raise RealizationRejected(seq, "two-large case needs d_1 = d_2 = n-1, d_n >= 4, sum >= 6n-4, n >= 7")
        if n == 7:
            return self._seven(seq)
        if n == 8:
            if s == 44:
                if seq.degrees in ((7, 7, 6, 6, 5, 5, 4, 4), (7, 7, 6, 5, 5, 5, 5, 4)):
                    return self._lift(seq, "two-large n=8: sum 44, lift onto n=7 base")
                return self._atlas(seq, "two-large n=8: sum 44, stored graph")
            if dn == 5 and s == 46:
                return self._lift(seq, "two-large n=8: sum 46, d_8 = 5, lift onto (6^3,5^4)")
            return self._layoff(seq, "two-large n=8: sum >= 46, layoff")
        if dn == 4:
            if s == 6 * n - 4:
                if d[2] <= n - 2:
                    return self._lift(seq, "two-large: d_n = 4, sum = 6n-4, d_3 <= n-2, lift")
                return self._atlas(seq, "two-large: d_n = 4, sum = 6n-4, d_3 = n-1, stored graph")
            if d[3] == 4:
                return self._join(seq)
            return self._layoff(seq, "two-large: d_n = 4, sum >= 6n-2, d_4 >= 5, layoff")
        if s >= 6 * n:
            return self._layoff(seq, "two-large: d_n >= 5, sum >= 6n, layoff")
        if seq.degrees not in ((8, 8, 6) + (5,) * 6, (9, 9) + (5,) * 8):
            raise CaseExhausted(f"two-large residual case expected, got {seq}")
        return self._lift(seq, "two-large: residual d_n = 5, lift")

    def _seven(self, seq: DegreeSequence) -> RealizationResult:
        full = MultiGraph.complete(7)
        key = seq.degrees
        if key == (6,) * 7:
            return RealizationResult(full, Kernel("K7"), ("two-large n=7: K7",))
        if key == (6,) * 5 + (5, 5):
            g = full.with_edges([], remove=[(1, 2)])
            cert = K6Expansion((1, 3, 4, 5, 6, 7), Kernel("5K2"))
            return RealizationResult(g, cert, ("two-large n=7: K7 minus an edge",))
        if key == (6,) * 4 + (5, 5, 4):
            g = full.with_edges([], remove=[(1, 2), (1, 3)])
            cert = K6Expansion((2, 3, 4, 5, 6, 7), Kernel("4K2"))
            return RealizationResult(g, cert, ("two-large n=7: K7 minus two adjacent edges",))
        if key == (6,) * 3 + (5,) * 4:
            return self._atlas(seq, "two-large n=7: stored graph")
        raise CaseExhausted(f"n = 7 sequence outside the four bases: {seq}")

    def _join(self, seq: DegreeSequence) -> RealizationResult:
        n, d3 = seq.n, seq.degrees[2]
        fam = build_join_family(n, d3)
        cert = ScriptReduction(fam.script.steps, fam.script.terminal, fam.script.match)
        return RealizationResult(fam.graph, cert, ("two-large: d_n = 4, sum >= 6n-2, d_4 = 4, join family",))

    # -- minimum degree 5, tight sum -------------------------------------------------------

    def realize_min5_tight(self, seq) -> RealizationResult:
        seq = _seq(seq)
        n, s = seq.n, seq.total
        d = seq.degrees
        if seq.min < 5 or s != 6 * n - 4 or n < 7 or not is_graphic(seq):
            raise RealizationRejected(seq, "tight case needs d_n >= 5, sum = 6n-4, n >= 7, graphic")
        if n == 7 or d[1] == n - 1:
            return self.realize_two_large(seq)
        if d[0] == 6:
            if n in (8, 9):
                return self._atlas(seq, f"tight d_1 = 6, n = {n}: stored graph")
            return self.build_z3_plus_ham(seq, "tight d_1 = 6, n >= 10: z3+ham on (4^(n-4),3^4)")
        if n == 8:
            return self._atlas(seq, "tight d_1 >= 7, n = 8: stored graph")
        if n <= 11:
            return self.build_z3_plus_ham(seq, f"tight d_1 >= 7, n in 9..11, d_4 = {d[3]}: z3+ham")
        if d[2] >= n - 5:
            return self.build_z3_plus_ham(seq, "tight d_1 >= 7, n >= 12, d_3 >= n-5: z3+ham")
        top = d[0] + d[1] - 10
        if top >= n - 5:
            return self.build_z3_plus_ham(seq, "tight n >= 12, d_1+d_2-10 >= n-5: z3+ham")
        if top >= 5:
            return self._k6(seq, 2, "tight n >= 12, 5 <= d_1+d_2-10 <= n-6: K6 expansion, k = 2")
        for k in (3, 4, 5):
            if sum(d[:k]) - 5 * k >= 5:
                return self._k6(seq, k, f"tight n >= 12, d_1+d_2-10 <= 4: K6 expansion, k = {k}")
        raise CaseExhausted(f"no k in 3..5 with enough excess for {seq}")

    def _k6(self, seq: DegreeSequence, k: int, label: str) -> RealizationResult:
        n = seq.n
        d = seq.degrees
        dropped = d[n - 6 + k:]
        if any(x != 5 for x in dropped):
            raise CaseExhausted(f"K6 expansion of {seq} would drop non-5 entries {dropped}")
        merged = sum(d[:k]) - 5 * k
        reduced = DegreeSequence((merged,) + d[k:n - 6 + k])
        sub = self._child(reduced, label)
        g0 = sub.graph
        u = _pick_by_degree(g0, Counter([merged]))[0]
        clique = k6_clique_of(u, g0)
        g = expand_k6(g0, u, [x - 5 for x in d[:k]])
        return RealizationResult(g, K6Expansion(tuple(clique), sub.certificate), (label,) + sub.trace)

    # -- reductions --------------------------------------------------------------------

    def _layoff(self, seq: DegreeSequence, label: str) -> RealizationResult:
        sub = self._child(laying_sequence(seq), label)
        g0 = sub.graph
        targets = _pick_by_degree(g0, _ascending(seq, seq.min))
        x = g0.fresh_id()
        g = inverse_layoff(g0, targets)
        return RealizationResult(g, LayoffExpansion(x, sub.certificate), (label,) + sub.trace)

    def _lift(self, seq: DegreeSequence, label: str) -> RealizationResult:
        sub = self._child(lifting_sequence(seq), label)
        g0 = sub.graph
        wanted = _ascending(seq, seq.min - 2)
        for targets in _target_choices(g0, wanted):
            avoid = set(targets)
            edge = next(((a, b) for a, b in g0.distinct_edges() if a not in avoid and b not in avoid), None)
            if edge is not None:
                break
        else:
            raise CaseExhausted(f"no edge to split when lifting back to {seq}")
        x = g0.fresh_id()
        g = inverse_lift(g0, targets, edge)
        cert = LiftExpansion(x, edge[0], edge[1], sub.certificate)
        return RealizationResult(g, cert, (label,) + sub.trace)

    # -- leaves ------------------------------------------------------------------------

    def _atlas(self, seq: DegreeSequence, label: str) -> RealizationResult:
        entry = entry_for_sequence(seq, "S3")
        if entry is None:
            raise CaseExhausted(f"{label}: no stored graph for {seq}")
        if entry.script is not None:
            sc = entry.script
            cert: Certificate = ScriptReduction(sc.steps, sc.terminal, sc.match)
        elif entry.decomposition is not None:
            solid, cycle = entry.decomposition
            base = entry_for_sequence(DegreeSequence(tuple(solid.degrees().values())), "Z3")
            if base is None:
                raise CaseExhausted(f"solid part of {entry.name} is not a stored Z3 graph")
            cert = Z3PlusHam(tuple(cycle), Z3Kernel(base.name))
        else:
            cert = Kernel(entry.name)
        return RealizationResult(entry.graph, cert, (label,))

    def build_z3_plus_ham(self, seq, label: str = "z3+ham") -> RealizationResult:
        """A Z3-connected realization of ``seq - 2`` plus a Hamiltonian cycle
        of its complement."""
        seq = _seq(seq)
        low = minus2_sequence(seq)
        if not is_graphic(low) or low.n < 5 or not is_z3_realizable(low):
            raise RealizationRejected(seq, f"{low} has no Z3-connected realization")
        base = self.z3.build(low)
        cycle = hamiltonian_cycle(complement(base.graph), search_cap=self.ham_cap)
        if cycle is None:
            raise CaseExhausted(f"no Hamiltonian cycle found in the complement for {seq}")
        g = base.graph.with_edges(list(zip(cycle, cycle[1:] + cycle[:1])))
        return RealizationResult(g, Z3PlusHam(tuple(cycle), base.cert), (label,))


_DEFAULT: Realizer | None = None


def default_realizer() -> Realizer:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = Realizer()
    return _DEFAULT


def realize(seq) -> RealizationResult:
    """An S3-connected simple realization of ``seq`` with certificate and trace.

    Raises :class:`RealizationRejected` naming the violated condition.
    """
    return default_realizer().realize(seq)


def realize_two_large(seq) -> RealizationResult:
    return default_realizer().realize_two_large(seq)


def realize_min5_tight(seq) -> RealizationResult:
    return default_realizer().realize_min5_tight(seq)


def build_z3_plus_ham(seq) -> RealizationResult:
    return default_realizer().build_z3_plus_ham(seq)
