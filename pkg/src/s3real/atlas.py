"""Frozen small graphs with known connectivity, plus the join family.

Vertex ids follow the printed labels of the original drawings (``v1`` is 1
and so on).  Every entry carries a checksum of its canonical edge list; the
module refuses to load if a constant drifts.
"""

from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass
from typing import Iterable

from .graph import MultiGraph, find_embedding, lift, to_edge_list_text
from .sequences import DegreeSequence, is_graphic


class AtlasError(KeyError):
    pass


@dataclass(frozen=True)
class LiftScript:
    steps: tuple[tuple[int, int, int], ...]
    terminal: str
    # "isomorphic": the last graph must equal the kernel up to relabelling;
    # "spanning": it only needs to contain the kernel as a spanning subgraph
    match: str = "isomorphic"

    def replay(self, g: MultiGraph) -> list[MultiGraph]:
        """All intermediate graphs, starting with ``g``.  Raises on a bad step."""
        out = [g]
        for u, v, w in self.steps:
            out.append(lift(out[-1], u, v, w))
        return out

    def lands_on_kernel(self, g: MultiGraph) -> bool:
        final = self.replay(g)[-1]
        return matches_kernel(final, self.terminal, spanning=self.match == "spanning")

    def to_text(self, labels: dict[int, str] | None = None) -> str:
        name = (lambda v: labels.get(v, str(v))) if labels else str
        lines = [f"lift {name(u)} {name(v)} {name(w)}" for u, v, w in self.steps]
        lines.append(f"terminal {self.terminal} ({self.match})")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class AtlasEntry:
    name: str
    graph: MultiGraph
    claim: str  # "S3" or "Z3"
    decomposition: tuple[MultiGraph, tuple[int, ...]] | None = None
    script: LiftScript | None = None

    @property
    def sequence(self) -> DegreeSequence:
        return DegreeSequence(tuple(self.graph.degrees().values()))

    @property
    def checksum(self) -> str:
        return edge_checksum(self.graph)

    def labels(self) -> dict[int, str]:
        return {v: f"v{v}" for v in self.graph.vertices}


def edge_checksum(g: MultiGraph) -> str:
    return hashlib.sha256(to_edge_list_text(g).encode()).hexdigest()[:16]


# -- kernels ---------------------------------------------------------------------

def k133() -> MultiGraph:
    return MultiGraph.from_multiplicities({(1, 3): 1, (1, 4): 3, (3, 4): 3})


def k4_star() -> MultiGraph:
    return MultiGraph.from_multiplicities(
        {(1, 3): 1, (2, 4): 1, (1, 2): 2, (1, 4): 2, (2, 3): 2, (3, 4): 2}
    )


def parallel_k2(m: int) -> MultiGraph:
    return MultiGraph.from_edge_list([(1, 2)] * m)


_KERNEL_NAME = re.compile(r"^(?:(\d+)K2|K(\d+))$")


def kernel_graph(name: str) -> MultiGraph:
    """Graph for an S3 kernel name: ``K(1,3,3)``, ``K4*``, ``mK2`` (m >= 4) or ``Kn`` (n >= 7)."""
    if name == "K(1,3,3)":
        return k133()
    if name == "K4*":
        return k4_star()
    m = _KERNEL_NAME.match(name)
    if m and m.group(1) and int(m.group(1)) >= 4:
        return parallel_k2(int(m.group(1)))
    if m and m.group(2) and int(m.group(2)) >= 7:
        return MultiGraph.complete(int(m.group(2)))
    raise AtlasError(f"unknown kernel {name!r}")


def identify_kernel(g: MultiGraph) -> str | None:
    """Name of the S3 kernel ``g`` is isomorphic to, if any."""
    n, m = g.order, g.edge_count
    if n == 2 and m >= 4:
        return f"{m}K2"
    if n >= 7 and m == n * (n - 1) // 2 and all(g.multiplicity(a, b) == 1 for a, b in g.edges()):
        return f"K{n}"
    if n == 3 and find_embedding(k133(), g) is not None:
        return "K(1,3,3)"
    if n == 4 and find_embedding(k4_star(), g) is not None:
        return "K4*"
    return None


def matches_kernel(g: MultiGraph, name: str, spanning: bool = False) -> bool:
    try:
        kern = kernel_graph(name)
    except AtlasError:
        if name in ENTRIES and ENTRIES[name].claim == "Z3":
            kern = ENTRIES[name].graph
        else:
            return False
    if kern.order > 9 or g.order != kern.order:
        return False
    if kern.order >= 7 and not spanning:
        return identify_kernel(g) == name
    return find_embedding(kern, g, spanning=spanning) is not None


# -- stored edge lists --------------------------------------------------------------

_W4 = [(5, 6), (6, 7), (7, 8), (8, 5), (5, 9), (6, 9), (7, 9), (8, 9)]
# a W4 on 5..9 with its rim matched to the 4-cycle 1..4; contracting the wheel leaves another W4
_TWIN_WHEEL = [(1, 2), (2, 3), (3, 4), (4, 1), (1, 8), (2, 7), (3, 6), (4, 5),
               (5, 6), (6, 7), (7, 8), (8, 5), (5, 9), (6, 9), (7, 9), (8, 9)]
_TWIN_WHEEL_CYCLE = (1, 3, 8, 6, 2, 9, 4, 7, 5)

_Z3_BASES = {
    "(4^3,3^4)": [(1, 2), (1, 4), (1, 7), (2, 3), (2, 7), (3, 4), (3, 5), (3, 6),
                  (4, 5), (4, 6), (5, 7), (6, 7)],
    "(4^4,3^4)": [(1, 2), (1, 4), (1, 5), (1, 8), (2, 3), (2, 4), (2, 8), (3, 4),
                  (3, 6), (3, 7), (4, 5), (5, 6), (6, 7), (7, 8)],
    "(5,4^2,3^5)": [(1, 2), (1, 4), (1, 6), (1, 7), (1, 8), (2, 3), (2, 4), (2, 6),
                    (3, 4), (3, 5), (4, 5), (5, 8), (6, 7), (7, 8)],
    "(5^2,3^6)": [(1, 2), (1, 4), (1, 7), (2, 3), (2, 7), (3, 4), (3, 7), (4, 5),
                  (4, 6), (4, 8), (5, 6), (5, 8), (6, 7), (7, 8)],
}

# name -> (solid part, dashed Hamiltonian cycle)
_DECOMPOSED = {
    "(6^3,5^4)": ("(4^3,3^4)", (1, 3, 7, 4, 2, 5, 6)),
    "(6^4,5^4)": ("(4^4,3^4)", (1, 6, 4, 8, 3, 5, 2, 7)),
    "(7,6^2,5^5)": ("(5,4^2,3^5)", (1, 3, 8, 6, 4, 7, 2, 5)),
    "(7^2,5^6)": ("(5^2,3^6)", (1, 5, 7, 4, 2, 6, 3, 8)),
}

_K4_BASE = [(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4),
            (1, 5), (5, 2), (5, 3), (5, 4), (6, 1), (2, 6), (6, 3), (6, 4)]


def _hub3(n: int, extra: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    """Vertices 1, 2, 3 adjacent to every other vertex, plus ``extra``."""
    pairs = {(a, b) for a in (1, 2, 3) for b in range(1, n + 1) if a < b}
    return sorted(pairs) + list(extra)


_SCRIPTED = {
    "(7^4,4^4)": (
        _K4_BASE + [(7, 1), (7, 2), (3, 7), (7, 4), (8, 1), (8, 2), (8, 3), (4, 8)],
        [(5, 3, 4), (6, 2, 3), (7, 1, 2), (8, 1, 4)], "K4*"),
    "(7^3,6,5,4^3)": (
        _K4_BASE + [(7, 1), (7, 2), (3, 7), (8, 1), (8, 2), (8, 3), (4, 8), (7, 8)],
        [(5, 1, 4), (6, 3, 4), (7, 2, 3), (8, 1, 2)], "K4*"),
    "(7^3,5^3,4^2)": (
        _K4_BASE + [(7, 1), (7, 2), (3, 7), (8, 1), (8, 2), (8, 3), (5, 8), (6, 7)],
        [(7, 1, 2), (8, 2, 3), (5, 3, 4), (6, 1, 4)], "K4*"),
    "(7^2,6^3,4^3)": (
        _K4_BASE + [(7, 1), (7, 2), (8, 1), (8, 2), (3, 7), (6, 7), (6, 8), (4, 8)],
        [(5, 1, 4), (7, 2, 3), (8, 1, 2), (6, 3, 4)], "K4*"),
    "(8^3,5^2,4^4)": (
        _hub3(9, [(4, 5), (4, 8), (6, 7), (6, 9)]),
        [(9, 3, 6), (5, 3, 4), (8, 1, 4), (7, 1, 2), (6, 2, 3)], "K4*"),
    "(8^3,6,4^5)": (
        _hub3(9, [(4, 5), (4, 8), (4, 9), (6, 7)]),
        [(6, 3, 7), (9, 3, 4), (5, 1, 4), (8, 1, 2), (7, 2, 3)], "K4*"),
    "(9^3,5,4^6)": (
        _hub3(10, [(4, 6), (4, 9), (5, 8), (7, 10)]),
        [(10, 2, 7), (8, 1, 5), (9, 3, 4), (6, 1, 4), (5, 1, 2), (7, 2, 3)], "K4*"),
    "(10^3,4^8)": (
        _hub3(11, [(4, 5), (6, 7), (8, 9), (10, 11)]),
        [(4, 1, 5), (5, 2, 3), (6, 1, 7), (7, 2, 3), (8, 2, 9), (9, 1, 2),
         (10, 2, 11), (11, 1, 2)], "K(1,3,3)"),
}

# frozen at transcription time; a mismatch means a constant was edited
_CHECKSUMS = {
    "K(1,3,3)": "d928f195a3a1dd6c",
    "K4*": "29af31381319bf42",
    "W4": "329834eaa90f0319",
    "(4^5,3^4)": "f72e3f20df26f857",
    "(4^3,3^4)": "bfe2f0c40a0040b0",
    "(4^4,3^4)": "5a86f436f8c56e38",
    "(5,4^2,3^5)": "35b64a9b1906feba",
    "(5^2,3^6)": "334204787672709f",
    "(7^4,4^4)": "8178ad517c6d30c0",
    "(7^3,6,5,4^3)": "da4718429c494297",
    "(7^3,5^3,4^2)": "040859dd3e8a24db",
    "(7^2,6^3,4^3)": "da2afd1da15aae8c",
    "(8^3,5^2,4^4)": "e3952cf008c85831",
    "(8^3,6,4^5)": "a8b60155f3f2227e",
    "(9^3,5,4^6)": "31415774af18ec7b",
    "(10^3,4^8)": "934ca7a01d8e4180",
    "(6^3,5^4)": "6a5854dabbb62990",
    "(6^4,5^4)": "4a93bd1263baa27e",
    "(7,6^2,5^5)": "d351ecb5bc242aea",
    "(7^2,5^6)": "22d9c9c008716137",
    "(6^5,5^4)": "7941a49b1cb5ed35",
}


def _build() -> dict[str, AtlasEntry]:
    e: dict[str, AtlasEntry] = {}
    e["K(1,3,3)"] = AtlasEntry("K(1,3,3)", k133(), "S3")
    e["K4*"] = AtlasEntry("K4*", k4_star(), "S3")
    e["W4"] = AtlasEntry("W4", MultiGraph.from_edge_list(_W4), "Z3")
    twin = MultiGraph.from_edge_list(_TWIN_WHEEL)
    e["(4^5,3^4)"] = AtlasEntry("(4^5,3^4)", twin, "Z3")
    for name, pairs in _Z3_BASES.items():
        e[name] = AtlasEntry(name, MultiGraph.from_edge_list(pairs), "Z3")
    for name, (pairs, steps, term) in _SCRIPTED.items():
        g = MultiGraph.from_edge_list(pairs)
        e[name] = AtlasEntry(name, g, "S3", script=LiftScript(tuple(steps), term))
    for name, (solid_name, cycle) in _DECOMPOSED.items():
        solid = e[solid_name].graph
        g = solid.with_edges(zip(cycle, cycle[1:] + cycle[:1]))
        e[name] = AtlasEntry(name, g, "S3", decomposition=(solid, cycle))
    cyc = _TWIN_WHEEL_CYCLE
    g = twin.with_edges(zip(cyc, cyc[1:] + cyc[:1]))
    e["(6^5,5^4)"] = AtlasEntry("(6^5,5^4)", g, "S3", decomposition=(twin, cyc))
    return e


def _checked(entries: dict[str, AtlasEntry]) -> dict[str, AtlasEntry]:
    for name, entry in entries.items():
        if _CHECKSUMS.get(name) != entry.checksum:
            raise AtlasError(f"atlas entry {name} does not match its frozen checksum")
    return entries


ENTRIES: dict[str, AtlasEntry] = _checked(_build())


def list_entries() -> list[str]:
    return list(ENTRIES)


def get_entry(name: str) -> AtlasEntry:
    key = name.replace(" ", "")
    if key not in ENTRIES:
        raise AtlasError(f"unknown atlas entry {name!r}; known: {', '.join(ENTRIES)}")
    return ENTRIES[key]


def z3_kernel_names() -> list[str]:
    return [k for k, v in ENTRIES.items() if v.claim == "Z3"]


def entry_for_sequence(seq, claim: str) -> AtlasEntry | None:
    for entry in ENTRIES.values():
        if entry.claim == claim and entry.sequence == seq:
            return entry
    return None


# -- the join family ---------------------------------------------------------------

@dataclass(frozen=True)
class JoinFamily:
    graph: MultiGraph
    script: LiftScript
    labels: dict[int, str]
    hub: int
    u1: int
    u2: int


def build_join_family(n: int, d3: int) -> JoinFamily:
    """K2 joined with ``(d3 - 2) / 2`` cycles that share one hub vertex.

    Ids: ``u1 = 1``, ``u2 = 2``, hub ``u = 3``, cycle vertices from 4 on.
    Every cycle has two non-hub vertices except the last, which takes the
    remainder.  The script lifts each cycle away, sending the first
    ``(d3 - 2) // 4`` cycles onto ``u u1`` and the rest onto ``u u2``.
    """
    if d3 % 2 or d3 < 10 or d3 > n - 1:
        raise ValueError(f"need even 10 <= d3 <= n-1, got n={n}, d3={d3}")
    seq = DegreeSequence((n - 1, n - 1, d3) + (4,) * (n - 3))
    if not is_graphic(seq):
        raise ValueError(f"{seq} is not graphic")
    d = (d3 - 2) // 2
    if n - 3 < 2 * d:
        raise ValueError("not enough vertices for the cycles")
    sizes = [2] * (d - 1) + [n - 3 - 2 * (d - 1)]
    u1, u2, hub = 1, 2, 3
    labels = {u1: "u1", u2: "u2", hub: "u"}
    pairs = [(u1, u2)]
    cycles = []
    nxt = 4
    for i, size in enumerate(sizes, start=1):
        cyc = list(range(nxt, nxt + size))
        nxt += size
        for j, v in enumerate(cyc, start=1):
            labels[v] = f"v({i},{j})"
        cycles.append(cyc)
        path = [hub] + cyc + [hub]
        pairs += list(zip(path, path[1:]))
    rest = [v for v in range(3, nxt)]
    pairs += [(k, v) for k in (u1, u2) for v in rest]
    g = MultiGraph.from_edge_list(pairs)
    p = (d3 - 2) // 4
    steps = []
    for i, cyc in enumerate(cycles):
        for a, b in zip(cyc, cyc[1:]):
            steps.append((a, hub, b))
        steps.append((cyc[-1], hub, u1 if i < p else u2))
    return JoinFamily(g, LiftScript(tuple(steps), "K(1,3,3)", match="spanning"), labels, hub, u1, u2)
