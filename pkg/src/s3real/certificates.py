"""Construction certificates and their structural verifier.

A certificate is a tree of steps.  Each step names only the data needed to
re-derive the next graph from the current one (a lifted vertex, a contracted
vertex set, a Hamiltonian cycle, ...); intermediate graphs are never stored,
so a certificate cannot smuggle in a forged child graph.

S3 steps
  KERNEL(name)                 graph is isomorphic to K(1,3,3), K4*, mK2 (m>=4) or Kn (n>=7)
  LIFT_EXPANSION(u, v, w)      d(u) >= 4; child is the graph with u lifted onto vw
  LAYOFF_EXPANSION(u)          d(u) >= 4; child is the graph minus u
  CONTRACT(vertices)           inner cert on the induced subgraph, quotient cert on
                               the graph with those vertices identified
  K6_EXPANSION(vertices)       the six vertices span a K6 that is a proper subgraph
                               (two of them joined by a path avoiding the K6 edges);
                               quotient cert on the graph with the K6 contracted
  Z3_PLUS_HAM(cycle)           cycle is Hamiltonian; Z3 cert on the graph minus the cycle
  SCRIPT_REDUCTION(steps)      lifting the listed triples in order ends on a kernel

Z3 steps
  Z3_KERNEL(name)              isomorphic to a Z3 entry of the atlas
  W4_CONTRACT(vertices)        five vertices span a wheel W4; quotient cert after
                               identifying them
  ATTACH(vertex)               vertex has degree >= 2; child is the graph minus it.
                               Sound because the quotient by the child is a
                               two-vertex graph with >= 2 parallel edges, which is
                               Z3-connected (checked by the oracle in the tests).
  Z3_ORACLE                    exhaustive check within the oracle edge cap
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Union

from . import __version__
from .atlas import ENTRIES, LiftScript, kernel_graph, matches_kernel
from .graph import (
    find_embedding,
    MultiGraph,
    contract,
    contract_vertices,
    has_path_avoiding,
    is_ham_cycle,
    lift,
)
from .oracles import DEFAULT_EDGE_CAP, is_z3_connected

SCHEMA = "s3real-certificate/1"


class CertificateError(ValueError):
    """Malformed certificate document."""


# -- S3 steps -------------------------------------------------------------------

@dataclass(frozen=True)
class Kernel:
    name: str


@dataclass(frozen=True)
class LiftExpansion:
    u: int
    v: int
    w: int
    child: "Certificate"


@dataclass(frozen=True)
class LayoffExpansion:
    u: int
    child: "Certificate"


@dataclass(frozen=True)
class Contract:
    vertices: tuple[int, ...]
    inner: "Certificate"
    quotient: "Certificate"


@dataclass(frozen=True)
class K6Expansion:
    vertices: tuple[int, ...]
    quotient: "Certificate"


@dataclass(frozen=True)
class Z3PlusHam:
    cycle: tuple[int, ...]
    z3: "Z3Certificate"


@dataclass(frozen=True)
class ScriptReduction:
    steps: tuple[tuple[int, int, int], ...]
    terminal: str
    match: str = "isomorphic"


Certificate = Union[Kernel, LiftExpansion, LayoffExpansion, Contract, K6Expansion, Z3PlusHam, ScriptReduction]


# -- Z3 steps -------------------------------------------------------------------

@dataclass(frozen=True)
class Z3Kernel:
    name: str


@dataclass(frozen=True)
class W4Contract:
    vertices: tuple[int, ...]
    quotient: "Z3Certificate"


@dataclass(frozen=True)
class Attach:
    vertex: int
    child: "Z3Certificate"


@dataclass(frozen=True)
class Z3Oracle:
    pass


Z3Certificate = Union[Z3Kernel, W4Contract, Attach, Z3Oracle]


_KIND = {
    Kernel: "KERNEL",
    LiftExpansion: "LIFT_EXPANSION",
    LayoffExpansion: "LAYOFF_EXPANSION",
    Contract: "CONTRACT",
    K6Expansion: "K6_EXPANSION",
    Z3PlusHam: "Z3_PLUS_HAM",
    ScriptReduction: "SCRIPT_REDUCTION",
    Z3Kernel: "Z3_KERNEL",
    W4Contract: "W4_CONTRACT",
    Attach: "ATTACH",
    Z3Oracle: "Z3_ORACLE",
}
_BY_KIND = {v: k for k, v in _KIND.items()}


def kind_of(step) -> str:
    return _KIND[type(step)]


def children(step) -> list:
    if isinstance(step, (LiftExpansion, LayoffExpansion, Attach)):
        return [step.child]
    if isinstance(step, Contract):
        return [step.inner, step.quotient]
    if isinstance(step, (K6Expansion, W4Contract)):
        return [step.quotient]
    if isinstance(step, Z3PlusHam):
        return [step.z3]
    return []


def size(cert) -> int:
    total, todo = 0, [cert]
    while todo:
        step = todo.pop()
        total += 1
        todo.extend(children(step))
    return total


def kinds_used(cert) -> set[str]:
    out, todo = set(), [cert]
    while todo:
        step = todo.pop()
        out.add(kind_of(step))
        todo.extend(children(step))
    return out


# -- the wheel ------------------------------------------------------------------

def _w4() -> MultiGraph:
    return ENTRIES["W4"].graph


# -- verification ---------------------------------------------------------------

@dataclass
class Verdict:
    ok: bool
    locus: list[str] = field(default_factory=list)
    reason: str = ""
    oracle_calls: int = 0

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "certificate verified"
        where = " > ".join(self.locus) or "root"
        return f"certificate rejected at {where}: {self.reason}"


class _Reject(Exception):
    pass


def _describe(step) -> str:
    k = kind_of(step)
    if isinstance(step, (Kernel, Z3Kernel)):
        return f"{k}({step.name})"
    if isinstance(step, LiftExpansion):
        return f"{k}({step.u},{step.v},{step.w})"
    if isinstance(step, LayoffExpansion):
        return f"{k}({step.u})"
    if isinstance(step, Attach):
        return f"{k}({step.vertex})"
    if isinstance(step, (Contract, K6Expansion, W4Contract)):
        return f"{k}({','.join(map(str, step.vertices))})"
    return k


def _require(cond, msg):
    if not cond:
        raise _Reject(msg)


def _expand(g: MultiGraph, step, z3: bool, edge_cap: int, counter: list[int]) -> list[tuple[MultiGraph, Any, bool, str]]:
    """Check one step on ``g``; return the (graph, cert, is_z3, label) children."""
    if z3:
        if isinstance(step, Z3Kernel):
            entry = ENTRIES.get(step.name)
            _require(entry is not None and entry.claim == "Z3", f"{step.name!r} is not a Z3 kernel")
            _require(find_embedding(entry.graph, g) is not None, f"graph is not isomorphic to {step.name}")
            return []
        if isinstance(step, W4Contract):
            vs = tuple(step.vertices)
            _require(len(set(vs)) == 5 and all(v in g for v in vs), "W4_CONTRACT needs five distinct vertices")
            inner = g.induced(vs)
            _require(find_embedding(_w4(), inner, spanning=True) is not None, "vertices do not span a W4")
            quotient, _ = contract_vertices(g, vs)
            return [(quotient, step.quotient, True, "quotient")]
        if isinstance(step, Attach):
            _require(step.vertex in g, f"no vertex {step.vertex}")
            _require(g.degree(step.vertex) >= 2, f"vertex {step.vertex} has {g.degree(step.vertex)} < 2 attachment edges")
            _require(g.order >= 2, "cannot attach to an empty graph")
            return [(g.without_vertex(step.vertex), step.child, True, "child")]
        if isinstance(step, Z3Oracle):
            _require(g.edge_count <= edge_cap, f"{g.edge_count} edges exceed the oracle cap {edge_cap}")
            counter[0] += 1
            _require(is_z3_connected(g, edge_cap), "oracle: graph is not Z3-connected")
            return []
        raise _Reject(f"{type(step).__name__} is not a Z3 step")

    if isinstance(step, Kernel):
        try:
            kernel_graph(step.name)
        except KeyError:
            raise _Reject(f"unknown kernel {step.name!r}") from None
        _require(matches_kernel(g, step.name), f"graph is not isomorphic to {step.name}")
        return []
    if isinstance(step, LiftExpansion):
        _require(step.u in g, f"no vertex {step.u}")
        _require(g.degree(step.u) >= 4, f"d({step.u}) = {g.degree(step.u)} < 4")
        return [(lift(g, step.u, step.v, step.w), step.child, False, "child")]
    if isinstance(step, LayoffExpansion):
        _require(step.u in g, f"no vertex {step.u}")
        _require(g.degree(step.u) >= 4, f"d({step.u}) = {g.degree(step.u)} < 4")
        return [(g.without_vertex(step.u), step.child, False, "child")]
    if isinstance(step, Contract):
        vs = tuple(step.vertices)
        _require(len(set(vs)) == len(vs) >= 1 and all(v in g for v in vs), "bad contracted vertex set")
        quotient, _ = contract_vertices(g, vs)
        return [(g.induced(vs), step.inner, False, "inner"), (quotient, step.quotient, False, "quotient")]
    if isinstance(step, K6Expansion):
        vs = tuple(step.vertices)
        _require(len(set(vs)) == 6 and all(v in g for v in vs), "K6_EXPANSION needs six distinct vertices")
        k6 = list(combinations(sorted(vs), 2))
        _require(all(g.has_edge(a, b) for a, b in k6), "the six vertices do not span a K6")
        _require(has_path_avoiding(g, vs, k6), "K6 is not a proper subgraph: no path avoiding its edges")
        quotient, _ = contract(g, k6)
        return [(quotient, step.quotient, False, "quotient")]
    if isinstance(step, Z3PlusHam):
        cyc = list(step.cycle)
        _require(is_ham_cycle(g, cyc), "cycle is not Hamiltonian in the graph")
        rest = g.with_edges([], remove=list(zip(cyc, cyc[1:] + cyc[:1])))
        return [(rest, step.z3, True, "z3")]
    if isinstance(step, ScriptReduction):
        script = LiftScript(tuple(tuple(t) for t in step.steps), step.terminal, step.match)
        _require(script.match in ("isomorphic", "spanning"), f"bad match mode {step.match!r}")
        try:
            final = script.replay(g)[-1]
        except ValueError as exc:
            raise _Reject(f"script step failed: {exc}") from None
        spanning = script.match == "spanning"
        _require(matches_kernel(final, step.terminal, spanning=spanning),
                 f"script ends on a graph not {'containing' if spanning else 'isomorphic to'} {step.terminal}")
        return []
    raise _Reject(f"{type(step).__name__} is not an S3 step")


def _run(g: MultiGraph, cert, z3: bool, edge_cap: int | None) -> Verdict:
    cap = DEFAULT_EDGE_CAP if edge_cap is None else edge_cap
    counter = [0]
    stack = [(g, cert, z3, [])]
    while stack:
        graph, step, is_z3, path = stack.pop()
        here = path + [_describe(step) if type(step) in _KIND else repr(step)[:40]]
        try:
            kids = _expand(graph, step, is_z3, cap, counter)
        except _Reject as exc:
            return Verdict(False, here, str(exc), counter[0])
        except Exception as exc:  # malformed data must not escape as a crash
            return Verdict(False, here, f"{type(exc).__name__}: {exc}", counter[0])
        for child_graph, child, child_z3, label in reversed(kids):
            stack.append((child_graph, child, child_z3, here + [label]))
    return Verdict(True, oracle_calls=counter[0])


def verify(g: MultiGraph, cert: Certificate, edge_cap: int | None = None) -> Verdict:
    return _run(g, cert, False, edge_cap)


def verify_z3(g: MultiGraph, cert: Z3Certificate, edge_cap: int | None = None) -> Verdict:
    return _run(g, cert, True, edge_cap)


# -- serialisation --------------------------------------------------------------

def to_dict(step) -> dict:
    """Nested dict form.  Deep trees are handled without recursion."""
    out: dict = {}
    todo = [(step, out)]
    while todo:
        s, d = todo.pop()
        d["step"] = kind_of(s)
        for name in s.__dataclass_fields__:
            val = getattr(s, name)
            if type(val) in _KIND:
                sub: dict = {}
                d[name] = sub
                todo.append((val, sub))
            elif isinstance(val, tuple):
                d[name] = [list(x) if isinstance(x, tuple) else x for x in val]
            else:
                d[name] = val
    return out


_CHILD_FIELDS = {"child", "inner", "quotient", "z3"}


def from_dict(doc: dict):
    """Inverse of :func:`to_dict`; raises CertificateError on bad input."""
    try:
        return _from_dict(doc)
    except CertificateError:
        raise
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from None


def _from_dict(doc: dict):
    # post-order without recursion: build children before parents
    order, todo = [], [doc]
    while todo:
        d = todo.pop()
        if not isinstance(d, dict) or d.get("step") not in _BY_KIND:
            raise CertificateError(f"unknown step {d.get('step') if isinstance(d, dict) else d!r}")
        order.append(d)
        todo.extend(d[f] for f in _CHILD_FIELDS if f in d)
    built: dict[int, Any] = {}
    for d in reversed(order):
        cls = _BY_KIND[d["step"]]
        kwargs = {}
        for name in cls.__dataclass_fields__:
            if name not in d:
                if name == "match":
                    continue
                raise CertificateError(f"{d['step']} lacks field {name!r}")
            val = d[name]
            if name in _CHILD_FIELDS:
                val = built[id(val)]
            elif name in ("vertices", "cycle"):
                val = tuple(int(x) for x in val)
            elif name == "steps":
                val = tuple(tuple(int(y) for y in x) for x in val)
            elif name in ("u", "v", "w", "vertex"):
                val = int(val)
            kwargs[name] = val
        built[id(d)] = cls(**kwargs)
    return built[id(doc)]


def dumps(cert, kind: str = "s3", extra: dict | None = None) -> str:
    doc = {"schema": SCHEMA, "version": __version__, "kind": kind, "root": to_dict(cert)}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=1, sort_keys=True)


def loads(text: str):
    """Parse a certificate document; returns ``(kind, root)``."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"not a JSON document: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise CertificateError(f"expected schema {SCHEMA!r}")
    kind = doc.get("kind", "s3")
    if kind not in ("s3", "z3"):
        raise CertificateError(f"unknown certificate kind {kind!r}")
    return kind, from_dict(doc["root"])
