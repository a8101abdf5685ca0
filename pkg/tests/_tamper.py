"""Certificate mutations that can never describe a valid construction."""

import dataclasses

from s3real.atlas import ENTRIES
from s3real.certificates import Kernel, ScriptReduction, Z3Kernel, Z3Oracle

ABSENT = 10 ** 6
_CHILDREN = ("child", "inner", "quotient", "z3")
_VERTEX_FIELDS = ("u", "v", "w", "vertex")
_SEQ_FIELDS = ("vertices", "cycle")


def paths(cert, prefix=()):
    """Field paths to every node of the tree."""
    out = [prefix]
    for name in _CHILDREN:
        sub = getattr(cert, name, None)
        if sub is not None:
            out += paths(sub, prefix + (name,))
    return out


def node_at(cert, path):
    for name in path:
        cert = getattr(cert, name)
    return cert


def replace_at(cert, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    return dataclasses.replace(cert, **{head: replace_at(getattr(cert, head), rest, new)})


def _other_kernel(name: str) -> str:
    # a kernel of a different order or size, so the leaf can never match it
    if name == "K(1,3,3)":
        return "K4*"
    if name == "K4*":
        return "K(1,3,3)"
    if name.endswith("K2"):
        return f"{int(name[:-2]) + 1}K2"
    return f"K{int(name[1:]) + 1}"


def _other_z3(name: str) -> str:
    g = ENTRIES[name].graph
    for other, entry in ENTRIES.items():
        if entry.claim == "Z3" and (entry.graph.order, entry.graph.edge_count) != (g.order, g.edge_count):
            return other
    raise AssertionError("no distinguishable Z3 kernel")


def mutations(node):
    """Every invalidating single-field change of one node."""
    out = []
    if isinstance(node, Kernel):
        out.append(dataclasses.replace(node, name=_other_kernel(node.name)))
    if isinstance(node, Z3Kernel):
        out.append(dataclasses.replace(node, name=_other_z3(node.name)))
    if isinstance(node, ScriptReduction):
        out.append(dataclasses.replace(node, terminal=_other_kernel(node.terminal)))
        for i, step in enumerate(node.steps):
            for j in range(3):
                bad = step[:j] + (ABSENT,) + step[j + 1:]
                out.append(dataclasses.replace(node, steps=node.steps[:i] + (bad,) + node.steps[i + 1:]))
    for name in _VERTEX_FIELDS:
        if hasattr(node, name):
            out.append(dataclasses.replace(node, **{name: ABSENT}))
    for name in _SEQ_FIELDS:
        seq = getattr(node, name, None)
        if seq:
            for i in range(len(seq)):
                out.append(dataclasses.replace(node, **{name: seq[:i] + (ABSENT,) + seq[i + 1:]}))
    return out


def tampered(cert, draw_index):
    """One tampered copy of ``cert``; ``draw_index(k)`` picks among k options."""
    options = [(p, m) for p in paths(cert) if not isinstance(node_at(cert, p), Z3Oracle)
               for m in mutations(node_at(cert, p))]
    path, new = options[draw_index(len(options))]
    return replace_at(cert, path, new)
