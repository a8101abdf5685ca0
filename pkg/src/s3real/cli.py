"""Command-line interface.

Exit codes: 0 success or a true verdict, 1 a false verdict or a rejection,
2 usage errors (bad arguments, unknown names, oracle cap exceeded), 3 an
internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

from . import __version__
from .atlas import AtlasError, get_entry, kernel_graph, list_entries
from .certificates import CertificateError, dumps, loads, to_dict, verify, verify_z3
from .graph import (
    GraphError,
    MultiGraph,
    orientation_arcs,
    parse_edge_list_text,
    to_dot,
    to_edge_list_text,
)
from .oracles import DEFAULT_EDGE_CAP, CapExceeded, is_s3_connected, is_z3_connected, modulo3_orientation
from .realize import CaseExhausted, RealizationRejected, Realizer
from .sequences import SequenceError, is_graphic, parse
from .z3build import DEFAULT_BUDGET, DEFAULT_ORACLE_EDGES, Unconstructed, Z3Builder

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
FORMATS = ("text", "structured", "dot")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    cap: int = DEFAULT_EDGE_CAP
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    format: str = "text"

    def __post_init__(self):
        if self.cap < 0 or self.budget < 0:
            raise UsageError("cap and budget must be non-negative")
        if self.format not in FORMATS:
            raise UsageError(f"format must be one of {', '.join(FORMATS)}")

    def realizer(self) -> Realizer:
        builder = Z3Builder(budget=self.budget, seed=self.seed,
                            oracle_edges=min(DEFAULT_ORACLE_EDGES, self.cap))
        return Realizer(builder)


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None


def config_from(args) -> RunConfig:
    return RunConfig(
        cap=args.cap if args.cap is not None else _env_int("S3REAL_CAP", DEFAULT_EDGE_CAP),
        budget=args.budget if args.budget is not None else _env_int("S3REAL_BUDGET", DEFAULT_BUDGET),
        seed=args.seed if args.seed is not None else _env_int("S3REAL_SEED", 0),
        format=args.format or os.environ.get("S3REAL_FORMAT") or "text",
    )


def _emit_structured(cfg: RunConfig, command: str, payload: dict) -> None:
    doc = {"tool": "s3real", "version": __version__, "config": asdict(cfg), "command": command}
    doc.update(payload)
    print(json.dumps(doc, indent=1, sort_keys=True))


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


_COMPLETE = re.compile(r"^K(\d+)$")
_PARALLEL = re.compile(r"^(\d+)K2$")


def load_graph(source: str) -> MultiGraph:
    """An edge-list file, or a name: ``Kn``, ``mK2``, ``K(1,3,3)``, ``K4*`` or
    an atlas entry."""
    path = Path(source)
    if path.is_file():
        try:
            return parse_edge_list_text(path.read_text())
        except GraphError as exc:
            raise UsageError(f"{source}: {exc}") from None
    name = source.replace(" ", "")
    m = _COMPLETE.match(name)
    if m:
        return MultiGraph.complete(int(m.group(1)))
    m = _PARALLEL.match(name)
    if m and int(m.group(1)) >= 1:
        return MultiGraph.from_edge_list([(1, 2)] * int(m.group(1)))
    try:
        return get_entry(name).graph
    except AtlasError:
        pass
    try:
        return kernel_graph(name)
    except AtlasError:
        raise UsageError(f"{source!r} is neither a file nor a known graph name") from None


def _parse_seq(text: str):
    try:
        return parse(text)
    except SequenceError as exc:
        raise UsageError(str(exc)) from None


# -- subcommands -----------------------------------------------------------------

def cmd_check(args, cfg: RunConfig) -> int:
    seq = _parse_seq(args.sequence)
    graphic = is_graphic(seq)
    bound = 6 * seq.n - 4
    sum_ok = seq.total >= bound
    min_ok = seq.min >= 4
    verdict = graphic and sum_ok and min_ok
    if cfg.format == "structured":
        _emit_structured(cfg, "check", {
            "sequence": str(seq), "graphic": graphic, "sum": seq.total, "sum_bound": bound,
            "sum_ok": sum_ok, "min_degree": seq.min, "min_degree_ok": min_ok, "s3_realizable": verdict,
        })
    else:
        print(f"graphic: {_yes(graphic)}; Σ={seq.total} ≥ {bound}: {_yes(sum_ok)}; "
              f"d_n={seq.min} ≥ 4: {_yes(min_ok)}; S3-realizable: {_yes(verdict)}")
    return EXIT_OK if verdict else EXIT_FALSE


def cmd_realize(args, cfg: RunConfig) -> int:
    seq = _parse_seq(args.sequence)
    realizer = cfg.realizer()
    try:
        res = realizer.realize(seq)
    except RealizationRejected as exc:
        if cfg.format == "structured":
            _emit_structured(cfg, "realize", {"sequence": str(seq), "rejected": exc.condition})
        else:
            print(f"rejected: {exc.condition}")
        return EXIT_FALSE
    except Unconstructed as exc:
        if cfg.format == "structured":
            _emit_structured(cfg, "realize", {"sequence": str(seq), "unconstructed": str(exc)})
        else:
            print(str(exc))
        return EXIT_FALSE
    cert_text = dumps(res.certificate, "s3")
    if args.graph_out:
        Path(args.graph_out).write_text(to_edge_list_text(res.graph))
    if args.cert_out:
        Path(args.cert_out).write_text(cert_text + "\n")
    if cfg.format == "structured":
        _emit_structured(cfg, "realize", {
            "sequence": str(seq),
            "edges": [list(e) for e in res.graph.edges()],
            "certificate": to_dict(res.certificate),
            "trace": list(res.trace),
        })
    elif cfg.format == "dot":
        print(to_dot(res.graph), end="")
    else:
        print(f"# realization of {seq}")
        for label in res.trace:
            print(f"# case: {label}")
        print(to_edge_list_text(res.graph), end="")
        if not args.cert_out:
            print("# certificate")
            print(cert_text)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    g = load_graph(args.graph)
    try:
        kind, cert = loads(Path(args.cert).read_text())
    except (OSError, CertificateError) as exc:
        raise UsageError(f"{args.cert}: {exc}") from None
    check = verify_z3 if kind == "z3" else verify
    verdict = check(g, cert, edge_cap=cfg.cap)
    if cfg.format == "structured":
        _emit_structured(cfg, "verify", {"kind": kind, "ok": verdict.ok, "locus": verdict.locus,
                                         "reason": verdict.reason, "oracle_calls": verdict.oracle_calls})
    else:
        print(verdict.describe())
    return EXIT_OK if verdict.ok else EXIT_FALSE


def cmd_oracle(args, cfg: RunConfig) -> int:
    g = load_graph(args.graph)
    if args.question == "flow":
        bits = modulo3_orientation(g, edge_cap=cfg.cap)
        arcs = None if bits is None else orientation_arcs(g, bits)
        if cfg.format == "structured":
            _emit_structured(cfg, "oracle flow", {"arcs": arcs and [list(a) for a in arcs]})
        elif arcs is None:
            print("no strongly connected modulo-3 orientation")
        else:
            print("strongly connected modulo-3 orientation:")
            for a, b in arcs:
                print(f"{a} -> {b}")
        return EXIT_OK if arcs is not None else EXIT_FALSE
    decide = is_s3_connected if args.question == "s3" else is_z3_connected
    answer = decide(g, edge_cap=cfg.cap)
    label = "S3-connected" if args.question == "s3" else "Z3-connected"
    if cfg.format == "structured":
        _emit_structured(cfg, f"oracle {args.question}", {"answer": answer, "edges": g.edge_count,
                                                          "vertices": g.order})
    else:
        print(f"{label}: {_yes(answer)}")
    return EXIT_OK if answer else EXIT_FALSE


def cmd_atlas(args, cfg: RunConfig) -> int:
    if args.action == "list":
        names = list_entries()
        if cfg.format == "structured":
            _emit_structured(cfg, "atlas list", {"entries": [
                {"name": k, "claim": get_entry(k).claim, "checksum": get_entry(k).checksum} for k in names]})
        else:
            for k in names:
                e = get_entry(k)
                print(f"{k}\t{e.claim}\t{e.graph.order} vertices\t{e.graph.edge_count} edges")
        return EXIT_OK
    if not args.name:
        raise UsageError("atlas dump needs an entry name")
    try:
        entry = get_entry(args.name)
    except AtlasError as exc:
        raise UsageError(str(exc.args[0])) from None
    cycle = entry.decomposition[1] if entry.decomposition else ()
    dashed = list(zip(cycle, cycle[1:] + cycle[:1])) if cycle else []
    if cfg.format == "structured":
        _emit_structured(cfg, "atlas dump", {
            "name": entry.name, "claim": entry.claim, "checksum": entry.checksum,
            "edges": [list(e) for e in entry.graph.edges()],
            "cycle": list(cycle),
            "script": None if entry.script is None else {
                "steps": [list(s) for s in entry.script.steps],
                "terminal": entry.script.terminal, "match": entry.script.match},
        })
    elif cfg.format == "dot":
        print(to_dot(entry.graph, dashed=dashed), end="")
    else:
        print(f"# {entry.name} ({entry.claim}), checksum {entry.checksum}")
        print(to_edge_list_text(entry.graph), end="")
        if cycle:
            print("# hamiltonian cycle of the solid part's complement")
            print("# cycle " + " ".join(map(str, cycle)))
        if entry.script is not None:
            print("# lifting script")
            print(entry.script.to_text(), end="")
    return EXIT_OK


def cmd_sweep(args, cfg: RunConfig) -> int:
    from .report import plot_coverage, run_sweep, write_csv

    if args.n < 1:
        raise UsageError("n must be positive")
    summary = run_sweep(args.n, realizer=cfg.realizer(), jobs=args.jobs, budget=cfg.budget, seed=cfg.seed)
    if args.csv:
        write_csv(summary, args.csv)
    if args.png:
        plot_coverage(summary, args.png)
    if cfg.format == "structured":
        _emit_structured(cfg, "sweep", summary.as_dict())
    else:
        print(f"n={args.n}: realized and verified {summary.realized}, failed {len(summary.failures)}, "
              f"rejected {summary.rejected} (wrongly accepted {summary.wrongly_accepted})")
        for r in summary.failures:
            print(f"FAIL {r.sequence}: {r.detail}")
        for label, count in sorted(summary.coverage().items()):
            print(f"{count:8d}  {label}")
    return EXIT_OK if summary.ok else EXIT_FALSE


# -- entry point ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="s3real", description="S3-connected realizations of degree sequences.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--cap", type=int, help="oracle edge cap (env S3REAL_CAP)")
    p.add_argument("--budget", type=int, help="Z3 builder search budget (env S3REAL_BUDGET)")
    p.add_argument("--seed", type=int, help="random seed (env S3REAL_SEED)")
    p.add_argument("--format", choices=FORMATS, help="output format (env S3REAL_FORMAT)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", help="graphicality and S3 conditions")
    s.add_argument("sequence")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("realize", help="S3-connected realization with certificate")
    s.add_argument("sequence")
    s.add_argument("--graph-out", help="write the edge list here")
    s.add_argument("--cert-out", help="write the certificate here")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("verify", help="check a certificate against a graph")
    s.add_argument("graph")
    s.add_argument("cert")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("oracle", help="exhaustive orientation oracles")
    s.add_argument("question", choices=("s3", "z3", "flow"))
    s.add_argument("graph", help="edge-list file or a name such as K7, 4K2, K4*")
    s.set_defaults(func=cmd_oracle)

    s = sub.add_parser("atlas", help="stored graphs")
    s.add_argument("action", choices=("list", "dump"))
    s.add_argument("name", nargs="?")
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("sweep", help="realize and verify every qualifying sequence of length n")
    s.add_argument("n", type=int)
    s.add_argument("--csv", help="per-sequence results")
    s.add_argument("--png", help="case coverage figure")
    s.add_argument("--jobs", type=int, default=1, help="worker processes")
    s.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = config_from(args)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"s3real: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"s3real: error: {exc}; raise --cap or certify structurally", file=sys.stderr)
        return EXIT_USAGE
    except (CaseExhausted, AssertionError) as exc:
        print(f"s3real: internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except Exception as exc:
        print(f"s3real: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
