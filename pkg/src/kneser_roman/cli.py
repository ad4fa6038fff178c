"""Command-line front end.

Exit codes: 0 success or feasible, 1 infeasible or mismatch, 2 usage or input
error, 3 solver budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .bounds import BoundsInconsistency, Quantity, kneser_records, sandwich
from .constructions import construct_srdf, construct_trdf
from .graphs import DEFAULT_VERTEX_CAP, FORMATS, Graph, GraphError, export, guess_format, ingest, kneser_graph, to_graph6
from .labelings import LabelingError, Variant, dumps_labeling, ledgers, loads_labeling, verify
from .reproduce import DEFAULT_BUDGET, TARGETS, run_target
from .solvers import Invariant, SolverError, solve_bnb, solve_brute
from .solvers.ilp import emit_ilp, write_lp

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CACHE_ENV = "KNESER_ROMAN_CACHE"
LEDGER_COLUMNS = ("vertex", "alpha", "beta", "gamma", "f", "score")


class UsageError(Exception):
    pass


# -- manifest and cache ------------------------------------------------------------

def fingerprint(g: Graph) -> str:
    return hashlib.sha256(to_graph6(g)).hexdigest()


@dataclass
class RunManifest:
    command: str
    arguments: dict
    fingerprint: str | None
    version: str = __version__
    timestamp: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    result: dict = field(default_factory=dict)

    def cache_key(self) -> str:
        blob = json.dumps([self.fingerprint, self.command, self.arguments], sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    return Path(env) if env else Path.home() / ".cache" / "kneser_roman"


def cache_load(key: str) -> dict | None:
    path = cache_dir() / f"{key}.json"
    try:
        return json.loads(path.read_text())
    except (OSError, ValueError):
        return None


def atomic_write(path: Path, data: bytes) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cache_store(key: str, entry: dict) -> None:
    atomic_write(cache_dir() / f"{key}.json", json.dumps(entry).encode())


# -- helpers ------------------------------------------------------------------

def _write(data: str | bytes, out: str | None) -> None:
    if isinstance(data, str):
        data = data.encode()
    if out and out != "-":
        atomic_write(Path(out), data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def _table(rows: list[tuple], head: tuple) -> str:
    cells = [tuple(str(x) for x in head)] + [tuple(str(x) for x in r) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(head))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells) + "\n"


def load_graph(args) -> Graph:
    if getattr(args, "input", None):
        data = Path(args.input).read_bytes()
        fmt = args.graph_format or guess_format(args.input, data)
        return ingest(data, fmt)
    if args.n is None or args.k is None:
        raise UsageError("give either --in FILE or both -n and -k")
    return kneser_graph((args.n, args.k), permissive=args.permissive, vertex_cap=args.vertex_cap)


def _manifest(args, command: str, g: Graph | None, result: dict) -> RunManifest:
    skip = {"func", "command", "format", "out", "manifest", "cert", "csv", "no_cache", "timing", "partition"}
    arguments = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    return RunManifest(command, arguments, fingerprint(g) if g is not None else None, result=result)


def _maybe_manifest(args, man: RunManifest) -> None:
    if getattr(args, "manifest", None):
        atomic_write(Path(args.manifest), (man.to_json() + "\n").encode())


def _labeling_dict(g: Graph, values, variant: Variant) -> dict:
    return {
        "variant": variant.value,
        "graph": g.name(),
        "weight": sum(values),
        "vertex_ids": [g.vertex_id(v) for v in range(g.order)],
        "values": list(values),
    }


# -- commands --------------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.n is None or args.k is None:
        raise UsageError("gen needs -n and -k")
    g = kneser_graph((args.n, args.k), permissive=args.permissive, vertex_cap=args.vertex_cap)
    _write(export(g, args.format), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = load_graph(args)
    f = loads_labeling(g, Path(args.labeling).read_text())
    if args.variant and Variant(args.variant.upper()) is not f.variant:
        raise UsageError(f"labeling file holds a {f.variant.value}, not a {args.variant.upper()}")
    rep = verify(g, f)
    rows = []
    if args.ledger or args.csv:
        if f.variant is not Variant.SRDF:
            raise UsageError("per-vertex ledgers are defined for signed Roman labelings only")
        rows = [(g.vertex_id(lg.vertex),) + lg.as_row() for lg in ledgers(g, f)]
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(LEDGER_COLUMNS)
        w.writerows(rows)
        atomic_write(Path(args.csv), buf.getvalue().encode())
    result = {
        "graph": g.name(),
        "variant": f.variant.value,
        "feasible": rep.feasible,
        "weight": rep.weight,
        "violations": [{"condition": c, "vertex": g.vertex_id(v)} for c, v in rep.violations],
    }
    if args.ledger:
        result["ledger"] = [dict(zip(LEDGER_COLUMNS, r)) for r in rows]
    if args.format == "json":
        _write(json.dumps(result, indent=2) + "\n", None)
    else:
        status = "feasible" if rep.feasible else "INFEASIBLE"
        text = f"{g.name()} {f.variant.value}: {status}, weight {rep.weight}\n"
        for c, v in rep.violations[:20]:
            text += f"  violates {c} at {g.vertex_id(v)}\n"
        if len(rep.violations) > 20:
            text += f"  ... {len(rep.violations) - 20} more\n"
        if args.ledger:
            text += _table(rows, LEDGER_COLUMNS)
        _write(text, None)
    _maybe_manifest(args, _manifest(args, "verify", g, {"feasible": rep.feasible, "weight": rep.weight}))
    return EXIT_OK if rep.feasible else EXIT_FAIL


def cmd_construct(args) -> int:
    if args.n is None:
        raise UsageError("construct needs -n")
    part = None
    if args.kind == "trdf":
        if args.k is None:
            raise UsageError("construct --kind trdf needs -k")
        g = kneser_graph((args.n, args.k), vertex_cap=args.vertex_cap)
        f = construct_trdf((args.n, args.k), g)
    else:
        if args.k not in (None, 2):
            raise UsageError("the signed construction is defined on K(n,2) only")
        g = kneser_graph((args.n, 2), vertex_cap=args.vertex_cap)
        f, part = construct_srdf(args.n, g)
    if args.partition:
        if part is None:
            raise UsageError("--partition applies to --kind srdf")
        atomic_write(Path(args.partition), (part.to_json() + "\n").encode())
    if args.format == "json":
        _write(json.dumps(_labeling_dict(g, f.values, f.variant), indent=2) + "\n", args.out)
    else:
        _write(dumps_labeling(g, f), args.out)
    return EXIT_OK


def cmd_bound(args) -> int:
    if args.n is None or args.k is None:
        raise UsageError("bound needs -n and -k")
    g = kneser_graph((args.n, args.k), permissive=args.permissive, vertex_cap=args.vertex_cap)
    recs = kneser_records((args.n, args.k), g)
    has_isolated = any(r == 0 for r in g.rows)
    gm, rd, tr = sandwich(recs[Quantity.GAMMA], recs[Quantity.RDN], None if has_isolated else recs[Quantity.TRDN])
    recs[Quantity.GAMMA], recs[Quantity.RDN] = gm, rd
    if tr is not None:
        recs[Quantity.TRDN] = tr
    out = [recs[q].to_dict() for q in Quantity]
    if args.format == "json":
        _write(json.dumps(out, indent=2) + "\n", None)
    else:
        def end(e):
            return ("-", "-") if e is None else (e["value"], e["provenance"])

        rows = [(d["invariant"],) + end(d["lower"]) + end(d["upper"]) for d in out]
        _write(f"{g.name()}\n" + _table(rows, ("invariant", "lower", "from", "upper", "from")), None)
    _maybe_manifest(args, _manifest(args, "bound", g, {"records": out}))
    return EXIT_OK


# the graph enters the cache key through its fingerprint only
_GRAPH_ARGS = {"n", "k", "input", "graph_format", "permissive", "vertex_cap", "command"}
_CORE = ("invariant", "strategy", "lower", "upper", "nodes", "exhausted_budget", "variant", "values")


def _solve_fresh(args, g: Graph) -> dict:
    inv = Invariant.parse(args.inv)
    if args.strategy == "brute":
        res = solve_brute(g, inv)
    else:
        res = solve_bnb(g, inv, args.budget, threads=args.threads)
    core = {
        "invariant": res.invariant.value,
        "strategy": res.strategy.value,
        "lower": res.lower,
        "upper": res.upper,
        "nodes": res.nodes,
        "exhausted_budget": res.exhausted_budget,
        "variant": res.certificate.variant.value,
        "values": list(res.certificate.values),
    }
    if args.timing:
        core["wall_time"] = round(res.wall_time, 6)
    return core


def _solve_dict(g: Graph, core: dict) -> dict:
    optimal = core["lower"] == core["upper"] and not core["exhausted_budget"]
    d = {
        "graph": g.name(),
        "invariant": core["invariant"],
        "strategy": core["strategy"],
        "optimum": core["upper"] if optimal else "unknown(budget exhausted)",
        "lower": core["lower"],
        "upper": core["upper"],
        "nodes": core["nodes"],
        "exhausted_budget": core["exhausted_budget"],
    }
    if "wall_time" in core:
        d["wall_time"] = core["wall_time"]
    d["certificate"] = {
        "variant": core["variant"],
        "vertex_ids": [g.vertex_id(v) for v in range(g.order)],
        "values": core["values"],
    }
    return d


def _render_solve(d: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(d, indent=2) + "\n"
    lines = [
        f"graph      {d['graph']}",
        f"invariant  {d['invariant']}",
        f"strategy   {d['strategy']}",
        f"optimum    {d['optimum']}",
        f"bounds     [{d['lower']}, {d['upper']}]",
        f"nodes      {d['nodes']}",
    ]
    if "wall_time" in d:
        lines.append(f"wall time  {d['wall_time']:.3f} s")
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    g = load_graph(args)
    man = _manifest(args, "solve", g, {})
    keyed = RunManifest("solve", {k: v for k, v in man.arguments.items() if k not in _GRAPH_ARGS}, man.fingerprint)
    # only single-threaded, untimed runs are reproducible byte for byte
    cacheable = not args.no_cache and not args.timing and args.threads == 1
    key = keyed.cache_key()
    entry = cache_load(key) if cacheable else None
    if entry is not None and entry.get("key") == [keyed.fingerprint, keyed.command, keyed.arguments]:
        core = entry["core"]
    else:
        core = _solve_fresh(args, g)
        if cacheable and core["lower"] == core["upper"] and not core["exhausted_budget"]:
            cache_store(key, {
                "key": [keyed.fingerprint, keyed.command, keyed.arguments],
                "manifest": asdict(_with_result(man, _solve_dict(g, core))),
                "core": core,
            })
    d = _solve_dict(g, core)
    if args.cert:
        lines = [f"{core['variant']} {g.order}"]
        lines += [f"{i} {x}" for i, x in zip(d["certificate"]["vertex_ids"], core["values"])]
        atomic_write(Path(args.cert), ("\n".join(lines) + "\n").encode())
    _write(_render_solve(d, args.format), args.out)
    _maybe_manifest(args, _with_result(man, d))
    return EXIT_OK if d["optimum"] == d["upper"] else EXIT_BUDGET


def _with_result(man: RunManifest, d: dict) -> RunManifest:
    man.result = {k: d[k] for k in ("invariant", "strategy", "optimum", "lower", "upper", "nodes")}
    return man


def cmd_emit(args) -> int:
    g = load_graph(args)
    model = emit_ilp(g, args.inv)
    _write(write_lp(model), args.out)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rep = run_target(args.target, args.budget, args.threads)
    _write(rep.to_json() + "\n" if args.format == "json" else rep.to_text(), args.out)
    summary = {"passed": rep.exit_code == 0, "statuses": [c.status for c in rep.checks]}
    _maybe_manifest(args, _manifest(args, "reproduce", None, summary))
    return rep.exit_code


# -- parser -------------------------------------------------------------------------

def _graph_args(p: argparse.ArgumentParser, *, files: bool = True) -> None:
    p.add_argument("-n", type=int, help="ground set size of K(n,k)")
    p.add_argument("-k", type=int, help="subset size of K(n,k)")
    p.add_argument("--permissive", action="store_true", help="allow n <= 2k or k = 1")
    p.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    if files:
        p.add_argument("--in", dest="input", metavar="FILE", help="graph file instead of -n/-k")
        p.add_argument("--graph-format", choices=FORMATS, help="format of --in (guessed if omitted)")


def _report_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--manifest", metavar="FILE", help="write a run manifest")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kneser-roman", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a Kneser graph")
    _graph_args(p, files=False)
    p.add_argument("--format", choices=FORMATS, default="graph6")
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a labeling file")
    _graph_args(p)
    p.add_argument("--labeling", required=True, metavar="FILE")
    p.add_argument("--variant", choices=("rdf", "trdf", "srdf", "RDF", "TRDF", "SRDF"))
    p.add_argument("--ledger", action="store_true", help="print per-vertex signed ledgers")
    p.add_argument("--csv", metavar="FILE", help="write the ledger as CSV")
    _report_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a known labeling")
    p.add_argument("--kind", choices=("trdf", "srdf"), required=True)
    p.add_argument("-n", type=int)
    p.add_argument("-k", type=int)
    p.add_argument("--vertex-cap", type=int, default=DEFAULT_VERTEX_CAP)
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--partition", metavar="FILE", help="write the signed partition as JSON")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bound", help="closed-form bounds with provenance")
    _graph_args(p, files=False)
    _report_args(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("solve", help="exact optimum with a certificate")
    _graph_args(p)
    p.add_argument("--inv", required=True, type=str.lower, choices=("rdn", "trdn", "srdn"))
    p.add_argument("--strategy", choices=("bnb", "brute"), default="bnb")
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--cert", metavar="FILE", help="write the certificate labeling")
    p.add_argument("--out", metavar="FILE")
    p.add_argument("--no-cache", action="store_true")
    p.add_argument("--timing", action="store_true", help="report wall time (bypasses the cache)")
    _report_args(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("emit", help="write a 0-1 model as an LP file")
    _graph_args(p)
    p.add_argument("--inv", required=True, type=str.lower, choices=("rdn", "trdn", "srdn"))
    p.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_emit)

    p = sub.add_parser("reproduce", help="check reference values")
    p.add_argument("target", choices=tuple(TARGETS))
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds per solver run")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", metavar="FILE")
    _report_args(p)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphError, LabelingError, SolverError, BoundsInconsistency, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
