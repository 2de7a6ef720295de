"""Command line entry point: ``indcx <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import campaign
from .errors import ParameterError, RangeError, ResourceError
from .graphs import Graph, build
from .homology import betti_mod_p, run_graph_homology
from .predictions import predict


def _load_graph(arg: str) -> tuple[Graph, str]:
    p = Path(arg)
    if arg.endswith(".json") and p.exists():
        return Graph.from_json(json.loads(p.read_text())), p.name
    return build(arg, allow_unproven=True), arg


def cmd_build(args) -> int:
    g = build(args.spec, allow_unproven=args.allow_unproven)
    text = json.dumps(g.to_json())
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"{args.spec}: {g.order} vertices, {g.size} edges -> {args.out}")
    else:
        print(text)
    return 0


def cmd_homology(args) -> int:
    g, name = _load_graph(args.graph)
    run = run_graph_homology(g, reduce=not args.no_reduce, max_dim=args.max_dim,
                             max_faces=args.max_faces)
    out = {"graph": name, "homology": str(run.profile), "profile": run.profile.to_json(),
           "f_vector": list(run.f_vector), "reduction": run.summary(g)}
    if args.mod_p:
        from .complex import independence_complex

        target = run.reduced.graph if run.reduced else g
        shift = run.reduced.suspension_shift if run.reduced else 0
        if run.reduced and run.reduced.contractible:
            out["betti_mod_p"] = {}
        else:
            bp = betti_mod_p(independence_complex(target, max_faces=args.max_faces), args.mod_p)
            out["betti_mod_p"] = {str(q + shift): b for q, b in bp.items()}
    if args.timings:
        out["timings_ms"] = {k: round(v, 1) for k, v in run.timings.items()}
    print(json.dumps(out, indent=2))
    return 0


def cmd_predict(args) -> int:
    p = predict(args.spec, allow_conjecture=args.allow_conjecture)
    print(json.dumps(p.to_json(), indent=2))
    return 0


def _sweep_budget(args) -> dict:
    kw = {}
    if args.max_faces is not None:
        kw["max_faces"] = args.max_faces
    if args.timeout is not None:
        kw["timeout_s"] = args.timeout
    return kw


def cmd_verify(args) -> int:
    spec = campaign.SweepSpec.load(args.sweep)
    for k, v in _sweep_budget(args).items():
        setattr(spec, k, v)
    recs = campaign.verify_sweep(spec, args.log, args.jobs)
    sys.stdout.write(campaign.report_emit(recs, args.format))
    return 1 if any(r.status == "mismatch" for r in recs) else 0


def cmd_hunt(args) -> int:
    spec = campaign.torsion_hunt_spec(campaign.parse_range(args.k_range),
                                      campaign.parse_range(args.n_range),
                                      reduce=not args.no_reduce, **_sweep_budget(args))
    recs = campaign.hunt_torsion(spec, args.log, args.jobs)
    sys.stdout.write(campaign.report_emit(recs, args.format))
    return 1 if any(r.status in ("falsified", "torsion") for r in recs) else 0


def cmd_report(args) -> int:
    recs = campaign.read_log(args.log)
    sys.stdout.write(campaign.report_emit(recs, args.format))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="indcx", description="Independence complexes of graph products.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a family graph and print it as JSON")
    p.add_argument("spec", help='family spec, e.g. "C9xK3" or "cycle-x-complete:k=9,n=3"')
    p.add_argument("--out", help="write the graph JSON here")
    p.add_argument("--allow-unproven", action="store_true")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("homology", help="reduced integral homology of I(G)")
    p.add_argument("graph", help="family spec or a graph .json file")
    p.add_argument("--no-reduce", action="store_true", help="skip graph reductions")
    p.add_argument("--max-dim", type=int, default=None)
    p.add_argument("--max-faces", type=int, default=campaign.DEFAULT_MAX_FACES)
    p.add_argument("--mod-p", type=int, default=None, help="also report Betti numbers over GF(p)")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("predict", help="closed-form prediction for a family")
    p.add_argument("spec")
    p.add_argument("--allow-conjecture", action="store_true")
    p.set_defaults(func=cmd_predict)

    def sweep_opts(p):
        p.add_argument("--log", help="append-only JSONL result log (enables resume)")
        p.add_argument("--jobs", type=int, default=1)
        p.add_argument("--format", choices=["text", "csv", "json"], default="text")
        p.add_argument("--max-faces", type=int, default=None)
        p.add_argument("--timeout", type=int, default=None, help="per-instance wall clock seconds")

    p = sub.add_parser("verify", help="run a sweep and compare with predictions")
    p.add_argument("--sweep", required=True, help="sweep JSON file")
    sweep_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hunt-torsion", help="look for torsion in C_k x K_n, k not divisible by 3")
    p.add_argument("--k-range", required=True, help="A..B")
    p.add_argument("--n-range", required=True, help="C..D")
    p.add_argument("--no-reduce", action="store_true")
    sweep_opts(p)
    p.set_defaults(func=cmd_hunt)

    p = sub.add_parser("report", help="render a result log")
    p.add_argument("--log", required=True)
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParameterError, RangeError, ResourceError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
