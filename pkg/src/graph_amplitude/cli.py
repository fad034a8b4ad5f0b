"""Command-line entry point.

Exit codes: 0 no violation, 2 violation found, 1 error.  ``counterexample``
returns 0 once a counterexample is constructed and 2 if the search fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from . import graphs as gr
from .amplitude import METHODS, amplitude
from .atiyah import atiyah_determinant
from .errors import AmplitudeError, SearchExhausted
from .geometry import as_configuration
from .harness import (
    CampaignConfig,
    any_violation,
    evaluate_instances,
    find_counterexample,
    report_dumps,
    run_campaign,
    run_conjd_campaign,
)
from .matrix import Partition, check_conjecture_d, matrix_from_json

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATION = 2


def _load_json(path):
    return json.loads(Path(path).read_text())


def _load_configs(path) -> list[np.ndarray]:
    """Accept ``{"points": [...]}`` or ``{"configs": [{"points": ...}, ...]}``."""
    data = _load_json(path)
    if "configs" in data:
        return [as_configuration(c["points"] if isinstance(c, dict) else c) for c in data["configs"]]
    return [as_configuration(data["points"])]


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, obj):
    _emit(args, json.dumps(obj, indent=2, sort_keys=True) + "\n")


def cmd_verify(args) -> int:
    base = _load_json(args.campaign) if args.campaign else {}
    overrides = {
        "n_min": args.n_min, "n_max": args.n_max, "configs_per_graph": args.configs_per_graph,
        "seed": args.seed, "connected_only": args.connected_only,
        "point_distribution": args.distribution, "cluster_eps": args.cluster_eps,
        "tolerance": args.tolerance, "method": args.method,
    }
    base.update({k: v for k, v in overrides.items() if v is not None})
    if args.graph:
        G = gr.SimpleGraph.from_json(_load_json(args.graph))
        if not args.config:
            raise SystemExit("--graph needs --config in instance mode")
        cfg = None
        reports = [evaluate_instances(G, _load_configs(args.config),
                                      base.get("tolerance", 1e-9), base.get("method", "auto"))]
    else:
        cfg = CampaignConfig.from_json(base)
        reports = run_campaign(cfg, jobs=args.jobs)
    _emit(args, report_dumps(reports, args.format, cfg))
    for r in reports:
        status = "VIOLATION" if r.violations else ("ERROR" if r.error else "ok")
        print(f"[{status}] graph {r.graph_index} {r.graph} kind={r.kind} "
              f"min_re={r.min_re:.12g} min_abs={r.min_abs:.12g} n={r.n_evaluated}", file=sys.stderr)
    return EXIT_VIOLATION if any_violation(reports) else EXIT_OK


def cmd_graphs(args) -> int:
    out = [g.to_json() for g in gr.enumerate_nonisomorphic(args.n, args.connected_only)]
    _emit_json(args, out)
    return EXIT_OK


def cmd_amplitude(args) -> int:
    G = gr.SimpleGraph.from_json(_load_json(args.graph))
    (x,) = _load_configs(args.config)[:1]
    _emit_json(args, amplitude(G, x, args.method).to_json())
    return EXIT_OK


def cmd_det(args) -> int:
    (x,) = _load_configs(args.config)[:1]
    _emit_json(args, atiyah_determinant(x).to_json())
    return EXIT_OK


def cmd_matrix_f(args) -> int:
    A = matrix_from_json(_load_json(args.matrix))
    n = A.shape[0]
    verdict = check_conjecture_d(A, Partition.parse(args.p1, n), Partition.parse(args.p2, n))
    _emit_json(args, verdict.to_json())
    return EXIT_OK if verdict.holds else EXIT_VIOLATION


def cmd_conjd(args) -> int:
    report = run_conjd_campaign(args.n, args.trials, args.seed or 0)
    _emit_json(args, report.to_json())
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_counterexample(args) -> int:
    try:
        result = find_counterexample(args.seed or 0, args.max_tries, args.n_max)
    except SearchExhausted as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    if args.emit_graph:
        Path(args.emit_graph).write_text(json.dumps(result.graph.to_json()) + "\n")
    if args.emit_config:
        Path(args.emit_config).write_text(json.dumps({"points": result.config}) + "\n")
    _emit_json(args, result.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # suppressed defaults so flags work before or after the subcommand
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS, help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="graph-amplitude", parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    parser.set_defaults(seed=None, out=None, format="json", jobs=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a campaign or check given instances")
    p.add_argument("--campaign", help="JSON file with CampaignConfig fields")
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--configs-per-graph", "-N", type=int)
    p.add_argument("--connected-only", dest="connected_only", action="store_true", default=None)
    p.add_argument("--all-graphs", dest="connected_only", action="store_false")
    p.add_argument("--distribution", choices=("gaussian", "clustered"))
    p.add_argument("--cluster-eps", type=float)
    p.add_argument("--tolerance", type=float)
    p.add_argument("--method", choices=METHODS)
    p.add_argument("--graph", help="graph JSON (instance mode)")
    p.add_argument("--config", help="configuration JSON (instance mode)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graphs", parents=[common], help="dump non-isomorphic graphs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--connected-only", action="store_true")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("amplitude", parents=[common], help="evaluate one amplitude")
    p.add_argument("--graph", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_amplitude)

    p = sub.add_parser("det", parents=[common], help="normalized Atiyah determinant")
    p.add_argument("--config", required=True)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("matrix-f", parents=[common], help="check the partition inequality for one matrix")
    p.add_argument("--matrix", required=True)
    p.add_argument("--p1", required=True, help='blocks separated by "|", indices by ","')
    p.add_argument("--p2", required=True)
    p.set_defaults(func=cmd_matrix_f)

    p = sub.add_parser("conjd-verify", parents=[common], help="random PSD campaign for the partition inequality")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=1000)
    p.set_defaults(func=cmd_conjd)

    p = sub.add_parser("counterexample", parents=[common], help="build a disconnected counterexample")
    p.add_argument("--max-tries", type=int, default=2000)
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--emit-graph")
    p.add_argument("--emit-config")
    p.set_defaults(func=cmd_counterexample)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (AmplitudeError, ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
