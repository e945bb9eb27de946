"""Command-line entry point: ``fairaug analyze|augment|verify|metrics``.

Exit codes: 0 success, 1 a verification property failed, 2 bad input.
Errors are printed to stderr as a one-line JSON object
``{"error": <exception class>, "message": ...}``.

Report keys (``analyze`` and the two augment reports), vectors in input
column order::

    num_nodes, mu0, mu1, delta, delta_bar, delta0, delta1, delta_max,
    c, c_l1, sigma_z, sigma_s, gamma1, gamma2, rho, rho_l1, bound,
    epsilon, epsilon_l1,
    partition: {s0_chi, s0_omega, s1_chi, s1_omega, e_chi, e_omega_s0, e_omega_s1}

``verify`` emits ``{seed, all_passed, properties: {name: {trials, passed,
failed, worst_margin, failures}}}``; each failure carries the seed and trial
index for :func:`fairaug.verify.replay`.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import io
from .augment import PipelineConfig, fairaug
from .bias import bias_report
from .errors import InputError
from .graph import partition
from .metrics import accuracy, auc, delta_eo_link, delta_eo_node, delta_sp_link, delta_sp_node
from .verify import run_verification


def load_inputs(graph_path, features_path, sensitive_path, positive_class=None):
    s = io.read_sensitive(sensitive_path, positive_class)
    X, columns = io.read_features(features_path)
    if len(X) != len(s):
        raise InputError(f"features have {len(X)} rows but sensitive file has {len(s)}")
    g = io.read_edge_list(graph_path, num_nodes=len(s))
    return g, X, s, columns


def _config(args) -> PipelineConfig:
    if args.config:
        return io.read_config(args.config, seed=args.seed)
    return PipelineConfig(seed=args.seed if args.seed is not None else 0)


def _emit(obj, out):
    text = io.dumps(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def analysis_payload(g, X, s) -> dict:
    payload = bias_report(g, X, s).to_dict()
    payload["partition"] = partition(g, s).counts()
    return payload


def cmd_analyze(args) -> int:
    g, X, s, _ = load_inputs(args.graph, args.features, args.sensitive, args.positive_class)
    _emit(analysis_payload(g, X, s), args.out)
    return 0


OUTPUT_FILES = ("graph.edgelist", "features.csv", "sensitive.csv", "id_map.csv",
                "report_before.json", "report_after.json")


def cmd_augment(args) -> int:
    t0 = time.perf_counter()
    g, X, s, columns = load_inputs(args.graph, args.features, args.sensitive, args.positive_class)
    cfg = _config(args)
    res = fairaug(g, X, s, cfg)

    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        io.write_edge_list(res.graph, out / "graph.edgelist")
        io.write_features(res.features, out / "features.csv", columns)
        io.write_sensitive(res.sensitive, out / "sensitive.csv")
        io.write_id_map(res.id_map, out / "id_map.csv")
        before = res.report_before.to_dict()
        before["partition"] = partition(g, s).counts()
        after = res.report_after.to_dict()
        after["partition"] = partition(res.graph, res.sensitive).counts()
        io.write_json(before, out / "report_before.json")
        io.write_json(after, out / "report_after.json")
        manifest = {
            "command": "augment",
            "config": cfg.to_flat(),
            "seed": cfg.seed,
            "inputs": {k: io.sha256_file(p) for k, p in
                       (("graph", args.graph), ("features", args.features),
                        ("sensitive", args.sensitive))},
            "outputs": {name: io.sha256_file(out / name) for name in OUTPUT_FILES},
            "version": __version__,
            "duration_s": time.perf_counter() - t0,
        }
        io.write_json(manifest, out / "manifest.json")
    except OSError as exc:
        raise InputError(f"cannot write to {out}: {exc.strerror or exc}") from None
    return 0


def cmd_verify(args) -> int:
    report = run_verification(args.trials, args.seed, c_l1_scale=args.c_l1_scale)
    _emit(report, args.out)
    for name, r in report["properties"].items():
        status = "PASS" if r["failed"] == 0 else "FAIL"
        line = f"{status} {name}: {r['passed']}/{r['trials']} worst_margin={r['worst_margin']:.3g}"
        if r["failures"]:
            f = r["failures"][0]
            line += f" (replay: seed={f['seed']} trial={f['trial']})"
        print(line, file=sys.stderr)
    return 0 if report["all_passed"] else 1


def cmd_metrics(args) -> int:
    preds = io.read_predictions(args.predictions)
    s = io.read_sensitive(args.sensitive, args.positive_class)
    out = {"mode": args.mode, "accuracy": accuracy(preds.y, preds.y_hat)}
    if preds.score is not None:
        out["auc"] = auc(preds.y, preds.score)
    if args.mode == "node":
        if preds.is_edges:
            raise InputError("node mode expects an id,y,yhat[,score] predictions file")
        if preds.ids.min(initial=0) < 0 or preds.ids.max(initial=0) >= len(s):
            raise InputError("prediction ids outside the sensitive-attribute file")
        sg = s[preds.ids]
        out["delta_sp"] = delta_sp_node(preds.y_hat, sg)
        out["delta_eo"] = delta_eo_node(preds.y, preds.y_hat, sg)
    else:
        if not args.graph:
            raise InputError("link mode requires --graph")
        if not preds.is_edges:
            raise InputError("link mode expects a src,dst,y,yhat[,score] predictions file")
        g = io.read_edge_list(args.graph, num_nodes=len(s))
        if preds.ids.size and preds.ids.max() >= g.num_nodes:
            raise InputError("candidate edge endpoint outside the graph")
        out["delta_sp"] = delta_sp_link(preds.ids, preds.y_hat, s)
        out["delta_eo"] = delta_eo_link(preds.ids, preds.y, preds.y_hat, s)
    _emit(out, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fairaug", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def inputs(sp, features=True):
        sp.add_argument("--graph", required=True, help="edge list file")
        if features:
            sp.add_argument("--features", required=True, help="feature CSV")
        sp.add_argument("--sensitive", required=True, help="sensitive-attribute CSV")
        sp.add_argument("--positive-class", default=None,
                        help="binarize a multi-class sensitive column one-vs-rest")

    a = sub.add_parser("analyze", help="bias report for a graph")
    inputs(a)
    a.add_argument("--config", help="key=value config file (unused keys are ignored)")
    a.add_argument("--out", help="write JSON here instead of stdout")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("augment", help="run the augmentation pipeline")
    inputs(g)
    g.add_argument("--config", help="key=value config file")
    g.add_argument("--seed", type=int, default=None, help="overrides the config seed")
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=cmd_augment)

    v = sub.add_parser("verify", help="randomized property checks")
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--out", help="write JSON here instead of stdout")
    # negative-control hook: shrinks the bound so theorem1_bound must fail
    v.add_argument("--c-l1-scale", type=float, default=1.0, help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("metrics", help="fairness and utility metrics for predictions")
    m.add_argument("--predictions", required=True)
    m.add_argument("--sensitive", required=True)
    m.add_argument("--graph", help="edge list (required in link mode)")
    m.add_argument("--mode", choices=("node", "link"), default="node")
    m.add_argument("--positive-class", default=None)
    m.add_argument("--out")
    m.set_defaults(func=cmd_metrics)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 2
    except OSError as exc:
        print(json.dumps({"error": "IOError", "message": str(exc)}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
