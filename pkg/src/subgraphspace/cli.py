"""Command-line interface: census, fit, bounds, simulate, classify, and
catalog subcommands over the library, bound together by the edge-list and
CSV formats in ``io``.

Every command is deterministic given its flags and --seed; all tabular
output is CSV with headers. Failures exit nonzero after printing a single
``error: ...`` line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from math import comb
from pathlib import Path

import numpy as np

from . import io as gio
from .catalog import build_catalog
from .census import (
    DEFAULT_SAMPLES,
    exact_census,
    sampled_census,
)
from .classify import FeatureSpec, cross_validate, graph_record
from .errors import SizeLimitError
from .extremal import bound_envelope, check_point
from .graphs import edge_density
from .generators import simulate_walk
from .walk import RateModel, backbone_curve, fit_lambda, lambda_objective

__all__ = ["main"]


def _out_handle(path: str | None):
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


def _graph_seed(root_seed: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([root_seed, index])


def cmd_census(args) -> int:
    collection = gio.read_collection(args.input)
    k = args.k
    rows = []
    for i, (gid, g) in enumerate(collection):
        if g.n < k:
            print(
                f"warning: skipping {gid}: n={g.n} < k={k}", file=sys.stderr
            )
            continue
        if args.exact:
            fv = exact_census(g, k)
        elif args.samples is not None:
            fv = sampled_census(g, k, args.samples, _graph_seed(args.seed, i))
        else:
            try:
                fv = exact_census(g, k)
            except SizeLimitError:
                fv = sampled_census(
                    g, k, DEFAULT_SAMPLES, _graph_seed(args.seed, i)
                )
        rows.append((gid, g.n, edge_density(g), fv))
    out = _out_handle(args.output)
    try:
        gio.write_census_csv(out, rows, k)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_fit(args) -> int:
    k, rows = gio.read_census_csv(args.input)
    if not rows:
        raise ValueError("census CSV contains no graphs")
    usable = [r for r in rows if 0.0 < r["density"] < 1.0]
    if not usable:
        raise ValueError("no graphs with density strictly inside (0, 1)")
    censuses = [r["census"] for r in usable]
    densities = [r["density"] for r in usable]
    lam = fit_lambda(censuses, densities, k, lambda_max=args.lambda_max)
    obj = lambda_objective(lam, censuses, densities, k)
    obj0 = lambda_objective(0.0, censuses, densities, k)
    out = _out_handle(args.output)
    try:
        out.write(f"# k={k} graphs={len(usable)}\n")
        out.write(f"# lambda_opt={lam:.6f}\n")
        out.write(f"# objective={obj:.9g}\n")
        out.write(f"# objective_at_zero={obj0:.9g}\n")
        grid = np.linspace(args.grid_min, args.grid_max, args.grid)
        curve = backbone_curve(k, grid, lam)
        writer = csv.writer(out)
        writer.writerow(
            ["p"] + [f"s_{c.code.bitstring}" for c in build_catalog(k).classes]
        )
        for p, row in zip(grid, curve):
            writer.writerow([f"{p:.6g}"] + [f"{v:.12g}" for v in row])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_bounds(args) -> int:
    k = args.k
    cat = build_catalog(k)
    indices = (
        list(range(len(cat)))
        if args.objective == "all"
        else [int(args.objective)]
    )
    grid = [i / (args.grid - 1) for i in range(args.grid)]
    out = _out_handle(args.output)
    try:
        writer = csv.writer(out)
        writer.writerow(
            ["p", "class_index", "lower", "upper", "binding_constraints"]
        )
        for ci in indices:
            env = bound_envelope(k, ci, grid)
            for p, lo, hi, tags in zip(
                env.p_grid, env.lower, env.upper, env.binding
            ):
                writer.writerow(
                    [f"{p:.6g}", ci, f"{lo:.12g}", f"{hi:.12g}", ";".join(tags)]
                )
        if args.check:
            ck, rows = gio.read_census_csv(args.check)
            if ck != k:
                raise ValueError(
                    f"census CSV is for k={ck}, bounds requested for k={k}"
                )
            out.write("\n")
            writer.writerow(["id", "n", "p", "tag", "slack", "tolerance"])
            violations = 0
            for r in rows:
                tol = max(1e-6, 5.0 / r["n"])
                for c in check_point(r["census"], r["density"], tol):
                    if c.violated:
                        violations += 1
                        writer.writerow(
                            [
                                r["id"],
                                r["n"],
                                f"{r['density']:.6g}",
                                c.tag,
                                f"{c.slack:.6g}",
                                f"{tol:.6g}",
                            ]
                        )
            out.write(f"# graphs={len(rows)} violations={violations}\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_simulate(args) -> int:
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    model = RateModel(k=3, nu=args.nu, lam=args.lam)
    seeds = [
        int(s) for s in np.random.SeedSequence(args.seed).generate_state(args.count)
    ]
    graphs = []
    for i in range(args.count):
        graphs.append(
            simulate_walk(args.n, model, burn_in=args.burn_in, seed=seeds[i])
        )
    paths = gio.write_collection(outdir, graphs)
    manifest = {
        "format_version": gio.FORMAT_VERSION,
        "generator": "triadic-closure-walk",
        "n": args.n,
        "nu": args.nu,
        "lambda": args.lam,
        "burn_in": args.burn_in,
        "count": args.count,
        "seed": args.seed,
        "graph_seeds": seeds,
        "files": [p.name for p in paths],
    }
    with open(outdir / "manifest.json", "w", encoding="utf-8") as out:
        json.dump(manifest, out, indent=2)
        out.write("\n")
    print(f"wrote {args.count} graphs to {outdir}", file=sys.stderr)
    return 0


def cmd_classify(args) -> int:
    spec = FeatureSpec.parse(args.features)
    coll_a = gio.read_collection(args.collection_a)
    coll_b = gio.read_collection(args.collection_b)
    rng = np.random.default_rng(args.seed)
    size = min(len(coll_a), len(coll_b))
    idx_a = rng.choice(len(coll_a), size, replace=False)
    idx_b = rng.choice(len(coll_b), size, replace=False)
    records, labels = [], []
    for j, i in enumerate(idx_a):
        records.append(
            graph_record(coll_a[i][1], spec, _graph_seed(args.seed, j))
        )
        labels.append(0)
    for j, i in enumerate(idx_b):
        records.append(
            graph_record(coll_b[i][1], spec, _graph_seed(args.seed, size + j))
        )
        labels.append(1)
    result = cross_validate(
        records, labels, spec, folds=args.folds, seed=args.seed
    )
    task = f"{Path(args.collection_a).stem}_vs_{Path(args.collection_b).stem}"
    out = _out_handle(args.output)
    try:
        writer = csv.writer(out)
        writer.writerow(
            ["features", "task", "mean_accuracy", "std_error", "folds", "instances"]
        )
        writer.writerow(
            [
                spec.name,
                task,
                f"{result.mean_accuracy:.6f}",
                f"{result.std_error:.6f}",
                args.folds,
                2 * size,
            ]
        )
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def cmd_catalog(args) -> int:
    cat = build_catalog(args.k)
    out = _out_handle(args.output)
    try:
        writer = csv.writer(out)
        writer.writerow(["index", "edge_count", "aut", "code"])
        for c in cat.classes:
            writer.writerow([c.index, c.edge_count, c.aut, c.code.bitstring])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="subgraphspace",
        description=(
            "Induced subgraph frequencies of graph collections: census, "
            "backbone fitting, extremal bounds, simulation, classification."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="induced k-subgraph frequencies")
    p.add_argument("input", help="collection: directory or JSON-lines file")
    p.add_argument("-k", type=int, default=3, choices=(2, 3, 4, 5))
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="force enumeration")
    mode.add_argument("--samples", type=int, help="force sampling with N draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("fit", help="fit the triadic-closure backbone rate")
    p.add_argument("input", help="census CSV (from the census command)")
    p.add_argument("--lambda-max", type=float, default=20.0)
    p.add_argument("--grid", type=int, default=99)
    p.add_argument("--grid-min", type=float, default=0.01)
    p.add_argument("--grid-max", type=float, default=0.99)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("bounds", help="LP envelopes of feasible frequencies")
    p.add_argument("-k", type=int, default=3, choices=(3, 4, 5))
    p.add_argument("--grid", type=int, default=101)
    p.add_argument("--objective", default="all", help="'all' or a class index")
    p.add_argument("--check", help="census CSV to test against the bounds")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("simulate", help="generate a walk-simulated collection")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--nu", type=float, required=True)
    p.add_argument("--lam", "--lambda", type=float, default=0.0, dest="lam")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--burn-in", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("outdir")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("classify", help="cross-validated two-collection task")
    p.add_argument("collection_a")
    p.add_argument("collection_b")
    p.add_argument("--features", default="quads")
    p.add_argument("--folds", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("catalog", help="dump the k-node class catalog")
    p.add_argument("-k", type=int, default=3, choices=(2, 3, 4, 5))
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
