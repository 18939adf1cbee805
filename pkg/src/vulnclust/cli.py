"""Command-line entry points: run the pipeline, serve or export artifacts.

Exit codes: 0 success, 1 data error (unparseable or inconsistent inputs),
2 config or usage error.
"""

from __future__ import annotations

import argparse
import sys

from .ingest import DOMAINS, ParseError, parse_adjacency, parse_dataset, validate
from .pipeline import (
    DEFAULT_K_MAX,
    DEFAULT_K_MIN,
    DEFAULT_SEED,
    ConfigError,
    PipelineConfig,
    PipelineError,
    export_run,
    run_pipeline,
    write_artifact,
)
from .clustering import DEFAULT_EPSILON, DEFAULT_MAX_ITER, DEFAULT_RESTARTS

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_CONFIG_ERROR = 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vulnclust",
        description="Cluster small areas by development vulnerability and explore the results.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the full pipeline and persist an artifact")
    run.add_argument("--data", required=True, help="region CSV file")
    run.add_argument("--adjacency", required=True, help="contiguity edge list")
    run.add_argument("--geojson", help="optional FeatureCollection keyed by region id")
    run.add_argument("--out", default="runs", help="artifact store directory")
    run.add_argument(
        "--domains",
        default=",".join(DOMAINS),
        help="comma-separated domain subset (default: all seven)",
    )
    run.add_argument("--k-min", type=int, default=DEFAULT_K_MIN)
    run.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    run.add_argument("--epsilon", type=float, default=DEFAULT_EPSILON)
    run.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    run.add_argument("--seed", type=int, default=DEFAULT_SEED)
    run.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)

    serve = sub.add_parser("serve", help="serve persisted artifacts over HTTP")
    serve.add_argument("--store", required=True, help="artifact store directory")
    serve.add_argument("--bind", default="127.0.0.1:8787", help="host:port")

    val = sub.add_parser("validate", help="parse inputs and print warnings")
    val.add_argument("--data", required=True)
    val.add_argument("--adjacency", required=True)

    export = sub.add_parser("export", help="export a stored run as CSV or JSON")
    export.add_argument("--run", required=True, help="run directory inside a store")
    export.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def _cmd_run(args) -> int:
    config = PipelineConfig(
        domains=tuple(d.strip() for d in args.domains.split(",") if d.strip()),
        epsilon=args.epsilon,
        k_min=args.k_min,
        k_max=args.k_max,
        restarts=args.restarts,
        seed=args.seed,
        max_iter=args.max_iter,
    )
    artifact = run_pipeline(args.data, args.adjacency, config, args.geojson)
    run_dir = write_artifact(artifact, args.out)
    for warning in artifact.warnings:
        print(f"warning: {warning.message}", file=sys.stderr)
    print(run_dir)
    return EXIT_OK


def _cmd_validate(args) -> int:
    with open(args.data, "rb") as f:
        table = parse_dataset(f.read(), args.data)
    with open(args.adjacency, "rb") as f:
        dataset = parse_adjacency(f.read(), table, args.adjacency)
    warnings = validate(dataset)
    for warning in warnings:
        print(f"warning: {warning.message}")
    print(f"{len(dataset.regions)} regions, {len(dataset.adjacency.edges())} edges, "
          f"{len(warnings)} warnings")
    return EXIT_OK


def _cmd_export(args) -> int:
    for path in export_run(args.run, args.format):
        print(path)
    return EXIT_OK


def _cmd_serve(args) -> int:
    from .server import serve

    serve(args.store, args.bind)
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {
        "run": _cmd_run,
        "serve": _cmd_serve,
        "validate": _cmd_validate,
        "export": _cmd_export,
    }
    try:
        return handlers[args.command](args)
    except PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR if isinstance(exc.cause, ConfigError) else EXIT_DATA_ERROR
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
