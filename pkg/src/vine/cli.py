"""Operator entry point: train runs, compute reductions, serve the
inspector, export animation frame data, and summarize archives."""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import asdict
from pathlib import Path

from .archive import ArchiveError, RunManifest, RunWriter, dumps_canonical, read_run
from .envs import get_environment
from .evolution import EsConfig, GaConfig, run_evolution
from .session import fitness_curve, generation_points, load_session
from .views import list_views, reduce_run, write_view

ES_DEFAULT_POP = 100
GA_DEFAULT_POP = 50


def data_root() -> Path:
    return Path(os.environ.get("VINE_DATA_DIR", "runs"))


def _build_config(args):
    if args.algo == "es":
        pop = args.pop if args.pop is not None else ES_DEFAULT_POP
        return EsConfig(population_size=pop, noise_stdev=args.sigma,
                        learning_rate=args.alpha, generations=args.gens,
                        run_seed=args.seed)
    pop = args.pop if args.pop is not None else GA_DEFAULT_POP
    return GaConfig(population_size=pop, truncation_size=max(1, pop // 5),
                    mutation_stdev=args.sigma, elite_count=1,
                    generations=args.gens, run_seed=args.seed)


def cmd_train(args) -> int:
    env = get_environment(args.env)
    config = _build_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for stale in list(out.glob("gen_*.jsonl")) + list(out.glob("view_*.jsonl")):
        stale.unlink()
    manifest = RunManifest(
        run_id=out.name, algo=args.algo, env_id=args.env,
        config=asdict(config), bc_dimension=env.bc_dimension,
        layer_sizes=list(env.policy_spec.layer_sizes))
    writer = RunWriter(out, manifest)
    summary = run_evolution(args.env, config, writer)
    print(f"{out}: {summary.generations_completed} generations, "
          f"final parent fitness {summary.final_parent_fitness!r}")
    return 0


def cmd_reduce(args) -> int:
    archive = read_run(args.run)
    options = {}
    if args.method == "tsne" and args.perplexity is not None:
        options["perplexity"] = args.perplexity
    view = reduce_run(archive, args.method, options)
    path = write_view(args.run, view)
    print(f"{path}: {view.generations} generations")
    return 0


def _discover_runs() -> list[Path]:
    root = data_root()
    if not root.is_dir():
        raise FileNotFoundError(
            f"run root {root} does not exist (set VINE_DATA_DIR or pass --run)")
    return sorted(p.parent for p in root.glob("*/manifest.json"))


def cmd_serve(args) -> int:
    from .server import serve

    run_dirs = [Path(r) for r in args.run] if args.run else _discover_runs()
    ui_dir = Path(args.ui) if args.ui else None
    serve(run_dirs, bind=args.bind, ui_dir=ui_dir)
    return 0


def cmd_export_frames(args) -> int:
    session = load_session(args.run)
    out = Path(args.out) if args.out else Path(args.run) / f"frames_{args.view}.jsonl"
    curve = fitness_curve(session)
    lines = []
    for g in range(session.generations):
        point_slice = generation_points(session, g, args.view)
        lines.append(dumps_canonical({
            "g": g,
            "points": [
                {"index": p.index, "coords": p.coords.tolist(),
                 "fitness": p.fitness, "bin": p.bin, "is_parent": p.is_parent}
                for p in point_slice.points
            ],
            "fitness_so_far": curve[:g + 1].tolist(),
        }))
    out.write_text("\n".join(lines) + "\n")
    print(f"{out}: {session.generations} frame records")
    return 0


def cmd_inspect(args) -> int:
    archive = read_run(args.run)
    m = archive.manifest
    print(f"run_id: {m.run_id}")
    print(f"algo: {m.algo}  env: {m.env_id}")
    print(f"generations: {m.generations_completed} recorded, "
          f"{archive.generations_readable} readable, "
          f"complete: {archive.complete}")
    print(f"population_size: {m.population_size}  "
          f"bc_dimension: {m.bc_dimension}  layer_sizes: {m.layer_sizes}")
    views = list_views(args.run)
    print(f"views: {', '.join(views) if views else '(none)'}")
    if archive.generations_readable:
        last = archive.read_generation(archive.generations_readable - 1)
        print(f"final parent fitness: {last.parent_fitness!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vine",
        description="Train, reduce, inspect, and serve neuroevolution runs.")
    sub = parser.add_subparsers(dest="command", required=True)

    train = sub.add_parser("train", help="run ES or GA on a built-in task")
    train.add_argument("--env", required=True,
                       choices=["point_walker", "grid_quest"])
    train.add_argument("--algo", default="es", choices=["es", "ga"])
    train.add_argument("--gens", type=int, default=200)
    train.add_argument("--seed", type=int, default=0)
    train.add_argument("--pop", type=int, default=None,
                       help="population size (default: 100 es, 50 ga)")
    train.add_argument("--sigma", type=float, default=0.05,
                       help="es noise stdev / ga mutation stdev")
    train.add_argument("--alpha", type=float, default=0.03,
                       help="es learning rate")
    train.add_argument("--out", required=True, help="run directory to write")
    train.set_defaults(func=cmd_train)

    reduce_p = sub.add_parser("reduce", help="compute a 2-D view of a run")
    reduce_p.add_argument("--run", required=True)
    reduce_p.add_argument("--method", required=True,
                          choices=["identity", "pca", "tsne"])
    reduce_p.add_argument("--perplexity", type=float, default=None)
    reduce_p.set_defaults(func=cmd_reduce)

    serve_p = sub.add_parser("serve", help="serve the inspector API (and UI)")
    serve_p.add_argument("--run", action="append", default=None,
                         help="run directory (repeatable); default: all runs "
                              "under VINE_DATA_DIR")
    serve_p.add_argument("--bind", default="127.0.0.1:8777")
    serve_p.add_argument("--ui", default=None,
                         help="directory of built UI assets to serve at /")
    serve_p.set_defaults(func=cmd_serve)

    export = sub.add_parser("export-frames",
                            help="write one frame record per generation")
    export.add_argument("--run", required=True)
    export.add_argument("--view", required=True)
    export.add_argument("--out", default=None)
    export.set_defaults(func=cmd_export_frames)

    inspect = sub.add_parser("inspect", help="print a run summary")
    inspect.add_argument("--run", required=True)
    inspect.set_defaults(func=cmd_inspect)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, TypeError, IndexError, ArchiveError, OSError) as exc:
        print(f"vine {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
