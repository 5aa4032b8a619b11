"""Command-line front end: train, score, winrate.

train fits the attention regressor (optionally the ablation baselines
alongside) on an exported dataset CSV and writes the model artifact plus
metrics. score ranks a candidate CSV with a saved artifact. winrate runs
the model-vs-random selection loop against the simulator CLI. Every
command writes a manifest (parameters, seeds, data digest, versions)
into its run directory.
"""
import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .data import dataset_digest, load_records, split_by_graph
from .model import load_model, save_model
from .rank import rank_candidates, ranked_csv
from .train import train
from .winrate import evaluate_winrate


def _versions() -> dict:
    import scipy
    import torch

    from . import __version__

    return {"ml_stabsel": __version__, "numpy": np.__version__,
            "scipy": scipy.__version__, "torch": str(torch.__version__),
            "python": ".".join(map(str, sys.version_info[:3]))}


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _finish(out: Path, command: str, params: dict, seeds=()) -> None:
    _write_json(out / "manifest.json", {
        "command": command, "parameters": params, "seeds": list(seeds),
        "versions": _versions()})


def _outdir(args, command: str) -> Path:
    out = Path(args.out) if args.out else Path("runs") / command
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_train(args) -> int:
    out = _outdir(args, "train")
    records = load_records(args.data)
    digest = dataset_digest(args.data)
    split = split_by_graph(records, seed=args.seed, held_key=args.held_graph)
    results = {}
    variants = [(args.arch, args.features)]
    if args.baselines:
        variants += [("gat", "support"), ("flat", "pauli")]
    for arch, features in variants:
        res = train(records, seed=args.seed, arch=arch, features=features,
                    epochs=args.epochs, lr=args.lr, batch=args.batch,
                    split=split)
        res.manifest["data_sha256"] = digest
        name = "model" if (arch, features) == variants[0] else \
            f"model-{arch}-{features}"
        save_model(out / f"{name}.pt", res.model, res.desc, res.norm,
                   res.manifest)
        results[name] = res.metrics
        print(f"{name}: held-out spearman "
              f"{res.metrics['spearman_held']:.3f} "
              f"({res.metrics['n_train']} train rows, "
              f"{res.metrics['n_held']} held)")
    _write_json(out / "metrics.json", results)
    _finish(out, "train",
            {"data": str(args.data), "data_sha256": digest,
             "arch": args.arch, "features": args.features,
             "epochs": args.epochs, "lr": args.lr, "batch": args.batch,
             "baselines": args.baselines, "held_graph": split.held_key},
            seeds=[args.seed])
    return 0


def cmd_score(args) -> int:
    out = _outdir(args, "score")
    model, meta = load_model(args.model)
    records = load_records(args.candidates, require_target=False)
    if not records:
        raise SystemExit(f"no candidate rows in {args.candidates}")
    order, scores = rank_candidates(model, meta, records)
    (out / "ranked.csv").write_text(
        ranked_csv(records, order, scores, top=args.top))
    best = int(order[0])
    print(f"score: {len(records)} candidates, best row {best} "
          f"predicted p_fail {scores[best]:.5f}")
    _finish(out, "score",
            {"model": str(args.model), "candidates": str(args.candidates),
             "candidates_sha256": dataset_digest(args.candidates),
             "top": args.top})
    return 0


def cmd_winrate(args) -> int:
    out = _outdir(args, "winrate")
    model, meta = load_model(args.model)

    def progress(row):
        print(f"trial {row['trial']}: model {row['p_fail_model']:.5f} "
              f"random {row['p_fail_random']:.5f} "
              f"{'win' if row['win'] else 'loss'}")

    stats = evaluate_winrate(
        model, meta, trials=args.trials, pool=args.pool, shots=args.shots,
        seed=args.seed, simulator=args.simulator,
        progress=progress if args.verbose else None)
    _write_json(out / "winrate.json", stats)
    print(f"winrate: {stats['wins']}/{stats['trials']} wins "
          f"({stats['win_fraction']:.1%}), mean reduction "
          f"{stats['mean_reduction']:.1%}")
    _finish(out, "winrate",
            {"model": str(args.model), "trials": args.trials,
             "pool": args.pool, "shots": args.shots,
             "simulator": args.simulator},
            seeds=[args.seed])
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ml-stabsel",
        description="surrogate ranking of stabilizer verification pairs")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, configure):
        p = sub.add_parser(name)
        p.add_argument("--out", help="output directory (default runs/<cmd>)")
        configure(p)
        p.set_defaults(fn=fn)

    def conf_train(p):
        p.add_argument("--data", required=True, help="dataset CSV")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--arch", choices=("gat", "flat"), default="gat")
        p.add_argument("--features", choices=("pauli", "support"),
                       default="pauli")
        p.add_argument("--epochs", type=int, default=1200)
        p.add_argument("--lr", type=float, default=2e-3)
        p.add_argument("--batch", type=int, default=128)
        p.add_argument("--held-graph", help="pin the held-out adjacency hash")
        p.add_argument("--baselines", action="store_true",
                       help="also train support-mask and no-attention models")
    add("train", cmd_train, conf_train)

    def conf_score(p):
        p.add_argument("--model", required=True, help="model artifact")
        p.add_argument("--candidates", required=True,
                       help="feature CSV to rank")
        p.add_argument("--top", type=int, help="emit only the best N rows")
    add("score", cmd_score, conf_score)

    def conf_winrate(p):
        p.add_argument("--model", required=True, help="model artifact")
        p.add_argument("--trials", type=int, default=40)
        p.add_argument("--pool", type=int, default=10_000)
        p.add_argument("--shots", type=int, default=20_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--simulator", help="path to the simulator CLI")
        p.add_argument("--verbose", action="store_true",
                       help="print each trial as it lands")
    add("winrate", cmd_winrate, conf_winrate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
