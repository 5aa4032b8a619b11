"""Command-line front end.

Subcommands cover the pipeline end to end: circuit synthesis, resource
construction, graph recompilation, single runs, sweeps, training-data
export, and side-by-side reporting against stored hardware reference
numbers. Every command writes its outputs plus a manifest (parameters,
seeds, config fingerprints, versions) into a run directory, so results
can be traced back to exact inputs. The only environment variable
honored is CLINRLAB_THREADS (sweep parallelism).
"""
import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .circuit import Circuit
from .clinr import CHECK_PAIRS
from .experiment import (
    DATASET_SCHEMA, HARDWARE_REFERENCES, ExperimentConfig, block_resource,
    dataset_csv, export_dataset, pair_sweep_configs, random_plan_configs,
    run_experiment, schedule_comparison_configs, stabilizer_text, sweep,
    sweep_csv, tempo1_model,
)
from .graphstate import search_compilations, verify_compilation
from .gse import encoded_block_circuit
from .lower import lower_to_native
from .stim_io import export_stim
from .trotter import physical_trotter_circuit


def _versions() -> dict:
    import numpy
    import scipy

    from . import __version__

    return {"clinrlab": __version__, "numpy": numpy.__version__,
            "scipy": scipy.__version__,
            "python": ".".join(map(str, sys.version_info[:3]))}


def _write_json(path: Path, obj) -> None:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _finish(out: Path, command: str, params: dict, fingerprints=(),
            seeds=()) -> None:
    _write_json(out / "manifest.json", {
        "command": command, "parameters": params,
        "config_fingerprints": list(fingerprints), "seeds": list(seeds),
        "versions": _versions()})


def _outdir(args, command: str) -> Path:
    out = Path(args.out) if args.out else Path("runs") / command
    out.mkdir(parents=True, exist_ok=True)
    return out


def _expand_noise(data: dict) -> dict:
    """Replace the "tempo-1" shorthand with the full noise payload."""
    if data.get("noise") == "tempo-1":
        base = tempo1_model()
        data["noise"] = base.to_json_dict()
        data["pair_table_csv"] = base.pair_table.to_csv()
    return data


def _load_config(path: str) -> ExperimentConfig:
    data = _expand_noise(json.loads(Path(path).read_text()))
    return ExperimentConfig.from_json_dict(data)


def _two_qubit_count(c: Circuit) -> int:
    return sum(1 for g in c.ops if g.is_unitary() and len(g.qubits) == 2)


# -- subcommands --------------------------------------------------------------

def cmd_synth(args) -> int:
    out = _outdir(args, "synth")
    trotter = physical_trotter_circuit()
    block = encoded_block_circuit(args.theta)
    for name, c in (("trotter_circuit", trotter), ("block_circuit", block)):
        _write_json(out / f"{name}.json", c.to_json_dict())
        (out / f"{name}.stim").write_text(export_stim(c))
    lowered = lower_to_native(trotter)
    print(f"trotter: {trotter.n_qubits} qubits, {len(trotter.ops)} ops, "
          f"{_two_qubit_count(trotter)} two-qubit; lowered "
          f"{sum(1 for g in lowered.ops if g.kind == 'ZZ')} ZZ")
    _finish(out, "synth", {"theta": args.theta})
    return 0


def cmd_resource(args) -> int:
    out = _outdir(args, "resource")
    spec = block_resource()
    gens = spec.generators()
    _write_json(out / "resource_prep.json", spec.prep.to_json_dict())
    _write_json(out / "resource.json", {
        "n": spec.n,
        "generators": [stabilizer_text(g, spec.n) for g in gens],
        "nonidentity_count": spec.nonidentity_count(),
        "candidate_pair_count": spec.candidate_pair_count(),
        "check_pairs": {k: list(v) for k, v in sorted(CHECK_PAIRS.items())},
    })
    print(f"resource: n={spec.n}, {spec.nonidentity_count()} nonidentity "
          f"stabilizers, {spec.candidate_pair_count()} candidate pairs")
    _finish(out, "resource", {})
    return 0


def cmd_compile_graph(args) -> int:
    out = _outdir(args, "compile-graph")
    spec = block_resource()
    comps = search_compilations(spec.generators(), iters=args.iters,
                                seed=args.seed, keep=args.keep)
    entries = []
    for idx, comp in enumerate(comps):
        circ = comp.emit()
        zz = sum(1 for g in lower_to_native(circ).ops if g.kind == "ZZ")
        entries.append({
            "id": idx, "cost": list(comp.cost()), "lowered_zz": zz,
            "adjacency_rows": list(comp.graph.rows),
            "roundtrip": verify_compilation(comp, spec.generators()),
            "circuit": circ.to_json_dict()})
    _write_json(out / "compilations.json", entries)
    _write_json(out / "best_circuit.json", entries[0]["circuit"])
    for e in entries:
        print(f"compilation {e['id']}: cost={tuple(e['cost'])} "
              f"loweredZZ={e['lowered_zz']} roundtrip={e['roundtrip']}")
    _finish(out, "compile-graph",
            {"iters": args.iters, "seed": args.seed, "keep": args.keep},
            seeds=[args.seed])
    return 0


def cmd_run(args) -> int:
    out = _outdir(args, "run")
    cfg = _load_config(args.config)
    prep = None
    if args.resource_circuit:
        prep = Circuit.from_json_dict(
            json.loads(Path(args.resource_circuit).read_text()))
    rec = run_experiment(cfg, resource_prep=prep)
    _write_json(out / "record.json", rec.to_json_dict())
    (out / "record.csv").write_text(sweep_csv([rec]))
    tvd = "empty" if rec.empty else f"{rec.tvd:.5f}"
    print(f"{rec.label or cfg.variant}: tvd={tvd} "
          f"acceptance={rec.acceptance_rate:.4f} accepted={rec.accepted}")
    _finish(out, "run", {"config": args.config,
                         "resource_circuit": args.resource_circuit},
            fingerprints=[cfg.fingerprint()], seeds=[cfg.seed])
    return 0


def cmd_sweep(args) -> int:
    out = _outdir(args, "sweep")
    noise = tempo1_model()
    if args.config:
        data = json.loads(Path(args.config).read_text())
        configs = [ExperimentConfig.from_json_dict(_expand_noise(d))
                   for d in data["configs"]]
    elif args.kind == "pairs":
        configs = pair_sweep_configs(noise, args.shots, seed=args.seed,
                                     schedule=args.schedule,
                                     resource=args.resource)
    elif args.kind == "schedules":
        configs = schedule_comparison_configs(noise, args.shots,
                                              seed=args.seed, pair=args.pair)
    elif args.kind == "rsweep":
        configs = random_plan_configs(noise, args.shots, seed=args.seed,
                                      schedule=args.schedule)
    else:
        raise SystemExit("--kind or --config required")
    records = sweep(configs)
    (out / "sweep.csv").write_text(sweep_csv(records))
    _write_json(out / "sweep.json", [r.to_json_dict() for r in records])
    for r in records:
        tvd = "empty" if r.empty else f"{r.tvd:.5f}"
        print(f"{r.label}: tvd={tvd} acceptance={r.acceptance_rate:.4f}")
    _finish(out, "sweep",
            {"kind": args.kind, "shots": args.shots, "schedule": args.schedule,
             "pair": args.pair, "resource": args.resource,
             "config": args.config},
            fingerprints=[c.fingerprint() for c in configs],
            seeds=sorted({c.seed for c in configs}))
    return 0


def cmd_dataset(args) -> int:
    out = _outdir(args, "dataset")
    spec = block_resource()
    comps = search_compilations(spec.generators(), iters=args.graph_iters,
                                seed=args.graph_seed, keep=args.graphs)
    keep = None
    if args.rows:
        keep = {int(tok) for tok in args.rows.split(",")}
    rows = list(export_dataset(
        comps, args.pairs_per_graph, p1q=args.p1q, band=args.band,
        shots=args.shots, seed=args.seed, weight_cap=args.weight_cap,
        measure=not args.no_measure, keep=keep))
    (out / "dataset.csv").write_text(dataset_csv(rows))
    _write_json(out / "schema.json", DATASET_SCHEMA)
    measured = sum(1 for r in rows if not math.isnan(r.p_fail))
    print(f"dataset: {len(rows)} rows ({measured} measured) from "
          f"{len(comps)} graphs")
    _finish(out, "dataset",
            {"graphs": args.graphs, "pairs_per_graph": args.pairs_per_graph,
             "p1q": args.p1q, "band": args.band, "shots": args.shots,
             "weight_cap": args.weight_cap, "no_measure": args.no_measure,
             "rows": args.rows, "graph_seed": args.graph_seed,
             "graph_iters": args.graph_iters},
            seeds=[args.seed, args.graph_seed])
    return 0


REPORT_COLUMNS = ("label", "tvd", "tvd_stderr", "acceptance_rate",
                  "incorrect_component", "bias_significance", "ref_tvd",
                  "ref_acceptance_rate", "ref_incorrect_component",
                  "ref_bias_significance")


def _reference_for(label: str) -> dict:
    key = label.split("-")[0]
    return HARDWARE_REFERENCES.get(key, {})


def cmd_report(args) -> int:
    out = _outdir(args, "report")
    src = Path(args.run)
    table = src / "sweep.csv"
    if not table.exists():
        table = src / "record.csv"
    if not table.exists():
        raise SystemExit(f"no sweep.csv or record.csv under {src}")
    with table.open() as fh:
        rows = list(csv.DictReader(fh))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(REPORT_COLUMNS)
    merged = []
    for row in rows:
        ref = _reference_for(row["label"])
        entry = {
            "label": row["label"], "tvd": row["tvd"],
            "tvd_stderr": row["tvd_stderr"],
            "acceptance_rate": row["acceptance_rate"],
            "incorrect_component": row["incorrect_component"],
            "bias_significance": row["bias_significance"],
            "ref_tvd": ref.get("tvd", ""),
            "ref_acceptance_rate": ref.get("acceptance_rate", ""),
            "ref_incorrect_component": ref.get("incorrect_component", ""),
            "ref_bias_significance": ref.get("bias_significance", ""),
        }
        merged.append(entry)
        w.writerow([entry[c] for c in REPORT_COLUMNS])
    (out / "report.csv").write_text(buf.getvalue())
    _write_json(out / "report.json", merged)
    print(f"report: {len(merged)} rows "
          f"(references are context, not simulation targets)")
    _finish(out, "report", {"run": str(src)})
    return 0


# -- argument wiring ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="clinrlab", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, configure):
        p = sub.add_parser(name)
        p.add_argument("--out", help="run directory (default runs/<command>)")
        configure(p)
        p.set_defaults(fn=fn)

    add("synth", cmd_synth, lambda p: p.add_argument(
        "--theta", type=float, default=math.pi / 2))

    add("resource", cmd_resource, lambda p: None)

    def conf_compile(p):
        p.add_argument("--iters", type=int, default=2000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--keep", type=int, default=8)
    add("compile-graph", cmd_compile_graph, conf_compile)

    def conf_run(p):
        p.add_argument("--config", required=True)
        p.add_argument("--resource-circuit",
                       help="prep circuit JSON for resource=graph")
    add("run", cmd_run, conf_run)

    def conf_sweep(p):
        p.add_argument("--kind", choices=("pairs", "schedules", "rsweep"))
        p.add_argument("--config", help="JSON file with explicit configs")
        p.add_argument("--shots", type=int, default=100_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--schedule", choices=("MCM", "ECM"), default="MCM")
        p.add_argument("--pair", default="S6", choices=sorted(CHECK_PAIRS))
        p.add_argument("--resource", choices=("naive", "graph"),
                       default="graph")
    add("sweep", cmd_sweep, conf_sweep)

    def conf_dataset(p):
        p.add_argument("--graphs", type=int, default=10)
        p.add_argument("--pairs-per-graph", type=int, default=200)
        p.add_argument("--p1q", type=float, default=1e-3)
        p.add_argument("--band", type=float, default=0.10)
        p.add_argument("--shots", type=int, default=10_000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--weight-cap", type=int, default=8)
        p.add_argument("--graph-seed", type=int, default=0)
        p.add_argument("--graph-iters", type=int, default=2000)
        p.add_argument("--no-measure", action="store_true",
                       help="emit features only, skip simulation")
        p.add_argument("--rows", help="comma-separated row indices to measure")
    add("dataset", cmd_dataset, conf_dataset)

    def conf_report(p):
        p.add_argument("--run", required=True,
                       help="run directory holding sweep.csv or record.csv")
    add("report", cmd_report, conf_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    raise SystemExit(main())
