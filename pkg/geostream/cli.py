#!/usr/bin/env python
"""
Command line entry point.

    python -m geostream generate --out-dir data --seed 7 --rendezvous 2
    python -m geostream run data/fleet.csv --areas data/areas.geojson --ports data/ports.csv --out-dir out
    python -m geostream eval data/fleet.csv --sweep-turn 2,5,10,15,20
    python -m geostream export out/critical_points.csv --format kml --out out/synopsis.kml
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from geostream.config import PipelineConfig, load_config
from geostream.errors import GeostreamError
from geostream.runtime.fleet_generator import SyntheticFleetSpec, generate, write_fleet
from geostream.runtime.replay import RunResult, replay
from geostream.runtime.run_metrics import metrics, to_json, to_table
from geostream.runtime.sources import CsvPositionSource
from geostream.spatial.geometry import load_areas, load_ports
from geostream.spatial.grid_index import GridIndex
from geostream.synopsis.exporters import ExportFormat, append_csv, read_critical_points, write_export, write_per_vessel
from geostream.synopsis.metrics import compression_ratio, fleet_rmse, max_or_zero, mean_or_zero
from geostream.synopsis.serialization import to_record

logger = logging.getLogger("geostream")


# ---------------------------------------------------------------------------
# shared options
# ---------------------------------------------------------------------------
def _grid_size(text: str) -> tuple:
    nx, _, ny = text.lower().partition("x")
    try:
        return int(nx), int(ny or nx)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected NXxNY, got {text!r}") from None


def _pipeline_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="key = value config file")
    p.add_argument("--window", type=int, help="window range in seconds")
    p.add_argument("--slide", type=int, help="window slide in seconds")
    p.add_argument("--shards", type=int, help="number of parallel shards")
    p.add_argument("--partition", choices=["mmsi_hash", "sub_grid"], help="recognition partitioning")
    p.add_argument("--executor", choices=["thread", "process"])
    p.add_argument("--grid", type=_grid_size, help="grid granularity, e.g. 30x30")
    p.add_argument("--rate", type=float, help="replay pace in positions per second")
    p.add_argument("--areas", type=Path, help="GeoJSON file of areas")
    p.add_argument("--ports", type=Path, help="CSV file of ports")


def _pipeline_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = load_config(args.config) if args.config else PipelineConfig()
    nx, ny = args.grid if args.grid else (None, None)
    return cfg.with_overrides(
        **{
            "window.range_omega_s": args.window,
            "window.slide_beta_s": args.slide,
            "replay.shard_count": args.shards,
            "replay.partitioning": args.partition,
            "replay.executor": args.executor,
            "replay.rate_override": args.rate,
            "grid.nx": nx,
            "grid.ny": ny,
        }
    )


def _grid(args: argparse.Namespace, cfg: PipelineConfig) -> GridIndex:
    areas = load_areas(args.areas) if args.areas else []
    ports = load_ports(args.ports) if args.ports else []
    return GridIndex.build(areas, ports, cfg.grid)


def _replay(path: Path, args: argparse.Namespace, cfg: PipelineConfig, on_evicted=None) -> RunResult:
    return replay(CsvPositionSource(path), cfg, _grid(args, cfg), on_evicted=on_evicted)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------
def cmd_run(args: argparse.Namespace) -> int:
    cfg = _pipeline_config(args).with_overrides(**{"replay.keep_raw": True})
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    print(f"🚢 Replaying {args.input} with {cfg.replay.shard_count} shard(s)")
    # critical points are appended as the synopsis window lets go of them
    synopsis_csv = out / "critical_points.csv"
    synopsis_csv.unlink(missing_ok=True)
    append_csv([], synopsis_csv)
    run = _replay(args.input, args, cfg, on_evicted=lambda points: append_csv(points, synopsis_csv))

    if args.format and args.format != ExportFormat.CSV.value:
        write_export(run.critical_points, args.format, out / f"critical_points.{args.format}")
    with (out / "ces.jsonl").open("w", encoding="utf-8") as fh:
        for ce in run.ces:
            fh.write(json.dumps(to_record(ce), sort_keys=True) + "\n")
    report = metrics(run)
    (out / "metrics.json").write_text(to_json(report) + "\n", encoding="utf-8")

    print(to_table(report))
    print(f"\n✅ {len(run.critical_points)} critical points, {len(run.ces)} complex events written to {out}")
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    spec = SyntheticFleetSpec(
        n_vessels=args.vessels,
        duration_s=args.duration,
        report_period_s=args.period,
        suspicious_delays=args.suspicious_delays,
        rendezvous=args.rendezvous,
        pickings=args.pickings,
        fast_approaches=args.fast_approaches,
        increase_factor=args.increase_factor,
        out_of_sequence_rate=args.noise,
        off_course_rate=args.noise,
        duplicate_rate=args.noise,
        timestamp_conflict_rate=args.noise,
    )
    print(f"🎲 Generating {spec.n_vessels} vessels (seed {args.seed})")
    fleet = generate(spec, args.seed)
    paths = write_fleet(fleet, args.out_dir)
    print(f"✅ {len(fleet.reports)} reports, {len(fleet.ledger)} ledger entries")
    for name, path in paths.items():
        print(f"   {name}: {path}")
    return 0


def _sweep(values: Sequence[float], args: argparse.Namespace, base: PipelineConfig) -> List[Dict[str, float]]:
    rows = []
    for turn in values:
        cfg = base.with_overrides(**{"tracker.turn_threshold_deg": turn, "replay.keep_raw": True})
        run = _replay(args.input, args, cfg)
        report = metrics(run)
        rows.append({"turn_threshold_deg": turn, "compression_ratio": report.compression_ratio, "rmse_mean_m": report.rmse_mean_m})
        print(f"   Δθ={turn:>5g}°  compression {report.compression_ratio:.2%}  RMSE {report.rmse_mean_m:.1f} m")
    return rows


def cmd_eval(args: argparse.Namespace) -> int:
    cfg = _pipeline_config(args)
    if args.sweep_turn:
        values = [float(v) for v in args.sweep_turn.split(",") if v.strip()]
        print(f"📐 Sweeping the turn threshold over {values}")
        rows = _sweep(values, args, cfg)
        result = {"sweep": rows}
    else:
        if not args.critical:
            raise SystemExit("eval needs --critical or --sweep-turn")
        print(f"📐 Evaluating {args.critical} against {args.input}")
        raw: Dict[int, list] = {}
        for r in CsvPositionSource(args.input):
            raw.setdefault(r.mmsi, []).append(r)
        for reports in raw.values():
            reports.sort(key=lambda r: r.tau)
        points = read_critical_points(args.critical)
        by_vessel: Dict[int, list] = {}
        for p in points:
            by_vessel.setdefault(p.mmsi, []).append(p)
        rmses = list(fleet_rmse(raw, by_vessel).values())
        n_raw = sum(len(v) for v in raw.values())
        result = {
            "positions": n_raw,
            "critical_points": len(points),
            "compression_ratio": compression_ratio(n_raw, len(points)) if n_raw else 0.0,
            "rmse_mean_m": mean_or_zero(rmses),
            "rmse_max_m": max_or_zero(rmses),
        }
        for k, v in result.items():
            print(f"   {k}: {v}")
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "eval.json").write_text(json.dumps(result, indent=2) + "\n", encoding="utf-8")
    print("✅ Evaluation complete")
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    points = read_critical_points(args.input)
    if args.per_vessel:
        paths = write_per_vessel(points, args.format, args.out)
        print(f"✅ {len(points)} critical points exported to {len(paths)} {args.format} files in {args.out}")
    else:
        path = write_export(points, args.format, args.out)
        print(f"✅ {len(points)} critical points exported to {path}")
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------
def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geostream", description="Maritime trajectory synopses and complex event recognition")
    parser.add_argument("--log-level", default="WARNING", help="DEBUG, INFO, WARNING or ERROR")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="replay a position file and recognize complex events")
    run.add_argument("input", type=Path, help="CSV of mmsi, lon, lat, tau")
    run.add_argument("--out-dir", default="out")
    run.add_argument("--format", choices=[f.value for f in ExportFormat], help="extra synopsis export format")
    _pipeline_options(run)
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("generate", help="write a synthetic fleet with a ground-truth ledger")
    gen.add_argument("--out-dir", default="data")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--vessels", type=int, default=50)
    gen.add_argument("--duration", type=int, default=86_400, help="seconds")
    gen.add_argument("--period", type=int, default=60, help="report period in seconds")
    gen.add_argument("--suspicious-delays", type=int, default=0)
    gen.add_argument("--rendezvous", type=int, default=0)
    gen.add_argument("--pickings", type=int, default=0)
    gen.add_argument("--fast-approaches", type=int, default=0)
    gen.add_argument("--increase-factor", type=int, default=1)
    gen.add_argument("--noise", type=float, default=0.0, help="rate of every kind of injected noise")
    gen.set_defaults(func=cmd_generate)

    ev = sub.add_parser("eval", help="RMSE and compression of a finished run, or a turn threshold sweep")
    ev.add_argument("input", type=Path, help="CSV of raw positions")
    ev.add_argument("--critical", type=Path, help="critical_points.csv of a finished run")
    ev.add_argument("--sweep-turn", help="comma separated turn thresholds in degrees")
    ev.add_argument("--out-dir")
    _pipeline_options(ev)
    ev.set_defaults(func=cmd_eval)

    exp = sub.add_parser("export", help="convert a critical point CSV to another format")
    exp.add_argument("input", type=Path)
    exp.add_argument("--format", default="kml", choices=[f.value for f in ExportFormat])
    exp.add_argument("--out", required=True, type=Path, help="file, or directory with --per-vessel")
    exp.add_argument("--per-vessel", action="store_true")
    exp.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (GeostreamError, ValueError, OSError) as e:
        print(f"\n❌ {args.command} failed: {e}", file=sys.stderr)
        logger.debug("failure details", exc_info=True)
        return 1


if __name__ == "__main__":
    sys.exit(main())
