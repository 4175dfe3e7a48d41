"""Command line entry point: ``sciswarm run|replay|sweep``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .config import load_config, parse_document
from .errors import ConfigError
from .replay import ReplayMismatch, read_events, replay
from .runner import Simulation

EXIT_OK, EXIT_CONFIG, EXIT_EXTINCT, EXIT_IO = 0, 2, 3, 4

log = logging.getLogger("sciswarm")

# CLI flag -> config key
OVERRIDES = {
    "seed": "seed",
    "iterations": "iterations",
    "labs": "lifecycle.initial_population",
    "landscape": "landscape",
    "dim": "dim",
    "mode": "mode",
}


def _read_document(path: str) -> dict:
    return parse_document(Path(path).read_text(encoding="utf-8"))


def _scalar(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _run_one(doc: dict, out: Path | None) -> int:
    config = load_config(doc)
    out = out or Path(config.output_dir or "runs/latest")
    summary = Simulation(config, out).run()
    log.info("%s: status=%s population=%d best=%s", out, summary.status,
             summary.final_population, summary.final_best_quality)
    return EXIT_EXTINCT if summary.status == "extinct" else EXIT_OK


def cmd_run(args) -> int:
    doc = _read_document(args.config) if args.config else {}
    for flag, key in OVERRIDES.items():
        value = getattr(args, flag)
        if value is not None:
            doc[key] = value
    return _run_one(doc, Path(args.out) if args.out else None)


def cmd_sweep(args) -> int:
    base = _read_document(args.config)
    key, _, raw = args.vary.partition("=")
    if not key or not raw:
        raise ConfigError("--vary expects KEY=v1,v2,...")
    worst = EXIT_OK
    for text in raw.split(","):
        value = _scalar(text)
        code = _run_one({**base, key: value}, Path(args.out) / f"{key}={text}")
        worst = max(worst, code)
    return worst


def cmd_replay(args) -> int:
    result = replay(read_events(args.log))
    print(json.dumps({
        "status": result.status,
        "iterations": result.iterations,
        "population": sorted(result.population),
        "budgets": {str(k): v for k, v in sorted(result.budgets.items())},
        "trust": {str(k): v for k, v in sorted(result.trust.items())},
        "births": result.births,
        "deaths": result.deaths,
        "problems": result.problems,
    }, indent=2))
    return EXIT_OK if result.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sciswarm", description="Swarm-of-virtual-labs simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run one experiment")
    p.add_argument("--config", help="JSON configuration document")
    p.add_argument("--seed", type=int)
    p.add_argument("--iterations", type=int)
    p.add_argument("--labs", type=int, help="initial population")
    p.add_argument("--landscape")
    p.add_argument("--dim", type=int)
    p.add_argument("--mode", choices=["reference", "votes", "multi_objective"])
    p.add_argument("--out", help="output directory (default: output_dir key, else runs/latest)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("replay", help="rebuild final state from an event log and audit it")
    p.add_argument("--log", required=True)
    p.set_defaults(func=cmd_replay)

    p = sub.add_parser("sweep", help="grid over one configuration key")
    p.add_argument("--config", required=True)
    p.add_argument("--vary", required=True, help="KEY=v1,v2,...")
    p.add_argument("--out", default="runs/sweep")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        log.error("configuration error: %s", exc)
        return EXIT_CONFIG
    except ReplayMismatch as exc:
        log.error("replay failed: %s", exc)
        return 1
    except OSError as exc:
        log.error("I/O error: %s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
