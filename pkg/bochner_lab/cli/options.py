"""
Shared command-line options and output helpers.
"""

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional

from bochner_lab.core.config import BaseSettings
from bochner_lab.core.exceptions import InvalidParameters
from bochner_lab.domain.checks.schemas import GeometrySpec, RunConfig
from bochner_lab.infrastructure.reporting import dumps, write_json


class CliParser(argparse.ArgumentParser):
    """Argument errors become InvalidParameters (exit code 4)."""

    def error(self, message: str):
        raise InvalidParameters(f"{self.prog}: {message}")


def split_top_level(text: str) -> List[str]:
    """Split on commas outside brackets and quotes."""
    parts, depth, quoted, current = [], 0, False, []
    for char in text:
        if char == '"':
            quoted = not quoted
        elif not quoted and char in "[{":
            depth += 1
        elif not quoted and char in "]}":
            depth -= 1
        elif char == "," and depth == 0 and not quoted:
            parts.append("".join(current))
            current = []
            continue
        current.append(char)
    if current:
        parts.append("".join(current))
    return [part.strip() for part in parts if part.strip()]


def parse_params(items: Optional[List[str]]) -> Dict[str, Any]:
    """
    k=v pairs; values are JSON when they parse, plain strings otherwise.

    Raises:
        InvalidParameters: if a pair has no '='
    """
    params: Dict[str, Any] = {}
    for item in items or []:
        for pair in split_top_level(item):
            key, sep, raw = pair.partition("=")
            if not sep or not key.strip():
                raise InvalidParameters(f"expected k=v, got '{pair}'")
            try:
                params[key.strip()] = json.loads(raw)
            except json.JSONDecodeError:
                params[key.strip()] = raw
    return params


def resolution_list(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def add_geometry_options(parser: argparse.ArgumentParser, required: bool = True) -> None:
    parser.add_argument("--geometry", required=required, help="Catalog entry name")
    parser.add_argument(
        "--params", action="append", metavar="K=V,...", help="Entry parameters, JSON values"
    )


def add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--resolution", type=int, help="Nodes per axis")
    parser.add_argument("--resolutions", type=resolution_list, help="Study resolutions, e.g. 32,64,128")
    parser.add_argument("--tol", type=float, help="Override every check tolerance")
    parser.add_argument("--order", type=int, help="Central-difference order (2 or 4)")
    parser.add_argument("--seed", type=int, help="Seed of every random draw")
    parser.add_argument("--threads", type=int, help="Worker threads of a study")
    parser.add_argument("--strict", action="store_true", help="Strict curvature hypotheses")
    parser.add_argument("--p", type=float, help="L^p exponent")
    parser.add_argument("--num-modes", dest="num_modes", type=int, help="Eigenvalues to report")


def add_output_options(parser: argparse.ArgumentParser, csv: bool = True) -> None:
    parser.add_argument("--out", type=Path, help="Write the JSON report here")
    if csv:
        parser.add_argument("--csv", type=Path, help="Write the residual table here")


def settings_overrides(args: argparse.Namespace) -> Dict[str, Any]:
    """Flags that map onto settings keys."""
    mapping = {"order": "FD_ORDER", "seed": "SEED", "threads": "THREADS"}
    return {
        key: getattr(args, flag)
        for flag, key in mapping.items()
        if getattr(args, flag, None) is not None
    }


def geometry_from(args: argparse.Namespace) -> GeometrySpec:
    return GeometrySpec(name=args.geometry, params=parse_params(args.params))


def run_config_from(args: argparse.Namespace, settings: BaseSettings) -> RunConfig:
    return RunConfig.from_settings(
        settings,
        resolution=args.resolution,
        resolutions=args.resolutions,
        tol=args.tol,
        strict=args.strict or None,
        p=args.p,
        num_modes=args.num_modes,
    )


def emit(payload: Any, out: Optional[Path] = None) -> None:
    if out is not None:
        write_json(payload, out)
    else:
        sys.stdout.write(dumps(payload))
