"""
Command-line router: builds the parser and dispatches subcommands.
"""

import argparse
import logging
from pathlib import Path
from typing import List, Optional

from bochner_lab.cli import options
from bochner_lab.cli.commands import catalog, check, config, schema, stability, study
from bochner_lab.core.config import activate_settings, load_settings
from bochner_lab.core.exceptions import handle_exception

logger = logging.getLogger(__name__)

COMMANDS = [check, study, catalog, config, stability, schema]


def build_parser() -> argparse.ArgumentParser:
    parser = options.CliParser(
        prog="bochner-lab",
        description="Numerical verification of Bochner-technique identities",
    )
    parser.add_argument("--config", type=Path, help="Flat JSON configuration file")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    for sub in subparsers.choices.values():
        sub.add_argument("--config", type=Path, default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    return parser


def run_cli(argv: Optional[List[str]] = None) -> int:
    """
    Parse arguments, layer the configuration and run one subcommand.

    Errors outside a check are emitted as an error payload; the return value
    is the process exit code.
    """
    try:
        args = build_parser().parse_args(argv)
        settings = load_settings(args.config, options.settings_overrides(args))
        activate_settings(settings)
        return args.handler(args, settings)
    except Exception as exc:
        payload, exit_code = handle_exception(exc)
        options.emit(payload)
        return exit_code
    finally:
        activate_settings(None)
