from bochner_lab.cli.router import build_parser, run_cli

__all__ = ["build_parser", "run_cli"]
