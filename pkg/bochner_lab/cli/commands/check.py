"""
`bochner-lab check <check_id>`: one check at one resolution.
"""

from bochner_lab.cli import options
from bochner_lab.domain.checks.services.check_service import run_check
from bochner_lab.infrastructure.reporting import write_csv


def register(subparsers) -> None:
    parser = subparsers.add_parser("check", help="Run one verification check")
    parser.add_argument("check_id", help="Registered check id")
    options.add_geometry_options(parser)
    options.add_run_options(parser)
    options.add_output_options(parser)
    parser.set_defaults(handler=handle)


def handle(args, settings) -> int:
    report = run_check(args.check_id, options.geometry_from(args), options.run_config_from(args, settings))
    options.emit(report, args.out)
    if args.csv is not None:
        write_csv(report, args.csv)
    return report.exit_code
