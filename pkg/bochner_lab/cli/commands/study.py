"""
`bochner-lab study <check_id>`: grid-refinement convergence study.
"""

from bochner_lab.cli import options
from bochner_lab.domain.checks.services.check_service import convergence_study
from bochner_lab.infrastructure.reporting import write_csv


def register(subparsers) -> None:
    parser = subparsers.add_parser("study", help="Fit the decay order of a check residual")
    parser.add_argument("check_id", help="Registered check id")
    options.add_geometry_options(parser)
    options.add_run_options(parser)
    options.add_output_options(parser)
    parser.set_defaults(handler=handle)


def handle(args, settings) -> int:
    config = options.run_config_from(args, settings)
    report = convergence_study(args.check_id, options.geometry_from(args), config=config)
    options.emit(report, args.out)
    if args.csv is not None:
        write_csv(report, args.csv)
    return report.exit_code
