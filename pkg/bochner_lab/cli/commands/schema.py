"""
`bochner-lab schema`: JSON schema of verification reports.
"""

from bochner_lab.cli import options
from bochner_lab.domain.checks.schemas import report_json_schema


def register(subparsers) -> None:
    parser = subparsers.add_parser("schema", help="Print the report JSON schema")
    options.add_output_options(parser, csv=False)
    parser.set_defaults(handler=handle)


def handle(args, settings) -> int:
    options.emit(report_json_schema(), args.out)
    return 0
