"""
`bochner-lab stability`: Jacobi spectrum of a catalog hypersurface.
"""

from bochner_lab.cli import options
from bochner_lab.domain.checks.services.check_service import run_check


def register(subparsers) -> None:
    parser = subparsers.add_parser("stability", help="Largest eigenvalues of the Jacobi operator")
    options.add_geometry_options(parser)
    options.add_run_options(parser)
    options.add_output_options(parser, csv=False)
    parser.set_defaults(handler=handle)


def handle(args, settings) -> int:
    report = run_check("stability", options.geometry_from(args), options.run_config_from(args, settings))
    if report.error is not None:
        options.emit(report, args.out)
        return report.exit_code
    details = report.details
    options.emit(
        {
            "geometry": report.geometry,
            "resolution": report.resolutions[0],
            "eigenvalues": details["eigenvalues"],
            "lambda_max": details["lambda_max"],
            "stable": details["stable"],
            "tolerance": details["tolerance"],
            "V_range": [details["potential_min"], details["potential_max"]],
            "residuals": report.residuals,
            "provenance_notes": report.provenance_notes,
        },
        args.out,
    )
    return 0
