"""
`bochner-lab catalog list|show`.
"""

from bochner_lab.cli import options
from bochner_lab.domain.catalog.services.catalog_service import get_catalog_service


def register(subparsers) -> None:
    parser = subparsers.add_parser("catalog", help="Inspect the geometry catalog")
    actions = parser.add_subparsers(dest="action", required=True)

    listing = actions.add_parser("list", help="List catalog entries")
    listing.set_defaults(handler=handle_list)

    show = actions.add_parser("show", help="Parameter schema and references of an entry")
    show.add_argument("name")
    show.add_argument("--params", action="append", metavar="K=V,...")
    options.add_output_options(show, csv=False)
    show.set_defaults(handler=handle_show)


def handle_list(args, settings) -> int:
    options.emit(get_catalog_service().list_entries())
    return 0


def handle_show(args, settings) -> int:
    description = get_catalog_service().describe(args.name, options.parse_params(args.params))
    options.emit(description, args.out)
    return 0
