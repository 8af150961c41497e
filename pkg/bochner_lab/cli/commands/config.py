"""
`bochner-lab config show`: effective settings after every override.
"""

from bochner_lab.cli import options


def register(subparsers) -> None:
    parser = subparsers.add_parser("config", help="Show the effective configuration")
    actions = parser.add_subparsers(dest="action", required=True)
    show = actions.add_parser("show")
    show.set_defaults(handler=handle_show)


def handle_show(args, settings) -> int:
    options.emit(settings.model_dump(mode="json"))
    return 0
