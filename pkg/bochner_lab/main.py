import logging
import sys

from bochner_lab.cli import run_cli
from bochner_lab.core import settings

# Configure logging
logging.basicConfig(
    level=logging.DEBUG if settings.DEBUG else getattr(logging, settings.LOG_LEVEL),
    format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
    stream=sys.stderr,
)
logger = logging.getLogger("bochner_lab")


def main() -> None:
    """Entry point of the bochner-lab command."""
    logger.debug(f"Starting {settings.APP_NAME} in {settings.ENV} environment")
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
