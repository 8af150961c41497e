from bochner_lab.core.config.base import BaseSettings


class DevelopmentSettings(BaseSettings):
    """Interactive runs: solver iterations and fitted orders are logged."""

    ENV: str = "development"
    DEBUG: bool = True
