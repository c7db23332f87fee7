"""
Configuration settings for the Classified toolkit
"""
from typing import Optional
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Application Settings
    APP_NAME: str = "Classified"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False  # revalidate every composite morphism

    # Security poset (JSON file); the two-point chain L <= H when unset
    POSET_PATH: Optional[str] = None

    # Harness defaults
    SEED: int = 42
    TRIALS: int = 100
    MAX_CARRIER: int = 3
    INHABITANT_SIZE_BOUND: int = 7
    WORKERS: int = 1

    # Limits
    FUEL: int = 100_000
    ENUMERATION_CAP: int = 1_000_000

    # Output
    OUTPUT_FORMAT: str = "text"

    # Logging
    LOG_LEVEL: str = "WARNING"

    class Config:
        case_sensitive = True
        env_file = ".env"
        env_prefix = "CLASSIFIED_"


# Global settings instance
settings = Settings()
