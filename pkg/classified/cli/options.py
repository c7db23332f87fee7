"""
Shared command line options
"""
import argparse

from pydantic import ValidationError

from classified.core.config import settings
from classified.core.exceptions import ConfigError
from classified.models.poset import SecurityPoset
from classified.schemas.config import CliConfig
from classified.services.poset_service import PosetService


def parent_parser() -> argparse.ArgumentParser:
    """Flags accepted by every subcommand"""
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--poset", dest="poset_path", help="Security poset JSON file")
    parent.add_argument("--seed", type=int, help="Master seed")
    parent.add_argument("--trials", type=int, help="Trials per law")
    parent.add_argument("--fuel", type=int, help="Normalization step budget")
    parent.add_argument("--cap", type=int, help="Enumeration cap")
    parent.add_argument("--format", dest="output_format", help="Report format: text or json")
    return parent


def build_config(args: argparse.Namespace) -> CliConfig:
    """
    Merge flags over settings

    Raises:
        ConfigError: on any invalid value
    """
    values = {
        "poset_path": args.poset_path or settings.POSET_PATH,
        "seed": settings.SEED if args.seed is None else args.seed,
        "trials": settings.TRIALS if args.trials is None else args.trials,
        "fuel": settings.FUEL if args.fuel is None else args.fuel,
        "cap": settings.ENUMERATION_CAP if args.cap is None else args.cap,
        "format": args.output_format or settings.OUTPUT_FORMAT,
    }
    try:
        return CliConfig(**values)
    except ValidationError as e:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors())
        raise ConfigError(f"Invalid configuration: {problems}")


def load_poset(config: CliConfig) -> SecurityPoset:
    return PosetService.load_poset_file(config.poset_path)
