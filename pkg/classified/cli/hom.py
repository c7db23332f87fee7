"""
Hom-set enumeration command
"""
import argparse
import json
from pathlib import Path
from typing import Callable, Dict

from classified.cli.options import load_poset
from classified.core.exceptions import UsageError
from classified.models.cset import ClassifiedSet, LabelUniverse
from classified.models.element import element_from_json
from classified.schemas.config import CliConfig
from classified.schemas.report import CheckReport
from classified.services.category_service import CategoryService

BUILTIN_SETS: Dict[str, Callable[[LabelUniverse], ClassifiedSet]] = {
    "delta-bool": CategoryService.delta_bool,
    "nabla-bool": CategoryService.nabla_bool,
    "unit": CategoryService.terminal,
    "empty": CategoryService.initial,
}


def load_set(name: str, universe: LabelUniverse) -> ClassifiedSet:
    """
    A built-in set over the poset labels, or a set file

    Set files hold ``{"universe": [...], "carrier": [...], "relations": {label: [[x, y], ...]}}``;
    the universe defaults to the poset labels.
    """
    if name in BUILTIN_SETS:
        return BUILTIN_SETS[name](universe)
    try:
        data = json.loads(Path(name).read_text())
        labels = data.get("universe", list(universe.labels))
        carrier = [element_from_json(x) for x in data.get("carrier", [])]
        relations = {
            label: [(element_from_json(x), element_from_json(y)) for x, y in pairs]
            for label, pairs in data.get("relations", {}).items()
        }
    except OSError as e:
        raise UsageError(f"{name} is neither a built-in set ({', '.join(BUILTIN_SETS)}) nor readable: {e}")
    except (json.JSONDecodeError, AttributeError, TypeError, ValueError) as e:
        raise UsageError(f"Malformed set file {name}: {e}")
    return CategoryService.construct_set(LabelUniverse.of(labels), carrier, relations)


def run_hom(args: argparse.Namespace, config: CliConfig) -> CheckReport:
    """Count and list the morphisms between two sets"""
    universe = load_poset(config).labels
    source, target = load_set(args.source, universe), load_set(args.target, universe)
    homs = CategoryService.enumerate_hom(source, target, config.cap)
    return CheckReport(
        suite="hom",
        cases=1,
        details={
            "source": source.to_dict(),
            "target": target.to_dict(),
            "count": len(homs),
            "morphisms": [f.table() for f in homs],
        },
    )


def register(subparsers, parent: argparse.ArgumentParser):
    parser = subparsers.add_parser("hom", parents=[parent], help="Enumerate Hom(A, B)")
    parser.add_argument("source", help=f"Set file or one of {', '.join(BUILTIN_SETS)}")
    parser.add_argument("target", help=f"Set file or one of {', '.join(BUILTIN_SETS)}")
    parser.set_defaults(handler=run_hom, suite="hom")
