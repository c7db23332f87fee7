"""
Generator Service - seeded random classified sets and case seeds
"""
import logging
import random
from typing import List, Optional

from classified.core.config import settings
from classified.models.cset import ClassifiedSet, LabelUniverse
from classified.models.element import Atom

logger = logging.getLogger(__name__)

SEED_BITS = 64


def case_seeds(seed: int, count: int) -> List[int]:
    """Per-case seeds drawn from a master generator"""
    master = random.Random(seed)
    return [master.getrandbits(SEED_BITS) for _ in range(count)]


def draw_set(
    rng: random.Random,
    universe: LabelUniverse,
    max_carrier: Optional[int] = None,
    min_carrier: int = 0,
    prefix: str = "x",
) -> ClassifiedSet:
    """
    Draw a classified set from an existing generator

    Args:
        rng: Source of randomness
        universe: Labels of the set
        max_carrier: Largest carrier size (settings.MAX_CARRIER by default)
        min_carrier: Smallest carrier size
        prefix: Element name prefix

    Returns:
        Set with each non-diagonal pair related per label with probability 1/2
    """
    upper = settings.MAX_CARRIER if max_carrier is None else max_carrier
    size = rng.randint(min(min_carrier, upper), upper)
    carrier = [Atom(f"{prefix}{i}") for i in range(size)]
    relations = {}
    for label in universe.labels:
        pairs = set()
        for x in carrier:
            for y in carrier:
                if x != y and rng.random() < 0.5:
                    pairs.add((x, y))
        relations[label] = pairs
    return ClassifiedSet.make(universe, carrier, relations)


class GeneratorService:
    """Service class for seeded generation"""

    case_seeds = staticmethod(case_seeds)
    draw_set = staticmethod(draw_set)

    @staticmethod
    def random_classified_set(
        seed: int, universe: LabelUniverse, max_carrier: int, min_carrier: int = 0
    ) -> ClassifiedSet:
        """
        Deterministic random classified set

        Args:
            seed: 64-bit seed
            universe: Labels of the set
            max_carrier: Largest carrier size
            min_carrier: Smallest carrier size

        Returns:
            The generated set; the same seed always gives an equal set
        """
        if max_carrier < 0:
            raise ValueError("max_carrier must be non-negative")
        return draw_set(random.Random(seed), universe, max_carrier, min_carrier)
