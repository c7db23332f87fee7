"""
Poset Service - loading security posets and computing lower sets
"""
import logging
from pathlib import Path
from typing import FrozenSet, Iterable, Optional, Set, Tuple, Union

from pydantic import ValidationError

from classified.core.exceptions import ConfigError, CycleViolatesAntisymmetry, UnknownLabel
from classified.models.cset import Label, LabelUniverse
from classified.models.poset import SecurityPoset
from classified.schemas.poset import DEFAULT_POSET, PosetConfig
from classified.services.parser import is_label_name

logger = logging.getLogger(__name__)


class PosetService:
    """Service class for security posets"""

    @staticmethod
    def load_poset(config: Union[PosetConfig, dict]) -> SecurityPoset:
        """
        Build a poset from labels and generator pairs

        Args:
            config: Labels and [lower, higher] generators

        Returns:
            Poset whose order is the reflexive-transitive closure
        """
        if isinstance(config, dict):
            config = PosetConfig(**config)
        labels = LabelUniverse.of(config.labels)
        for label in labels:
            if not is_label_name(label):
                raise ConfigError(f"Label {label!r} cannot be written in a program")
        leq: Set[Tuple[Label, Label]] = {(label, label) for label in labels}
        for lower, higher in config.order:
            for label in (lower, higher):
                if label not in labels:
                    raise UnknownLabel(label, where="poset order")
            leq.add((lower, higher))
        changed = True
        while changed:
            changed = False
            for a, b in list(leq):
                for c, d in list(leq):
                    if b == c and (a, d) not in leq:
                        leq.add((a, d))
                        changed = True
        for a, b in sorted(leq):
            if a != b and (b, a) in leq:
                raise CycleViolatesAntisymmetry(a, b)
        logger.info(f"Loaded poset over {labels} with {len(leq) - len(labels)} strict pairs")
        return SecurityPoset(labels, frozenset(leq))

    @staticmethod
    def load_poset_file(path: Optional[Union[str, Path]]) -> SecurityPoset:
        """Read a poset JSON file; the two-point chain L ⊑ H when no path is given"""
        if path is None:
            return PosetService.load_poset(DEFAULT_POSET)
        try:
            config = PosetConfig.model_validate_json(Path(path).read_text())
        except OSError as e:
            raise ConfigError(f"Cannot read poset file {path}: {e}")
        except ValidationError as e:
            raise ConfigError(f"Malformed poset file {path}: {e}")
        return PosetService.load_poset(config)

    @staticmethod
    def down_set(poset: SecurityPoset, label: Label) -> FrozenSet[Label]:
        """The principal lower set of a label"""
        if label not in poset.labels:
            raise UnknownLabel(label, where="poset")
        return frozenset(lower for lower, higher in poset.leq if higher == label)

    @staticmethod
    def down_union(poset: SecurityPoset, observers: Iterable[Label]) -> FrozenSet[Label]:
        """Union of the lower sets of all observers"""
        result: Set[Label] = set()
        for label in observers:
            result |= PosetService.down_set(poset, label)
        return frozenset(result)

    @staticmethod
    def below_some(poset: SecurityPoset, label: Label, observers: Iterable[Label]) -> bool:
        """ℓ ⊑ π: the label sits below at least one observer"""
        if label not in poset.labels:
            raise UnknownLabel(label, where="poset")
        return any(poset.below(label, observer) for observer in observers)
