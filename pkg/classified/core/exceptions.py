"""
Error hierarchy for the Classified toolkit

Every error carries a human message, a ``details`` dict holding the witness
fields, and the process exit code the command line maps it to.
"""
from typing import Any, Dict, Optional


EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2


class ClassifiedError(Exception):
    """Base class for all toolkit errors"""

    exit_code: int = EXIT_CHECK_FAILED

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for a report"""
        data: Dict[str, Any] = {"error": self.kind, "message": self.message}
        if self.details:
            data["details"] = self.details
        return data


# ---------------------------------------------------------------------------
# Classified sets and cohesion
# ---------------------------------------------------------------------------

class CategoryError(ClassifiedError):
    """Malformed classified set, morphism or construction"""


class RelationOutOfCarrier(CategoryError):
    def __init__(self, label: str, pair: Any):
        super().__init__(
            f"Relation at {label} mentions {pair!r}, which leaves the carrier",
            {"label": label, "pair": repr(pair)},
        )


class UnknownLabel(CategoryError):
    def __init__(self, label: str, where: str = "universe"):
        super().__init__(f"Unknown label {label!r} in {where}", {"label": label})
        self.label = label


class DuplicateElement(CategoryError):
    def __init__(self, element: Any):
        super().__init__(f"Duplicate carrier element {element!r}", {"element": repr(element)})


class NotTotal(CategoryError):
    def __init__(self, element: Any):
        super().__init__(f"Mapping is undefined on {element!r}", {"element": repr(element)})


class NotInTarget(CategoryError):
    def __init__(self, element: Any, image: Any):
        super().__init__(
            f"Mapping sends {element!r} to {image!r}, outside the target carrier",
            {"element": repr(element), "image": repr(image)},
        )
        self.element = element
        self.image = image


class NotAMorphism(CategoryError):
    def __init__(self, label: str, x: Any, y: Any):
        super().__init__(
            f"Relation at {label} is not preserved on ({x!r}, {y!r})",
            {"label": label, "x": repr(x), "y": repr(y)},
        )
        self.label = label
        self.x = x
        self.y = y


class EndpointMismatch(CategoryError):
    def __init__(self, message: str = "Morphism endpoints do not match"):
        super().__init__(message)


class UniverseMismatch(CategoryError):
    def __init__(self, expected: Any, got: Any):
        super().__init__(
            f"Label universe mismatch: expected {expected}, got {got}",
            {"expected": str(expected), "got": str(got)},
        )


class NotParallel(CategoryError):
    def __init__(self):
        super().__init__("Morphisms do not share source and target")


class NotEqualized(CategoryError):
    def __init__(self):
        super().__init__("Morphism does not equalize the pair")


class NotCoequalized(CategoryError):
    def __init__(self):
        super().__init__("Morphism does not coequalize the pair")


class EnumerationCapExceeded(CategoryError):
    def __init__(self, limit: int, candidates: int):
        super().__init__(
            f"Enumeration needs {candidates} candidate functions, cap is {limit}",
            {"limit": limit, "candidates": candidates},
        )
        self.limit = limit


class NotConstantOnClasses(CategoryError):
    def __init__(self, x: Any, y: Any):
        super().__init__(
            f"Morphism separates {x!r} and {y!r} inside one component",
            {"x": repr(x), "y": repr(y)},
        )


class ShapeMismatch(CategoryError):
    def __init__(self, message: str):
        super().__init__(message)


# ---------------------------------------------------------------------------
# Syntax kernel
# ---------------------------------------------------------------------------

class SyntaxKernelError(ClassifiedError):
    """Parsing and normalization failures"""


class ParseError(SyntaxKernelError):
    exit_code = EXIT_USAGE

    def __init__(self, line: int, col: int, expected: str, found: str = ""):
        found_text = f", found {found!r}" if found else ""
        super().__init__(
            f"{line}:{col}: expected {expected}{found_text}",
            {"line": line, "col": col, "expected": expected},
        )
        self.line = line
        self.col = col
        self.expected = expected


class FuelExhausted(SyntaxKernelError):
    def __init__(self, steps: int):
        super().__init__(f"Normalization ran out of fuel after {steps} steps", {"steps": steps})
        self.steps = steps


# ---------------------------------------------------------------------------
# Typing and denotation
# ---------------------------------------------------------------------------

class TypingError(ClassifiedError):
    """Judgement failures in one of the modal calculi"""


class TypeMismatch(TypingError):
    def __init__(self, expected: str, got: str, position: Optional[Any] = None):
        where = f" at {position[0]}:{position[1]}" if position else ""
        super().__init__(
            f"Expected {expected}, got {got}{where}",
            {"expected": expected, "got": got, "position": list(position) if position else None},
        )


class UnboundVariable(TypingError):
    def __init__(self, name: str):
        super().__init__(f"Unbound variable {name}", {"name": name})


class ModalViolation(TypingError):
    def __init__(self, name: str):
        super().__init__(
            f"Ordinary variable {name} used under box; only modal variables are available there",
            {"name": name},
        )


class NotProtected(TypingError):
    def __init__(self, type_text: str, label: str):
        super().__init__(f"{type_text} is not protected at {label}", {"type": type_text, "label": label})


class NotCodiscrete(TypingError):
    def __init__(self, type_text: str):
        super().__init__(
            f"Motive {type_text} of a BoolCo elimination is not codiscrete",
            {"type": type_text},
        )


class UnsealNotPermitted(TypingError):
    def __init__(self, label: str, observers: Any):
        super().__init__(
            f"Cannot unseal at {label}: it is not below any observer in {sorted(observers)}",
            {"label": label, "observers": sorted(observers)},
        )


class ForeignConstruct(TypingError):
    def __init__(self, construct: str, calculus: str):
        super().__init__(
            f"{construct} does not belong to the {calculus} calculus",
            {"construct": construct, "calculus": calculus},
        )


class IllTyped(TypingError):
    def __init__(self, message: str):
        super().__init__(message)


class SemanticSoundnessViolation(TypingError):
    def __init__(self, label: str, x: Any, y: Any):
        super().__init__(
            f"Denotation breaks the relation at {label} on ({x!r}, {y!r})",
            {"label": label, "x": repr(x), "y": repr(y)},
        )


class CycleViolatesAntisymmetry(TypingError):
    exit_code = EXIT_USAGE

    def __init__(self, a: str, b: str):
        super().__init__(f"Order relates {a} and {b} both ways", {"a": a, "b": b})


# ---------------------------------------------------------------------------
# Harness and command line
# ---------------------------------------------------------------------------

class HarnessError(ClassifiedError):
    """Failures of a check run itself"""


class SideConditionUnmet(HarnessError):
    def __init__(self, detail: str):
        super().__init__(f"Side condition unmet: {detail}", {"detail": detail})


class UsageError(ClassifiedError):
    exit_code = EXIT_USAGE


class ConfigError(ClassifiedError):
    exit_code = EXIT_USAGE
