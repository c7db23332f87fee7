"""
Services module
"""
from .category_service import CategoryService
from .cohesion_service import CohesionService
from .denotation_service import DenotationService
from .generator_service import GeneratorService
from .inhabitant_service import InhabitantService
from .law_service import LawService
from .noninterference_service import NoninterferenceService
from .poset_service import PosetService
from .program_service import ProgramService
from .syntax_service import SyntaxService
from .typing_service import TypingService

__all__ = [
    "CategoryService",
    "CohesionService",
    "DenotationService",
    "GeneratorService",
    "InhabitantService",
    "LawService",
    "NoninterferenceService",
    "PosetService",
    "ProgramService",
    "SyntaxService",
    "TypingService",
]
