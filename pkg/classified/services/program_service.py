"""
Program Service - loading program files with judgement headers
"""
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, Optional, Tuple, Union

from pydantic import ValidationError

from classified.core.exceptions import ParseError, UsageError
from classified.models.poset import Calculus, TypingContext
from classified.models.syntax import Term, TypeExpr
from classified.schemas.program import ProgramHeader
from classified.services.parser import parse_term, parse_type

logger = logging.getLogger(__name__)

HEADER_RE = re.compile(r"^--\s*(hole|ctx|modal|observers|expect)\b\s*(.*)$")
BINDING_RE = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*)\s*:\s*(.+)$")
LIST_FIELDS = ("ctx", "modal")


@dataclass(frozen=True)
class Program:
    """A parsed program file"""

    header: ProgramHeader
    term: Term
    source: str

    @property
    def observers(self) -> FrozenSet[str]:
        return frozenset(self.header.observers)

    @property
    def hole(self) -> Optional[Tuple[str, TypeExpr]]:
        if self.header.hole is None:
            return None
        name, text = self.header.hole
        return name, parse_type(text)

    @property
    def expected(self) -> Optional[TypeExpr]:
        return parse_type(self.header.expect) if self.header.expect else None

    def context(self, calculus: Calculus, include_hole: bool = False) -> TypingContext:
        """Typing context declared by the header"""
        ctx = TypingContext.empty(calculus, self.observers)
        for name, text in self.header.modal:
            ctx = ctx.extend_modal(name, parse_type(text))
        for name, text in self.header.ctx:
            ctx = ctx.extend(name, parse_type(text))
        if include_hole and self.hole is not None:
            ctx = ctx.extend(*self.hole)
        return ctx


def parse_header(text: str) -> ProgramHeader:
    """
    Collect the ``--`` header lines of a program

    Recognized lines are ``hole x : A``, ``ctx x : A``, ``modal u : A``,
    ``observers L H`` and ``expect A``; other comments are ignored.
    """
    fields: dict = {"ctx": [], "modal": []}
    for number, line in enumerate(text.splitlines(), start=1):
        match = HEADER_RE.match(line.strip())
        if match is None:
            continue
        key, rest = match.group(1), match.group(2).strip()
        if key == "observers":
            fields["observers"] = rest.split()
        elif key == "expect":
            if not rest:
                raise ParseError(number, 1, "a type after expect")
            fields["expect"] = rest
        else:
            binding = BINDING_RE.match(rest)
            if binding is None:
                raise ParseError(number, 1, f"'{key} x : A'", rest)
            pair = (binding.group(1), binding.group(2).strip())
            if key in LIST_FIELDS:
                fields[key].append(pair)
            elif "hole" in fields:
                raise ParseError(number, 1, "a single hole declaration", rest)
            else:
                fields["hole"] = pair
    try:
        return ProgramHeader(**fields)
    except ValidationError as e:
        raise ParseError(1, 1, f"a valid header ({e.error_count()} errors)")


def load_program(source: Union[str, Path], text: Optional[str] = None) -> Program:
    """
    Read and parse a program file

    Args:
        source: Path of the file, or a label when ``text`` is given
        text: Program text; read from ``source`` when omitted

    Returns:
        Header plus term; header types are parsed eagerly so errors surface here
    """
    if text is None:
        try:
            text = Path(source).read_text()
        except OSError as e:
            raise UsageError(f"Cannot read program file {source}: {e}")
    header = parse_header(text)
    for _, type_text in header.ctx + header.modal + ([header.hole] if header.hole else []):
        parse_type(type_text)
    if header.expect:
        parse_type(header.expect)
    program = Program(header, parse_term(text), str(source))
    logger.debug(f"Loaded {source} with header {header.model_dump()}")
    return program


class ProgramService:
    """Service class for program files"""

    parse_header = staticmethod(parse_header)
    load_program = staticmethod(load_program)
