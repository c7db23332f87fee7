"""
Abstract syntax shared by the four modal calculi
"""
from dataclasses import dataclass, field
from typing import Optional, Tuple

Position = Optional[Tuple[int, int]]


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

class TypeExpr:
    """Base class for types"""


@dataclass(frozen=True)
class BoolT(TypeExpr):
    pass


@dataclass(frozen=True)
class BoolCoT(TypeExpr):
    """The codiscrete booleans"""


@dataclass(frozen=True)
class UnitT(TypeExpr):
    pass


@dataclass(frozen=True)
class Prod(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Sum(TypeExpr):
    left: TypeExpr
    right: TypeExpr


@dataclass(frozen=True)
class Arrow(TypeExpr):
    dom: TypeExpr
    cod: TypeExpr


@dataclass(frozen=True)
class Monad(TypeExpr):
    body: TypeExpr


@dataclass(frozen=True)
class BoxT(TypeExpr):
    body: TypeExpr


@dataclass(frozen=True)
class LevMonad(TypeExpr):
    label: str
    body: TypeExpr


@dataclass(frozen=True)
class SealT(TypeExpr):
    label: str
    body: TypeExpr


# ---------------------------------------------------------------------------
# Terms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Term:
    """Base class for terms; positions never take part in equality"""

    pos: Position = field(default=None, compare=False, repr=False, kw_only=True)


@dataclass(frozen=True)
class Var(Term):
    name: str


@dataclass(frozen=True)
class Lam(Term):
    name: str
    ty: TypeExpr
    body: Term


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term


@dataclass(frozen=True)
class PairTm(Term):
    first: Term
    second: Term


@dataclass(frozen=True)
class Fst(Term):
    term: Term


@dataclass(frozen=True)
class Snd(Term):
    term: Term


@dataclass(frozen=True)
class InlTm(Term):
    term: Term


@dataclass(frozen=True)
class InrTm(Term):
    term: Term


@dataclass(frozen=True)
class Case(Term):
    scrutinee: Term
    left_name: str
    left: Term
    right_name: str
    right: Term


@dataclass(frozen=True)
class UnitTm(Term):
    pass


@dataclass(frozen=True)
class TrueTm(Term):
    pass


@dataclass(frozen=True)
class FalseTm(Term):
    pass


@dataclass(frozen=True)
class If(Term):
    cond: Term
    then: Term
    orelse: Term


@dataclass(frozen=True)
class Ret(Term):
    term: Term


@dataclass(frozen=True)
class LetRet(Term):
    """``let x = M in N``; Moggi's let on T, DCC's let on T[l] (level read off M's type)"""

    name: str
    bound: Term
    body: Term


@dataclass(frozen=True)
class BoxI(Term):
    term: Term


@dataclass(frozen=True)
class LetBox(Term):
    name: str
    bound: Term
    body: Term


@dataclass(frozen=True)
class RetL(Term):
    label: str
    term: Term


@dataclass(frozen=True)
class SealI(Term):
    label: str
    term: Term


@dataclass(frozen=True)
class Unseal(Term):
    label: str
    term: Term


GROUND_TYPES = (BoolT(), BoolCoT(), UnitT())
