"""
Inhabitant Service - enumerating normal forms of a type up to a size bound
"""
import logging
from typing import Dict, Iterable, List, Optional, Tuple

from classified.core.exceptions import ClassifiedError
from classified.models.poset import Calculus, SecurityPoset, TypingContext
from classified.models.syntax import (
    App,
    Arrow,
    BoolCoT,
    BoolT,
    BoxI,
    BoxT,
    Case,
    FalseTm,
    Fst,
    If,
    InlTm,
    InrTm,
    Lam,
    LetBox,
    LetRet,
    LevMonad,
    Monad,
    PairTm,
    Prod,
    Ret,
    RetL,
    SealI,
    SealT,
    Snd,
    Sum,
    Term,
    TrueTm,
    TypeExpr,
    UnitT,
    UnitTm,
    Unseal,
    Var,
)
from classified.services.poset_service import PosetService
from classified.services.syntax_service import print_term, term_size
from classified.services.typing_service import TypingService, is_codiscrete_type, is_protected_type

logger = logging.getLogger(__name__)

Head = Tuple[Term, TypeExpr]

ELIMINATIONS = (If, Case, LetRet, LetBox)


def subformulas(types: Iterable[TypeExpr]) -> List[TypeExpr]:
    """Every type occurring in the given ones, in first-seen order"""
    seen: Dict[TypeExpr, None] = {}
    stack = list(reversed(list(types)))
    while stack:
        ty = stack.pop()
        if ty in seen:
            continue
        seen[ty] = None
        if isinstance(ty, (Prod, Sum)):
            stack += [ty.right, ty.left]
        elif isinstance(ty, Arrow):
            stack += [ty.cod, ty.dom]
        elif isinstance(ty, (Monad, BoxT, LevMonad, SealT)):
            stack.append(ty.body)
    return list(seen)


class InhabitantGenerator:
    """
    Type-directed generation of beta-normal terms

    Introduction forms are generated against the expected type. The principal
    argument of an elimination is a head: a variable under projections,
    applications and unseals, or an if, case or let whose type is one of
    ``types``. Heads never start with an introduction, so no redex is built.
    """

    def __init__(self, calculus: Calculus, poset: SecurityPoset, types: Iterable[TypeExpr] = ()):
        self.calculus = calculus
        self.poset = poset
        base: List[TypeExpr] = [BoolT(), UnitT()] + ([BoolCoT()] if calculus == Calculus.DP else [])
        self.types = subformulas(list(types) + base)
        self._terms: Dict[Tuple[TypingContext, TypeExpr, int], List[Term]] = {}
        self._heads: Dict[Tuple[TypingContext, int], List[Head]] = {}
        self._spines: Dict[Tuple[TypingContext, int], List[Head]] = {}

    def fresh(self, ctx: TypingContext) -> str:
        used = set(ctx.names())
        index = len(used)
        while f"v{index}" in used:
            index += 1
        return f"v{index}"

    # -- checkable terms of an exact size -----------------------------------------

    def terms(self, ctx: TypingContext, ty: TypeExpr, size: int) -> List[Term]:
        key = (ctx, ty, size)
        if key not in self._terms:
            self._terms[key] = self._build_terms(ctx, ty, size) if size >= 1 else []
        return self._terms[key]

    def _build_terms(self, ctx: TypingContext, ty: TypeExpr, size: int) -> List[Term]:
        result: List[Term] = []
        if size == 1:
            if isinstance(ty, (BoolT, BoolCoT)):
                result += [TrueTm(), FalseTm()]
            if isinstance(ty, UnitT):
                result.append(UnitTm())
        result += self._introductions(ctx, ty, size)
        result += self._eliminations(ctx, ty, size)
        result += [h for h, hty in self.spines(ctx, size) if hty == ty]
        return result

    def _introductions(self, ctx: TypingContext, ty: TypeExpr, size: int) -> List[Term]:
        inner = size - 1
        result: List[Term] = []
        if isinstance(ty, Prod):
            for k in range(1, inner):
                for a in self.terms(ctx, ty.left, k):
                    result += [PairTm(a, b) for b in self.terms(ctx, ty.right, inner - k)]
        elif isinstance(ty, Sum):
            result += [InlTm(a) for a in self.terms(ctx, ty.left, inner)]
            result += [InrTm(b) for b in self.terms(ctx, ty.right, inner)]
        elif isinstance(ty, Arrow):
            name = self.fresh(ctx)
            result += [Lam(name, ty.dom, body) for body in self.terms(ctx.extend(name, ty.dom), ty.cod, inner)]
        elif isinstance(ty, Monad) and self.calculus == Calculus.MOGGI:
            result += [Ret(a) for a in self.terms(ctx, ty.body, inner)]
        elif isinstance(ty, LevMonad) and self.calculus == Calculus.DCC:
            result += [RetL(ty.label, a) for a in self.terms(ctx, ty.body, inner)]
        elif isinstance(ty, BoxT) and self.calculus == Calculus.DP:
            cleared = TypingContext(ctx.calculus, (), ctx.modal, ctx.observers)
            result += [BoxI(a) for a in self.terms(cleared, ty.body, inner)]
        elif isinstance(ty, SealT) and self.calculus == Calculus.SEALING:
            raised = ctx.with_observers(ctx.observers | {ty.label})
            result += [SealI(ty.label, a) for a in self.terms(raised, ty.body, inner)]
        return result

    def _eliminations(self, ctx: TypingContext, ty: TypeExpr, size: int) -> List[Term]:
        result: List[Term] = []
        for k in range(1, size - 1):
            rest = size - 1 - k
            for scrutinee, sty in self.heads(ctx, k):
                if isinstance(sty, BoolT) or (isinstance(sty, BoolCoT) and is_codiscrete_type(ty)):
                    for j in range(1, rest):
                        for then in self.terms(ctx, ty, j):
                            result += [If(scrutinee, then, e) for e in self.terms(ctx, ty, rest - j)]
                elif isinstance(sty, Sum):
                    left_name = self.fresh(ctx)
                    left_ctx = ctx.extend(left_name, sty.left)
                    right_ctx = ctx.extend(left_name, sty.right)
                    for j in range(1, rest):
                        for left in self.terms(left_ctx, ty, j):
                            result += [
                                Case(scrutinee, left_name, left, left_name, right)
                                for right in self.terms(right_ctx, ty, rest - j)
                            ]
                elif self._let_allowed(sty, ty):
                    name = self.fresh(ctx)
                    body_ctx = ctx.extend(name, sty.body)
                    result += [LetRet(name, scrutinee, body) for body in self.terms(body_ctx, ty, rest)]
                elif isinstance(sty, BoxT) and self.calculus == Calculus.DP:
                    name = self.fresh(ctx)
                    body_ctx = ctx.extend_modal(name, sty.body)
                    result += [LetBox(name, scrutinee, body) for body in self.terms(body_ctx, ty, rest)]
        return result

    def _let_allowed(self, sty: TypeExpr, ty: TypeExpr) -> bool:
        if self.calculus == Calculus.MOGGI:
            return isinstance(sty, Monad) and isinstance(ty, Monad)
        if self.calculus == Calculus.DCC and isinstance(sty, LevMonad):
            return is_protected_type(ty, sty.label, self.poset)
        return False

    # -- heads of an exact size ------------------------------------------------------

    def heads(self, ctx: TypingContext, size: int) -> List[Head]:
        key = (ctx, size)
        if key not in self._heads:
            result = list(self.spines(ctx, size))
            for ty in self.types:
                result += [(t, ty) for t in self.terms(ctx, ty, size) if isinstance(t, ELIMINATIONS)]
            self._heads[key] = result
        return self._heads[key]

    def spines(self, ctx: TypingContext, size: int) -> List[Head]:
        key = (ctx, size)
        if key not in self._spines:
            self._spines[key] = self._build_spines(ctx, size) if size >= 1 else []
        return self._spines[key]

    def _build_spines(self, ctx: TypingContext, size: int) -> List[Head]:
        if size == 1:
            seen = set()
            result: List[Head] = []
            for name, ty in reversed(ctx.modal + ctx.ordinary):
                if name not in seen:
                    seen.add(name)
                    result.append((Var(name), ty))
            return result
        result = []
        for inner, ity in self.heads(ctx, size - 1):
            if isinstance(ity, Prod):
                result += [(Fst(inner), ity.left), (Snd(inner), ity.right)]
            elif (
                isinstance(ity, SealT)
                and self.calculus == Calculus.SEALING
                and PosetService.below_some(self.poset, ity.label, ctx.observers)
            ):
                result.append((Unseal(ity.label, inner), ity.body))
        for k in range(1, size - 1):
            for fn, fty in self.heads(ctx, k):
                if isinstance(fty, Arrow):
                    result += [(App(fn, arg), fty.cod) for arg in self.terms(ctx, fty.dom, size - 1 - k)]
        return result


class InhabitantService:
    """Service class for inhabitant enumeration"""

    @staticmethod
    def enumerate_inhabitants(
        calculus: Calculus,
        ty: TypeExpr,
        size_bound: int,
        poset: Optional[SecurityPoset] = None,
        ctx: Optional[TypingContext] = None,
    ) -> List[Term]:
        """
        All normal forms of a type up to a size bound

        Args:
            calculus: Calculus the terms belong to
            ty: Target type
            size_bound: Largest AST size
            poset: Security poset (the L ⊑ H chain by default)
            ctx: Context the terms live in; empty, hence closed terms, by default

        Returns:
            Well-typed terms ordered by size and then printed form
        """
        if size_bound < 1:
            raise ValueError("size_bound must be at least 1")
        poset = poset or PosetService.load_poset_file(None)
        ctx = ctx or TypingContext.empty(calculus)
        generator = InhabitantGenerator(calculus, poset, [ty] + [t for _, t in ctx.ordinary + ctx.modal])
        found: Dict[str, Term] = {}
        for size in range(1, size_bound + 1):
            for term in generator.terms(ctx, ty, size):
                text = print_term(term)
                if text in found:
                    continue
                try:
                    TypingService.typecheck(ctx, term, poset, ty)
                except ClassifiedError:
                    continue
                found[text] = term
        result = sorted(found.values(), key=lambda t: (term_size(t), print_term(t)))
        logger.debug(f"{len(result)} inhabitants up to size {size_bound}")
        return result
