"""
Denotation Service - interpreting types and terms as classified sets and morphisms
"""
import logging
from functools import lru_cache
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

from classified.core.exceptions import (
    IllTyped,
    NotAMorphism,
    NotInTarget,
    SemanticSoundnessViolation,
    TypingError,
)
from classified.models.cset import ClassifiedSet, CSetMorphism, Label, LevelMask
from classified.models.element import FF, STAR, TT, Element, Fun, Inl, Inr, Pair
from classified.models.poset import Calculus, DenEnv, TypingContext
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
from classified.services.category_service import CategoryService, construct_morphism_from_dict
from classified.services.cohesion_service import CohesionService
from classified.services.poset_service import PosetService
from classified.services.syntax_service import print_term, print_type
from classified.services.typing_service import TypeChecker, TypingService

logger = logging.getLogger(__name__)

Values = Dict[str, Element]

# modal introductions and eliminations that are the identity on carriers
TRANSPARENT = (Ret, BoxI, RetL, Unseal)


@lru_cache(maxsize=1024)
def denote_type(env: DenEnv, ty: TypeExpr, sealed: FrozenSet[Label] = frozenset()) -> ClassifiedSet:
    """
    Interpret a type as a classified set over the poset's labels

    Args:
        env: Denotation environment
        ty: Type to interpret
        sealed: Labels discretized on function domains; a sealing judgement
            passes ↓π so that A -> B is ⟦B⟧ to the power □_{↓π}⟦A⟧

    Returns:
        The classified set; results are memoized per environment
    """
    universe = env.universe
    if isinstance(ty, BoolT):
        return CategoryService.delta_bool(universe)
    if isinstance(ty, BoolCoT):
        return CategoryService.nabla_bool(universe)
    if isinstance(ty, UnitT):
        return CategoryService.terminal(universe)
    if isinstance(ty, Prod):
        return CategoryService.product(denote_type(env, ty.left, sealed), denote_type(env, ty.right, sealed)).object
    if isinstance(ty, Sum):
        return CategoryService.coproduct(
            denote_type(env, ty.left, sealed), denote_type(env, ty.right, sealed)
        ).object
    if isinstance(ty, Arrow):
        domain = denote_type(env, ty.dom, sealed)
        if sealed:
            domain = CohesionService.box(LevelMask.of(universe, sealed), domain)
        return CategoryService.exponential(domain, denote_type(env, ty.cod, sealed), env.cap).object
    if isinstance(ty, Monad):
        return CohesionService.diamond(LevelMask.full(universe), denote_type(env, ty.body, sealed))
    if isinstance(ty, BoxT):
        return CohesionService.box(LevelMask.full(universe), denote_type(env, ty.body, sealed))
    if isinstance(ty, LevMonad):
        lower = PosetService.down_set(env.poset, ty.label)
        return CohesionService.diamond(LevelMask.of(universe, lower), denote_type(env, ty.body, sealed))
    if isinstance(ty, SealT):
        # the sealed body is judged with the label added to the observers
        lower = PosetService.down_set(env.poset, ty.label)
        return CohesionService.diamond(LevelMask.of(universe, lower), denote_type(env, ty.body, sealed | lower))
    raise IllTyped(f"No interpretation for type {ty!r}")


def sealed_labels(env: DenEnv, ctx: TypingContext) -> FrozenSet[Label]:
    """↓π for a sealing judgement, nothing for the other calculi"""
    if ctx.calculus != Calculus.SEALING:
        return frozenset()
    return PosetService.down_union(env.poset, ctx.observers)


def _nested_product(env: DenEnv, factors: List[ClassifiedSet]) -> ClassifiedSet:
    """X1 x (X2 x (... x 1))"""
    result = CategoryService.terminal(env.universe)
    for factor in reversed(factors):
        result = CategoryService.product(factor, result).object
    return result


def _unpack(names: List[str], element: Element) -> Values:
    values: Values = {}
    for name in names:
        values[name] = element.first
        element = element.second
    return values


def context_object(env: DenEnv, ctx: TypingContext) -> ClassifiedSet:
    """
    Domain object of a judgement

    Moggi and DCC: the product of the ordinary zone. DP: □ of the modal zone
    times the ordinary zone. Sealing: every assumption under □ at ↓π.
    """
    sealed = sealed_labels(env, ctx)
    ordinary = [denote_type(env, ty, sealed) for _, ty in ctx.ordinary]
    if ctx.calculus == Calculus.DP:
        modal = _nested_product(env, [denote_type(env, ty) for _, ty in ctx.modal])
        boxed = CohesionService.box(LevelMask.full(env.universe), modal)
        return CategoryService.product(boxed, _nested_product(env, ordinary)).object
    if ctx.calculus == Calculus.SEALING:
        mask = LevelMask.of(env.universe, sealed)
        return _nested_product(env, [CohesionService.box(mask, factor) for factor in ordinary])
    return _nested_product(env, ordinary)


def context_values(ctx: TypingContext, element: Element) -> Values:
    """Read an element of the context object back as a variable assignment"""
    ordinary = [name for name, _ in ctx.ordinary]
    if ctx.calculus == Calculus.DP:
        values = _unpack([name for name, _ in ctx.modal], element.first)
        values.update(_unpack(ordinary, element.second))
        return values
    return _unpack(ordinary, element)


def pack_values(ctx: TypingContext, values: Mapping[str, Element]) -> Element:
    """Inverse of context_values"""

    def nest(names: List[str]) -> Element:
        result: Element = STAR
        for name in reversed(names):
            result = Pair(values[name], result)
        return result

    ordinary = nest([name for name, _ in ctx.ordinary])
    if ctx.calculus == Calculus.DP:
        return Pair(nest([name for name, _ in ctx.modal]), ordinary)
    return ordinary


class Evaluator:
    """Structural evaluation of the erasure of a term"""

    def __init__(self, env: DenEnv, sealed: FrozenSet[Label] = frozenset()):
        self.env = env
        self.sealed = sealed

    def run(self, t: Term, values: Values) -> Element:
        if isinstance(t, Var):
            return values[t.name]
        if isinstance(t, Lam):
            domain = denote_type(self.env, t.ty, self.sealed)
            return Fun(tuple(
                (a, self.run(t.body, {**values, t.name: a})) for a in domain.carrier
            ))
        if isinstance(t, App):
            fn, arg = self.run(t.fn, values), self.run(t.arg, values)
            try:
                return fn.apply(arg)
            except KeyError:
                raise SemanticSoundnessViolation("carrier", fn, arg)
        if isinstance(t, SealI):
            inner = Evaluator(self.env, self.sealed | PosetService.down_set(self.env.poset, t.label))
            return inner.run(t.term, values)
        if isinstance(t, PairTm):
            return Pair(self.run(t.first, values), self.run(t.second, values))
        if isinstance(t, Fst):
            return self.run(t.term, values).first
        if isinstance(t, Snd):
            return self.run(t.term, values).second
        if isinstance(t, InlTm):
            return Inl(self.run(t.term, values))
        if isinstance(t, InrTm):
            return Inr(self.run(t.term, values))
        if isinstance(t, Case):
            tagged = self.run(t.scrutinee, values)
            if isinstance(tagged, Inl):
                return self.run(t.left, {**values, t.left_name: tagged.value})
            return self.run(t.right, {**values, t.right_name: tagged.value})
        if isinstance(t, UnitTm):
            return STAR
        if isinstance(t, TrueTm):
            return TT
        if isinstance(t, FalseTm):
            return FF
        if isinstance(t, If):
            branch = t.then if self.run(t.cond, values) == TT else t.orelse
            return self.run(branch, values)
        if isinstance(t, TRANSPARENT):
            return self.run(t.term, values)
        if isinstance(t, (LetRet, LetBox)):
            return self.run(t.body, {**values, t.name: self.run(t.bound, values)})
        raise IllTyped(f"Cannot evaluate {type(t).__name__}")


class DenotationService:
    """Service class for the denotational semantics"""

    context_object = staticmethod(context_object)

    @staticmethod
    def denote_type(
        env: DenEnv, calculus: Calculus, ty: TypeExpr, observers: Tuple[Label, ...] = ()
    ) -> ClassifiedSet:
        """Interpret a type after checking it belongs to the calculus"""
        TypeChecker(calculus, env.poset).check_type(ty)
        return denote_type(env, ty, sealed_labels(env, TypingContext.empty(calculus, observers)))

    @staticmethod
    def denote_term(
        env: DenEnv, ctx: TypingContext, term: Term, ty: Optional[TypeExpr] = None
    ) -> CSetMorphism:
        """
        Interpret a typed term as a morphism from its context object

        Args:
            env: Denotation environment
            ctx: Typing context of the judgement
            term: The term
            ty: Its type; synthesized when omitted

        Returns:
            The validated morphism ⟦ctx⟧ -> ⟦ty⟧
        """
        try:
            ty = TypingService.typecheck(ctx, term, env.poset, ty)
        except TypingError as e:
            raise IllTyped(f"{print_term(term)} is not well typed: {e.message}")
        source = context_object(env, ctx)
        sealed = sealed_labels(env, ctx)
        target = denote_type(env, ty, sealed)
        evaluator = Evaluator(env, sealed)
        mapping = {
            gamma: evaluator.run(term, context_values(ctx, gamma)) for gamma in source.carrier
        }
        try:
            result = construct_morphism_from_dict(source, target, mapping)
        except NotAMorphism as e:
            logger.error(f"Denotation of {print_term(term)} breaks {e.label} on {e.x}, {e.y}")
            raise SemanticSoundnessViolation(e.label, e.x, e.y)
        except NotInTarget as e:
            raise SemanticSoundnessViolation("carrier", e.element, e.image)
        logger.debug(f"Denoted {print_term(term)} : {print_type(ty)} on {len(source.carrier)} inputs")
        return result

    @staticmethod
    def denote_closed(env: DenEnv, calculus: Calculus, term: Term, ty: Optional[TypeExpr] = None,
                      observers: Tuple[str, ...] = ()) -> Element:
        """The single value of a closed term"""
        ctx = TypingContext.empty(calculus, observers)
        morphism = DenotationService.denote_term(env, ctx, term, ty)
        return morphism.images()[0]
