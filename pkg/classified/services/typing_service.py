"""
Typing Service - bidirectional type checking for the four modal calculi
"""
import logging
from typing import FrozenSet, Optional

from classified.core.exceptions import (
    ForeignConstruct,
    ModalViolation,
    NotCodiscrete,
    NotProtected,
    TypeMismatch,
    UnboundVariable,
    UnknownLabel,
    UnsealNotPermitted,
)
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
from classified.services.syntax_service import print_type

logger = logging.getLogger(__name__)

COMMON_TYPES = (BoolT, UnitT, Prod, Sum, Arrow)
COMMON_TERMS = (Var, Lam, App, PairTm, Fst, Snd, InlTm, InrTm, Case, UnitTm, TrueTm, FalseTm, If)

CALCULUS_TYPES = {
    Calculus.MOGGI: COMMON_TYPES + (Monad,),
    Calculus.DP: COMMON_TYPES + (BoxT, BoolCoT),
    Calculus.DCC: COMMON_TYPES + (LevMonad,),
    Calculus.SEALING: COMMON_TYPES + (SealT,),
}
CALCULUS_TERMS = {
    Calculus.MOGGI: COMMON_TERMS + (Ret, LetRet),
    Calculus.DP: COMMON_TERMS + (BoxI, LetBox),
    Calculus.DCC: COMMON_TERMS + (RetL, LetRet),
    Calculus.SEALING: COMMON_TERMS + (SealI, Unseal),
}
CONSTRUCT_NAMES = {
    Ret: "ret", LetRet: "let", BoxI: "box", LetBox: "let box", RetL: "ret[l]",
    SealI: "seal", Unseal: "unseal", Monad: "T", BoxT: "Box", BoolCoT: "BoolCo",
    LevMonad: "T[l]", SealT: "Seal[l]",
}


class NeedsAnnotation(TypeMismatch):
    """The term can only be checked against a known type"""


class TypeChecker:
    """Syntax-directed checker for one calculus over one poset"""

    def __init__(self, calculus: Calculus, poset: SecurityPoset):
        self.calculus = calculus
        self.poset = poset

    # -- well-formedness ----------------------------------------------------

    def check_type(self, ty: TypeExpr):
        if not isinstance(ty, CALCULUS_TYPES[self.calculus]):
            raise ForeignConstruct(CONSTRUCT_NAMES.get(type(ty), type(ty).__name__), self.calculus.value)
        if isinstance(ty, (LevMonad, SealT)) and ty.label not in self.poset.labels:
            raise UnknownLabel(ty.label, where="poset")
        for child in _type_children(ty):
            self.check_type(child)

    def check_context(self, ctx: TypingContext):
        if ctx.modal and self.calculus != Calculus.DP:
            raise ForeignConstruct("modal context", self.calculus.value)
        for label in ctx.observers:
            if label not in self.poset.labels:
                raise UnknownLabel(label, where="observers")
        for _, ty in ctx.ordinary + ctx.modal:
            self.check_type(ty)

    def check_construct(self, t: Term):
        if not isinstance(t, CALCULUS_TERMS[self.calculus]):
            raise ForeignConstruct(CONSTRUCT_NAMES.get(type(t), type(t).__name__), self.calculus.value)

    def check_label(self, label: str):
        if label not in self.poset.labels:
            raise UnknownLabel(label, where="poset")

    # -- synthesis -------------------------------------------------------------

    def infer(self, ctx: TypingContext, t: Term, hidden: FrozenSet[str] = frozenset()) -> TypeExpr:
        self.check_construct(t)
        if isinstance(t, Var):
            found = ctx.lookup_ordinary(t.name) or ctx.lookup_modal(t.name)
            if found is not None:
                return found
            if t.name in hidden:
                raise ModalViolation(t.name)
            raise UnboundVariable(t.name)
        if isinstance(t, Lam):
            self.check_type(t.ty)
            return Arrow(t.ty, self.infer(ctx.extend(t.name, t.ty), t.body, hidden))
        if isinstance(t, App):
            fn_type = self.infer(ctx, t.fn, hidden)
            if not isinstance(fn_type, Arrow):
                raise TypeMismatch("a function type", print_type(fn_type), t.pos)
            self.check(ctx, t.arg, fn_type.dom, hidden)
            return fn_type.cod
        if isinstance(t, PairTm):
            return Prod(self.infer(ctx, t.first, hidden), self.infer(ctx, t.second, hidden))
        if isinstance(t, (Fst, Snd)):
            pair_type = self.infer(ctx, t.term, hidden)
            if not isinstance(pair_type, Prod):
                raise TypeMismatch("a product type", print_type(pair_type), t.pos)
            return pair_type.left if isinstance(t, Fst) else pair_type.right
        if isinstance(t, (InlTm, InrTm)):
            raise NeedsAnnotation("a known sum type", "an injection with no expected type", t.pos)
        if isinstance(t, UnitTm):
            return UnitT()
        if isinstance(t, (TrueTm, FalseTm)):
            return BoolT()
        if isinstance(t, If):
            scrutinee = self.infer(ctx, t.cond, hidden)
            result = self._infer_either(ctx, t.then, ctx, t.orelse, hidden)
            self._check_motive(scrutinee, result, t)
            return result
        if isinstance(t, Case):
            sum_type = self.infer(ctx, t.scrutinee, hidden)
            if not isinstance(sum_type, Sum):
                raise TypeMismatch("a sum type", print_type(sum_type), t.pos)
            return self._infer_either(
                ctx.extend(t.left_name, sum_type.left), t.left,
                ctx.extend(t.right_name, sum_type.right), t.right,
                hidden,
            )
        if isinstance(t, Ret):
            return Monad(self.infer(ctx, t.term, hidden))
        if isinstance(t, LetRet):
            body_ctx, label = self._let_context(ctx, t, hidden)
            result = self.infer(body_ctx, t.body, hidden)
            self._check_let_result(result, label, t)
            return result
        if isinstance(t, BoxI):
            boxed_ctx, boxed_hidden = _boxed(ctx, hidden)
            return BoxT(self.infer(boxed_ctx, t.term, boxed_hidden))
        if isinstance(t, LetBox):
            bound = self.infer(ctx, t.bound, hidden)
            if not isinstance(bound, BoxT):
                raise TypeMismatch("Box _", print_type(bound), t.pos)
            return self.infer(ctx.extend_modal(t.name, bound.body), t.body, hidden)
        if isinstance(t, RetL):
            self.check_label(t.label)
            return LevMonad(t.label, self.infer(ctx, t.term, hidden))
        if isinstance(t, SealI):
            self.check_label(t.label)
            inner = ctx.with_observers(ctx.observers | {t.label})
            return SealT(t.label, self.infer(inner, t.term, hidden))
        if isinstance(t, Unseal):
            return self._unseal(ctx, t, hidden)
        raise TypeMismatch("a term", type(t).__name__, t.pos)

    # -- checking ----------------------------------------------------------------

    def check(self, ctx: TypingContext, t: Term, expected: TypeExpr, hidden: FrozenSet[str] = frozenset()):
        self.check_construct(t)
        if isinstance(t, Lam) and isinstance(expected, Arrow):
            self.check_type(t.ty)
            if t.ty != expected.dom:
                raise TypeMismatch(print_type(expected.dom), print_type(t.ty), t.pos)
            self.check(ctx.extend(t.name, t.ty), t.body, expected.cod, hidden)
            return
        if isinstance(t, App) and isinstance(t.fn, Lam):
            # a redex checks like its annotated lambda against dom -> expected
            self.check_construct(t.fn)
            self.check_type(t.fn.ty)
            self.check(ctx, t.arg, t.fn.ty, hidden)
            self.check(ctx.extend(t.fn.name, t.fn.ty), t.fn.body, expected, hidden)
            return
        if isinstance(t, (TrueTm, FalseTm)) and isinstance(expected, (BoolT, BoolCoT)):
            return
        if isinstance(t, (InlTm, InrTm)):
            if not isinstance(expected, Sum):
                raise TypeMismatch(print_type(expected), "a sum type", t.pos)
            self.check(ctx, t.term, expected.left if isinstance(t, InlTm) else expected.right, hidden)
            return
        if isinstance(t, PairTm) and isinstance(expected, Prod):
            self.check(ctx, t.first, expected.left, hidden)
            self.check(ctx, t.second, expected.right, hidden)
            return
        if isinstance(t, If):
            scrutinee = self.infer(ctx, t.cond, hidden)
            self._check_motive(scrutinee, expected, t)
            self.check(ctx, t.then, expected, hidden)
            self.check(ctx, t.orelse, expected, hidden)
            return
        if isinstance(t, Case):
            sum_type = self.infer(ctx, t.scrutinee, hidden)
            if not isinstance(sum_type, Sum):
                raise TypeMismatch("a sum type", print_type(sum_type), t.pos)
            self.check(ctx.extend(t.left_name, sum_type.left), t.left, expected, hidden)
            self.check(ctx.extend(t.right_name, sum_type.right), t.right, expected, hidden)
            return
        if isinstance(t, LetRet):
            body_ctx, label = self._let_context(ctx, t, hidden)
            self._check_let_result(expected, label, t)
            self.check(body_ctx, t.body, expected, hidden)
            return
        if isinstance(t, LetBox):
            bound = self.infer(ctx, t.bound, hidden)
            if not isinstance(bound, BoxT):
                raise TypeMismatch("Box _", print_type(bound), t.pos)
            self.check(ctx.extend_modal(t.name, bound.body), t.body, expected, hidden)
            return
        if isinstance(t, Ret) and isinstance(expected, Monad):
            self.check(ctx, t.term, expected.body, hidden)
            return
        if isinstance(t, RetL) and isinstance(expected, LevMonad) and expected.label == t.label:
            self.check(ctx, t.term, expected.body, hidden)
            return
        if isinstance(t, BoxI) and isinstance(expected, BoxT):
            boxed_ctx, boxed_hidden = _boxed(ctx, hidden)
            self.check(boxed_ctx, t.term, expected.body, boxed_hidden)
            return
        if isinstance(t, SealI) and isinstance(expected, SealT) and expected.label == t.label:
            self.check(ctx.with_observers(ctx.observers | {t.label}), t.term, expected.body, hidden)
            return
        actual = self.infer(ctx, t, hidden)
        if actual != expected:
            raise TypeMismatch(print_type(expected), print_type(actual), t.pos)

    # -- rule helpers --------------------------------------------------------------

    def _infer_either(
        self, ctx_a: TypingContext, a: Term, ctx_b: TypingContext, b: Term, hidden: FrozenSet[str]
    ) -> TypeExpr:
        """Type two branches that must agree, synthesizing from whichever can"""
        try:
            result = self.infer(ctx_a, a, hidden)
        except NeedsAnnotation:
            result = self.infer(ctx_b, b, hidden)
            self.check(ctx_a, a, result, hidden)
            return result
        self.check(ctx_b, b, result, hidden)
        return result

    def _check_motive(self, scrutinee: TypeExpr, motive: TypeExpr, t: If):
        if isinstance(scrutinee, BoolT):
            return
        if isinstance(scrutinee, BoolCoT):
            if not is_codiscrete_type(motive):
                raise NotCodiscrete(print_type(motive))
            return
        raise TypeMismatch("Bool", print_type(scrutinee), t.pos)

    def _let_context(self, ctx: TypingContext, t: LetRet, hidden: FrozenSet[str]):
        bound = self.infer(ctx, t.bound, hidden)
        if self.calculus == Calculus.DCC:
            if not isinstance(bound, LevMonad):
                raise TypeMismatch("T[l] _", print_type(bound), t.pos)
            return ctx.extend(t.name, bound.body), bound.label
        if not isinstance(bound, Monad):
            raise TypeMismatch("T _", print_type(bound), t.pos)
        return ctx.extend(t.name, bound.body), None

    def _check_let_result(self, result: TypeExpr, label: Optional[str], t: LetRet):
        if label is None:
            if not isinstance(result, Monad):
                raise TypeMismatch("T _", print_type(result), t.pos)
            return
        if not is_protected_type(result, label, self.poset):
            raise NotProtected(print_type(result), label)

    def _unseal(self, ctx: TypingContext, t: Unseal, hidden: FrozenSet[str]) -> TypeExpr:
        self.check_label(t.label)
        sealed = self.infer(ctx, t.term, hidden)
        if not isinstance(sealed, SealT) or sealed.label != t.label:
            raise TypeMismatch(f"Seal[{t.label}] _", print_type(sealed), t.pos)
        if not PosetService.below_some(self.poset, t.label, ctx.observers):
            raise UnsealNotPermitted(t.label, ctx.observers)
        return sealed.body


def _boxed(ctx: TypingContext, hidden: FrozenSet[str]):
    """Context for the premise of box: the ordinary zone is cleared"""
    names = hidden | frozenset(name for name, _ in ctx.ordinary)
    return TypingContext(ctx.calculus, (), ctx.modal, ctx.observers), names


def _type_children(ty: TypeExpr):
    if isinstance(ty, (Prod, Sum)):
        return (ty.left, ty.right)
    if isinstance(ty, Arrow):
        return (ty.dom, ty.cod)
    if isinstance(ty, (Monad, BoxT, LevMonad, SealT)):
        return (ty.body,)
    return ()


def is_protected_type(ty: TypeExpr, label: str, poset: SecurityPoset) -> bool:
    """
    Protection of a DCC type at a label

    (I) T[m] A is protected at l when l ⊑ m; (II) T[m] A is protected whenever A is;
    (III) products of protected types and C -> A for protected A. Nothing else is.
    """
    if label not in poset.labels:
        raise UnknownLabel(label, where="poset")
    if isinstance(ty, LevMonad):
        if ty.label not in poset.labels:
            raise UnknownLabel(ty.label, where="poset")
        return poset.below(label, ty.label) or is_protected_type(ty.body, label, poset)
    if isinstance(ty, Prod):
        return is_protected_type(ty.left, label, poset) and is_protected_type(ty.right, label, poset)
    if isinstance(ty, Arrow):
        return is_protected_type(ty.cod, label, poset)
    return False


def is_codiscrete_type(ty: TypeExpr) -> bool:
    """Unit, BoolCo, products of codiscrete types, arrows into a codiscrete type"""
    if isinstance(ty, (UnitT, BoolCoT)):
        return True
    if isinstance(ty, Prod):
        return is_codiscrete_type(ty.left) and is_codiscrete_type(ty.right)
    if isinstance(ty, Arrow):
        return is_codiscrete_type(ty.cod)
    return False


def is_ground_type(ty: TypeExpr) -> bool:
    return isinstance(ty, (BoolT, BoolCoT, UnitT))


class TypingService:
    """Service class for the typing judgements"""

    @staticmethod
    def typecheck(
        ctx: TypingContext,
        term: Term,
        poset: SecurityPoset,
        expected: Optional[TypeExpr] = None,
    ) -> TypeExpr:
        """
        Derive the type of a term

        Args:
            ctx: Typing context (selects the calculus)
            term: Term to check
            poset: Security poset for labels
            expected: Type to check against; synthesizes when omitted

        Returns:
            The derived type
        """
        checker = TypeChecker(ctx.calculus, poset)
        checker.check_context(ctx)
        if expected is None:
            return checker.infer(ctx, term)
        checker.check_type(expected)
        checker.check(ctx, term, expected)
        return expected

    is_protected_type = staticmethod(is_protected_type)
    is_codiscrete_type = staticmethod(is_codiscrete_type)
    is_ground_type = staticmethod(is_ground_type)
