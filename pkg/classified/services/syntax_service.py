"""
Syntax Service - printing, substitution, normalization and alpha-equality
"""
import logging
from typing import Callable, Dict, Optional, Set, Tuple

from classified.core.config import settings
from classified.core.exceptions import FuelExhausted
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

logger = logging.getLogger(__name__)

UNARY_WRAPPERS = (Fst, Snd, InlTm, InrTm, Ret, BoxI)
LABELLED_WRAPPERS = (RetL, SealI, Unseal)
BINDER_FORMS = (Lam, If, LetRet, LetBox, Case)
ATOMS = (Var, UnitTm, TrueTm, FalseTm, PairTm)


# ---------------------------------------------------------------------------
# Traversal helpers
# ---------------------------------------------------------------------------

def map_children(t: Term, fn: Callable[[Term], Term]) -> Term:
    """Rebuild a non-binding node with ``fn`` applied to its subterms"""
    if isinstance(t, App):
        return App(fn(t.fn), fn(t.arg), pos=t.pos)
    if isinstance(t, PairTm):
        return PairTm(fn(t.first), fn(t.second), pos=t.pos)
    if isinstance(t, If):
        return If(fn(t.cond), fn(t.then), fn(t.orelse), pos=t.pos)
    if isinstance(t, UNARY_WRAPPERS):
        return type(t)(fn(t.term), pos=t.pos)
    if isinstance(t, LABELLED_WRAPPERS):
        return type(t)(t.label, fn(t.term), pos=t.pos)
    return t


def free_vars(t: Term) -> Set[str]:
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, Lam):
        return free_vars(t.body) - {t.name}
    if isinstance(t, (LetRet, LetBox)):
        return free_vars(t.bound) | (free_vars(t.body) - {t.name})
    if isinstance(t, Case):
        return (
            free_vars(t.scrutinee)
            | (free_vars(t.left) - {t.left_name})
            | (free_vars(t.right) - {t.right_name})
        )
    result: Set[str] = set()

    def collect(child: Term) -> Term:
        result.update(free_vars(child))
        return child

    map_children(t, collect)
    return result


def term_size(t: Term) -> int:
    """Number of AST nodes; type annotations do not count"""
    if isinstance(t, Lam):
        return 1 + term_size(t.body)
    if isinstance(t, (LetRet, LetBox)):
        return 1 + term_size(t.bound) + term_size(t.body)
    if isinstance(t, Case):
        return 1 + term_size(t.scrutinee) + term_size(t.left) + term_size(t.right)
    total = 1

    def count(child: Term) -> Term:
        nonlocal total
        total += term_size(child)
        return child

    map_children(t, count)
    return total


def fresh_name(base: str, used: Set[str]) -> str:
    candidate = base + "'"
    while candidate in used:
        candidate += "'"
    return candidate


# ---------------------------------------------------------------------------
# Substitution
# ---------------------------------------------------------------------------

def substitute(body: Term, name: str, replacement: Term) -> Term:
    """
    Capture-avoiding substitution body[replacement/name]

    Args:
        body: Term to substitute into
        name: Variable being replaced
        replacement: Term put in its place

    Returns:
        The substituted term; binders that would capture are renamed
    """
    incoming = free_vars(replacement)

    def under(binder: str, scope: Term) -> Tuple[str, Term]:
        if binder == name or name not in free_vars(scope):
            return binder, scope
        if binder in incoming:
            new = fresh_name(binder, incoming | free_vars(scope) | {name})
            scope = substitute(scope, binder, Var(new))
            binder = new
        return binder, go(scope)

    def go(t: Term) -> Term:
        if isinstance(t, Var):
            return replacement if t.name == name else t
        if isinstance(t, Lam):
            binder, scope = under(t.name, t.body)
            return Lam(binder, t.ty, scope, pos=t.pos)
        if isinstance(t, (LetRet, LetBox)):
            bound = go(t.bound)
            binder, scope = under(t.name, t.body)
            return type(t)(binder, bound, scope, pos=t.pos)
        if isinstance(t, Case):
            scrutinee = go(t.scrutinee)
            left_name, left = under(t.left_name, t.left)
            right_name, right = under(t.right_name, t.right)
            return Case(scrutinee, left_name, left, right_name, right, pos=t.pos)
        return map_children(t, go)

    return go(body)


def rename_free(t: Term, old: str, new: str) -> Term:
    return substitute(t, old, Var(new))


def freshen(term: Term, free: Set[str]) -> Term:
    """Rename binders so that each is distinct from free names and from every other binder"""
    used = set(free)

    def bind(name: str, body: Term) -> Tuple[str, Term]:
        if name not in used:
            used.add(name)
            return name, walk(body)
        new = fresh_name(name, used | free_vars(body))
        used.add(new)
        return new, walk(rename_free(body, name, new))

    def walk(t: Term) -> Term:
        if isinstance(t, Lam):
            name, body = bind(t.name, t.body)
            return Lam(name, t.ty, body, pos=t.pos)
        if isinstance(t, (LetRet, LetBox)):
            bound = walk(t.bound)
            name, body = bind(t.name, t.body)
            return type(t)(name, bound, body, pos=t.pos)
        if isinstance(t, Case):
            scrutinee = walk(t.scrutinee)
            left_name, left = bind(t.left_name, t.left)
            right_name, right = bind(t.right_name, t.right)
            return Case(scrutinee, left_name, left, right_name, right, pos=t.pos)
        return map_children(t, walk)

    return walk(term)


# ---------------------------------------------------------------------------
# Alpha-equality
# ---------------------------------------------------------------------------

def alpha_equal(m: Term, n: Term) -> bool:
    """True iff the terms agree up to renaming of bound variables"""

    def eq(a: Term, b: Term, env_a: Dict[str, int], env_b: Dict[str, int], depth: int) -> bool:
        if type(a) is not type(b):
            return False
        if isinstance(a, Var):
            if a.name in env_a or b.name in env_b:
                return env_a.get(a.name) == env_b.get(b.name)
            return a.name == b.name
        if isinstance(a, Lam):
            return a.ty == b.ty and eq(a.body, b.body, {**env_a, a.name: depth}, {**env_b, b.name: depth}, depth + 1)
        if isinstance(a, (LetRet, LetBox)):
            return eq(a.bound, b.bound, env_a, env_b, depth) and eq(
                a.body, b.body, {**env_a, a.name: depth}, {**env_b, b.name: depth}, depth + 1
            )
        if isinstance(a, Case):
            return (
                eq(a.scrutinee, b.scrutinee, env_a, env_b, depth)
                and eq(a.left, b.left, {**env_a, a.left_name: depth}, {**env_b, b.left_name: depth}, depth + 1)
                and eq(a.right, b.right, {**env_a, a.right_name: depth}, {**env_b, b.right_name: depth}, depth + 1)
            )
        if isinstance(a, LABELLED_WRAPPERS) and a.label != b.label:
            return False
        children_a = _children(a)
        children_b = _children(b)
        return all(eq(x, y, env_a, env_b, depth) for x, y in zip(children_a, children_b))

    return eq(m, n, {}, {}, 0)


def _children(t: Term) -> Tuple[Term, ...]:
    found = []

    def collect(child: Term) -> Term:
        found.append(child)
        return child

    map_children(t, collect)
    return tuple(found)


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

# type levels
ARROW_LEVEL, SUM_LEVEL, PROD_LEVEL, PREFIX_LEVEL, ATOM_LEVEL = range(5)


def print_type(ty: TypeExpr, level: int = ARROW_LEVEL) -> str:
    if isinstance(ty, BoolT):
        return "Bool"
    if isinstance(ty, BoolCoT):
        return "BoolCo"
    if isinstance(ty, UnitT):
        return "Unit"
    if isinstance(ty, Arrow):
        text = f"{print_type(ty.dom, SUM_LEVEL)} -> {print_type(ty.cod, ARROW_LEVEL)}"
        return f"({text})" if level > ARROW_LEVEL else text
    if isinstance(ty, Sum):
        text = f"{print_type(ty.left, SUM_LEVEL)} + {print_type(ty.right, PROD_LEVEL)}"
        return f"({text})" if level > SUM_LEVEL else text
    if isinstance(ty, Prod):
        text = f"{print_type(ty.left, PROD_LEVEL)} * {print_type(ty.right, PREFIX_LEVEL)}"
        return f"({text})" if level > PROD_LEVEL else text
    if isinstance(ty, Monad):
        head = "T"
    elif isinstance(ty, BoxT):
        head = "Box"
    elif isinstance(ty, LevMonad):
        head = f"T[{ty.label}]"
    elif isinstance(ty, SealT):
        head = f"Seal[{ty.label}]"
    else:
        raise TypeError(f"Not a type: {ty!r}")
    text = f"{head} {print_type(ty.body, PREFIX_LEVEL)}"
    return f"({text})" if level > PREFIX_LEVEL else text


# term levels
TOP, UNARY, APP_FN, ATOM = range(4)


def print_term(t: Term, level: int = TOP) -> str:
    """Print a term so that parsing the text gives back an alpha-equal term"""
    if isinstance(t, Var):
        return t.name
    if isinstance(t, UnitTm):
        return "unit"
    if isinstance(t, TrueTm):
        return "tt"
    if isinstance(t, FalseTm):
        return "ff"
    if isinstance(t, PairTm):
        return f"({print_term(t.first)}, {print_term(t.second)})"
    if isinstance(t, App):
        text = f"{print_term(t.fn, APP_FN)} {print_term(t.arg, ATOM)}"
        return f"({text})" if level > APP_FN else text
    if isinstance(t, UNARY_WRAPPERS + LABELLED_WRAPPERS):
        text = f"{_prefix(t)} {print_term(t.term, UNARY)}"
        return f"({text})" if level > UNARY else text
    if isinstance(t, Lam):
        text = f"\\{t.name}:{print_type(t.ty)}. {print_term(t.body)}"
    elif isinstance(t, If):
        text = f"if {print_term(t.cond)} then {print_term(t.then)} else {print_term(t.orelse)}"
    elif isinstance(t, LetRet):
        text = f"let {t.name} = {print_term(t.bound)} in {print_term(t.body)}"
    elif isinstance(t, LetBox):
        text = f"let box {t.name} = {print_term(t.bound)} in {print_term(t.body)}"
    elif isinstance(t, Case):
        # the left branch is closed off by '|', so it must not end in a binder form
        text = (
            f"case {print_term(t.scrutinee)} of inl {t.left_name} => {print_term(t.left, APP_FN)}"
            f" | inr {t.right_name} => {print_term(t.right)}"
        )
    else:
        raise TypeError(f"Not a term: {t!r}")
    return f"({text})" if level > UNARY else text


def _prefix(t: Term) -> str:
    names = {Fst: "fst", Snd: "snd", InlTm: "inl", InrTm: "inr", Ret: "ret", BoxI: "box"}
    if isinstance(t, RetL):
        return f"ret[{t.label}]"
    if isinstance(t, SealI):
        return f"seal[{t.label}]"
    if isinstance(t, Unseal):
        return f"unseal[{t.label}]"
    return names[type(t)]


# ---------------------------------------------------------------------------
# Normalization
# ---------------------------------------------------------------------------

def contract(t: Term) -> Optional[Term]:
    """Contract t if it is itself a redex"""
    if isinstance(t, App) and isinstance(t.fn, Lam):
        return substitute(t.fn.body, t.fn.name, t.arg)
    if isinstance(t, Fst) and isinstance(t.term, PairTm):
        return t.term.first
    if isinstance(t, Snd) and isinstance(t.term, PairTm):
        return t.term.second
    if isinstance(t, Case):
        if isinstance(t.scrutinee, InlTm):
            return substitute(t.left, t.left_name, t.scrutinee.term)
        if isinstance(t.scrutinee, InrTm):
            return substitute(t.right, t.right_name, t.scrutinee.term)
    if isinstance(t, If):
        if isinstance(t.cond, TrueTm):
            return t.then
        if isinstance(t.cond, FalseTm):
            return t.orelse
    if isinstance(t, LetRet) and isinstance(t.bound, (Ret, RetL)):
        return substitute(t.body, t.name, t.bound.term)
    if isinstance(t, LetBox) and isinstance(t.bound, BoxI):
        return substitute(t.body, t.name, t.bound.term)
    if isinstance(t, Unseal) and isinstance(t.term, SealI) and t.term.label == t.label:
        return t.term.term
    return None


def step(t: Term) -> Optional[Term]:
    """One leftmost-outermost reduction step, or None for a normal form"""
    reduced = contract(t)
    if reduced is not None:
        return reduced
    if isinstance(t, Lam):
        body = step(t.body)
        return None if body is None else Lam(t.name, t.ty, body, pos=t.pos)
    if isinstance(t, (LetRet, LetBox)):
        bound = step(t.bound)
        if bound is not None:
            return type(t)(t.name, bound, t.body, pos=t.pos)
        body = step(t.body)
        return None if body is None else type(t)(t.name, t.bound, body, pos=t.pos)
    if isinstance(t, Case):
        parts = [t.scrutinee, t.left, t.right]
        for i, part in enumerate(parts):
            reduced = step(part)
            if reduced is not None:
                parts[i] = reduced
                return Case(parts[0], t.left_name, parts[1], t.right_name, parts[2], pos=t.pos)
        return None
    children = list(_children(t))
    for i, child in enumerate(children):
        reduced = step(child)
        if reduced is not None:
            children[i] = reduced
            replacements = iter(children)
            return map_children(t, lambda _: next(replacements))
    return None


def normalize(t: Term, fuel: Optional[int] = None) -> Term:
    """
    Full leftmost-outermost normalization

    Args:
        t: Term to normalize
        fuel: Maximum number of reduction steps

    Returns:
        The normal form
    """
    budget = fuel if fuel is not None else settings.FUEL
    steps = 0
    while True:
        reduced = step(t)
        if reduced is None:
            logger.debug(f"Normalized in {steps} steps")
            return t
        if steps >= budget:
            raise FuelExhausted(steps)
        t = reduced
        steps += 1


def is_normal(t: Term) -> bool:
    return step(t) is None


class SyntaxService:
    """Service facade over the syntax kernel"""

    substitute = staticmethod(substitute)
    normalize = staticmethod(normalize)
    alpha_equal = staticmethod(alpha_equal)
    step = staticmethod(step)
    free_vars = staticmethod(free_vars)
    term_size = staticmethod(term_size)

    @staticmethod
    def print(ast) -> str:
        """Print a term or a type"""
        if isinstance(ast, TypeExpr):
            return print_type(ast)
        return print_term(ast)
