"""
Lexer and recursive-descent parser for types and terms

Grammar (lowest precedence first):

    type    ::= sum ('->' type)?
    sum     ::= prod ('+' prod)*
    prod    ::= prefix ('*' prefix)*
    prefix  ::= 'T' ('[' label ']')? prefix | 'Box' prefix | 'Seal' '[' label ']' prefix | atom
    atom    ::= 'Bool' | 'BoolCo' | 'Unit' | '(' type ')'

    term    ::= '\\' x ':' type '.' term | 'if' term 'then' term 'else' term
              | 'let' 'box'? x '=' term 'in' term
              | 'case' term 'of' 'inl' x '=>' term '|' 'inr' y '=>' term
              | unary
    unary   ::= ('fst'|'snd'|'inl'|'inr'|'ret'|'box'|'ret[l]'|'seal[l]'|'unseal[l]') operand | app
    operand ::= binder form | unary
    app     ::= atom atom*
    atom    ::= x | 'unit' | 'tt' | 'ff' | '(' term ')' | '(' term ',' term ')'
"""
import re
from dataclasses import dataclass
from typing import List, Union

from classified.core.exceptions import ParseError
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
from classified.services.syntax_service import free_vars, freshen

KEYWORDS = {
    "fst", "snd", "inl", "inr", "case", "of", "unit", "tt", "ff", "if", "then",
    "else", "ret", "let", "in", "box", "seal", "unseal",
    "Bool", "BoolCo", "Unit", "T", "Box", "Seal",
}

IDENT_PATTERN = r"[A-Za-z_][A-Za-z0-9_']*"

TOKEN_SPEC = [
    ("COMMENT", r"--[^\n]*"),
    ("NEWLINE", r"\n"),
    ("SPACE", r"[ \t\r]+"),
    ("ARROW", r"->"),
    ("FATARROW", r"=>"),
    ("IDENT", IDENT_PATTERN),
    ("SYMBOL", r"[\\:.(),*+=|\[\]]"),
]
TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


def is_label_name(text: str) -> bool:
    """Whether a label can be written inside ret[..], seal[..] and unseal[..]"""
    return re.fullmatch(IDENT_PATTERN, text) is not None and text not in KEYWORDS


def tokenize(text: str) -> List[Token]:
    tokens: List[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(line, pos - line_start + 1, "a token", text[pos])
        kind = match.lastgroup
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
        elif kind not in ("SPACE", "COMMENT"):
            value = match.group()
            if kind == "IDENT" and value in KEYWORDS:
                kind = "KEYWORD"
            tokens.append(Token(kind, value, line, pos - line_start + 1))
        pos = match.end()
    tokens.append(Token("EOF", "", line, pos - line_start + 1))
    return tokens


BINDER_STARTS = {"\\", "if", "let", "case"}
PREFIX_OPS = {"fst", "snd", "inl", "inr", "ret", "box", "seal", "unseal"}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    # -- token plumbing ---------------------------------------------------------

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def at(self, text: str) -> bool:
        return self.current.text == text and self.current.kind in ("KEYWORD", "SYMBOL", "ARROW", "FATARROW")

    def advance(self) -> Token:
        token = self.current
        if token.kind != "EOF":
            self.index += 1
        return token

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"'{text}'")
        return self.advance()

    def fail(self, expected: str):
        token = self.current
        raise ParseError(token.line, token.col, expected, token.text or "end of input")

    def identifier(self) -> str:
        if self.current.kind != "IDENT":
            self.fail("an identifier")
        return self.advance().text

    def label(self) -> str:
        self.expect("[")
        name = self.identifier()
        self.expect("]")
        return name

    def finish(self):
        if self.current.kind != "EOF":
            self.fail("end of input")

    # -- types ---------------------------------------------------------------------

    def parse_type(self) -> TypeExpr:
        left = self.parse_sum_type()
        if self.at("->"):
            self.advance()
            return Arrow(left, self.parse_type())
        return left

    def parse_sum_type(self) -> TypeExpr:
        result = self.parse_prod_type()
        while self.at("+"):
            self.advance()
            result = Sum(result, self.parse_prod_type())
        return result

    def parse_prod_type(self) -> TypeExpr:
        result = self.parse_prefix_type()
        while self.at("*"):
            self.advance()
            result = Prod(result, self.parse_prefix_type())
        return result

    def parse_prefix_type(self) -> TypeExpr:
        if self.at("T"):
            self.advance()
            if self.at("["):
                label = self.label()
                return LevMonad(label, self.parse_prefix_type())
            return Monad(self.parse_prefix_type())
        if self.at("Box"):
            self.advance()
            return BoxT(self.parse_prefix_type())
        if self.at("Seal"):
            self.advance()
            label = self.label()
            return SealT(label, self.parse_prefix_type())
        return self.parse_atom_type()

    def parse_atom_type(self) -> TypeExpr:
        if self.at("Bool"):
            self.advance()
            return BoolT()
        if self.at("BoolCo"):
            self.advance()
            return BoolCoT()
        if self.at("Unit"):
            self.advance()
            return UnitT()
        if self.at("("):
            self.advance()
            inner = self.parse_type()
            self.expect(")")
            return inner
        self.fail("a type")

    # -- terms ---------------------------------------------------------------------

    def parse_term(self) -> Term:
        token = self.current
        pos = (token.line, token.col)
        if self.at("\\"):
            self.advance()
            name = self.identifier()
            self.expect(":")
            ty = self.parse_type()
            self.expect(".")
            return Lam(name, ty, self.parse_term(), pos=pos)
        if self.at("if"):
            self.advance()
            cond = self.parse_term()
            self.expect("then")
            then = self.parse_term()
            self.expect("else")
            return If(cond, then, self.parse_term(), pos=pos)
        if self.at("let"):
            self.advance()
            boxed = self.at("box")
            if boxed:
                self.advance()
            name = self.identifier()
            self.expect("=")
            bound = self.parse_term()
            self.expect("in")
            body = self.parse_term()
            return LetBox(name, bound, body, pos=pos) if boxed else LetRet(name, bound, body, pos=pos)
        if self.at("case"):
            self.advance()
            scrutinee = self.parse_term()
            self.expect("of")
            self.expect("inl")
            left_name = self.identifier()
            self.expect("=>")
            left = self.parse_term()
            self.expect("|")
            self.expect("inr")
            right_name = self.identifier()
            self.expect("=>")
            return Case(scrutinee, left_name, left, right_name, self.parse_term(), pos=pos)
        return self.parse_unary()

    def parse_operand(self) -> Term:
        if self.current.text in BINDER_STARTS and self.current.kind in ("KEYWORD", "SYMBOL"):
            return self.parse_term()
        return self.parse_unary()

    def parse_unary(self) -> Term:
        token = self.current
        if token.kind != "KEYWORD" or token.text not in PREFIX_OPS:
            return self.parse_app()
        pos = (token.line, token.col)
        op = self.advance().text
        if op in ("seal", "unseal"):
            label = self.label()
            operand = self.parse_operand()
            return SealI(label, operand, pos=pos) if op == "seal" else Unseal(label, operand, pos=pos)
        if op == "ret" and self.at("["):
            label = self.label()
            return RetL(label, self.parse_operand(), pos=pos)
        operand = self.parse_operand()
        builders: dict = {"fst": Fst, "snd": Snd, "inl": InlTm, "inr": InrTm, "ret": Ret, "box": BoxI}
        return builders[op](operand, pos=pos)

    def starts_atom(self) -> bool:
        token = self.current
        if token.kind == "IDENT":
            return True
        return token.kind in ("KEYWORD", "SYMBOL") and token.text in ("unit", "tt", "ff", "(")

    def parse_app(self) -> Term:
        token = self.current
        result = self.parse_atom()
        while self.starts_atom():
            result = App(result, self.parse_atom(), pos=(token.line, token.col))
        return result

    def parse_atom(self) -> Term:
        token = self.current
        pos = (token.line, token.col)
        if token.kind == "IDENT":
            self.advance()
            return Var(token.text, pos=pos)
        if self.at("unit"):
            self.advance()
            return UnitTm(pos=pos)
        if self.at("tt"):
            self.advance()
            return TrueTm(pos=pos)
        if self.at("ff"):
            self.advance()
            return FalseTm(pos=pos)
        if self.at("("):
            self.advance()
            first = self.parse_term()
            if self.at(","):
                self.advance()
                second = self.parse_term()
                self.expect(")")
                return PairTm(first, second, pos=pos)
            self.expect(")")
            return first
        self.fail("a term")


def parse(kind: str, text: str) -> Union[Term, TypeExpr]:
    """
    Parse a term or a type

    Args:
        kind: "term" or "type"
        text: Source text

    Returns:
        The AST; terms come back alpha-freshened
    """
    parser = Parser(text)
    if kind == "type":
        result: Union[Term, TypeExpr] = parser.parse_type()
        parser.finish()
        return result
    if kind != "term":
        raise ValueError(f"Unknown syntax kind {kind!r}")
    term = parser.parse_term()
    parser.finish()
    return freshen(term, free_vars(term))


def parse_term(text: str) -> Term:
    result = parse("term", text)
    assert isinstance(result, Term)
    return result


def parse_type(text: str) -> TypeExpr:
    result = parse("type", text)
    assert isinstance(result, TypeExpr)
    return result

