"""
Built-in program corpora for the noninterference and soundness checks
"""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from classified.models.poset import Calculus
from classified.models.syntax import Term, TypeExpr
from classified.services.parser import parse_term, parse_type


@dataclass(frozen=True)
class NoninterferenceProgram:
    """A program with one secret hole and a public result type"""

    calculus: Calculus
    hole: Tuple[str, str]
    result: str
    text: str
    observers: Tuple[str, ...] = ()

    @property
    def hole_binding(self) -> Tuple[str, TypeExpr]:
        return self.hole[0], parse_type(self.hole[1])

    @property
    def result_type(self) -> TypeExpr:
        return parse_type(self.result)

    @property
    def term(self) -> Term:
        return parse_term(self.text)


@dataclass(frozen=True)
class SoundnessTerm:
    """A closed term together with the observers it is typed under"""

    calculus: Calculus
    text: str
    observers: Tuple[str, ...] = ()

    @property
    def term(self) -> Term:
        return parse_term(self.text)


MOGGI_HOLE = ("x", "T Bool")
DP_HOLE = ("x", "BoolCo")
DCC_HOLE = ("x", "T[H] Bool")
SEALING_HOLE = ("x", "Seal[H] Bool")

NONINTERFERENCE_CORPUS: List[NoninterferenceProgram] = [
    NoninterferenceProgram(Calculus.MOGGI, MOGGI_HOLE, "Bool", "(\\y:T Bool. tt) x"),
    NoninterferenceProgram(Calculus.MOGGI, MOGGI_HOLE, "Bool", "if tt then ff else tt"),
    NoninterferenceProgram(Calculus.MOGGI, MOGGI_HOLE, "Bool", "(\\y:T Bool. \\z:Bool. z) x ff"),
    NoninterferenceProgram(Calculus.MOGGI, MOGGI_HOLE, "Bool", "fst ((\\y:T Bool. (tt, y)) x)"),
    NoninterferenceProgram(
        Calculus.MOGGI, MOGGI_HOLE, "Bool", "(\\s:Unit + Bool. case s of inl u => tt | inr v => v) (inr ff)"
    ),
    NoninterferenceProgram(Calculus.MOGGI, MOGGI_HOLE, "Bool", "(\\k:T Bool -> Bool. k x) (\\w:T Bool. ff)"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "box tt"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "let box u = box ff in box u"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "(\\y:BoolCo. box tt) x"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "(\\f:Bool -> BoolCo. box ff) (\\b:Bool. x)"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "fst (box tt, if x then unit else unit)"),
    NoninterferenceProgram(Calculus.DP, DP_HOLE, "Box Bool", "let box u = box (\\b:Bool. b) in box (u tt)"),
    NoninterferenceProgram(Calculus.DCC, DCC_HOLE, "T[L] Bool", "ret[L] tt"),
    NoninterferenceProgram(Calculus.DCC, DCC_HOLE, "T[L] Bool", "(\\y:T[H] Bool. ret[L] ff) x"),
    NoninterferenceProgram(Calculus.DCC, DCC_HOLE, "T[L] Bool", "let y = ret[L] tt in ret[L] y"),
    NoninterferenceProgram(Calculus.DCC, DCC_HOLE, "T[L] Bool", "fst (ret[L] tt, x)"),
    NoninterferenceProgram(
        Calculus.DCC, DCC_HOLE, "T[L] Bool", "(\\f:Bool -> T[L] Bool. f ff) (\\b:Bool. ret[L] b)"
    ),
    NoninterferenceProgram(Calculus.SEALING, SEALING_HOLE, "Bool", "tt", ("L",)),
    NoninterferenceProgram(Calculus.SEALING, SEALING_HOLE, "Bool", "(\\y:Seal[H] Bool. ff) x", ("L",)),
    NoninterferenceProgram(Calculus.SEALING, SEALING_HOLE, "Bool", "unseal[L] (seal[L] tt)", ("L",)),
    NoninterferenceProgram(Calculus.SEALING, SEALING_HOLE, "Bool", "fst (tt, x)", ("L",)),
    NoninterferenceProgram(
        Calculus.SEALING, SEALING_HOLE, "Bool", "(\\s:Seal[H] Bool -> Bool. s x) (\\z:Seal[H] Bool. tt)", ("L",)
    ),
    NoninterferenceProgram(
        Calculus.SEALING, SEALING_HOLE, "Bool", "if unseal[L] (seal[L] ff) then tt else ff", ("L",)
    ),
]

SOUNDNESS_CORPUS: List[SoundnessTerm] = [
    SoundnessTerm(Calculus.MOGGI, "if tt then ff else tt"),
    SoundnessTerm(Calculus.MOGGI, "let x = ret tt in ret x"),
    SoundnessTerm(Calculus.MOGGI, "(\\x:Bool. x) ff"),
    SoundnessTerm(Calculus.MOGGI, "fst (tt, ff)"),
    SoundnessTerm(Calculus.MOGGI, "(\\s:Bool + Unit. case s of inl b => b | inr u => ff) (inr unit)"),
    SoundnessTerm(Calculus.MOGGI, "(\\f:Bool -> Bool. f tt) (\\b:Bool. if b then ff else tt)"),
    SoundnessTerm(Calculus.MOGGI, "ret (snd (unit, tt))"),
    SoundnessTerm(Calculus.MOGGI, "(\\p:Bool * Unit. fst p) (tt, unit)"),
    SoundnessTerm(Calculus.DP, "let box u = box tt in box u"),
    SoundnessTerm(Calculus.DP, "box (if ff then tt else ff)"),
    SoundnessTerm(Calculus.DP, "(\\k:BoolCo -> BoolCo. k tt) (\\d:BoolCo. if d then ff else tt)"),
    SoundnessTerm(Calculus.DP, "let box f = box (\\b:Bool. b) in box (f ff)"),
    SoundnessTerm(Calculus.DP, "(\\p:Box Bool. let box u = p in box u) (box tt)"),
    SoundnessTerm(Calculus.DCC, "let y = ret[L] tt in ret[H] y"),
    SoundnessTerm(Calculus.DCC, "ret[H] (fst (ff, tt))"),
    SoundnessTerm(Calculus.DCC, "(\\m:T[L] Bool. let y = m in ret[H] y) (ret[L] ff)"),
    SoundnessTerm(Calculus.DCC, "let y = ret[H] tt in ret[H] (if y then ff else tt)"),
    SoundnessTerm(Calculus.DCC, "(\\c:T[L] Bool. c) (ret[L] ff)"),
    SoundnessTerm(Calculus.SEALING, "seal[H] tt"),
    SoundnessTerm(Calculus.SEALING, "seal[L] (unseal[H] (seal[H] ff))", ("H",)),
    SoundnessTerm(Calculus.SEALING, "(\\s:Seal[L] Bool. seal[L] (unseal[L] s)) (seal[L] tt)"),
    SoundnessTerm(Calculus.SEALING, "unseal[H] (seal[H] tt)", ("H",)),
    SoundnessTerm(Calculus.SEALING, "(\\b:Bool. seal[H] b) ff"),
    SoundnessTerm(Calculus.SEALING, "\\y:Seal[H] Bool. unseal[H] y", ("H",)),
    SoundnessTerm(
        Calculus.SEALING, "(\\f:Seal[H] Bool -> Bool. f (seal[H] tt)) (\\y:Seal[H] Bool. unseal[H] y)", ("H",)
    ),
    SoundnessTerm(Calculus.SEALING, "seal[H] (\\y:Seal[H] Bool. unseal[H] y)"),
    SoundnessTerm(Calculus.SEALING, "\\y:Seal[L] Bool. unseal[L] y", ("L",)),
    SoundnessTerm(Calculus.SEALING, "(\\y:Seal[L] Bool. unseal[L] y) (seal[L] ff)", ("L",)),
]


def noninterference_programs(calculus: Calculus) -> List[NoninterferenceProgram]:
    return [program for program in NONINTERFERENCE_CORPUS if program.calculus == calculus]


def soundness_groups() -> Dict[Tuple[Calculus, Tuple[str, ...]], List[Term]]:
    """Soundness terms grouped by calculus and observer set, in corpus order"""
    groups: Dict[Tuple[Calculus, Tuple[str, ...]], List[Term]] = {}
    for entry in SOUNDNESS_CORPUS:
        groups.setdefault((entry.calculus, entry.observers), []).append(entry.term)
    return groups
