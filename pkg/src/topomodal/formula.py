"""Formula language: AST, text grammar, parser/renderer, closure sets.

The language has four primitive box-like modalities and their duals:

    ==========  =======  ==============================================
    ASCII       dual     reading
    ==========  =======  ==============================================
    ``[d]``     ``<d>``  punctured-interior box / Cantor-derivative dia
    ``[i]``     ``<c>``  interior box / closure diamond
    ``[!=]``    ``<!=>`` difference ("elsewhere") box and diamond
    ``[A]``     ``<E>``  universal box / existential diamond
    ==========  =======  ==============================================

Concrete grammar (precedence: unary > ``&`` > ``|`` > ``->``, with ``->``
right-associative)::

    formula := implies
    implies := or ( "->" implies )?
    or      := and ( "|" and )*
    and     := unary ( "&" unary )*
    unary   := "~" unary | "[d]" unary | "<d>" unary | "[i]" unary
             | "<c>" unary | "[!=]" unary | "<!=>" unary
             | "[A]" unary | "<E>" unary | atom
    atom    := "true" | "false" | ident | "(" formula ")"
    ident   := [a-z][a-z0-9_]*

Duals are distinct AST nodes, never desugared at parse time, so rendering
is faithful; the evaluator unfolds them through negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import ParseError

__all__ = [
    "Formula", "Var", "Top", "Bot", "Not", "And", "Or", "Implies",
    "DBox", "DDia", "IBox", "CDia", "DiffBox", "DiffDia", "All", "Exists",
    "parse", "render", "resolve", "variables", "subformulas",
    "closure_set", "ClosureSet", "in_interior_difference_fragment",
    "BUILTINS", "KUR", "BOX_KUR", "KUR_IDIFF",
]


@dataclass(frozen=True)
class Formula:
    """Base class for all formula nodes; instances are immutable and hashable."""


_IDENT_RE = re.compile(r"[a-z][a-z0-9_]*")


@dataclass(frozen=True)
class Var(Formula):
    name: str

    def __post_init__(self):
        # Keeps every tree renderable and re-parseable.
        if not _IDENT_RE.fullmatch(self.name) or self.name in ("true", "false"):
            raise ValueError(f"variable name {self.name!r} is not a legal identifier")


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class _Unary(Formula):
    child: Formula


@dataclass(frozen=True)
class _Binary(Formula):
    left: Formula
    right: Formula


class Not(_Unary):
    pass


class DBox(_Unary):
    """Punctured-interior box: holds at x when some punctured neighborhood is inside the argument."""


class DDia(_Unary):
    """Dual of DBox (Cantor derivative): x is a limit point of the argument."""


class IBox(_Unary):
    """Interior box."""


class CDia(_Unary):
    """Dual of IBox (topological closure)."""


class DiffBox(_Unary):
    """Difference modality: the argument holds everywhere except possibly here."""


class DiffDia(_Unary):
    """Dual of DiffBox: the argument holds somewhere else."""


class All(_Unary):
    """Universal modality."""


class Exists(_Unary):
    """Dual of the universal modality."""


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Implies(_Binary):
    pass


_MODAL_TOKENS: dict[str, type] = {
    "[d]": DBox, "<d>": DDia,
    "[i]": IBox, "<c>": CDia,
    "[!=]": DiffBox, "<!=>": DiffDia,
    "[A]": All, "<E>": Exists,
}
_MODAL_SPELLING = {cls: tok for tok, cls in _MODAL_TOKENS.items()}
_PUNCT = ("->", "~", "&", "|", "(", ")")

# Tokens that may start a formula; used for error reporting.
_FORMULA_START = tuple(_MODAL_TOKENS) + ("~", "(", "true", "false", "identifier")


@dataclass(frozen=True)
class _Token:
    kind: str  # one of the fixed spellings, or "ident", "true", "false", "end"
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        for spelling in _MODAL_TOKENS:
            if text.startswith(spelling, i):
                tokens.append(_Token(spelling, spelling, i))
                i += len(spelling)
                break
        else:
            if text.startswith("->", i):
                tokens.append(_Token("->", "->", i))
                i += 2
            elif ch in "~&|()":
                tokens.append(_Token(ch, ch, i))
                i += 1
            elif "a" <= ch <= "z":
                j = i + 1
                while j < n and (text[j].islower() or text[j].isdigit() or text[j] == "_"):
                    j += 1
                word = text[i:j]
                kind = word if word in ("true", "false") else "ident"
                tokens.append(_Token(kind, word, i))
                i = j
            else:
                raise ParseError(f"unexpected character {ch!r}", i, _FORMULA_START)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> _Token:
        return self.tokens[self.index]

    def advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind: str) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, (kind,))
        return self.advance()

    def parse_formula(self) -> Formula:
        f = self.parse_implies()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing {tok.text!r}", tok.pos, ("end of input",))
        return f

    def parse_implies(self) -> Formula:
        left = self.parse_or()
        if self.peek().kind == "->":
            self.advance()
            return Implies(left, self.parse_implies())
        return left

    def parse_or(self) -> Formula:
        f = self.parse_and()
        while self.peek().kind == "|":
            self.advance()
            f = Or(f, self.parse_and())
        return f

    def parse_and(self) -> Formula:
        f = self.parse_unary()
        while self.peek().kind == "&":
            self.advance()
            f = And(f, self.parse_unary())
        return f

    def parse_unary(self) -> Formula:
        tok = self.peek()
        if tok.kind == "~":
            self.advance()
            return Not(self.parse_unary())
        if tok.kind in _MODAL_TOKENS:
            self.advance()
            return _MODAL_TOKENS[tok.kind](self.parse_unary())
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        tok = self.peek()
        if tok.kind == "true":
            self.advance()
            return Top()
        if tok.kind == "false":
            self.advance()
            return Bot()
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if tok.kind == "(":
            self.advance()
            f = self.parse_implies()
            self.expect(")")
            return f
        raise ParseError(f"unexpected {tok.text or 'end of input'!r}", tok.pos, _FORMULA_START)


def parse(text: str) -> Formula:
    """Parse formula text into its unique AST; raise ParseError on malformed input."""
    return _Parser(text).parse_formula()


# Precedence levels used by the renderer: a node is parenthesized exactly
# when its level is below what its context requires.
_L_IMPLIES, _L_OR, _L_AND, _L_UNARY, _L_ATOM = 1, 2, 3, 4, 5


def render(f: Formula) -> str:
    """Emit minimally parenthesized text; parse(render(f)) == f."""
    return _render(f, _L_IMPLIES)


def _render(f: Formula, min_level: int) -> str:
    text, level = _emit(f)
    if level < min_level:
        return "(" + text + ")"
    return text


def _emit(f: Formula) -> tuple[str, int]:
    match f:
        case Var(name):
            return name, _L_ATOM
        case Top():
            return "true", _L_ATOM
        case Bot():
            return "false", _L_ATOM
        case Not(child):
            return "~" + _render(child, _L_UNARY), _L_UNARY
        case _Unary(child):
            return _MODAL_SPELLING[type(f)] + _render(child, _L_UNARY), _L_UNARY
        case And(left, right):
            # Left-associative: the right operand needs strictly higher level.
            return _render(left, _L_AND) + " & " + _render(right, _L_AND + 1), _L_AND
        case Or(left, right):
            return _render(left, _L_OR) + " | " + _render(right, _L_OR + 1), _L_OR
        case Implies(left, right):
            return _render(left, _L_IMPLIES + 1) + " -> " + _render(right, _L_IMPLIES), _L_IMPLIES
    raise TypeError(f"not a formula node: {f!r}")


def children(f: Formula) -> tuple[Formula, ...]:
    """Immediate subformulas."""
    match f:
        case _Unary(child):
            return (child,)
        case _Binary(left, right):
            return (left, right)
    return ()


def subformulas(f: Formula) -> frozenset[Formula]:
    """All subformulas of f, including f itself."""
    seen: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g not in seen:
            seen.add(g)
            stack.extend(children(g))
    return frozenset(seen)


def variables(f: Formula) -> frozenset[str]:
    """The variable names occurring in f."""
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Var))


class ClosureSet(frozenset):
    """Finite formula set closed under subformulas and single negations.

    "Single" negation means the closure never stacks a fresh negation on a
    member that is already negated, so no double negations are introduced.
    Construction validates closedness; use :func:`closure_set` to build the
    smallest closure of arbitrary generators.
    """

    def __new__(cls, formulas: Iterable[Formula]) -> "ClosureSet":
        members = frozenset(formulas)
        for f in members:
            for child in children(f):
                if child not in members:
                    raise ValueError(
                        f"not subformula-closed: {render(f)} is in the set "
                        f"but {render(child)} is not"
                    )
            if isinstance(f, Not):
                if f.child not in members:
                    raise ValueError(f"{render(f)} lacks its unnegated mate {render(f.child)}")
            elif Not(f) not in members:
                raise ValueError(f"{render(f)} lacks its single negation")
        return super().__new__(cls, members)

    def sorted(self) -> list[Formula]:
        """Members in the deterministic rendered-text order."""
        return sorted(self, key=render)


def closure_set(generators: Iterable[Formula]) -> ClosureSet:
    """Smallest set containing the generators, closed under subformulas and single negations."""
    subs: set[Formula] = set()
    for g in generators:
        subs |= subformulas(g)
    extra = {Not(f) for f in subs if not isinstance(f, Not)}
    return ClosureSet(subs | extra)


_DISALLOWED_OUTSIDE_IDIFF = (DBox, DDia, All, Exists)


def in_interior_difference_fragment(f: Formula) -> bool:
    """True when f uses only Boolean connectives, interior and difference modalities."""
    return not any(isinstance(g, _DISALLOWED_OUTSIDE_IDIFF) for g in subformulas(f))


# Named formulas accepted wherever a formula is expected (see resolve).
# KUR is the Kuratowski formula; KUR_IDIFF defines the same class of spaces
# in the interior+difference fragment, with the relativized box [q]psi
# expanded to [i](q -> psi).
KUR = parse("[d]([i]p | [i]~p) -> [d]p | [d]~p")
BOX_KUR = DBox(KUR)
KUR_IDIFF = parse("(~q & [!=]q & [i](q -> [i]p | [i]~p)) -> [i](q -> p) | [i](q -> ~p)")

BUILTINS: dict[str, Formula] = {
    "Kur": KUR,
    "BoxKur": BOX_KUR,
    "KurIDiff": KUR_IDIFF,
}


def resolve(text: str) -> Formula:
    """Resolve formula input: a built-in name (Kur, BoxKur, KurIDiff) or formula text."""
    name = text.strip()
    if name in BUILTINS:
        return BUILTINS[name]
    return parse(text)


def iter_nodes(f: Formula) -> Iterator[Formula]:
    """Depth-first iteration over the node tree (with repetition of shared shapes)."""
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        stack.extend(reversed(children(g)))
