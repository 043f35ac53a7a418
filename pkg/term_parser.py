# term_parser.py
"""
Text front end for terms: the ASCII grammar, canonical printing,
inequation/equation queries and the line-based DNF input format.
"""

from dataclasses import dataclass
from typing import List, Tuple

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from terms import (
    ONE, ZERO, Concat, CVar, DnfFormula, One, PropLiteral, Star, Term, Union,
    Var, Variable, Zero,
)

TERM_GRAMMAR = r"""
    term: union
    query: union REL union

    union: concat ("+" concat)*
    concat: star ("." star)*
    star: atom STAR*

    atom: ZERO              -> zero
        | ONE               -> one
        | IDENT             -> var
        | "~" IDENT         -> cvar
        | "(" union ")"     -> group

    REL: "<=" | "="
    STAR: "*"
    ZERO: "0"
    ONE: "1"
    IDENT: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""

DNF_GRAMMAR = r"""
    clause: literal ("&" literal)*
          | ONE                      -> empty_clause

    literal: NEG? IDENT

    NEG: "!"
    ONE: "1"
    IDENT: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS_INLINE
    %ignore WS_INLINE
"""


class TermSyntaxError(ValueError):
    """Malformed term, query or DNF text; carries a 1-based position"""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class _TermBuilder(Transformer):
    def term(self, items):
        return items[0]

    def query(self, items):
        lhs, rel, rhs = items
        return Query(lhs, rhs, str(rel))

    def union(self, items):
        result = items[0]
        for item in items[1:]:
            result = Union(result, item)
        return result

    def concat(self, items):
        result = items[0]
        for item in items[1:]:
            result = Concat(result, item)
        return result

    def star(self, items):
        result = items[0]
        for _ in items[1:]:
            result = Star(result)
        return result

    def zero(self, _):
        return ZERO

    def one(self, _):
        return ONE

    def var(self, items):
        return Var(Variable(str(items[0])))

    def cvar(self, items):
        return CVar(Variable(str(items[0])))

    def group(self, items):
        return items[0]


class _ClauseBuilder(Transformer):
    def clause(self, items):
        return tuple(items)

    def empty_clause(self, _):
        return ()

    def literal(self, items):
        if len(items) == 2:
            return PropLiteral(str(items[1]), positive=False)
        return PropLiteral(str(items[0]))


_term_parser = Lark(TERM_GRAMMAR, parser='lalr', start=['term', 'query'],
                    propagate_positions=False)
_clause_parser = Lark(DNF_GRAMMAR, parser='lalr', start='clause')


def _position(error: UnexpectedInput, text: str) -> Tuple[int, int]:
    line = getattr(error, 'line', None)
    column = getattr(error, 'column', None)
    if isinstance(line, int) and line > 0 and isinstance(column, int) and column > 0:
        return line, column
    # end of input
    lines = text.split('\n')
    return len(lines), len(lines[-1]) + 1


def _offset(text: str, line: int, column: int) -> int:
    lines = text.split('\n')
    return sum(len(part) + 1 for part in lines[:line - 1]) + column - 1


def _after_complement(text: str, line: int, column: int) -> bool:
    before = text[:_offset(text, line, column)].rstrip()
    return before.endswith('~')


def _describe(error: UnexpectedInput, text: str) -> TermSyntaxError:
    line, column = _position(error, text)
    expected = getattr(error, 'expected', None) or getattr(error, 'allowed', None)
    if (expected and set(expected) == {'IDENT'}) or _after_complement(text, line, column):
        message = "complement '~' applies only to a variable name"
    else:
        token = getattr(error, 'token', None)
        if token is not None and token.type != '$END':
            message = f"unexpected {str(token)!r}"
        elif token is not None:
            message = "unexpected end of input"
        else:
            char = getattr(error, 'char', None)
            message = f"unexpected character {char!r}" if char else "malformed input"
    return TermSyntaxError(message, line, column)


def _parse(text: str, start: str):
    if not isinstance(text, str):
        raise TypeError(f"expected text, got {type(text).__name__}")
    try:
        tree = _term_parser.parse(text, start=start)
    except UnexpectedInput as e:
        raise _describe(e, text) from None
    return _TermBuilder().transform(tree)


def parse(text: str) -> Term:
    """Parse one term; parse(print_term(t)) == t"""
    return _parse(text, 'term')


# ---------- printing ----------

_UNION_LEVEL, _CONCAT_LEVEL, _STAR_LEVEL = 0, 1, 2


def print_term(t: Term) -> str:
    """Canonical text with the fewest parentheses the grammar needs"""
    return _render(t, _UNION_LEVEL)


def _render(t: Term, level: int) -> str:
    if isinstance(t, Var):
        return t.var.name
    if isinstance(t, CVar):
        return f"~{t.var.name}"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, Union):
        text = f"{_render(t.left, _UNION_LEVEL)} + {_render(t.right, _CONCAT_LEVEL)}"
        return f"({text})" if level > _UNION_LEVEL else text
    if isinstance(t, Concat):
        text = f"{_render(t.left, _CONCAT_LEVEL)} . {_render(t.right, _STAR_LEVEL)}"
        return f"({text})" if level > _CONCAT_LEVEL else text
    if isinstance(t, Star):
        return f"{_render(t.body, _STAR_LEVEL)}*"
    raise TypeError(f"not a term: {t!r}")


# ---------- queries ----------

LEQ = "<="
EQ = "="


@dataclass(frozen=True)
class Query:
    lhs: Term
    rhs: Term
    relation: str = LEQ

    def inequations(self) -> List[Tuple[Term, Term]]:
        """"=" yields both directions, "<=" only lhs <= rhs"""
        if self.relation == EQ:
            return [(self.lhs, self.rhs), (self.rhs, self.lhs)]
        return [(self.lhs, self.rhs)]

    def __str__(self) -> str:
        return f"{print_term(self.lhs)} {self.relation} {print_term(self.rhs)}"


def parse_query(text: str) -> Query:
    return _parse(text, 'query')


# ---------- DNF text ----------

def parse_dnf(text: str) -> DnfFormula:
    """
    One clause per line, literals joined by '&', '!' marks a negative literal.
    A line holding just '1' is the empty clause. Blank lines and '#' comments
    are skipped.
    """
    clauses: List[Tuple[PropLiteral, ...]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0]
        if not line.strip():
            continue
        try:
            tree = _clause_parser.parse(line)
        except UnexpectedInput as e:
            _, column = _position(e, line)
            raise TermSyntaxError(f"malformed clause {line.strip()!r}", number, column) from None
        clauses.append(_ClauseBuilder().transform(tree))
    return DnfFormula(tuple(clauses))


def format_dnf(phi: DnfFormula) -> str:
    lines = []
    for clause in phi.clauses:
        if not clause:
            lines.append("1")
        else:
            lines.append(" & ".join(("" if lit.positive else "!") + lit.name for lit in clause))
    return "\n".join(lines) + ("\n" if lines else "")
