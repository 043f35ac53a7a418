# letter_regex.py
"""
Complement-free regular expressions over indexed letters l0, l1, ...

Used as the value a valuation may assign to a variable. Membership is
decided with Brzozowski derivatives over an ACI-normalised syntax tree.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import FrozenSet, Sequence

from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput

from term_parser import TermSyntaxError

REGEX_GRAMMAR = r"""
    regex: alt

    alt: seq ("+" seq)*
    seq: rep ("."? rep)*
    rep: base STAR*

    base: LETTER        -> letter
        | ZERO          -> empty
        | ONE           -> epsilon
        | "(" alt ")"   -> group

    LETTER: /l[0-9]+/
    STAR: "*"
    ZERO: "0"
    ONE: "1"

    %import common.WS
    %ignore WS
"""


class Regex:
    __slots__ = ()


@dataclass(frozen=True)
class REmpty(Regex):
    pass


@dataclass(frozen=True)
class REps(Regex):
    pass


@dataclass(frozen=True)
class RLetter(Regex):
    index: int


@dataclass(frozen=True)
class RAlt(Regex):
    options: FrozenSet[Regex]


@dataclass(frozen=True)
class RSeq(Regex):
    first: Regex
    rest: Regex


@dataclass(frozen=True)
class RRep(Regex):
    body: Regex


EMPTY = REmpty()
EPS = REps()


def alt(*parts: Regex) -> Regex:
    options = set()
    for part in parts:
        if isinstance(part, RAlt):
            options |= part.options
        elif not isinstance(part, REmpty):
            options.add(part)
    if not options:
        return EMPTY
    if len(options) == 1:
        return next(iter(options))
    return RAlt(frozenset(options))


def seq(first: Regex, rest: Regex) -> Regex:
    if isinstance(first, REmpty) or isinstance(rest, REmpty):
        return EMPTY
    if isinstance(first, REps):
        return rest
    if isinstance(rest, REps):
        return first
    if isinstance(first, RSeq):
        return seq(first.first, seq(first.rest, rest))
    return RSeq(first, rest)


def rep(body: Regex) -> Regex:
    if isinstance(body, (REmpty, REps)):
        return EPS
    if isinstance(body, RRep):
        return body
    return RRep(body)


@lru_cache(maxsize=None)
def nullable(r: Regex) -> bool:
    if isinstance(r, (REps, RRep)):
        return True
    if isinstance(r, RAlt):
        return any(nullable(o) for o in r.options)
    if isinstance(r, RSeq):
        return nullable(r.first) and nullable(r.rest)
    return False


@lru_cache(maxsize=65536)
def derivative(r: Regex, letter: int) -> Regex:
    if isinstance(r, RLetter):
        return EPS if r.index == letter else EMPTY
    if isinstance(r, (REmpty, REps)):
        return EMPTY
    if isinstance(r, RAlt):
        return alt(*(derivative(o, letter) for o in r.options))
    if isinstance(r, RSeq):
        head = seq(derivative(r.first, letter), r.rest)
        if nullable(r.first):
            return alt(head, derivative(r.rest, letter))
        return head
    return seq(derivative(r.body, letter), r)


def matches(r: Regex, word: Sequence[int]) -> bool:
    for letter in word:
        r = derivative(r, letter)
        if isinstance(r, REmpty):
            return False
    return nullable(r)


def max_letter(r: Regex) -> int:
    """Largest letter index used, -1 if none"""
    if isinstance(r, RLetter):
        return r.index
    if isinstance(r, RAlt):
        return max(max_letter(o) for o in r.options)
    if isinstance(r, RSeq):
        return max(max_letter(r.first), max_letter(r.rest))
    if isinstance(r, RRep):
        return max_letter(r.body)
    return -1


class _RegexBuilder(Transformer):
    def regex(self, items):
        return items[0]

    def alt(self, items):
        return alt(*items)

    def seq(self, items):
        result = items[-1]
        for item in reversed(items[:-1]):
            result = seq(item, result)
        return result

    def rep(self, items):
        result = items[0]
        for _ in items[1:]:
            result = rep(result)
        return result

    def letter(self, items):
        return RLetter(int(str(items[0])[1:]))

    def empty(self, _):
        return EMPTY

    def epsilon(self, _):
        return EPS

    def group(self, items):
        return items[0]


_regex_parser = Lark(REGEX_GRAMMAR, parser='lalr', start='regex')


def parse_regex(text: str) -> Regex:
    """Parse 'l0 + l0 (l0 + l1)* l0' style text"""
    try:
        tree = _regex_parser.parse(text)
    except UnexpectedInput as e:
        line = e.line if isinstance(e.line, int) and e.line > 0 else 1
        column = e.column if isinstance(e.column, int) and e.column > 0 else len(text) + 1
        raise TermSyntaxError(f"malformed letter regex {text!r}", line, column) from None
    return _RegexBuilder().transform(tree)
