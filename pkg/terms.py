# terms.py
"""
KA terms with variable complements: syntax tree, literal words and the
languages of terms read as plain regular expressions over literals (V').
"""

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple


class FragmentError(ValueError):
    """A term lies outside the fragment an operation is defined for"""


@dataclass(frozen=True, order=True)
class Variable:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be non-empty")

    def __str__(self) -> str:
        return self.name


class Polarity(IntEnum):
    POSITIVE = 0
    NEGATIVE = 1


@dataclass(frozen=True, order=True)
class Literal:
    """A letter of V': x or its complement x⁻"""

    var: Variable
    polarity: Polarity = Polarity.POSITIVE

    @property
    def negated(self) -> bool:
        return self.polarity is Polarity.NEGATIVE

    def to_term(self) -> 'Term':
        return CVar(self.var) if self.negated else Var(self.var)

    def __str__(self) -> str:
        return f"~{self.var.name}" if self.negated else self.var.name


class Term:
    """Base class of the syntax tree"""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    var: Variable


@dataclass(frozen=True)
class CVar(Term):
    var: Variable


@dataclass(frozen=True)
class One(Term):
    pass


@dataclass(frozen=True)
class Zero(Term):
    pass


@dataclass(frozen=True)
class Union(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Concat(Term):
    left: Term
    right: Term


@dataclass(frozen=True)
class Star(Term):
    body: Term


ONE = One()
ZERO = Zero()


@dataclass(frozen=True, order=True)
class LitWord:
    """A word over V'; the empty word is the identity I"""

    literals: Tuple[Literal, ...] = ()

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[Literal]:
        return iter(self.literals)

    def __getitem__(self, index: int) -> Literal:
        return self.literals[index]

    def __add__(self, other: 'LitWord') -> 'LitWord':
        return LitWord(self.literals + other.literals)

    def to_term(self) -> Term:
        """n-fold composition of the literals (left nested), One when empty"""
        if not self.literals:
            return ONE
        term = self.literals[0].to_term()
        for lit in self.literals[1:]:
            term = Concat(term, lit.to_term())
        return term

    def variables(self) -> FrozenSet[Variable]:
        return frozenset(lit.var for lit in self.literals)

    def __str__(self) -> str:
        if not self.literals:
            return "1"
        return " . ".join(str(lit) for lit in self.literals)


def word_order(word: LitWord) -> Tuple[int, Tuple[Literal, ...]]:
    """Length-then-lexicographic order key"""
    return (len(word), word.literals)


# ---------- structural queries ----------

def subterms(t: Term) -> List[Term]:
    """Post-order list of distinct subterms (children before parents)"""
    seen = set()
    order: List[Term] = []

    def visit(node: Term) -> None:
        if node in seen:
            return
        if isinstance(node, (Union, Concat)):
            visit(node.left)
            visit(node.right)
        elif isinstance(node, Star):
            visit(node.body)
        seen.add(node)
        order.append(node)

    visit(t)
    return order


def term_size(t: Term) -> int:
    if isinstance(t, (Union, Concat)):
        return 1 + term_size(t.left) + term_size(t.right)
    if isinstance(t, Star):
        return 1 + term_size(t.body)
    return 1


def variables(t: Term) -> FrozenSet[Variable]:
    if isinstance(t, (Var, CVar)):
        return frozenset((t.var,))
    if isinstance(t, (Union, Concat)):
        return variables(t.left) | variables(t.right)
    if isinstance(t, Star):
        return variables(t.body)
    return frozenset()


def is_star_free(t: Term) -> bool:
    if isinstance(t, Star):
        return False
    if isinstance(t, (Union, Concat)):
        return is_star_free(t.left) and is_star_free(t.right)
    return True


def is_composition_free(t: Term) -> bool:
    if isinstance(t, (Star, Concat)):
        return False
    if isinstance(t, Union):
        return is_composition_free(t.left) and is_composition_free(t.right)
    return True


def has_complement(t: Term) -> bool:
    if isinstance(t, CVar):
        return True
    if isinstance(t, (Union, Concat)):
        return has_complement(t.left) or has_complement(t.right)
    if isinstance(t, Star):
        return has_complement(t.body)
    return False


def vprime_alphabet(t: Term) -> List[Literal]:
    """Both literals of every variable of t, in literal order"""
    letters = []
    for var in sorted(variables(t)):
        letters.append(Literal(var, Polarity.POSITIVE))
        letters.append(Literal(var, Polarity.NEGATIVE))
    return letters


def term_to_lit_word(t: Term) -> Optional[LitWord]:
    """The literal word t spells, or None if t uses union, star or 0"""
    if isinstance(t, One):
        return LitWord()
    if isinstance(t, Var):
        return LitWord((Literal(t.var),))
    if isinstance(t, CVar):
        return LitWord((Literal(t.var, Polarity.NEGATIVE),))
    if isinstance(t, Concat):
        left = term_to_lit_word(t.left)
        right = term_to_lit_word(t.right)
        if left is None or right is None:
            return None
        return left + right
    return None


# ---------- fresh names and ⊤ ----------

FRESH_PREFIX = "_t"


def fresh_variable(avoid: Iterable[Variable]) -> Variable:
    """First name of the _t0, _t1, ... scheme not in avoid"""
    taken = {var.name for var in avoid}
    index = 0
    while f"{FRESH_PREFIX}{index}" in taken:
        index += 1
    return Variable(f"{FRESH_PREFIX}{index}")


def top_expansion(avoid: Iterable[Variable]) -> Term:
    """⊤ written as v + ~v for a fresh v"""
    var = fresh_variable(avoid)
    return Union(Var(var), CVar(var))


# ---------- lang over V' ----------

def lang_vprime_finite(t: Term) -> FrozenSet[LitWord]:
    """The finite language of a star-free term read over V'"""
    if not is_star_free(t):
        raise FragmentError("lang_vprime_finite needs a star-free term")
    return _finite_words(t)


def _finite_words(t: Term) -> FrozenSet[LitWord]:
    if isinstance(t, Var):
        return frozenset((LitWord((Literal(t.var),)),))
    if isinstance(t, CVar):
        return frozenset((LitWord((Literal(t.var, Polarity.NEGATIVE),)),))
    if isinstance(t, One):
        return frozenset((LitWord(),))
    if isinstance(t, Zero):
        return frozenset()
    if isinstance(t, Union):
        return _finite_words(t.left) | _finite_words(t.right)
    if isinstance(t, Concat):
        rights = _finite_words(t.right)
        return frozenset(u + w for u in _finite_words(t.left) for w in rights)
    raise FragmentError(f"unexpected node {type(t).__name__}")


def max_word_length(t: Term) -> Optional[int]:
    """Longest word of lang_V'(t); None when unbounded, -1 when empty"""
    if isinstance(t, (Var, CVar)):
        return 1
    if isinstance(t, One):
        return 0
    if isinstance(t, Zero):
        return -1
    if isinstance(t, Union):
        left, right = max_word_length(t.left), max_word_length(t.right)
        if left is None or right is None:
            return None
        return max(left, right)
    if isinstance(t, Concat):
        left, right = max_word_length(t.left), max_word_length(t.right)
        if left == -1 or right == -1:
            return -1
        if left is None or right is None:
            return None
        return left + right
    body = max_word_length(t.body)
    return 0 if body in (-1, 0) else None


def vprime_nullable(t: Term) -> bool:
    """Whether the empty word is in lang_V'(t)"""
    if isinstance(t, (One, Star)):
        return True
    if isinstance(t, Union):
        return vprime_nullable(t.left) or vprime_nullable(t.right)
    if isinstance(t, Concat):
        return vprime_nullable(t.left) and vprime_nullable(t.right)
    return False


def vprime_empty(t: Term) -> bool:
    """Whether lang_V'(t) is empty (exact: no complement of compound terms)"""
    if isinstance(t, Zero):
        return True
    if isinstance(t, Union):
        return vprime_empty(t.left) and vprime_empty(t.right)
    if isinstance(t, Concat):
        return vprime_empty(t.left) or vprime_empty(t.right)
    return False


def _summands(t: Term) -> Iterator[Term]:
    if isinstance(t, Union):
        yield from _summands(t.left)
        yield from _summands(t.right)
    elif not isinstance(t, Zero):
        yield t


def _union_all(terms: Sequence[Term]) -> Term:
    # ACI-normal union keeps the residual set finite
    parts = sorted({s for t in terms for s in _summands(t)}, key=repr)
    if not parts:
        return ZERO
    result = parts[-1]
    for part in reversed(parts[:-1]):
        result = Union(part, result)
    return result


def _concat(left: Term, right: Term) -> Term:
    if isinstance(left, Zero) or isinstance(right, Zero):
        return ZERO
    if isinstance(left, One):
        return right
    if isinstance(right, One):
        return left
    return Concat(left, right)


@lru_cache(maxsize=65536)
def vprime_derivative(t: Term, lit: Literal) -> Term:
    """Residual of lang_V'(t) after reading lit"""
    if isinstance(t, Var):
        return ONE if lit == Literal(t.var) else ZERO
    if isinstance(t, CVar):
        return ONE if lit == Literal(t.var, Polarity.NEGATIVE) else ZERO
    if isinstance(t, (One, Zero)):
        return ZERO
    if isinstance(t, Union):
        return _union_all([vprime_derivative(t.left, lit), vprime_derivative(t.right, lit)])
    if isinstance(t, Concat):
        head = _concat(vprime_derivative(t.left, lit), t.right)
        if vprime_nullable(t.left):
            return _union_all([head, vprime_derivative(t.right, lit)])
        return head
    return _concat(vprime_derivative(t.body, lit), t)


def lang_vprime_enumerate(t: Term, max_len: int) -> Iterator[LitWord]:
    """
    Lazily yield lang_V'(t) up to max_len in length-then-lexicographic order.

    Breadth-first walk over derivative residuals; each prefix owns exactly one
    residual, so no word is produced twice.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    alphabet = vprime_alphabet(t)
    frontier: List[Tuple[Tuple[Literal, ...], Term]] = []
    if not vprime_empty(t):
        frontier.append(((), t))
    for length in range(max_len + 1):
        successors = []
        for prefix, residual in frontier:
            if vprime_nullable(residual):
                yield LitWord(prefix)
            if length == max_len:
                continue
            for lit in alphabet:
                nxt = vprime_derivative(residual, lit)
                if not vprime_empty(nxt):
                    successors.append((prefix + (lit,), nxt))
        frontier = successors
        if not frontier:
            return


# ---------- DNF formulas ----------

@dataclass(frozen=True)
class PropLiteral:
    name: str
    positive: bool = True


@dataclass(frozen=True)
class DnfFormula:
    """Disjunction of conjunctive clauses"""

    clauses: Tuple[Tuple[PropLiteral, ...], ...]

    def propositional_variables(self) -> FrozenSet[str]:
        return frozenset(lit.name for clause in self.clauses for lit in clause)


def dnf_to_term(phi: DnfFormula) -> Term:
    """
    Translate a DNF formula: conjunction → composition, disjunction → union.

    Clauses are composed left to right and joined by a right-nested union,
    so [[x, ¬y], [y], [¬x]] becomes (x . ~y) + (y + ~x).
    """
    if not isinstance(phi, DnfFormula):
        raise FragmentError(f"expected a DNF formula, got {type(phi).__name__}")
    clause_terms = []
    for clause in phi.clauses:
        term: Term = ONE
        for lit in clause:
            if not isinstance(lit, PropLiteral):
                raise FragmentError(f"not a propositional literal: {lit!r}")
            leaf = Var(Variable(lit.name)) if lit.positive else CVar(Variable(lit.name))
            term = leaf if isinstance(term, One) else Concat(term, leaf)
        clause_terms.append(term)
    if not clause_terms:
        return ZERO
    result = clause_terms[-1]
    for term in reversed(clause_terms[:-1]):
        result = Union(term, result)
    return result
