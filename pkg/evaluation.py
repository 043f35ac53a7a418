# evaluation.py
"""
Valuations over finite letter alphabets and factor-table evaluation of terms.

A word over n letters is indexed by split points 0..n; factor (i, j) with
i <= j stands for the word l_i ... l_{j-1}. Every subterm gets an
(n+1) x (n+1) boolean table whose entry [i, j] says whether that factor
belongs to the subterm's interpretation.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Callable, Dict, FrozenSet, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from letter_regex import Regex, matches, max_letter, parse_regex
from terms import (
    Concat, CVar, One, Star, Term, Union, Var, Variable, Zero, subterms, variables,
)

Letter = int
LetterWord = Tuple[Letter, ...]


class LetterRangeError(ValueError):
    """A letter index lies outside the alphabet it is used with"""


class Factor(NamedTuple):
    i: int
    j: int

    @property
    def empty(self) -> bool:
        return self.i == self.j

    def letters(self) -> LetterWord:
        return tuple(range(self.i, self.j))


# ---------- leaf languages ----------

class LangSpec:
    """Declarative language over letters 0..n-1"""

    def contains(self, word: LetterWord) -> bool:
        raise NotImplementedError

    def max_letter(self) -> int:
        raise NotImplementedError

    def to_json(self) -> Dict:
        raise NotImplementedError


@dataclass(frozen=True)
class FiniteWords(LangSpec):
    words: FrozenSet[LetterWord] = frozenset()

    def __post_init__(self):
        normalised = frozenset(tuple(int(letter) for letter in word) for word in self.words)
        for word in normalised:
            if any(letter < 0 for letter in word):
                raise LetterRangeError(f"negative letter in {list(word)}")
        object.__setattr__(self, 'words', normalised)

    def contains(self, word: LetterWord) -> bool:
        return tuple(word) in self.words

    def max_letter(self) -> int:
        return max((max(word) for word in self.words if word), default=-1)

    def sorted_words(self) -> List[LetterWord]:
        return sorted(self.words, key=lambda w: (len(w), w))

    def to_json(self) -> Dict:
        return {"kind": "finite", "words": [list(w) for w in self.sorted_words()]}


@dataclass(frozen=True)
class RegexLanguage(LangSpec):
    source: str
    root: Regex = field(init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'root', parse_regex(self.source))

    def contains(self, word: LetterWord) -> bool:
        return matches(self.root, tuple(word))

    def max_letter(self) -> int:
        return max_letter(self.root)

    def to_json(self) -> Dict:
        return {"kind": "regex", "expr": self.source}


NOTHING = FiniteWords()


def word_in_spec(w: Sequence[Letter], s: LangSpec, alphabet_size: int) -> bool:
    """Whether the letter word w over letters 0..alphabet_size-1 belongs to the language s denotes"""
    for letter in w:
        if not 0 <= letter < alphabet_size:
            raise LetterRangeError(f"letter l{letter} outside alphabet of size {alphabet_size}")
    return s.contains(tuple(w))


# ---------- valuations ----------

class Valuation:
    """Assignment of leaf languages to variables over a shared alphabet of n letters"""

    def __init__(self, alphabet_size: int, assignment: Optional[Mapping[Variable, LangSpec]] = None):
        if alphabet_size < 0:
            raise ValueError(f"alphabet size must be non-negative, got {alphabet_size}")
        assignment = dict(assignment or {})
        for var, spec in assignment.items():
            if not isinstance(var, Variable):
                raise TypeError(f"valuation keys must be variables, got {var!r}")
            if spec.max_letter() >= alphabet_size:
                raise LetterRangeError(
                    f"{var.name} uses letter l{spec.max_letter()} but the alphabet has {alphabet_size} letters")
        self.alphabet_size = alphabet_size
        self.assignment = MappingProxyType(assignment)

    def spec(self, var: Variable) -> LangSpec:
        # absent variables denote the empty language
        return self.assignment.get(var, NOTHING)

    def variables(self) -> List[Variable]:
        return sorted(self.assignment)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Valuation):
            return NotImplemented
        return self.alphabet_size == other.alphabet_size and dict(self.assignment) == dict(other.assignment)

    def __repr__(self) -> str:
        parts = ", ".join(f"{var.name}: {self.assignment[var]!r}" for var in self.variables())
        return f"Valuation({self.alphabet_size}, {{{parts}}})"


def valuation_to_json(v: Valuation) -> Dict:
    return {
        "alphabet": v.alphabet_size,
        "assignment": {var.name: v.assignment[var].to_json() for var in v.variables()},
    }


def valuation_from_json(data: Mapping) -> Valuation:
    try:
        size = int(data["alphabet"])
        raw = data.get("assignment", {})
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"malformed valuation record: {e}") from e
    assignment = {}
    for name, spec in raw.items():
        kind = spec.get("kind")
        if kind == "finite":
            assignment[Variable(name)] = FiniteWords(frozenset(tuple(w) for w in spec.get("words", [])))
        elif kind == "regex":
            assignment[Variable(name)] = RegexLanguage(spec["expr"])
        else:
            raise ValueError(f"unknown language kind {kind!r} for variable {name}")
    return Valuation(size, assignment)


def letter_text(word: Sequence[Letter]) -> str:
    return " ".join(f"l{letter}" for letter in word) if word else "1"


# ---------- factor tables ----------

LeafTable = np.ndarray
Bounds = Tuple[np.ndarray, np.ndarray]


class FactorEvaluator:
    """
    Boolean factor tables over split points 0..size.

    Tables may carry leading batch axes (one slice per valuation); every
    operation acts on the last two axes.
    """

    def __init__(self, size: int):
        self.size = size
        dim = size + 1
        self.upper = np.triu(np.ones((dim, dim), dtype=bool))
        self.strict = np.triu(np.ones((dim, dim), dtype=bool), k=1)
        self.eye = np.eye(dim, dtype=bool)
        self.zeros = np.zeros((dim, dim), dtype=bool)

    def compose(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """[i, j] = any k with a[i, k] and b[k, j]"""
        return np.any(a[..., :, :, None] & b[..., None, :, :], axis=-2)

    def closure(self, a: np.ndarray) -> np.ndarray:
        """Reflexive closure over strictly advancing steps of a"""
        step = a & self.strict
        reach = np.broadcast_to(self.eye, step.shape).copy()
        while True:
            grown = reach | self.compose(reach, step)
            if np.array_equal(grown, reach):
                return reach
            reach = grown

    def leaf_table(self, oracle: Callable[[int, int], bool]) -> np.ndarray:
        table = self.zeros.copy()
        for i in range(self.size + 1):
            for j in range(i, self.size + 1):
                table[i, j] = oracle(i, j)
        return table

    def stacked_leaves(self, valuations: Sequence[Valuation],
                       names: Iterable[Variable]) -> Dict[Variable, np.ndarray]:
        """Leaf tables of many valuations stacked along a leading axis"""
        return {
            var: np.stack([self.leaf_table(lambda i, j, spec=v.spec(var): spec.contains(tuple(range(i, j))))
                           for v in valuations])
            for var in names
        }

    def tables(self, t: Term, leaves: Mapping[Variable, np.ndarray],
               out: Optional[Dict[Term, np.ndarray]] = None) -> Dict[Term, np.ndarray]:
        """
        Exact tables for every subterm; leaves maps variable -> table.
        Subterms already in out are reused, so one dict can serve a corpus.
        """
        out = {} if out is None else out
        for node in subterms(t):
            if node in out:
                continue
            if isinstance(node, Var):
                out[node] = leaves.get(node.var, self.zeros)
            elif isinstance(node, CVar):
                out[node] = self.upper & ~leaves.get(node.var, self.zeros)
            elif isinstance(node, One):
                out[node] = self.eye
            elif isinstance(node, Zero):
                out[node] = self.zeros
            elif isinstance(node, Union):
                out[node] = out[node.left] | out[node.right]
            elif isinstance(node, Concat):
                out[node] = self.compose(out[node.left], out[node.right])
            elif isinstance(node, Star):
                out[node] = self.closure(out[node.body])
            else:
                raise TypeError(f"not a term: {node!r}")
        return out

    def evaluate(self, t: Term, leaves: Mapping[Variable, np.ndarray]) -> np.ndarray:
        return self.tables(t, leaves)[t]

    def corpus_tables(self, terms: Iterable[Term],
                      leaves: Mapping[Variable, np.ndarray]) -> Dict[Term, np.ndarray]:
        out: Dict[Term, np.ndarray] = {}
        for t in terms:
            self.tables(t, leaves, out)
        return out

    def bounds(self, t: Term, lower: Mapping[Variable, np.ndarray],
               upper: Mapping[Variable, np.ndarray]) -> Bounds:
        """
        Lower and upper tables of t when each variable's leaf table lies
        between lower[x] and upper[x]. Complements swap the two bounds.
        """
        out: Dict[Term, Bounds] = {}
        for node in subterms(t):
            if isinstance(node, Var):
                out[node] = (lower.get(node.var, self.zeros), upper.get(node.var, self.zeros))
            elif isinstance(node, CVar):
                out[node] = (self.upper & ~upper.get(node.var, self.zeros),
                             self.upper & ~lower.get(node.var, self.zeros))
            elif isinstance(node, One):
                out[node] = (self.eye, self.eye)
            elif isinstance(node, Zero):
                out[node] = (self.zeros, self.zeros)
            elif isinstance(node, Union):
                (a_lo, a_hi), (b_lo, b_hi) = out[node.left], out[node.right]
                out[node] = (a_lo | b_lo, a_hi | b_hi)
            elif isinstance(node, Concat):
                (a_lo, a_hi), (b_lo, b_hi) = out[node.left], out[node.right]
                out[node] = (self.compose(a_lo, b_lo), self.compose(a_hi, b_hi))
            elif isinstance(node, Star):
                lo, hi = out[node.body]
                out[node] = (self.closure(lo), self.closure(hi))
            else:
                raise TypeError(f"not a term: {node!r}")
        return out[t]


class MembershipTable:
    """Frozen factor tables of every subterm of a term"""

    def __init__(self, root: Term, size: int, tables: Dict[Term, np.ndarray]):
        self.root = root
        self.size = size
        frozen = {}
        for node, table in tables.items():
            table = table.copy()
            table.setflags(write=False)
            frozen[node] = table
        self._tables = MappingProxyType(frozen)

    def table(self, subterm: Optional[Term] = None) -> np.ndarray:
        return self._tables[self.root if subterm is None else subterm]

    def __getitem__(self, key: Tuple[Term, Factor]) -> bool:
        subterm, factor = key
        i, j = factor
        if not 0 <= i <= j <= self.size:
            raise IndexError(f"factor ({i}, {j}) outside 0..{self.size}")
        return bool(self._tables[subterm][i, j])

    def contains(self, factor: Factor) -> bool:
        return self[self.root, factor]

    def subterms(self) -> List[Term]:
        return list(self._tables)


def _prefix_leaves(evaluator: FactorEvaluator, t: Term, v: Valuation) -> Dict[Variable, np.ndarray]:
    return {
        var: evaluator.leaf_table(lambda i, j, spec=v.spec(var): spec.contains(tuple(range(i, j))))
        for var in variables(t)
    }


def eval_factors(t: Term, v: Valuation) -> MembershipTable:
    """Membership of every factor of l_0 ... l_{n-1} in every subterm of t"""
    evaluator = FactorEvaluator(v.alphabet_size)
    tables = evaluator.tables(t, _prefix_leaves(evaluator, t, v))
    return MembershipTable(t, v.alphabet_size, tables)


def member(w: Sequence[Letter], t: Term, v: Valuation) -> bool:
    """Whether the letter word w belongs to the interpretation of t under v"""
    word = tuple(w)
    for letter in word:
        if not 0 <= letter < v.alphabet_size:
            raise LetterRangeError(f"letter l{letter} outside alphabet of size {v.alphabet_size}")
    evaluator = FactorEvaluator(len(word))
    leaves = {
        var: evaluator.leaf_table(lambda i, j, spec=v.spec(var): spec.contains(word[i:j]))
        for var in variables(t)
    }
    return bool(evaluator.evaluate(t, leaves)[0, len(word)])


def words_to_letters(v: Valuation, parts: Sequence[Sequence[Letter]]) -> Valuation:
    """
    Valuation over fresh letters l_0 .. l_{n-1}, one per part: each variable
    gets the factors l_i ... l_{j-1} whose concatenation w_i ... w_{j-1} lies
    in its original language.
    """
    parts = [tuple(part) for part in parts]
    n = len(parts)
    assignment = {}
    for var in v.variables():
        spec = v.spec(var)
        words = set()
        for i in range(n + 1):
            for j in range(i, n + 1):
                joined = tuple(letter for part in parts[i:j] for letter in part)
                if word_in_spec(joined, spec, v.alphabet_size):
                    words.add(tuple(range(i, j)))
        assignment[var] = FiniteWords(frozenset(words))
    return Valuation(n, assignment)


def word_to_letter(v: Valuation, w: Sequence[Letter]) -> Valuation:
    """The single-letter abstraction of w: words_to_letters with one part"""
    return words_to_letters(v, [w])


def factor_words(n: int) -> Iterable[LetterWord]:
    """The distinct factor words of l_0 ... l_{n-1}: I, then nonempty ones"""
    yield ()
    for i in range(n):
        for j in range(i + 1, n + 1):
            yield tuple(range(i, j))
