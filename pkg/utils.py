# utils.py
"""
Corpus generators and brute-force oracles shared by the tests and selftest.
"""

import itertools
import random
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from evaluation import FiniteWords, LetterWord, RegexLanguage, Valuation, eval_factors, factor_words
from terms import (
    ONE, ZERO, Concat, CVar, DnfFormula, Literal, LitWord, One, Polarity, PropLiteral,
    Star, Term, Union, Var, Variable, Zero, subterms,
)

DEFAULT_NAMES = ('x', 'y', 'z')
DNF_NAMES = ('p', 'q', 'r', 's')


def _leaves(names: Sequence[str], complement: bool) -> List[Term]:
    leaves: List[Term] = []
    for name in names:
        leaves.append(Var(Variable(name)))
        if complement:
            leaves.append(CVar(Variable(name)))
    return leaves + [ONE, ZERO]


def random_term(rng: random.Random, size: int, names: Sequence[str] = DEFAULT_NAMES,
                complement: bool = True, star: bool = True) -> Term:
    """A term of at most `size` nodes (exactly `size` whenever possible)"""
    leaves = _leaves(names, complement)
    if size <= 1 or (size == 2 and not star):
        return rng.choice(leaves)
    if size == 2:
        return Star(rng.choice(leaves))
    ops = ['union', 'concat'] + (['star'] if star else [])
    op = rng.choice(ops)
    if op == 'star':
        return Star(random_term(rng, size - 1, names, complement, star))
    left = rng.randint(1, size - 2)
    a = random_term(rng, left, names, complement, star)
    b = random_term(rng, size - 1 - left, names, complement, star)
    return Union(a, b) if op == 'union' else Concat(a, b)


def all_terms(max_size: int, names: Sequence[str] = ('x', 'y'), complement: bool = True) -> List[Term]:
    """Every term of at most max_size nodes over the given variables"""
    by_size: Dict[int, List[Term]] = {1: _leaves(names, complement)}
    for size in range(2, max_size + 1):
        terms = [Star(t) for t in by_size[size - 1]]
        for left in range(1, size - 1):
            for a in by_size[left]:
                for b in by_size[size - 1 - left]:
                    terms.append(Union(a, b))
                    terms.append(Concat(a, b))
        by_size[size] = terms
    return [t for size in sorted(by_size) for t in by_size[size]]


def all_lit_words(names: Sequence[str], max_len: int) -> List[LitWord]:
    """Literal words up to max_len in length-then-lexicographic order"""
    literals = sorted(Literal(Variable(n), p) for n in names for p in Polarity)
    words = []
    for length in range(max_len + 1):
        for combo in itertools.product(literals, repeat=length):
            words.append(LitWord(combo))
    return words


def one_variable_words(max_len: int, name: str = 'z') -> List[LitWord]:
    return all_lit_words([name], max_len)


# ---------- DNF formulas ----------

def random_dnf(rng: random.Random, max_vars: int = 4, max_clauses: int = 4) -> DnfFormula:
    names = DNF_NAMES[:rng.randint(1, max_vars)]
    clauses = []
    for _ in range(rng.randint(1, max_clauses)):
        width = rng.randint(0, len(names))
        chosen = rng.sample(list(names), width)
        clauses.append(tuple(PropLiteral(name, rng.random() < 0.5) for name in sorted(chosen)))
    return DnfFormula(tuple(clauses))


def truth_table_valid(phi: DnfFormula) -> bool:
    names = sorted(phi.propositional_variables())
    for values in itertools.product((False, True), repeat=len(names)):
        env = dict(zip(names, values))
        if not any(all(env[lit.name] == lit.positive for lit in clause) for clause in phi.clauses):
            return False
    return True


# ---------- valuations ----------

def factor_valuations(names: Sequence[Variable], n: int) -> Iterator[Valuation]:
    """Every valuation over n letters valuing each variable inside the factor set"""
    words = list(factor_words(n))
    subsets = [frozenset(c) for k in range(len(words) + 1) for c in itertools.combinations(words, k)]
    for choice in itertools.product(subsets, repeat=len(names)):
        yield Valuation(n, {var: FiniteWords(s) for var, s in zip(names, choice)})


def words_up_to(alphabet_size: int, max_len: int) -> List[LetterWord]:
    return [w for length in range(max_len + 1)
            for w in itertools.product(range(alphabet_size), repeat=length)]


def random_valuation(rng: random.Random, names: Sequence[Variable], alphabet_size: int,
                     max_len: int, regex_sources: Sequence[str] = ()) -> Valuation:
    """Random finite languages (and now and then a regex) over the alphabet"""
    pool = words_up_to(alphabet_size, max_len)
    assignment = {}
    for var in names:
        if regex_sources and rng.random() < 0.2:
            assignment[var] = RegexLanguage(rng.choice(list(regex_sources)))
        else:
            assignment[var] = FiniteWords(frozenset(w for w in pool if rng.random() < 0.3))
    return Valuation(alphabet_size, assignment)


# ---------- brute-force interpretation ----------

def naive_language(t: Term, v: Valuation, max_len: int) -> FrozenSet[LetterWord]:
    """The interpretation of t under v, cut to words of length <= max_len"""
    universe = words_up_to(v.alphabet_size, max_len)
    memo: Dict[Term, FrozenSet[LetterWord]] = {}

    def concat(a: Set[LetterWord], b: Set[LetterWord]) -> FrozenSet[LetterWord]:
        return frozenset(x + y for x in a for y in b if len(x) + len(y) <= max_len)

    def lang(node: Term) -> FrozenSet[LetterWord]:
        if node in memo:
            return memo[node]
        if isinstance(node, Var):
            result = frozenset(w for w in universe if v.spec(node.var).contains(w))
        elif isinstance(node, CVar):
            result = frozenset(w for w in universe if not v.spec(node.var).contains(w))
        elif isinstance(node, One):
            result = frozenset({()})
        elif isinstance(node, Zero):
            result = frozenset()
        elif isinstance(node, Union):
            result = lang(node.left) | lang(node.right)
        elif isinstance(node, Concat):
            result = concat(lang(node.left), lang(node.right))
        elif isinstance(node, Star):
            body = {w for w in lang(node.body) if w}
            result = frozenset({()})
            while True:
                grown = result | concat(result, body)
                if grown == result:
                    break
                result = grown
        else:
            raise TypeError(f"not a term: {node!r}")
        memo[node] = result
        return result

    return lang(t)


def first_disagreement(t: Term, v: Valuation) -> Optional[Tuple[int, int]]:
    """First factor where the factor tables and the brute-force language differ"""
    table = eval_factors(t, v).table()
    naive = naive_language(t, v, v.alphabet_size)
    for i in range(v.alphabet_size + 1):
        for j in range(i, v.alphabet_size + 1):
            if bool(table[i, j]) != (tuple(range(i, j)) in naive):
                return i, j
    return None


def star_splits(table_body, i: int, j: int) -> bool:
    """Whether i = j or some strictly increasing chain i = k0 < ... < km = j uses body steps"""
    if i == j:
        return True
    return any(table_body[i, k] and star_splits(table_body, k, j) for k in range(i + 1, j + 1))


class LanguageMasks:
    """
    Brute-force languages over n letters, cut to words of length <= n and
    stored as bitmasks over that finite universe. Concatenation and star are
    tabulated once per alphabet, so a whole term corpus under a whole list
    of valuations costs one lookup per node and valuation. Meant for n <= 2.
    """

    def __init__(self, n: int):
        self.n = n
        self.universe = words_up_to(n, n)
        self.index = {w: k for k, w in enumerate(self.universe)}
        self.full = (1 << len(self.universe)) - 1
        self.identity = self.bit(())
        masks = range(self.full + 1)
        self.concat = [[self._join(a, b) for b in masks] for a in masks]
        self.star = [self._closure(a) for a in masks]
        self.pattern = [self._pattern(a) for a in masks]

    def bit(self, word: LetterWord) -> int:
        return 1 << self.index[tuple(word)]

    def words(self, mask: int) -> List[LetterWord]:
        return [w for k, w in enumerate(self.universe) if mask >> k & 1]

    def leaf(self, spec) -> int:
        return sum(self.bit(w) for w in self.universe if spec.contains(w))

    def _join(self, a: int, b: int) -> int:
        joined = 0
        for u in self.words(a):
            for w in self.words(b):
                if len(u) + len(w) <= self.n:
                    joined |= self.bit(u + w)
        return joined

    def _closure(self, a: int) -> int:
        body = a & ~self.identity
        reach = self.identity
        while True:
            grown = reach | self.concat[reach][body]
            if grown == reach:
                return reach
            reach = grown

    def _pattern(self, mask: int) -> int:
        # bit i * (n + 1) + j is set when the factor l_i ... l_{j-1} is in mask
        dim = self.n + 1
        return sum(1 << (i * dim + j) for i in range(dim) for j in range(i, dim)
                   if mask & self.bit(tuple(range(i, j))))

    def corpus_languages(self, terms: Sequence[Term], leaves: Dict[Variable, List[int]],
                         count: int) -> Dict[Term, List[int]]:
        """Masks of every subterm of the corpus, one per valuation"""
        out: Dict[Term, List[int]] = {}
        for t in terms:
            for node in subterms(t):
                if node in out:
                    continue
                if isinstance(node, Var):
                    out[node] = leaves.get(node.var, [0] * count)
                elif isinstance(node, CVar):
                    out[node] = [self.full ^ m for m in leaves.get(node.var, [0] * count)]
                elif isinstance(node, One):
                    out[node] = [self.identity] * count
                elif isinstance(node, Zero):
                    out[node] = [0] * count
                elif isinstance(node, Union):
                    out[node] = [a | b for a, b in zip(out[node.left], out[node.right])]
                elif isinstance(node, Concat):
                    out[node] = [self.concat[a][b] for a, b in zip(out[node.left], out[node.right])]
                elif isinstance(node, Star):
                    out[node] = [self.star[a] for a in out[node.body]]
                else:
                    raise TypeError(f"not a term: {node!r}")
        return out


def packed_tables(tables: np.ndarray, count: int) -> np.ndarray:
    """One integer per valuation; bit i * (n + 1) + j holds entry [i, j]"""
    dim = tables.shape[-1]
    weights = (1 << np.arange(dim * dim, dtype=np.int64)).reshape(dim, dim)
    batch = np.broadcast_to(tables, (count, dim, dim))
    return (batch.astype(np.int64) * weights).sum(axis=(-2, -1))
