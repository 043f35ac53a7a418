# classical.py
"""
Classical regular-language semantics of terms.

Two readings are supported:
  - over V': x and ~x are two unrelated letters;
  - over a declared variable set V plus one surrogate symbol for every
    other variable, where ~x is the complement of the one-letter word x.
Both build Thompson-style NFAs; inclusion runs a breadth-first walk of the
subset-construction product and returns a shortest separating word.
"""

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from terms import (
    Concat, CVar, FragmentError, One, Star, Term, Union, Var, Variable, Zero,
    has_complement, variables,
)

OTHER = "⊠"
EPSILON = None

Symbol = str
ClassicalWord = Tuple[Symbol, ...]


class UndeclaredVariableError(ValueError):
    """A term mentions a variable missing from the declared alphabet"""


@dataclass(frozen=True)
class Nfa:
    alphabet: Tuple[Symbol, ...]
    transitions: Dict[int, Tuple[Tuple[Optional[Symbol], int], ...]]
    initial: int
    accepting: FrozenSet[int]
    state_count: int

    def closure(self, states: Iterable[int]) -> FrozenSet[int]:
        stack = list(states)
        seen = set(stack)
        while stack:
            state = stack.pop()
            for symbol, target in self.transitions.get(state, ()):
                if symbol is EPSILON and target not in seen:
                    seen.add(target)
                    stack.append(target)
        return frozenset(seen)

    def start(self) -> FrozenSet[int]:
        return self.closure([self.initial])

    def step(self, states: FrozenSet[int], symbol: Symbol) -> FrozenSet[int]:
        moved = [target for state in states
                 for label, target in self.transitions.get(state, ()) if label == symbol]
        return self.closure(moved)

    def accepts_from(self, states: FrozenSet[int]) -> bool:
        return bool(states & self.accepting)

    def accepts(self, word: Sequence[Symbol]) -> bool:
        states = self.start()
        for symbol in word:
            states = self.step(states, symbol)
            if not states:
                return False
        return self.accepts_from(states)


class _Builder:
    def __init__(self, alphabet: Sequence[Symbol]):
        self.alphabet = tuple(alphabet)
        self.edges: Dict[int, List[Tuple[Optional[Symbol], int]]] = {}
        self.count = 0

    def state(self) -> int:
        self.count += 1
        self.edges[self.count - 1] = []
        return self.count - 1

    def edge(self, source: int, symbol: Optional[Symbol], target: int) -> None:
        self.edges[source].append((symbol, target))

    def symbol(self, symbol: Symbol) -> Tuple[int, int]:
        s, e = self.state(), self.state()
        self.edge(s, symbol, e)
        return s, e

    def not_single(self, symbol: Symbol) -> Tuple[int, int]:
        """Every word over the alphabet except the one-symbol word `symbol`"""
        entry, saw_it, other, exit_ = self.state(), self.state(), self.state(), self.state()
        for a in self.alphabet:
            self.edge(entry, a, saw_it if a == symbol else other)
            self.edge(saw_it, a, other)
            self.edge(other, a, other)
        self.edge(entry, EPSILON, exit_)
        self.edge(other, EPSILON, exit_)
        return entry, exit_

    def build(self, t: Term, leaf) -> Tuple[int, int]:
        if isinstance(t, (Var, CVar)):
            return leaf(self, t)
        if isinstance(t, One):
            s, e = self.state(), self.state()
            self.edge(s, EPSILON, e)
            return s, e
        if isinstance(t, Zero):
            return self.state(), self.state()
        if isinstance(t, Union):
            (a_s, a_e), (b_s, b_e) = self.build(t.left, leaf), self.build(t.right, leaf)
            s, e = self.state(), self.state()
            self.edge(s, EPSILON, a_s)
            self.edge(s, EPSILON, b_s)
            self.edge(a_e, EPSILON, e)
            self.edge(b_e, EPSILON, e)
            return s, e
        if isinstance(t, Concat):
            (a_s, a_e), (b_s, b_e) = self.build(t.left, leaf), self.build(t.right, leaf)
            self.edge(a_e, EPSILON, b_s)
            return a_s, b_e
        if isinstance(t, Star):
            b_s, b_e = self.build(t.body, leaf)
            s, e = self.state(), self.state()
            self.edge(s, EPSILON, b_s)
            self.edge(s, EPSILON, e)
            self.edge(b_e, EPSILON, b_s)
            self.edge(b_e, EPSILON, e)
            return s, e
        raise TypeError(f"not a term: {t!r}")

    def finish(self, fragment: Tuple[int, int]) -> Nfa:
        start, end = fragment
        return Nfa(self.alphabet, {k: tuple(v) for k, v in self.edges.items()},
                   start, frozenset({end}), self.count)


def vprime_symbol(t: Term) -> Symbol:
    return f"~{t.var.name}" if isinstance(t, CVar) else t.var.name


def nfa_over_vprime(t: Term) -> Nfa:
    """Recognizer of lang_V'(t): x and ~x are distinct letters"""
    alphabet = []
    for var in sorted(variables(t)):
        alphabet += [var.name, f"~{var.name}"]
    builder = _Builder(sorted(alphabet))
    return builder.finish(builder.build(t, lambda b, leaf: b.symbol(vprime_symbol(leaf))))


def v_alphabet(declared: Iterable[Variable]) -> Tuple[Symbol, ...]:
    return tuple(sorted(var.name for var in declared)) + (OTHER,)


def nfa_over_v(t: Term, declared: Iterable[Variable]) -> Nfa:
    """Recognizer of lang(t) over the declared variables plus the surrogate symbol"""
    declared = frozenset(declared)
    missing = variables(t) - declared
    if missing:
        raise UndeclaredVariableError(f"undeclared variables: {', '.join(sorted(v.name for v in missing))}")

    def leaf(b: _Builder, node: Term):
        if isinstance(node, CVar):
            return b.not_single(node.var.name)
        return b.symbol(node.var.name)

    builder = _Builder(v_alphabet(declared))
    return builder.finish(builder.build(t, leaf))


def lang_incl(a: Nfa, b: Nfa) -> Tuple[bool, Optional[ClassicalWord]]:
    """
    Whether L(a) is included in L(b); otherwise the shortest, then
    lexicographically first, word of L(a) outside L(b).
    """
    alphabet = sorted(set(a.alphabet) | set(b.alphabet))
    start = (a.start(), b.start())
    parent: Dict[Tuple[FrozenSet[int], FrozenSet[int]], Optional[Tuple]] = {start: None}
    queue = deque([start])
    while queue:
        pair = queue.popleft()
        left, right = pair
        if a.accepts_from(left) and not b.accepts_from(right):
            word: List[Symbol] = []
            node = pair
            while parent[node] is not None:
                node, symbol = parent[node]
                word.append(symbol)
            return False, tuple(reversed(word))
        if not left:
            continue
        for symbol in alphabet:
            nxt = (a.step(left, symbol), b.step(right, symbol))
            if nxt not in parent:
                parent[nxt] = (pair, symbol)
                queue.append(nxt)
    return True, None


def lang_equivalence(a: Nfa, b: Nfa) -> Tuple[bool, Optional[ClassicalWord]]:
    """Equivalence plus a separator from whichever side fails first"""
    included, word = lang_incl(a, b)
    if not included:
        return False, word
    included, word = lang_incl(b, a)
    return included, word


def lang_equiv(a: Nfa, b: Nfa) -> bool:
    return lang_equivalence(a, b)[0]


def ka_lang_decide(t1: Term, t2: Term) -> bool:
    """LANG-validity of t1 = t2 for complement-free terms, by automata equivalence"""
    if has_complement(t1) or has_complement(t2):
        raise FragmentError("classical decision needs complement-free terms")
    return lang_equiv(nfa_over_vprime(t1), nfa_over_vprime(t2))


def vprime_included(t1: Term, t2: Term) -> bool:
    return lang_incl(nfa_over_vprime(t1), nfa_over_vprime(t2))[0]


def lang_contains_identity(t: Term) -> bool:
    """I in lang(t); a complement leaf always holds the empty word"""
    if isinstance(t, (One, Star, CVar)):
        return True
    if isinstance(t, Union):
        return lang_contains_identity(t.left) or lang_contains_identity(t.right)
    if isinstance(t, Concat):
        return lang_contains_identity(t.left) and lang_contains_identity(t.right)
    return False


def lang_member(word: Sequence[Symbol], t: Term) -> bool:
    """Textbook membership of a word of variable names in lang(t), by split search"""
    word = tuple(word)
    memo: Dict[Tuple[Term, int, int], bool] = {}

    def holds(node: Term, i: int, j: int) -> bool:
        key = (node, i, j)
        if key in memo:
            return memo[key]
        if isinstance(node, Var):
            result = word[i:j] == (node.var.name,)
        elif isinstance(node, CVar):
            result = word[i:j] != (node.var.name,)
        elif isinstance(node, One):
            result = i == j
        elif isinstance(node, Zero):
            result = False
        elif isinstance(node, Union):
            result = holds(node.left, i, j) or holds(node.right, i, j)
        elif isinstance(node, Concat):
            result = any(holds(node.left, i, k) and holds(node.right, k, j) for k in range(i, j + 1))
        elif isinstance(node, Star):
            result = i == j or any(holds(node.body, i, k) and holds(node, k, j) for k in range(i + 1, j + 1))
        else:
            raise TypeError(f"not a term: {node!r}")
        memo[key] = result
        return result

    return holds(t, 0, len(word))


def symbols_text(word: Optional[Sequence[Symbol]]) -> Optional[str]:
    if word is None:
        return None
    return " ".join(word)


def instantiate_other(word: Sequence[Symbol], declared: Set[Variable]) -> ClassicalWord:
    """Replace the surrogate symbol by a variable name outside declared"""
    taken = {var.name for var in declared}
    fresh = "other"
    while fresh in taken:
        fresh += "_"
    return tuple(fresh if symbol == OTHER else symbol for symbol in word)
