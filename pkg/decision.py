# decision.py
"""
Decision procedures for LANG |= t1 <= t2 on the fragments that admit them.

Each complete procedure searches the valuations over a small letter alphabet
whose variables take sets of factors. The search walks the valuations in a
fixed order and returns the first one that refutes the inequation, so a
verdict never depends on timing or worker count.
"""

import itertools
import warnings
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from evaluation import Factor, FactorEvaluator, FiniteWords, LetterWord, Valuation, member
from term_parser import Query
from terms import (
    ONE, Concat, FragmentError, LitWord, One, Term, Var, Variable, fresh_variable, is_composition_free,
    is_star_free, lang_vprime_enumerate, lang_vprime_finite, max_word_length,
    term_to_lit_word, top_expansion, variables, word_order,
)

DEFAULT_MAX_LEN = 8


class VerificationError(RuntimeError):
    """A counterexample failed to re-verify under the evaluator"""


class CompleteProcedureUnavailable(FragmentError):
    """No complete procedure covers the left-hand side and the bounded refuter was refused"""


class VerdictStatus(Enum):
    VALID = "valid"
    REFUTED = "refuted"
    UNKNOWN = "unknown"


class Procedure(Enum):
    SYNTACTIC = "syntactic"
    IDENTITY = "identity"
    COMPOSITION_FREE = "composition_free"
    WORD = "word"
    STAR_FREE = "star_free"
    BOUNDED = "bounded"
    LANG1 = "lang1"


@dataclass(frozen=True)
class Counterexample:
    valuation: Valuation
    witness: LetterWord
    lhs_word: Optional[LitWord] = None


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    procedure: Procedure
    lhs: Term
    rhs: Term
    counterexample: Optional[Counterexample] = None
    bound: Optional[int] = None

    @property
    def valid(self) -> bool:
        return self.status is VerdictStatus.VALID

    @property
    def refuted(self) -> bool:
        return self.status is VerdictStatus.REFUTED

    @property
    def unknown(self) -> bool:
        return self.status is VerdictStatus.UNKNOWN


def verify_counterexample(lhs: Term, rhs: Term, cex: Counterexample) -> bool:
    """witness in lhs, not in rhs, and in lhs_word when one is recorded"""
    v, w = cex.valuation, cex.witness
    if not member(w, lhs, v) or member(w, rhs, v):
        return False
    if cex.lhs_word is not None and not member(w, cex.lhs_word.to_term(), v):
        return False
    return True


def _checked(verdict: Verdict) -> Verdict:
    if verdict.refuted and not verify_counterexample(verdict.lhs, verdict.rhs, verdict.counterexample):
        raise VerificationError(
            f"counterexample for {verdict.procedure.value} does not re-verify: {verdict.counterexample!r}")
    return verdict


class ValuationSearch:
    """
    Depth-first walk over factor-set valuations.

    Variables are taken in name order, the first one varying slowest. Inside
    a variable the factor bits are decided from the highest to the lowest,
    0 before 1, where bit b stands for factors[b]: the nonempty factors in
    lexicographic order followed by the empty word. This is plain counting
    over the concatenated bitmasks.

    With prune on, a subtree is answered without descending when either its
    all-zero completion already refutes (that completion is the subtree's
    first valuation) or the three-valued bounds show no completion can.
    """

    def __init__(self, lhs: Term, rhs: Term, alphabet_size: int, witnesses: Sequence[Factor],
                 pins: Optional[Dict[Tuple[Variable, Factor], bool]] = None, prune: bool = True):
        self.lhs = lhs
        self.rhs = rhs
        self.size = alphabet_size
        self.witnesses = list(witnesses)
        self.prune = prune
        self.evaluator = FactorEvaluator(alphabet_size)
        self.variables = sorted(variables(lhs) | variables(rhs) | {var for var, _ in (pins or {})})
        self.factors = [Factor(i, j) for i in range(alphabet_size) for j in range(i + 1, alphabet_size + 1)]
        self.factors.append(Factor(0, 0))

        fixed: Dict[Tuple[Variable, int], bool] = {}
        for (var, factor), value in (pins or {}).items():
            fixed[(var, self._bit(factor))] = value
        if pins:
            # with the LHS word pinned, variables the RHS never reads stay minimal
            rhs_vars = variables(rhs)
            for var in self.variables:
                if var not in rhs_vars:
                    for bit in range(len(self.factors)):
                        fixed.setdefault((var, bit), False)
        self.fixed = fixed
        self.order = [(var, bit) for var in self.variables
                      for bit in reversed(range(len(self.factors))) if (var, bit) not in fixed]

        self.lower = {var: self.evaluator.zeros.copy() for var in self.variables}
        self.upper = {var: self.evaluator.upper.copy() for var in self.variables}
        for (var, bit), value in fixed.items():
            self._assign(var, bit, value)
        self.visited = 0

    def _bit(self, factor: Factor) -> int:
        if factor.i == factor.j:
            return len(self.factors) - 1
        return self.factors.index(factor)

    def _cells(self, bit: int):
        factor = self.factors[bit]
        if factor.i == factor.j:
            idx = np.arange(self.size + 1)
            return idx, idx
        return factor.i, factor.j

    def _assign(self, var: Variable, bit: int, value: bool) -> None:
        cells = self._cells(bit)
        self.lower[var][cells] = value
        self.upper[var][cells] = value

    def _release(self, var: Variable, bit: int) -> None:
        cells = self._cells(bit)
        self.lower[var][cells] = False
        self.upper[var][cells] = True

    def _refuting_witness(self, leaves) -> Optional[Factor]:
        lhs = self.evaluator.evaluate(self.lhs, leaves)
        rhs = self.evaluator.evaluate(self.rhs, leaves)
        for factor in self.witnesses:
            if lhs[factor.i, factor.j] and not rhs[factor.i, factor.j]:
                return factor
        return None

    def _safe(self) -> bool:
        _, lhs_hi = self.evaluator.bounds(self.lhs, self.lower, self.upper)
        rhs_lo, _ = self.evaluator.bounds(self.rhs, self.lower, self.upper)
        return all(not lhs_hi[f.i, f.j] or rhs_lo[f.i, f.j] for f in self.witnesses)

    def _valuation(self, leaves) -> Valuation:
        assignment = {}
        for var in self.variables:
            words = set()
            for factor in self.factors:
                if leaves[var][factor.i, factor.j]:
                    words.add(factor.letters())
            assignment[var] = FiniteWords(frozenset(words))
        return Valuation(self.size, assignment)

    def _walk(self, depth: int) -> Optional[Tuple[Valuation, Factor]]:
        self.visited += 1
        if self.prune or depth == len(self.order):
            witness = self._refuting_witness(self.lower)
            if witness is not None:
                return self._valuation(self.lower), witness
            if depth == len(self.order) or self._safe():
                return None
        var, bit = self.order[depth]
        for value in (False, True):
            self._assign(var, bit, value)
            found = self._walk(depth + 1)
            self._release(var, bit)
            if found is not None:
                return found
        return None

    def first_counterexample(self) -> Optional[Tuple[Valuation, LetterWord]]:
        found = self._walk(0)
        if found is None:
            return None
        valuation, factor = found
        return valuation, factor.letters()


# ---------- complete procedures ----------

def _search(lhs: Term, rhs: Term, size: int, witnesses: Sequence[Factor], procedure: Procedure,
            pins=None, prune: bool = True, lhs_word: Optional[LitWord] = None,
            reported_lhs: Optional[Term] = None) -> Verdict:
    found = ValuationSearch(lhs, rhs, size, witnesses, pins=pins, prune=prune).first_counterexample()
    shown = lhs if reported_lhs is None else reported_lhs
    if found is None:
        return Verdict(VerdictStatus.VALID, procedure, shown, rhs)
    valuation, witness = found
    cex = Counterexample(valuation, witness, lhs_word)
    return _checked(Verdict(VerdictStatus.REFUTED, procedure, shown, rhs, cex))


def decide_identity_inclusion(t: Term, prune: bool = True) -> Verdict:
    """LANG |= I <= t, over the empty alphabet with every x valued inside {I}"""
    return _search(ONE, t, 0, [Factor(0, 0)], Procedure.IDENTITY, prune=prune)


def decide_word_inclusion(u: LitWord, t: Term, prune: bool = True) -> Verdict:
    """
    LANG |= u <= t for a literal word u of length n, over n letters.

    With prune on, position i pins l_i into the interpretation of u_i; only
    valuations placing l_0 ... l_{n-1} in u can refute.
    """
    if len(u) == 0:
        verdict = decide_identity_inclusion(t, prune=prune)
        cex = verdict.counterexample
        if cex is not None:
            cex = replace(cex, lhs_word=u)
        return _checked(replace(verdict, procedure=Procedure.WORD, counterexample=cex))
    n = len(u)
    pins = None
    if prune:
        pins = {(lit.var, Factor(i, i + 1)): not lit.negated for i, lit in enumerate(u)}
    return _search(u.to_term(), t, n, [Factor(0, n)], Procedure.WORD,
                   pins=pins, prune=prune, lhs_word=u)


def decide_composition_free_inclusion(t1: Term, t2: Term, prune: bool = True) -> Verdict:
    """LANG |= t1 <= t2 for composition-free t1: one letter, witnesses I and l"""
    if not is_composition_free(t1):
        raise FragmentError("left-hand side must be composition-free")
    return _search(t1, t2, 1, [Factor(0, 0), Factor(0, 1)], Procedure.COMPOSITION_FREE, prune=prune)


def decide_variable_inclusion(x: Variable, t: Term) -> Verdict:
    return decide_composition_free_inclusion(Var(x), t)


def decide_universality(t: Term) -> Verdict:
    """LANG |= T <= t with T written as v + ~v for a fresh v"""
    return decide_composition_free_inclusion(top_expansion(variables(t)), t)


def _first_refuted(words, t2: Term, workers: int) -> Tuple[Optional[Verdict], int]:
    checked = 0
    if workers > 1:
        words = iter(words)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # at most 2 * workers word problems in flight, read back in word order
            pending = deque(executor.submit(decide_word_inclusion, u, t2)
                            for u in itertools.islice(words, 2 * workers))
            while pending:
                verdict = pending.popleft().result()
                checked += 1
                if verdict.refuted:
                    for future in pending:
                        future.cancel()
                    return verdict, checked
                for u in itertools.islice(words, 1):
                    pending.append(executor.submit(decide_word_inclusion, u, t2))
        return None, checked
    for u in words:
        verdict = decide_word_inclusion(u, t2)
        checked += 1
        if verdict.refuted:
            return verdict, checked
    return None, checked


def _as(verdict: Verdict, procedure: Procedure, lhs: Term) -> Verdict:
    return _checked(replace(verdict, procedure=procedure, lhs=lhs))


def decide_star_free_inclusion(t1: Term, t2: Term, workers: int = 1) -> Verdict:
    """LANG |= t1 <= t2 for star-free t1, one word problem per word of t1 over V'"""
    if not is_star_free(t1):
        raise FragmentError("left-hand side must be star-free")
    words = sorted(lang_vprime_finite(t1), key=word_order)
    refuted, _ = _first_refuted(words, t2, workers)
    if refuted is not None:
        return _as(refuted, Procedure.STAR_FREE, t1)
    return Verdict(VerdictStatus.VALID, Procedure.STAR_FREE, t1, t2)


def refute_bounded(t1: Term, t2: Term, max_len: int = DEFAULT_MAX_LEN, workers: int = 1) -> Verdict:
    """
    Sound refuter for any left-hand side: try each word of t1 over V' up to
    max_len. Valid only when those words exhaust t1.
    """
    if max_len < 0:
        raise ValueError(f"max_len must be non-negative, got {max_len}")
    words = lang_vprime_enumerate(t1, max_len)
    refuted, _ = _first_refuted(words, t2, workers)
    if refuted is not None:
        return _as(refuted, Procedure.BOUNDED, t1)
    longest = max_word_length(t1)
    if is_star_free(t1) and longest is not None and longest <= max_len:
        return Verdict(VerdictStatus.VALID, Procedure.BOUNDED, t1, t2, bound=max_len)
    warnings.warn(f"no counterexample among words of length <= {max_len}; verdict unknown")
    return Verdict(VerdictStatus.UNKNOWN, Procedure.BOUNDED, t1, t2, bound=max_len)


def decide_inequation(lhs: Term, rhs: Term, max_len: int = DEFAULT_MAX_LEN, workers: int = 1,
                      complete_only: bool = False) -> Verdict:
    """Route lhs <= rhs to the strongest complete procedure its LHS admits"""
    if lhs == rhs:
        return Verdict(VerdictStatus.VALID, Procedure.SYNTACTIC, lhs, rhs)
    if isinstance(lhs, One):
        return decide_identity_inclusion(rhs)
    if is_composition_free(lhs):
        return decide_composition_free_inclusion(lhs, rhs)
    word = term_to_lit_word(lhs)
    if word is not None:
        return _as(decide_word_inclusion(word, rhs), Procedure.WORD, lhs)
    if is_star_free(lhs):
        return decide_star_free_inclusion(lhs, rhs, workers=workers)
    if complete_only:
        raise CompleteProcedureUnavailable("left-hand side contains a star; no complete procedure applies")
    return refute_bounded(lhs, rhs, max_len, workers=workers)


def decide(query: Query, max_len: int = DEFAULT_MAX_LEN, workers: int = 1,
           complete_only: bool = False) -> List[Verdict]:
    """One verdict per direction of the query"""
    return [decide_inequation(lhs, rhs, max_len, workers=workers, complete_only=complete_only)
            for lhs, rhs in query.inequations()]


def overall_status(verdicts: Sequence[Verdict]) -> VerdictStatus:
    if any(v.refuted for v in verdicts):
        return VerdictStatus.REFUTED
    if any(v.unknown for v in verdicts):
        return VerdictStatus.UNKNOWN
    return VerdictStatus.VALID


def fresh_variable_form(t: Term) -> Tuple[Term, Term]:
    """z <= z . t with z fresh, valid iff I <= t is"""
    z = Var(fresh_variable(variables(t)))
    return z, Concat(z, t)


def universality_form(t: Term) -> Tuple[Term, Term]:
    """T <= T . t with T expanded, valid iff I <= t is"""
    top = top_expansion(variables(t))
    return top, Concat(top, t)
