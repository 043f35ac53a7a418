#!/usr/bin/env python3
"""
Acceptance harness for kavc
소규모 전수 검사와 시드 고정 무작위 코퍼스로 결정 절차를 검증한다
"""

import random
import sys
import warnings
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from prettytable import PrettyTable

from classical import (
    ka_lang_decide, lang_equivalence, lang_incl,
    nfa_over_v, vprime_included,
)
from decision import (
    decide, decide_composition_free_inclusion, decide_identity_inclusion, decide_inequation,
    decide_universality, fresh_variable_form, overall_status, refute_bounded,
    verify_counterexample, VerdictStatus,
)
from evaluation import FactorEvaluator, eval_factors, member, words_to_letters
from reports import decision_text, dump_json
from separation import lang1_decide, lang2_separate, literal_counts, separate_words
from term_parser import EQ, LEQ, Query, parse_query, print_term
from terms import (
    Concat, CVar, Union, Var, Variable, is_star_free, top_expansion, variables,
    dnf_to_term,
)
from utils import (
    LanguageMasks, all_lit_words, all_terms, factor_valuations, one_variable_words, packed_tables,
    random_dnf, random_term, random_valuation, truth_table_valid,
)

CRITERIA = {
    1: "golden divergence corpus",
    2: "DNF reduction chain",
    3: "literal word completeness",
    4: "one-variable words",
    5: "classical cross-oracle",
    6: "factor tables vs brute force",
    7: "words-to-letters abstraction",
    8: "determinism",
}

MAX_EXAMPLES = 3
ENDS_WITH_A = "l0 + l0 (l0 + l1)* l0"


class SelfTestHarness:
    """kavc 수용 기준 검증 도구"""

    def __init__(self, seed: int = 0, verbose: bool = False, scale: float = 1.0):
        self.seed = seed
        self.verbose = verbose
        self.scale = scale
        self.results: List[Dict] = []

    def _log(self, message: str) -> None:
        if self.verbose:
            print(message, file=sys.stderr)

    def _count(self, full: int) -> int:
        return max(1, int(full * self.scale))

    def _record(self, number: int, checked: int, failures: List[str]) -> Dict:
        record = {
            'criterion': number,
            'name': CRITERIA[number],
            'checked': checked,
            'failures': len(failures),
            'examples': failures[:MAX_EXAMPLES],
            'passed': not failures,
        }
        self._log(f"  {'✅' if record['passed'] else '❌'} {checked} checks, {len(failures)} failures")
        return record

    # ---------- criteria ----------

    def run_golden_corpus(self) -> Dict:
        """Divergences between LANG and lang on four small queries"""
        self._log("🚀 [1] golden divergence corpus")
        x, y = Variable('x'), Variable('y')
        top = top_expansion({x, y})
        cases = [
            Query(Var(y), CVar(x), LEQ),
            parse_query("~x = ~x . ~x"),
            Query(top, Concat(CVar(x), CVar(y)), EQ),
            Query(top, Union(CVar(x), CVar(y)), EQ),
        ]
        failures = []
        for query in cases:
            verdicts = decide(query)
            if overall_status(verdicts) is not VerdictStatus.REFUTED:
                failures.append(f"{query}: expected a LANG refutation")
            for verdict in verdicts:
                if verdict.refuted and not verify_counterexample(verdict.lhs, verdict.rhs, verdict.counterexample):
                    failures.append(f"{query}: counterexample does not verify")
            declared = variables(query.lhs) | variables(query.rhs)
            a, b = nfa_over_v(query.lhs, declared), nfa_over_v(query.rhs, declared)
            related = lang_incl(a, b)[0] if query.relation == LEQ else lang_equivalence(a, b)[0]
            if not related:
                failures.append(f"{query}: expected lang to relate the two sides")
        return self._record(1, len(cases), failures)

    def run_reduction_chain(self, count: int = 200) -> Dict:
        """Truth-table validity against the identity, fresh-variable and universality forms"""
        self._log("🚀 [2] DNF reduction chain")
        rng = random.Random(self.seed)
        failures = []
        count = self._count(count)
        for _ in range(count):
            phi = random_dnf(rng)
            t = dnf_to_term(phi)
            expected = truth_table_valid(phi)
            identity = decide_identity_inclusion(t).valid
            fresh = decide_composition_free_inclusion(*fresh_variable_form(t)).valid
            universal = decide_universality(Concat(top_expansion(variables(t)), t)).valid
            if not expected == identity == fresh == universal:
                failures.append(f"{print_term(t)}: truth table {expected}, identity {identity}, "
                                f"fresh {fresh}, universality {universal}")
        return self._record(2, count, failures)

    def run_word_completeness(self, max_len: int = 3) -> Dict:
        """Distinct literal words are never LANG-equal and always separable"""
        self._log("🚀 [3] literal word completeness")
        words = all_lit_words(('x', 'y'), max_len)
        failures = []
        checked = 0
        for w1 in words:
            for w2 in words:
                checked += 1
                verdicts = decide(Query(w1.to_term(), w2.to_term(), EQ))
                valid = overall_status(verdicts) is VerdictStatus.VALID
                if valid != (w1 == w2):
                    failures.append(f"{w1} = {w2}: verdict {'valid' if valid else 'refuted'}")
                try:
                    sep = separate_words(w1, w2)
                except RuntimeError as e:
                    failures.append(f"{w1} vs {w2}: {e}")
                    continue
                if (sep is None) != (w1 == w2) or (sep is not None and not sep.verified()):
                    failures.append(f"{w1} vs {w2}: separator missing or unverified")
        return self._record(3, checked, failures)

    def run_one_variable(self, max_len: int = 5) -> Dict:
        """Literal counts over one letter, syntactic equality over two"""
        self._log("🚀 [4] one-variable words")
        words = one_variable_words(max_len)
        failures = []
        checked = 0
        for w1 in words:
            for w2 in words:
                checked += 1
                verdict, _ = lang1_decide(w1, w2)
                same_counts = literal_counts(w1) == literal_counts(w2)
                if verdict.valid != same_counts:
                    failures.append(f"lang1 {w1} vs {w2}: {verdict.status.value}")
                if same_counts:
                    sep = lang2_separate(w1, w2)
                    if (sep is None) != (w1 == w2):
                        failures.append(f"lang2 {w1} vs {w2}: equality mismatch")
                    elif sep is not None and (sep.valuation.alphabet_size != 2 or not sep.verified()):
                        failures.append(f"lang2 {w1} vs {w2}: witness does not verify")
        return self._record(4, checked, failures)

    def run_cross_oracle(self, count: int = 300, bound: int = 6) -> Dict:
        """Automata lang-equivalence against the equational decision on complement-free pairs"""
        self._log("🚀 [5] classical cross-oracle")
        rng = random.Random(self.seed + 5)
        failures = []
        count = self._count(count)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            for _ in range(count):
                t1 = random_term(rng, rng.randint(1, 8), complement=False)
                t2 = random_term(rng, rng.randint(1, 8), complement=False)
                equal = ka_lang_decide(t1, t2)
                complete = []
                for lhs, rhs in ((t1, t2), (t2, t1)):
                    included = vprime_included(lhs, rhs)
                    if is_star_free(lhs):
                        verdict = decide_inequation(lhs, rhs)
                        complete.append(verdict.valid)
                        if verdict.valid != included:
                            failures.append(f"{print_term(lhs)} <= {print_term(rhs)}: decision {verdict.status.value}, "
                                            f"automata {included}")
                    elif included and refute_bounded(lhs, rhs, bound).refuted:
                        failures.append(f"{print_term(lhs)} <= {print_term(rhs)}: bounded refuter refuted a lang inclusion")
                if len(complete) == 2 and all(complete) != equal:
                    failures.append(f"{print_term(t1)} = {print_term(t2)}: automata equivalence {equal}")
        return self._record(5, count, failures)

    def run_evaluator(self, max_size: int = 6, max_alphabet: int = 2) -> Dict:
        """Factor tables against brute-force languages: every small term under every factor-set valuation"""
        self._log("🚀 [6] factor tables vs brute force")
        corpus = all_terms(max_size)
        names = [Variable('x'), Variable('y')]
        failures = []
        checked = 0
        for n in range(max_alphabet + 1):
            valuations = list(factor_valuations(names, n))
            evaluator = FactorEvaluator(n)
            tables = evaluator.corpus_tables(corpus, evaluator.stacked_leaves(valuations, names))
            masks = LanguageMasks(n)
            leaves = {var: [masks.leaf(v.spec(var)) for v in valuations] for var in names}
            languages = masks.corpus_languages(corpus, leaves, len(valuations))
            for t in corpus:
                got = packed_tables(tables[t], len(valuations))
                want = np.array([masks.pattern[m] for m in languages[t]], dtype=np.int64)
                for k in np.flatnonzero(got != want):
                    diff = int(got[k] ^ want[k])
                    i, j = divmod((diff & -diff).bit_length() - 1, n + 1)
                    failures.append(f"{print_term(t)} under {valuations[k]!r}: factor {(i, j)}")
                checked += len(valuations)
            self._log(f"  📐 n={n}: {len(corpus)} terms x {len(valuations)} valuations")
        return self._record(6, checked, failures)

    def run_abstraction(self, count: int = 10000) -> Dict:
        """A factor in the words-to-letters reading implies its concatenation in the original"""
        self._log("🚀 [7] words-to-letters abstraction")
        rng = random.Random(self.seed + 7)
        names = [Variable('x'), Variable('y')]
        failures = []
        count = self._count(count)
        for _ in range(count):
            t = random_term(rng, rng.randint(1, 6), names=('x', 'y'))
            v = random_valuation(rng, names, 2, 3, regex_sources=[ENDS_WITH_A])
            parts = [tuple(rng.randrange(2) for _ in range(rng.randint(0, 2)))
                     for _ in range(rng.randint(0, 3))]
            table = eval_factors(t, words_to_letters(v, parts)).table()
            for i in range(len(parts) + 1):
                for j in range(i, len(parts) + 1):
                    if table[i, j]:
                        joined = tuple(letter for part in parts[i:j] for letter in part)
                        if not member(joined, t, v):
                            failures.append(f"{print_term(t)}, parts {parts}: factor ({i}, {j})")
        return self._record(7, count, failures)

    def run_determinism(self) -> Dict:
        """Same seed, same bytes"""
        self._log("🚀 [8] determinism")
        failures = []
        reruns: List[Callable[[], Dict]] = [
            self.run_golden_corpus,
            lambda: self.run_reduction_chain(40),
            lambda: self.run_cross_oracle(30, 4),
        ]
        for rerun in reruns:
            first, second = dump_json(rerun()), dump_json(rerun())
            if first != second:
                failures.append(f"report changed between runs: {first[:60]!r}")
        for text in ("~x = ~x . ~x", "x + ~x = y + ~y", "x . y <= x . (y + ~y)"):
            query = parse_query(text)
            if decision_text(query, decide(query)) != decision_text(query, decide(query)):
                failures.append(f"{text}: decision report changed between runs")
        return self._record(8, len(reruns) + 3, failures)

    # ---------- driver ----------

    def run(self, criteria: Optional[Sequence[int]] = None) -> List[Dict]:
        runners = {
            1: self.run_golden_corpus,
            2: self.run_reduction_chain,
            3: self.run_word_completeness,
            4: self.run_one_variable,
            5: self.run_cross_oracle,
            6: self.run_evaluator,
            7: self.run_abstraction,
            8: self.run_determinism,
        }
        selected = sorted(criteria) if criteria else sorted(runners)
        for number in selected:
            if number not in runners:
                raise ValueError(f"unknown criterion {number}; choose from 1-{len(runners)}")
        self.results = [runners[number]() for number in selected]
        return self.results

    def all_passed(self) -> bool:
        return all(record['passed'] for record in self.results)

    def generate_report(self, as_json: bool = False) -> str:
        if as_json:
            return dump_json({'seed': self.seed, 'criteria': self.results, 'passed': self.all_passed()})
        table = PrettyTable(['#', 'criterion', 'checks', 'failures', 'status'])
        table.align['criterion'] = 'l'
        for record in self.results:
            table.add_row([record['criterion'], record['name'], record['checked'],
                           record['failures'], 'PASS' if record['passed'] else 'FAIL'])
        lines = [f"kavc selftest (seed {self.seed})", table.get_string()]
        for record in self.results:
            for example in record['examples']:
                lines.append(f"  [{record['criterion']}] {example}")
        lines.append("result: " + ("all criteria passed" if self.all_passed() else "FAILED"))
        return "\n".join(lines)


def parse_criteria(text: Optional[str]) -> Optional[List[int]]:
    if not text:
        return None
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise ValueError(f"criteria must be a comma-separated list of numbers, got {text!r}") from None


if __name__ == "__main__":
    harness = SelfTestHarness(verbose=True)
    harness.run()
    print(harness.generate_report())
    sys.exit(0 if harness.all_passed() else 1)
