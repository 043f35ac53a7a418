# test_evaluation.py
import random
import unittest

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from evaluation import (
    Factor, FactorEvaluator, FiniteWords, LetterRangeError, RegexLanguage, Valuation, eval_factors,
    factor_words, letter_text, member, valuation_from_json, valuation_to_json, word_in_spec,
    word_to_letter, words_to_letters,
)
from letter_regex import parse_regex
from strategies import factor_valuations, terms
from term_parser import TermSyntaxError, parse
from terms import Variable, lang_vprime_finite
from utils import factor_valuations as every_factor_valuation
from utils import first_disagreement, random_term, random_valuation, star_splits, words_up_to

x, y, z = Variable('x'), Variable('y'), Variable('z')

A_ENDS = "l0 + l0 (l0 + l1)* l0"


class TestLeafLanguages(unittest.TestCase):
    """Finite and regular leaf languages"""

    def test_regex_membership(self):
        spec = RegexLanguage(A_ENDS)
        self.assertTrue(word_in_spec((0,), spec, 2))
        self.assertTrue(word_in_spec((0, 1, 1, 0), spec, 2))
        self.assertFalse(word_in_spec((0, 1), spec, 2))
        self.assertFalse(word_in_spec((), spec, 2))

    def test_empty_finite_language(self):
        self.assertFalse(word_in_spec((), FiniteWords(), 0))

    def test_letter_out_of_range(self):
        with self.assertRaises(LetterRangeError):
            word_in_spec((2,), FiniteWords(), alphabet_size=2)
        with self.assertRaises(LetterRangeError):
            word_in_spec((0, 1), RegexLanguage(A_ENDS), 1)
        with self.assertRaises(LetterRangeError):
            word_in_spec((-1,), FiniteWords(), 3)

    def test_alphabet_size_required(self):
        with self.assertRaises(TypeError):
            word_in_spec((0,), FiniteWords())

    def test_regex_forms(self):
        self.assertEqual(parse_regex("l0 l1"), parse_regex("l0 . l1"))
        self.assertTrue(RegexLanguage("1 + l0 l0 l0*").contains(()))
        self.assertFalse(RegexLanguage("1 + l0 l0 l0*").contains((0,)))
        self.assertFalse(RegexLanguage("0").contains(()))
        self.assertEqual(RegexLanguage("l3* + l1").max_letter(), 3)

    def test_regex_syntax_error(self):
        with self.assertRaises(TermSyntaxError):
            RegexLanguage("l0 + + l1")

    def test_finite_words_normalised(self):
        self.assertEqual(FiniteWords(frozenset({(0, 1), ()})).sorted_words(), [(), (0, 1)])
        self.assertEqual(FiniteWords([[0]]), FiniteWords(frozenset({(0,)})))


class TestValuation(unittest.TestCase):
    """Valuation construction and JSON records"""

    def test_missing_variable_is_empty(self):
        v = Valuation(1, {x: FiniteWords(frozenset({(0,)}))})
        self.assertFalse(v.spec(y).contains(()))
        self.assertEqual(v.variables(), [x])

    def test_letter_outside_alphabet(self):
        with self.assertRaises(LetterRangeError):
            Valuation(1, {x: FiniteWords(frozenset({(1,)}))})
        with self.assertRaises(ValueError):
            Valuation(-1)

    def test_json_record(self):
        v = Valuation(2, {y: RegexLanguage(A_ENDS), x: FiniteWords(frozenset({(), (1, 0)}))})
        record = valuation_to_json(v)
        self.assertEqual(record, {
            "alphabet": 2,
            "assignment": {
                "x": {"kind": "finite", "words": [[], [1, 0]]},
                "y": {"kind": "regex", "expr": A_ENDS},
            },
        })
        self.assertEqual(valuation_from_json(record), v)

    def test_malformed_json_record(self):
        with self.assertRaises(ValueError):
            valuation_from_json({"assignment": {}})
        with self.assertRaises(ValueError):
            valuation_from_json({"alphabet": 1, "assignment": {"x": {"kind": "cofinite"}}})

    def test_letter_text(self):
        self.assertEqual(letter_text((0, 1)), "l0 l1")
        self.assertEqual(letter_text(()), "1")


class TestFactorTables(unittest.TestCase):
    """Factor-table evaluation"""

    def test_complement_table(self):
        v = Valuation(1, {x: FiniteWords(frozenset({()}))})
        table = eval_factors(parse("~x"), v)
        self.assertTrue(table.contains(Factor(0, 1)))
        self.assertFalse(table.contains(Factor(0, 0)))

    def test_identity_table(self):
        table = eval_factors(parse("1"), Valuation(2)).table()
        np.testing.assert_array_equal(table, np.eye(3, dtype=bool))

    def test_star_table(self):
        v = Valuation(2, {x: FiniteWords(frozenset({(0,), (1,)}))})
        table = eval_factors(parse("x*"), v)
        self.assertTrue(table.contains(Factor(0, 2)))
        self.assertTrue(table.contains(Factor(1, 1)))

    def test_subterm_lookup(self):
        t = parse("x . ~x")
        v = Valuation(1, {x: FiniteWords(frozenset({(0,)}))})
        table = eval_factors(t, v)
        self.assertTrue(table[parse("x"), Factor(0, 1)])
        self.assertTrue(table[parse("~x"), Factor(1, 1)])
        self.assertTrue(table.contains(Factor(0, 1)))
        with self.assertRaises(IndexError):
            table[t, Factor(1, 0)]

    def test_tables_are_frozen(self):
        table = eval_factors(parse("x"), Valuation(1)).table()
        with self.assertRaises(ValueError):
            table[0, 0] = True

    def test_bounds_enclose_exact_tables(self):
        evaluator = FactorEvaluator(2)
        t = parse("(x . ~y)* + ~x . y")
        lower = {x: evaluator.zeros.copy(), y: evaluator.zeros.copy()}
        upper = {x: evaluator.upper.copy(), y: evaluator.upper.copy()}
        lower[x][0, 1] = upper[y][1, 2] = False
        upper[x][0, 0] = False
        lower[y][0, 2] = True
        lo, hi = evaluator.bounds(t, lower, upper)
        for leaves in ({x: lower[x], y: lower[y]}, {x: upper[x], y: upper[y]}, {x: lower[x], y: upper[y]}):
            exact = evaluator.evaluate(t, leaves)
            self.assertFalse(np.any(lo & ~exact))
            self.assertFalse(np.any(exact & ~hi))

    def test_star_closure_matches_split_chains(self):
        evaluator = FactorEvaluator(3)
        body = evaluator.zeros.copy()
        body[0, 1] = body[1, 3] = body[2, 2] = True
        closure = evaluator.closure(body)
        for i in range(4):
            for j in range(i, 4):
                self.assertEqual(bool(closure[i, j]), star_splits(body, i, j))

    @settings(max_examples=150, deadline=None)
    @given(terms(names=('x', 'y'), max_leaves=8), factor_valuations())
    def test_tables_match_brute_force(self, t, v):
        self.assertIsNone(first_disagreement(t, v))

    @settings(max_examples=150, deadline=None)
    @given(terms(names=('x', 'y'), max_leaves=8), factor_valuations(), st.data())
    def test_identity_entries_follow_empty_word(self, t, v, data):
        nonempty = [w for w in factor_words(v.alphabet_size) if w]
        moved = {}
        for var in (x, y):
            kept = {()} & v.spec(var).words
            redrawn = data.draw(st.sets(st.sampled_from(nonempty))) if nonempty else set()
            moved[var] = FiniteWords(frozenset(kept | redrawn))
        before = np.diagonal(eval_factors(t, v).table())
        after = np.diagonal(eval_factors(t, Valuation(v.alphabet_size, moved)).table())
        np.testing.assert_array_equal(before, after)

    def test_corpus_tables_match_single_evaluation(self):
        rng = random.Random(3)
        corpus = [random_term(rng, rng.randint(1, 6), names=('x', 'y')) for _ in range(40)]
        for n in range(3):
            valuations = rng.sample(list(every_factor_valuation([x, y], n)), 4)
            evaluator = FactorEvaluator(n)
            tables = evaluator.corpus_tables(corpus, evaluator.stacked_leaves(valuations, [x, y]))
            for t in corpus:
                batch = np.broadcast_to(tables[t], (len(valuations), n + 1, n + 1))
                for k, v in enumerate(valuations):
                    np.testing.assert_array_equal(batch[k], eval_factors(t, v).table())


class TestMember(unittest.TestCase):
    """Word membership under a valuation"""

    def setUp(self):
        self.v = Valuation(2, {z: RegexLanguage(A_ENDS)})

    def test_separating_word(self):
        self.assertTrue(member((0, 1, 0), parse("z . ~z . z"), self.v))
        self.assertFalse(member((0, 1, 0), parse("z . z . ~z"), self.v))

    def test_identity(self):
        self.assertTrue(member((), parse("1"), self.v))
        self.assertFalse(member((), parse("z"), self.v))

    def test_letter_out_of_range(self):
        with self.assertRaises(LetterRangeError):
            member((2,), parse("z"), self.v)

    def test_agrees_with_prefix_tables(self):
        rng = random.Random(11)
        for _ in range(100):
            t = random_term(rng, rng.randint(1, 7), names=('x', 'y'))
            v = random_valuation(rng, [x, y], 2, 2)
            table = eval_factors(t, v)
            self.assertEqual(table.contains(Factor(0, 2)), member((0, 1), t, v))


class TestDecomposition(unittest.TestCase):
    """Star-free terms read as the union of their literal words"""

    @settings(max_examples=60, deadline=None)
    @given(terms(names=('x', 'y'), star=False, max_leaves=6), st.integers(min_value=0, max_value=2 ** 32 - 1))
    def test_member_splits_over_words(self, t, seed):
        v = random_valuation(random.Random(seed), [x, y], 2, 3)
        words = lang_vprime_finite(t)
        for w in words_up_to(2, 4):
            expected = any(member(w, u.to_term(), v) for u in words)
            self.assertEqual(member(w, t, v), expected, w)


class TestWordsToLetters(unittest.TestCase):
    """Abstraction of word valuations to letter valuations"""

    def test_no_parts(self):
        v = Valuation(1, {x: FiniteWords(frozenset({(), (0,)})), y: FiniteWords(frozenset({(0,)}))})
        abstract = words_to_letters(v, [])
        self.assertEqual(abstract, Valuation(0, {x: FiniteWords(frozenset({()})), y: FiniteWords()}))

    def test_single_letter_factors(self):
        v = Valuation(1, {x: FiniteWords(frozenset({(0,)}))})
        abstract = words_to_letters(v, [(0,), (0,)])
        self.assertEqual(abstract.spec(x), FiniteWords(frozenset({(0,), (1,)})))

    def test_joined_factor(self):
        v = Valuation(1, {x: FiniteWords(frozenset({(0, 0)}))})
        abstract = words_to_letters(v, [(0,), (0,)])
        self.assertEqual(abstract.spec(x), FiniteWords(frozenset({(0, 1)})))

    def test_word_to_letter(self):
        v = Valuation(2, {x: RegexLanguage(A_ENDS)})
        self.assertEqual(word_to_letter(v, (0, 1, 0)).spec(x), FiniteWords(frozenset({(0,)})))

    def test_factor_words(self):
        self.assertEqual(list(factor_words(2)), [(), (0,), (0, 1), (1,)])

    def test_abstraction_preserves_membership(self):
        rng = random.Random(5)
        for _ in range(300):
            t = random_term(rng, rng.randint(1, 6), names=('x', 'y'))
            v = random_valuation(rng, [x, y], 2, 3, regex_sources=[A_ENDS])
            parts = [tuple(rng.randrange(2) for _ in range(rng.randint(0, 2))) for _ in range(rng.randint(0, 3))]
            table = eval_factors(t, words_to_letters(v, parts)).table()
            for i in range(len(parts) + 1):
                for j in range(i, len(parts) + 1):
                    if table[i, j]:
                        joined = tuple(letter for part in parts[i:j] for letter in part)
                        self.assertTrue(member(joined, t, v))


if __name__ == '__main__':
    unittest.main()
