# test_selftest.py
import random
import unittest
from unittest import mock

from evaluation import FactorEvaluator
from selftest import SelfTestHarness
from terms import Variable
from utils import LanguageMasks, all_terms, naive_language, random_term, random_valuation

x, y = Variable('x'), Variable('y')

# factor-set valuations of x and y over 0, 1 and 2 letters
VALUATIONS_PER_TERM = 4 + 16 + 256


class TestLanguageMasks(unittest.TestCase):
    """Bitmask languages against the set-based brute force"""

    def test_star_of_single_letter(self):
        masks = LanguageMasks(2)
        self.assertEqual(masks.words(masks.star[masks.bit((0,))]), [(), (0,), (0, 0)])

    def test_matches_naive_language(self):
        rng = random.Random(2)
        for n in range(3):
            masks = LanguageMasks(n)
            corpus = [random_term(rng, rng.randint(1, 6), names=('x', 'y')) for _ in range(30)]
            valuations = [random_valuation(rng, [x, y], n, n) for _ in range(5)]
            leaves = {var: [masks.leaf(v.spec(var)) for v in valuations] for var in (x, y)}
            languages = masks.corpus_languages(corpus, leaves, len(valuations))
            for t in corpus:
                for k, v in enumerate(valuations):
                    self.assertEqual(set(masks.words(languages[t][k])), set(naive_language(t, v, n)))


class TestFactorTableCriterion(unittest.TestCase):
    """Criterion 6 checks the whole small-term corpus"""

    def test_every_small_term(self):
        record = SelfTestHarness().run_evaluator(max_size=3)
        self.assertTrue(record['passed'], record['examples'])
        self.assertEqual(record['checked'], len(all_terms(3)) * VALUATIONS_PER_TERM)

    def test_default_covers_size_six(self):
        record = SelfTestHarness().run_evaluator()
        self.assertTrue(record['passed'], record['examples'])
        self.assertEqual(record['checked'], len(all_terms(6)) * VALUATIONS_PER_TERM)

    def test_detects_wrong_star(self):
        with mock.patch.object(FactorEvaluator, 'closure', lambda self, a: a | self.eye):
            record = SelfTestHarness().run_evaluator(max_size=2)
        self.assertFalse(record['passed'])
        self.assertTrue(all('*' in example for example in record['examples']))


if __name__ == '__main__':
    unittest.main()
