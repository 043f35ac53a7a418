# test_terms.py
import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from strategies import lit_words, terms
from term_parser import parse
from terms import (
    ONE, ZERO, Concat, CVar, DnfFormula, FragmentError, Literal, LitWord, Polarity, PropLiteral,
    Star, Union, Var, Variable, dnf_to_term, fresh_variable, is_composition_free, is_star_free,
    lang_vprime_enumerate, lang_vprime_finite, max_word_length, term_size, term_to_lit_word,
    top_expansion, variables, vprime_derivative, vprime_nullable, word_order,
)
from utils import all_lit_words

x, y, z = Variable('x'), Variable('y'), Variable('z')


def lw(text):
    return term_to_lit_word(parse(text))


class TestStructure(unittest.TestCase):
    """Structural queries on terms"""

    def test_size(self):
        self.assertEqual(term_size(parse("x . ~y + z*")), 6)
        self.assertEqual(term_size(ONE), 1)

    def test_variables(self):
        self.assertEqual(variables(parse("x + ~x")), {x})
        self.assertEqual(variables(parse("(x . ~y) + (y + ~x)")), {x, y})
        self.assertEqual(variables(ONE), frozenset())

    def test_fragments(self):
        t = parse("x . ~y")
        self.assertTrue(is_star_free(t))
        self.assertFalse(is_composition_free(t))
        t = parse("x + ~x")
        self.assertTrue(is_star_free(t))
        self.assertTrue(is_composition_free(t))
        t = parse("(x)*")
        self.assertFalse(is_star_free(t))
        self.assertFalse(is_composition_free(t))

    def test_empty_variable_name_rejected(self):
        with self.assertRaises(ValueError):
            Variable('')

    def test_lit_word_term(self):
        word = LitWord((Literal(x), Literal(y, Polarity.NEGATIVE), Literal(z)))
        self.assertEqual(word.to_term(), Concat(Concat(Var(x), CVar(y)), Var(z)))
        self.assertEqual(LitWord().to_term(), ONE)
        self.assertEqual(str(word), "x . ~y . z")
        self.assertEqual(str(LitWord()), "1")

    def test_term_to_lit_word(self):
        self.assertEqual(lw("x . (~y . z)"), lw("(x . ~y) . z"))
        self.assertEqual(lw("1"), LitWord())
        self.assertEqual(lw("x . 1 . ~x"), lw("x . ~x"))
        self.assertIsNone(term_to_lit_word(parse("x + y")))
        self.assertIsNone(term_to_lit_word(parse("x*")))
        self.assertIsNone(term_to_lit_word(ZERO))

    def test_word_order(self):
        words = all_lit_words(('x', 'y'), 2)
        self.assertEqual(words, sorted(words, key=word_order))
        self.assertEqual(len(words), 1 + 4 + 16)
        self.assertEqual(words[1], lw("x"))
        self.assertEqual(words[2], lw("~x"))


class TestFreshNames(unittest.TestCase):
    """Fresh-variable scheme and the expansion of T"""

    def test_first_name(self):
        self.assertEqual(fresh_variable([]), Variable('_t0'))

    def test_avoids_taken_names(self):
        self.assertEqual(fresh_variable([Variable('_t0'), Variable('_t1')]), Variable('_t2'))
        self.assertEqual(fresh_variable([x]), Variable('_t0'))

    def test_top_is_deterministic(self):
        top = top_expansion({x})
        self.assertEqual(top, Union(Var(Variable('_t0')), CVar(Variable('_t0'))))
        self.assertEqual(top, top_expansion({x}))
        self.assertNotIn(x, variables(top))


class TestVprimeLanguage(unittest.TestCase):
    """Languages of terms read as plain regular expressions over literals"""

    def test_finite_words(self):
        self.assertEqual(lang_vprime_finite(parse("x . ~y")), {lw("x . ~y")})
        self.assertEqual(lang_vprime_finite(parse("(x + ~x) . y")), {lw("x . y"), lw("~x . y")})
        self.assertEqual(lang_vprime_finite(ZERO), frozenset())

    def test_finite_words_rejects_star(self):
        with self.assertRaises(FragmentError):
            lang_vprime_finite(parse("x*"))

    def test_enumerate_star(self):
        words = list(lang_vprime_enumerate(parse("(x)*"), 2))
        self.assertEqual(words, [LitWord(), lw("x"), lw("x . x")])

    def test_enumerate_too_long(self):
        self.assertEqual(list(lang_vprime_enumerate(parse("x . ~x"), 1)), [])

    def test_enumerate_deduplicates(self):
        self.assertEqual(list(lang_vprime_enumerate(parse("x + x"), 1)), [lw("x")])

    def test_enumerate_negative_bound(self):
        with self.assertRaises(ValueError):
            list(lang_vprime_enumerate(ONE, -1))

    def test_derivative(self):
        residual = vprime_derivative(parse("x . ~y + x"), Literal(x))
        self.assertEqual(lang_vprime_finite(residual), {lw("~y"), LitWord()})
        self.assertEqual(lang_vprime_finite(vprime_derivative(parse("x"), Literal(x, Polarity.NEGATIVE))), frozenset())
        self.assertEqual(lang_vprime_finite(vprime_derivative(parse("1 . ~x"), Literal(x, Polarity.NEGATIVE))), {LitWord()})

    @given(terms(names=('x', 'y'), star=False, max_leaves=8),
           st.sampled_from([Literal(x), Literal(x, Polarity.NEGATIVE), Literal(y)]))
    def test_derivative_strips_first_literal(self, t, lit):
        expected = {LitWord(w.literals[1:]) for w in lang_vprime_finite(t) if w.literals and w[0] == lit}
        self.assertEqual(lang_vprime_finite(vprime_derivative(t, lit)), expected)

    def test_max_word_length(self):
        self.assertEqual(max_word_length(parse("x . (y + 1)")), 2)
        self.assertIsNone(max_word_length(parse("x*")))
        self.assertEqual(max_word_length(parse("0*")), 0)
        self.assertEqual(max_word_length(parse("x . 0")), -1)

    def test_nullable(self):
        self.assertTrue(vprime_nullable(parse("x* . (1 + y)")))
        self.assertFalse(vprime_nullable(parse("~x")))

    @settings(max_examples=60, deadline=None)
    @given(terms(names=('x', 'y'), star=False, max_leaves=6))
    def test_enumeration_matches_finite_language(self, t):
        longest = max(max_word_length(t), 0)
        self.assertEqual(set(lang_vprime_enumerate(t, longest)), set(lang_vprime_finite(t)))

    @settings(max_examples=60, deadline=None)
    @given(terms(names=('x', 'y'), max_leaves=6), st.integers(min_value=0, max_value=3))
    def test_enumeration_sorted_and_unique(self, t, bound):
        words = list(lang_vprime_enumerate(t, bound))
        self.assertEqual(words, sorted(set(words), key=word_order))
        self.assertTrue(all(len(w) <= bound for w in words))

    @given(lit_words())
    def test_word_language_is_itself(self, word):
        self.assertEqual(lang_vprime_finite(word.to_term()), {word})


class TestDnf(unittest.TestCase):
    """Translation of DNF formulas"""

    def test_translation(self):
        phi = DnfFormula((
            (PropLiteral('x'), PropLiteral('y', positive=False)),
            (PropLiteral('y'),),
            (PropLiteral('x', positive=False),),
        ))
        self.assertEqual(dnf_to_term(phi), parse("(x . ~y) + (y + ~x)"))

    def test_single_literal(self):
        self.assertEqual(dnf_to_term(DnfFormula(((PropLiteral('x'),),))), Var(x))

    def test_excluded_middle(self):
        phi = DnfFormula(((PropLiteral('x'),), (PropLiteral('x', positive=False),)))
        self.assertEqual(dnf_to_term(phi), parse("x + ~x"))

    def test_empty_clause_and_formula(self):
        self.assertEqual(dnf_to_term(DnfFormula(((),))), ONE)
        self.assertEqual(dnf_to_term(DnfFormula(())), ZERO)

    def test_rejects_non_formula(self):
        with self.assertRaises(FragmentError):
            dnf_to_term("x | y")

    def test_star_stays_out_of_translation(self):
        phi = DnfFormula(((PropLiteral('p'), PropLiteral('q')), (PropLiteral('r'),)))
        t = dnf_to_term(phi)
        self.assertTrue(is_star_free(t))
        self.assertNotIsInstance(t, Star)


if __name__ == '__main__':
    unittest.main()
