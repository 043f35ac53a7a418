# strategies.py
"""hypothesis strategies for terms, literal words and valuations"""

from hypothesis import strategies as st

from evaluation import FiniteWords, Valuation, factor_words
from terms import (
    ONE, ZERO, Concat, CVar, Literal, LitWord, Polarity, Star, Union, Var, Variable,
)

NAMES = ('x', 'y', 'z', '_t0', 'long_name1')


def variables_(names=NAMES):
    return st.sampled_from(names).map(Variable)


def leaves(names=NAMES, complement=True):
    options = [variables_(names).map(Var), st.just(ONE), st.just(ZERO)]
    if complement:
        options.append(variables_(names).map(CVar))
    return st.one_of(*options)


def terms(names=NAMES, complement=True, star=True, max_leaves=12):
    def extend(children):
        options = [
            st.builds(Union, children, children),
            st.builds(Concat, children, children),
        ]
        if star:
            options.append(children.map(Star))
        return st.one_of(*options)

    return st.recursive(leaves(names, complement), extend, max_leaves=max_leaves)


def literals(names=('x', 'y')):
    return st.builds(Literal, variables_(names), st.sampled_from(list(Polarity)))


def lit_words(names=('x', 'y'), max_len=4):
    return st.lists(literals(names), max_size=max_len).map(lambda ls: LitWord(tuple(ls)))


def factor_valuations(names=('x', 'y'), max_alphabet=2):
    """Valuations whose languages are sets of factors of l_0 ... l_{n-1}"""
    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=0, max_value=max_alphabet))
        words = list(factor_words(n))
        assignment = {}
        for name in names:
            chosen = draw(st.sets(st.sampled_from(words)))
            assignment[Variable(name)] = FiniteWords(frozenset(chosen))
        return Valuation(n, assignment)

    return build()
