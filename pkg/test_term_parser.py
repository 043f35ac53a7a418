# test_term_parser.py
import unittest

from hypothesis import given

from strategies import terms
from term_parser import (
    EQ, LEQ, Query, TermSyntaxError, format_dnf, parse, parse_dnf, parse_query, print_term,
)
from terms import ONE, ZERO, Concat, CVar, DnfFormula, PropLiteral, Star, Union, Var, Variable

x, y = Variable('x'), Variable('y')


class TestParse(unittest.TestCase):
    """Term grammar"""

    def test_literals(self):
        self.assertEqual(parse("~x . ~x"), Concat(CVar(x), CVar(x)))
        self.assertEqual(parse("1"), ONE)
        self.assertEqual(parse("0"), ZERO)

    def test_precedence(self):
        self.assertEqual(parse("x + y . x*"), Union(Var(x), Concat(Var(y), Star(Var(x)))))
        self.assertEqual(parse("(x + y)*"), Star(Union(Var(x), Var(y))))
        self.assertEqual(parse("x**"), Star(Star(Var(x))))

    def test_left_association(self):
        self.assertEqual(parse("x + y + x"), Union(Union(Var(x), Var(y)), Var(x)))
        self.assertEqual(parse("x . y . x"), Concat(Concat(Var(x), Var(y)), Var(x)))

    def test_long_names(self):
        self.assertEqual(parse("~long_name1 . _t0"),
                         Concat(CVar(Variable('long_name1')), Var(Variable('_t0'))))

    def test_complement_of_compound_rejected(self):
        with self.assertRaises(TermSyntaxError) as ctx:
            parse("~(x + y)")
        self.assertIn("complement", ctx.exception.message)
        self.assertEqual((ctx.exception.line, ctx.exception.column), (1, 2))

    def test_double_complement_rejected(self):
        with self.assertRaises(TermSyntaxError) as ctx:
            parse("~~x")
        self.assertIn("complement", ctx.exception.message)

    def test_error_position(self):
        with self.assertRaises(TermSyntaxError) as ctx:
            parse("x +\n  . y")
        self.assertEqual(ctx.exception.line, 2)
        self.assertEqual(ctx.exception.column, 3)
        self.assertTrue(str(ctx.exception).startswith("line 2, column 3"))

    def test_end_of_input(self):
        with self.assertRaises(TermSyntaxError) as ctx:
            parse("x .")
        self.assertEqual(ctx.exception.line, 1)

    def test_bad_character(self):
        with self.assertRaises(TermSyntaxError):
            parse("x & y")

    def test_syntax_error_is_value_error(self):
        self.assertTrue(issubclass(TermSyntaxError, ValueError))


class TestPrint(unittest.TestCase):
    """Canonical printing"""

    def test_examples(self):
        self.assertEqual(print_term(Concat(CVar(x), CVar(x))), "~x . ~x")
        self.assertEqual(print_term(ONE), "1")
        self.assertEqual(print_term(Union(Var(x), CVar(x))), "x + ~x")

    def test_minimal_parentheses(self):
        self.assertEqual(print_term(parse("(x . y) + z")), "x . y + z")
        self.assertEqual(print_term(parse("x + (y + z)")), "x + (y + z)")
        self.assertEqual(print_term(parse("(x + y) . z")), "(x + y) . z")
        self.assertEqual(print_term(parse("x . (y . z)")), "x . (y . z)")
        self.assertEqual(print_term(parse("(x . y)*")), "(x . y)*")

    @given(terms())
    def test_round_trip(self, t):
        self.assertEqual(parse(print_term(t)), t)


class TestQuery(unittest.TestCase):
    """Inequation and equation queries"""

    def test_inequation(self):
        query = parse_query("y <= ~x")
        self.assertEqual(query, Query(Var(y), CVar(x), LEQ))
        self.assertEqual(query.inequations(), [(Var(y), CVar(x))])

    def test_equation_has_two_directions(self):
        query = parse_query("~x = ~x . ~x")
        self.assertEqual(query.relation, EQ)
        lhs, rhs = CVar(x), Concat(CVar(x), CVar(x))
        self.assertEqual(query.inequations(), [(lhs, rhs), (rhs, lhs)])

    def test_text(self):
        self.assertEqual(str(parse_query("x+~x=y+~y")), "x + ~x = y + ~y")

    def test_missing_relation(self):
        with self.assertRaises(TermSyntaxError):
            parse_query("x + y")


class TestDnfText(unittest.TestCase):
    """Line-based DNF input"""

    def test_parse(self):
        text = "# valid formula\nx & !y\n\ny\n!x   # last clause\n"
        phi = parse_dnf(text)
        self.assertEqual(phi, DnfFormula((
            (PropLiteral('x'), PropLiteral('y', positive=False)),
            (PropLiteral('y'),),
            (PropLiteral('x', positive=False),),
        )))

    def test_empty_clause(self):
        self.assertEqual(parse_dnf("1\n"), DnfFormula(((),)))

    def test_format_round_trip(self):
        phi = parse_dnf("p & !q\n1\nr\n")
        self.assertEqual(format_dnf(phi), "p & !q\n1\nr\n")
        self.assertEqual(parse_dnf(format_dnf(phi)), phi)

    def test_error_line(self):
        with self.assertRaises(TermSyntaxError) as ctx:
            parse_dnf("x & y\nx & & y\n")
        self.assertEqual(ctx.exception.line, 2)


if __name__ == '__main__':
    unittest.main()
