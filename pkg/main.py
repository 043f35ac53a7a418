# main.py
import argparse
import sys
import warnings
from typing import List, Optional, Tuple

from classical import lang_equivalence, nfa_over_v, nfa_over_vprime, symbols_text
from decision import VerdictStatus, decide, fresh_variable_form, overall_status, universality_form
from kavc_config import CliConfig, SearchConfig
from reports import (
    decision_text, decision_to_json, dump_json, lang1_text, lang1_to_json, langeq_text,
    langeq_to_json, separation_text, separation_to_json,
)
from selftest import SelfTestHarness, parse_criteria
from separation import lang1_decide, lang2_separate, separate_words
from term_parser import LEQ, Query, TermSyntaxError, parse, parse_dnf, parse_query, print_term
from terms import ONE, FragmentError, LitWord, dnf_to_term, term_to_lit_word, variables

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_UNKNOWN = 2
EXIT_USAGE = 64
EXIT_INPUT = 65
EXIT_NO_INPUT = 66
EXIT_INTERNAL = 70

STATUS_EXIT = {
    VerdictStatus.VALID: EXIT_OK,
    VerdictStatus.REFUTED: EXIT_REFUTED,
    VerdictStatus.UNKNOWN: EXIT_UNKNOWN,
}


class KavcArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors on exit status 64"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class KavcPipeline:
    """Runs one kavc command and renders its report"""

    def __init__(self, config: CliConfig):
        self.config = config
        if config.verbose:
            config.search.print_config_info()

    def _log(self, message: str) -> None:
        if self.config.verbose:
            print(message, file=sys.stderr)

    def _render(self, payload, text: str) -> str:
        return dump_json(payload) if self.config.json else text

    def decide(self, text: str) -> Tuple[int, str]:
        query = parse_query(text)
        self._log(f"🚀 deciding {query}")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter('always')
            verdicts = decide(query, self.config.max_len, workers=self.config.search.workers,
                              complete_only=self.config.complete_only)
        for warning in caught:
            self._log(f"⚠️  {warning.message}")
        status = overall_status(verdicts)
        self._log(f"{'✅' if status is VerdictStatus.VALID else '❌'} {status.value}")
        return STATUS_EXIT[status], self._render(decision_to_json(query, verdicts),
                                                 decision_text(query, verdicts))

    def separate(self, first: str, second: str) -> Tuple[int, str]:
        sep = separate_words(literal_word(first), literal_word(second))
        return (EXIT_OK if sep is None else EXIT_REFUTED), \
            self._render(separation_to_json(sep), separation_text(sep))

    def lang1(self, first: str, second: str) -> Tuple[int, str]:
        verdict, sep = lang1_decide(literal_word(first), literal_word(second))
        return STATUS_EXIT[verdict.status], self._render(lang1_to_json(verdict, sep), lang1_text(verdict, sep))

    def lang2(self, first: str, second: str) -> Tuple[int, str]:
        sep = lang2_separate(literal_word(first), literal_word(second))
        return (EXIT_OK if sep is None else EXIT_REFUTED), \
            self._render(separation_to_json(sep), separation_text(sep))

    def langeq(self, first: str, second: str) -> Tuple[int, str]:
        t1, t2 = parse(first), parse(second)
        over = self.config.over
        if over == 'v':
            declared = variables(t1) | variables(t2)
            a, b = nfa_over_v(t1, declared), nfa_over_v(t2, declared)
        else:
            a, b = nfa_over_vprime(t1), nfa_over_vprime(t2)
        self._log(f"🔧 automata: {a.state_count} and {b.state_count} states over {over}")
        equivalent, word = lang_equivalence(a, b)
        separator = symbols_text(word)
        return (EXIT_OK if equivalent else EXIT_REFUTED), \
            self._render(langeq_to_json(equivalent, separator), langeq_text(equivalent, separator, over))

    def from_dnf(self, path: str) -> Tuple[int, str]:
        if path == '-':
            text = sys.stdin.read()
        else:
            with open(path, encoding='utf-8') as f:
                text = f.read()
        t = dnf_to_term(parse_dnf(text))
        forms = {
            "term": print_term(t),
            "identity": str(Query(ONE, t, LEQ)),
            "variable": str(Query(*fresh_variable_form(t), LEQ)),
            "universality": str(Query(*universality_form(t), LEQ)),
        }
        lines = [f"{key}: {value}" for key, value in forms.items()]
        return EXIT_OK, self._render(forms, "\n".join(lines))

    def selftest(self, criteria: Optional[str]) -> Tuple[int, str]:
        harness = SelfTestHarness(seed=self.config.seed, verbose=self.config.verbose)
        harness.run(parse_criteria(criteria))
        return (EXIT_OK if harness.all_passed() else EXIT_REFUTED), \
            harness.generate_report(as_json=self.config.json)


def literal_word(text: str) -> LitWord:
    word = term_to_lit_word(parse(text))
    if word is None:
        raise FragmentError(f"{text!r} is not a literal word (use only variables, ~variables, '.' and 1)")
    return word


def build_parser() -> KavcArgumentParser:
    common = KavcArgumentParser(add_help=False)
    common.add_argument('--max-witness-len', type=int, default=None, metavar='N',
                        help='Word length bound for the bounded refuter (default 8)')
    common.add_argument('--json', action='store_true', help='Emit JSON instead of text')
    common.add_argument('--seed', type=int, default=None, help='Seed for randomized selftest corpora (default 0)')
    common.add_argument('--workers', default=None, help="Worker threads, or 'auto' (default 1)")
    common.add_argument('--over', choices=['vprime', 'v'], default='vprime',
                        help='Alphabet reading for langeq (default vprime)')
    common.add_argument('-v', '--verbose', action='store_true', help='Status lines on stderr')

    parser = KavcArgumentParser(prog='kavc', description='Kleene algebra with variable complements: '
                                'decision procedures over language models')
    commands = parser.add_subparsers(dest='command', metavar='command')
    commands.required = True

    p = commands.add_parser('decide', parents=[common], help='Decide "t1 <= t2" or "t1 = t2"')
    p.add_argument('query')
    p.add_argument('--complete-only', action='store_true',
                   help='Refuse the bounded refuter for starred left-hand sides')

    for name, help_text in (('separate', 'Separate two literal words'),
                            ('lang1', 'Compare one-variable words over a one-letter alphabet'),
                            ('lang2', 'Separate one-variable words over a two-letter alphabet'),
                            ('langeq', 'Classical language equivalence of two terms')):
        p = commands.add_parser(name, parents=[common], help=help_text)
        p.add_argument('first')
        p.add_argument('second')

    p = commands.add_parser('from-dnf', parents=[common], help='Translate a DNF file into the three reduction queries')
    p.add_argument('path', help="DNF file, or '-' for standard input")

    p = commands.add_parser('selftest', parents=[common], help='Run the acceptance criteria')
    p.add_argument('--criteria', default=None, help='Comma-separated subset, e.g. 1,3')
    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        search = SearchConfig(max_len=args.max_witness_len, workers=args.workers,
                              seed=args.seed, over=args.over)
        config = CliConfig(args.command, search, json=args.json, verbose=args.verbose,
                           complete_only=getattr(args, 'complete_only', False))
    except ValueError as e:
        parser.error(str(e))

    pipeline = KavcPipeline(config)
    try:
        if args.command == 'decide':
            code, report = pipeline.decide(args.query)
        elif args.command == 'from-dnf':
            code, report = pipeline.from_dnf(args.path)
        elif args.command == 'selftest':
            code, report = pipeline.selftest(args.criteria)
        else:
            code, report = getattr(pipeline, args.command)(args.first, args.second)
    except TermSyntaxError as e:
        print(f"kavc: {e}", file=sys.stderr)
        return EXIT_INPUT
    except FragmentError as e:
        print(f"kavc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as e:
        print(f"kavc: {e.filename}: no such file", file=sys.stderr)
        return EXIT_NO_INPUT
    except ValueError as e:
        print(f"kavc: {e}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as e:
        # an unverified counterexample or a separator conflict
        print(f"kavc: internal error: {e}", file=sys.stderr)
        return EXIT_INTERNAL

    print(report)
    return code


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
