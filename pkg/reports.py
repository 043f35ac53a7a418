# reports.py
"""Human-readable and JSON rendering of verdicts, separators and automata results"""

import json
from typing import Dict, List, Optional, Sequence

from decision import Counterexample, Verdict, overall_status
from evaluation import FiniteWords, LangSpec, Valuation, letter_text, valuation_to_json
from separation import Separation
from term_parser import Query, print_term
from terms import LitWord


def dump_json(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2)


def word_text(word: Optional[LitWord]) -> Optional[str]:
    if word is None:
        return None
    return print_term(word.to_term())


# ---------- JSON payloads ----------

def counterexample_to_json(cex: Counterexample) -> Dict:
    payload = valuation_to_json(cex.valuation)
    payload["witness"] = list(cex.witness)
    payload["lhs_word"] = word_text(cex.lhs_word)
    return payload


def verdict_to_json(verdict: Verdict) -> Dict:
    return {
        "inequation": f"{print_term(verdict.lhs)} <= {print_term(verdict.rhs)}",
        "verdict": verdict.status.value,
        "procedure": verdict.procedure.value,
        "counterexample": counterexample_to_json(verdict.counterexample) if verdict.counterexample else None,
        "bound": verdict.bound,
    }


def decision_to_json(query: Query, verdicts: Sequence[Verdict]) -> Dict:
    return {
        "query": str(query),
        "verdict": overall_status(verdicts).value,
        "directions": [verdict_to_json(v) for v in verdicts],
    }


def separation_to_json(sep: Optional[Separation]) -> Dict:
    if sep is None:
        return {"equal": True}
    payload = {
        "equal": False,
        "direction": sep.direction,
        "method": sep.method,
        "contained": word_text(sep.contained),
        "excluded": word_text(sep.excluded),
    }
    payload.update(valuation_to_json(sep.valuation))
    payload["witness"] = list(sep.witness)
    return payload


def lang1_to_json(verdict: Verdict, sep: Optional[Separation]) -> Dict:
    payload = verdict_to_json(verdict)
    payload["direction"] = sep.direction if sep else None
    return payload


def langeq_to_json(equivalent: bool, separator: Optional[str]) -> Dict:
    return {"equivalent": equivalent, "separator": separator}


# ---------- human-readable text ----------

def spec_text(spec: LangSpec) -> str:
    if isinstance(spec, FiniteWords):
        return "{" + ", ".join(letter_text(w) for w in spec.sorted_words()) + "}"
    return spec.to_json()["expr"]


def valuation_lines(v: Valuation, indent: str = "    ") -> List[str]:
    lines = [f"{indent}alphabet: {v.alphabet_size} letter(s)"]
    for var in v.variables():
        lines.append(f"{indent}{var.name} ↦ {spec_text(v.spec(var))}")
    return lines


def verdict_lines(verdict: Verdict, label: str = "") -> List[str]:
    head = f"{label}{print_term(verdict.lhs)} <= {print_term(verdict.rhs)}: " \
           f"{verdict.status.value} ({verdict.procedure.value})"
    lines = [head]
    cex = verdict.counterexample
    if cex is not None:
        lines += valuation_lines(cex.valuation)
        lines.append(f"    witness: {letter_text(cex.witness)}")
        if cex.lhs_word is not None:
            lines.append(f"    lhs word: {word_text(cex.lhs_word)}")
    if verdict.unknown:
        lines.append(f"    no counterexample among words of length <= {verdict.bound}")
    return lines


def decision_text(query: Query, verdicts: Sequence[Verdict]) -> str:
    lines = [f"query: {query}"]
    for index, verdict in enumerate(verdicts, start=1):
        lines += verdict_lines(verdict, f"[{index}] ")
    lines.append(f"result: {overall_status(verdicts).value}")
    return "\n".join(lines)


def separation_text(sep: Optional[Separation]) -> str:
    if sep is None:
        return "equal: the words are identical"
    lines = [
        f"separated ({sep.method}): {word_text(sep.contained)} is not included in {word_text(sep.excluded)}",
        f"    direction: {sep.direction}",
    ]
    lines += valuation_lines(sep.valuation)
    lines.append(f"    witness: {letter_text(sep.witness)}")
    return "\n".join(lines)


def lang1_text(verdict: Verdict, sep: Optional[Separation]) -> str:
    if sep is None:
        return f"valid: {print_term(verdict.lhs)} = {print_term(verdict.rhs)} (literal counts agree)"
    return separation_text(sep).replace("separated (lang1)", "refuted (lang1)", 1)


def langeq_text(equivalent: bool, separator: Optional[str], over: str) -> str:
    if equivalent:
        return f"equivalent (over {over})"
    shown = separator if separator else "1"
    return f"not equivalent (over {over}); separator: {shown}"
