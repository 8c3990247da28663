"""Cross-check the diagram engine against the CYK oracle for one grammar."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .diagram import build_diagram, diagram_to_grammar, walk_label
from .engine import enumerate_words, find_walk
from .grammar import CnfGrammar, cyk_member, enumerate_oracle, words_up_to
from .monoid import EPS, WPair


@dataclass
class VerifyResult:
    queries: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_grammar(g: CnfGrammar, max_len: int, starts: Iterable[str] | None = None) -> VerifyResult:
    """Compare membership, witnesses, enumeration and the grammar round-trip.

    `starts` are names in `g`; the default is every nonterminal.
    """
    d = build_diagram(g)
    rn = lambda s: d.renaming.get(s, s)
    result = VerifyResult()
    starts = sorted(g.nonterminals) if starts is None else list(starts)

    back = diagram_to_grammar(d)
    expected = {p.__class__(rn(p.head), tuple(rn(s) if s in g.nonterminals else s for s in p.body))
                for p in g.productions}
    if set(back.productions) != expected:
        result.failures.append("round-trip: diagram_to_grammar(build_diagram(g)) changed the productions")

    for a in starts:
        for w in words_up_to(g.terminals, max_len):
            result.queries += 1
            oracle = cyk_member(g, a, w)
            walk = find_walk(d, rn(a), w)
            if (walk is not None) != oracle:
                result.failures.append(f"member({a}, {w!r}) = {walk is not None}, cyk says {oracle}")
            elif walk is not None and walk_label(d, walk) != WPair(w, EPS):
                result.failures.append(f"witness for ({a}, {w!r}) has label {walk_label(d, walk)}")
        got = enumerate_words(d, rn(a), max_len)
        want = enumerate_oracle(g, a, max_len)
        if got != want:
            extra = sorted(set(got) - set(want))
            missing = sorted(set(want) - set(got))
            result.failures.append(f"enumerate({a}): extra {extra}, missing {missing}")
    return result
