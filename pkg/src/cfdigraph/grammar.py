"""Context-free grammars: parsing, Chomsky normal form, and a CYK oracle.

Symbols are plain strings; whether a symbol is a nonterminal or a
terminal is decided by the grammar's symbol sets.  Terminals are single
characters so that words are ordinary Python strings.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import EpsilonWarning, GrammarError, InputError

FRESH_STEM = "X"


@dataclass(frozen=True, order=True)
class Production:
    head: str
    body: tuple[str, ...] = ()

    def __str__(self) -> str:
        return " ".join((self.head, "->") + self.body)


@dataclass(frozen=True)
class Grammar:
    nonterminals: frozenset[str]
    terminals: frozenset[str]
    productions: frozenset[Production]
    start: str

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", frozenset(self.productions))
        if self.nonterminals & self.terminals:
            overlap = ", ".join(sorted(self.nonterminals & self.terminals))
            raise GrammarError(f"symbols used as both nonterminal and terminal: {overlap}")
        if self.start not in self.nonterminals:
            raise GrammarError(f"start symbol {self.start!r} is not a nonterminal")
        symbols = self.nonterminals | self.terminals
        for p in self.productions:
            if p.head not in self.nonterminals:
                raise GrammarError(f"production head {p.head!r} is not a nonterminal: {p}")
            for s in p.body:
                if s not in symbols:
                    raise GrammarError(f"unknown symbol {s!r} in {p}")

    def rules_for(self, head: str) -> list[Production]:
        return sorted(p for p in self.productions if p.head == head)

    def with_start(self, start: str) -> Grammar:
        return type(self)(self.nonterminals, self.terminals, self.productions, start)


def is_cnf_production(p: Production, nonterminals: frozenset[str], terminals: frozenset[str]) -> bool:
    if len(p.body) == 1:
        return p.body[0] in terminals
    if len(p.body) == 2:
        return p.body[0] in nonterminals and p.body[1] in nonterminals
    return False


def is_cnf(g: Grammar) -> bool:
    return all(is_cnf_production(p, g.nonterminals, g.terminals) for p in g.productions)


@dataclass(frozen=True)
class CnfGrammar(Grammar):
    """A grammar whose every rule is ``A -> B C`` or ``A -> a``."""

    def __post_init__(self):
        super().__post_init__()
        for p in self.productions:
            if not is_cnf_production(p, self.nonterminals, self.terminals):
                raise GrammarError(f"not in Chomsky normal form: {p}")

    @classmethod
    def from_grammar(cls, g: Grammar) -> CnfGrammar:
        return cls(g.nonterminals, g.terminals, g.productions, g.start)


# -- text format -------------------------------------------------------------


def parse_grammar(text: str, start: str | None = None) -> Grammar:
    """Parse the line-oriented ``HEAD -> SYM SYM ...`` format.

    A token is a nonterminal iff it occurs as the head of some line; the
    first head is the default start symbol.  ``#`` comments run to the end
    of the line and a bare ``HEAD ->`` is an empty production.
    """
    rules: list[tuple[str, tuple[str, ...], int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        head, arrow, rest = line.partition("->")
        if not arrow:
            raise GrammarError("expected 'HEAD -> BODY'", lineno)
        head_tokens = head.split()
        if len(head_tokens) != 1:
            raise GrammarError("exactly one head symbol is required", lineno)
        body = tuple(rest.split())
        for tok in head_tokens + list(body):
            if tok == "->" or "'" in tok:
                raise GrammarError(f"invalid token {tok!r}", lineno)
        rules.append((head_tokens[0], body, lineno))
    if not rules:
        raise GrammarError("grammar has no productions")

    nonterminals = {head for head, _, _ in rules}
    terminals: set[str] = set()
    for _, body, lineno in rules:
        for tok in body:
            if tok in nonterminals:
                continue
            if len(tok) != 1:
                raise GrammarError(
                    f"terminal {tok!r} must be a single character "
                    "(or appear as a head to be a nonterminal)",
                    lineno,
                )
            terminals.add(tok)
    start = rules[0][0] if start is None else start
    if start not in nonterminals:
        raise GrammarError(f"start symbol {start!r} never appears as a head")
    productions = {Production(head, body) for head, body, _ in rules}
    return Grammar(frozenset(nonterminals), frozenset(terminals), frozenset(productions), start)


def format_grammar(g: Grammar) -> str:
    """Render `g` in the text format, start-symbol rules first."""
    ordered = sorted(g.productions, key=lambda p: (p.head != g.start, p.head, p.body))
    return "".join(f"{p}\n" for p in ordered)


# -- normalization -----------------------------------------------------------


def nullable_symbols(g: Grammar) -> set[str]:
    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head not in nullable and all(s in nullable for s in p.body):
                nullable.add(p.head)
                changed = True
    return nullable


def productive_symbols(g: Grammar) -> set[str]:
    productive: set[str] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head not in productive and all(
                s in productive or s in g.terminals for s in p.body
            ):
                productive.add(p.head)
                changed = True
    return productive


def reachable_symbols(g: Grammar) -> set[str]:
    seen = {g.start}
    todo = [g.start]
    while todo:
        head = todo.pop()
        for p in g.productions:
            if p.head != head:
                continue
            for s in p.body:
                if s in g.nonterminals and s not in seen:
                    seen.add(s)
                    todo.append(s)
    return seen


class _FreshNames:
    def __init__(self, taken: Iterable[str], stem: str = FRESH_STEM):
        self.taken = set(taken)
        self.stem = stem
        self.counter = 0

    def __call__(self) -> str:
        while True:
            self.counter += 1
            name = f"{self.stem}{self.counter}"
            if name not in self.taken:
                self.taken.add(name)
                return name


def remove_epsilon(g: Grammar) -> set[Production]:
    nullable = nullable_symbols(g)
    out: set[Production] = set()
    for p in g.productions:
        optional = [i for i, s in enumerate(p.body) if s in nullable]
        for mask in itertools.product((False, True), repeat=len(optional)):
            dropped = {i for i, drop in zip(optional, mask) if drop}
            body = tuple(s for i, s in enumerate(p.body) if i not in dropped)
            if body:
                out.add(Production(p.head, body))
    return out


def remove_units(productions: set[Production], nonterminals: frozenset[str]) -> set[Production]:
    def is_unit(p: Production) -> bool:
        return len(p.body) == 1 and p.body[0] in nonterminals

    units: dict[str, set[str]] = {a: set() for a in nonterminals}
    for p in productions:
        if is_unit(p):
            units[p.head].add(p.body[0])
    # reflexive-transitive closure of the unit relation
    closure = {a: {a} for a in nonterminals}
    for a in nonterminals:
        todo = [a]
        while todo:
            b = todo.pop()
            for c in units[b]:
                if c not in closure[a]:
                    closure[a].add(c)
                    todo.append(c)
    proper: dict[str, set[tuple[str, ...]]] = {a: set() for a in nonterminals}
    for p in productions:
        if not is_unit(p):
            proper[p.head].add(p.body)
    return {Production(a, body) for a in nonterminals for b in closure[a] for body in proper[b]}


def to_cnf(g: Grammar, remove_useless: bool = False) -> CnfGrammar:
    """Convert `g` to an equivalent ε-free grammar in Chomsky normal form.

    Steps run in a fixed order: ε-removal, unit removal, terminal lifting,
    binarization.  Every nonterminal keeps its language minus ε, so the
    result is usable with any start symbol.  If the start symbol derives ε
    an :class:`EpsilonWarning` is issued; if nothing non-empty is derivable
    from it a :class:`GrammarError` is raised.
    """
    if g.start in nullable_symbols(g):
        warnings.warn(
            f"start symbol {g.start!r} derives the empty word; it is dropped",
            EpsilonWarning,
            stacklevel=2,
        )
    productions = remove_epsilon(g)
    productions = remove_units(productions, g.nonterminals)

    fresh = _FreshNames(g.nonterminals | g.terminals)
    nonterminals = set(g.nonterminals)

    # TERM: terminals inside long bodies get a dedicated nonterminal
    lifted: dict[str, str] = {}
    long_terminals = sorted({s for p in productions if len(p.body) > 1 for s in p.body if s in g.terminals})
    for a in long_terminals:
        lifted[a] = fresh()
        nonterminals.add(lifted[a])
    termed: set[Production] = {Production(x, (a,)) for a, x in lifted.items()}
    for p in productions:
        if len(p.body) > 1:
            termed.add(Production(p.head, tuple(lifted.get(s, s) for s in p.body)))
        else:
            termed.add(p)

    # BIN: split long bodies into a right-leaning chain; shared suffixes share names
    suffix_names: dict[tuple[str, ...], str] = {}
    result: set[Production] = set()
    for p in sorted(termed):
        body = p.body
        head = p.head
        while len(body) > 2:
            rest = body[1:]
            if rest not in suffix_names:
                suffix_names[rest] = fresh()
                nonterminals.add(suffix_names[rest])
            result.add(Production(head, (body[0], suffix_names[rest])))
            head, body = suffix_names[rest], rest
        result.add(Production(head, body))

    cnf = CnfGrammar(frozenset(nonterminals), g.terminals, frozenset(result), g.start)
    if g.start not in productive_symbols(cnf):
        raise GrammarError(f"empty ε-free language from start symbol {g.start!r}")
    if remove_useless:
        cnf = prune_useless(cnf)
    return cnf


def prune_useless(g: CnfGrammar) -> CnfGrammar:
    productive = productive_symbols(g)
    kept = {p for p in g.productions if p.head in productive and all(
        s in productive or s in g.terminals for s in p.body)}
    trimmed = CnfGrammar(frozenset(productive), g.terminals, frozenset(kept), g.start)
    reachable = reachable_symbols(trimmed)
    return CnfGrammar(
        frozenset(reachable),
        g.terminals,
        frozenset(p for p in kept if p.head in reachable),
        g.start,
    )


# -- CYK oracle --------------------------------------------------------------


def check_word(word: str, terminals: frozenset[str]) -> None:
    if not word:
        raise InputError("the empty word is outside the ε-free scope")
    bad = sorted(set(word) - terminals)
    if bad:
        raise InputError(f"letters not in the terminal alphabet: {', '.join(bad)}")


def cyk_table(g: CnfGrammar, word: str) -> list[list[set[str]]]:
    """``table[i][l - 1]`` holds the nonterminals deriving ``word[i:i + l]``."""
    n = len(word)
    unary: dict[str, set[str]] = {}
    binary: list[tuple[str, str, str]] = []
    for p in g.productions:
        if len(p.body) == 1:
            unary.setdefault(p.body[0], set()).add(p.head)
        else:
            binary.append((p.head, p.body[0], p.body[1]))
    table = [[set() for _ in range(n - i)] for i in range(n)]
    for i, a in enumerate(word):
        table[i][0] = set(unary.get(a, ()))
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            cell = table[i][length - 1]
            for split in range(1, length):
                left = table[i][split - 1]
                right = table[i + split][length - split - 1]
                if not left or not right:
                    continue
                for head, b, c in binary:
                    if b in left and c in right:
                        cell.add(head)
    return table


def cyk_member(g: CnfGrammar, start: str, word: str) -> bool:
    if start not in g.nonterminals:
        raise InputError(f"unknown start symbol {start!r}")
    check_word(word, g.terminals)
    return start in cyk_table(g, word)[0][len(word) - 1]


def words_up_to(terminals: Iterable[str], max_len: int) -> Iterator[str]:
    """All non-empty words of length at most `max_len`, length-lex order."""
    letters = sorted(terminals)
    for n in range(1, max_len + 1):
        for t in itertools.product(letters, repeat=n):
            yield "".join(t)


def length_lex(words: Iterable[str]) -> list[str]:
    return sorted(words, key=lambda w: (len(w), w))


def enumerate_oracle(g: CnfGrammar, start: str, max_len: int) -> list[str]:
    """Words of length ≤ `max_len` accepted by CYK, tested exhaustively."""
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    if start not in g.nonterminals:
        raise InputError(f"unknown start symbol {start!r}")
    return [w for w in words_up_to(g.terminals, max_len) if cyk_member(g, start, w)]
