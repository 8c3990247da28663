"""Walk search on transition diagrams.

A walk from ``A`` to ``Z`` with label ``<w, eps>`` is found by a stack
machine.  Its configuration is (vertex, stack, progress) where the stack
is the reduced T-component of the walk so far:

* ``A -> B`` labelled ``<eps, C>`` pushes C;
* ``A -> Z`` labelled ``<a, eps>`` emits or consumes ``a``;
* ``Z -> C`` labelled ``<eps, C'>`` pops C, and is only taken when C is on top.

Taking a pop arc with anything else on top would leave a primed letter
in the reduced label.  Labels only grow on the right and ``A'`` cancels
only against an ``A`` to its left, so such a letter can never disappear
and the branch is dropped.  Hence the stack never holds primed letters.

Because the diagrams come from ε-free grammars, every stacked
nonterminal still owes at least one terminal, and so does the current
vertex unless it is ``Z``.  Configurations owing more letters than the
budget allows are pruned, which keeps the search finite.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .diagram import FINAL, Arc, TransitionDiagram, require_valid
from .errors import AutomatonError, InputError
from .grammar import check_word, length_lex
from .monoid import TGenerator, TWord, WPair


class Configuration(NamedTuple):
    vertex: str
    stack: tuple[str, ...]
    # consumed letter count when recognizing, emitted string when generating
    progress: int | str


class _Moves:
    """Outgoing arcs of a diagram, indexed for the stack machine."""

    def __init__(self, d: TransitionDiagram):
        require_valid(d)
        self.emits: dict[str, list[Arc]] = {}
        self.pushes: dict[str, list[Arc]] = {}
        self.pops: dict[str, Arc] = {}
        for arc in d.arcs:
            kind = arc.kind
            if kind == "emit":
                self.emits.setdefault(arc.source, []).append(arc)
            elif kind == "push":
                self.pushes.setdefault(arc.source, []).append(arc)
            elif kind == "pop":
                self.pops.setdefault(arc.symbol, arc)


def _owed(vertex: str, stack: tuple[str, ...]) -> int:
    return len(stack) + (vertex != FINAL)


def _check_query(d: TransitionDiagram, start: str) -> None:
    if start not in d.nonterminals or start == FINAL:
        raise InputError(f"unknown start vertex {start!r}")


def find_walk(d: TransitionDiagram, start: str, word: str) -> list[Arc] | None:
    """Return a shortest walk from `start` to Z labelled ``<word, eps>``, or None."""
    _check_query(d, start)
    check_word(word, d.terminals)
    moves = _Moves(d)
    n = len(word)
    root = Configuration(start, (), 0)
    parent: dict[Configuration, tuple[Configuration, Arc] | None] = {root: None}
    queue = deque([root])
    goal = None
    while queue:
        cfg = queue.popleft()
        vertex, stack, pos = cfg
        if vertex == FINAL:
            if not stack:
                if pos == n:
                    goal = cfg
                    break
                continue
            arc = moves.pops.get(stack[-1])
            if arc is None:
                continue
            succs = [(Configuration(arc.target, stack[:-1], pos), arc)]
        else:
            succs = []
            if pos < n:
                for arc in moves.emits.get(vertex, ()):
                    if arc.label.alpha == word[pos]:
                        succs.append((Configuration(FINAL, stack, pos + 1), arc))
            for arc in moves.pushes.get(vertex, ()):
                nxt = Configuration(arc.target, stack + (arc.symbol,), pos)
                succs.append((nxt, arc))
        for nxt, arc in succs:
            if nxt in parent or _owed(nxt.vertex, nxt.stack) > n - nxt.progress:
                continue
            parent[nxt] = (cfg, arc)
            queue.append(nxt)
    if goal is None:
        return None
    walk: list[Arc] = []
    link = parent[goal]
    while link is not None:
        cfg, arc = link
        walk.append(arc)
        link = parent[cfg]
    walk.reverse()
    return walk


def member(d: TransitionDiagram, start: str, word: str) -> bool:
    return find_walk(d, start, word) is not None


def enumerate_words(d: TransitionDiagram, start: str, max_len: int) -> list[str]:
    """All words of length ≤ `max_len` labelling a walk from `start` to Z.

    Breadth-first over generation configurations; the result is sorted by
    length, then lexicographically.
    """
    _check_query(d, start)
    if max_len < 1:
        raise InputError("max_len must be at least 1")
    moves = _Moves(d)
    root = Configuration(start, (), "")
    seen = {root}
    queue = deque([root])
    found: set[str] = set()
    while queue:
        vertex, stack, out = queue.popleft()
        if vertex == FINAL:
            if not stack:
                found.add(out)
                continue
            arc = moves.pops.get(stack[-1])
            succs = [] if arc is None else [Configuration(arc.target, stack[:-1], out)]
        else:
            succs = [Configuration(FINAL, stack, out + a.label.alpha) for a in moves.emits.get(vertex, ())]
            succs += [Configuration(a.target, stack + (a.symbol,), out) for a in moves.pushes.get(vertex, ())]
        for nxt in succs:
            if nxt in seen or len(nxt.progress) + _owed(nxt.vertex, nxt.stack) > max_len:
                continue
            seen.add(nxt)
            queue.append(nxt)
    return length_lex(found)


# -- unpruned reference search -------------------------------------------------
#
# A walk A -> Z with label <w, eps> either is a single emitting arc, or
# splits as (A -> B, push C) walk(B) (Z -> C, pop C) walk(C).  The tables
# below are least fixpoints of that recursion, so no depth bound is needed.


def reach_table(d: TransitionDiagram, word: str) -> dict[tuple[str, int], frozenset[int]]:
    """``table[A, i]`` holds every j with a walk ``A -> Z`` labelled ``<word[i:j], eps>``."""
    check_word(word, d.terminals)
    moves = _Moves(d)
    n = len(word)
    nts = sorted(d.nonterminals)
    table: dict[tuple[str, int], set[int]] = {(a, i): set() for a in nts for i in range(n + 1)}
    changed = True
    while changed:
        changed = False
        for a in nts:
            for i in range(n + 1):
                ends = table[a, i]
                before = len(ends)
                if i < n:
                    for arc in moves.emits.get(a, ()):
                        if arc.label.alpha == word[i]:
                            ends.add(i + 1)
                for arc in moves.pushes.get(a, ()):
                    c = arc.symbol
                    if c not in moves.pops:
                        continue
                    for j in list(table[arc.target, i]):
                        ends.update(table[c, j])
                changed |= len(ends) != before
    return {k: frozenset(v) for k, v in table.items()}


def member_unpruned(d: TransitionDiagram, start: str, word: str) -> bool:
    _check_query(d, start)
    return len(word) in reach_table(d, word)[start, 0]


def language_table(d: TransitionDiagram, max_len: int) -> dict[str, frozenset[str]]:
    moves = _Moves(d)
    lang: dict[str, set[str]] = {a: set() for a in d.nonterminals}
    for a in lang:
        lang[a].update(arc.label.alpha for arc in moves.emits.get(a, ()))
    changed = True
    while changed:
        changed = False
        for a in sorted(lang):
            before = len(lang[a])
            for arc in moves.pushes.get(a, ()):
                c = arc.symbol
                if c not in moves.pops:
                    continue
                new = {u + v for u in lang[arc.target] for v in lang[c] if len(u) + len(v) <= max_len}
                lang[a] |= new
            changed |= len(lang[a]) != before
    return {a: frozenset(ws) for a, ws in lang.items()}


def enumerate_unpruned(d: TransitionDiagram, start: str, max_len: int) -> list[str]:
    _check_query(d, start)
    return length_lex(language_table(d, max_len)[start])


# -- automaton view --------------------------------------------------------------


@dataclass(frozen=True)
class NfaGenerator:
    """A diagram seen as a nondeterministic generator.

    `delta` maps each state to its successor states and `labels` maps each
    (state, successor) pair to the set of labels on the arcs between them.
    The monoid W is implied by the two alphabets and is not stored.
    """

    terminals: frozenset[str]
    nonterminals: frozenset[str]
    start: str
    delta: Mapping[str, frozenset[str]]
    labels: Mapping[tuple[str, str], frozenset[WPair]]
    final: str = FINAL

    def __post_init__(self):
        check_automaton(self)

    @property
    def states(self) -> frozenset[str]:
        return self.nonterminals | {self.final}


def _letter(p: WPair) -> TGenerator | None:
    return p.omega.letters[0] if not p.alpha and len(p.omega) == 1 else None


def check_automaton(y: NfaGenerator) -> None:
    """Raise :class:`AutomatonError` naming the first broken condition."""
    z, nts = y.final, y.nonterminals
    if z in nts:
        raise AutomatonError(1, f"final state {z!r} is also a nonterminal")
    if y.start not in nts:
        raise AutomatonError(3, f"start state {y.start!r} is not a nonterminal")
    states = y.states
    for a, succ in y.delta.items():
        if a not in states or not set(succ) <= states:
            raise AutomatonError(3, f"transitions of {a!r} leave the state set")
    defined = {(a, b) for a, succ in y.delta.items() for b in succ}
    if set(y.labels) != defined:
        extra = sorted(set(y.labels) ^ defined)
        raise AutomatonError(3, f"labels must be defined exactly on transitions; mismatch at {extra}")

    # condition 1: arcs into Z come from nonterminals and emit one terminal
    for a, b in sorted(defined):
        if b != z:
            continue
        if a not in nts:
            raise AutomatonError(1, f"{z} in delta({a}) but {a!r} is not a nonterminal")
        labels = y.labels[a, b]
        if not labels or any(len(p.alpha) != 1 or p.omega or p.alpha not in y.terminals for p in labels):
            raise AutomatonError(1, f"lambda({a}, {z}) must contain only labels <a, eps> with a terminal a")

    # condition 2: pushes between nonterminals pair with pops out of Z
    pushed: set[str] = set()
    for a, b in sorted(defined):
        if a == z or b == z:
            continue
        for p in y.labels[a, b]:
            g = _letter(p)
            if g is None or g.primed or g.base not in nts:
                raise AutomatonError(2, f"lambda({a}, {b}) may only contain labels <eps, C> with C a nonterminal")
            pushed.add(g.base)
    popped: set[str] = set()
    for c in y.delta.get(z, ()):
        labels = y.labels[z, c]
        if labels != {WPair("", TWord((TGenerator(c, True),)))}:
            raise AutomatonError(2, f"lambda({z}, {c}) must be exactly {{<eps, {c}'>}}")
        popped.add(c)
    if pushed != popped:
        raise AutomatonError(
            2, f"pushed symbols {sorted(pushed)} and symbols popped from {z} {sorted(popped)} differ"
        )


def automaton_from_diagram(d: TransitionDiagram, start: str) -> NfaGenerator:
    require_valid(d)
    _check_query(d, start)
    delta: dict[str, set[str]] = {}
    labels: dict[tuple[str, str], set[WPair]] = {}
    for arc in d.arcs:
        delta.setdefault(arc.source, set()).add(arc.target)
        labels.setdefault((arc.source, arc.target), set()).add(arc.label)
    return NfaGenerator(
        terminals=d.terminals,
        nonterminals=d.nonterminals,
        start=start,
        delta={a: frozenset(s) for a, s in delta.items()},
        labels={k: frozenset(v) for k, v in labels.items()},
    )


def diagram_from_automaton(y: NfaGenerator) -> TransitionDiagram:
    arcs = [Arc(a, b, p) for (a, b), ps in y.labels.items() for p in ps]
    return TransitionDiagram(y.nonterminals, y.terminals, tuple(arcs))


def generate(y: NfaGenerator, max_len: int) -> list[str]:
    """Words generated by `y`: label products ``<w, eps>`` of runs from the start state to Z."""
    return enumerate_words(diagram_from_automaton(y), y.start, max_len)
