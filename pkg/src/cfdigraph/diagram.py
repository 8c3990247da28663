"""Transition diagrams over the monoid W.

A diagram has one vertex per nonterminal plus the final vertex ``Z``.
A CNF grammar maps to a diagram as follows:

* ``A -> a``  gives the arc ``A -> Z`` labelled ``<a, eps>``;
* ``A -> BC`` gives ``A -> B`` labelled ``<eps, C>`` together with
  ``Z -> C`` labelled ``<eps, C'>`` (one such arc per distinct C).

:func:`validate_diagram` checks an arbitrary diagram for exactly these
arc shapes, and :func:`diagram_to_grammar` reads the grammar back.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import jsonschema

from .errors import DiagramError, WalkError
from .grammar import CnfGrammar, Production
from .monoid import EPS, TGenerator, TWord, WPair, emit, pop, push, w_product

FINAL = "Z"

# condition labels used in validation reports
COND_FINAL = "Z-not-in-N"
COND_A = "a"
COND_B = "b"
COND_C = "c"
COND_MULTISET = "multiset"


@dataclass(frozen=True)
class Arc:
    source: str
    target: str
    label: WPair

    @property
    def kind(self) -> str:
        """One of ``emit``, ``push``, ``pop`` or ``other`` (label shape only)."""
        alpha, omega = self.label.alpha, self.label.omega
        if len(alpha) == 1 and not omega:
            return "emit"
        if not alpha and len(omega) == 1:
            return "pop" if omega.letters[0].primed else "push"
        return "other"

    @property
    def symbol(self) -> str:
        """The terminal emitted, or the base name pushed/popped."""
        if self.kind == "emit":
            return self.label.alpha
        if self.kind in ("push", "pop"):
            return self.label.omega.letters[0].base
        raise ValueError(f"arc {self} has no single symbol")

    def sort_key(self) -> tuple[str, str, str]:
        return (self.source, self.target, str(self.label))

    def __str__(self) -> str:
        return f"{self.source} -> {self.target} [{self.label}]"


@dataclass(frozen=True)
class TransitionDiagram:
    """Vertices ``nonterminals | {Z}`` and a multiset of labelled arcs.

    Arcs are kept in a canonical order so equality is multiset equality.
    `renaming` is set by :func:`build_diagram` when grammar nonterminals had
    to be renamed to keep ``Z`` free (original name -> vertex name).
    """

    nonterminals: frozenset[str]
    terminals: frozenset[str]
    arcs: tuple[Arc, ...]
    renaming: Mapping[str, str] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "nonterminals", frozenset(self.nonterminals))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs, key=Arc.sort_key)))

    @property
    def vertices(self) -> list[str]:
        return sorted(self.nonterminals - {FINAL}) + [FINAL]

    def arcs_from(self, vertex: str) -> list[Arc]:
        return [a for a in self.arcs if a.source == vertex]


def _z_free_names(nonterminals: Iterable[str]) -> dict[str, str]:
    names = sorted(nonterminals)
    return {name: f"N{i}" for i, name in enumerate(names)}


def build_diagram(g: CnfGrammar) -> TransitionDiagram:
    """Build the diagram of a CNF grammar.

    If some nonterminal is literally named ``Z``, every nonterminal is
    renamed to ``N0, N1, ...`` in sorted order first; the map is stored on
    the result as ``renaming``.
    """
    renaming: dict[str, str] = {}
    if FINAL in g.nonterminals:
        renaming = _z_free_names(g.nonterminals)
    rn = lambda s: renaming.get(s, s)

    arcs: list[Arc] = []
    right_siblings: set[str] = set()
    for p in sorted(g.productions):
        if len(p.body) == 1:
            arcs.append(Arc(rn(p.head), FINAL, emit(p.body[0])))
        else:
            b, c = rn(p.body[0]), rn(p.body[1])
            arcs.append(Arc(rn(p.head), b, push(c)))
            right_siblings.add(c)
    arcs.extend(Arc(FINAL, c, pop(c)) for c in sorted(right_siblings))
    return TransitionDiagram(
        frozenset(rn(a) for a in g.nonterminals), g.terminals, tuple(arcs), renaming
    )


# -- validation --------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    condition: str
    message: str
    arcs: tuple[Arc, ...] = ()
    severity: str = "error"

    def __str__(self) -> str:
        where = "; ".join(str(a) for a in self.arcs)
        text = f"[{self.severity}] condition {self.condition}: {self.message}"
        return f"{text} ({where})" if where else text


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def errors(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == "error"]

    @property
    def warnings(self) -> list[Violation]:
        return [v for v in self.violations if v.severity == "warning"]

    @property
    def ok(self) -> bool:
        return not self.errors

    def conditions(self) -> set[str]:
        return {v.condition for v in self.errors}

    def __str__(self) -> str:
        if not self.violations:
            return "ok"
        return "\n".join(str(v) for v in self.violations)


def _arc_shape_violation(arc: Arc, nonterminals: frozenset[str], terminals: frozenset[str]) -> Violation | None:
    src_nt = arc.source in nonterminals
    dst_nt = arc.target in nonterminals
    kind = arc.kind
    if arc.source not in nonterminals and arc.source != FINAL:
        return Violation(COND_C, f"unknown vertex {arc.source!r}", (arc,))
    if arc.target not in nonterminals and arc.target != FINAL:
        return Violation(COND_C, f"unknown vertex {arc.target!r}", (arc,))

    if kind == "emit":
        if not (src_nt and arc.target == FINAL):
            return Violation(COND_A, "a terminal label <a, eps> is allowed only on arcs A -> Z", (arc,))
        if arc.symbol not in terminals:
            return Violation(COND_A, f"{arc.symbol!r} is not a terminal", (arc,))
        return None
    if src_nt and arc.target == FINAL:
        return Violation(COND_A, "an arc A -> Z must be labelled <a, eps>", (arc,))
    if kind == "push":
        if not (src_nt and dst_nt):
            return Violation(COND_C, "a label <eps, C> is allowed only between nonterminals", (arc,))
        if arc.symbol not in nonterminals:
            return Violation(COND_C, f"{arc.symbol!r} is not a nonterminal", (arc,))
        return None
    if kind == "pop":
        if not (arc.source == FINAL and arc.target == arc.symbol):
            return Violation(COND_C, "a label <eps, C'> is allowed only on the arc Z -> C", (arc,))
        if arc.symbol not in nonterminals:
            return Violation(COND_C, f"{arc.symbol!r} is not a nonterminal", (arc,))
        return None
    return Violation(COND_C, f"label {arc.label} has none of the permitted shapes", (arc,))


def validate_diagram(d: TransitionDiagram) -> ValidationReport:
    """Check every arc shape, the push/pop pairing, and that Z is not a nonterminal.

    Violations are returned, never raised.  Duplicate arcs produce a
    warning only.
    """
    report = ValidationReport()
    if FINAL in d.nonterminals:
        report.violations.append(Violation(COND_FINAL, "the final vertex Z is listed as a nonterminal"))
    nts = d.nonterminals - {FINAL}

    well_shaped: list[Arc] = []
    for arc in d.arcs:
        v = _arc_shape_violation(arc, nts, d.terminals)
        if v:
            report.violations.append(v)
        else:
            well_shaped.append(arc)

    pushes: dict[str, list[Arc]] = {}
    pops: dict[str, list[Arc]] = {}
    for arc in well_shaped:
        if arc.kind == "push":
            pushes.setdefault(arc.symbol, []).append(arc)
        elif arc.kind == "pop":
            pops.setdefault(arc.symbol, []).append(arc)
    for c in sorted(set(pushes) - set(pops)):
        report.violations.append(
            Violation(COND_B, f"no arc Z -> {c} labelled <eps, {c}'> pairs with these pushes", tuple(pushes[c]))
        )
    for c in sorted(set(pops) - set(pushes)):
        report.violations.append(
            Violation(COND_B, f"no arc A -> B labelled <eps, {c}> pairs with this pop", tuple(pops[c]))
        )

    for arc, count in sorted(Counter(d.arcs).items(), key=lambda kv: kv[0].sort_key()):
        if count > 1:
            report.violations.append(
                Violation(COND_MULTISET, f"arc occurs {count} times", (arc,), severity="warning")
            )
    return report


def require_valid(d: TransitionDiagram) -> None:
    report = validate_diagram(d)
    if not report.ok:
        raise DiagramError(f"invalid diagram:\n{report}", report.errors)


def diagram_to_grammar(d: TransitionDiagram, start: str | None = None) -> CnfGrammar:
    """Read the CNF grammar back out of a valid diagram.

    `start` defaults to ``S`` when present, otherwise to the first
    nonterminal in sorted order.
    """
    require_valid(d)
    popped = {a.symbol for a in d.arcs if a.kind == "pop"}
    productions = set()
    for arc in d.arcs:
        if arc.kind == "emit":
            productions.add(Production(arc.source, (arc.symbol,)))
        elif arc.kind == "push" and arc.symbol in popped:
            productions.add(Production(arc.source, (arc.target, arc.symbol)))
    if start is None:
        start = "S" if "S" in d.nonterminals else min(d.nonterminals)
    return CnfGrammar(d.nonterminals, d.terminals, frozenset(productions), start)


# -- walks -------------------------------------------------------------------


def check_walk(walk: Sequence[Arc]) -> None:
    if not walk:
        raise WalkError("a walk has at least one arc")
    for i, (x, y) in enumerate(zip(walk, walk[1:])):
        if x.target != y.source:
            raise WalkError(f"arcs {i} and {i + 1} are not incident: {x} then {y}")


def walk_label(d: TransitionDiagram, walk: Sequence[Arc]) -> WPair:
    """The product of the arc labels along `walk`, in traversal order."""
    check_walk(walk)
    arcs = Counter(d.arcs)
    for arc in walk:
        if arc not in arcs:
            raise WalkError(f"arc {arc} is not in the diagram")
    return w_product(a.label for a in walk)


# -- DOT export --------------------------------------------------------------


def _dot_id(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_dot(d: TransitionDiagram, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in d.vertices:
        shape = "doublecircle" if v == FINAL else "circle"
        lines.append(f"  {_dot_id(v)} [shape={shape}];")
    for arc in d.arcs:
        lines.append(f"  {_dot_id(arc.source)} -> {_dot_id(arc.target)} [label={_dot_id(str(arc.label))}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------

DIAGRAM_SCHEMA = {
    "type": "object",
    "required": ["nonterminals", "terminals", "arcs"],
    "properties": {
        "nonterminals": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "terminals": {"type": "array", "items": {"type": "string", "minLength": 1}},
        "arcs": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "emit", "t"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "string", "minLength": 1},
                    "to": {"type": "string", "minLength": 1},
                    "emit": {"type": "string"},
                    "t": {"type": "string", "pattern": r"^([^\s']+'?)?$"},
                },
            },
        },
    },
}

_T_LETTER = re.compile(r"^([^\s']+)('?)$")


def _label_to_json(label: WPair) -> tuple[str, str]:
    if len(label.omega) > 1 or (label.alpha and label.omega):
        raise DiagramError(f"label {label} cannot be written in the diagram format")
    t = str(label.omega.letters[0]) if label.omega else ""
    return label.alpha, t


def _label_from_json(emit_: str, t: str) -> WPair:
    if bool(emit_) == bool(t):
        raise DiagramError(f"exactly one of 'emit' and 't' must be non-empty (got {emit_!r}, {t!r})")
    if emit_:
        return WPair(emit_, EPS)
    m = _T_LETTER.match(t)
    if not m:
        raise DiagramError(f"unknown label shape {t!r}")
    return WPair("", TWord((TGenerator(m.group(1), bool(m.group(2))),)))


def diagram_to_dict(d: TransitionDiagram) -> dict:
    arcs = []
    for arc in d.arcs:
        e, t = _label_to_json(arc.label)
        arcs.append({"from": arc.source, "to": arc.target, "emit": e, "t": t})
    return {
        "nonterminals": sorted(d.nonterminals),
        "terminals": sorted(d.terminals),
        "arcs": arcs,
    }


def write_diagram(d: TransitionDiagram) -> str:
    return json.dumps(diagram_to_dict(d), indent=2) + "\n"


def diagram_from_dict(doc: object) -> TransitionDiagram:
    try:
        jsonschema.validate(doc, DIAGRAM_SCHEMA)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise DiagramError(f"schema error at '{path}': {exc.message}") from None
    arcs = tuple(Arc(a["from"], a["to"], _label_from_json(a["emit"], a["t"])) for a in doc["arcs"])
    return TransitionDiagram(frozenset(doc["nonterminals"]), frozenset(doc["terminals"]), arcs)


def read_diagram(text: str, validate: bool = True) -> TransitionDiagram:
    """Parse a diagram document; with `validate`, raise on any violation."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DiagramError(f"malformed JSON: {exc}") from None
    d = diagram_from_dict(doc)
    if validate:
        require_valid(d)
    return d
