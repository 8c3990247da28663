"""Context-free languages as labelled transition diagrams."""

from .diagram import (
    FINAL,
    Arc,
    TransitionDiagram,
    ValidationReport,
    Violation,
    build_diagram,
    diagram_to_grammar,
    export_dot,
    read_diagram,
    validate_diagram,
    walk_label,
    write_diagram,
)
from .engine import (
    Configuration,
    NfaGenerator,
    automaton_from_diagram,
    diagram_from_automaton,
    enumerate_words,
    find_walk,
    generate,
    member,
)
from .errors import (
    AutomatonError,
    CfdigraphError,
    DiagramError,
    EpsilonWarning,
    GrammarError,
    InputError,
    WalkError,
)
from .grammar import (
    CnfGrammar,
    Grammar,
    Production,
    cyk_member,
    enumerate_oracle,
    format_grammar,
    parse_grammar,
    to_cnf,
)
from .monoid import EPS, TGenerator, TWord, WPair, is_identity, reduce, t_mul, w_mul

__version__ = "0.1.0"
