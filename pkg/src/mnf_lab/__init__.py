"""mnf-lab: MNF grammar checking, regex synthesis, and bounded verification.

A context-free grammar is in MNF when its nonterminal dependency digraph is
acyclic and every nonterminal's productions split into the three shapes
``A -> alpha A`` / ``A -> A beta`` / ``A -> gamma`` with alpha, beta, gamma
free of ``A``.  Such grammars denote regular languages; this package decides
the property, synthesizes an equivalent regular expression by solving one
language equation per nonterminal, searches for MNF-equivalent grammars by
bounded unfolding, and machine-checks every result with a bounded
language-equivalence oracle.
"""

from .equations import (
    BilateralEquation,
    UnresolvedDependency,
    arden_left_solve,
    arden_right_solve,
    equation_from_partition,
    solve_bilateral,
    solve_equation,
)
from .grammar import (
    DependencyDigraph,
    Grammar,
    GrammarError,
    GrammarSyntaxError,
    MnfReport,
    PartitionFailure,
    Production,
    PseudoRegularPartition,
    body_text,
    check_looking_forward,
    check_mnf,
    dependency_digraph,
    find_cycle,
    make_grammar,
    parse_grammar,
    partition_productions,
    prune_useless,
    render_grammar,
)
from .oracle import (
    ENUM_CAP,
    BudgetExceeded,
    Dfa,
    EquivVerdict,
    Nfa,
    NonterminalLiteral,
    bounded_equiv,
    bounded_language,
    cfg_membership,
    dfa_equiv,
    dfa_equiv_bounded,
    lfp_bounded,
    minimize_dfa,
    nfa_to_dfa,
    regex_to_min_dfa,
    regex_to_nfa,
)
from .regex import (
    EMPTY,
    EPSILON,
    Concat,
    Empty,
    Epsilon,
    Literal,
    Regex,
    RegexSyntaxError,
    Star,
    Union,
    concat,
    literal,
    parse_regex,
    render_regex,
    simplify,
    star,
    union,
)
from .symbols import Symbol, classify_token, nonterminal, terminal
from .synthesis import CycleError, NotMnf, synthesize_regex, topological_order
from .unfolding import (
    EmptyLanguageWarning,
    InvalidPosition,
    SearchConfig,
    SearchOutcome,
    SearchStats,
    is_cnf,
    search_mnf,
    to_cnf,
    unfold_once,
    unfold_positions,
)

__all__ = [
    "BilateralEquation",
    "BudgetExceeded",
    "Concat",
    "CycleError",
    "DependencyDigraph",
    "Dfa",
    "EMPTY",
    "EPSILON",
    "ENUM_CAP",
    "Empty",
    "EmptyLanguageWarning",
    "Epsilon",
    "EquivVerdict",
    "Grammar",
    "GrammarError",
    "GrammarSyntaxError",
    "InvalidPosition",
    "Literal",
    "MnfReport",
    "Nfa",
    "NonterminalLiteral",
    "NotMnf",
    "PartitionFailure",
    "Production",
    "PseudoRegularPartition",
    "Regex",
    "RegexSyntaxError",
    "SearchConfig",
    "SearchOutcome",
    "SearchStats",
    "Star",
    "Symbol",
    "Union",
    "UnresolvedDependency",
    "arden_left_solve",
    "arden_right_solve",
    "body_text",
    "bounded_equiv",
    "bounded_language",
    "cfg_membership",
    "check_looking_forward",
    "check_mnf",
    "classify_token",
    "concat",
    "dependency_digraph",
    "dfa_equiv",
    "dfa_equiv_bounded",
    "equation_from_partition",
    "find_cycle",
    "is_cnf",
    "lfp_bounded",
    "literal",
    "make_grammar",
    "minimize_dfa",
    "nfa_to_dfa",
    "nonterminal",
    "parse_grammar",
    "parse_regex",
    "partition_productions",
    "prune_useless",
    "regex_to_min_dfa",
    "regex_to_nfa",
    "render_grammar",
    "render_regex",
    "search_mnf",
    "simplify",
    "solve_bilateral",
    "solve_equation",
    "star",
    "synthesize_regex",
    "terminal",
    "to_cnf",
    "topological_order",
    "unfold_once",
    "unfold_positions",
    "union",
]
