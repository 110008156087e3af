"""Context-free grammar model, text format, and the MNF decision.

A grammar is in MNF when two independent conditions hold:

* *looking forward*: the digraph that connects each nonterminal to the
  distinct other nonterminals occurring in its production bodies is acyclic;
* every nonterminal ``A`` admits a *pseudo-regular partition*: each of its
  productions has one of the shapes ``A -> alpha A`` (left factor),
  ``A -> A beta`` (right factor) or ``A -> gamma`` (constant), where
  ``alpha``, ``beta`` and ``gamma`` never mention ``A``.

Such grammars denote regular languages, and the partition is exactly what
the equation solver in :mod:`mnf_lab.equations` consumes.

Grammar file format (UTF-8 text)::

    # comment to end of line; blank lines ignored
    start: S                    # required header, first non-comment line
    S -> a b c S | S d e f | g h i | eps
    A -> u A | A v | m          # more rule lines; same-head lines merge

Alternatives are whitespace-separated token sequences; ``eps`` alone denotes
the empty body.  Tokens starting with an ASCII uppercase letter are
nonterminals, all others terminals.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from .symbols import Symbol, classify_token


class GrammarError(ValueError):
    """Invalid grammar structure or failed validation."""


class GrammarSyntaxError(GrammarError):
    """Malformed grammar text; carries the 1-based line (and column)."""

    def __init__(self, message: str, line: int, column: int | None = None):
        at = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{message} ({at})")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Production:
    """One rule ``head -> body``; an empty body is an epsilon production."""

    head: Symbol
    body: tuple[Symbol, ...]

    def __post_init__(self) -> None:
        if self.head.terminal:
            raise GrammarError(f"production head must be a nonterminal: {self.head}")

    def __str__(self) -> str:
        return f"{self.head.name} -> {body_text(self.body)}"


def body_text(body: Sequence[Symbol]) -> str:
    """Render a body as space-separated tokens, ``eps`` when empty."""
    return " ".join(s.name for s in body) if body else "eps"


@dataclass(frozen=True)
class Grammar:
    """Immutable grammar: terminals, nonterminals, axiom, ordered productions."""

    terminals: frozenset[Symbol]
    nonterminals: frozenset[Symbol]
    axiom: Symbol
    productions: tuple[Production, ...]

    def __post_init__(self) -> None:
        overlap = {s.name for s in self.terminals} & {s.name for s in self.nonterminals}
        if overlap:
            names = ", ".join(sorted(overlap))
            raise GrammarError(f"symbol names both terminal and nonterminal: {names}")
        if self.axiom not in self.nonterminals:
            raise GrammarError(f"axiom {self.axiom.name} is not a nonterminal of the grammar")
        alphabet = self.terminals | self.nonterminals
        for p in self.productions:
            if p.head not in self.nonterminals:
                raise GrammarError(f"unknown production head: {p.head.name}")
            for s in p.body:
                if s not in alphabet:
                    raise GrammarError(f"unknown symbol {s.name} in {p}")

    def productions_for(self, head: Symbol) -> tuple[Production, ...]:
        return tuple(p for p in self.productions if p.head == head)

    def defined_nonterminals(self) -> frozenset[Symbol]:
        return frozenset(p.head for p in self.productions)

    def __str__(self) -> str:
        return render_grammar(self)


def make_grammar(axiom: Symbol, productions: Sequence[Production]) -> Grammar:
    """Build a grammar, inferring the symbol sets from the productions.

    Nonterminals that are referenced but never defined are kept in the
    nonterminal set (they generate the empty language); policy checks such
    as "every nonterminal needs a rule" belong to :func:`parse_grammar`.
    """
    nonterminals = {axiom} | {p.head for p in productions}
    terminals: set[Symbol] = set()
    for p in productions:
        for s in p.body:
            (terminals if s.terminal else nonterminals).add(s)
    return Grammar(frozenset(terminals), frozenset(nonterminals), axiom, tuple(productions))


_HEADER = "start:"
_FORBIDDEN_IN_TOKENS = "()*+|"


def parse_grammar(
    text: str,
    *,
    allow_undefined: bool = False,
    keep_self_rules: bool = False,
) -> Grammar:
    """Parse grammar text into a validated :class:`Grammar`.

    ``allow_undefined`` permits nonterminals without any production (they
    generate the empty language); by default they are an error.  A rule
    ``A -> A`` never changes the generated language and is dropped with a
    warning unless ``keep_self_rules`` is set.
    """
    axiom: Symbol | None = None
    productions: list[Production] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if axiom is None:
            if not line.startswith(_HEADER):
                raise GrammarSyntaxError("expected 'start: <Nonterminal>' header", lineno)
            name = line[len(_HEADER):].strip()
            if not name or len(name.split()) != 1:
                raise GrammarSyntaxError("header must name exactly one start symbol", lineno)
            axiom = classify_token(name)
            if axiom.terminal:
                raise GrammarSyntaxError(
                    f"start symbol {name!r} must be uppercase-initial", lineno,
                    raw.index(name) + 1,
                )
            continue
        if "->" not in line:
            raise GrammarSyntaxError("expected '<Head> -> <alternatives>'", lineno)
        head_text, rhs = line.split("->", 1)
        head_token = head_text.strip()
        if not head_token or len(head_token.split()) != 1:
            raise GrammarSyntaxError("rule head must be a single token", lineno)
        head = _token(head_token, lineno, raw)
        if head.terminal:
            raise GrammarSyntaxError(
                f"rule head {head_token!r} must be uppercase-initial", lineno,
                raw.index(head_token) + 1,
            )
        for alt in rhs.split("|"):
            tokens = alt.split()
            if not tokens:
                raise GrammarSyntaxError("empty alternative (use 'eps')", lineno)
            if tokens == ["eps"]:
                productions.append(Production(head, ()))
                continue
            if "eps" in tokens:
                raise GrammarSyntaxError("'eps' must stand alone in an alternative", lineno)
            productions.append(Production(head, tuple(_token(t, lineno, raw) for t in tokens)))

    if axiom is None:
        raise GrammarSyntaxError("missing 'start: <Nonterminal>' header", 1)

    if not keep_self_rules:
        kept = []
        for p in productions:
            if p.body == (p.head,):
                warnings.warn(f"dropping redundant rule {p}", stacklevel=2)
            else:
                kept.append(p)
        productions = kept

    grammar = make_grammar(axiom, productions)
    defined = grammar.defined_nonterminals()
    if axiom not in defined:
        raise GrammarError(f"axiom {axiom.name} has no productions")
    if not allow_undefined:
        missing = sorted(s.name for s in grammar.nonterminals - defined)
        if missing:
            raise GrammarError(
                "nonterminal(s) without productions: " + ", ".join(missing)
                + " (they generate nothing; pass allow_undefined=True to permit)"
            )
    return grammar


def _token(token: str, lineno: int, raw: str) -> Symbol:
    if token == "void":
        raise GrammarSyntaxError("'void' is a reserved token", lineno, raw.index(token) + 1)
    bad = [c for c in token if c in _FORBIDDEN_IN_TOKENS]
    if bad:
        raise GrammarSyntaxError(
            f"token {token!r} contains reserved character {bad[0]!r}", lineno,
            raw.index(token) + 1,
        )
    return classify_token(token)


def render_grammar(g: Grammar) -> str:
    """Render back to the file format, one rule line per head."""
    by_head: dict[Symbol, list[str]] = {}
    order: list[Symbol] = []
    for p in g.productions:
        if p.head not in by_head:
            by_head[p.head] = []
            order.append(p.head)
        by_head[p.head].append(body_text(p.body))
    lines = [f"start: {g.axiom.name}"]
    lines += [f"{head.name} -> " + " | ".join(by_head[head]) for head in order]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DependencyDigraph:
    """Arcs connect a nonterminal to the *other* nonterminals in its bodies."""

    nodes: frozenset[Symbol]
    arcs: frozenset[tuple[Symbol, Symbol]]

    def __post_init__(self) -> None:
        for a, b in self.arcs:
            if a == b:
                raise GrammarError(f"self-arc {a.name} -> {b.name} is not allowed")
            if a not in self.nodes or b not in self.nodes:
                raise GrammarError(f"arc {a.name} -> {b.name} references unknown node")


def dependency_digraph(g: Grammar) -> DependencyDigraph:
    """Build the nonterminal dependency digraph (self-occurrences excluded)."""
    arcs = {
        (p.head, s)
        for p in g.productions
        for s in p.body
        if not s.terminal and s != p.head
    }
    return DependencyDigraph(frozenset(g.nonterminals), frozenset(arcs))


def find_cycle(d: DependencyDigraph) -> list[Symbol] | None:
    """Depth-first back-edge search for a cycle.

    Returns a closed walk ``[N1, ..., Nk, N1]`` whose consecutive pairs are
    all arcs, rotated to start at the name-least node, or None when the
    digraph is acyclic.  Node and arc order are fixed by name, so the result
    is deterministic.
    """
    succ: dict[Symbol, list[Symbol]] = {n: [] for n in d.nodes}
    for a, b in sorted(d.arcs, key=lambda arc: (arc[0].name, arc[1].name)):
        succ[a].append(b)

    WHITE, GREY, BLACK = 0, 1, 2
    color = {n: WHITE for n in d.nodes}
    path: list[Symbol] = []

    def visit(node: Symbol) -> list[Symbol] | None:
        color[node] = GREY
        path.append(node)
        for nxt in succ[node]:
            if color[nxt] == GREY:
                cycle = path[path.index(nxt):]
                least = min(range(len(cycle)), key=lambda i: cycle[i].name)
                cycle = cycle[least:] + cycle[:least]
                return cycle + [cycle[0]]
            if color[nxt] == WHITE:
                found = visit(nxt)
                if found is not None:
                    return found
        path.pop()
        color[node] = BLACK
        return None

    for node in sorted(d.nodes, key=lambda s: s.name):
        if color[node] == WHITE:
            found = visit(node)
            if found is not None:
                return found
    return None


def check_looking_forward(g: Grammar) -> tuple[bool, list[Symbol] | None]:
    """True iff the dependency digraph is acyclic; else a cycle witness."""
    cycle = find_cycle(dependency_digraph(g))
    return cycle is None, cycle


@dataclass(frozen=True)
class PseudoRegularPartition:
    """The three-way split of one nonterminal's productions.

    ``left_factors`` holds the alpha of each ``A -> alpha A``,
    ``right_factors`` the beta of each ``A -> A beta``, ``constants`` the
    gamma of each ``A -> gamma``; none of them ever contains the owner.
    """

    owner: Symbol
    left_factors: tuple[tuple[Symbol, ...], ...]
    right_factors: tuple[tuple[Symbol, ...], ...]
    constants: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self) -> None:
        for group in (self.left_factors, self.right_factors, self.constants):
            for seq in group:
                if self.owner in seq:
                    raise GrammarError(
                        f"factor {body_text(seq)} mentions its owner {self.owner.name}"
                    )


class PartitionFailure(GrammarError):
    """Some productions fit none of the pseudo-regular shapes."""

    def __init__(self, owner: Symbol, offenders: tuple[Production, ...]):
        self.owner = owner
        self.offenders = offenders
        listing = "; ".join(str(p) for p in offenders)
        super().__init__(f"no pseudo-regular partition for {owner.name}: {listing}")


def partition_productions(g: Grammar, owner: Symbol) -> PseudoRegularPartition:
    """Split the owner's productions into the three pseudo-regular shapes.

    A body consisting of the owner alone fits both recursive shapes; it is
    classified as a left factor with an empty prefix, which is the only
    ambiguous case.  Bodies with the owner in the interior, at both ends, or
    more than once fit no shape and raise :class:`PartitionFailure`.
    """
    if owner not in g.nonterminals:
        raise GrammarError(f"{owner.name} is not a nonterminal of the grammar")
    left: list[tuple[Symbol, ...]] = []
    right: list[tuple[Symbol, ...]] = []
    consts: list[tuple[Symbol, ...]] = []
    offenders: list[Production] = []
    for p in g.productions:
        if p.head != owner:
            continue
        body = p.body
        if owner not in body:
            consts.append(body)
        elif body == (owner,):
            left.append(())
        elif body[-1] == owner and owner not in body[:-1]:
            left.append(body[:-1])
        elif body[0] == owner and owner not in body[1:]:
            right.append(body[1:])
        else:
            offenders.append(p)
    if offenders:
        raise PartitionFailure(owner, tuple(offenders))
    return PseudoRegularPartition(owner, tuple(left), tuple(right), tuple(consts))


@dataclass(frozen=True)
class MnfReport:
    """Aggregated verdict of the MNF check.

    ``partitions`` holds the successful splits only; every production that
    fits no shape is collected in ``offenders`` (so a nonterminal failed iff
    it is missing from ``partitions``).  ``is_mnf`` is derived, never stored.
    """

    looking_forward: bool
    cycle: tuple[Symbol, ...] | None
    partitions: Mapping[Symbol, PseudoRegularPartition]
    offenders: tuple[Production, ...]

    @property
    def is_mnf(self) -> bool:
        return self.looking_forward and not self.offenders

    def as_json(self) -> dict:
        return {
            "is_mnf": self.is_mnf,
            "looking_forward": self.looking_forward,
            "cycle": [s.name for s in self.cycle] if self.cycle else None,
            "partitions": {
                nt.name: {
                    "left": [body_text(f) for f in part.left_factors],
                    "right": [body_text(f) for f in part.right_factors],
                    "const": [body_text(f) for f in part.constants],
                }
                for nt, part in self.partitions.items()
            },
            "offenders": [str(p) for p in self.offenders],
        }


def check_mnf(g: Grammar) -> MnfReport:
    """Decide MNF membership, aggregating every failure instead of stopping."""
    looking_forward, cycle = check_looking_forward(g)
    partitions: dict[Symbol, PseudoRegularPartition] = {}
    offenders: list[Production] = []
    for nt in sorted(g.nonterminals, key=lambda s: s.name):
        try:
            partitions[nt] = partition_productions(g, nt)
        except PartitionFailure as failure:
            offenders.extend(failure.offenders)
    return MnfReport(
        looking_forward,
        tuple(cycle) if cycle else None,
        partitions,
        tuple(offenders),
    )


def prune_useless(g: Grammar) -> Grammar:
    """Drop unproductive and unreachable nonterminals (and their rules).

    The axiom is always kept, even when the result generates nothing.
    """
    productive: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head in productive:
                continue
            if all(s.terminal or s in productive for s in p.body):
                productive.add(p.head)
                changed = True

    usable = [
        p for p in g.productions
        if p.head in productive and all(s.terminal or s in productive for s in p.body)
    ]

    reachable = {g.axiom}
    frontier = [g.axiom]
    while frontier:
        head = frontier.pop()
        for p in usable:
            if p.head != head:
                continue
            for s in p.body:
                if not s.terminal and s not in reachable:
                    reachable.add(s)
                    frontier.append(s)

    kept = [p for p in usable if p.head in reachable]
    return make_grammar(g.axiom, kept)
