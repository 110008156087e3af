"""Chomsky normal form and the budgeted search for an MNF-equivalent grammar.

The rewriting step is classic unfolding: pick one nonterminal occurrence in
one production body and splice in every alternative of that nonterminal.
Each step preserves the language exactly, so a hit found by the search is
sound by construction; it is still re-verified against the original grammar
with the bounded oracle before being reported.

The search itself is breadth-first with structural deduplication and
explicit depth/candidate budgets.  Unfolding a recursive grammar never
terminates on its own, so exhausting the budget is a normal, reported
outcome rather than an error.
"""

from __future__ import annotations

import warnings
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterator

from .grammar import (
    Grammar,
    Production,
    check_mnf,
    make_grammar,
    prune_useless,
    render_grammar,
)
from .oracle import ENUM_CAP, bounded_equiv
from .regex import Regex, render_regex
from .symbols import Symbol, nonterminal
from .synthesis import synthesize_regex

# bound used to re-verify a found grammar's regex against the search input
SEARCH_VERIFY_BOUND = 8


class InvalidPosition(IndexError):
    """The (production, body position) pair cannot be unfolded."""


class EmptyLanguageWarning(UserWarning):
    """The grammar generates no string at all."""


@dataclass(frozen=True)
class SearchConfig:
    """Budgets for the unfolding search.

    ``max_depth`` counts unfolding rounds from the start grammar;
    ``max_candidates`` caps how many distinct grammars are examined.
    """

    max_depth: int = 3
    max_candidates: int = 10_000
    start_from_cnf: bool = False

    def __post_init__(self) -> None:
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")
        if self.max_candidates < 1:
            raise ValueError("max_candidates must be at least 1")


@dataclass(frozen=True)
class SearchStats:
    explored: int
    depth: int
    deduped: int


@dataclass(frozen=True)
class SearchOutcome:
    """Result of a search: a verified MNF grammar with its regex, or statistics."""

    found: bool
    grammar: Grammar | None
    regex: Regex | None
    stats: SearchStats

    def as_json(self) -> dict:
        return {
            "found": self.found,
            "grammar": render_grammar(self.grammar) if self.grammar else None,
            "regex": render_regex(self.regex) if self.regex else None,
            "stats": {
                "explored": self.stats.explored,
                "depth": self.stats.depth,
                "deduped": self.stats.deduped,
            },
        }


# ---------------------------------------------------------------------------
# Chomsky normal form


def _fresh_name(base: str, taken: set[str]) -> str:
    if base not in taken:
        taken.add(base)
        return base
    index = 2
    while f"{base}{index}" in taken:
        index += 1
    taken.add(f"{base}{index}")
    return f"{base}{index}"


def _nullable(productions: list[Production]) -> set[Symbol]:
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in productions:
            if p.head not in nullable and all(
                not s.terminal and s in nullable for s in p.body
            ):
                nullable.add(p.head)
                changed = True
    return nullable


def to_cnf(g: Grammar) -> Grammar:
    """Transform to Chomsky normal form, preserving the language exactly.

    Output productions are all ``A -> B C`` or ``A -> a``, plus one
    ``S -> eps`` when the language contains the empty string (with ``S``
    kept off every right-hand side).  A grammar that generates nothing
    degenerates to an axiom without productions, flagged by
    :class:`EmptyLanguageWarning`.
    """
    taken = {s.name for s in g.terminals | g.nonterminals}
    productions = list(g.productions)
    axiom = g.axiom

    # START: keep the axiom off right-hand sides
    if any(axiom in p.body for p in productions):
        axiom = nonterminal(_fresh_name(g.axiom.name + "0", taken))
        productions.insert(0, Production(axiom, (g.axiom,)))

    # TERM: wrap terminals appearing in long bodies
    wrappers: dict[Symbol, Symbol] = {}
    wrapped: list[Production] = []
    for p in productions:
        if len(p.body) >= 2:
            body = []
            for s in p.body:
                if s.terminal:
                    if s not in wrappers:
                        wrappers[s] = nonterminal(_fresh_name("T_" + s.name, taken))
                    body.append(wrappers[s])
                else:
                    body.append(s)
            wrapped.append(Production(p.head, tuple(body)))
        else:
            wrapped.append(p)
    wrapped.extend(Production(w, (t,)) for t, w in wrappers.items())
    productions = wrapped

    # BIN: split bodies longer than two
    binned: list[Production] = []
    for p in productions:
        body = p.body
        head = p.head
        while len(body) > 2:
            link = nonterminal(_fresh_name("B_" + p.head.name, taken))
            binned.append(Production(head, (body[0], link)))
            head, body = link, body[1:]
        binned.append(Production(head, body))
    productions = binned

    # DEL: eliminate epsilon productions (bodies are short, so variants are few)
    nullable = _nullable(productions)
    generates_empty = axiom in nullable
    expanded: set[Production] = set()
    ordered: list[Production] = []
    for p in productions:
        variants = [()]
        for s in p.body:
            with_symbol = [v + (s,) for v in variants]
            if not s.terminal and s in nullable:
                variants = with_symbol + variants
            else:
                variants = with_symbol
        for body in variants:
            if not body:
                continue
            candidate = Production(p.head, tuple(body))
            if candidate not in expanded:
                expanded.add(candidate)
                ordered.append(candidate)
    productions = ordered

    # UNIT: close over A -> B chains and inline the non-unit bodies
    def is_unit(p: Production) -> bool:
        return len(p.body) == 1 and not p.body[0].terminal

    unit_edges: dict[Symbol, set[Symbol]] = defaultdict(set)
    for p in productions:
        if is_unit(p):
            unit_edges[p.head].add(p.body[0])

    def unit_closure(head: Symbol) -> list[Symbol]:
        seen = {head}
        todo = [head]
        while todo:
            for nxt in unit_edges[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return sorted(seen, key=lambda s: s.name)

    heads = {p.head for p in productions} | {axiom}
    final: list[Production] = []
    final_seen: set[Production] = set()
    for origin in sorted(heads, key=lambda s: s.name):
        for target in unit_closure(origin):
            for p in productions:
                if p.head != target or is_unit(p):
                    continue
                candidate = Production(origin, p.body)
                if candidate not in final_seen:
                    final_seen.add(candidate)
                    final.append(candidate)
    if generates_empty:
        final.insert(0, Production(axiom, ()))

    result = prune_useless(make_grammar(axiom, final))
    if not result.productions_for(axiom):
        warnings.warn("grammar generates the empty language", EmptyLanguageWarning,
                      stacklevel=2)
    return result


def is_cnf(g: Grammar) -> bool:
    """Shape check: every production is A -> B C, A -> a, or an axiom epsilon."""
    axiom_on_rhs = any(g.axiom in p.body for p in g.productions)
    for p in g.productions:
        if p.body == ():
            if p.head != g.axiom or axiom_on_rhs:
                return False
        elif len(p.body) == 1:
            if not p.body[0].terminal:
                return False
        elif len(p.body) == 2:
            if any(s.terminal for s in p.body):
                return False
        else:
            return False
    return True


# ---------------------------------------------------------------------------
# unfolding


def _prune_unreachable(g: Grammar, axiom: Symbol) -> Grammar:
    reachable = {axiom}
    frontier = [axiom]
    while frontier:
        head = frontier.pop()
        for p in g.productions:
            if p.head != head:
                continue
            for s in p.body:
                if not s.terminal and s not in reachable:
                    reachable.add(s)
                    frontier.append(s)
    kept = [p for p in g.productions if p.head in reachable]
    return make_grammar(axiom, kept)


def unfold_once(g: Grammar, at: tuple[int, int]) -> list[Grammar]:
    """Splice every alternative of the nonterminal at ``at`` into that slot.

    ``at`` is (production index, body position); the position must hold a
    nonterminal other than the production's own head.  The original
    production is replaced by one variant per alternative, so the language
    is unchanged; nonterminals that lose their last reference are pruned
    (the axiom never is).
    """
    index, position = at
    if not 0 <= index < len(g.productions):
        raise InvalidPosition(f"no production at index {index}")
    target_production = g.productions[index]
    if not 0 <= position < len(target_production.body):
        raise InvalidPosition(f"no body position {position} in {target_production}")
    symbol = target_production.body[position]
    if symbol.terminal:
        raise InvalidPosition(f"position {position} of {target_production} holds a terminal")
    if symbol == target_production.head:
        raise InvalidPosition(f"refusing to unfold the self-reference in {target_production}")

    new_productions: list[Production] = []
    seen: set[Production] = set()
    for i, p in enumerate(g.productions):
        variants: list[Production]
        if i != index:
            variants = [p]
        else:
            variants = [
                Production(p.head, p.body[:position] + alt.body + p.body[position + 1:])
                for alt in g.productions_for(symbol)
            ]
        for candidate in variants:
            if candidate not in seen:
                seen.add(candidate)
                new_productions.append(candidate)

    unfolded = _prune_unreachable(make_grammar(g.axiom, new_productions), g.axiom)
    return [unfolded]


def unfold_positions(g: Grammar) -> Iterator[tuple[int, int]]:
    """All (production index, body position) pairs that unfold_once accepts."""
    for i, p in enumerate(g.productions):
        for j, s in enumerate(p.body):
            if not s.terminal and s != p.head:
                yield i, j


def _structural_key(g: Grammar):
    return (
        g.axiom.name,
        frozenset(
            (p.head.name, tuple((s.name, s.terminal) for s in p.body))
            for p in g.productions
        ),
    )


def search_mnf(
    g: Grammar, config: SearchConfig = SearchConfig(), *, cap: int = ENUM_CAP
) -> SearchOutcome:
    """Breadth-first unfolding search for a grammar that passes the MNF check.

    The first hit in BFS order is synthesized and verified against the
    *input* grammar at bound ``SEARCH_VERIFY_BOUND`` before being reported.
    Budget exhaustion returns ``found=False`` with honest statistics.
    Identical inputs always produce identical outcomes.
    """
    start = to_cnf(g) if config.start_from_cnf else g
    seen = {_structural_key(start)}
    queue: deque[tuple[Grammar, int]] = deque([(start, 0)])
    explored = 0
    deduped = 0
    depth_reached = 0

    while queue and explored < config.max_candidates:
        current, depth = queue.popleft()
        explored += 1
        depth_reached = max(depth_reached, depth)

        if check_mnf(current).is_mnf:
            regex = synthesize_regex(current)
            verdict = bounded_equiv(g, regex, SEARCH_VERIFY_BOUND, cap=cap)
            if not verdict.equivalent:
                raise RuntimeError(
                    "unfolding produced a language change "
                    f"(counterexample {verdict.counterexample}); this is a bug"
                )
            return SearchOutcome(True, current, regex, SearchStats(explored, depth, deduped))

        if depth >= config.max_depth:
            continue
        for position in unfold_positions(current):
            for child in unfold_once(current, position):
                key = _structural_key(child)
                if key in seen:
                    deduped += 1
                    continue
                seen.add(key)
                queue.append((child, depth + 1))

    return SearchOutcome(False, None, None, SearchStats(explored, depth_reached, deduped))
