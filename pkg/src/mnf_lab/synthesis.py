"""Regular-expression synthesis for grammars that pass the MNF check.

Nonterminals are solved bottom-up along the (acyclic) dependency digraph:
when a nonterminal's turn comes, every nonterminal in its factors already
has a fully terminal regex, so a single bilateral solve finishes it.  The
axiom's entry is the result.
"""

from __future__ import annotations

import heapq
from collections import defaultdict

from .equations import UnresolvedDependency, equation_from_partition, solve_equation
from .grammar import (
    DependencyDigraph,
    Grammar,
    MnfReport,
    check_mnf,
    dependency_digraph,
    find_cycle,
)
from .regex import Regex, nonterminal_literals, simplify
from .symbols import Symbol


class CycleError(ValueError):
    """The digraph has a cycle; carries a closed witness walk."""

    def __init__(self, witness: list[Symbol]):
        self.witness = tuple(witness)
        super().__init__("cycle: " + " -> ".join(s.name for s in self.witness))


class NotMnf(ValueError):
    """Synthesis was asked for a grammar that fails the MNF check."""

    def __init__(self, report: MnfReport):
        self.report = report
        super().__init__("grammar is not in MNF")


def topological_order(d: DependencyDigraph) -> list[Symbol]:
    """Dependencies-first order with lexicographic tie-breaking.

    An arc (A, B) means A's bodies mention B, so B is emitted before A.
    Among the nodes that are ready at any point, the name-least one comes
    first, which makes the order (and everything downstream) reproducible.
    """
    pending = {node: 0 for node in d.nodes}
    dependents: dict[Symbol, list[Symbol]] = defaultdict(list)
    for a, b in d.arcs:
        pending[a] += 1
        dependents[b].append(a)

    by_name = {node.name: node for node in d.nodes}
    ready = [node.name for node, count in pending.items() if count == 0]
    heapq.heapify(ready)

    order: list[Symbol] = []
    while ready:
        node = by_name[heapq.heappop(ready)]
        order.append(node)
        for dep in dependents[node]:
            pending[dep] -= 1
            if pending[dep] == 0:
                heapq.heappush(ready, dep.name)

    if len(order) < len(d.nodes):
        witness = find_cycle(d)
        assert witness is not None
        raise CycleError(witness)
    return order


def synthesize_regex(g: Grammar) -> Regex:
    """Solve every nonterminal's equation and return the axiom's regex.

    Requires the grammar to pass :func:`mnf_lab.grammar.check_mnf`; raises
    :class:`NotMnf` (carrying the full report) otherwise.  The result
    contains terminal literals only.
    """
    report = check_mnf(g)
    if not report.is_mnf:
        raise NotMnf(report)

    env: dict[Symbol, Regex] = {}
    for nt in topological_order(dependency_digraph(g)):
        eq = equation_from_partition(report.partitions[nt], env)
        env[nt] = solve_equation(eq)

    result = simplify(env[g.axiom])
    leftover = nonterminal_literals(result)
    if leftover:
        # cannot happen when the report is consistent; guards internal bugs
        raise UnresolvedDependency(leftover)
    return result
