"""Shared test utilities: seeded generators and independent oracles.

The generators use explicit ``random.Random`` seeds so every suite run sees
exactly the same cases; the oracles implement second algorithms (iterative
topological peeling, pairwise distinguishability) against which the library
code is compared.
"""

from __future__ import annotations

import itertools
import random
from pathlib import Path

from mnf_lab import (
    EMPTY,
    EPSILON,
    DependencyDigraph,
    Dfa,
    Grammar,
    Literal,
    Production,
    Regex,
    concat,
    make_grammar,
    nonterminal,
    parse_grammar,
    star,
    terminal,
    union,
)

FIXTURES = Path(__file__).parent / "fixtures"
GOLDENS = Path(__file__).parent / "goldens"


def load_fixture(name: str) -> Grammar:
    return parse_grammar((FIXTURES / name).read_text())


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


# ---------------------------------------------------------------------------
# random generators


def random_regex(rng: random.Random, alphabet: list[str], depth: int) -> Regex:
    """Canonical random regex over the alphabet, AST depth at most ``depth``."""
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.70:
            return Literal(terminal(rng.choice(alphabet)))
        if roll < 0.85:
            return EPSILON
        return EMPTY
    kind = rng.choice(("concat", "union", "star"))
    if kind == "star":
        return star(random_regex(rng, alphabet, depth - 1))
    parts = [random_regex(rng, alphabet, depth - 1) for _ in range(rng.randint(2, 3))]
    return concat(*parts) if kind == "concat" else union(*parts)


def random_regex_triple(rng: random.Random) -> tuple[Regex, Regex, Regex]:
    """An (a, b, s) coefficient triple over at most three letters, depth <= 4."""
    alphabet = ["x", "y", "z"][: rng.randint(1, 3)]
    return tuple(random_regex(rng, alphabet, 4) for _ in range(3))


def random_grammar(rng: random.Random) -> Grammar:
    """Arbitrary small grammar; may have epsilon rules, unit cycles, recursion."""
    nts = [nonterminal(n) for n in ("S", "A", "B")[: rng.randint(1, 3)]]
    ts = [terminal(t) for t in ("a", "b", "c")[: rng.randint(1, 3)]]
    symbols = nts + ts
    productions = []
    for head in nts:
        for _ in range(rng.randint(1, 3)):
            body = tuple(rng.choice(symbols) for _ in range(rng.randint(0, 3)))
            productions.append(Production(head, body))
    return make_grammar(nts[0], productions)


def random_mnf_grammar(rng: random.Random) -> Grammar:
    """Shape-correct MNF grammar: linear dependency order + pseudo-regular bodies.

    Nonterminal i may reference only nonterminals after it in the name list,
    so the dependency digraph is acyclic by construction; every body is of
    the form alpha A, A beta or gamma with the owner kept out of the factor.
    """
    names = ["S", "A", "B", "C"][: rng.randint(1, 4)]
    nts = [nonterminal(n) for n in names]
    ts = [terminal(t) for t in ("a", "b", "c")[: rng.randint(1, 3)]]
    productions = []
    for i, owner in enumerate(nts):
        allowed = ts + nts[i + 1:]
        for _ in range(rng.randint(1, 3)):
            shape = rng.choices(("left", "right", "const"), weights=(1, 1, 2))[0]
            low = 0 if shape == "const" else 1
            seq = tuple(rng.choice(allowed) for _ in range(rng.randint(low, 3)))
            if shape == "left":
                body = seq + (owner,)
            elif shape == "right":
                body = (owner,) + seq
            else:
                body = seq
            productions.append(Production(owner, body))
    return make_grammar(nts[0], productions)


def random_digraph(rng: random.Random, max_nodes: int = 8) -> DependencyDigraph:
    count = rng.randint(1, max_nodes)
    nodes = [nonterminal(f"N{i}") for i in range(count)]
    density = rng.uniform(0.05, 0.5)
    arcs = {
        (a, b)
        for a in nodes
        for b in nodes
        if a != b and rng.random() < density
    }
    return DependencyDigraph(frozenset(nodes), frozenset(arcs))


# ---------------------------------------------------------------------------
# independent oracles


def peeling_is_acyclic(d: DependencyDigraph) -> bool:
    """Iterative topological peeling: repeatedly remove sink-free nodes."""
    remaining = set(d.nodes)
    arcs = set(d.arcs)
    while remaining:
        sinks = {n for n in remaining if not any(a == n for a, _ in arcs)}
        if not sinks:
            return False
        remaining -= sinks
        arcs = {(a, b) for a, b in arcs if b not in sinks and a not in sinks}
    return True


def reachable_states(d: Dfa) -> set[int]:
    seen = {d.start}
    todo = [d.start]
    while todo:
        state = todo.pop()
        for symbol in d.alphabet:
            nxt = d.delta[(state, symbol)]
            if nxt not in seen:
                seen.add(nxt)
                todo.append(nxt)
    return seen


def distinguishable_classes(d: Dfa) -> int:
    """Minimal state count of the reachable part, by pairwise marking.

    Two states are distinguishable iff one accepts and the other does not,
    or some symbol leads them to a distinguishable pair; the fixpoint of
    that marking yields the Myhill-Nerode classes.
    """
    states = sorted(reachable_states(d))
    marked = {
        (p, q)
        for p, q in itertools.combinations(states, 2)
        if (p in d.accepting) != (q in d.accepting)
    }
    changed = True
    while changed:
        changed = False
        for p, q in itertools.combinations(states, 2):
            if (p, q) in marked:
                continue
            for symbol in d.alphabet:
                np, nq = d.delta[(p, symbol)], d.delta[(q, symbol)]
                if np == nq:
                    continue
                key = (np, nq) if np < nq else (nq, np)
                if key in marked:
                    marked.add((p, q))
                    changed = True
                    break
    classes = 0
    for i, state in enumerate(states):
        if all((states[j], state) in marked for j in range(i)):
            classes += 1
    return classes


def all_words(alphabet: list[str], n: int) -> list[tuple[str, ...]]:
    """Every word over the alphabet up to length n, shortest-then-lex order."""
    out: list[tuple[str, ...]] = []
    for length in range(n + 1):
        out.extend(itertools.product(sorted(alphabet), repeat=length))
    return out
