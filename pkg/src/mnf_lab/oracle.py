"""Independent verification machinery: automata, membership, enumeration.

Everything here exists to check the rest of the package by a second route.
Regexes compile to automata (Thompson construction, subset construction,
Hopcroft minimization); grammar membership is an Earley chart parse; and
bounded languages come from three separate evaluators:

* direct tree semantics for regexes,
* pruned graph walks for DFAs,
* derivation closure (or brute-force membership) for grammars,

so agreement between routes is meaningful evidence, not a tautology.

Words are tuples of terminal token names.  Equivalence verdicts always say
which length bound they used (``None`` means the check was exact), and
enumerations refuse to run past a work cap instead of silently truncating.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Sequence

from .grammar import Grammar
from .regex import (
    Concat,
    Empty,
    Epsilon,
    Literal,
    Regex,
    Star,
    Union,
    nonterminal_literals,
)
from .symbols import Symbol

Word = tuple[str, ...]

# Default work cap for enumeration-style operations (strings examined or
# concatenation pairs formed).  Exceeding it raises BudgetExceeded.
ENUM_CAP = 2_000_000

IN_LEFT_ONLY = "in-left-only"
IN_RIGHT_ONLY = "in-right-only"


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its work cap."""


class NonterminalLiteral(ValueError):
    """A regex contains nonterminal literals where only terminals work."""

    def __init__(self, symbols: Iterable[Symbol]):
        names = ", ".join(s.name for s in symbols)
        super().__init__(f"regex contains nonterminal literal(s): {names}")


class _Budget:
    __slots__ = ("left",)

    def __init__(self, cap: int):
        self.left = cap

    def spend(self, amount: int = 1) -> None:
        self.left -= amount
        if self.left < 0:
            raise BudgetExceeded("enumeration cap exceeded")


@dataclass(frozen=True)
class Nfa:
    """Nondeterministic automaton; ``None`` transition labels are epsilon."""

    states: frozenset[int]
    alphabet: frozenset[str]
    transitions: frozenset[tuple[int, str | None, int]]
    start: int
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        for src, label, dst in self.transitions:
            if src not in self.states or dst not in self.states:
                raise ValueError(f"transition ({src}, {label!r}, {dst}) leaves the state set")
            if label is not None and label not in self.alphabet:
                raise ValueError(f"transition label {label!r} not in the alphabet")
        if self.start not in self.states or not self.accepting <= self.states:
            raise ValueError("start/accepting states must belong to the state set")


@dataclass(frozen=True)
class Dfa:
    """Deterministic automaton with a total transition function."""

    states: frozenset[int]
    alphabet: frozenset[str]
    delta: Mapping[tuple[int, str], int]
    start: int
    accepting: frozenset[int]

    def __post_init__(self) -> None:
        if self.start not in self.states or not self.accepting <= self.states:
            raise ValueError("start/accepting states must belong to the state set")
        for state in self.states:
            for symbol in self.alphabet:
                target = self.delta.get((state, symbol))
                if target is None:
                    raise ValueError(f"delta is not total: missing ({state}, {symbol!r})")
                if target not in self.states:
                    raise ValueError(f"delta({state}, {symbol!r}) leaves the state set")

    def accepts(self, word: Sequence[str]) -> bool:
        state = self.start
        for token in word:
            if token not in self.alphabet:
                return False
            state = self.delta[(state, token)]
        return state in self.accepting


@dataclass(frozen=True)
class EquivVerdict:
    """Outcome of a language comparison.

    ``side`` says where the counterexample lives; ``bound`` is the length
    bound the comparison used (None for an exact check).
    """

    equivalent: bool
    counterexample: Word | None
    side: str | None
    bound: int | None

    def __post_init__(self) -> None:
        if self.equivalent != (self.counterexample is None):
            raise ValueError("counterexample must be present exactly when not equivalent")
        if self.counterexample is not None:
            if self.side not in (IN_LEFT_ONLY, IN_RIGHT_ONLY):
                raise ValueError(f"bad side tag: {self.side!r}")
            if self.bound is not None and len(self.counterexample) > self.bound:
                raise ValueError("counterexample longer than the bound checked")

    def as_json(self) -> dict:
        return {
            "equivalent": self.equivalent,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "side": self.side,
            "bound": self.bound,
        }


def _checked_verdict(
    word: Word,
    bound: int | None,
    in_left: Callable[[Word], bool],
    in_right: Callable[[Word], bool],
) -> EquivVerdict:
    # counterexamples are re-checked on construction, by routes independent
    # of the enumeration that produced them
    left, right = in_left(word), in_right(word)
    if left == right:
        raise RuntimeError(f"counterexample {word!r} failed its membership recheck")
    side = IN_LEFT_ONLY if left else IN_RIGHT_ONLY
    return EquivVerdict(False, word, side, bound)


# ---------------------------------------------------------------------------
# regex -> NFA -> DFA -> minimal DFA


def regex_to_nfa(r: Regex) -> Nfa:
    """Thompson construction; at most two fresh states per AST node."""
    bad = nonterminal_literals(r)
    if bad:
        raise NonterminalLiteral(bad)

    transitions: list[tuple[int, str | None, int]] = []
    counter = itertools.count()

    def fresh() -> int:
        return next(counter)

    def build(node: Regex) -> tuple[int, int]:
        if isinstance(node, Empty):
            return fresh(), fresh()
        if isinstance(node, Epsilon):
            s, e = fresh(), fresh()
            transitions.append((s, None, e))
            return s, e
        if isinstance(node, Literal):
            s, e = fresh(), fresh()
            transitions.append((s, node.symbol.name, e))
            return s, e
        if isinstance(node, Concat):
            first_start, prev_end = build(node.parts[0])
            for part in node.parts[1:]:
                nxt_start, nxt_end = build(part)
                transitions.append((prev_end, None, nxt_start))
                prev_end = nxt_end
            return first_start, prev_end
        if isinstance(node, Union):
            s, e = fresh(), fresh()
            for part in node.parts:
                ps, pe = build(part)
                transitions.append((s, None, ps))
                transitions.append((pe, None, e))
            return s, e
        if isinstance(node, Star):
            s, e = fresh(), fresh()
            inner_start, inner_end = build(node.inner)
            transitions.append((s, None, inner_start))
            transitions.append((inner_end, None, e))
            transitions.append((s, None, e))
            transitions.append((inner_end, None, inner_start))
            return s, e
        raise TypeError(f"not a regex: {node!r}")

    start, end = build(r)
    n_states = next(counter)
    alphabet = frozenset(label for _, label, _ in transitions if label is not None)
    return Nfa(frozenset(range(n_states)), alphabet, frozenset(transitions), start, frozenset({end}))


def nfa_accepts(n: Nfa, word: Sequence[str]) -> bool:
    """Direct NFA simulation (used by tests as a pipeline-independent check)."""
    eps: dict[int, list[int]] = defaultdict(list)
    moves: dict[tuple[int, str], list[int]] = defaultdict(list)
    for src, label, dst in n.transitions:
        if label is None:
            eps[src].append(dst)
        else:
            moves[(src, label)].append(dst)

    def closure(states: set[int]) -> set[int]:
        todo = list(states)
        seen = set(states)
        while todo:
            for nxt in eps[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    current = closure({n.start})
    for token in word:
        current = closure({dst for state in current for dst in moves[(state, token)]})
        if not current:
            return False
    return bool(current & n.accepting)


def nfa_to_dfa(n: Nfa) -> Dfa:
    """Subset construction over epsilon closures.

    The empty subset acts as an explicit sink, keeping delta total; state
    numbering follows discovery order with symbols sorted, so the result is
    deterministic.
    """
    eps: dict[int, list[int]] = defaultdict(list)
    moves: dict[tuple[int, str], set[int]] = defaultdict(set)
    for src, label, dst in n.transitions:
        if label is None:
            eps[src].append(dst)
        else:
            moves[(src, label)].add(dst)

    def closure(states: Iterable[int]) -> frozenset[int]:
        todo = list(states)
        seen = set(todo)
        while todo:
            for nxt in eps[todo.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return frozenset(seen)

    symbols = sorted(n.alphabet)
    start = closure({n.start})
    ids: dict[frozenset[int], int] = {start: 0}
    order = [start]
    queue = deque([start])
    delta: dict[tuple[int, str], int] = {}
    while queue:
        subset = queue.popleft()
        sid = ids[subset]
        for symbol in symbols:
            target = closure({dst for state in subset for dst in moves[(state, symbol)]})
            if target not in ids:
                ids[target] = len(ids)
                order.append(target)
                queue.append(target)
            delta[(sid, symbol)] = ids[target]
    accepting = frozenset(ids[subset] for subset in order if subset & n.accepting)
    return Dfa(frozenset(range(len(ids))), n.alphabet, delta, 0, accepting)


def minimize_dfa(d: Dfa) -> Dfa:
    """Hopcroft partition refinement on the reachable part.

    The output has the minimum state count among equivalent total DFAs
    (tests pin this against a pairwise-distinguishability oracle) and
    deterministic state numbering.
    """
    symbols = sorted(d.alphabet)

    reachable = [d.start]
    seen = {d.start}
    for state in reachable:
        for symbol in symbols:
            nxt = d.delta[(state, symbol)]
            if nxt not in seen:
                seen.add(nxt)
                reachable.append(nxt)

    inverse: dict[tuple[str, int], set[int]] = defaultdict(set)
    for state in reachable:
        for symbol in symbols:
            inverse[(symbol, d.delta[(state, symbol)])].add(state)

    final = frozenset(s for s in reachable if s in d.accepting)
    rest = frozenset(s for s in reachable if s not in d.accepting)
    partition = {block for block in (final, rest) if block}
    worklist = deque(partition)

    while worklist:
        splitter = worklist.popleft()
        for symbol in symbols:
            preimage = set()
            for target in splitter:
                preimage |= inverse[(symbol, target)]
            if not preimage:
                continue
            for block in list(partition):
                inside = block & preimage
                outside = block - preimage
                if not inside or not outside:
                    continue
                inside, outside = frozenset(inside), frozenset(outside)
                partition.remove(block)
                partition.add(inside)
                partition.add(outside)
                if block in worklist:
                    worklist.remove(block)
                    worklist.append(inside)
                    worklist.append(outside)
                else:
                    worklist.append(min(inside, outside, key=len))

    block_of = {state: block for block in partition for state in block}

    # renumber blocks by a BFS from the start block for a canonical result
    start_block = block_of[d.start]
    ids: dict[frozenset[int], int] = {start_block: 0}
    order = [start_block]
    queue = deque([start_block])
    delta: dict[tuple[int, str], int] = {}
    while queue:
        block = queue.popleft()
        bid = ids[block]
        representative = min(block)
        for symbol in symbols:
            target = block_of[d.delta[(representative, symbol)]]
            if target not in ids:
                ids[target] = len(ids)
                order.append(target)
                queue.append(target)
            delta[(bid, symbol)] = ids[target]
    accepting = frozenset(ids[b] for b in order if b & d.accepting)
    return Dfa(frozenset(range(len(ids))), d.alphabet, delta, 0, accepting)


def regex_to_min_dfa(r: Regex) -> Dfa:
    """Convenience: the full regex -> NFA -> DFA -> minimal DFA pipeline."""
    return minimize_dfa(nfa_to_dfa(regex_to_nfa(r)))


# ---------------------------------------------------------------------------
# DFA equivalence


_SINK = -1  # implicit extra state completing either side over the union alphabet


def _product_search(
    left: Dfa, right: Dfa, max_len: int | None
) -> tuple[Word, bool] | None:
    """BFS over the synchronized product; first mismatch is shortest-then-lex."""
    symbols = sorted(left.alphabet | right.alphabet)

    def step(d: Dfa, state: int, symbol: str) -> int:
        if state == _SINK or symbol not in d.alphabet:
            return _SINK
        return d.delta[(state, symbol)]

    def accepts(d: Dfa, state: int) -> bool:
        return state != _SINK and state in d.accepting

    start = (left.start, right.start)
    parents: dict[tuple[int, int], tuple[tuple[int, int], str] | None] = {start: None}
    queue = deque([(start, 0)])
    while queue:
        pair, depth = queue.popleft()
        in_left, in_right = accepts(left, pair[0]), accepts(right, pair[1])
        if in_left != in_right:
            word: list[str] = []
            cursor = pair
            while parents[cursor] is not None:
                cursor, symbol = parents[cursor]  # type: ignore[misc]
                word.append(symbol)
            return tuple(reversed(word)), in_left
        if max_len is not None and depth >= max_len:
            continue
        for symbol in symbols:
            nxt = (step(left, pair[0], symbol), step(right, pair[1], symbol))
            if nxt not in parents:
                parents[nxt] = (pair, symbol)
                queue.append((nxt, depth + 1))
    return None


def dfa_equiv(left: Dfa, right: Dfa) -> EquivVerdict:
    """Exact equivalence via synchronized product reachability.

    Alphabets are united; symbols missing on one side lead to that side's
    sink.  Counterexamples are shortest, then lexicographically least by
    token name.
    """
    found = _product_search(left, right, None)
    if found is None:
        return EquivVerdict(True, None, None, None)
    word, _ = found
    return _checked_verdict(word, None, left.accepts, right.accepts)


def dfa_equiv_bounded(left: Dfa, right: Dfa, max_len: int) -> EquivVerdict:
    """Equivalence of the two languages restricted to words of length <= max_len."""
    found = _product_search(left, right, max_len)
    if found is None:
        return EquivVerdict(True, None, None, max_len)
    word, _ = found
    return _checked_verdict(word, max_len, left.accepts, right.accepts)


# ---------------------------------------------------------------------------
# grammar membership (Earley chart recognition)


def _nullable_set(g: Grammar) -> set[Symbol]:
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head in nullable:
                continue
            if all((not s.terminal) and s in nullable for s in p.body):
                nullable.add(p.head)
                changed = True
    return nullable


def cfg_membership(g: Grammar, word: Sequence[str]) -> bool:
    """Earley recognition of a token sequence.

    Handles epsilon productions (via the nullable-prediction shortcut),
    unit cycles and left recursion.  Tokens outside the grammar's terminal
    alphabet simply never match.
    """
    tokens = tuple(word)
    n = len(tokens)
    by_head: dict[Symbol, list[tuple[Symbol, ...]]] = defaultdict(list)
    for p in g.productions:
        by_head[p.head].append(p.body)
    nullable = _nullable_set(g)

    # item: (head, body, dot, origin)
    chart: list[list[tuple[Symbol, tuple[Symbol, ...], int, int]]] = [[] for _ in range(n + 1)]
    seen: list[set[tuple[Symbol, tuple[Symbol, ...], int, int]]] = [set() for _ in range(n + 1)]

    def add(position: int, item: tuple[Symbol, tuple[Symbol, ...], int, int]) -> None:
        if item not in seen[position]:
            seen[position].add(item)
            chart[position].append(item)

    for body in by_head[g.axiom]:
        add(0, (g.axiom, body, 0, 0))

    for i in range(n + 1):
        cursor = 0
        while cursor < len(chart[i]):
            head, body, dot, origin = chart[i][cursor]
            cursor += 1
            if dot < len(body):
                expected = body[dot]
                if expected.terminal:
                    if i < n and tokens[i] == expected.name:
                        add(i + 1, (head, body, dot + 1, origin))
                else:
                    for alt in by_head[expected]:
                        add(i, (expected, alt, 0, i))
                    if expected in nullable:
                        # empty-span completions are folded into prediction,
                        # which keeps same-position completion sound
                        add(i, (head, body, dot + 1, origin))
            else:
                for other in chart[origin]:
                    o_head, o_body, o_dot, o_origin = other
                    if o_dot < len(o_body) and o_body[o_dot] == head:
                        add(i, (o_head, o_body, o_dot + 1, o_origin))

    return any(
        head == g.axiom and dot == len(body) and origin == 0
        for head, body, dot, origin in chart[n]
    )


# ---------------------------------------------------------------------------
# bounded languages


def _bucket_by_len(words: Iterable[Word]) -> dict[int, list[Word]]:
    buckets: dict[int, list[Word]] = defaultdict(list)
    for w in words:
        buckets[len(w)].append(w)
    return buckets


def _bounded_product(
    left: Iterable[Word], right: Iterable[Word], n: int, budget: _Budget
) -> set[Word]:
    """All concatenations u + v with combined length <= n."""
    buckets = _bucket_by_len(right)
    lengths = sorted(buckets)
    out: set[Word] = set()
    for u in left:
        room = n - len(u)
        if room < 0:
            continue
        for length in lengths:
            if length > room:
                break
            for v in buckets[length]:
                budget.spend()
                out.add(u + v)
    return out


def _regex_language(r: Regex, n: int, budget: _Budget) -> set[Word]:
    """Direct tree semantics, independent of the automata pipeline."""
    if isinstance(r, Empty):
        return set()
    if isinstance(r, Epsilon):
        return {()}
    if isinstance(r, Literal):
        if not r.symbol.terminal:
            raise NonterminalLiteral([r.symbol])
        budget.spend()
        return {(r.symbol.name,)} if n >= 1 else set()
    if isinstance(r, Union):
        out: set[Word] = set()
        for part in r.parts:
            out |= _regex_language(part, n, budget)
        return out
    if isinstance(r, Concat):
        acc = {()}
        for part in r.parts:
            acc = _bounded_product(acc, _regex_language(part, n, budget), n, budget)
            if not acc:
                return set()
        return acc
    if isinstance(r, Star):
        base = _regex_language(r.inner, n, budget) - {()}
        acc: set[Word] = {()}
        frontier: set[Word] = {()}
        while frontier:
            grown = _bounded_product(frontier, base, n, budget) - acc
            acc |= grown
            frontier = grown
        return acc
    raise TypeError(f"not a regex: {r!r}")


def _dfa_language(d: Dfa, n: int, budget: _Budget) -> set[Word]:
    """Pruned walk: only prefixes that can still reach acceptance in budgeted length."""
    symbols = sorted(d.alphabet)

    backward: dict[int, list[int]] = defaultdict(list)
    for (state, _), target in d.delta.items():
        backward[target].append(state)
    distance: dict[int, int] = {}
    queue = deque()
    for state in d.accepting:
        distance[state] = 0
        queue.append(state)
    while queue:
        state = queue.popleft()
        for prev in backward[state]:
            if prev not in distance:
                distance[prev] = distance[state] + 1
                queue.append(prev)

    out: set[Word] = set()
    if distance.get(d.start, n + 1) > n:
        return out
    walk: deque[tuple[int, Word]] = deque([(d.start, ())])
    while walk:
        state, prefix = walk.popleft()
        if state in d.accepting:
            out.add(prefix)
        room = n - len(prefix) - 1
        if room < 0:
            continue
        for symbol in symbols:
            nxt = d.delta[(state, symbol)]
            if distance.get(nxt, room + 1) <= room:
                budget.spend()
                walk.append((nxt, prefix + (symbol,)))
    return out


def grammar_language_by_closure(g: Grammar, n: int, *, cap: int = ENUM_CAP) -> set[Word]:
    """Bottom-up bounded derivation closure (one string set per nonterminal)."""
    budget = _Budget(cap)
    langs: dict[Symbol, set[Word]] = {nt: set() for nt in g.nonterminals}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            words: set[Word] = {()}
            for sym in p.body:
                if sym.terminal:
                    budget.spend(len(words))
                    words = {w + (sym.name,) for w in words if len(w) < n}
                else:
                    words = _bounded_product(words, langs[sym], n, budget)
                if not words:
                    break
            new = words - langs[p.head]
            if new:
                langs[p.head] |= new
                changed = True
    return set(langs[g.axiom])


def grammar_language_by_membership(g: Grammar, n: int, *, cap: int = ENUM_CAP) -> set[Word]:
    """Brute force: test every string over the terminal alphabet up to length n."""
    budget = _Budget(cap)
    names = sorted(t.name for t in g.terminals)
    out: set[Word] = set()
    for length in range(n + 1):
        for candidate in itertools.product(names, repeat=length):
            budget.spend()
            if cfg_membership(g, candidate):
                out.add(candidate)
    return out


_BRUTE_FORCE_LIMIT = 2000  # membership scanning is only sane for tiny universes


def bounded_language(x: Grammar | Regex | Dfa, n: int, *, cap: int = ENUM_CAP) -> set[Word]:
    """Exactly the member strings of length <= n, as tuples of token names.

    Grammars use the derivation closure unless the whole string universe is
    small enough to scan by membership; regexes are evaluated directly on
    the tree; DFAs are walked with distance-to-acceptance pruning.
    """
    if n < 0:
        raise ValueError("bound must be non-negative")
    if isinstance(x, Grammar):
        size, universe = len(x.terminals), 1
        for _ in range(n):
            universe = universe * size + 1
            if universe > _BRUTE_FORCE_LIMIT:
                break
        if universe <= _BRUTE_FORCE_LIMIT:
            return grammar_language_by_membership(x, n, cap=cap)
        return grammar_language_by_closure(x, n, cap=cap)
    if isinstance(x, Regex):
        return _regex_language(x, n, _Budget(cap))
    if isinstance(x, Dfa):
        return _dfa_language(x, n, _Budget(cap))
    raise TypeError(f"cannot enumerate {type(x).__name__}")


def bounded_equiv(g: Grammar, r: Regex, n: int, *, cap: int = ENUM_CAP) -> EquivVerdict:
    """Compare L(grammar) and L(regex) on all strings of length <= n.

    The grammar is the left side.  A counterexample is the shortest (then
    lexicographically least) string in exactly one language, re-checked by
    Earley membership and a DFA run before being reported.
    """
    left = bounded_language(g, n, cap=cap)
    right = bounded_language(r, n, cap=cap)
    if left == right:
        return EquivVerdict(True, None, None, n)
    word = min(left ^ right, key=lambda w: (len(w), w))
    dfa = regex_to_min_dfa(r)
    return _checked_verdict(word, n, lambda w: cfg_membership(g, w), dfa.accepts)


# ---------------------------------------------------------------------------
# bounded least fixpoint of X = a X + X b + s


def lfp_bounded(a: Regex, b: Regex, s: Regex, n: int, *, cap: int = ENUM_CAP) -> set[Word]:
    """Iterate X <- (L(a) X) union (X L(b)) union L(s) within length n.

    Starts from the empty set; the bounded universe is finite and the map
    monotone, so the iteration reaches the least fixed point.  New strings
    are propagated semi-naively (only the previous round's additions are
    recombined).
    """
    budget = _Budget(cap)
    left = _regex_language(a, n, budget)
    right = _regex_language(b, n, budget)
    result = _regex_language(s, n, budget)
    frontier = set(result)
    while frontier:
        grown = _bounded_product(left, frontier, n, budget)
        grown |= _bounded_product(frontier, right, n, budget)
        grown -= result
        result |= grown
        frontier = grown
    return result
