import json
import random

import pytest

from mnf_lab import (
    CycleError,
    GrammarError,
    GrammarSyntaxError,
    PartitionFailure,
    Production,
    check_looking_forward,
    check_mnf,
    dependency_digraph,
    find_cycle,
    make_grammar,
    nonterminal,
    parse_grammar,
    partition_productions,
    prune_useless,
    render_grammar,
    terminal,
    topological_order,
)

from helpers import (
    GOLDENS,
    load_fixture,
    peeling_is_acyclic,
    random_digraph,
    random_grammar,
)


def body(*tokens):
    return tuple(terminal(t) if t.islower() else nonterminal(t) for t in tokens)


# ---------------------------------------------------------------------------
# parsing


def test_parse_simple_grammar():
    g = parse_grammar("start: S\nS -> a S | eps")
    assert g.axiom == nonterminal("S")
    assert g.productions == (
        Production(nonterminal("S"), body("a", "S")),
        Production(nonterminal("S"), ()),
    )
    assert g.terminals == frozenset({terminal("a")})
    assert g.nonterminals == frozenset({nonterminal("S")})


def test_parse_example1_has_four_productions():
    g = load_fixture("example1.cfg")
    assert len(g.productions) == 4
    assert all(p.head == nonterminal("S") for p in g.productions)
    assert g.productions[3].body == ()
    assert len(g.terminals) == 9


def test_parse_merges_rule_lines_in_file_order():
    g = parse_grammar("start: S\nS -> a\nS -> b | c")
    assert [p.body[0].name for p in g.productions] == ["a", "b", "c"]


def test_parse_comments_and_blank_lines():
    g = parse_grammar("# header comment\n\nstart: S  # trailing\nS -> a # tail\n")
    assert g.productions == (Production(nonterminal("S"), body("a")),)


def test_undefined_nonterminal_is_an_error_by_default():
    with pytest.raises(GrammarError, match="Q"):
        parse_grammar("start: S\nS -> a Q")
    g = parse_grammar("start: S\nS -> a Q", allow_undefined=True)
    assert nonterminal("Q") in g.nonterminals


def test_axiom_without_productions_is_an_error():
    with pytest.raises(GrammarError, match="axiom"):
        parse_grammar("start: S\nA -> a")


def test_syntax_errors_carry_line_numbers():
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar("start: S\nS -> a\nS - b\n")
    assert err.value.line == 3
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar("S -> a\n")
    assert err.value.line == 1
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar("start: S\nS -> a |  | b\n")
    assert err.value.line == 2
    with pytest.raises(GrammarSyntaxError) as err:
        parse_grammar("start: S\nS -> a eps b\n")
    assert err.value.line == 2


def test_reserved_and_special_tokens_rejected():
    with pytest.raises(GrammarSyntaxError, match="void"):
        parse_grammar("start: S\nS -> void")
    with pytest.raises(GrammarSyntaxError, match="reserved character"):
        parse_grammar("start: S\nS -> a*")


def test_lowercase_start_symbol_rejected():
    with pytest.raises(GrammarSyntaxError, match="uppercase"):
        parse_grammar("start: s\ns -> a")


def test_self_rule_dropped_with_warning():
    with pytest.warns(UserWarning, match="redundant"):
        g = parse_grammar("start: S\nS -> S | a")
    assert g.productions == (Production(nonterminal("S"), body("a")),)

    kept = parse_grammar("start: S\nS -> S | a", keep_self_rules=True)
    assert len(kept.productions) == 2
    part = partition_productions(kept, nonterminal("S"))
    assert part.left_factors == ((),)


def test_render_parse_round_trip():
    for name in ("example1.cfg", "example2.cfg", "example3.cfg", "anbn.cfg"):
        g = load_fixture(name)
        again = parse_grammar(render_grammar(g))
        assert again == g


# ---------------------------------------------------------------------------
# dependency digraph and looking-forward


def test_example2_digraph_arcs():
    g = load_fixture("example2.cfg")
    d = dependency_digraph(g)
    s = nonterminal("S")
    expected = {(s, nonterminal(x)) for x in "ABCD"}
    assert d.arcs == frozenset(expected)


def test_self_occurrence_is_not_an_arc():
    g = parse_grammar("start: S\nS -> a S | eps")
    assert dependency_digraph(g).arcs == frozenset()


def test_two_node_cycle_arcs():
    g = load_fixture("unit_loop.cfg")
    d = dependency_digraph(g)
    s, a = nonterminal("S"), nonterminal("A")
    assert d.arcs == frozenset({(s, a), (a, s)})


def test_no_self_arcs_even_for_doubled_occurrences():
    g = parse_grammar("start: A\nA -> A A | a A b | a")
    assert dependency_digraph(g).arcs == frozenset()


def test_looking_forward_verdicts():
    assert check_looking_forward(load_fixture("example3.cfg")) == (True, None)
    assert check_looking_forward(parse_grammar("start: S\nS -> eps")) == (True, None)
    ok, witness = check_looking_forward(load_fixture("unit_loop.cfg"))
    assert not ok
    assert witness == [nonterminal("A"), nonterminal("S"), nonterminal("A")]


def test_cycle_witness_is_a_genuine_closed_walk():
    rng = random.Random(7)
    for _ in range(200):
        d = random_digraph(rng)
        witness = find_cycle(d)
        if witness is None:
            continue
        assert witness[0] == witness[-1]
        assert len(witness) >= 2
        for a, b in zip(witness, witness[1:]):
            assert (a, b) in d.arcs


def test_acyclicity_agrees_with_topological_peeling():
    # two independent routes: DFS back-edge search vs iterative peeling
    rng = random.Random(20240817)
    for _ in range(1000):
        d = random_digraph(rng, max_nodes=8)
        dfs_acyclic = find_cycle(d) is None
        assert dfs_acyclic == peeling_is_acyclic(d)
        if dfs_acyclic:
            order = topological_order(d)
            assert len(order) == len(d.nodes)
        else:
            with pytest.raises(CycleError):
                topological_order(d)


# ---------------------------------------------------------------------------
# pseudo-regular partition


def test_partition_example1():
    g = load_fixture("example1.cfg")
    part = partition_productions(g, nonterminal("S"))
    assert part.left_factors == (body("a", "b", "c"),)
    assert part.right_factors == (body("d", "e", "f"),)
    assert part.constants == (body("g", "h", "i"), ())


def test_partition_example2_nonterminal_a():
    g = load_fixture("example2.cfg")
    part = partition_productions(g, nonterminal("A"))
    assert part.left_factors == (body("u"),)
    assert part.right_factors == (body("v"),)
    assert part.constants == (body("m"),)


def test_partition_failure_lists_every_offender():
    g = load_fixture("anbn.cfg")
    with pytest.raises(PartitionFailure) as err:
        partition_productions(g, nonterminal("S"))
    assert [str(p) for p in err.value.offenders] == ["S -> a S b"]

    g2 = parse_grammar("start: S\nS -> a S b | S a S | b")
    with pytest.raises(PartitionFailure) as err:
        partition_productions(g2, nonterminal("S"))
    assert [str(p) for p in err.value.offenders] == ["S -> a S b", "S -> S a S"]


def test_partition_classes_cover_and_avoid_owner():
    rng = random.Random(99)
    for _ in range(300):
        g = random_grammar(rng)
        for nt in g.nonterminals:
            try:
                part = partition_productions(g, nt)
            except PartitionFailure:
                continue
            total = len(part.left_factors) + len(part.right_factors) + len(part.constants)
            assert total == len(g.productions_for(nt))
            for group in (part.left_factors, part.right_factors, part.constants):
                for seq in group:
                    assert nt not in seq


# ---------------------------------------------------------------------------
# the MNF decision


def test_example_grammars_are_mnf():
    for name in ("example1.cfg", "example2.cfg", "example3.cfg"):
        assert check_mnf(load_fixture(name)).is_mnf


def test_interior_recursion_fails_with_offender():
    report = check_mnf(load_fixture("anbn.cfg"))
    assert not report.is_mnf
    assert report.looking_forward
    assert [str(p) for p in report.offenders] == ["S -> a S b"]


def test_cycle_fails_looking_forward():
    g = parse_grammar("start: S\nS -> A | b\nA -> a S")
    report = check_mnf(g)
    assert not report.is_mnf
    assert not report.looking_forward
    assert [s.name for s in report.cycle] == ["A", "S", "A"]
    assert not report.offenders  # partitions themselves are fine


def test_report_aggregates_all_failures():
    g = parse_grammar("start: S\nS -> A | a S b\nA -> S A a")
    report = check_mnf(g)
    assert not report.looking_forward
    assert [str(p) for p in report.offenders] == ["S -> a S b", "A -> S A a"]


def test_is_mnf_matches_rerunning_partitions():
    rng = random.Random(4242)
    for _ in range(200):
        g = random_grammar(rng)
        report = check_mnf(g)
        partitions_ok = True
        for nt in g.nonterminals:
            try:
                partition_productions(g, nt)
            except PartitionFailure:
                partitions_ok = False
        assert report.is_mnf == (report.looking_forward and partitions_ok)


def test_report_json_matches_goldens():
    for fixture, golden in (("anbn.cfg", "anbn_report.json"),
                            ("unit_loop.cfg", "unit_loop_report.json")):
        report = check_mnf(load_fixture(fixture))
        expected = json.loads((GOLDENS / golden).read_text())
        assert report.as_json() == expected


# ---------------------------------------------------------------------------
# pruning


def test_prune_drops_unreachable_and_unproductive():
    g = parse_grammar(
        "start: S\nS -> a S | eps\nX -> a X b | c\nY -> Y a",
        allow_undefined=True,
    )
    pruned = prune_useless(g)
    assert pruned.nonterminals == frozenset({nonterminal("S")})
    assert not check_mnf(g).is_mnf  # X's interior recursion offends
    assert check_mnf(pruned).is_mnf


def test_prune_keeps_axiom_of_empty_language():
    g = parse_grammar("start: S\nS -> a S")
    pruned = prune_useless(g)
    assert pruned.axiom == nonterminal("S")
    assert pruned.productions == ()


def test_make_grammar_rejects_mixed_symbol_kinds():
    with pytest.raises(GrammarError):
        make_grammar(
            nonterminal("S"),
            [
                Production(nonterminal("S"), (terminal("S"),)),
            ],
        )
