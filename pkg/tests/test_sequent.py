import pytest

from proofnets import fixtures
from proofnets.canonical import iso, iso_untyped
from proofnets.errors import ParseError, ProofNetError
from proofnets.formulas import BOT, Fragment, ONE, atom, tensor
from proofnets.generate import GenParams, random_proof
from proofnets.sequent import (SequentProof, ax_rule, bot_rule, check_proof,
                               cut_rule, deseq_relation_holds, desequentialize,
                               ex_rule, exchange_to, format_proof, one_rule,
                               parse_proof, tensor_rule)
from proofnets.sequentialize import is_sequential_oracle
from proofnets.structure import validate
from proofnets.switching import check

X = atom("X")


def split_choice_proof():
    """Tensor of (one; bot) against (one; bot; ex)."""
    left = bot_rule(one_rule())
    right = ex_rule(0, bot_rule(one_rule()))
    return tensor_rule(left, right)


# -- rule checking ----------------------------------------------------------------


def test_axiom_instance():
    p = ax_rule(X)
    assert p.conclusion == (X, atom("X", dual=True))
    assert check_proof(p).ok


def test_bot_arity_violation():
    broken = SequentProof("bot", (), (BOT,))
    report = check_proof(broken)
    assert not report.ok
    assert any(rule == "arity" for rule, _, _ in report.violations)


def test_tensor_instance():
    p = tensor_rule(bot_rule(one_rule()), one_rule())
    assert p.conclusion == (ONE, tensor(BOT, ONE))
    assert check_proof(p).ok


def test_fragment_discipline():
    p = split_choice_proof()
    assert check_proof(p, Fragment.MLLU).ok
    assert not check_proof(p, Fragment.MLL).ok
    assert not check_proof(p, Fragment.ICOMLL).ok  # shape fine, but has tensor of bots


def test_icomll_rejects_axiom_and_cut():
    report = check_proof(ax_rule(ONE), Fragment.ICOMLL)
    assert any("icomll" in msg for _, _, msg in report.violations)


def test_exchange_to_realizes_permutations():
    p = bot_rule(bot_rule(ax_rule(X)))
    q = exchange_to(p, [3, 1, 0, 2])
    assert q.conclusion == tuple(p.conclusion[i] for i in [3, 1, 0, 2])
    assert check_proof(q).ok


# -- the text format -----------------------------------------------------------------


def test_format_parse_round_trip():
    p = cut_rule(ONE, one_rule(), bot_rule(ex_rule(0, bot_rule(one_rule()))))
    text = format_proof(p, Fragment.MLLU)
    frag, again = parse_proof(text)
    assert frag is Fragment.MLLU
    assert again == p


def test_parse_example_from_docs():
    frag, p = parse_proof('fragment: mllu\n(tensor (one) (ex 1 (bot (one))))')
    assert p == tensor_rule(one_rule(), ex_rule(0, bot_rule(one_rule())))
    assert p.conclusion == (tensor(ONE, BOT), ONE)


def test_parse_rejects_bad_rule():
    with pytest.raises(ParseError):
        parse_proof("fragment: mllu\n(par (one))")


def test_random_round_trip():
    for seed in range(40):
        p = random_proof(GenParams(fragment=Fragment.MLLU, max_rules=12,
                                   seed=seed, cut_probability=0.5))
        frag, again = parse_proof(format_proof(p, Fragment.MLLU))
        assert again == p


# -- desequentialization ----------------------------------------------------------------


def test_deseq_split_choice_matches_fixture():
    d = desequentialize(split_choice_proof())
    assert iso(d.ps, fixtures.load("split-choice"))
    assert d.conclusion_map == (0, 1, 2)


def test_deseq_axiom(single_ax):
    d = desequentialize(ax_rule(X))
    assert iso(d.ps, single_ax)
    assert sorted(d.ps.nodes.values()) == ["ax", "dot", "dot"]


def test_deseq_one_then_bot_disconnected():
    d = desequentialize(bot_rule(one_rule()))
    assert len(d.ps.conclusions) == 2
    from proofnets.switching import components_and_acyclicity, switching_graph
    cc, acyclic, _ = components_and_acyclicity(switching_graph(d.ps, {}))
    assert cc == 2 and acyclic


def test_deseq_closed_cut():
    p = cut_rule(ONE, one_rule(), ex_rule(0, bot_rule(one_rule())))
    d = desequentialize(p)
    assert len(d.ps.conclusions) == 1
    assert d.ps.nodes_with_label("cut")


def test_deseq_exchange_only_reorders():
    p = bot_rule(one_rule())
    q = ex_rule(0, p)
    dp, dq = desequentialize(p), desequentialize(q)
    assert [dp.ps.types[a].kind for a in dp.ps.conclusions] == ["one", "bot"]
    assert [dq.ps.types[a].kind for a in dq.ps.conclusions] == ["bot", "one"]
    # order matters: the exchanged structure is not isomorphic in place,
    # but it is once the conclusion order is swapped back
    assert not iso_untyped(dp.ps, dq.ps)
    swapped = dq.ps.copy()
    swapped.conclusions = (dq.ps.conclusions[1], dq.ps.conclusions[0])
    assert iso_untyped(dp.ps, swapped)


def test_deseq_satisfies_count_criterion():
    for seed in range(60):
        p = random_proof(GenParams(fragment=Fragment.MLLU, max_rules=12,
                                   seed=seed, cut_probability=0.4))
        d = desequentialize(p)  # verify=True asserts accw internally
        assert check(d.ps, "accw").holds


def test_deseq_sequential_small():
    for seed in range(25):
        p = random_proof(GenParams(fragment=Fragment.MLLU, max_rules=8,
                                   seed=seed, cut_probability=0.3))
        d = desequentialize(p, verify=False)
        if len(d.ps.nodes) > 12:
            continue
        ok, _ = is_sequential_oracle(d.ps)
        assert ok, seed


# -- the jump-aware relation ---------------------------------------------------------------


def test_relation_requires_jump_total():
    d = desequentialize(bot_rule(one_rule()), verify=False)
    with pytest.raises(ProofNetError):
        deseq_relation_holds(bot_rule(one_rule()), d.ps)


def test_relation_examples():
    p = bot_rule(one_rule())
    base = desequentialize(p, verify=False).ps
    one_node = base.nodes_with_label("one")[0]
    bot_node = base.bottom_nodes()[0]
    dot_of_one = base.head(base.conclusions_of(one_node)[0])

    good = base.copy()
    good.jumps = {bot_node: one_node}
    assert deseq_relation_holds(p, good)

    into_dot = base.copy()
    into_dot.jumps = {bot_node: dot_of_one}
    assert deseq_relation_holds(p, into_dot)  # the dot also arises from the subproof

    selfish = base.copy()
    selfish.jumps = {bot_node: bot_node}
    assert not deseq_relation_holds(p, selfish)


def test_relation_needs_matching_structure():
    p = bot_rule(one_rule())
    other = desequentialize(bot_rule(bot_rule(one_rule())), verify=False).ps
    jumped = other.copy()
    one_node = other.nodes_with_label("one")[0]
    jumped.jumps = {n: one_node for n in other.bottom_nodes()}
    assert not deseq_relation_holds(p, jumped)


def test_validate_accepts_deseq(single_one):
    for seed in range(30):
        p = random_proof(GenParams(fragment=Fragment.BTENLL, max_rules=10,
                                   seed=seed))
        assert validate(desequentialize(p, verify=False).ps, Fragment.BTENLL).ok
