import random

import pytest

from conftest import build_ps
from proofnets import fixtures
from proofnets.canonical import canonical_form, iso, isomorphisms
from proofnets.formulas import Fragment
from proofnets.generate import GenParams, random_proof, random_ps
from proofnets.sequent import desequentialize
from proofnets.structure import (ProofStructure, descent_chain, erasing_nodes,
                                 from_dsl, from_json, is_wten, precedes,
                                 strip, to_dsl, to_json, validate)


def relabel(ps, rng):
    """Random node/arc id permutation."""
    node_map = dict(zip(sorted(ps.nodes), rng.sample(range(1000, 2000), len(ps.nodes))))
    arc_map = dict(zip(sorted(ps.arcs), rng.sample(range(5000, 6000), len(ps.arcs))))
    out = ProofStructure()
    out.nodes = {node_map[n]: lab for n, lab in ps.nodes.items()}
    out.arcs = {arc_map[a]: (node_map[t], node_map[h]) for a, (t, h) in ps.arcs.items()}
    out.premise_order = {node_map[n]: (arc_map[x], arc_map[y])
                         for n, (x, y) in ps.premise_order.items()}
    out.conclusions = tuple(arc_map[a] for a in ps.conclusions)
    if ps.types is not None:
        out.types = {arc_map[a]: f for a, f in ps.types.items()}
    out.jumps = {node_map[n]: node_map[m] for n, m in ps.jumps.items()}
    return out


# -- validation ---------------------------------------------------------------


def test_validate_single_ax(single_ax):
    assert validate(single_ax).ok


def test_validate_unary_par_rejected():
    ps = build_ps({0: "bot", 1: "par", 2: "dot"},
                  {0: (0, 1), 1: (1, 2)}, concl=(1,), expect_valid=False)
    report = validate(ps)
    assert not report.ok
    assert any(rule == "binary par" for rule, _, _ in report.violations)


def test_validate_non_dual_cut_types():
    ps = build_ps({0: "ax", 1: "ax", 2: "cut", 3: "dot", 4: "dot"},
                  {0: (0, 3), 1: (0, 2), 2: (1, 2), 3: (1, 4)},
                  concl=(0, 3),
                  types={0: "X^", 1: "X", 2: "X", 3: "X^"},
                  expect_valid=False)
    report = validate(ps)
    assert any(rule == "dual cut types" for rule, _, _ in report.violations)


def test_validate_empty_structure():
    assert validate(ProofStructure()).ok


def test_validate_rejects_directed_cycle():
    ps = ProofStructure({0: "par", 1: "tensor"},
                        {0: (0, 1), 1: (1, 0), 2: (1, 0)},
                        {0: (1, 2), 1: (0,)}, ())
    assert not validate(ps).ok


def test_validate_fragment_typing():
    ps = fixtures.load("regnier")
    assert validate(ps, Fragment.MLLU).ok
    report = validate(ps, Fragment.BTENLL)
    assert not report.ok  # (one par one) tensor bot is outside btenll


def test_validate_jump_domain():
    ps = build_ps({0: "one", 1: "dot"}, {0: (0, 1)}, concl=(0,),
                  jumps={0: 1}, expect_valid=False)
    report = validate(ps)
    assert any(rule == "jump" for rule, _, _ in report.violations)


# -- erasing nodes -------------------------------------------------------------


def test_erasing_single_bot(single_bot):
    assert erasing_nodes(single_bot) == {0, 1}


def test_erasing_par_of_two_bots():
    ps = build_ps({0: "bot", 1: "bot", 2: "par", 3: "dot"},
                  {0: (0, 2), 1: (1, 2), 2: (2, 3)},
                  prem={2: (0, 1)}, concl=(2,))
    assert erasing_nodes(ps) == {0, 1, 2, 3}


def test_erasing_par_one_bot():
    ps = build_ps({0: "one", 1: "bot", 2: "par", 3: "dot"},
                  {0: (0, 2), 1: (1, 2), 2: (2, 3)},
                  prem={2: (0, 1)}, concl=(2,))
    assert erasing_nodes(ps) == {1}


def test_erasing_monotone_under_peeling():
    from proofnets.sequentialize import _peel_terminal_bot, _peel_terminal_par
    checked = 0
    for seed in range(250):
        ps = random_ps(GenParams(fragment=None, max_nodes=10, seed=seed))
        erasing = erasing_nodes(ps)
        for n in ps.terminal_nodes():
            if n not in erasing:
                continue
            if ps.nodes[n] == "bot":
                sub = _peel_terminal_bot(ps, n)
            elif ps.nodes[n] == "par":
                sub = _peel_terminal_par(ps, n)
            else:
                continue
            after = erasing_nodes(sub)
            kept = {m for m in after if m in ps.nodes}
            assert kept <= erasing
            checked += 1
    assert checked > 10


# -- erasing-safety (wten) ------------------------------------------------------


def test_wten_fixture_witness():
    ps = fixtures.load("split-choice")
    ok, witness = is_wten(ps)
    assert not ok
    node, arc = witness
    assert ps.nodes[node] == "tensor"
    assert arc == ps.premise_order[node][0]  # the left premise, a bot conclusion


def test_wten_single_ax(single_ax):
    assert is_wten(single_ax) == (True, None)


def test_cut_free_btenll_structures_are_wten():
    # cut-free convention: with cuts, a one/bot cut is a counterexample
    for seed in range(60):
        p = random_proof(GenParams(fragment=Fragment.BTENLL, max_rules=12,
                                   seed=seed, cut_probability=0.0))
        ps = desequentialize(p, verify=False).ps
        assert is_wten(ps)[0], seed


# -- the descent order ----------------------------------------------------------


def test_precedes_examples(single_bot):
    assert precedes(single_bot, 0, 1)       # bot before its dot
    assert not precedes(single_bot, 0, 0)   # strict
    ps = build_ps({0: "bot", 1: "bot", 2: "par", 3: "dot"},
                  {0: (0, 2), 1: (1, 2), 2: (2, 3)},
                  prem={2: (0, 1)}, concl=(2,))
    assert not precedes(ps, 0, 1)
    assert precedes(ps, 0, 3)


def test_descendants_totally_ordered_below_non_ax_nodes():
    # every node has at most one conclusion except ax, so descent below a
    # non-ax node is a chain; an ax node with two conclusions shows the
    # claim cannot include ax nodes
    for seed in range(60):
        ps = random_ps(GenParams(fragment=None, max_nodes=10, seed=seed))
        for n, lab in ps.nodes.items():
            if lab == "ax":
                continue
            below = [m for m in ps.nodes if precedes(ps, n, m)]
            for a in below:
                for b in below:
                    assert a == b or precedes(ps, a, b) or precedes(ps, b, a)


def test_ax_descendants_not_totally_ordered(single_ax):
    assert precedes(single_ax, 0, 1) and precedes(single_ax, 0, 2)
    assert not precedes(single_ax, 1, 2) and not precedes(single_ax, 2, 1)


def test_descent_chain_matches_precedes(single_bot):
    assert descent_chain(single_bot, 0) == [1]


# -- serialization ----------------------------------------------------------------


@pytest.mark.parametrize("name", fixtures.NAMES)
def test_json_and_dsl_round_trip(name):
    ps = fixtures.load(name)
    assert iso(ps, from_json(to_json(ps)))
    assert iso(ps, from_dsl(to_dsl(ps)))


def test_round_trip_preserves_conclusion_order():
    ps = fixtures.load("split-choice")
    again = from_json(to_json(ps))
    assert [ps.types[a] for a in ps.conclusions] == \
        [again.types[a] for a in again.conclusions]


# -- canonical forms and isomorphism ------------------------------------------------


def test_canonical_invariant_under_relabeling():
    rng = random.Random(6)
    for seed in range(80):
        ps = random_ps(GenParams(fragment=None, max_nodes=10, seed=seed,
                                 cut_probability=0.3))
        other = relabel(ps, rng)
        assert canonical_form(ps) == canonical_form(other)
        assert iso(ps, other)


def test_canonical_on_typed_and_jumped():
    rng = random.Random(7)
    ps = fixtures.load("jumps-units")
    ps.jumps = {4: 3, 5: 3}
    other = relabel(ps, rng)
    assert iso(ps, other)
    redirected = ps.copy()
    redirected.jumps = {4: 0, 5: 3}  # jump to the ax instead of the par
    assert not iso(ps, redirected)
    assert iso(ps.without_jumps(), redirected.without_jumps())


def test_iso_swapped_symmetric_components():
    ps = fixtures.load("split-choice")
    swapped = ps.copy()
    # exchange the ids of the two one-components and their arcs/conclusions
    node_map = {0: 2, 2: 0, 5: 7, 7: 5}
    arc_map = {0: 4, 4: 0}
    swapped.nodes = {node_map.get(n, n): lab for n, lab in ps.nodes.items()}
    swapped.arcs = {arc_map.get(a, a): (node_map.get(t, t), node_map.get(h, h))
                    for a, (t, h) in ps.arcs.items()}
    swapped.types = {arc_map.get(a, a): f for a, f in ps.types.items()}
    swapped.conclusions = tuple(arc_map.get(a, a) for a in ps.conclusions)
    assert iso(ps, swapped)


def test_iso_distinguishes_fixtures():
    assert not iso(strip(fixtures.load("split-choice")), strip(fixtures.load("regnier")))


def test_canonical_of_conclusion_free_components():
    # a closed one/bot cut has no conclusion to anchor the traversal
    closed = build_ps({0: "one", 1: "bot", 2: "cut"},
                      {0: (0, 2), 1: (1, 2)}, concl=())
    rng = random.Random(11)
    assert iso(closed, relabel(closed, rng))
    doubled = build_ps({0: "one", 1: "bot", 2: "cut",
                        3: "one", 4: "bot", 5: "cut"},
                       {0: (0, 2), 1: (1, 2), 2: (3, 5), 3: (4, 5)}, concl=())
    assert iso(doubled, relabel(doubled, rng))
    assert not iso(closed, doubled)


def test_iso_agrees_with_explicit_matcher():
    rng = random.Random(8)
    structures = [strip(random_ps(GenParams(fragment=None, max_nodes=8, seed=s,
                                            cut_probability=0.3)))
                  for s in range(24)]
    for i, a in enumerate(structures):
        for b in structures[i:i + 6]:
            by_canon = iso(a, b)
            by_matcher = next(isomorphisms(a, b), None) is not None
            assert by_canon == by_matcher


def test_validate_accepts_every_desequentialization():
    for seed in range(80):
        p = random_proof(GenParams(fragment=Fragment.MLLU, max_rules=12,
                                   seed=seed, cut_probability=0.4))
        d = desequentialize(p, verify=False)
        assert validate(d.ps).ok
