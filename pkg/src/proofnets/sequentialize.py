"""Sequentialization: from structures back to sequent proofs.

The pipeline has three entry points.  `sequentialize_wten` handles any
structure (typed or not) in which no cut or tensor premise comes from an
erasing node and which passes the acyclicity-plus-count criterion: it peels
terminal bot/par nodes, splits at a terminal cut or tensor (unique once the
structure is connected) and re-orders conclusions with exchange rules.
`sequentialize_btenll` refines this for the bottom-restricted typed
fragment, threading a designated non-erasing node so that the produced
proof matches the canonical jump assignment; `sequentialize_icomll` does
the same for the constant-only intuitionistic fragment, where splitting is
driven by output polarity.  A brute-force decomposition oracle decides
plain sequentiality exactly on small structures, and the desequalization
comparisons decide proof equivalence and jump rewiring equivalence.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .canonical import canonical_form, iso, isomorphisms
from .errors import (FragmentError, SequentializationError, TypeInferenceError)
from .formulas import ATOM, Formula, Fragment, atom, negate, polarity
from .structure import (AX, BOT, CUT, DOT, ONE, PAR, TENSOR, ProofStructure,
                        descent_chain, ensure_valid, erasing_nodes, is_wten,
                        jump_free, jump_total, strip, validate)
from .sequent import (SequentProof, ax_rule, bot_rule, cut_rule, exchange_to,
                      one_rule, par_rule, tensor_rule)
from .switching import DEFAULT_MAX_PAR, check


# -- type inference for untyped structures -----------------------------------


def infer_types(ps: ProofStructure) -> ProofStructure:
    """Assign formulas to every arc of an untyped structure.

    Each ax pair introduces a type variable and its dual; connectives and
    units determine everything else; cuts impose duality constraints solved
    by unification.  Left-over variables become fresh atoms.  Raises
    TypeInferenceError when no typing exists (clashing cuts, ax loops).
    """
    from .structure import topological_order

    subst: dict[str, Formula] = {}

    def resolve(f: Formula) -> Formula:
        while f.kind == ATOM and f.name.startswith("?") and f.name in subst:
            bound = subst[f.name]
            f = negate(bound) if f.dual else bound
        return f

    def occurs(name: str, f: Formula) -> bool:
        f = resolve(f)
        if f.kind == ATOM:
            return f.name == name
        if f.left is None:
            return False
        return occurs(name, f.left) or occurs(name, f.right)

    def unify(f: Formula, g: Formula) -> None:
        f, g = resolve(f), resolve(g)
        if f.kind == ATOM and f.name.startswith("?"):
            if g.kind == ATOM and g.name == f.name:
                if g.dual == f.dual:
                    return
                raise TypeInferenceError("a type would have to equal its own dual")
            target = negate(g) if f.dual else g
            if occurs(f.name, target):
                raise TypeInferenceError("cyclic type constraint")
            subst[f.name] = target
            return
        if g.kind == ATOM and g.name.startswith("?"):
            unify(g, f)
            return
        if f.kind != g.kind:
            raise TypeInferenceError("incompatible connectives at a cut")
        if f.kind == ATOM and (f.name != g.name or f.dual != g.dual):
            raise TypeInferenceError("mismatched atoms at a cut")
        if f.left is not None:
            unify(f.left, g.left)
            unify(f.right, g.right)

    ty: dict[int, Formula] = {}
    var_count = 0
    for n in topological_order(ps.nodes, ps.arcs):
        lab = ps.nodes[n]
        if lab == AX:
            first, second = sorted(ps.conclusions_of(n))
            var_count += 1
            ty[first] = atom(f"?{var_count}")
            ty[second] = atom(f"?{var_count}", dual=True)
        elif lab == ONE:
            ty[ps.conclusions_of(n)[0]] = Formula("one")
        elif lab == BOT:
            ty[ps.conclusions_of(n)[0]] = Formula("bot")
        elif lab in (TENSOR, PAR):
            left, right = ps.premise_order[n]
            ty[ps.conclusions_of(n)[0]] = Formula(
                "tensor" if lab == TENSOR else "par", left=ty[left], right=ty[right])
    for n in ps.nodes_with_label(CUT):
        a, b = ps.premises_of(n)
        unify(ty[a], negate(ty[b]))

    fresh_names: dict[str, Formula] = {}

    def concretize(f: Formula) -> Formula:
        f = resolve(f)
        if f.kind == ATOM:
            if not f.name.startswith("?"):
                return f
            if f.name not in fresh_names:
                fresh_names[f.name] = atom(f"X{len(fresh_names) + 1}")
            base = fresh_names[f.name]
            return negate(base) if f.dual else base
        if f.left is None:
            return f
        return Formula(f.kind, left=concretize(f.left), right=concretize(f.right))

    typed = ps.copy()
    typed.types = {a: concretize(f) for a, f in ty.items()}
    return typed


# -- splitting ----------------------------------------------------------------


@dataclass(frozen=True)
class SplitAssignment:
    node: int
    left_nodes: frozenset[int]
    right_nodes: frozenset[int]


def _undirected_components(nodes, arcs) -> list[set[int]]:
    neigh = {n: set() for n in nodes}
    for t, h in arcs:
        neigh[t].add(h)
        neigh[h].add(t)
    comps, seen = [], set()
    for n in sorted(nodes):
        if n in seen:
            continue
        comp, stack = set(), [n]
        seen.add(n)
        while stack:
            cur = stack.pop()
            comp.add(cur)
            for m in neigh[cur]:
                if m not in seen:
                    seen.add(m)
                    stack.append(m)
        comps.append(comp)
    return comps


def _raw_split_assignments(ps: ProofStructure, n: int) -> list[SplitAssignment]:
    """Distributions of the components of ps minus n over the two sides."""
    prem = ps.premises_of(n)
    removed = {n}
    for c in ps.conclusions_of(n):
        removed.add(ps.head(c))
    nodes = [m for m in ps.nodes if m not in removed]
    arcs = [(t, h) for a, (t, h) in ps.arcs.items()
            if t not in removed and h not in removed]
    comps = _undirected_components(nodes, arcs)
    left_tail, right_tail = ps.tail(prem[0]), ps.tail(prem[1])
    base_left = next(c for c in comps if left_tail in c)
    base_right = next(c for c in comps if right_tail in c)
    if base_left is base_right:
        return []
    free = [c for c in comps if c is not base_left and c is not base_right]
    out = []
    for k in range(len(free) + 1):
        for chosen in combinations(range(len(free)), k):
            left = set(base_left)
            right = set(base_right)
            for i, c in enumerate(free):
                (left if i in chosen else right).update(c)
            out.append(SplitAssignment(n, frozenset(left), frozenset(right)))
    return out


def split_parts(ps: ProofStructure, assignment: SplitAssignment
                ) -> tuple[ProofStructure, ProofStructure]:
    """Extract the two sub-structures of a split.

    The left part receives the first premise as its last conclusion, the
    right part receives the second premise as its first conclusion; the
    remaining conclusions keep their relative order.  Jumps are dropped.
    """
    prem = ps.premises_of(assignment.node)

    def extract(node_set, premise_arc, premise_last):
        sub = ProofStructure()
        sub.nodes = {m: ps.nodes[m] for m in node_set}
        sub.arcs = {a: (t, h) for a, (t, h) in ps.arcs.items()
                    if t in node_set and h in node_set}
        dot = max(ps.nodes) + 1
        sub.nodes[dot] = DOT
        sub.arcs[premise_arc] = (ps.tail(premise_arc), dot)
        sub.premise_order = {m: pair for m, pair in ps.premise_order.items()
                             if m in node_set}
        inherited = tuple(c for c in ps.conclusions if ps.head(c) in node_set)
        sub.conclusions = (inherited + (premise_arc,) if premise_last
                           else (premise_arc,) + inherited)
        if ps.types is not None:
            sub.types = {a: ps.types[a] for a in sub.arcs}
        return sub

    return (extract(assignment.left_nodes, prem[0], True),
            extract(assignment.right_nodes, prem[1], False))


def splitting_candidates(ps: ProofStructure) -> list[SplitAssignment]:
    """Every way a terminal cut or tensor node splits the structure.

    Free components (touching neither premise) may go to either side;
    distributions whose two parts coincide up to isomorphism with those of
    an earlier one are reported once.
    """
    ensure_valid(ps)
    base = strip(ps)
    out = []
    for n in base.terminal_nodes():
        if base.nodes[n] not in (CUT, TENSOR):
            continue
        seen_keys = set()
        for asn in _raw_split_assignments(base, n):
            left, right = split_parts(base, asn)
            key = (canonical_form(left), canonical_form(right))
            if key in seen_keys:
                continue
            seen_keys.add(key)
            out.append(asn)
    return out


# -- the brute-force sequentiality oracle -------------------------------------


def _peel_terminal_bot(ps: ProofStructure, n: int) -> ProofStructure:
    sub = ps.copy()
    arc = ps.conclusions_of(n)[0]
    dot = ps.head(arc)
    del sub.nodes[n]
    del sub.nodes[dot]
    del sub.arcs[arc]
    if sub.types is not None:
        del sub.types[arc]
    sub.jumps.pop(n, None)
    sub.conclusions = tuple(c for c in ps.conclusions if c != arc)
    return sub


def _peel_terminal_par(ps: ProofStructure, n: int) -> ProofStructure:
    sub = ps.copy()
    arc = ps.conclusions_of(n)[0]
    dot = ps.head(arc)
    left, right = ps.premise_order[n]
    del sub.nodes[n]
    del sub.nodes[dot]
    del sub.arcs[arc]
    del sub.premise_order[n]
    if sub.types is not None:
        del sub.types[arc]
    base = max(ps.nodes) + 1
    for offset, a in enumerate((left, right)):
        sub.nodes[base + offset] = DOT
        sub.arcs[a] = (ps.tail(a), base + offset)
    sub.conclusions = tuple(c for c in ps.conclusions if c != arc) + (left, right)
    return sub


_MISSING = object()


def is_sequential_oracle(ps: ProofStructure) -> tuple[bool, dict | None]:
    """Exact, exponential decision of the recursive decomposition.

    Tries every terminal node and every component distribution, memoized
    on canonical forms.  Types, jumps and the conclusion order are
    irrelevant to the decomposition and are ignored.
    """
    ensure_valid(ps)
    memo: dict[bytes, dict | None] = {}

    def seq(s: ProofStructure):
        key = canonical_form(s)
        cached = memo.get(key, _MISSING)
        if cached is not _MISSING:
            return cached
        result = None
        non_dots = [m for m, lab in s.nodes.items() if lab != DOT]
        if len(non_dots) == 1 and s.nodes[non_dots[0]] in (AX, ONE):
            result = {"node": non_dots[0], "kind": s.nodes[non_dots[0]]}
        if result is None:
            for n in s.terminal_nodes():
                lab = s.nodes[n]
                if lab == BOT:
                    sub = seq(_peel_terminal_bot(s, n))
                    if sub is not None:
                        result = {"node": n, "kind": lab, "parts": [sub]}
                elif lab == PAR:
                    sub = seq(_peel_terminal_par(s, n))
                    if sub is not None:
                        result = {"node": n, "kind": lab, "parts": [sub]}
                elif lab in (CUT, TENSOR):
                    for asn in _raw_split_assignments(s, n):
                        left, right = split_parts(s, asn)
                        sub_l = seq(left)
                        if sub_l is None:
                            continue
                        sub_r = seq(right)
                        if sub_r is not None:
                            result = {"node": n, "kind": lab,
                                      "parts": [sub_l, sub_r]}
                            break
                if result is not None:
                    break
        memo[key] = result
        return result

    decomposition = seq(strip(ps))
    return decomposition is not None, decomposition


# -- shared sequentialization plumbing ----------------------------------------


def _reorder(proof: SequentProof, current_ids: list[int],
             target_ids: tuple[int, ...]) -> SequentProof:
    order = [current_ids.index(c) for c in target_ids]
    return exchange_to(proof, order)


def _move_last_to(proof: SequentProof, position: int) -> SequentProof:
    last = len(proof.conclusion) - 1
    order = list(range(position)) + [last] + list(range(position, last))
    return exchange_to(proof, order)


def _compose_peel(ps, n, recurse) -> SequentProof:
    """Peel a terminal bot or par node and push its rule at the right slot."""
    arc = ps.conclusions_of(n)[0]
    position = ps.conclusion_position(arc)
    if ps.nodes[n] == BOT:
        sub_proof = recurse(_peel_terminal_bot(ps, n))
        return _move_last_to(bot_rule(sub_proof), position)
    sub_proof = recurse(_peel_terminal_par(ps, n))
    return _move_last_to(par_rule(sub_proof), position)


def _compose_split(ps, n, left, right, proof_left, proof_right) -> SequentProof:
    if ps.nodes[n] == TENSOR:
        joined = tensor_rule(proof_left, proof_right)
        middle = ps.conclusions_of(n)
    else:
        cut_formula = ps.types[ps.premises_of(n)[0]]
        joined = cut_rule(cut_formula, proof_left, proof_right)
        middle = []
    current = list(left.conclusions[:-1]) + list(middle) + list(right.conclusions[1:])
    return _reorder(joined, current, ps.conclusions)


def _base_case(ps) -> SequentProof:
    non_dots = [m for m, lab in ps.nodes.items() if lab != DOT]
    if len(non_dots) != 1 or ps.nodes[non_dots[0]] not in (AX, ONE):
        raise SequentializationError(
            "structure is neither splittable nor a single axiom or one node")
    if ps.nodes[non_dots[0]] == ONE:
        return one_rule()
    return ax_rule(ps.types[ps.conclusions[0]])


def _unique_split(ps, n) -> SplitAssignment:
    assignments = _raw_split_assignments(ps, n)
    if len(assignments) != 1:
        raise SequentializationError(
            f"node {n} does not split the structure into two determined parts")
    return assignments[0]


# -- untyped / general sequentialization ---------------------------------------


def sequentialize_wten(ps: ProofStructure,
                       max_par: int = DEFAULT_MAX_PAR) -> SequentProof:
    """Sequentialize an erasing-safe structure passing the count criterion.

    Untyped structures are typed first by inference.  The round trip
    `desequentialize(result)` is isomorphic to the input (ignoring types
    when the input is untyped).
    """
    ensure_valid(ps)
    ok, witness = is_wten(ps)
    if not ok:
        raise SequentializationError(
            f"premise {witness[1]} of node {witness[0]} comes from an erasing node",
            witness)
    verdict = check(ps, "accw", max_par)
    if not verdict.holds:
        raise SequentializationError("structure fails the accw criterion", verdict)
    typed = ps if ps.types is not None else infer_types(ps)
    return _seq_general(typed.without_jumps())


def _seq_general(ps: ProofStructure) -> SequentProof:
    terminal = ps.terminal_nodes()
    unary = [n for n in terminal if ps.nodes[n] in (BOT, PAR)]
    if unary:
        return _compose_peel(ps, min(unary), _seq_general)
    splitters = [n for n in terminal if ps.nodes[n] in (CUT, TENSOR)]
    if not splitters:
        return _base_case(ps)
    for n in splitters:
        assignments = _raw_split_assignments(ps, n)
        if len(assignments) == 1:
            left, right = split_parts(ps, assignments[0])
            return _compose_split(ps, n, left, right,
                                  _seq_general(left), _seq_general(right))
    raise SequentializationError("no splitting cut or tensor node found")


# -- canonical jumps ------------------------------------------------------------


@dataclass
class JumpedStructure:
    ps: ProofStructure
    jump_free: bool
    jump_total: bool
    jump_correct: bool


def classify_jumps(ps: ProofStructure,
                   max_par: int = DEFAULT_MAX_PAR) -> JumpedStructure:
    total = jump_total(ps)
    correct = total and check(ps, "acc", max_par).holds
    return JumpedStructure(ps, jump_free(ps), total, correct)


def canonical_jumps_btenll(ps: ProofStructure, m: int,
                           max_par: int = DEFAULT_MAX_PAR) -> JumpedStructure:
    """Jump every bot node under the least non-erasing par above it to that
    par's non-erasing premise source; jump the others to the given node."""
    report = validate(ps, Fragment.BTENLL)
    if not report.ok:
        raise FragmentError(f"not a valid btenll structure: {report}")
    erasing = erasing_nodes(ps)
    if m not in ps.nodes or m in erasing or ps.nodes[m] == DOT:
        raise SequentializationError(f"node {m} is not a non-erasing node")
    jumps = {}
    for n in ps.bottom_nodes():
        anchor_par = None
        for below in descent_chain(ps, n):
            if ps.nodes[below] == PAR and below not in erasing:
                anchor_par = below
                break
        if anchor_par is None:
            jumps[n] = m
        else:
            sources = [ps.tail(a) for a in ps.premises_of(anchor_par)
                       if ps.tail(a) not in erasing]
            assert len(sources) == 1, \
                "a least non-erasing par must have exactly one non-erasing premise"
            jumps[n] = sources[0]
    jumped = ps.copy()
    jumped.jumps = jumps
    return classify_jumps(jumped, max_par)


def _output_anchor(ps: ProofStructure, node: int) -> int:
    """Climb through output premises of output par nodes up to the unique
    one node or output tensor node that starts the output spine."""
    current = node
    while True:
        lab = ps.nodes[current]
        concl = ps.conclusions_of(current)
        out_node = concl and polarity(ps.types[concl[0]]) == "O"
        if lab == ONE or (lab == TENSOR and out_node):
            return current
        if lab != PAR or not out_node:
            raise SequentializationError(
                f"node {current} is not on an output spine")
        outputs = [a for a in ps.premise_order[current]
                   if polarity(ps.types[a]) == "O"]
        assert len(outputs) == 1, "an output par has exactly one output premise"
        current = ps.tail(outputs[0])


def canonical_jumps_icomll(ps: ProofStructure,
                           max_par: int = DEFAULT_MAX_PAR) -> JumpedStructure:
    """Jump every bot node to the anchor of the least output par above it,
    or to the anchor of the unique output conclusion when none exists."""
    _require_icomll(ps)
    out_arcs = [a for a in ps.conclusions if polarity(ps.types[a]) == "O"]
    if len(out_arcs) != 1:
        raise SequentializationError(
            f"structure has {len(out_arcs)} output conclusions, expected 1")
    output_owner = ps.tail(out_arcs[0])
    jumps = {}
    for n in ps.bottom_nodes():
        anchor_par = None
        for below in descent_chain(ps, n):
            concl = ps.conclusions_of(below)
            if (ps.nodes[below] == PAR and concl
                    and polarity(ps.types[concl[0]]) == "O"):
                anchor_par = below
                break
        target_node = anchor_par if anchor_par is not None else output_owner
        jumps[n] = _output_anchor(ps, target_node)
    jumped = ps.copy()
    jumped.jumps = jumps
    return classify_jumps(jumped, max_par)


def _require_icomll(ps: ProofStructure) -> None:
    report = validate(ps, Fragment.ICOMLL)
    if not report.ok:
        raise FragmentError(f"not a valid icomll structure: {report}")
    for lab in (AX, CUT):
        if ps.nodes_with_label(lab):
            raise FragmentError(f"{lab} nodes are not available in icomll")


# -- refined sequentializers -----------------------------------------------------


def sequentialize_btenll(ps: ProofStructure, m: int,
                         max_par: int = DEFAULT_MAX_PAR
                         ) -> tuple[SequentProof, JumpedStructure]:
    """Sequentialize a jump-free cut-free structure of the bottom-restricted
    fragment; the proof realizes the canonical jump assignment rooted at m."""
    if not jump_free(ps):
        raise SequentializationError("expected a jump-free structure")
    if ps.nodes_with_label(CUT):
        raise SequentializationError("cut-free structure expected")
    jumped = canonical_jumps_btenll(ps, m, max_par)
    verdict = check(ps, "accw", max_par)
    if not verdict.holds:
        raise SequentializationError("structure fails the accw criterion", verdict)
    proof = _seq_bten(ps, m)
    return proof, jumped


def _seq_bten(ps: ProofStructure, m: int) -> SequentProof:
    erasing = erasing_nodes(ps)
    terminal = ps.terminal_nodes()
    erasing_terminal = [n for n in terminal if n in erasing]
    if erasing_terminal:
        return _compose_peel(ps, min(erasing_terminal),
                             lambda sub: _seq_bten(sub, m))
    pars = [n for n in terminal if ps.nodes[n] == PAR]
    if pars:
        n = min(pars)
        sources = [ps.tail(a) for a in ps.premises_of(n)
                   if ps.tail(a) not in erasing]
        m_next = min(sources)
        return _compose_peel(ps, n, lambda sub: _seq_bten(sub, m_next))
    tensors = [n for n in terminal if ps.nodes[n] == TENSOR]
    if not tensors:
        return _base_case(ps)
    n = min(tensors)
    assignment = _unique_split(ps, n)
    left, right = split_parts(ps, assignment)
    prem = ps.premises_of(n)
    proof_left = _seq_bten(left, ps.tail(prem[0]))
    proof_right = _seq_bten(right, ps.tail(prem[1]))
    return _compose_split(ps, n, left, right, proof_left, proof_right)


def sequentialize_icomll(ps: ProofStructure,
                         max_par: int = DEFAULT_MAX_PAR
                         ) -> tuple[SequentProof, JumpedStructure]:
    """Sequentialize a jump-free structure of the constant-only
    intuitionistic fragment; requires exactly one output conclusion."""
    if not jump_free(ps):
        raise SequentializationError("expected a jump-free structure")
    jumped = canonical_jumps_icomll(ps, max_par)
    proof = _seq_icomll(ps)
    return proof, jumped


def _seq_icomll(ps: ProofStructure) -> SequentProof:
    def arc_pol(a):
        return polarity(ps.types[a])

    terminal = ps.terminal_nodes()
    inputs = [n for n in terminal if arc_pol(ps.conclusions_of(n)[0]) == "I"]
    if inputs:
        n = min(inputs)
        if ps.nodes[n] in (BOT, PAR):
            return _compose_peel(ps, n, _seq_icomll)
        # input tensor: the output-premise side is one whole component
        prem = ps.premise_order[n]
        out_side = [a for a in prem if arc_pol(a) == "O"]
        assert len(out_side) == 1, "an input tensor has exactly one output premise"
        removed = {n, ps.head(ps.conclusions_of(n)[0])}
        nodes = [x for x in ps.nodes if x not in removed]
        arcs = [(t, h) for a, (t, h) in ps.arcs.items()
                if t not in removed and h not in removed]
        comps = _undirected_components(nodes, arcs)
        out_comp = next(c for c in comps if ps.tail(out_side[0]) in c)
        in_side = next(a for a in prem if a not in out_side)
        if ps.tail(in_side) in out_comp:
            raise SequentializationError(
                f"input tensor {n} does not split the structure")
        rest = set().union(*(c for c in comps if c is not out_comp)) if len(comps) > 1 else set()
        if ps.tail(prem[0]) in out_comp:
            assignment = SplitAssignment(n, frozenset(out_comp), frozenset(rest))
        else:
            assignment = SplitAssignment(n, frozenset(rest), frozenset(out_comp))
        left, right = split_parts(ps, assignment)
        return _compose_split(ps, n, left, right,
                              _seq_icomll(left), _seq_icomll(right))
    # all terminal nodes output: there is exactly one conclusion
    if len(ps.conclusions) != 1:
        raise SequentializationError(
            "every terminal node is an output but several conclusions remain")
    n = ps.tail(ps.conclusions[0])
    if ps.nodes[n] == ONE:
        return _base_case(ps)
    if ps.nodes[n] == PAR:
        return _compose_peel(ps, n, _seq_icomll)
    assignment = _unique_split(ps, n)
    left, right = split_parts(ps, assignment)
    return _compose_split(ps, n, left, right,
                          _seq_icomll(left), _seq_icomll(right))


# -- equivalence decisions --------------------------------------------------------


def proofs_equivalent(p1: SequentProof, p2: SequentProof) -> bool:
    """Permutation equivalence of two proofs in the bottom-restricted
    fragment, decided as equality of desequentializations."""
    from .sequent import check_proof, desequentialize
    for p in (p1, p2):
        report = check_proof(p, Fragment.BTENLL)
        if not report.ok:
            raise FragmentError(f"proof outside btenll: {report}")
    a = desequentialize(p1, verify=False).ps
    b = desequentialize(p2, verify=False).ps
    return iso(a, b)


def rewiring_equivalent(r1: ProofStructure, r2: ProofStructure,
                        max_par: int = DEFAULT_MAX_PAR) -> bool:
    """Equivalence of jump-correct structures under single-jump redirection,
    decided by comparing jump-stripped structures."""
    for r in (r1, r2):
        status = classify_jumps(r, max_par)
        if not status.jump_correct:
            raise SequentializationError("rewiring equivalence needs jump-correct inputs")
    return iso(r1.without_jumps(), r2.without_jumps())


def rewiring_reachable(r1: ProofStructure, r2: ProofStructure,
                       max_par: int = DEFAULT_MAX_PAR,
                       max_states: int = 50_000) -> bool:
    """Breadth-first oracle over single-jump redirections, each intermediate
    structure re-checked jump-correct.  Exact but exponential; meant for
    small instances."""
    for r in (r1, r2):
        status = classify_jumps(r, max_par)
        if not status.jump_correct:
            raise SequentializationError("rewiring oracle needs jump-correct inputs")
    base1, base2 = r1.without_jumps(), r2.without_jumps()
    goals = set()
    for sigma in isomorphisms(base2, base1, with_jumps=False):
        goals.add(frozenset((sigma[s], sigma[t]) for s, t in r2.jumps.items()))
    if not goals:
        return False

    def jump_correct_map(jump_map):
        candidate = r1.copy()
        candidate.jumps = dict(jump_map)
        return check(candidate, "acc", max_par).holds

    start = frozenset(r1.jumps.items())
    if start in goals:
        return True
    frontier = [start]
    seen = {start}
    while frontier:
        state = frontier.pop(0)
        current = dict(state)
        for src in current:
            for tgt in r1.nodes:
                if tgt in (src, current[src]):
                    continue
                new_map = dict(current)
                new_map[src] = tgt
                key = frozenset(new_map.items())
                if key in seen:
                    continue
                seen.add(key)
                if len(seen) > max_states:
                    raise SequentializationError("rewiring search exceeded its budget")
                if not jump_correct_map(new_map):
                    continue
                if key in goals:
                    return True
                frontier.append(key)
    return False
