"""Sequent-calculus proof trees, rule checking and desequentialization.

Proofs are immutable trees; each node records its rule, its premises and
the conclusion sequent the rule derives.  Builders compute conclusions and
reject ill-formed instances, so a proof assembled through them is correct
by construction; `check_proof` re-verifies whole trees read from files and
adds the fragment discipline (all formulas inside the fragment, no axiom
or cut rules in the constant-only intuitionistic fragment).

Desequentialization turns a proof into a typed structure by structural
recursion: axioms and units become single nodes, tensor and cut join the
two sub-structures, par and bot extend one, and exchange only reorders the
conclusions.  The result records, for every bot rule, the set of nodes
built from that rule's premise sub-proof; the jump-aware relation between
proofs and jump-total structures checks jump targets against those scopes.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .canonical import isomorphisms
from .errors import ParseError, ProofNetError
from .formulas import (BOT as BOT_F, Formula, Fragment, format_formula,
                       in_fragment, negate, parse_formula)
from .formulas import ONE as ONE_F, par as par_f, tensor as tensor_f
from .structure import (AX, BOT, CUT, DOT, ONE, PAR, TENSOR, ProofStructure,
                        ValidationReport, jump_total, validate)

AX_RULE = "ax"
CUT_RULE = "cut"
EX_RULE = "ex"
TENSOR_RULE = "tensor"
ONE_RULE = "one"
PAR_RULE = "par"
BOT_RULE = "bot"


@dataclass(frozen=True)
class SequentProof:
    rule: str
    premises: tuple["SequentProof", ...]
    conclusion: tuple[Formula, ...]
    cut_formula: Formula | None = None
    position: int | None = None

    def rule_count(self) -> int:
        return 1 + sum(p.rule_count() for p in self.premises)

    def subproofs(self):
        yield self
        for p in self.premises:
            yield from p.subproofs()

    def __repr__(self):
        return f"SequentProof({format_proof_expr(self)})"


class ProofBuildError(ProofNetError):
    """A rule builder was applied to premises of the wrong shape."""


def ax_rule(a: Formula) -> SequentProof:
    return SequentProof(AX_RULE, (), (a, negate(a)))


def one_rule() -> SequentProof:
    return SequentProof(ONE_RULE, (), (ONE_F,))


def bot_rule(p: SequentProof) -> SequentProof:
    return SequentProof(BOT_RULE, (p,), p.conclusion + (BOT_F,))


def par_rule(p: SequentProof) -> SequentProof:
    if len(p.conclusion) < 2:
        raise ProofBuildError("par rule needs two formulas to combine")
    a, b = p.conclusion[-2], p.conclusion[-1]
    return SequentProof(PAR_RULE, (p,), p.conclusion[:-2] + (par_f(a, b),))


def tensor_rule(p1: SequentProof, p2: SequentProof) -> SequentProof:
    if not p1.conclusion or not p2.conclusion:
        raise ProofBuildError("tensor rule needs a formula on each side")
    a, b = p1.conclusion[-1], p2.conclusion[0]
    return SequentProof(TENSOR_RULE, (p1, p2),
                        p1.conclusion[:-1] + (tensor_f(a, b),) + p2.conclusion[1:])


def cut_rule(a: Formula, p1: SequentProof, p2: SequentProof) -> SequentProof:
    if not p1.conclusion or p1.conclusion[-1] != a:
        raise ProofBuildError("cut formula must close the first premise")
    if not p2.conclusion or p2.conclusion[0] != negate(a):
        raise ProofBuildError("dual of the cut formula must open the second premise")
    return SequentProof(CUT_RULE, (p1, p2),
                        p1.conclusion[:-1] + p2.conclusion[1:], cut_formula=a)


def ex_rule(position: int, p: SequentProof) -> SequentProof:
    if not 0 <= position <= len(p.conclusion) - 2:
        raise ProofBuildError(f"exchange position {position} out of range")
    c = list(p.conclusion)
    c[position], c[position + 1] = c[position + 1], c[position]
    return SequentProof(EX_RULE, (p,), tuple(c), position=position)


def exchange_to(p: SequentProof, order: list[int]) -> SequentProof:
    """Compose adjacent exchanges so the i-th formula of the result is the
    order[i]-th formula of p's conclusion."""
    if sorted(order) != list(range(len(p.conclusion))):
        raise ProofBuildError("exchange target is not a permutation")
    current = list(range(len(p.conclusion)))
    for i, want in enumerate(order):
        j = current.index(want)
        while j > i:
            p = ex_rule(j - 1, p)
            current[j - 1], current[j] = current[j], current[j - 1]
            j -= 1
    return p


_ARITY = {AX_RULE: 0, ONE_RULE: 0, CUT_RULE: 2, TENSOR_RULE: 2,
          EX_RULE: 1, PAR_RULE: 1, BOT_RULE: 1}


def check_proof(proof: SequentProof, frag: Fragment = Fragment.MLLU) -> ValidationReport:
    """Verify every rule instance and the fragment discipline."""
    v = []

    def visit(p):
        if p.rule not in _ARITY:
            v.append(("rule", p.rule, f"unknown rule {p.rule!r}"))
            return
        if len(p.premises) != _ARITY[p.rule]:
            v.append(("arity", p.rule,
                      f"{p.rule} rule has {len(p.premises)} premise(s), "
                      f"expected {_ARITY[p.rule]}"))
            return
        for q in p.premises:
            visit(q)
        try:
            if p.rule == AX_RULE:
                if len(p.conclusion) != 2 or p.conclusion[1] != negate(p.conclusion[0]):
                    raise ProofBuildError("axiom conclusion must be a dual pair")
                rebuilt = p.conclusion
            elif p.rule == ONE_RULE:
                rebuilt = (ONE_F,)
            elif p.rule == BOT_RULE:
                rebuilt = bot_rule(p.premises[0]).conclusion
            elif p.rule == PAR_RULE:
                rebuilt = par_rule(p.premises[0]).conclusion
            elif p.rule == TENSOR_RULE:
                rebuilt = tensor_rule(*p.premises).conclusion
            elif p.rule == CUT_RULE:
                rebuilt = cut_rule(p.cut_formula, *p.premises).conclusion
            else:
                rebuilt = ex_rule(p.position, p.premises[0]).conclusion
        except ProofBuildError as exc:
            v.append(("rule", p.rule, str(exc)))
            return
        if rebuilt != p.conclusion:
            v.append(("conclusion", p.rule,
                      f"{p.rule} rule does not derive its recorded conclusion"))
        for f in p.conclusion:
            if not in_fragment(f, frag)[0]:
                v.append(("fragment", p.rule,
                          f"formula {format_formula(f)} outside {frag.value}"))
        if frag is Fragment.ICOMLL and p.rule in (AX_RULE, CUT_RULE):
            v.append(("fragment", p.rule, f"{p.rule} rule is not available in icomll"))

    visit(proof)
    return ValidationReport(v)


# -- text format -------------------------------------------------------------


def format_proof_expr(p: SequentProof) -> str:
    if p.rule == AX_RULE:
        return f'(ax "{format_formula(p.conclusion[0])}")'
    if p.rule == ONE_RULE:
        return "(one)"
    if p.rule == EX_RULE:
        return f"(ex {p.position + 1} {format_proof_expr(p.premises[0])})"
    if p.rule == CUT_RULE:
        return (f'(cut "{format_formula(p.cut_formula)}" '
                f"{format_proof_expr(p.premises[0])} {format_proof_expr(p.premises[1])})")
    inner = " ".join(format_proof_expr(q) for q in p.premises)
    return f"({p.rule} {inner})"


def format_proof(p: SequentProof, frag: Fragment = Fragment.MLLU) -> str:
    return f"fragment: {frag.value}\n{format_proof_expr(p)}\n"


def _tokenize_expr(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c in "()":
            tokens.append((c, i + 1))
            i += 1
        elif c == '"':
            j = text.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated string", i + 1)
            tokens.append((("str", text[i + 1:j]), i + 1))
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in "()":
                j += 1
            tokens.append((text[i:j], i + 1))
            i = j
    tokens.append((None, n + 1))
    return tokens


def parse_proof(text: str) -> tuple[Fragment, SequentProof]:
    """Read the proof file format: a fragment header then one s-expression."""
    lines = text.splitlines()
    frag = Fragment.MLLU
    body_start = 0
    for idx, line in enumerate(lines):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if stripped.lower().startswith("fragment:"):
            from .formulas import fragment_from_name
            frag = fragment_from_name(stripped.split(":", 1)[1])
            body_start = idx + 1
        break
    body = "\n".join(lines[body_start:])
    tokens = _tokenize_expr(body)
    pos = 0

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def expect(symbol):
        tok, at = take()
        if tok != symbol:
            raise ParseError(f"expected {symbol!r}", at)

    def parse_node() -> SequentProof:
        expect("(")
        head, at = take()
        try:
            if head == "ax":
                tok, at2 = take()
                if not (isinstance(tok, tuple) and tok[0] == "str"):
                    raise ParseError("ax takes a quoted formula", at2)
                node = ax_rule(parse_formula(tok[1]))
            elif head == "one":
                node = one_rule()
            elif head == "bot":
                node = bot_rule(parse_node())
            elif head == "par":
                node = par_rule(parse_node())
            elif head == "tensor":
                node = tensor_rule(parse_node(), parse_node())
            elif head == "cut":
                tok, at2 = take()
                if not (isinstance(tok, tuple) and tok[0] == "str"):
                    raise ParseError("cut takes a quoted formula", at2)
                node = cut_rule(parse_formula(tok[1]), parse_node(), parse_node())
            elif head == "ex":
                tok, at2 = take()
                try:
                    position = int(tok) - 1
                except (TypeError, ValueError):
                    raise ParseError("ex takes a 1-based position", at2) from None
                node = ex_rule(position, parse_node())
            else:
                raise ParseError(f"unknown rule {head!r}", at)
        except ProofBuildError as exc:
            raise ParseError(str(exc), at) from None
        expect(")")
        return node

    proof = parse_node()
    trailing, at = take()
    if trailing is not None:
        raise ParseError(f"unexpected {trailing!r}", at)
    return frag, proof


# -- desequentialization -----------------------------------------------------


@dataclass
class DeseqResult:
    ps: ProofStructure
    conclusion_map: tuple[int, ...]
    bot_scopes: dict[int, frozenset[int]] = field(default_factory=dict)


def desequentialize(proof: SequentProof, frag: Fragment | None = None,
                    verify: bool = True) -> DeseqResult:
    """Build the typed structure of a proof.

    With `verify`, the result is validated (inside `frag` when given) and
    the acyclicity-plus-component-count criterion is asserted on it.
    """
    counter = iter(range(10 ** 9))
    bot_scopes: dict[int, frozenset[int]] = {}

    def fresh():
        return next(counter)

    def build(p: SequentProof) -> ProofStructure:
        if p.rule == AX_RULE:
            ax, d1, d2 = fresh(), fresh(), fresh()
            a1, a2 = fresh(), fresh()
            return ProofStructure(
                {ax: AX, d1: DOT, d2: DOT}, {a1: (ax, d1), a2: (ax, d2)}, {},
                (a1, a2), {a1: p.conclusion[0], a2: p.conclusion[1]})
        if p.rule == ONE_RULE:
            one, d = fresh(), fresh()
            a = fresh()
            return ProofStructure({one: ONE, d: DOT}, {a: (one, d)}, {},
                                  (a,), {a: ONE_F})
        if p.rule == BOT_RULE:
            r1 = build(p.premises[0])
            scope = frozenset(r1.nodes)
            b, d, a = fresh(), fresh(), fresh()
            r1.nodes[b] = BOT
            r1.nodes[d] = DOT
            r1.arcs[a] = (b, d)
            r1.types[a] = BOT_F
            r1.conclusions = r1.conclusions + (a,)
            bot_scopes[b] = scope
            return r1
        if p.rule == EX_RULE:
            r1 = build(p.premises[0])
            c = list(r1.conclusions)
            i = p.position
            c[i], c[i + 1] = c[i + 1], c[i]
            r1.conclusions = tuple(c)
            return r1
        if p.rule == PAR_RULE:
            r1 = build(p.premises[0])
            left, right = r1.conclusions[-2], r1.conclusions[-1]
            node, d, a = fresh(), fresh(), fresh()
            for arc in (left, right):
                dot = r1.head(arc)
                del r1.nodes[dot]
                r1.arcs[arc] = (r1.tail(arc), node)
            r1.nodes[node] = PAR
            r1.nodes[d] = DOT
            r1.premise_order[node] = (left, right)
            r1.arcs[a] = (node, d)
            r1.types[a] = par_f(r1.types[left], r1.types[right])
            r1.conclusions = r1.conclusions[:-2] + (a,)
            return r1
        # binary rules joining two structures
        r1, r2 = build(p.premises[0]), build(p.premises[1])
        left, right = r1.conclusions[-1], r2.conclusions[0]
        r1.nodes.update(r2.nodes)
        r1.arcs.update(r2.arcs)
        r1.premise_order.update(r2.premise_order)
        r1.types.update(r2.types)
        node = fresh()
        for arc in (left, right):
            dot = r1.head(arc)
            del r1.nodes[dot]
            r1.arcs[arc] = (r1.tail(arc), node)
        if p.rule == TENSOR_RULE:
            d, a = fresh(), fresh()
            r1.nodes[node] = TENSOR
            r1.nodes[d] = DOT
            r1.premise_order[node] = (left, right)
            r1.arcs[a] = (node, d)
            r1.types[a] = tensor_f(r1.types[left], r1.types[right])
            r1.conclusions = r1.conclusions[:-1] + (a,) + r2.conclusions[1:]
        else:
            r1.nodes[node] = CUT
            r1.conclusions = r1.conclusions[:-1] + r2.conclusions[1:]
        return r1

    ps = build(proof)
    result = DeseqResult(ps, tuple(range(len(ps.conclusions))), bot_scopes)
    if verify:
        report = validate(ps, frag)
        if not report.ok:
            raise AssertionError(f"desequentialization failed validation: {report}")
        from .switching import check
        assert check(ps, "accw").holds, \
            "desequentialization violates the component-count criterion"
    return result


def deseq_relation_holds(proof: SequentProof, ps: ProofStructure) -> bool:
    """Jump-aware correspondence between a proof and a jump-total structure.

    Holds when the jump-stripped structure is isomorphic to the proof's
    desequentialization and some witnessing isomorphism sends every bot
    rule's jump into the image of that rule's premise sub-proof.
    """
    if not jump_total(ps):
        raise ProofNetError("relation requires a jump-total structure")
    d = desequentialize(proof, verify=False)
    stripped = ps.without_jumps()
    for sigma in isomorphisms(d.ps, stripped, with_jumps=False):
        ok = True
        for b, scope in d.bot_scopes.items():
            image = {sigma[t] for t in scope if t in sigma}
            if ps.jumps[sigma[b]] not in image:
                ok = False
                break
        if ok:
            return True
    return False
