"""Proof-structures: labelled incidence graphs with ordered premises.

A structure is a finite dag whose nodes carry one of the labels ax, cut,
one, bot, tensor, par, dot.  Arcs run downward from their tail (the node
they are a conclusion of) to their head (the node they are a premise of).
Conclusions of the whole structure are the premises of dot nodes and are
totally ordered.  Tensor and par nodes order their two premises.  Arcs may
carry formula types; bot nodes may carry a jump target used when building
switching graphs.

Values are treated as immutable once validated: every rewriting operation
in the package returns a fresh structure.
"""

from __future__ import annotations

import json

from . import formulas
from .errors import ParseError, ValidationError
from .formulas import Formula, Fragment, format_formula, in_fragment, negate, parse_formula

AX = "ax"
CUT = "cut"
ONE = "one"
BOT = "bot"
TENSOR = "tensor"
PAR = "par"
DOT = "dot"

LABELS = (AX, CUT, ONE, BOT, TENSOR, PAR, DOT)

# (max premises, min premises, conclusions) per label; par is binary in a
# proof-structure but may become unary in a switching graph.
_ARITY = {
    AX: (0, 0, 2),
    CUT: (2, 2, 0),
    ONE: (0, 0, 1),
    BOT: (0, 0, 1),
    TENSOR: (2, 2, 1),
    PAR: (2, 2, 1),
    DOT: (1, 1, 0),
}


class ValidationReport:
    """Outcome of validate(): ok iff the violation list is empty."""

    def __init__(self, violations):
        self.violations = list(violations)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "ValidationReport(ok)"
        return f"ValidationReport({self.violations!r})"


class ProofStructure:
    """Incidence graph with premise orders, ordered conclusions, optional
    arc types and an optional partial jump map on bot nodes."""

    def __init__(self, nodes=None, arcs=None, premise_order=None,
                 conclusions=(), types=None, jumps=None):
        self.nodes: dict[int, str] = dict(nodes or {})
        self.arcs: dict[int, tuple[int, int]] = {a: (t, h) for a, (t, h) in (arcs or {}).items()}
        self.premise_order: dict[int, tuple[int, int]] = {
            n: tuple(pair) for n, pair in (premise_order or {}).items()
        }
        self.conclusions: tuple[int, ...] = tuple(conclusions)
        self.types: dict[int, Formula] | None = dict(types) if types is not None else None
        self.jumps: dict[int, int] = dict(jumps or {})

    # -- incidence ---------------------------------------------------------

    def premises_of(self, node: int) -> list[int]:
        """Incoming arcs of a node, ordered for tensor/par nodes."""
        if node in self.premise_order:
            return list(self.premise_order[node])
        return sorted(a for a, (_, h) in self.arcs.items() if h == node)

    def conclusions_of(self, node: int) -> list[int]:
        return sorted(a for a, (t, _) in self.arcs.items() if t == node)

    def tail(self, arc: int) -> int:
        return self.arcs[arc][0]

    def head(self, arc: int) -> int:
        return self.arcs[arc][1]

    def nodes_with_label(self, label: str) -> list[int]:
        return sorted(n for n, lab in self.nodes.items() if lab == label)

    def bottom_nodes(self) -> list[int]:
        return self.nodes_with_label(BOT)

    def par_nodes(self) -> list[int]:
        return self.nodes_with_label(PAR)

    def terminal_nodes(self) -> list[int]:
        """Non-dot nodes all of whose conclusions are conclusions of the
        structure (nodes without conclusion arcs qualify vacuously)."""
        concl = set(self.conclusions)
        out = []
        for n, lab in sorted(self.nodes.items()):
            if lab == DOT:
                continue
            if all(a in concl for a in self.conclusions_of(n)):
                out.append(n)
        return out

    def conclusion_position(self, arc: int) -> int:
        return self.conclusions.index(arc)

    def fresh_node_id(self) -> int:
        return max(self.nodes, default=-1) + 1

    def fresh_arc_id(self) -> int:
        return max(self.arcs, default=-1) + 1

    # -- conversions -------------------------------------------------------

    def copy(self) -> "ProofStructure":
        return ProofStructure(self.nodes, self.arcs, self.premise_order,
                              self.conclusions, self.types, self.jumps)

    def without_jumps(self) -> "ProofStructure":
        ps = self.copy()
        ps.jumps = {}
        return ps

    def without_types(self) -> "ProofStructure":
        ps = self.copy()
        ps.types = None
        return ps

    def __repr__(self):
        return (f"ProofStructure(nodes={len(self.nodes)}, arcs={len(self.arcs)}, "
                f"conclusions={len(self.conclusions)})")


def ensure_valid(ps: ProofStructure, frag: Fragment | None = None) -> None:
    report = validate(ps, frag)
    if not report.ok:
        raise ValidationError(report)


def validate(ps: ProofStructure, frag: Fragment | None = None) -> ValidationReport:
    """Check every structural invariant; with `frag`, also require a typing
    whose formulas all live in that fragment."""
    v = []

    for n, lab in ps.nodes.items():
        if lab not in LABELS:
            v.append(("label", n, f"unknown label {lab!r} on node {n}"))

    for a, (t, h) in ps.arcs.items():
        if t == h:
            v.append(("arc-ends", a, f"arc {a} has identical ends"))
        for end in (t, h):
            if end not in ps.nodes:
                v.append(("arc-ends", a, f"arc {a} references missing node {end}"))
    if v:
        return ValidationReport(v)

    incoming = {n: [] for n in ps.nodes}
    outgoing = {n: [] for n in ps.nodes}
    for a, (t, h) in ps.arcs.items():
        outgoing[t].append(a)
        incoming[h].append(a)

    for n, lab in ps.nodes.items():
        lo, hi, out = _ARITY[lab][1], _ARITY[lab][0], _ARITY[lab][2]
        n_in, n_out = len(incoming[n]), len(outgoing[n])
        if not (lo <= n_in <= hi):
            kind = "binary par" if lab == PAR else f"{lab} arity"
            v.append((kind, n, f"{lab} node {n} has {n_in} premise(s), expected {hi}"))
        if n_out != out:
            v.append((f"{lab} arity", n, f"{lab} node {n} has {n_out} conclusion(s), expected {out}"))

    for n, pair in ps.premise_order.items():
        if ps.nodes.get(n) not in (TENSOR, PAR):
            v.append(("premise-order", n, f"premise order given for non-connective node {n}"))
        elif sorted(pair) != sorted(incoming[n]):
            v.append(("premise-order", n, f"premise order of node {n} does not list its premises"))
    for n, lab in ps.nodes.items():
        if lab in (TENSOR, PAR) and n not in ps.premise_order and len(incoming[n]) == 2:
            v.append(("premise-order", n, f"{lab} node {n} lacks a premise order"))

    dot_premises = [a for a, (_, h) in ps.arcs.items() if ps.nodes[h] == DOT]
    if sorted(ps.conclusions) != sorted(dot_premises):
        v.append(("conclusions", None,
                  "conclusion list does not enumerate the dot premises exactly once"))

    # dag check
    state = {n: 0 for n in ps.nodes}
    order = []

    def visit(start):
        stack = [(start, iter(outgoing[start]))]
        state[start] = 1
        while stack:
            n, it = stack[-1]
            advanced = False
            for a in it:
                m = ps.arcs[a][1]
                if state[m] == 0:
                    state[m] = 1
                    stack.append((m, iter(outgoing[m])))
                    advanced = True
                    break
                if state[m] == 1:
                    v.append(("dag", m, f"directed cycle through node {m}"))
                    return False
            if not advanced:
                state[n] = 2
                order.append(n)
                stack.pop()
        return True

    for n in sorted(ps.nodes):
        if state[n] == 0 and not visit(n):
            break

    for src, tgt in ps.jumps.items():
        if ps.nodes.get(src) != BOT:
            v.append(("jump", src, f"jump source {src} is not a bot node"))
        if tgt not in ps.nodes:
            v.append(("jump", src, f"jump target {tgt} does not exist"))
        elif tgt == src:
            v.append(("jump", src, f"jump from node {src} to itself"))

    if ps.types is not None:
        missing = [a for a in ps.arcs if a not in ps.types]
        if missing:
            v.append(("typing", missing[0], f"arc {missing[0]} lacks a type"))
        else:
            v.extend(_check_types(ps, incoming, outgoing))
    if frag is not None:
        if ps.types is None:
            v.append(("fragment", None, "fragment check requires a typed structure"))
        else:
            for a in sorted(ps.arcs):
                f = ps.types.get(a)
                if f is not None and not in_fragment(f, frag)[0]:
                    v.append(("fragment", a,
                              f"type {format_formula(f)} of arc {a} outside {frag.value}"))

    return ValidationReport(v)


def _check_types(ps, incoming, outgoing):
    v = []
    ty = ps.types
    for n, lab in ps.nodes.items():
        if lab == AX and len(outgoing[n]) == 2:
            a, b = outgoing[n]
            if ty[a] != negate(ty[b]):
                v.append(("dual ax types", n, f"ax node {n} conclusions are not dual"))
        elif lab == CUT and len(incoming[n]) == 2:
            a, b = incoming[n]
            if ty[a] != negate(ty[b]):
                v.append(("dual cut types", n, f"cut node {n} premises are not dual"))
        elif lab == ONE and outgoing[n]:
            if ty[outgoing[n][0]] != formulas.ONE:
                v.append(("unit type", n, f"one node {n} conclusion is not typed one"))
        elif lab == BOT and outgoing[n]:
            if ty[outgoing[n][0]] != formulas.BOT:
                v.append(("unit type", n, f"bot node {n} conclusion is not typed bot"))
        elif lab in (TENSOR, PAR) and n in ps.premise_order and outgoing[n]:
            left, right = ps.premise_order[n]
            want = Formula(formulas.TENSOR if lab == TENSOR else formulas.PAR,
                           left=ty[left], right=ty[right])
            if ty[outgoing[n][0]] != want:
                v.append(("connective type", n,
                          f"{lab} node {n} conclusion type does not compose its premises"))
    return v


# -- derived notions -------------------------------------------------------


def topological_order(nodes, arcs) -> list[int]:
    """Nodes ordered so every arc's tail precedes its head."""
    indeg = {n: 0 for n in nodes}
    succs = {n: [] for n in nodes}
    for t, h in arcs.values():
        indeg[h] += 1
        succs[t].append(h)
    ready = sorted(n for n, d in indeg.items() if d == 0)
    out = []
    while ready:
        n = ready.pop()
        out.append(n)
        for m in sorted(succs[n], reverse=True):
            indeg[m] -= 1
            if indeg[m] == 0:
                ready.append(m)
    return out


def erasing_nodes(g) -> set[int]:
    """Bot, par and dot nodes all of whose premises come from erasing nodes.

    Works on structures and on switching graphs: only labels and incidence
    are consulted.  Jump arcs never count as premises here.
    """
    erasing = set()
    for n in topological_order(g.nodes, g.arcs):
        if g.nodes[n] not in (BOT, PAR, DOT):
            continue
        prem = [a for a, (_, h) in g.arcs.items() if h == n and not _is_jump_arc(g, a)]
        if all(g.arcs[a][0] in erasing for a in prem):
            erasing.add(n)
    return erasing


def _is_jump_arc(g, a) -> bool:
    jump_arcs = getattr(g, "jump_arcs", None)
    return jump_arcs is not None and a in jump_arcs


def is_wten(ps: ProofStructure) -> tuple[bool, tuple[int, int] | None]:
    """True iff no premise of a cut or tensor node is the conclusion of an
    erasing node; otherwise also return one offending (node, premise arc)."""
    erasing = erasing_nodes(ps)
    for n in sorted(ps.nodes):
        if ps.nodes[n] not in (CUT, TENSOR):
            continue
        for a in ps.premises_of(n):
            if ps.tail(a) in erasing:
                return False, (n, a)
    return True, None


def precedes(ps: ProofStructure, n: int, m: int) -> bool:
    """True iff a non-empty directed path runs from n down to m."""
    seen = set()
    stack = [n]
    while stack:
        cur = stack.pop()
        for a in ps.conclusions_of(cur):
            h = ps.head(a)
            if h == m:
                return True
            if h not in seen:
                seen.add(h)
                stack.append(h)
    return False


def descent_chain(ps: ProofStructure, n: int) -> list[int]:
    """Nodes strictly below n, in order, for nodes with at most one
    conclusion arc all the way down (holds below any non-ax node)."""
    chain = []
    cur = n
    while True:
        out = ps.conclusions_of(cur)
        if not out:
            return chain
        if len(out) > 1:
            raise ValueError(f"node {cur} has several conclusions; descent is not a chain")
        cur = ps.head(out[0])
        chain.append(cur)


def strip(ps: ProofStructure) -> ProofStructure:
    """Forget types and jumps (the purely geometric structure)."""
    return ps.without_types().without_jumps()


def jump_free(ps: ProofStructure) -> bool:
    return not ps.jumps


def jump_total(ps: ProofStructure) -> bool:
    return set(ps.jumps) == set(ps.bottom_nodes())


# -- serialization ---------------------------------------------------------


def to_json_dict(ps: ProofStructure) -> dict:
    doc = {
        "nodes": [{"id": n, "label": lab} for n, lab in sorted(ps.nodes.items())],
        "arcs": [{"id": a, "tail": t, "head": h} for a, (t, h) in sorted(ps.arcs.items())],
        "premises": {str(n): list(pair) for n, pair in sorted(ps.premise_order.items())},
        "conclusions": list(ps.conclusions),
    }
    if ps.types is not None:
        doc["types"] = {str(a): format_formula(f) for a, f in sorted(ps.types.items())}
    if ps.jumps:
        doc["jumps"] = {str(n): m for n, m in sorted(ps.jumps.items())}
    return doc


def to_json(ps: ProofStructure) -> str:
    return json.dumps(to_json_dict(ps), indent=2)


def from_json_dict(doc: dict) -> ProofStructure:
    try:
        nodes = {int(rec["id"]): rec["label"] for rec in doc["nodes"]}
        arcs = {int(rec["id"]): (int(rec["tail"]), int(rec["head"])) for rec in doc["arcs"]}
        premise_order = {int(n): tuple(int(a) for a in pair)
                         for n, pair in doc.get("premises", {}).items()}
        conclusions = tuple(int(a) for a in doc.get("conclusions", []))
        types = None
        if "types" in doc:
            types = {int(a): parse_formula(s) for a, s in doc["types"].items()}
        jumps = {int(n): int(m) for n, m in doc.get("jumps", {}).items()}
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed structure document: {exc}") from None
    return ProofStructure(nodes, arcs, premise_order, conclusions, types, jumps)


def from_json(text: str) -> ProofStructure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json_dict(doc)


def to_dsl(ps: ProofStructure) -> str:
    """Line-oriented mirror of the JSON schema."""
    lines = []
    for n, lab in sorted(ps.nodes.items()):
        if n in ps.premise_order:
            left, right = ps.premise_order[n]
            lines.append(f"node {n} {lab} {left} {right}")
        else:
            lines.append(f"node {n} {lab}")
    for a, (t, h) in sorted(ps.arcs.items()):
        lines.append(f"arc {a} {t} {h}")
    if ps.conclusions:
        lines.append("conclusions " + " ".join(str(a) for a in ps.conclusions))
    if ps.types is not None:
        for a, f in sorted(ps.types.items()):
            lines.append(f"type {a} {format_formula(f)}")
    for n, m in sorted(ps.jumps.items()):
        lines.append(f"jump {n} {m}")
    return "\n".join(lines) + "\n"


def from_dsl(text: str) -> ProofStructure:
    nodes, arcs, premise_order, jumps = {}, {}, {}, {}
    conclusions = ()
    types = None
    saw_conclusions = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        try:
            if kind == "node":
                nid, lab = int(parts[1]), parts[2]
                nodes[nid] = lab
                if len(parts) == 5:
                    premise_order[nid] = (int(parts[3]), int(parts[4]))
                elif len(parts) != 3:
                    raise ValueError("node takes an id, a label and optionally two premise arcs")
            elif kind == "arc":
                arcs[int(parts[1])] = (int(parts[2]), int(parts[3]))
            elif kind == "conclusions":
                conclusions = tuple(int(a) for a in parts[1:])
                saw_conclusions = True
            elif kind == "type":
                if types is None:
                    types = {}
                types[int(parts[1])] = parse_formula(" ".join(parts[2:]))
            elif kind == "jump":
                jumps[int(parts[1])] = int(parts[2])
            else:
                raise ValueError(f"unknown directive {kind!r}")
        except (IndexError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not saw_conclusions and nodes:
        conclusions = ()
    return ProofStructure(nodes, arcs, premise_order, conclusions, types, jumps)


def load_structure(text: str) -> ProofStructure:
    """Accept either the JSON schema or the line DSL."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return from_json(text)
    return from_dsl(text)
