"""Formulas of multiplicative linear logic with units, and fragment grammars.

A formula is an immutable tree over atoms, the two units and the two binary
connectives.  Linear negation is structural: it flips the dual flag on atoms,
swaps the units and exchanges tensor with par under De Morgan.  Fragments are
subsets of the formula language closed under subformulas; membership is
decided by a single recursive kind inference that also returns the derived
kind (A/E for the bottom-tensor-restricted grammars, O/I polarity for the
intuitionistic ones).

Surface syntax: atoms are identifiers (`X`), duals carry a trailing caret
(`X^`), units are written `one` (or `1`) and `bot`, the connectives are the
infix keywords `tensor` and `par`.  Mixed nesting must be parenthesized; the
printer always emits the fully parenthesized form.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import ParseError

ATOM = "atom"
ONE_KIND = "one"
BOT_KIND = "bot"
TENSOR = "tensor"
PAR = "par"


@dataclass(frozen=True)
class Formula:
    kind: str
    name: str = ""
    dual: bool = False
    left: Formula | None = None
    right: Formula | None = None

    def __repr__(self):
        return f"Formula({format_formula(self)!r})"


ONE = Formula(ONE_KIND)
BOT = Formula(BOT_KIND)


def atom(name: str, dual: bool = False) -> Formula:
    return Formula(ATOM, name=name, dual=dual)


def tensor(left: Formula, right: Formula) -> Formula:
    return Formula(TENSOR, left=left, right=right)


def par(left: Formula, right: Formula) -> Formula:
    return Formula(PAR, left=left, right=right)


def negate(f: Formula) -> Formula:
    """Linear negation: an involution without fixed points."""
    if f.kind == ATOM:
        return Formula(ATOM, name=f.name, dual=not f.dual)
    if f.kind == ONE_KIND:
        return BOT
    if f.kind == BOT_KIND:
        return ONE
    if f.kind == TENSOR:
        return Formula(PAR, left=negate(f.left), right=negate(f.right))
    return Formula(TENSOR, left=negate(f.left), right=negate(f.right))


def subformulas(f: Formula):
    yield f
    if f.left is not None:
        yield from subformulas(f.left)
        yield from subformulas(f.right)


class Fragment(enum.Enum):
    MLL = "mll"
    MLLU = "mllu"
    BTENLL = "btenll"
    BTENLL_STAR = "btenll-star"
    IMLL = "imll"
    ICOMLL = "icomll"


def fragment_from_name(name: str) -> Fragment:
    try:
        return Fragment(name.strip().lower())
    except ValueError:
        raise ParseError(f"unknown fragment {name!r}") from None


# Kind lattice for the starred bottom-tensor grammar: kinds may be ambiguous
# for atoms, so inference returns a set.
_A, _AD, _E, _ED = "A", "A*", "E", "E*"


def _bten_kind(f: Formula) -> str | None:
    """Kind A or E in the bottom-tensor-restricted grammar, None if outside."""
    if f.kind == ATOM or f.kind == ONE_KIND:
        return _A
    if f.kind == BOT_KIND:
        return _E
    kl, kr = _bten_kind(f.left), _bten_kind(f.right)
    if kl is None or kr is None:
        return None
    if f.kind == TENSOR:
        return _A if (kl, kr) == (_A, _A) else None
    if (kl, kr) == (_E, _E):
        return _E
    return _A


def _bten_star_kinds(f: Formula) -> frozenset:
    if f.kind == ATOM:
        return frozenset({_A, _AD})
    if f.kind == BOT_KIND:
        return frozenset({_E})
    if f.kind == ONE_KIND:
        return frozenset({_ED})
    kl, kr = _bten_star_kinds(f.left), _bten_star_kinds(f.right)
    out = set()
    a_l, a_r = kl & {_A, _AD}, kr & {_A, _AD}
    if f.kind == PAR:
        if (a_l and a_r) or (a_l and _E in kr) or (_E in kl and a_r):
            out.add(_A)
        if _E in kl and _E in kr:
            out.add(_E)
    else:
        if (a_l and a_r) or (a_l and _ED in kr) or (_ED in kl and a_r):
            out.add(_AD)
        if _ED in kl and _ED in kr:
            out.add(_ED)
    return frozenset(out)


def polarity(f: Formula) -> str | None:
    """Output/input polarity in the intuitionistic grammar, None if outside."""
    if f.kind == ATOM:
        return "I" if f.dual else "O"
    if f.kind == ONE_KIND:
        return "O"
    if f.kind == BOT_KIND:
        return "I"
    pl, pr = polarity(f.left), polarity(f.right)
    if pl is None or pr is None:
        return None
    if f.kind == TENSOR:
        if (pl, pr) == ("O", "O"):
            return "O"
        if "O" in (pl, pr):
            return "I"
        return None
    if (pl, pr) == ("I", "I"):
        return "I"
    if "O" in (pl, pr) and "I" in (pl, pr):
        return "O"
    return None


def in_fragment(f: Formula, frag: Fragment) -> tuple[bool, str | None]:
    """Decide fragment membership; also return the derived kind tag.

    The tag is A/E for the bottom-tensor grammars, O/I for the
    intuitionistic ones, and None for the unrestricted fragments.
    """
    if frag is Fragment.MLLU:
        return True, None
    if frag is Fragment.MLL:
        ok = all(g.kind in (ATOM, TENSOR, PAR) for g in subformulas(f))
        return ok, None
    if frag is Fragment.BTENLL:
        kind = _bten_kind(f)
        return kind is not None, kind
    if frag is Fragment.BTENLL_STAR:
        kinds = _bten_star_kinds(f)
        if not kinds:
            return False, None
        return True, _A if kinds & {_A, _AD} else _E
    pol = polarity(f)
    if pol is None:
        return False, None
    if frag is Fragment.ICOMLL and any(g.kind == ATOM for g in subformulas(f)):
        return False, None
    return True, pol


def format_formula(f: Formula) -> str:
    if f.kind == ATOM:
        return f.name + ("^" if f.dual else "")
    if f.kind == ONE_KIND:
        return "one"
    if f.kind == BOT_KIND:
        return "bot"
    op = "tensor" if f.kind == TENSOR else "par"
    return f"({format_formula(f.left)} {op} {format_formula(f.right)})"


def _tokenize(text: str):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in "()":
            tokens.append((c, i + 1))
            i += 1
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if j < n and text[j] == "^":
                j += 1
                word += "^"
            tokens.append((word, i + 1))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r}", i + 1)
    tokens.append((None, n + 1))
    return tokens


_KEYWORDS = {"one", "1", "bot", "tensor", "par"}


def parse_formula(text: str) -> Formula:
    """Parse the surface syntax; raises ParseError with a 1-based offset."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0]

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_term() -> Formula:
        tok, at = take()
        if tok == "(":
            inner = parse_expr()
            closing, at2 = take()
            if closing != ")":
                raise ParseError("expected ')'", at2)
            return inner
        if tok in ("one", "1"):
            return ONE
        if tok == "bot":
            return BOT
        if tok is None or tok in ("tensor", "par", ")"):
            raise ParseError("expected a formula", at)
        if tok.endswith("^"):
            return atom(tok[:-1], dual=True)
        return atom(tok)

    def parse_expr() -> Formula:
        left = parse_term()
        op = None
        while peek() in ("tensor", "par"):
            word, at = take()
            if op is not None and word != op:
                raise ParseError("mixed connectives need parentheses", at)
            op = word
            right = parse_term()
            left = tensor(left, right) if op == "tensor" else par(left, right)
        return left

    result = parse_expr()
    trailing, at = take()
    if trailing is not None:
        raise ParseError(f"unexpected {trailing!r}", at)
    return result
