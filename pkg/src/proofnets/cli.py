"""Command-line surface: check, normalize, sequentialize, jumps, equiv,
deseq, gen, dot.

Exit codes are stable: 0 for success (criterion holds, proofs equivalent),
1 when a decided property fails, 2 for malformed or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import fixtures
from .errors import ProofNetError, ValidationError
from .formulas import Fragment, fragment_from_name
from .generate import GenParams, random_proof, random_ps
from .render import export_dot
from .sequent import (desequentialize, format_proof, parse_proof)
from .sequentialize import (canonical_jumps_btenll, canonical_jumps_icomll,
                            proofs_equivalent, sequentialize_btenll,
                            sequentialize_icomll, sequentialize_wten)
from .structure import (ProofStructure, ensure_valid, is_wten,
                        load_structure, to_dsl, to_json)
from .switching import DEFAULT_MAX_PAR, check
from .cutelim import normalize


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_ps(path: str) -> ProofStructure:
    ps = load_structure(_read(path))
    ensure_valid(ps)
    return ps


def _emit_ps(ps: ProofStructure, fmt: str, out: str | None) -> None:
    if fmt == "dsl":
        _write(out, to_dsl(ps))
    elif fmt == "dot":
        _write(out, export_dot(ps))
    else:
        _write(out, to_json(ps))


def _cmd_check(args) -> int:
    ps = _load_ps(args.file)
    if args.criterion == "wten":
        ok, witness = is_wten(ps)
        doc = {"criterion": "wten", "holds": ok}
        if witness is not None:
            doc["witness"] = {"node": witness[0], "premise": witness[1]}
        print(json.dumps(doc))
        return 0 if ok else 1
    verdict = check(ps, args.criterion, args.max_parr)
    print(verdict.to_json())
    return 0 if verdict.holds else 1


def _cmd_normalize(args) -> int:
    ps = _load_ps(args.file)
    trace = normalize(ps, seed=args.seed)
    if args.trace:
        _write(args.trace, trace.to_json_lines() + "\n")
    _emit_ps(trace.normal_form, args.format, args.out)
    return 0


def _cmd_sequentialize(args) -> int:
    ps = _load_ps(args.file)
    if args.mode == "wten":
        proof = sequentialize_wten(ps, args.max_parr)
        jumps = {}
        frag = Fragment.MLLU
    elif args.mode == "btenll":
        if args.m is None:
            raise ProofNetError("--m NODE is required in btenll mode")
        proof, jumped = sequentialize_btenll(ps, args.m, args.max_parr)
        jumps = jumped.ps.jumps
        frag = Fragment.BTENLL
    else:
        proof, jumped = sequentialize_icomll(ps, args.max_parr)
        jumps = jumped.ps.jumps
        frag = Fragment.ICOMLL
    _write(args.out, format_proof(proof, frag))
    if args.jumps_out:
        _write(args.jumps_out, json.dumps({str(n): m for n, m in sorted(jumps.items())}) + "\n")
    return 0


def _cmd_jumps(args) -> int:
    ps = _load_ps(args.file)
    if args.mode == "btenll":
        if args.m is None:
            raise ProofNetError("--m NODE is required in btenll mode")
        jumped = canonical_jumps_btenll(ps, args.m, args.max_parr)
    else:
        jumped = canonical_jumps_icomll(ps, args.max_parr)
    _emit_ps(jumped.ps, args.format, args.out)
    return 0


def _cmd_equiv(args) -> int:
    _, p1 = parse_proof(_read(args.proof1))
    _, p2 = parse_proof(_read(args.proof2))
    result = proofs_equivalent(p1, p2)
    print("true" if result else "false")
    return 0 if result else 1


def _cmd_deseq(args) -> int:
    frag, proof = parse_proof(_read(args.proof))
    from .sequent import check_proof
    report = check_proof(proof, frag)
    if not report.ok:
        raise ValidationError(report)
    result = desequentialize(proof, frag)
    _emit_ps(result.ps, args.format, args.out)
    return 0


def _cmd_gen(args) -> int:
    if args.fixture:
        _emit_ps(fixtures.load(args.fixture), args.format, args.out)
        return 0
    frag = fragment_from_name(args.fragment) if args.fragment else None
    params = GenParams(fragment=frag, max_rules=args.max_rules,
                       max_nodes=args.max_nodes,
                       cut_probability=args.cut_probability, seed=args.seed)
    if args.kind == "proof":
        if frag is None:
            raise ProofNetError("proof generation needs --fragment")
        proof = random_proof(params)
        _write(args.out, format_proof(proof, frag))
    else:
        _emit_ps(random_ps(params), args.format, args.out)
    return 0


def _cmd_dot(args) -> int:
    ps = _load_ps(args.file)
    switching = None
    if args.switching:
        raw = json.loads(_read(args.switching))
        switching = {int(n): int(a) for n, a in raw.items()}
    _write(args.out, export_dot(ps, switching))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proofnets",
        description="Check, rewrite and sequentialize proof-structures.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, fmt=True):
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--max-parr", type=int, default=DEFAULT_MAX_PAR,
                       help="cap on par nodes for exhaustive enumeration")
        if fmt:
            p.add_argument("--format", choices=("json", "dsl", "dot"),
                           default="json")

    p = sub.add_parser("check", help="decide a correctness criterion")
    p.add_argument("file")
    p.add_argument("--criterion", required=True,
                   choices=("accw", "ac", "cw", "cwforall", "wten"))
    add_common(p, fmt=False)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("normalize", help="run cut elimination to normal form")
    p.add_argument("file")
    p.add_argument("--seed", type=int, default=None,
                   help="random strategy seed (default: smallest cut first)")
    p.add_argument("--trace", default=None, help="write the step trace here")
    add_common(p)
    p.set_defaults(func=_cmd_normalize)

    p = sub.add_parser("sequentialize", help="extract a sequent proof")
    p.add_argument("file")
    p.add_argument("--mode", choices=("wten", "btenll", "icomll"), default="wten")
    p.add_argument("--m", type=int, default=None,
                   help="non-erasing anchor node (btenll mode)")
    p.add_argument("--jumps-out", default=None, help="write the jump map here")
    add_common(p, fmt=False)
    p.set_defaults(func=_cmd_sequentialize)

    p = sub.add_parser("jumps", help="attach canonical jumps")
    p.add_argument("file")
    p.add_argument("--mode", choices=("btenll", "icomll"), required=True)
    p.add_argument("--m", type=int, default=None)
    add_common(p)
    p.set_defaults(func=_cmd_jumps)

    p = sub.add_parser("equiv", help="decide permutation equivalence of two proofs")
    p.add_argument("proof1")
    p.add_argument("proof2")
    p.set_defaults(func=_cmd_equiv)

    p = sub.add_parser("deseq", help="desequentialize a proof file")
    p.add_argument("proof")
    add_common(p)
    p.set_defaults(func=_cmd_deseq)

    p = sub.add_parser("gen", help="generate random proofs/structures or fixtures")
    p.add_argument("--kind", choices=("ps", "proof"), default="ps")
    p.add_argument("--fragment", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rules", type=int, default=12)
    p.add_argument("--max-nodes", type=int, default=12)
    p.add_argument("--cut-probability", type=float, default=0.0)
    p.add_argument("--fixture", choices=fixtures.NAMES, default=None,
                   help="emit a named fixture instead of a random object")
    add_common(p)
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("dot", help="export DOT")
    p.add_argument("file")
    p.add_argument("--switching", default=None,
                   help="JSON switching map to render the induced graph")
    add_common(p, fmt=False)
    p.set_defaults(func=_cmd_dot)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ProofNetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, ValidationError):
            for rule, subject, message in exc.report.violations:
                print(f"  [{rule}] {message}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
