"""Proof-structures for multiplicative linear logic with units.

The package covers the full pipeline: building and validating structures,
switching-based correctness criteria, cut elimination, desequentialization
of sequent proofs, sequentialization (plain, canonical-jump refined for the
bottom-restricted fragment, and for the constant-only intuitionistic
fragment), and the induced equivalence decisions.
"""

from .formulas import (Formula, Fragment, atom, format_formula, in_fragment,
                       negate, par, parse_formula, polarity, tensor)
from .structure import (ProofStructure, ValidationReport, erasing_nodes,
                        from_dsl, from_json, is_wten, jump_free, jump_total,
                        load_structure, precedes, strip, to_dsl, to_json,
                        validate)
from .canonical import CanonicalForm, canonical_form, iso, iso_untyped, isomorphisms
from .switching import (CriterionVerdict, OutputStats, SwitchingGraph, check,
                        components_and_acyclicity, output_stats, switching_graph,
                        switching_paths, switchings)
from .cutelim import (Redex, ReductionTrace, find_redexes, normalize,
                      reduce_step, replay)
from .sequent import (DeseqResult, SequentProof, ax_rule, bot_rule, check_proof,
                      cut_rule, deseq_relation_holds, desequentialize, ex_rule,
                      exchange_to, format_proof, one_rule, par_rule, parse_proof,
                      tensor_rule)
from .sequentialize import (JumpedStructure, SplitAssignment, canonical_jumps_btenll,
                            canonical_jumps_icomll, classify_jumps, infer_types,
                            is_sequential_oracle, proofs_equivalent,
                            rewiring_equivalent, rewiring_reachable,
                            sequentialize_btenll, sequentialize_icomll,
                            sequentialize_wten, split_parts, splitting_candidates)
from .generate import GenParams, permute_rules, random_formula, random_proof, random_ps
from .render import export_dot

__version__ = "0.1.0"
