import pytest

from proofnets.formulas import parse_formula
from proofnets.structure import ProofStructure, validate


def build_ps(nodes, arcs, prem=None, concl=(), types=None, jumps=None,
             expect_valid=True):
    """Terse structure builder for tests; types given as surface strings."""
    parsed = {a: parse_formula(s) for a, s in types.items()} if types else None
    ps = ProofStructure(nodes, arcs, prem or {}, concl, parsed, jumps)
    if expect_valid:
        report = validate(ps)
        assert report.ok, report.violations
    return ps


@pytest.fixture
def single_ax():
    return build_ps({0: "ax", 1: "dot", 2: "dot"},
                    {0: (0, 1), 1: (0, 2)}, concl=(0, 1),
                    types={0: "X", 1: "X^"})


@pytest.fixture
def single_one():
    return build_ps({0: "one", 1: "dot"}, {0: (0, 1)}, concl=(0,),
                    types={0: "one"})


@pytest.fixture
def single_bot():
    return build_ps({0: "bot", 1: "dot"}, {0: (0, 1)}, concl=(0,),
                    types={0: "bot"})
