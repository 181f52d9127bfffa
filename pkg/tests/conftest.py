import pytest

from kcenter_gap.corpus import standard_corpus
from kcenter_gap.csp import solve
from kcenter_gap.reduction import build


@pytest.fixture(scope="session")
def corpus():
    """(name, csp, reduced point set, solver answer) for every corpus instance."""
    return [(name, inst, build(inst), solve(inst)) for name, inst in standard_corpus()]
