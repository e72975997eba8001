from fractions import Fraction

import pytest
from hypothesis import strategies as st

from pappus_chain.chain import ChainVariant, configure_chain

F = Fraction

small_rationals = st.builds(
    Fraction,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=50),
)
positive_rationals = st.builds(
    Fraction,
    st.integers(min_value=1, max_value=50),
    st.integers(min_value=1, max_value=50),
)
variants = st.sampled_from(list(ChainVariant))
indices = st.integers(min_value=-8, max_value=8)


@st.composite
def chain_specs(draw):
    return configure_chain(draw(positive_rationals), draw(positive_rationals), draw(variants))


@pytest.fixture
def alpha11():
    return configure_chain(1, 1, "alpha")


ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    setattr(item, "rep_" + rep.when, rep)


@pytest.fixture
def criterion(request):
    """Collect a one-line PASS/FAIL summary for an acceptance criterion."""
    # tests are named test_<number>_<topic>
    num = int(request.node.name.split("_")[1])
    state = {"detail": "did not finish"}

    def record(detail):
        state["detail"] = detail

    yield record
    rep = getattr(request.node, "rep_call", None)
    status = "FAIL" if rep is None or rep.failed else "PASS"
    ACCEPTANCE_LINES[num] = f"criterion {num}: {status} - {state['detail']}"
