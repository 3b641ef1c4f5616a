import pytest

from perverse_sl2.homotopy import run_pipeline
from perverse_sl2.modkernel import set_global_seed
from perverse_sl2.schedule import plan
from perverse_sl2.sl2data import block_by_name, context

# Every randomized suite draws from this fixed set of seeds.
SEEDS = (0, 1, 7, 20240611)

_ACCEPTANCE = {}


@pytest.fixture(autouse=True)
def _pinned_seed():
    set_global_seed(20240611)
    yield


_PIPELINES = {}


def pipeline_for(q, name):
    key = (q, name)
    if key not in _PIPELINES:
        block = block_by_name(q, name)
        _PIPELINES[key] = (block, run_pipeline(context(q), block, plan(q, block)))
    return _PIPELINES[key]


@pytest.fixture(scope="session")
def ctx4():
    return context(4)


@pytest.fixture(scope="session")
def ctx9():
    return context(9)


@pytest.fixture(scope="session")
def pipe4():
    return pipeline_for(4, "merged")


@pytest.fixture(scope="session")
def pipe9p():
    return pipeline_for(9, "principal")


@pytest.fixture(scope="session")
def pipe9n():
    return pipeline_for(9, "nonprincipal")


def pytest_runtest_logreport(report):
    name = report.nodeid.split("::")[-1]
    if "test_acceptance" not in report.nodeid or not name.startswith("test_criterion_"):
        return
    num = int(name.split("_")[2])
    ok = report.passed if report.when == "call" else not report.failed
    prev = _ACCEPTANCE.get(num, True)
    _ACCEPTANCE[num] = prev and ok


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if _ACCEPTANCE[num] else 'FAIL'}")
