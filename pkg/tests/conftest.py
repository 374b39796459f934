import pytest
from hypothesis import settings

# first calls pay numba compilation
settings.register_profile("default", deadline=None)
settings.load_profile("default")


@pytest.fixture(params=[True, False], ids=["numba", "numpy"])
def use_numba(request):
    from loopcoh import _kernels
    if request.param and _kernels.numba is None:
        pytest.skip("numba not installed")
    return request.param


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
