import pytest

from wignerpacs import GridSpec, _backend


@pytest.fixture(scope="session")
def grid():
    return GridSpec.default()


@pytest.fixture(params=["compiled", "python"])
def backend(request):
    if request.param == "compiled" and not _backend.compiled_available():
        pytest.skip("compiled kernel not built")
    previous = _backend.backend_name()
    _backend.use_backend(request.param)
    yield request.param
    _backend.use_backend(previous)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS
    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(VERDICTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
