import pytest

from photocap import _pykernels, kernels

BACKENDS = ["python"]
try:
    from photocap import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None
else:
    BACKENDS.append("cython")


@pytest.fixture(params=BACKENDS)
def backend(request, monkeypatch):
    """Run the engine tests once per available kernel backend."""
    impl = _pykernels if request.param == "python" else _ckernels
    monkeypatch.setattr(kernels, "single_run", impl.single_run)
    monkeypatch.setattr(kernels, "twin_run", impl.twin_run)
    return request.param


_ACCEPTANCE = []


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    criterion = dict(report.user_properties).get("criterion")
    if criterion is not None:
        _ACCEPTANCE.append((criterion, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, outcome in sorted(_ACCEPTANCE):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {criterion}")
