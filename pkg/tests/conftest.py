"""Collects acceptance results and prints one line per criterion at the end."""
import pytest

_RESULTS: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record():
    def _record(name: str, ok: bool, detail: str) -> None:
        _RESULTS[name] = (ok, detail)
        print(f"{name}: {'PASS' if ok else 'FAIL'} {detail}")
        if not ok:
            pytest.xfail(f"{name} not met: {detail}")

    return _record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_RESULTS, key=lambda n: [int(p) if p.isdigit() else p for p in n.replace("-", " ").split()]):
        ok, detail = _RESULTS[name]
        terminalreporter.write_line(f"{name}: {'PASS' if ok else 'FAIL'}  {detail}")
