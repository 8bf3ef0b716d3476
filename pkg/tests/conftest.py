import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")

_criteria: dict[int, dict] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    num, title = mark.args
    entry = _criteria.setdefault(num, {"title": title, "ok": True, "why": []})
    if rep.failed:
        entry["ok"] = False
        msg = str(call.excinfo.value).splitlines()[0] if call.excinfo else rep.when
        entry["why"].append(f"{item.name}: {msg}")


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(_criteria):
        e = _criteria[num]
        line = f"criterion {num:>2} {'PASS' if e['ok'] else 'FAIL'}  {e['title']}"
        if e["why"]:
            line += "  [" + "; ".join(e["why"]) + "]"
        tr.write_line(line)
