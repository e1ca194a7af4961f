import pytest

_criteria: list[tuple[str, str, bool, list[str]]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        doc = (item.function.__doc__ or "").strip().splitlines()[0] if item.function.__doc__ else ""
        notes = [str(v) for k, v in rep.user_properties if k == "note"]
        _criteria.append((item.name.removeprefix("test_criterion_"), doc, rep.passed, notes))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num, doc, passed, notes in sorted(_criteria):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if passed else 'FAIL'}  {doc}")
        for note in notes:
            terminalreporter.write_line(f"    {note}")
