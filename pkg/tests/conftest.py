import pytest

from taxohide.datasets import load_example


@pytest.fixture
def example():
    return load_example()


@pytest.fixture
def ids(example):
    """``ids('X', 'd')`` -> canonical itemset of the example taxonomy."""
    tax = example.taxonomy

    def make(*names):
        return tuple(sorted(tax.ids[n] for n in names))

    return make


@pytest.fixture
def table2(ids):
    """Reference high-utility itemsets of the worked example at minutil=50."""
    return {
        ids("X"): 66, ids("X", "Z"): 85, ids("X", "e"): 55, ids("X", "d"): 62,
        ids("Z"): 69, ids("Z", "Y"): 70, ids("Z", "a"): 62, ids("e", "d"): 57,
    }


@pytest.fixture
def example_sensitive(ids):
    return [ids("X", "d"), ids("Z", "Y"), ids("e", "d")]


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and rep.when == "call":
        number, title = marker.args
        _acceptance.append((number, title, rep.passed, getattr(item, "acceptance_note", "")))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed, note in sorted(_acceptance):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))


@pytest.fixture
def note(request):
    """``note('...')`` attaches a detail string to the acceptance summary line."""

    def record(text):
        request.node.acceptance_note = text
        print(text)

    return record
