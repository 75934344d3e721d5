import json
from pathlib import Path

import pytest
from hypothesis import settings

from qtrojan import parse_qasm

ROOT = Path(__file__).resolve().parent.parent
BENCH_DIR = ROOT / "benchmarks"
DATA_DIR = Path(__file__).resolve().parent / "data"

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


def load_corpus():
    manifest = json.loads((BENCH_DIR / "manifest.json").read_text())
    out = {}
    for name, entry in sorted(manifest.items()):
        c = parse_qasm((BENCH_DIR / entry["file"]).read_text())
        out[name] = (c, entry)
    return out


CORPUS = load_corpus()


@pytest.fixture
def corpus():
    return CORPUS


def load_data(name: str):
    return parse_qasm((DATA_DIR / name).read_text())


# acceptance bookkeeping: tests marked @pytest.mark.criterion("...") get one
# PASS/FAIL line in the terminal summary
_criteria: dict[str, str] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        status = "PASS" if rep.passed else "FAIL"
        if _criteria.get(label) != "FAIL":
            _criteria[label] = status


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria, key=lambda s: int(s.split()[0][2:])):
        terminalreporter.write_line(f"{_criteria[label]}  {label}")
