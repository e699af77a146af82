from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fixture_lexicon_path():
    return DATA / "fixture.tsv"


@pytest.fixture
def fixture_text_path():
    return DATA / "fixture20.txt"


@pytest.fixture
def write_file(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return _write


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
