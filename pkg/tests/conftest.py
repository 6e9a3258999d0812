from __future__ import annotations

from pathlib import Path

import pytest

from theoria.corpus import corpus_dir, load_corpus, load_manifest
from theoria.elaborator import elaborate_text

GOLDEN = Path(__file__).parent / "golden"


def golden(name: str) -> str:
    return (GOLDEN / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def corpus_env():
    return load_corpus()


@pytest.fixture(scope="session")
def manifest():
    return load_manifest()


@pytest.fixture(scope="session")
def base_env():
    return elaborate_text(golden("base_hierarchy.msl"), "base_hierarchy.msl")


@pytest.fixture(scope="session")
def corpus_files():
    return [str(p) for p in load_manifest().paths()]


@pytest.fixture
def corpus_path():
    return corpus_dir()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
