"""The shipped theory library and its manifest."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path


@dataclass(frozen=True)
class CorpusManifest:
    files: tuple
    expected_theory_count: int
    expected_names: tuple

    def paths(self) -> list:
        return [corpus_dir() / f for f in self.files]


def corpus_dir() -> Path:
    return Path(str(resources.files("theoria.corpus")))


def load_manifest() -> CorpusManifest:
    data = json.loads((corpus_dir() / "manifest.json").read_text("utf-8"))
    return CorpusManifest(tuple(data["files"]),
                          int(data["expected_theory_count"]),
                          tuple(data["expected_names"]))


def load_corpus():
    """Elaborate every corpus file, in manifest order, into one environment."""
    from theoria.elaborator import elaborate_files

    return elaborate_files(load_manifest().paths())
