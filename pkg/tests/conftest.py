"""Shared fixtures: taxonomy, corpus documents and golden files."""

from collections.abc import Callable
from pathlib import Path

import pytest

from boxc.core.document import Document
from boxc.core.taxonomy import Taxonomy, builtin_taxonomy
from boxc.parsers import parse_file

ROOT = Path(__file__).resolve().parent.parent
CORPUS_DIR = ROOT / "corpus"
CONFIG_DIR = ROOT / "configs"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

CORPUS = [
    "ml_pipeline.bxl",
    "mobile_learning.bxl",
    "distributed_planning.bxl",
    "bdi.bxl",
    "contractnet.bxl",
]


@pytest.fixture
def tax() -> Taxonomy:
    """The built-in taxonomy."""
    return builtin_taxonomy()


@pytest.fixture
def corpus_doc(tax: Taxonomy) -> Callable[[str], Document]:
    """Load a corpus file by name, failing the test on parse errors."""

    def load(name: str) -> Document:
        result = parse_file(CORPUS_DIR / name, tax)
        assert result.ok, [d.to_text(name) for d in result.diagnostics]
        assert result.document is not None
        return result.document

    return load


@pytest.fixture
def golden_dir() -> Path:
    return GOLDEN_DIR
