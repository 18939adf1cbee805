from __future__ import annotations

import sys
from pathlib import Path

import pytest

TESTS_DIR = Path(__file__).resolve().parent
REPO_DIR = TESTS_DIR.parent
DATA_DIR = REPO_DIR / "data"
GOLDEN_STORE = TESTS_DIR / "golden"

sys.path.insert(0, str(TESTS_DIR))  # makes `oracles` importable


@pytest.fixture(scope="session")
def data_paths() -> dict:
    return {
        "data": DATA_DIR / "synthetic_regions.csv",
        "adjacency": DATA_DIR / "synthetic_adjacency.txt",
        "geojson": DATA_DIR / "synthetic_regions.geojson",
    }


@pytest.fixture(scope="session")
def golden_store() -> Path:
    assert GOLDEN_STORE.is_dir(), "golden artifact missing; see scripts/freeze_golden.py"
    return GOLDEN_STORE


@pytest.fixture(scope="session")
def golden_run_dir(golden_store) -> Path:
    runs = [p for p in golden_store.iterdir() if p.is_dir()]
    assert len(runs) == 1
    return runs[0]
