# conftest.py
"""Puts the flat top-level modules on sys.path and shares small fixtures."""

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from grading import ChromaticContext  # noqa: E402

SMALL_PRIMES = (3, 5, 7, 11, 13)


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PICARDCALC_SLOW") == "1":
        return
    skip = pytest.mark.skip(reason="set PICARDCALC_SLOW=1 to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def ctx53():
    return ChromaticContext(5, 3)


@pytest.fixture
def ctx52():
    return ChromaticContext(5, 2)
