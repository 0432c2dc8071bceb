"""
Test configuration and fixtures: the example belief bases and a mocked logfire.
"""

import itertools
import json
import os
from pathlib import Path
from unittest.mock import Mock, patch

import pytest

# Suppress logfire warnings during testing
os.environ["LOGFIRE_IGNORE_NO_CONFIG"] = "1"

from condsplit.config import get_settings
from condsplit.kb import load_kb
from condsplit.logic import Signature, parse_formula

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
SCHEMAS = ROOT / "schemas"


@pytest.fixture(scope="session")
def fixtures_dir():
    """Directory holding the example knowledge bases"""
    return FIXTURES


@pytest.fixture(scope="session")
def schemas_dir():
    """Directory holding the published JSON schemas"""
    return SCHEMAS


@pytest.fixture(scope="session")
def load_schema():
    """Load a JSON schema by file name"""

    def load(name: str) -> dict:
        return json.loads((SCHEMAS / name).read_text())

    return load


@pytest.fixture(scope="session")
def birds():
    """Δ^b: birds fly, penguins are birds that do not fly, birds have wings"""
    return load_kb(FIXTURES / "birds.cl").base


@pytest.fixture(scope="session")
def rain():
    """Δ^rain over s, r, b, o, u"""
    return load_kb(FIXTURES / "rain.cl").base


@pytest.fixture(scope="session")
def sun():
    """Δ^sun: Δ^rain with the extra atom g"""
    return load_kb(FIXTURES / "sun.cl").base


@pytest.fixture(scope="session")
def kiwi():
    """Δ^k: birds, penguins and kiwis"""
    return load_kb(FIXTURES / "kiwi.cl").base


@pytest.fixture
def formula():
    """Parse a formula over a signature given as comma separated atoms"""

    def parse(text: str, atoms: str):
        return parse_formula(text, Signature(atoms=tuple(a.strip() for a in atoms.split(","))))

    return parse


@pytest.fixture(scope="session")
def table_rows():
    """World indices in truth-table order: all atoms true first, the last atom flipping fastest"""

    def rows(signature: Signature) -> list[int]:
        return [
            signature.world_from_literals(dict(zip(signature.atoms, values))).index
            for values in itertools.product((True, False), repeat=signature.size)
        ]

    return rows


@pytest.fixture
def settings_env(monkeypatch):
    """Set CONDSPLIT_* variables for one test and reload the settings"""

    def apply(**values):
        for name, value in values.items():
            monkeypatch.setenv(f"CONDSPLIT_{name.upper()}", str(value))
        get_settings.cache_clear()

    yield apply
    monkeypatch.undo()
    get_settings.cache_clear()


@pytest.fixture
def mock_logfire():
    """Mock logfire for testing - simplified approach"""
    mock = Mock()

    # Create a context manager mock for span
    span_mock = Mock()
    span_mock.__enter__ = Mock(return_value=span_mock)
    span_mock.__exit__ = Mock(return_value=None)
    mock.span.return_value = span_mock
    mock.info = Mock()
    mock.warning = Mock()
    mock.error = Mock()

    # Patch all the modules that import logfire
    patches = [
        patch("condsplit.conditionals.logfire", mock),
        patch("condsplit.splitting.logfire", mock),
        patch("condsplit.crep.logfire", mock),
        patch("condsplit.kb.logfire", mock),
        patch("condsplit.postulates.logfire", mock),
        patch("condsplit.operators.zw.logfire", mock),
    ]

    for p in patches:
        p.start()

    yield mock

    for p in patches:
        p.stop()
