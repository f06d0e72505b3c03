import pytest

import cherncert.polyring as polyring


@pytest.fixture(autouse=True)
def strict_polynomial_checks(monkeypatch):
    """Validate canonical form after every polynomial construction."""
    monkeypatch.setattr(polyring, "STRICT_CHECKS", True)
