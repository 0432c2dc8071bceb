"""
Tests for runtime settings.
"""

import pytest

from condsplit.config import Settings, get_settings


class TestSettings:
    """Tests for get_settings"""

    def test_defaults(self, settings_env):
        """Test the built-in limits"""
        settings_env()

        assert get_settings() == Settings(
            max_atoms=20, formula_cap=3, cinf_max_candidates=2_000_000, violation_limit=20
        )

    def test_environment_overrides(self, settings_env):
        """Test reading limits from CONDSPLIT_* variables"""
        settings_env(formula_cap=2, violation_limit=5)

        settings = get_settings()

        assert settings.formula_cap == 2
        assert settings.violation_limit == 5

    def test_invalid_integer(self, settings_env):
        """Test that non-numeric values are reported with the variable name"""
        settings_env(max_atoms="many")

        with pytest.raises(ValueError, match="CONDSPLIT_MAX_ATOMS"):
            get_settings()

    def test_negative_value(self, settings_env):
        """Test that negative limits are rejected"""
        settings_env(violation_limit=-1)

        with pytest.raises(ValueError, match="must not be negative"):
            get_settings()
