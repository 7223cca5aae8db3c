"""
Tests unitarios para utils.limits.
"""

import pytest
import pytest_check as check

from utils.limits import Limits, ResourceCapError, enforce, get_limits


@pytest.fixture
def fresh_limits():
    """Fixture que limpia la caché de límites antes y después del test."""
    get_limits.cache_clear()
    yield
    get_limits.cache_clear()


class TestEnforce:
    """Tests para enforce y ResourceCapError."""

    def test_enforce_should_pass_when_value_equals_limit(self):
        """Verifica que el límite es inclusivo."""
        enforce("max_points", 8, 8)

    def test_enforce_should_raise_with_details_when_value_exceeds_limit(self):
        """Verifica el error y su serialización."""
        with pytest.raises(ResourceCapError) as exc_info:
            enforce("max_points", 9, 8)

        check.equal(exc_info.value.to_dict(), {"cap": "max_points", "value": 9, "limit": 8})
        check.is_in("max_points", str(exc_info.value))


class TestGetLimits:
    """Tests para get_limits y Limits."""

    def test_get_limits_should_read_env_when_variable_is_set(self, monkeypatch, fresh_limits):
        """Verifica la lectura de HEYTING_MAX_PARTITION_POINTS."""
        monkeypatch.setenv("HEYTING_MAX_PARTITION_POINTS", "6")

        check.equal(get_limits().max_partition_points, 6)

    def test_get_limits_should_use_default_when_value_is_invalid(self, monkeypatch, fresh_limits):
        """Verifica el default ante un valor no numérico."""
        monkeypatch.setenv("HEYTING_MAX_ASSIGNMENTS", "muchos")

        check.equal(get_limits().max_assignments, 10_000_000)

    def test_get_limits_should_cap_points_when_env_exceeds_mask_width(self, monkeypatch, fresh_limits):
        """Verifica que max_points nunca supera 64."""
        monkeypatch.setenv("HEYTING_MAX_POINTS", "100")

        check.equal(get_limits().max_points, 64)

    def test_with_overrides_should_replace_only_given_fields(self):
        """Verifica la copia con reemplazos."""
        limits = Limits().with_overrides(threads=4)

        check.equal(limits.threads, 4)
        check.equal(limits.max_points, 64)
