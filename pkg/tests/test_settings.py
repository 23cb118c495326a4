#!/usr/bin/env python3
"""
Environment Variable Loading Test
Tests that PARACAT_* settings are read from the environment and .env files
"""

import logging

from dotenv import load_dotenv

from combinatorics.settings import Settings, cross_check_enabled

KEYS = (
    "PARACAT_MAX_TABLEAUX",
    "PARACAT_MAX_PERMUTATIONS",
    "PARACAT_HULL_BUDGET",
    "PARACAT_WORKERS",
    "PARACAT_CROSS_CHECK",
    "PARACAT_SUM_N_MAX",
    "PARACAT_LOG_LEVEL",
)


def clear(monkeypatch):
    for key in KEYS:
        monkeypatch.delenv(key, raising=False)


def test_defaults(monkeypatch):
    """Unset variables fall back to the built-in guards"""
    clear(monkeypatch)
    settings = Settings.from_env()
    print(f"✅ Defaults: {settings}")
    assert settings == Settings()
    assert settings.log_level == "WARNING"
    assert not cross_check_enabled()


def test_env_overrides(monkeypatch):
    clear(monkeypatch)
    monkeypatch.setenv("PARACAT_MAX_TABLEAUX", "500")
    monkeypatch.setenv("PARACAT_WORKERS", "0")
    monkeypatch.setenv("PARACAT_CROSS_CHECK", "yes")
    monkeypatch.setenv("PARACAT_LOG_LEVEL", "debug")
    settings = Settings.from_env()
    assert settings.max_tableaux == 500
    assert settings.workers == 1
    assert settings.cross_check
    assert settings.log_level == "DEBUG"
    assert cross_check_enabled()


def test_bad_integer_is_ignored(monkeypatch, caplog):
    clear(monkeypatch)
    monkeypatch.setenv("PARACAT_HULL_BUDGET", "lots")
    with caplog.at_level(logging.WARNING):
        settings = Settings.from_env()
    assert settings.hull_budget == Settings.hull_budget
    assert "PARACAT_HULL_BUDGET" in caplog.text


def test_env_file_loading(monkeypatch, tmp_path):
    """Test environment variable loading from a .env file"""
    clear(monkeypatch)
    monkeypatch.setenv("PARACAT_SUM_N_MAX", "")
    monkeypatch.setenv("PARACAT_MAX_PERMUTATIONS", "")
    env_file = tmp_path / ".env"
    env_file.write_text("PARACAT_SUM_N_MAX=5\nPARACAT_MAX_PERMUTATIONS=1000\n")

    assert load_dotenv(env_file, override=True)
    settings = Settings.from_env()
    print(f"✅ PARACAT_SUM_N_MAX: {settings.sum_n_max}")
    assert settings.sum_n_max == 5
    assert settings.max_permutations == 1000
