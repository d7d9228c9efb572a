"""
Tests for settings and run-config parsing.
"""

import pytest

from qroots.config import RunConfig, check_ell, get_settings, load_config, parse_config_text
from qroots.errors import ConfigError


def test_defaults_come_from_settings():
    cfg = parse_config_text("type = A1\nell = 5\n")
    settings = get_settings()
    assert cfg.ht_bound == settings.default_ht_bound == 6
    assert cfg.depth == settings.default_depth
    assert cfg.chart_level == settings.default_chart_level
    assert cfg.w0_word is None and cfg.word0 is None


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("QROOTS_DEFAULT_HT_BOUND", "9")
    assert parse_config_text("ell = 3").ht_bound == 9


def test_comments_and_separators():
    cfg = parse_config_text("# run\ntype: a2   # lower case is accepted\nell = 5\nw0_word = 2,1,2\n")
    assert cfg.type == "A2"
    assert cfg.w0_word == [2, 1, 2]
    assert cfg.word0 == (1, 0, 1)


def test_space_separated_word():
    assert parse_config_text("type = A2\nell = 5\nw0_word = 1 2 1").word0 == (0, 1, 0)


@pytest.mark.parametrize(
    "text, match",
    [
        ("ell = 4", r"\(a\)"),
        ("type = A2\nell = 3", r"\(c\)"),
        ("ell = 1", "ell must be > 1"),
        ("colour = red", "unknown key"),
        ("ell = 3\nell = 5", "duplicate key"),
        ("ell 3", "expected 'key = value'"),
        ("type = G2\nell = 5", "unsupported type"),
        ("ell = 3\ndepth = -1", "non-negative"),
    ],
)
def test_rejected_configs(text, match):
    with pytest.raises(ConfigError, match=match):
        parse_config_text(text)


def test_b2_is_gated(monkeypatch):
    with pytest.raises(ConfigError, match="QROOTS_ENABLE_B2"):
        parse_config_text("type = B2\nell = 3")
    monkeypatch.setenv("QROOTS_ENABLE_B2", "1")
    get_settings.cache_clear()
    assert parse_config_text("type = B2\nell = 3").type == "B2"


def test_g2_condition_b():
    with pytest.raises(ConfigError, match=r"\(b\)"):
        check_ell("G2", 9)


def test_direct_construction_checks_ell():
    with pytest.raises(ConfigError):
        RunConfig(type="A1", ell=6)


def test_load_config(config_file):
    assert load_config(config_file()).ell == 3
    with pytest.raises(ConfigError, match="cannot read config"):
        load_config(config_file().parent / "missing.cfg")
