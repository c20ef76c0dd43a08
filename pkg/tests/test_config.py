import pytest

import config
from errors import ConfigError


def test_parse_settings_reads_known_keys():
    s = config.parse_settings("n_max = 12  # deeper scans\n\nworkers=3\n")
    assert s.n_max == 12 and s.workers == 3
    assert s.search_cap == config.DEFAULT_SEARCH_CAP


@pytest.mark.parametrize("text", ["colour = blue", "n_max", "n_max = 1.5", "workers = 0"])
def test_parse_settings_rejects(text):
    with pytest.raises(ConfigError) as info:
        config.parse_settings(text)
    assert info.value.to_record()["error"] == "config_error"


def test_load_settings_precedence(tmp_path, monkeypatch):
    env_file = tmp_path / "env.cfg"
    env_file.write_text("search_cap = 7\n", encoding="utf-8")
    explicit = tmp_path / "explicit.cfg"
    explicit.write_text("search_cap = 9\n", encoding="utf-8")
    monkeypatch.setenv(config.CONFIG_ENV, str(env_file))
    monkeypatch.setenv(config.WORKERS_ENV, "4")

    assert config.load_settings().search_cap == 7
    assert config.load_settings(str(explicit)).search_cap == 9
    assert config.load_settings().workers == 4


def test_load_settings_missing_explicit_file(tmp_path):
    with pytest.raises(ConfigError):
        config.load_settings(str(tmp_path / "nope.cfg"))


def test_bad_worker_env(monkeypatch):
    monkeypatch.setenv(config.WORKERS_ENV, "many")
    with pytest.raises(ConfigError):
        config.load_settings()
