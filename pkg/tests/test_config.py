import json

import pytest

from app.config import DEFAULT_INSTANCES, Config, Instance, Settings
from app.core.errors import ConfigError
from app.utils.paths import default_report_name, get_app_data_dir
from app.utils.validators import (validate_cap, validate_format, validate_group_spec,
                                  validate_mode, validate_suites, validate_window)


def test_config_dir_override(config_dir):
    assert get_app_data_dir() == config_dir
    config = Config()
    assert config.config_dir.exists()
    assert config.is_first_run()


def test_defaults_without_file(config_dir):
    config = Config()
    assert config.load_config() is None
    settings = config.settings()
    assert settings.max_basis == 100_000
    assert settings.max_group_order == 48
    assert settings.default_format == "json"
    assert config.instances() == DEFAULT_INSTANCES


def test_save_and_reload(config_dir):
    config = Config()
    config.save_config(Settings(max_basis=5000), [Instance(group="Z4", subgroup="2")])
    assert not config.is_first_run()
    data = config.load_config()
    assert data["version"] == "1.0.0"
    assert config.settings().max_basis == 5000
    assert config.instances() == [Instance(group="Z4", subgroup="2", window=(0, 1))]

    config.reset_config()
    assert config.is_first_run()


def test_migrates_flat_pre_release_file(config_dir):
    config = Config()
    config.config_file.write_text(json.dumps({"max_basis": 777, "seed": 3}))
    data = config.load_config()
    assert data["version"] == "0.9.0"
    assert data["settings"]["max_basis"] == 777
    assert len(data["instances"]) == len(DEFAULT_INSTANCES)
    assert config.settings().seed == 3


def test_unreadable_file_falls_back_to_defaults(config_dir):
    config = Config()
    config.config_file.write_text("{not json")
    assert config.load_config() is None
    assert config.settings() == Settings()


def test_invalid_values_raise_config_error(config_dir, monkeypatch):
    config = Config()
    config.config_file.write_text(json.dumps({"settings": {"max_basis": "many"}}))
    with pytest.raises(ConfigError):
        config.settings()

    config.config_file.write_text(json.dumps({"instances": [{"group": "Z2"}]}))
    with pytest.raises(ConfigError):
        config.instances()


def test_environment_override(config_dir, monkeypatch):
    monkeypatch.setenv("QDV_MAX_BASIS", "2500")
    assert Config().settings().max_basis == 2500
    monkeypatch.setenv("QDV_MAX_BASIS", "0")
    with pytest.raises(ConfigError, match="positive"):
        Config().settings()


def test_validators():
    assert validate_group_spec("S3") == (True, "")
    assert validate_group_spec("dihedral:5")[0]
    assert validate_group_spec("file:table.txt")[0]
    assert not validate_group_spec("file:")[0]
    assert not validate_group_spec("")[0]
    assert validate_window(" 0 , 2 ")[0]
    assert not validate_window("0;2")[0]
    assert not validate_window("3,1")[0]
    assert validate_suites(["group"], ("group", "phi"))[0]
    assert "bogus" in validate_suites(["bogus"], ("group",))[1]
    assert not validate_suites([], ("group",))[0]
    assert validate_mode("sampled:12")[0]
    assert not validate_mode("sampled:x")[0]
    assert validate_format("docx")[0]
    assert not validate_format("html")[0]
    assert validate_cap("10", "cap") == (True, "")
    assert not validate_cap("-1", "cap")[0]


def test_default_report_name():
    assert default_report_name("S3", "(123)", (0, 1), ".json") == "S3_-123-_0-1.json"
    assert default_report_name("Z4", "2", (1, 3), ".md") == "Z4_2_1-3.md"
