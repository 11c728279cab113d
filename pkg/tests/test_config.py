import logging

import pytest

from waveliq import record_context, setup_logging
from waveliq.config import Config, get_config
from waveliq.config import TestConfig as TestingConfig
from waveliq.metric.score import ScoreConfig


@pytest.mark.unit
class TestConfigClasses:
    def test_testing_environment(self, monkeypatch):
        monkeypatch.setenv('WAVELIQ_ENV', 'testing')
        config_class = get_config()
        assert config_class is TestingConfig
        assert config_class.default_jobs() == 1

    def test_unknown_environment_falls_back(self):
        assert get_config('staging').__name__ == 'ProductionConfig'

    def test_default_jobs_uses_available_cores(self, monkeypatch):
        monkeypatch.setattr(Config, 'JOBS', None)
        assert Config.default_jobs() >= 1

    @pytest.mark.parametrize('attribute,value', [
        ('LEVELS', 9),
        ('LEVELS', 'two'),
        ('BINS', 1),
        ('BETA', 2.0),
        ('MODE', 'psnr'),
        ('METRIC', 'cosine'),
        ('JOBS', 0),
        ('CACHE_ENTRIES', -1),
        ('LOG_LEVEL', 'LOUD'),
    ])
    def test_invalid_settings(self, monkeypatch, attribute, value):
        monkeypatch.setattr(TestingConfig, attribute, value)
        with pytest.raises(ValueError):
            get_config('testing')

    def test_score_config_from_environment_defaults(self):
        cfg = ScoreConfig.from_config(TestingConfig)
        assert cfg == ScoreConfig()


@pytest.mark.unit
class TestLogging:
    def test_record_id_in_log_lines(self, restore_root_logger, capsys):
        setup_logging(TestingConfig)
        logger = logging.getLogger('waveliq.test')
        with record_context('img_007'):
            logger.warning('scored')
        logger.warning('outside')
        err = capsys.readouterr().err
        assert '[img_007] waveliq.test: scored' in err
        assert '[-] waveliq.test: outside' in err

    def test_file_handler(self, restore_root_logger, tmp_path, monkeypatch):
        monkeypatch.setattr(TestingConfig, 'LOG_DIR', str(tmp_path / 'logs'))
        setup_logging(TestingConfig)
        logging.getLogger('waveliq.test').warning('to file')
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert 'to file' in (tmp_path / 'logs' / 'waveliq.log').read_text(encoding='utf-8')
