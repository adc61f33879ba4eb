"""
Test configuration loading and environment overrides.
"""

import pytest
import os
import tempfile
import yaml
from unittest.mock import patch

import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.config import DEFAULT_BUDGET, get_budget, get_setting, load_config, reset_config_cache


class TestConfig:
    """Test the YAML configuration layer."""

    @pytest.fixture(autouse=True)
    def fresh_cache(self):
        reset_config_cache()
        yield
        reset_config_cache()

    @pytest.fixture
    def partial_config_file(self):
        config = {'suites': {'seed': 7}, 'enumeration': {'budget': 500}}
        with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
            yaml.dump(config, f)
            path = f.name
        yield path
        os.unlink(path)

    def test_missing_file_uses_defaults(self):
        config = load_config('nonexistent_config.yaml')
        assert config['enumeration']['budget'] == DEFAULT_BUDGET
        assert config['suites']['theta_bound'] == 4
        assert config['cone']['cross_check_is_cone'] is True

    def test_partial_file_is_merged_with_defaults(self, partial_config_file):
        config = load_config(partial_config_file)
        assert config['suites']['seed'] == 7
        assert config['suites']['nerve_bound'] == 3
        assert config['enumeration']['budget'] == 500
        assert config['tau1']['rewrite_budget'] == 2000

    def test_budget_environment_override(self, partial_config_file):
        with patch.dict(os.environ, {'CUBIK_BUDGET': '42'}):
            assert load_config(partial_config_file)['enumeration']['budget'] == 42

    def test_invalid_budget_is_ignored(self, partial_config_file):
        with patch.dict(os.environ, {'CUBIK_BUDGET': 'lots'}):
            assert load_config(partial_config_file)['enumeration']['budget'] == 500
        reset_config_cache()
        with patch.dict(os.environ, {'CUBIK_BUDGET': '-3'}):
            assert load_config(partial_config_file)['enumeration']['budget'] == 500

    def test_get_setting_and_budget(self, partial_config_file):
        assert get_setting('suites', 'seed', config_path=partial_config_file) == 7
        assert get_setting('suites', 'missing', 'fallback', config_path=partial_config_file) == 'fallback'
        assert get_budget(123) == 123

    def test_repository_config_declares_every_section(self):
        path = os.path.join(os.path.dirname(__file__), '..', 'configs', 'config.yaml')
        with open(path, 'r') as f:
            config = yaml.safe_load(f)
        for section in ('logging', 'enumeration', 'product', 'cone', 'suites', 'tau1'):
            assert section in config


if __name__ == "__main__":
    pytest.main([__file__])
