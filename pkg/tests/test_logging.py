"""
Test logging functionality for cubik.
"""

import pytest
import os
import tempfile
import yaml
import json
from unittest.mock import patch

# Add src directory to path
import sys
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from src.checks import CheckReport
from src.logger import CubikLogger, get_logger


def _events(log_file, event_type):
    """Parse the JSON payloads of one event type from a log file."""
    with open(log_file, 'r') as f:
        lines = [line for line in f.read().split('\n') if line.strip()]
    events = []
    for line in lines:
        start = line.find('{"event_type"')
        if start != -1 and f'"event_type": "{event_type}"' in line:
            events.append(json.loads(line[start:]))
    return events


class TestCubikLogger:
    """Test local and structured logging."""

    @pytest.fixture
    def temp_log_dir(self):
        """Create temporary log directory."""
        with tempfile.TemporaryDirectory() as temp_dir:
            log_dir = os.path.join(temp_dir, 'test_logs')
            os.makedirs(log_dir, exist_ok=True)
            yield log_dir

    @pytest.fixture
    def temp_config_file(self, temp_log_dir):
        """Create a temporary config file for testing."""
        config = {
            'logging': {
                'log_level': 'DEBUG',
                'log_file': os.path.join(temp_log_dir, 'cubik_test.log'),
                'environment': 'test',
                'service_name': 'test-cubik',
                'structured_events': True,
            }
        }

        with tempfile.NamedTemporaryFile(mode='w', suffix='.yaml', delete=False) as f:
            yaml.dump(config, f)
            path = f.name
        yield path
        os.unlink(path)

    def test_logger_initialization_with_config(self, temp_config_file):
        """Test logger initializes correctly with config file."""
        logger = CubikLogger(config_path=temp_config_file)

        assert logger.service_name == 'test-cubik'
        assert logger.environment == 'test'
        assert logger.structured is True

    def test_logger_initialization_fallback_config(self):
        """Test logger initializes with fallback config when file not found."""
        logger = CubikLogger(config_path='nonexistent_config.yaml')

        assert logger.service_name == 'cubik'
        assert logger.environment == 'development'

    def test_log_level_environment_override(self, temp_config_file):
        with patch.dict(os.environ, {'CUBIK_LOG_LEVEL': 'WARNING'}):
            logger = CubikLogger(config_path=temp_config_file)
        assert logger.config['logging']['log_level'] == 'WARNING'

    def test_local_logging_setup(self, temp_config_file):
        """Test local logging writes to the configured file."""
        logger = CubikLogger(config_path=temp_config_file)
        logger.info("Test message")
        logger.flush()

        assert logger.log_file is not None
        with open(logger.log_file, 'r') as f:
            log_content = f.read()
        assert "Test message" in log_content
        assert "test-cubik" in log_content

    def test_construction_logging(self, temp_config_file):
        logger = CubikLogger(config_path=temp_config_file)
        logger.log_construction("product", {"counts": [4, 4, 1], "left": "□¹"})
        logger.flush()

        events = _events(logger.log_file, "construction")
        assert len(events) == 1
        assert events[0]['kind'] == 'product'
        assert events[0]['stats']['counts'] == [4, 4, 1]
        assert events[0]['service'] == 'test-cubik'
        assert events[0]['environment'] == 'test'

    def test_check_logging(self, temp_config_file):
        logger = CubikLogger(config_path=temp_config_file)
        logger.log_check("theta_T2", 12, 0, {"m": 1, "n": 1})
        logger.log_check("face_iso", 5, 2, {"first_witness": "C^1,1: face (1,0)"})
        logger.flush()

        events = _events(logger.log_file, "check")
        assert [e['check'] for e in events] == ['theta_T2', 'face_iso']
        assert events[0]['failed'] == 0
        assert events[1]['metadata']['first_witness'] == "C^1,1: face (1,0)"

        with open(logger.log_file, 'r') as f:
            warning_lines = [line for line in f if ' - WARNING - ' in line]
        assert any('face_iso' in line for line in warning_lines)

    def test_budget_event_logging(self, temp_config_file):
        logger = CubikLogger(config_path=temp_config_file)
        logger.log_budget_event("complex_maps", 101, 100)
        logger.flush()

        events = _events(logger.log_file, "budget_exceeded")
        assert events[0]['operation'] == 'complex_maps'
        assert events[0]['count'] == 101
        assert events[0]['budget'] == 100

    def test_system_event_logging(self, temp_config_file):
        """Test system event logging."""
        logger = CubikLogger(config_path=temp_config_file)
        logger.log_system_event(
            "suite_finished",
            "suite q: ok",
            level="INFO",
            metadata={"checks": 9}
        )
        logger.flush()

        with open(logger.log_file, 'r') as f:
            log_content = f.read()
        assert '"event_type": "system_event"' in log_content
        assert '"system_event_type": "suite_finished"' in log_content
        assert '"message": "suite q: ok"' in log_content

    def test_check_report_logs_through_global_logger(self):
        report = CheckReport("sample", parameters={"n": 2})
        report.record(True)
        report.record(False, "witness")
        with patch.object(get_logger(), 'log_check') as log_check:
            report.log()
        log_check.assert_called_once_with("sample", 2, 1, {"n": 2, "first_witness": "witness"})

    def test_get_logger_singleton(self):
        """Test get_logger returns the same instance."""
        logger1 = get_logger()
        logger2 = get_logger()

        assert logger1 is logger2


if __name__ == "__main__":
    pytest.main([__file__])
