"""
Logging for cubik: console and file handlers plus structured JSON events.
"""

import json
import logging
import os
from datetime import datetime
from typing import Any, Dict, Optional

import yaml


class CubikLogger:
    """Logger with local handlers and structured construction/check events."""

    def __init__(self, config_path: str = "configs/config.yaml"):
        """
        Initialize the logger.

        Args:
            config_path: Path to configuration file
        """
        self.config = self._load_config(config_path)
        self.service_name = self.config['logging']['service_name']
        self.environment = self.config['logging']['environment']
        self.structured = self.config['logging'].get('structured_events', True)
        self.logger = logging.getLogger(self.service_name)
        self.log_file: Optional[str] = None

        self._setup_logging()

    def _load_config(self, config_path: str) -> Dict[str, Any]:
        """Load configuration from YAML file."""
        try:
            with open(config_path, 'r') as file:
                config = yaml.safe_load(file) or {}
        except FileNotFoundError:
            config = {}
        if 'logging' not in config:
            # Fallback configuration
            config['logging'] = {
                'log_level': 'INFO',
                'log_file': './logs/cubik.log',
                'environment': 'development',
                'service_name': 'cubik',
                'structured_events': True,
            }
        level_override = os.getenv('CUBIK_LOG_LEVEL')
        if level_override:
            config['logging']['log_level'] = level_override
        return config

    def _setup_logging(self):
        """Setup logging configuration."""
        self.logger.handlers.clear()

        log_level = str(self.config['logging'].get('log_level', 'INFO')).upper()
        self.logger.setLevel(getattr(logging, log_level, logging.INFO))
        self.logger.propagate = False

        self._setup_local_logging()

    def _setup_local_logging(self):
        """Setup local console and file logging."""
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        console_handler = logging.StreamHandler()
        console_handler.setLevel(self.logger.level)
        console_handler.setFormatter(formatter)
        self.logger.addHandler(console_handler)

        # File handler - try multiple locations
        log_files_to_try = [
            self.config['logging'].get('log_file'),
            './logs/cubik.log',
            '/tmp/cubik.log',
        ]

        for log_file in log_files_to_try:
            if not log_file:
                continue
            try:
                log_dir = os.path.dirname(log_file)
                if log_dir and not os.path.exists(log_dir):
                    os.makedirs(log_dir, exist_ok=True)

                file_handler = logging.FileHandler(log_file)
                file_handler.setLevel(self.logger.level)
                file_handler.setFormatter(formatter)
                self.logger.addHandler(file_handler)
                self.log_file = log_file
                self.logger.debug(f"Local logging initialized: {log_file}")
                return
            except (PermissionError, FileNotFoundError, OSError):
                continue

        self.logger.warning("Could not create file handler, using console logging only")

    def _event(self, event_type: str, fields: Dict[str, Any]) -> Dict[str, Any]:
        log_data = {
            "event_type": event_type,
            "timestamp": datetime.utcnow().isoformat(),
            "service": self.service_name,
            "environment": self.environment,
        }
        log_data.update(fields)
        return log_data

    def log_construction(self, kind: str, stats: Dict[str, Any]):
        """
        Log a constructed complex with its cube counts.

        Args:
            kind: What was built (product, cone, quotient, ...)
            stats: Counts and parameters describing the result
        """
        if not self.structured:
            self.logger.debug(f"built {kind}: {stats}")
            return
        self.logger.debug(json.dumps(self._event("construction", {
            "kind": kind,
            "stats": stats,
        }), default=str))

    def log_check(self, name: str, checked: int, failed: int,
                  metadata: Optional[Dict[str, Any]] = None):
        """
        Log the outcome of a verification.

        Args:
            name: Name of the check or identity
            checked: Number of instances examined
            failed: Number of violations
            metadata: Extra context (parameters, first witness)
        """
        log_data = self._event("check", {
            "check": name,
            "checked": checked,
            "failed": failed,
        })
        if metadata:
            log_data["metadata"] = metadata

        if failed:
            self.logger.warning(json.dumps(log_data, default=str))
        else:
            self.logger.info(json.dumps(log_data, default=str))

    def log_budget_event(self, operation: str, count: int, budget: int):
        """
        Log an exhausted enumeration budget.

        Args:
            operation: Enumeration that stopped
            count: Candidates examined so far
            budget: Configured budget
        """
        self.logger.warning(json.dumps(self._event("budget_exceeded", {
            "operation": operation,
            "count": count,
            "budget": budget,
        })))

    def log_system_event(self, event_type: str, message: str,
                         level: str = "INFO", metadata: Optional[Dict[str, Any]] = None):
        """
        Log system events with structured data.

        Args:
            event_type: Type of system event
            message: Event message
            level: Log level (INFO, WARNING, ERROR)
            metadata: Additional metadata
        """
        log_data = self._event("system_event", {
            "system_event_type": event_type,
            "message": message,
        })
        if metadata:
            log_data["metadata"] = metadata

        log_level = getattr(self.logger, level.lower())
        log_level(json.dumps(log_data, default=str))

    def info(self, message: str, **kwargs):
        """Log info message."""
        self.logger.info(message, **kwargs)

    def warning(self, message: str, **kwargs):
        """Log warning message."""
        self.logger.warning(message, **kwargs)

    def error(self, message: str, **kwargs):
        """Log error message."""
        self.logger.error(message, **kwargs)

    def debug(self, message: str, **kwargs):
        """Log debug message."""
        self.logger.debug(message, **kwargs)

    def flush(self):
        """Manually flush all log handlers."""
        for handler in self.logger.handlers:
            try:
                handler.flush()
            except Exception:
                pass


# Global logger instance
_logger_instance = None


def get_logger() -> CubikLogger:
    """Get the global logger instance."""
    global _logger_instance
    if _logger_instance is None:
        _logger_instance = CubikLogger()
    return _logger_instance
