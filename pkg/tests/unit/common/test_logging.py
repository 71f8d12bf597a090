import logging

import pytest
import structlog
import ujson

from polar_roadmap.common.logging import configure_logging


@pytest.fixture
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield root
    structlog.contextvars.clear_contextvars()
    root.handlers = handlers
    root.setLevel(level)


class TestConfigureLogging:
    """Test cases for the structlog set-up used by the command line."""

    def test_json_records_carry_context(self, capsys, restore_root_logger):
        """Test that stdlib records render as JSON with the bound job context."""
        configure_logging("INFO", json_output=True)
        structlog.contextvars.bind_contextvars(job_hash="abc123")
        logging.getLogger("polar_roadmap.groebner").info("basis has %d elements", 4)
        line = capsys.readouterr().err.strip().splitlines()[-1]
        record = ujson.loads(line)
        assert record["event"] == "basis has 4 elements"
        assert record["level"] == "info"
        assert record["logger"] == "polar_roadmap.groebner"
        assert record["job_hash"] == "abc123"
        assert "timestamp" in record

    def test_level_filters_records(self, capsys, restore_root_logger):
        """Test that records below the configured level are dropped."""
        configure_logging("WARNING")
        logging.getLogger("polar_roadmap.zerodim").info("quiet")
        logging.getLogger("polar_roadmap.zerodim").warning("loud")
        err = capsys.readouterr().err
        assert "quiet" not in err
        assert "loud" in err
        assert restore_root_logger.level == logging.WARNING

    def test_single_handler(self, restore_root_logger):
        """Test that configuring twice does not stack handlers."""
        configure_logging("INFO")
        configure_logging("DEBUG")
        assert len(restore_root_logger.handlers) == 1
        assert restore_root_logger.level == logging.DEBUG
