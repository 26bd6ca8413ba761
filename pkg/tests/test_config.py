import logging

import pytest
import structlog
from structlog.testing import capture_logs

from equicolor.cli import resolve_seed
from equicolor.models.config import CliSettings, SearchBudget, SolverConfig, SolverMode
from equicolor.utils.logging_utils import log_phase, verbosity_level


def test_budget_defaults_and_escalation():
    budget = SearchBudget()
    assert (budget.max_pattern_attempts, budget.max_fallback_depth, budget.max_fallback_nodes) == (32, 4, 200_000)
    bigger = budget.escalated(2)
    assert (bigger.max_fallback_depth, bigger.max_fallback_nodes) == (8, 400_000)
    assert bigger.max_pattern_attempts == 32
    with pytest.raises(ValueError):
        SearchBudget(max_fallback_depth=0)


def test_solver_config():
    cfg = SolverConfig(r=13)
    assert cfg.mode == SolverMode.ONE_PLANAR
    assert cfg.max_low_degree == 7
    assert SolverConfig(r=3, mode="hs").max_low_degree is None
    with pytest.raises(ValueError):
        SolverConfig(r=13, seed=-1)
    with pytest.raises(ValueError):
        SolverConfig(r=13, neighbor_choice="highest")


def test_seed_from_environment(monkeypatch):
    monkeypatch.setenv("EQUICOLOR_SEED", "42")
    assert CliSettings().seed == 42
    assert resolve_seed(None) == 42
    assert resolve_seed(5) == 5


def test_verbosity_levels():
    assert verbosity_level(0) == logging.WARNING
    assert verbosity_level(1) == logging.INFO
    assert verbosity_level(3) == logging.DEBUG


def test_log_phase_reports_results():
    logger = structlog.get_logger("test")
    with capture_logs() as logs:
        with log_phase(logger, "phase.done", level="warning", n=3) as extra:
            extra["rounds"] = 2
    assert logs[0]["event"] == "phase.done"
    assert logs[0]["n"] == 3 and logs[0]["rounds"] == 2
    assert "elapsed_ms" in logs[0]


def test_log_phase_reports_errors():
    logger = structlog.get_logger("test")
    with capture_logs() as logs:
        with pytest.raises(KeyError):
            with log_phase(logger, "phase.done"):
                raise KeyError("boom")
    assert logs[0]["event"] == "phase.done.error"
    assert logs[0]["log_level"] == "error"
