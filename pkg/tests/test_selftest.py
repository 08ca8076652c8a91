# tests/test_selftest.py
# Created On: Oct 19, 2026
#
import pytest

from heisencut.config import RunConfig
from heisencut.core import selftest
from heisencut.errors import PreconditionError


@pytest.fixture
def config():
    return RunConfig.from_env(seed=20240612)


@pytest.mark.parametrize("check", [
    selftest._xy_model,
    selftest._decoupling,
    selftest._implementability,
    selftest._small_controller_guard,
    selftest._chain,
])
def test_fast_criteria_pass(config, check):
    passed, measured = check(config)
    assert passed, measured


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_cqnd_criterion_is_seed_robust(seed):
    passed, measured = selftest._cqnd(RunConfig.from_env(seed=seed))
    assert passed, measured


def test_failures_are_recorded(monkeypatch, config):
    def broken(config):
        raise PreconditionError("hypothesis violated")

    def failing(config):
        return False, "residual 1.0e+00"

    monkeypatch.setattr(selftest, "CRITERIA", (
        (1, "broken", broken),
        (2, "failing", failing),
        (3, "xy interface algebra", selftest._xy_model),
    ))
    report = selftest.run_selftest(config)
    assert not report.all_passed
    assert [r.number for r in report.failures] == [1, 2]
    assert "hypothesis violated" in report.failures[0].measured
    data = report.json()
    assert data["all_passed"] is False
    assert len(data["criteria"]) == 3
    assert data["config"]["seed"] == 20240612



def test_extreme_tolerances_fail_gracefully(monkeypatch):
    config = RunConfig.from_env(rel_tol=1e-15, member_tol=1e-15)
    monkeypatch.setattr(selftest, "CRITERIA", (
        (1, "xy interface algebra", selftest._xy_model),
        (9, "implementability", selftest._implementability),
        (10, "dim_c = 2 refused", selftest._small_controller_guard),
    ))
    report = selftest.run_selftest(config)
    assert [r.number for r in report.results] == [1, 9, 10]
    assert all(isinstance(r.passed, bool) for r in report.results)
    assert report.json()["config"]["member_tol"] == 1e-15


def test_unexpected_exceptions_are_recorded(monkeypatch, config):
    def crashing(config):
        raise IndexError("index 3 is out of bounds")

    monkeypatch.setattr(selftest, "CRITERIA", ((1, "crashing", crashing),))
    report = selftest.run_selftest(config)
    assert not report.all_passed
    assert "IndexError" in report.failures[0].measured


@pytest.mark.slow
def test_full_suite_passes(config):
    report = selftest.run_selftest(config, slow=True)
    assert report.all_passed, [(r.name, r.measured) for r in report.failures]
