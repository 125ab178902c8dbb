import pytest

from backend.api.schemas import Report
from backend.core.config import settings
from backend.core.errors import ConfigError
from backend.models.checks import Check
from backend.models.identities import EVIDENCE, THEOREM, IdentityEntry, registry
from backend.models.verifier import EXIT_ENGINE, EXIT_FAILED, EXIT_OK, exit_code, run_all, verify


def report(status=THEOREM, passed=True, error=None):
    return Report(id="x", status=status, passed=passed, windows={"K": 1}, error=error)


def test_verify_passes():
    """Test a passing report"""
    result = verify("nfactorial", {"K": 3})
    assert result.passed
    assert result.first_diff is None
    assert result.checks == 3
    assert result.windows["K"] == 3
    assert result.engine_version == settings.ENGINE_VERSION


def test_perturbed_run_fails_at_first_check():
    """Test a planted discrepancy is reported"""
    result = verify("nfactorial", {"K": 3}, perturb=True)
    assert not result.passed
    assert result.first_diff == {"label": "n=1", "monomial": "1", "lhs": "1", "rhs": "2"}
    assert "lhs=1 rhs=2" in result.to_text()
    assert result.to_text().startswith("FAIL")


@pytest.mark.parametrize("identity_id,overrides", [
    ("nfactorial", {"K": 3}),
    ("classical-no", {"K": 3}),
    ("fnm-forms", {"n": 1, "m": 1, "degree": 3}),
    ("sl-dimension", {"p_max": 3, "size": 3}),
    ("elliptic-coefficients", {"p_max": 1, "degree": 2}),
])
def test_planted_discrepancy_is_caught(identity_id, overrides):
    """Test the planted discrepancy fails entries of every value kind"""
    result = verify(identity_id, overrides, perturb=True)
    assert result.passed is False
    assert result.error is None
    assert result.first_diff is not None


@pytest.mark.slow
@pytest.mark.parametrize("identity_id", sorted(registry()))
def test_planted_discrepancy_in_every_entry(identity_id):
    """Test no registry entry passes once a discrepancy is planted"""
    assert verify(identity_id, perturb=True).passed is False


def test_unplantable_value_fails_the_report(monkeypatch):
    """Test a value that cannot be perturbed gives a failed report, not a crash"""
    entry = IdentityEntry("odd", lambda w: [Check("odd", object(), object())], "odd anchor")
    monkeypatch.setattr("backend.models.verifier.get_entry", lambda identity_id: entry)
    result = verify("odd", perturb=True)
    assert result.passed is False
    assert result.error.startswith("ConsistencyError")


def test_report_json_uses_pass_key():
    """Test the serialised report"""
    data = verify("nfactorial", {"K": 2}).as_json()
    assert data["pass"] is True
    assert data["id"] == "nfactorial"
    assert "error" not in data


def test_run_all_keeps_order():
    """Test reports come back in request order"""
    reports = run_all(["nfactorial", "sl-dimension"], {"nfactorial": {"K": 2}, "sl-dimension": {"p_max": 2}})
    assert [r.id for r in reports] == ["nfactorial", "sl-dimension"]
    assert exit_code(reports) == EXIT_OK


def test_run_all_rejects_bad_requests():
    """Test unknown ids and bad windows fail before any work"""
    with pytest.raises(ConfigError):
        run_all(["nosuch"])
    with pytest.raises(ConfigError):
        run_all(["nfactorial"], {"nfactorial": {"K": -1}})


def test_exit_codes():
    """Test theorem failures gate the exit code and evidence does not"""
    assert exit_code([report()]) == EXIT_OK
    assert exit_code([report(), report(passed=False)]) == EXIT_FAILED
    assert exit_code([report(status=EVIDENCE, passed=False)]) == EXIT_OK
    assert exit_code([report(passed=False), report(passed=False, error="WindowError: x")]) == EXIT_ENGINE
