import argparse
import json

import pytest

from backend.api.cli import main, partition_arg
from backend.api.schemas import RunConfig
from backend.core.config import settings
from backend.models.nekrasov import un, zw_text
from backend.models.partitions import Partition


@pytest.fixture
def cache_dir(tmp_path):
    return str(tmp_path / "cache")


def test_partition_arg():
    """Test partition parsing for --lam and friends"""
    assert partition_arg("2,1") == Partition.of(2, 1)
    assert partition_arg("()") == Partition()
    with pytest.raises(argparse.ArgumentTypeError):
        partition_arg("1,2")


def test_unknown_id_is_a_config_error(cache_dir):
    """Test exit code 2 for an unknown id"""
    assert main(["--cache-dir", cache_dir, "verify", "--id", "nosuch"]) == 2


def test_nothing_to_verify(cache_dir):
    """Test verify without --id or --all"""
    assert main(["--cache-dir", cache_dir, "verify"]) == 2


def test_bad_arguments():
    """Test argparse failures map to exit code 2"""
    assert main(["compute", "nonsense"]) == 2


def test_verify_json(cache_dir, capsys):
    """Test a passing run printed as JSON"""
    assert main(["--cache-dir", cache_dir, "verify", "--id", "nfactorial", "--tmax", "2", "--format", "json"]) == 0
    reports = json.loads(capsys.readouterr().out)
    assert reports[0]["id"] == "nfactorial"
    assert reports[0]["pass"] is True
    assert reports[0]["windows"]["K"] == 2


def test_verify_to_file(cache_dir, tmp_path):
    """Test --out writes the text reports"""
    out = tmp_path / "reports.txt"
    code = main(["--cache-dir", cache_dir, "verify", "--id", "nfactorial", "--tmax", "2",
                 "--format", "text", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("PASS  nfactorial")


def test_verify_from_config_file(cache_dir, tmp_path, capsys):
    """Test key=value config files mirror the long flags"""
    config = tmp_path / "run.env"
    config.write_text("id=nfactorial\ntmax=2\nformat=json\n")
    assert main(["--cache-dir", cache_dir, "verify", "--config", str(config)]) == 0
    assert json.loads(capsys.readouterr().out)[0]["windows"]["K"] == 2


def test_bad_config_key(cache_dir, tmp_path):
    """Test unknown config keys are rejected"""
    config = tmp_path / "run.env"
    config.write_text("depth=3\n")
    assert main(["--cache-dir", cache_dir, "verify", "--config", str(config)]) == 2


def test_desk_profile_caps_the_definition_form():
    """Test only the desk profile limits the f_{n,m} definition form to n*m <= 4"""
    desk = RunConfig(profile="desk", degree=3)
    assert desk.overrides_for("fnm-forms") == {"n": 3, "m": 3, "degree": 3, "def_nm": 4}
    assert desk.overrides_for("fnm-symmetry")["n"] == 3
    assert "def_nm" not in RunConfig().overrides_for("fnm-forms")


def test_list(capsys):
    """Test the registry listing"""
    assert main(["list"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert any(line.startswith("qtno\ttheorem\t") for line in lines)
    assert any(line.startswith("hrv-g2-polynomiality\tconjecture-evidence\t") for line in lines)


def test_compute_f11(capsys):
    """Test the canonical text of f_{1,1}"""
    assert main(["compute", "fnm", "--qt-deg", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1 - q*u + T - t*u^-1*T"


def test_compute_hbar(capsys):
    """Test Hbar_2 at genus one"""
    assert main(["compute", "hbar", "--g", "1", "--n", "2"]) == 0
    assert capsys.readouterr().out.strip() == "z^2 - 2*z*w + w^2"


def test_compute_binomial(capsys):
    """Test [(2); (1)] = 1 + q"""
    assert main(["compute", "binomial", "--lam", "2", "--mu", "1", "--qt-deg", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1 + q"


def test_compute_C_table(capsys):
    """Test the C table starts with the delta entry"""
    assert main(["compute", "C-table", "--max-m", "1"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert "0 0 0 0 1" in lines
    assert len(lines) == 9


def test_compute_C_table_default_order(capsys, monkeypatch):
    """Test --max-m falls back to the configured p-order"""
    monkeypatch.setattr(settings, "DEFAULT_P_ORDER", 0)
    assert main(["compute", "C-table"]) == 0
    assert capsys.readouterr().out.strip() == "0 0 0 0 1"


def test_compute_un(capsys):
    """Test U_1 at genus zero starts with the single-cell hook term"""
    assert main(["compute", "un", "--g", "0", "--n", "1"]) == 0
    out = capsys.readouterr().out.strip()
    assert out == zw_text(un(0, 1))
    assert out.startswith("w^-2")


def test_compute_principal_finite(capsys):
    """Test P_(1)(1, t) = 1 + t"""
    assert main(["compute", "principal", "--lam", "1", "--n", "2", "--qt-deg", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1 + t"


def test_compute_principal_infinite(capsys):
    """Test P_(1)(1, t, t^2, ...) = 1/(1 - t)"""
    assert main(["compute", "principal", "--lam", "1", "--qt-deg", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1 + t + t^2 + t^3"


def test_compute_empty_vertex(capsys):
    """Test C_{0,0,0} = 1"""
    assert main(["compute", "vertex", "--qt-deg", "3"]) == 0
    assert capsys.readouterr().out.strip() == "1"


def test_cache_stat_and_clear(cache_dir, capsys):
    """Test the cache verbs"""
    assert main(["--cache-dir", cache_dir, "cache", "stat"]) == 0
    stat = json.loads(capsys.readouterr().out)
    assert stat["entries"] == 0
    assert main(["--cache-dir", cache_dir, "cache", "clear"]) == 0
    assert "removed 0 entries" in capsys.readouterr().out
