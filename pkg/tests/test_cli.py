import xml.etree.ElementTree as ET

import pandas as pd
import pytest

from src.domain.run_config import RunConfig, load_run_config
from src.main import EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from src.modules.helmholtz.domain.entities.gram import WeightMode
from src.modules.helmholtz.domain.exceptions import ConfigError


def _config(tmp_path, text: str):
    path = tmp_path / "run.conf"
    path.write_text(text, encoding="utf-8")
    return path


def test_defaults_without_file():
    rc = load_run_config(None)
    assert rc == RunConfig()
    assert rc.medium.sigma_minus == -2.0
    assert rc.seeds == (-2, 0, 5)


def test_lists_and_comments_are_parsed(tmp_path):
    path = _config(
        tmp_path,
        "# контрастный эксперимент\n"
        "sigma_minus = -1.005\n"
        "seeds = -2, 0 ,5\n"
        "weyl_lambdas = 10,100\n"
        "weight_mode = shifted\n"
        "kappa_minus =\n",
    )
    rc = load_run_config(path)
    assert rc.sigma_minus == -1.005
    assert rc.seeds == (-2, 0, 5)
    assert rc.weyl_lambdas == (10.0, 100.0)
    assert rc.weight_mode is WeightMode.SHIFTED
    assert rc.kappa_minus is None


@pytest.mark.parametrize(
    ("name", "mode"),
    [("growth", WeightMode.GROWTH), ("appendix", WeightMode.GROWTH), ("section5", WeightMode.SHIFTED)],
)
def test_weight_mode_aliases(tmp_path, name, mode):
    rc = load_run_config(_config(tmp_path, f"weight_mode = {name}\n"))
    assert rc.weight_mode is mode
    assert WeightMode(name) is mode


@pytest.mark.parametrize(
    "text",
    [
        "colour = red\n",
        "sigma_minus = 0.5\n",
        "j_min = 3\nj_max = 1\n",
        "weyl_lambdas = 0.5\n",
        "h = 0\n",
        "weight_mode = hilbert\n",
    ],
)
def test_invalid_config_rejected(tmp_path, text):
    with pytest.raises(ConfigError):
        load_run_config(_config(tmp_path, text))


def test_missing_config_file(tmp_path):
    with pytest.raises(FileNotFoundError):
        load_run_config(tmp_path / "absent.conf")
    assert main(["spectrum", "--config", str(tmp_path / "absent.conf"), "--out", str(tmp_path)]) == EXIT_IO


def test_bad_config_exit_code(tmp_path):
    path = _config(tmp_path, "colour = red\n")
    assert main(["spectrum", "--config", str(path), "--out", str(tmp_path / "out")]) == EXIT_CONFIG


def test_spectrum_command(tmp_path):
    path = _config(tmp_path, "j_min = -5\nj_max = 5\nprofile_points = 101\n")
    out = tmp_path / "out"
    assert main(["spectrum", "--config", str(path), "--out", str(out)]) == EXIT_OK

    table = pd.read_csv(out / "spectrum.csv")
    assert len(table) == 11
    assert table["lambda"].is_monotonic_increasing
    assert len(list((out / "profiles").glob("*.csv"))) == 11
    root = ET.parse(out / "profiles" / "phi_+0.svg").getroot()
    assert root.tag.endswith("svg")

    first = (out / "spectrum.csv").read_bytes()
    assert main(["spectrum", "--config", str(path), "--out", str(out), "--no-plot"]) == EXIT_OK
    assert (out / "spectrum.csv").read_bytes() == first


def test_weyl_command(tmp_path):
    path = _config(tmp_path, "weyl_lambdas = 10, 100, 10000\nweyl_j_max = 20\n")
    out = tmp_path / "out"
    assert main(["weyl", "--config", str(path), "--out", str(out), "--no-plot"]) == EXIT_OK
    table = pd.read_csv(out / "weyl.csv")
    assert len(table) == 3
    assert not (out / "weyl.svg").exists()


def test_bifurcate_without_seeds(tmp_path):
    path = _config(
        tmp_path,
        "h = 0.0625\nrefine_levels = 1\nseeds =\namplitude_fit_seeds =\n",
    )
    out = tmp_path / "out"
    assert main(["bifurcate", "--config", str(path), "--out", str(out), "--jobs", "2"]) == EXIT_OK
    assert not list(out.glob("branch_*.csv"))
