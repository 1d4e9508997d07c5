"""Experiment configuration loading and result files."""

import math

import numpy as np
import pandas as pd
import pytest

from src.interfaces.cli.csv_io import read_results_csv, write_results_csv
from src.interfaces.cli.experiment import (
    Scheme,
    ThresholdSource,
    build_config,
    parse_n_values,
    read_config_file,
)
from src.interfaces.cli.svg import write_line_svg
from src.layer1_kljn.models import DetectorKind
from src.shared.errors import ConfigurationError, OutputError, ThresholdError

pytestmark = pytest.mark.unit


class TestNValues:
    def test_list_and_range(self):
        assert parse_n_values("50,100, 200") == [50, 100, 200]
        assert parse_n_values("50:75:5") == [50, 55, 60, 65, 70, 75]

    @pytest.mark.parametrize("text", ["50:75", "a,b", "50:75:0"])
    def test_malformed(self, text):
        with pytest.raises(ConfigurationError) as exc:
            parse_n_values(text)
        assert exc.value.config_key == "n_range"


class TestConfigFile:
    def test_reads_keys_and_comments(self, write_config):
        path = write_config("# fig7 point\nscheme = kljn\ndetector = nd-i  # new detector\nn_range = 50:60:5\n")
        assert read_config_file(path) == {"scheme": "kljn", "detector": "nd-i", "n_range": "50:60:5"}

    def test_unknown_key(self, write_config):
        with pytest.raises(ConfigurationError) as exc:
            read_config_file(write_config("alpah = 10\n"))
        assert exc.value.config_key == "alpah"

    def test_malformed_line(self, write_config):
        with pytest.raises(ConfigurationError):
            read_config_file(write_config("alpha 10\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OutputError):
            read_config_file(tmp_path / "absent.cfg")


class TestBuildConfig:
    def test_layers_later_wins(self):
        config = build_config({"alpha": "5", "n_samples": "50"}, {"alpha": 10.0, "seed": None})
        assert config.alpha == 10.0
        assert config.n_values == [50]
        assert config.resolved_thresholds == ThresholdSource.UNIFORM

    def test_explicit_thresholds_inferred(self):
        config = build_config({"detector": "nd-ii", "kappa": "3.1512", "xi": "0.3148"})
        assert config.resolved_thresholds == ThresholdSource.EXPLICIT
        vth, cth, _ = config.explicit_thresholds()
        assert vth.kappa == 3.1512 and cth.xi == 0.3148

    def test_wrong_type(self):
        with pytest.raises(ConfigurationError) as exc:
            build_config({"alpha": "ten"})
        assert exc.value.config_key == "alpha"

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError) as exc:
            build_config({"gamma": 1})
        assert exc.value.config_key == "gamma"

    def test_missing_threshold_key(self):
        with pytest.raises(ConfigurationError) as exc:
            build_config({"detector": "nd-i", "beta": 1.3, "kappa": 4.0, "eta": 0.13})
        assert exc.value.config_key == "xi"

    def test_infeasible_threshold(self):
        with pytest.raises(ThresholdError) as exc:
            build_config({"beta": 0.5, "kappa": 4.0})
        assert exc.value.threshold == "beta"

    def test_thermod_cannot_optimize(self):
        with pytest.raises(ConfigurationError):
            build_config({"scheme": "thermod", "thresholds": "optimize"})

    def test_thermod_chi_checked_against_delta(self):
        with pytest.raises(ThresholdError):
            build_config({"scheme": "thermod", "delta": 0.1, "chi": 2.5})

    def test_metadata(self):
        config = build_config({"detector": DetectorKind.CLASSICAL_CURRENT, "n_range": "50,100", "seed": 3})
        meta = config.metadata()
        assert meta["n_range"] == "50,100"
        assert meta["detector"] == "classical-current"
        assert meta["thresholds"] == "uniform"
        assert meta["seed"] == 3
        assert "chi" not in meta
        assert config.scheme == Scheme.KLJN


class TestResultFiles:
    def test_csv_round_trip(self, tmp_path):
        frame = pd.DataFrame({"N": [50, 100], "bep_theory": [2.5e-2, math.nan]})
        path = write_results_csv(tmp_path / "out" / "r.csv", frame, {"seed": 7, "simulate": False, "alpha": 10.0})
        text = path.read_text(encoding="utf-8")
        assert text.startswith("# tool = thercom-sim\n")
        assert "# simulate = false\n" in text
        assert "\r" not in text
        assert "50,2.50000e-02\n" in text
        meta, table = read_results_csv(path)
        assert meta["seed"] == "7"
        assert meta["alpha"] == "10.0"
        assert list(table.columns) == ["N", "bep_theory"]
        assert np.isnan(table["bep_theory"].iloc[1])

    def test_unwritable_path(self, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("x")
        with pytest.raises(OutputError):
            write_results_csv(blocker / "r.csv", pd.DataFrame({"N": [1]}), {})

    def test_svg_written(self, tmp_path):
        frame = pd.DataFrame(
            {"N": [50, 100, 50, 100], "delta": [0.1, 0.1, 0.2, 0.2], "bep": [1e-2, 1e-3, 1e-3, 1e-5]}
        )
        path = write_line_svg(tmp_path / "plot.svg", frame, "N", ["bep"], group_by=["delta"])
        assert path.read_text(encoding="utf-8").lstrip().startswith("<?xml")
