"""Command line interface: round trips, output formats, and exit codes."""

import numpy as np
import pytest

from tsre.cli import main
from tsre.genotype import load_grm

SCENARIO = """
n = 120
m_b = 25
m_c = 8
sigma_gb = 0.2
mu_gc_x = 0.1
sigma_gc_x = 0.1
sigma_gc_y = 0.1
rho_gc = 0.5
sigma2_ex = 1.0
sigma2_ey = 1.0
theta = 0.3
seed = 21
"""


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "scenario.cfg"
    path.write_text(SCENARIO)
    return path


@pytest.fixture
def dataset(tmp_path, scenario_file):
    out = tmp_path / "data"
    rc = main(["simulate", "--config", str(scenario_file), "--out", str(out)])
    assert rc == 0
    return out


class TestSimulate:
    def test_writes_all_four_files(self, dataset, capsys):
        for name in ("genotypes.csv", "exposure.csv", "outcome.csv", "effects.csv"):
            assert (dataset / name).exists()

    def test_effects_file_layout(self, dataset):
        lines = (dataset / "effects.csv").read_text().splitlines()
        assert lines[0] == "variant_id,group,beta,alpha"
        assert len(lines) == 1 + 33
        groups = [line.split(",")[1] for line in lines[1:]]
        assert groups == ["b"] * 25 + ["c"] * 8

    def test_deterministic_given_seed(self, tmp_path, scenario_file):
        a = tmp_path / "a"
        b = tmp_path / "b"
        assert main(["simulate", "--config", str(scenario_file), "--out", str(a)]) == 0
        assert main(["simulate", "--config", str(scenario_file), "--out", str(b)]) == 0
        for name in ("genotypes.csv", "exposure.csv", "outcome.csv", "effects.csv"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_missing_config_exits_three(self, tmp_path, capsys):
        rc = main(["simulate", "--config", str(tmp_path / "nope.cfg"), "--out", str(tmp_path)])
        assert rc == 3
        assert "error:" in capsys.readouterr().err

    def test_bad_config_exits_two(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("n = 120\nm_b = 10\nrho_gc = 7\n")
        rc = main(["simulate", "--config", str(bad), "--out", str(tmp_path / "o")])
        assert rc == 2


class TestGrmCommand:
    def test_builds_loadable_binary(self, dataset, tmp_path, capsys):
        out = tmp_path / "a.grm"
        rc = main(["grm", "--genotypes", str(dataset / "genotypes.csv"), "--out", str(out)])
        assert rc == 0
        assert "n=120" in capsys.readouterr().out
        grm = load_grm(out)
        assert grm.n == 120
        np.testing.assert_allclose(grm.diagonal().mean(), 1.0, rtol=1e-12)

    def test_thread_flag_keeps_bytes(self, dataset, tmp_path):
        a, b = tmp_path / "a.grm", tmp_path / "b.grm"
        geno = str(dataset / "genotypes.csv")
        assert main(["grm", "--genotypes", geno, "--out", str(a), "--threads", "1"]) == 0
        assert main(["grm", "--genotypes", geno, "--out", str(b), "--threads", "3"]) == 0
        assert a.read_bytes() == b.read_bytes()


class TestEstimateCommand:
    def _argv(self, dataset, method, *extra):
        return [
            "estimate",
            "--method",
            method,
            "--genotypes",
            str(dataset / "genotypes.csv"),
            "--exposure",
            str(dataset / "exposure.csv"),
            "--outcome",
            str(dataset / "outcome.csv"),
            *extra,
        ]

    @pytest.mark.parametrize("method", ["tsre", "ivw", "ivw_fe", "egger", "sm", "wm", "tsls"])
    def test_each_method_emits_csv(self, dataset, capsys, method):
        rc = main(self._argv(dataset, method))
        assert rc == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "method,theta_hat,se,n,m_used"
        cells = out[1].split(",")
        assert cells[0] == method
        assert np.isfinite(float(cells[1]))
        assert int(cells[3]) == 120

    def test_selection_flag(self, dataset, capsys):
        rc = main(self._argv(dataset, "ivw", "--select", "top:5"))
        assert rc == 0
        assert capsys.readouterr().out.splitlines()[1].split(",")[4] == "5"

    def test_precomputed_grm_flag(self, dataset, tmp_path, capsys):
        grm_path = tmp_path / "a.grm"
        main(["grm", "--genotypes", str(dataset / "genotypes.csv"), "--out", str(grm_path)])
        capsys.readouterr()
        rc = main(self._argv(dataset, "tsre", "--grm", str(grm_path)))
        with_grm = capsys.readouterr().out
        rc2 = main(self._argv(dataset, "tsre"))
        plain = capsys.readouterr().out
        assert rc == rc2 == 0
        assert with_grm == plain

    def test_bad_selection_exits_two(self, dataset, capsys):
        assert main(self._argv(dataset, "ivw", "--select", "bogus")) == 2

    def test_missing_file_exits_three(self, dataset, tmp_path, capsys):
        argv = self._argv(dataset, "ivw")
        argv[argv.index("--exposure") + 1] = str(tmp_path / "missing.csv")
        assert main(argv) == 3

    def test_constant_exposure_exits_four(self, dataset, tmp_path, capsys):
        flat = tmp_path / "flat.csv"
        ids = [
            line.split(",")[0]
            for line in (dataset / "exposure.csv").read_text().splitlines()[1:]
        ]
        flat.write_text("id,value\n" + "".join(f"{i},1.0\n" for i in ids))
        argv = self._argv(dataset, "tsre")
        argv[argv.index("--exposure") + 1] = str(flat)
        assert main(argv) == 4

    def test_unknown_method_exits_two(self, dataset):
        with pytest.raises(SystemExit) as err:
            main(self._argv(dataset, "bogus"))
        assert err.value.code == 2


class TestReplicateCommand:
    def test_custom_round_trip(self, tmp_path, scenario_file, capsys):
        out = tmp_path / "rep"
        rc = main(
            [
                "replicate",
                "--target",
                "custom",
                "--config",
                str(scenario_file),
                "--reps",
                "3",
                "--seed",
                "4",
                "--out",
                str(out),
            ]
        )
        assert rc == 0
        printed = capsys.readouterr().out.splitlines()
        assert str(out / "custom_results.csv") in printed
        lines = (out / "custom_results.csv").read_text().splitlines()
        assert lines[0].startswith("target,row_id,")
        assert len(lines) == 6  # header + five default methods

    def test_custom_requires_config(self, tmp_path, capsys):
        rc = main(["replicate", "--target", "custom", "--out", str(tmp_path / "x")])
        assert rc == 2

    def test_builtin_rejects_config(self, tmp_path, scenario_file, capsys):
        rc = main(
            [
                "replicate",
                "--target",
                "table2",
                "--config",
                str(scenario_file),
                "--out",
                str(tmp_path / "x"),
            ]
        )
        assert rc == 2

    def test_unknown_target_exits_two(self, tmp_path):
        with pytest.raises(SystemExit) as err:
            main(["replicate", "--target", "table9", "--out", str(tmp_path)])
        assert err.value.code == 2


class TestTheoryCommand:
    def test_report_values(self, scenario_file, capsys):
        rc = main(["theory", "--config", str(scenario_file)])
        assert rc == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "quantity,value"
        table = dict(line.split(",") for line in lines[1:])
        assert set(table) == {
            "bias_tsre",
            "bias_ivw",
            "bias_egger",
            "tau2",
            "var_theta",
            "se_theta",
            "heritability",
        }
        # hand check: num = 8 * rho*sx*sy = 8*0.005, den = 25*0.04 + 8*0.02
        assert float(table["bias_tsre"]) == pytest.approx(
            8 * 0.5 * 0.1 * 0.1 / (25 * 0.04 + 8 * (0.01 + 0.01))
        )
        assert float(table["bias_ivw"]) == float(table["bias_tsre"])
        assert float(table["se_theta"]) == pytest.approx(
            np.sqrt(float(table["var_theta"]))
        )
        assert 0 < float(table["heritability"]) < 1
