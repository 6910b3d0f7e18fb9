import json
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from isentropic_riemann import cli
from isentropic_riemann import experiments as ex
from isentropic_riemann.errors import ConfigurationError

COARSE = ["--nx", "200", "--t-final", "0.3"]


def run_cli(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestConfig:
    def test_round_trip(self):
        cfg = ex.ExperimentConfig(kappa="critical", kappa_schedule=(0.6, "critical", 0.001), dt=2e-5, theta=0.5)
        assert ex.parse_config(ex.serialize_config(cfg)) == cfg
        cfg = ex.ExperimentConfig(rho_l=0.1 + 0.2, kappa=1 / 3, cfl=0.3)
        assert ex.parse_config(ex.serialize_config(cfg)) == cfg

    def test_unknown_key(self):
        with pytest.raises(ConfigurationError):
            ex.parse_config("[gas]\ngama = 1.4\n")
        with pytest.raises(ConfigurationError):
            ex.parse_config("[extra]\nx = 1\n")

    def test_bad_values(self):
        with pytest.raises(ConfigurationError):
            ex.parse_config("[gas]\ngamma = 1.0\n")
        with pytest.raises(ConfigurationError):
            ex.parse_config("[gas]\nkappa = lots\n")
        with pytest.raises(ConfigurationError):
            ex.ExperimentConfig(dt=1e-3, cfl=0.3)

    def test_load_file(self, tmp_path):
        path = tmp_path / "run.ini"
        path.write_text("[problem]\nrho_l = 0.2\nv_l = 1.5\nrho_r = 0.7\nv_r = 1.0\n[gas]\nkappa = critical\n")
        cfg = ex.load_config(path)
        assert cfg.problem == ex.DATA2 and cfg.kappa == "critical"


@given(st.lists(st.tuples(st.floats(allow_nan=False), st.floats(allow_nan=False)), max_size=20))
def test_csv_round_trip_is_exact(rows):
    table = ex.ResultTable(("x", "rho"), rows)
    text = table.to_csv()
    parsed = [tuple(float(v) for v in line.split(",")) for line in text.splitlines()[1:]]
    assert parsed == [tuple(r) for r in rows]


def test_csv_file_round_trip(tmp_path):
    table = ex.ResultTable(("x", "rho"), [(0.1, 1 / 3), (math.pi, 2.0**-60)])
    back = ex.read_csv(table.write_csv(tmp_path / "t.csv"))
    assert back.columns == table.columns and back.rows == table.rows


class TestResolveKappa:
    def test_snap(self):
        r = ex.resolve_kappa(0.14, ex.DATA2, 1.4, 1e-2)
        assert r.critical and r.value == pytest.approx(0.1394791839208724, rel=1e-15)
        r = ex.resolve_kappa(0.068, ex.DATA1, 1.4, 1e-2)
        assert r.critical and r.value == pytest.approx(0.06820113733160608, rel=1e-15)
        assert not ex.resolve_kappa(0.14, ex.DATA2, 1.4, 0.0).critical

    def test_no_critical(self):
        from isentropic_riemann import RiemannProblem

        with pytest.raises(ConfigurationError):
            ex.resolve_kappa("critical", RiemannProblem.from_values(1.0, 0.0, 1.0, 0.0), 1.4, 0.0)


class TestExitCodes:
    def test_gamma_not_above_one(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "exact", "--gamma", 1.0, "--out", tmp_path)
        assert code == cli.EXIT_USAGE
        assert json.loads(err)["kind"] == "usage"

    def test_increasing_schedule(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "sweep", "--schedule", "0.1,0.2", "--out", tmp_path)
        assert code == cli.EXIT_USAGE

    def test_negative_density(self, capsys, tmp_path):
        code, _, _ = run_cli(capsys, "fv", "--rho-l", -1, "--out", tmp_path)
        assert code == cli.EXIT_USAGE

    def test_bad_argument(self, capsys):
        assert cli.main(["fv", "--nx", "many"]) == cli.EXIT_USAGE
        assert cli.main([]) == cli.EXIT_USAGE

    def test_cfl_failure_is_numerical(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "fv", *COARSE, "--dt", 0.05, "--out", tmp_path)
        assert code == cli.EXIT_NUMERICAL
        assert json.loads(err)["type"] == "CFLError"

    def test_unwritable_output(self, capsys, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        code, _, _ = run_cli(capsys, "exact", *COARSE, "--out", blocker / "sub")
        assert code == cli.EXIT_IO


def test_exact_command(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "exact", "--rho-l", 0.2, "--v-l", 1.5, "--rho-r", 0.7, "--v-r", 1.0,
                           "--kappa", "critical", *COARSE, "--out", tmp_path)
    assert code == 0
    summary = json.loads(out)
    assert summary["pattern"] == "Shock1" and summary["degenerate"]
    assert summary["pressureless"]["tag"] == "Delta"
    table = ex.read_csv(tmp_path / "exact_profile.csv")
    assert table.columns == ex.PROFILE_COLUMNS and len(table.rows) == 200
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["command"] == "exact" and meta["critical_kappa"]["kind"] == "SR"


def test_fv_command(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "fv", *COARSE, "--out", tmp_path)
    assert code == 0
    result = json.loads(out)
    assert result["conservation"]["relative_mass_error"] < 1e-12
    assert result["pattern"] == "RarefactionShock" and result["l1_error"] > 0
    assert ex.read_csv(tmp_path / "fv_profile.csv").columns == ex.PROFILE_COLUMNS


@pytest.mark.parametrize(
    "data, schedule, expected",
    [
        (("1.0", "0.8", "0.5", "1.0"), "0.6,0.068,0.001", ["RarefactionShock", "Rarefaction1", "TwoRarefaction"]),
        (("0.2", "1.5", "0.7", "1.0"), "0.6,0.14,0.001", ["ShockRarefaction", "Shock1", "TwoShock"]),
    ],
)
def test_sweep_command(capsys, tmp_path, data, schedule, expected):
    rl, vl, rr, vr = data
    code, out, _ = run_cli(capsys, "sweep", "--rho-l", rl, "--v-l", vl, "--rho-r", rr, "--v-r", vr,
                           "--schedule", schedule, "--out", tmp_path)
    assert code == 0
    table = ex.read_csv(tmp_path / "sweep.csv")
    assert table.columns == ex.SWEEP_COLUMNS
    assert table.column("pattern") == expected
    assert out == table.to_csv()


def test_sweep_fv_mode(capsys, tmp_path):
    code, _, _ = run_cli(capsys, "sweep", "--fv", "--schedule", "0.6,critical", *COARSE, "--out", tmp_path)
    assert code == 0
    assert all(float(m) > 0 for m in ex.read_csv(tmp_path / "sweep.csv").column("max_density"))


def test_figures_are_reproducible(capsys, tmp_path):
    argv = ["figures", "--t-final", "0.1", "--out", tmp_path]
    assert run_cli(capsys, *argv)[0] == 0
    for name in ("figure1", "figure2"):
        files = sorted(p.name for p in (tmp_path / name).iterdir())
        assert len([f for f in files if f.endswith(".csv")]) == 6
        assert f"plot_{name}.py" in files and "metadata.json" in files
        assert f"{name}_rho_kappa_critical.csv" in files and f"{name}_v_kappa_0.001.csv" in files
        compile((tmp_path / name / f"plot_{name}.py").read_text(), "plot", "exec")
    before = {p: p.read_bytes() for p in tmp_path.rglob("*") if p.is_file()}
    assert run_cli(capsys, *argv)[0] == 0
    after = {p: p.read_bytes() for p in tmp_path.rglob("*") if p.is_file()}
    assert before == after


def test_sweep_default_schedule_starts_above_critical(tmp_path):
    cfg = ex.ExperimentConfig(rho_l=0.2, v_l=1.5, rho_r=0.7, v_r=1.0, out=str(tmp_path))
    table, meta = ex.cmd_sweep(cfg, write=False)
    kappas = table.column("kappa")
    assert kappas[0] == 0.6 and kappas[-1] >= 1e-4 and kappas[0] > meta["critical_kappa"]["value"]
    patterns = table.column("pattern")
    assert patterns[0] == "ShockRarefaction" and patterns[-1] == "TwoShock"
