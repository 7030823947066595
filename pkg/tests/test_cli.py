import json

import numpy as np
import pytest

from fracorlicz import Field, Grid, read_field_csv, write_field_csv
from fracorlicz.cli import RunPlanError, main, parse


@pytest.fixture
def field_csv(tmp_path, rng):
    grid = Grid(1, 0.25, 8)
    u = Field(grid, rng.uniform(0.1, 1.0, grid.shape))
    path = tmp_path / "field.csv"
    write_field_csv(u, str(path))
    return str(path)


@pytest.fixture
def field_csv_2d(tmp_path, rng):
    grid = Grid(2, 0.25, 4)
    u = Field(grid, rng.uniform(0.1, 1.0, grid.shape))
    path = tmp_path / "field2d.csv"
    write_field_csv(u, str(path))
    return str(path)


class TestParse:
    def test_valid_plan(self):
        plan = parse("modular", "young = power-sum\nkernel = fractional\n"
                                "s = 0.5\ninput = x.csv\n")
        assert plan.young.family == "power-sum"
        assert plan.kernel.family == "fractional"
        assert plan.kernel.s == 0.5

    def test_bad_s_collected(self):
        with pytest.raises(RunPlanError) as info:
            parse("modular", "kernel = fractional\ns = 1.5\ninput = x.csv\n")
        assert any("s must lie in (0, 1)" in e for e in info.value.errors)

    def test_missing_input_collected(self):
        with pytest.raises(RunPlanError) as info:
            parse("modular", "kernel = fractional\n")
        assert any("input field CSV" in e for e in info.value.errors)

    def test_unknown_key_collected(self):
        with pytest.raises(RunPlanError) as info:
            parse("kernels", "frobnicate = 3\n")
        assert any("unknown key" in e for e in info.value.errors)

    def test_all_errors_reported_together(self):
        with pytest.raises(RunPlanError) as info:
            parse("modular", "s = 1.5\nyoung = nosuch\n")
        assert len(info.value.errors) >= 2

    def test_flags_override_config(self):
        plan = parse("kernels", "seed = 1\nkernel = fractional\ns = 0.25\n",
                     {"seed": "7", "s": "0.75"})
        assert plan.seed == 7
        assert plan.kernel.s == 0.75

    def test_comments_and_blanks_ignored(self):
        plan = parse("kernels", "# a comment\n\nkernel = slobodetskii\n")
        assert plan.kernel.family == "slobodetskii"


class TestCommands:
    def test_modular_json(self, field_csv, capsys):
        code = main(["modular", "--input", field_csv, "--grid", "1,0.25,8",
                     "--young", "power", "--kernel", "fractional", "--s", "0.5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert set(payload) == {"phi_G", "phi_MNG", "lg_norm", "seminorm",
                                "full_norm"}
        assert payload["full_norm"] == pytest.approx(
            payload["lg_norm"] + payload["seminorm"])

    def test_modular_missing_file_exit_2(self, capsys):
        code = main(["modular", "--input", "/nonexistent/f.csv"])
        assert code == 2

    def test_modular_deterministic_bytes(self, field_csv, tmp_path):
        out1, out2 = str(tmp_path / "a.json"), str(tmp_path / "b.json")
        for out in (out1, out2):
            assert main(["modular", "--input", field_csv, "--seed", "3",
                         "--out", out]) == 0
        assert open(out1, "rb").read() == open(out2, "rb").read()

    def test_kernels_report(self, capsys):
        code = main(["kernels", "--kernel", "fractional", "--s", "0.5",
                     "--young", "power", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["P3"]["inner"] == pytest.approx(1.0, abs=1e-4)
        assert payload["P4"]["decays"]

    def test_rearrange_roundtrip(self, field_csv, tmp_path, capsys):
        out = str(tmp_path / "out.csv")
        code = main(["rearrange", "--input", field_csv, "--seed", "5",
                     "--out", out])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["converged"]
        result = read_field_csv(out)
        original = read_field_csv(field_csv)
        assert sorted(result.flat) == sorted(original.flat)

    def test_rearrange_2d_direct(self, field_csv_2d, tmp_path, capsys):
        out = str(tmp_path / "out2d.csv")
        code = main(["rearrange", "--input", field_csv_2d, "--out", out,
                     "--grid", "2,0.25,4", "--kernel", "fractional",
                     "--s", "0.5"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["mode"] == "direct"
        assert "phi_before" in payload and "phi_after" in payload

    def test_polarize(self, field_csv, tmp_path, capsys):
        out = str(tmp_path / "pol.csv")
        code = main(["polarize", "--input", field_csv, "--out", out,
                     "--hs-kind", "axis", "--hs-offset", "0", "--hs-side", "-1"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["equimeasurable"]
        assert payload["phi_after"] <= payload["phi_before"] * (1 + 1e-12)

    def test_polarize_rejects_fractional_offset(self, field_csv):
        assert main(["polarize", "--input", field_csv,
                     "--hs-offset", "0.3"]) == 2

    def test_eigen_scan(self, capsys):
        code = main(["eigen", "--grid", "1,0.25,6", "--omega=-2..1",
                     "--mu", "1.0", "--restarts", "2", "--max-iter", "150",
                     "--young", "power-sum", "--kernel", "fractional",
                     "--s", "0.5", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["alpha_1"] > 0
        assert len(payload["table"]) == 1
        assert payload["poincare_constant"] > 0

    def test_faber_krahn_command(self, capsys):
        code = main(["faber-krahn", "--grid", "1,0.25,8",
                     "--omega=-6..-4;3..5", "--mu-grid", "0.5,2,2",
                     "--restarts", "2", "--max-iter", "200",
                     "--young", "power-sum", "--kernel", "fractional",
                     "--s", "0.5", "--json"])
        assert code == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["alpha_ball_le_domain"]

    def test_bad_omega_exit_2(self, capsys):
        code = main(["eigen", "--grid", "1,0.25,6", "--omega=9..9",
                     "--mu", "1.0"])
        assert code == 2


class TestVerifyCommand:
    def test_exit_code_mirrors_report(self, monkeypatch, capsys):
        import fracorlicz.cli as cli_mod
        canned = {"passed": False, "seed": 1, "criteria": [
            {"key": "k1", "title": "a", "passed": True, "details": {}},
            {"key": "k2", "title": "b", "passed": False, "details": {}},
        ]}
        monkeypatch.setattr(cli_mod, "run_acceptance",
                            lambda seed, extra_young=None: canned)
        assert main(["verify"]) == 1
        out = capsys.readouterr().out
        assert "[PASS] k1" in out and "[FAIL] k2" in out
        canned["passed"] = True
        canned["criteria"][1]["passed"] = True
        assert main(["verify"]) == 0

    def test_injection_flag_flips_young_criterion(self, monkeypatch, capsys):
        import fracorlicz.cli as cli_mod
        captured = {}

        def fake_run(seed, extra_young=None):
            captured["extra"] = extra_young
            return {"passed": extra_young is None, "seed": seed,
                    "criteria": []}
        monkeypatch.setattr(cli_mod, "run_acceptance", fake_run)
        assert main(["verify"]) == 0
        assert captured["extra"] is None
        assert main(["verify", "--inject-bad-young"]) == 1
        assert captured["extra"] is not None
        # the injected function really breaks normalization
        assert abs(captured["extra"].G(1.0) - 1.1) < 1e-12
