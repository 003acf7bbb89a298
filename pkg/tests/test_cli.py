"""End-to-end tests for the command-line interface.

Everything goes through ``main(argv)`` in-process so exit codes and
stream contents are asserted directly.
"""

import json
import math
from pathlib import Path

import pytest

from catpurify import (
    ChannelSetting,
    CssParams,
    MixedCss,
    TapSetting,
    apply_loss,
    optimal_k,
    purify,
    purify_with_inefficiency,
)
from catpurify.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPurifyCommand:
    def test_reference_point_plain(self, capsys):
        code, out, err = run_cli(
            capsys,
            "purify",
            "--alpha", "1", "--phi", "pi", "--p-in", "0.5",
            "--T", "0.5", "--k", "optimal",
        )
        assert code == 0 and err == ""
        assert "p_out = 0.6127" in out
        assert "k = 1.5708" in out

    def test_reference_point_json_bitwise(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "purify", "--format", "json",
            "--alpha", "1", "--phi", "pi", "--p-in", "0.5",
            "--T", "0.5", "--k", "optimal",
        )
        assert code == 0
        payload = json.loads(out)
        state = MixedCss(CssParams(1.0, math.pi), 0.5)
        k = optimal_k(state.params, 0.5)
        expected, density_css, density_mix = purify(state, TapSetting(0.5, k))
        assert payload["k"] == k
        assert payload["p_out"] == expected.p
        assert payload["out_alpha"] == expected.params.alpha
        assert payload["out_phi"] == expected.params.phi
        assert payload["density_css"] == density_css
        assert payload["density_mix"] == density_mix
        assert payload["density_joint"] == 0.5 * density_css + 0.5 * density_mix

    def test_detector_efficiency_branch(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "purify", "--format", "json",
            "--alpha", "1", "--phi", "pi", "--p-in", "0.5",
            "--T", "0.5", "--k", "1.5707963267948966", "--eta-H", "0.98",
        )
        assert code == 0
        payload = json.loads(out)
        expected = purify_with_inefficiency(
            MixedCss(CssParams(1.0, math.pi), 0.5),
            TapSetting(0.5, math.pi / 2.0, 0.98),
        )
        assert payload["p_out"] == expected.p
        assert "density_css" not in payload

    def test_line_loss_applied_before_tap(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "purify", "--format", "json",
            "--alpha", "1", "--phi", "0", "--p-in", "0.9",
            "--eta", "0.7", "--T", "0.5", "--k", "0.3",
        )
        assert code == 0
        payload = json.loads(out)
        lossy = apply_loss(MixedCss(CssParams(1.0, 0.0), 0.9), ChannelSetting(0.7))
        expected, _, _ = purify(lossy, TapSetting(0.5, 0.3))
        assert payload["p_out"] == expected.p
        assert payload["out_alpha"] == expected.params.alpha

    def test_missing_required_parameter(self, capsys):
        code, _, err = run_cli(
            capsys,
            "purify", "--phi", "0", "--p-in", "0.5", "--T", "0.5", "--k", "0",
        )
        assert code == 2
        assert "missing required parameter(s): alpha" in err

    def test_all_problems_reported_at_once(self, capsys):
        code, _, err = run_cli(
            capsys,
            "purify",
            "--alpha", "abc", "--phi", "0", "--p-in", "xyz",
            "--T", "0.5", "--k", "0",
        )
        assert code == 2
        assert "invalid value for alpha: 'abc'" in err
        assert "invalid value for p_in: 'xyz'" in err

    def test_degenerate_request_is_a_physics_error(self, capsys):
        code, _, err = run_cli(
            capsys,
            "purify",
            "--alpha", "0", "--phi", "pi", "--p-in", "0.5",
            "--T", "0.5", "--k", "0",
        )
        assert code == 3
        assert err.startswith("physics error:")


class TestConfigFile:
    def test_flags_override_file(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps(
            {"alpha": 1, "phi": "pi", "p_in": 0.5, "T": 0.9, "k": 0}
        ))
        code, out, _ = run_cli(
            capsys,
            "purify", "--config", str(cfg), "--T", "0.5", "--format", "json",
        )
        assert code == 0
        expected, _, _ = purify(
            MixedCss(CssParams(1.0, math.pi), 0.5), TapSetting(0.5, 0.0)
        )
        assert json.loads(out)["p_out"] == expected.p

    def test_file_may_set_format(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps(
            {"alpha": 0.5, "phi": "pi", "p_in": 0.5, "format": "json"}
        ))
        code, out, _ = run_cli(capsys, "amplify", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)["p_out"] == pytest.approx(
            0.5922488638743828, abs=0
        )

    def test_unknown_file_key_rejected(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps(
            {"alpha": 1, "phi": 0, "p_in": 0.5, "T": 0.5, "k": 0, "beta": 3}
        ))
        code, _, err = run_cli(capsys, "purify", "--config", str(cfg))
        assert code == 2
        assert "unknown parameter(s): beta" in err

    def test_unreadable_file_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "purify", "--config", str(tmp_path / "missing.json"),
        )
        assert code == 2
        assert "cannot read config file" in err


class TestAmplifyAndConcat:
    def test_pi_literal_is_exact(self, capsys):
        # amplify only accepts phases exactly 0 or pi, so success here
        # proves the literal parsed to math.pi bit for bit
        code, out, _ = run_cli(
            capsys,
            "amplify", "--format", "json",
            "--alpha", "0.5", "--phi", "pi", "--p-in", "0.5",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["p_out"] == 0.5922488638743828
        assert payload["out_alpha"] == 0.5 * math.sqrt(2.0)
        assert payload["out_phi"] == 0.0

    def test_unsupported_phase_gets_guidance(self, capsys):
        code, _, err = run_cli(
            capsys,
            "amplify", "--alpha", "0.5", "--phi", "pi/2", "--p-in", "0.5",
        )
        assert code == 2
        assert "amplifier_sim" in err

    def test_concat_flags_no_net_purification(self, capsys):
        code, out, _ = run_cli(capsys, "concat", "--alpha", "1", "--p-in", "0.5")
        assert code == 0
        assert "note = no net purification" in out
        assert "p_final = 0.241818" in out

    def test_concat_json_values(self, capsys):
        code, out, _ = run_cli(
            capsys, "concat", "--format", "json", "--alpha", "1", "--p-in", "0.5"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["p_mid"] == 0.5464491031607007
        assert payload["p_final"] == 0.24181836090865347
        assert payload["net_change"] == payload["p_final"] - payload["p_in"]


class TestSweepCommand:
    def test_reproducible_sweep_matches_golden(self, capsys, tmp_path):
        target = tmp_path / "fig2.csv"
        code, out, _ = run_cli(
            capsys,
            "sweep", "--figure-id", "fig2_densities",
            "--output", str(target), "--reproducible",
        )
        assert code == 0
        assert "rows = 801" in out
        assert "columns = 3" in out
        assert target.read_bytes() == (GOLDEN / "fig2_densities.csv").read_bytes()

    def test_unknown_figure_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "sweep", "--figure-id", "fig99",
            "--output", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "unknown figure_id" in err

    def test_inapplicable_override_rejected(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            "sweep", "--figure-id", "fig6_pout_vs_pin",
            "--phi", "pi", "--output", str(tmp_path / "x.csv"),
        )
        assert code == 2
        assert "does not take parameter(s): phi" in err

    def test_fixed_override_changes_output(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run_cli(
            capsys, "sweep", "--figure-id", "fig2_densities",
            "--output", str(a), "--reproducible",
        )[0] == 0
        assert run_cli(
            capsys, "sweep", "--figure-id", "fig2_densities",
            "--alpha", "0.8", "--output", str(b), "--reproducible",
        )[0] == 0
        assert a.read_bytes() != b.read_bytes()
        assert "alpha=0.8" in b.read_text().splitlines()[1]


class TestVerifyCommand:
    def test_plain_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--draws", "20", "--amp-draws", "5"
        )
        assert code == 0
        lines = [ln for ln in out.splitlines() if ln]
        assert len(lines) == 6
        assert all(ln.startswith("ok  ") for ln in lines)

    def test_json_output(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "verify", "--format", "json", "--draws", "20", "--amp-draws", "5",
        )
        assert code == 0
        payload = json.loads(out)
        assert len(payload) == 6
        assert all(entry["passed"] for entry in payload)
        assert all(entry["max_error"] <= entry["tolerance"] for entry in payload)


class TestParser:
    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "catpurify 0.1.0" in capsys.readouterr().out

    def test_unknown_command_exits_two(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["frobnicate"])
        assert excinfo.value.code == 2
