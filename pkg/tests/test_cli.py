import json
import logging
import math

import numpy as np
import pytest

from polariton_phases.cli import main
from polariton_phases.config import default_config, from_dict, load_config
from polariton_phases.errors import ParseError, UnknownKey


SMALL_CONFIG = {
    "sweep": {"delta_p_range": [20.0, 100.0, 8],
              "omega_range": [0.8, 1.5, 8]},
    "nlse": {"grid_points": 64, "n_periods": 4, "steps": 100, "dt": 1e-3,
             "record_every": 20},
    "ed": {"sizes": [2, 3], "ratios": [1.0, 2.0, 3.0, 4.0, 5.0],
           "n_max": 3},
}


def write_config(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return path


def run(tmp_path, subcommand, doc=None):
    out = tmp_path / "out"
    argv = [subcommand, "--out", str(out)]
    if doc is not None:
        argv += ["--config", str(write_config(tmp_path, doc))]
    code = main(argv)
    return code, out


class TestConfigParsing:
    def test_empty_config_gets_baseline_defaults(self, caplog):
        with caplog.at_level(logging.INFO, logger="polariton_phases"):
            cfg = from_dict({})
        assert cfg.optics.gamma_total == 2e7
        assert cfg.optics.n0 == 1e7
        assert cfg.optics.n1_fraction == 0.1
        assert cfg.optics.delta_p == 50.0
        # every applied default is echoed to the provenance log
        assert any("optics.n0 defaulted" in r.message for r in caplog.records)

    def test_invalid_modulation_fraction(self):
        with pytest.raises(ParseError):
            from_dict({"optics": {"n1_fraction": 1.5}})

    def test_unknown_keys_rejected(self):
        with pytest.raises(UnknownKey):
            from_dict({"optics": {"rabi": 1.0}})
        with pytest.raises(UnknownKey):
            from_dict({"mystery_section": {}})

    def test_partial_override_keeps_baseline(self):
        cfg = from_dict({"optics": {"delta_p": 50.0}})
        assert cfg.optics.delta_p == 50.0
        assert cfg.optics.omega == 1.0
        assert cfg.optics.delta0 == 5.0

    def test_malformed_json(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text("{not json")
        with pytest.raises(ParseError, match="line"):
            load_config(path)

    def test_hash_is_stable(self):
        assert from_dict({}).hash() == default_config().hash()
        assert from_dict({"optics": {"omega": 1.1}}).hash() != \
            default_config().hash()


class TestSubcommands:
    def test_map(self, tmp_path):
        code, out = run(tmp_path, "map")
        assert code == 0
        doc = json.loads((out / "map.json").read_text())
        assert doc["many_body_point"]["phase"] in (
            "SF", "MOTT_SG", "MOTT_BH", "INDETERMINATE")
        assert doc["effective_params"]["v_g"] == pytest.approx(40.0)
        assert "config_hash" in doc

    def test_map_zero_delta_gives_zero_lattice(self, tmp_path):
        code, out = run(tmp_path, "map", {"optics": {"delta_small": 0.0}})
        assert code == 0
        doc = json.loads((out / "map.json").read_text())
        assert doc["effective_params"]["v1"] == 0.0

    def test_sweep_csv_layout(self, tmp_path):
        code, out = run(tmp_path, "sweep", SMALL_CONFIG)
        assert code == 0
        lines = (out / "sweep.csv").read_text().splitlines()
        assert lines[0].startswith("# config_hash=")
        assert lines[1] == (
            "delta_p_over_gamma,omega_over_gamma,gamma_signed,gamma_abs,"
            "v1_over_er,k_luttinger,j_over_er,u_over_er,u_over_j,"
            "v_g_m_per_s,kappa_per_s,phase,flags")
        assert len(lines) == 2 + 8 * 8

    def test_crossing_root_file(self, tmp_path):
        code, out = run(tmp_path, "crossing", {
            "sweep": {"omega_range": [0.9, 1.2, 20]}})
        assert code == 0
        root = json.loads((out / "crossing_root.json").read_text())
        assert root["omega_over_gamma"] == pytest.approx(1.03388, abs=5e-4)
        assert root["u_over_j"] == pytest.approx(3.85, abs=1e-2)
        header = (out / "crossing.csv").read_text().splitlines()[1]
        assert header == "omega_over_gamma,j_over_er,u_over_er,u_over_j"

    def test_crossing_without_bracket_is_domain_error(self, tmp_path):
        code, _ = run(tmp_path, "crossing", {
            "sweep": {"omega_range": [2.0, 3.0, 5]}})
        assert code == 2

    def test_phase_outputs(self, tmp_path):
        code, out = run(tmp_path, "phase", SMALL_CONFIG)
        assert code == 0
        doc = json.loads((out / "phase_boundaries.json").read_text())
        assert doc["boundaries"]
        assert all(b["model"] in ("BH", "SG") for b in doc["boundaries"])
        assert (out / "phase_grid.csv").exists()

    def test_nlse_outputs(self, tmp_path):
        code, out = run(tmp_path, "nlse", SMALL_CONFIG)
        assert code == 0
        lines = (out / "nlse_trajectory.csv").read_text().splitlines()
        assert lines[1] == "tau,norm,energy,contrast"
        sidecar = json.loads((out / "nlse_state.json").read_text())
        assert sidecar["grid_points"] == 64
        raw = np.frombuffer((out / "nlse_state.bin").read_bytes(),
                            dtype="<f8")
        assert raw.size == 2 * 64
        psi = raw[0::2] + 1j * raw[1::2]
        assert np.isfinite(psi).all()

    def test_ed_outputs(self, tmp_path):
        code, out = run(tmp_path, "ed", SMALL_CONFIG)
        assert code == 0
        lines = (out / "ed.csv").read_text().splitlines()
        assert lines[1] == "L,N,n_max,u_over_j,e0_over_j,gap_over_j,var_n"
        assert len(lines) == 2 + 2 * 5

    def test_invalid_config_exit_code(self, tmp_path):
        code, _ = run(tmp_path, "map", {"optics": {"n_ph": 0.0}})
        assert code == 2

    def test_plot_script_emission(self, tmp_path):
        cfg = dict(SMALL_CONFIG)
        cfg["output"] = {"emit_plot_script": True}
        code, out = run(tmp_path, "sweep", cfg)
        assert code == 0
        assert "sweep.csv" in (out / "plot_sweep.gp").read_text()


class TestDeterminism:
    @pytest.mark.parametrize("sub", ["map", "sweep", "phase", "crossing",
                                     "nlse", "ed"])
    def test_rerun_byte_identical(self, tmp_path, sub):
        doc = dict(SMALL_CONFIG)
        if sub == "crossing":
            doc = {"sweep": {"omega_range": [0.9, 1.2, 10]}}
        cfg_path = write_config(tmp_path, doc)
        snapshots = []
        for rep in ("a", "b"):
            out = tmp_path / rep
            assert main([sub, "--config", str(cfg_path),
                         "--out", str(out)]) == 0
            snapshots.append({
                p.name: p.read_bytes() for p in sorted(out.iterdir())
            })
        assert snapshots[0] == snapshots[1]
