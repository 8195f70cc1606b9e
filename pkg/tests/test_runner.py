"""Config parsing, orchestration, the manifest contract, and the CLI."""

import hashlib
import json

import numpy as np
import pytest

from linkdiscrim import ConfigError, OutputDirectoryError, parse_config_file, run_config
from linkdiscrim.cli import main
from linkdiscrim.runner import RunManifest, load_run_config, resolve_out_dir

GOOD_CONFIG = """\
# comment line
n_nodes = 50
q_max = 0.5
test_fraction = 0.1
noise_grid = 0.1, 0.4, 0.8
n_networks = 2
runs_per_network = 3
threshold_multipliers = 0.5, 1, 2
p_star = 0.05
master_seed = 31
paired = true
resplit_per_run = false
workers = 1
"""


def write_config(tmp_path, text=GOOD_CONFIG, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


class TestParseConfig:
    def test_parses_all_keys(self, tmp_path):
        config = parse_config_file(write_config(tmp_path))
        assert config.n_nodes == 50
        assert config.noise_grid == (0.1, 0.4, 0.8)
        assert config.threshold_multipliers == (0.5, 1.0, 2.0)
        assert config.p_star == 0.05
        assert config.paired is True
        assert config.resplit_per_run is False
        assert config.workers == 1

    def test_defaults_fill_missing_keys(self, tmp_path):
        config = parse_config_file(write_config(tmp_path, "n_nodes = 60\n"))
        assert config.n_nodes == 60
        assert config.q_max == 0.5
        assert config.runs_per_network == 100

    def test_inline_comments_and_blank_lines(self, tmp_path):
        text = "\n\nn_nodes = 70  # override\n\nmaster_seed = 4\n"
        config = parse_config_file(write_config(tmp_path, text))
        assert config.n_nodes == 70
        assert config.master_seed == 4

    def test_unknown_key_names_line(self, tmp_path):
        text = "n_nodes = 50\nn_neighbors = 3\n"
        with pytest.raises(ConfigError, match=r":2.*n_neighbors"):
            parse_config_file(write_config(tmp_path, text))

    def test_duplicate_key_names_line(self, tmp_path):
        text = "n_nodes = 50\nn_nodes = 60\n"
        with pytest.raises(ConfigError, match=r":2.*duplicate"):
            parse_config_file(write_config(tmp_path, text))

    def test_bad_value_names_line_and_key(self, tmp_path):
        text = "n_nodes = fifty\n"
        with pytest.raises(ConfigError, match=r":1.*n_nodes"):
            parse_config_file(write_config(tmp_path, text))

    def test_missing_equals_sign(self, tmp_path):
        with pytest.raises(ConfigError, match="key = value"):
            parse_config_file(write_config(tmp_path, "n_nodes 50\n"))

    def test_semantic_validation_still_applies(self, tmp_path):
        with pytest.raises(ConfigError, match="p_star"):
            parse_config_file(write_config(tmp_path, "p_star = 2.0\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError):
            parse_config_file(tmp_path / "absent.cfg")


class TestManifest:
    def test_json_round_trip(self, tmp_path):
        config = parse_config_file(write_config(tmp_path))
        manifest = RunManifest(
            tool="linkdiscrim",
            version="0.1.0",
            config=config,
            started="2024-05-01T00:00:00+00:00",
            finished="2024-05-01T00:05:00+00:00",
            outputs={"samples.csv": "ab" * 32},
        )
        again = RunManifest.from_json(manifest.to_json())
        assert again == manifest

    def test_load_run_config_accepts_manifest(self, tmp_path):
        config = parse_config_file(write_config(tmp_path))
        manifest = RunManifest(
            tool="linkdiscrim", version="0.1.0", config=config,
            started="", finished="", outputs={},
        )
        path = tmp_path / "manifest.json"
        path.write_text(manifest.to_json(), encoding="utf-8")
        assert load_run_config(path) == config

    def test_bad_manifest_is_config_error(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text("{\"tool\": \"x\"}", encoding="utf-8")
        with pytest.raises(ConfigError, match="manifest"):
            load_run_config(path)

    def test_invalid_json_is_config_error(self, tmp_path):
        path = tmp_path / "manifest.json"
        path.write_text("{nope", encoding="utf-8")
        with pytest.raises(ConfigError, match="JSON"):
            load_run_config(path)


class TestResolveOutDir:
    def test_explicit_wins(self, monkeypatch, tmp_path):
        monkeypatch.setenv("LINKDISCRIM_OUT", str(tmp_path / "env"))
        assert resolve_out_dir(tmp_path / "flag") == tmp_path / "flag"

    def test_env_beats_default(self, monkeypatch, tmp_path):
        monkeypatch.setenv("LINKDISCRIM_OUT", str(tmp_path / "env"))
        assert resolve_out_dir(None) == tmp_path / "env"

    def test_default(self, monkeypatch):
        monkeypatch.delenv("LINKDISCRIM_OUT", raising=False)
        assert resolve_out_dir(None, default="results").name == "results"


@pytest.fixture(scope="module")
def run(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("run")
    config_path = write_config(tmp)
    out = tmp / "out"
    manifest = run_config(config_path, out_dir=out)
    return manifest, out


class TestRunConfig:
    def test_emits_expected_files(self, run):
        manifest, out = run
        names = set(manifest.outputs)
        assert "samples.csv" in names
        assert "summary.csv" in names
        assert "areas.csv" in names
        assert sum(n.startswith("pvalues_") for n in names) == 16
        assert sum(n.startswith("binary_") and n.endswith(".csv") for n in names) == 16
        assert {"metric_vs_noise.svg", "run_traces.svg", "binary_heatmaps.svg"} <= names
        assert (out / "manifest.json").exists()

    def test_digests_match_files(self, run):
        manifest, out = run
        for name, digest in manifest.outputs.items():
            actual = hashlib.sha256((out / name).read_bytes()).hexdigest()
            assert actual == digest, name

    def test_rerun_from_manifest_is_digest_identical(self, run, tmp_path):
        manifest, out = run
        again = run_config(out / "manifest.json", out_dir=tmp_path / "again")
        assert again.outputs == manifest.outputs

    def test_manifest_json_is_well_formed(self, run):
        _, out = run
        payload = json.loads((out / "manifest.json").read_text(encoding="utf-8"))
        assert payload["tool"] == "linkdiscrim"
        assert payload["config"]["n_nodes"] == 50
        assert set(payload["outputs"])

    def test_no_nan_in_emitted_csvs(self, run):
        _, out = run
        for path in out.glob("*.csv"):
            assert "nan" not in path.read_text(encoding="utf-8").lower(), path.name

    def test_unwritable_out_dir(self, tmp_path):
        config_path = write_config(tmp_path)
        blocker = tmp_path / "blocked"
        blocker.write_text("a file, not a directory", encoding="utf-8")
        with pytest.raises(OutputDirectoryError):
            run_config(config_path, out_dir=blocker)


class TestCli:
    def test_sweep_and_plot_and_matrix(self, tmp_path, capsys):
        config_path = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["sweep", str(config_path), "--out", str(out)]) == 0
        assert (out / "samples.csv").exists()

        mtx_dir = tmp_path / "mtx"
        assert main(["matrix", str(out / "samples.csv"), "--p-star", "0.05",
                     "--out", str(mtx_dir)]) == 0
        assert len(list(mtx_dir.glob("pvalues_*.csv"))) == 16

        fig_dir = tmp_path / "figs"
        assert main(["plot", str(out), "--out", str(fig_dir)]) == 0
        assert (fig_dir / "binary_heatmaps.svg").exists()
        capsys.readouterr()

    def test_matrix_unpaired_flag(self, tmp_path, capsys):
        config_path = write_config(tmp_path)
        out = tmp_path / "out"
        assert main(["sweep", str(config_path), "--out", str(out)]) == 0
        paired_dir, unpaired_dir = tmp_path / "p", tmp_path / "u"
        assert main(["matrix", str(out / "samples.csv"), "--out", str(paired_dir)]) == 0
        assert main(["matrix", str(out / "samples.csv"), "--unpaired",
                     "--out", str(unpaired_dir)]) == 0
        a = (paired_dir / "pvalues_auc.csv").read_text()
        b = (unpaired_dir / "pvalues_auc.csv").read_text()
        assert a != b
        capsys.readouterr()

    def test_env_var_sets_output_dir(self, tmp_path, monkeypatch, capsys):
        config_path = write_config(tmp_path)
        env_out = tmp_path / "from-env"
        monkeypatch.setenv("LINKDISCRIM_OUT", str(env_out))
        assert main(["sweep", str(config_path)]) == 0
        assert (env_out / "samples.csv").exists()
        capsys.readouterr()

    def test_eval_scores_prints_csv(self, tmp_path, capsys):
        path = tmp_path / "scores.csv"
        path.write_text(
            "id,score,label\na,0.9,positive\nb,0.7,negative\nc,0.6,positive\n"
            "d,0.4,negative\ne,0.1,negative\n",
            encoding="utf-8",
        )
        assert main(["eval-scores", str(path)]) == 0
        out = capsys.readouterr().out.splitlines()
        header, row = out[-2], out[-1]
        values = dict(zip(header.split(","), row.split(",")))
        assert float(values["auc"]) == pytest.approx(0.833333, abs=1e-5)
        assert float(values["aupr"]) == pytest.approx(0.641667, abs=1e-5)

    def test_domain_error_exits_one_with_message(self, tmp_path, capsys):
        bad = tmp_path / "bad.cfg"
        bad.write_text("mystery_key = 3\n", encoding="utf-8")
        assert main(["sweep", str(bad)]) == 1
        err = capsys.readouterr().err
        assert "mystery_key" in err

    def test_missing_scores_file_exits_one(self, tmp_path, capsys):
        assert main(["eval-scores", str(tmp_path / "none.csv")]) == 1
        assert "error" in capsys.readouterr().err
