import csv
import hashlib
import json
import math
import os

import numpy as np
import pytest
import yaml

from aqwalk.cli import main
from aqwalk.presets import PRESETS


BASE_WALK = {
    "particles": 1,
    "theta0": "pi/4",
    "acceleration": 0.001,
    "steps": 40,
    "initial": "symmetric",
    "record": ["distribution", "sigma"],
}


def _write(tmp_path, cfg, name="exp.yaml"):
    path = tmp_path / name
    path.write_text(yaml.safe_dump(cfg))
    return str(path)


def _file_hashes(directory):
    out = {}
    for fn in sorted(os.listdir(directory)):
        if fn == "manifest.json":
            continue
        with open(os.path.join(directory, fn), "rb") as handle:
            out[fn] = hashlib.sha256(handle.read()).hexdigest()
    return out


def test_run_walk_config_writes_csv_and_manifest(tmp_path):
    cfg = {"name": "basic", "walk": dict(BASE_WALK)}
    code = main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")])
    assert code == 0
    outdir = tmp_path / "out" / "basic"
    names = sorted(os.listdir(outdir))
    assert names == ["distribution.csv", "manifest.json", "sigma.csv"]
    manifest = json.loads((outdir / "manifest.json").read_text())
    assert manifest["name"] == "basic"
    assert set(manifest["outputs"]) == {"distribution.csv", "sigma.csv"}
    with open(outdir / "sigma.csv") as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["t", "value"]
    assert len(rows) == 42  # header + t in 0..40


def test_sweep_emits_one_file_per_value(tmp_path):
    cfg = {
        "name": "sweep",
        "walk": dict(BASE_WALK, record=["distribution"]),
        "sweep": {"acceleration": [0.0, 0.001, 0.01]},
    }
    assert main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")]) == 0
    names = sorted(os.listdir(tmp_path / "out" / "sweep"))
    assert names == [
        "distribution_a0.001.csv",
        "distribution_a0.01.csv",
        "distribution_a0.csv",
        "manifest.json",
    ]


def test_csv_round_trip_exact(tmp_path):
    from aqwalk import CoinSchedule, InitialState, WalkSpec, run_walk

    cfg = {"name": "rt", "walk": dict(BASE_WALK)}
    main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")])
    spec = WalkSpec(1, CoinSchedule(math.pi / 4, 0.001), InitialState.symmetric(), 40,
                    record=("distribution", "sigma"))
    expected = run_walk(spec)
    with open(tmp_path / "out" / "rt" / "sigma.csv") as handle:
        rows = list(csv.reader(handle))[1:]
    parsed = np.array([float(v) for _, v in rows])
    assert np.array_equal(parsed, expected.sigma)
    with open(tmp_path / "out" / "rt" / "distribution.csv") as handle:
        rows = list(csv.reader(handle))[1:]
    parsed = np.array([float(p) for _, p in rows])
    assert np.array_equal(parsed, expected.distribution.p)


def test_rerun_is_byte_identical(tmp_path):
    cfg = {
        "name": "det",
        "ensemble": {
            "runs": 6,
            "base_seed": 42,
            "walk": dict(BASE_WALK, disorder={"kind": "spatial"}, record=["sigma"]),
        },
    }
    path = _write(tmp_path, cfg)
    main(["run", path, "-o", str(tmp_path / "o1")])
    main(["run", path, "-o", str(tmp_path / "o2")])
    h1 = _file_hashes(tmp_path / "o1" / "det")
    h2 = _file_hashes(tmp_path / "o2" / "det")
    assert h1 == h2
    m1 = json.loads((tmp_path / "o1" / "det" / "manifest.json").read_text())
    m2 = json.loads((tmp_path / "o2" / "det" / "manifest.json").read_text())
    assert m1["outputs"] == m2["outputs"]


def test_worker_count_independence_via_cli(tmp_path):
    cfg = {
        "name": "workers",
        "ensemble": {
            "runs": 8,
            "base_seed": 11,
            "walk": dict(BASE_WALK, disorder={"kind": "temporal"}, record=["sigma", "distribution"]),
        },
    }
    path = _write(tmp_path, cfg)
    hashes = []
    for i, w in enumerate((1, 4)):
        main(["run", path, "-o", str(tmp_path / f"w{i}"), "--workers", str(w)])
        hashes.append(_file_hashes(tmp_path / f"w{i}" / "workers"))
    assert hashes[0] == hashes[1]


def test_missing_field_gives_exit_2(tmp_path, capsys):
    cfg = {"name": "broken", "walk": {"steps": 10}}  # theta0 missing
    code = main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")])
    assert code == 2
    err = capsys.readouterr().err
    assert "theta0" in err


def test_unknown_field_gives_exit_2(tmp_path, capsys):
    cfg = {"name": "broken", "walk": dict(BASE_WALK, typo_field=3)}
    code = main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")])
    assert code == 2
    assert "typo_field" in capsys.readouterr().err


def test_validate_verb(tmp_path, capsys):
    good = {"name": "ok", "walk": dict(BASE_WALK)}
    assert main(["validate", _write(tmp_path, good, "good.yaml")]) == 0
    bad = {"name": "bad", "walk": dict(BASE_WALK, record=["nope"])}
    assert main(["validate", _write(tmp_path, bad, "bad.yaml")]) == 2
    assert "record" in capsys.readouterr().err


def test_presets_listing_count(capsys):
    assert main(["presets"]) == 0
    out = capsys.readouterr().out
    assert f"{len(PRESETS)} presets:" in out
    assert len(PRESETS) == 23
    for name in PRESETS:
        assert name in out


def test_presets_cover_every_figure():
    names = sorted(PRESETS)
    assert names == sorted(f"fig{i}" for i in range(1, 24))


def test_preset_dump_is_valid_yaml(capsys):
    assert main(["presets", "--dump", "fig2"]) == 0
    docs = [d for d in yaml.safe_load_all(capsys.readouterr().out) if d]
    assert len(docs) == len(PRESETS["fig2"].configs)
    assert docs[0]["name"] == "fig2"


def test_all_preset_configs_parse():
    from aqwalk.config import parse_config

    for preset in PRESETS.values():
        for cfg in preset.configs:
            exp = parse_config(cfg)
            assert exp.kind in ("walk", "ensemble", "surface", "dispersion", "transfer",
                                "lyapunov", "schedule")


def test_json_format(tmp_path):
    cfg = {"name": "asjson", "format": "json", "walk": dict(BASE_WALK, record=["sigma"])}
    assert main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")]) == 0
    payload = json.loads((tmp_path / "out" / "asjson" / "sigma.json").read_text())
    assert payload["header"] == ["t", "value"]
    assert len(payload["rows"]) == 41


def test_env_var_output_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("AQWALK_OUTPUT_DIR", str(tmp_path / "envout"))
    monkeypatch.chdir(tmp_path)
    cfg = {"name": "envy", "walk": dict(BASE_WALK, record=["sigma"])}
    assert main(["run", _write(tmp_path, cfg)]) == 0
    assert (tmp_path / "envout" / "envy" / "sigma.csv").exists()


def test_dispersion_transfer_lyapunov_schedule_kinds(tmp_path):
    configs = [
        {"name": "disp", "dispersion": {"theta0": "pi/4", "kappa": {"count": 16}}},
        {"name": "trans", "transfer": {"theta": "pi/4", "omega": 0.5, "phi": 0.3, "particles": 2}},
        {"name": "sched", "schedule": {"theta0": "pi/2", "accelerations": [0.01], "steps": 20}},
        {"name": "lyap", "lyapunov": {"theta": "pi/4", "omega": 0.5, "chain_length": 5000,
                                      "disorder": {"kind": "none"}}},
    ]
    for cfg in configs:
        assert main(["run", _write(tmp_path, cfg, cfg["name"] + ".yaml"),
                     "-o", str(tmp_path / "out")]) == 0
    disp = (tmp_path / "out" / "disp" / "dispersion.csv").read_text().splitlines()
    assert disp[0] == "kappa,omega_plus,omega_minus,group_velocity"
    trans = (tmp_path / "out" / "trans" / "transfer.csv").read_text().splitlines()
    assert trans[0] == "row,col,re,im"
    assert len(trans) == 17  # header + 16 entries
    sched = (tmp_path / "out" / "sched" / "schedule.csv").read_text().splitlines()
    assert sched[0] == "a,t,value"
    lyap = (tmp_path / "out" / "lyap" / "lyapunov.csv").read_text().splitlines()
    assert lyap[0] == "gamma,localization_length"


def test_fig2_preset_writes_one_distribution_per_acceleration(tmp_path):
    assert main(["run", "--preset", "fig2", "-o", str(tmp_path)]) == 0
    from aqwalk.presets import A_SWEEP_1P

    main_dir = tmp_path / "fig2"
    csvs = sorted(f for f in os.listdir(main_dir) if f.endswith(".csv"))
    assert len(csvs) == len(A_SWEEP_1P)
    assert all(f.startswith("distribution_a") for f in csvs)
    assert (tmp_path / "fig2-inset" / "manifest.json").exists()


def test_run_requires_exactly_one_source(tmp_path, capsys):
    assert main(["run"]) == 2
    cfg = {"name": "x", "walk": dict(BASE_WALK)}
    assert main(["run", _write(tmp_path, cfg), "--preset", "fig1"]) == 2


def test_config_with_two_kinds_rejected(tmp_path, capsys):
    cfg = {
        "name": "two-kinds",
        "walk": dict(BASE_WALK),
        "schedule": {"theta0": "pi/2", "accelerations": [0.1], "steps": 5},
    }
    assert main(["validate", _write(tmp_path, cfg)]) == 2
    assert "exactly one" in capsys.readouterr().err


def test_surface_kind(tmp_path):
    cfg = {
        "name": "surf",
        "surface": {
            "accelerations": [0.005, 0.02],
            "observable": "negativity_particle_particle",
            "walk": {
                "particles": 2, "theta0": "pi/2", "steps": 30, "initial": "uu",
                "record": ["negativity_particle_particle"],
            },
        },
    }
    assert main(["run", _write(tmp_path, cfg), "-o", str(tmp_path / "out")]) == 0
    lines = (tmp_path / "out" / "surf" / "negativity_particle_particle_surface.csv").read_text().splitlines()
    assert lines[0] == "a,t,value"
    assert len(lines) == 1 + 2 * 31  # two accelerations, t in 0..30
