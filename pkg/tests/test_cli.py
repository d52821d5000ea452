import json

import pytest

from torictower.cli import EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VIOLATIONS, main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_tower(tmp_path, text, name="tower.json"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


SIMPLE = '{"base_dim": "1", "moves": [{"type": "node", "alpha_exponents": [], "t_exponents": ["2"]}]}'


def test_random_then_build_round_trip(tmp_path, capsys):
    out_path = str(tmp_path / "t.json")
    code, _, _ = run_cli(capsys, "random", "--p", "2", "--d", "3", "--seed", "7", "--output", out_path)
    assert code == EXIT_OK
    code, out, _ = run_cli(capsys, "build", "--input", out_path)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["command"] == "build"
    assert doc["violations"] == []
    assert len(doc["data"]["levels"]) == 3


def test_fan_prints_levels(tmp_path, capsys):
    path = write_tower(tmp_path, SIMPLE)
    code, out, _ = run_cli(capsys, "fan", "--input", path, "--level", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    level = doc["data"]["levels"][0]
    assert level["ambient_dim"] == "2"
    assert [["1", "0"], ["1", "2"]] == level["rays"]


def test_map_to_proj_support(tmp_path, capsys):
    path = write_tower(tmp_path, SIMPLE)
    code, out, _ = run_cli(capsys, "map-to-proj", "--input", path)
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["violations"] == []
    assert all(entry["supported"] for entry in doc["data"]["level_d_rays_in_support"])
    assert doc["data"]["identification"] == [["1", "0"], ["0", "1"]]


def test_base_change_command(tmp_path, capsys):
    path = write_tower(
        tmp_path,
        '{"base_dim": "2", "moves": [{"type": "node", "alpha_exponents": [], "t_exponents": ["1", "1"]}]}',
    )
    code, out, _ = run_cli(capsys, "base-change", "--input", path, "--orders", "1,1", "--on-boundary")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["base_dim"] == "1"
    assert doc["moves"][0]["t_exponents"] == ["2"]


def test_lc_check_command(tmp_path, capsys):
    path = write_tower(tmp_path, SIMPLE)
    code, out, _ = run_cli(capsys, "lc-check", "--input", path, "--samples", "10", "--seed", "3")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["violations"] == []
    assert int(doc["counts"]["checked"]) >= 2


def test_local_model_command(tmp_path, capsys):
    path = write_tower(tmp_path, SIMPLE)
    code, out, _ = run_cli(capsys, "local-model", "--input", path, "--level", "2")
    assert code == EXIT_OK
    doc = json.loads(out)
    kinds = {tuple(map(tuple, c["rays"])): c["kind"] for c in doc["data"]["levels"][0]["cones"]}
    assert kinds[(("1", "0"), ("1", "2"))] == "node"
    assert kinds[()] == "smooth_plain"


def test_degree_and_volume_commands(tmp_path, capsys):
    path = write_tower(
        tmp_path,
        '{"fiber_dim": "2", "hyperplane_coefficients": ["1", "1", "1"], "polarization": "1"}',
        name="div.json",
    )
    code, out, _ = run_cli(capsys, "degree", "--input", path)
    assert code == EXIT_OK and json.loads(out)["data"]["relative_degree"] == "3"
    code, out, _ = run_cli(capsys, "volume", "--input", path)
    assert code == EXIT_OK and json.loads(out)["data"]["relative_volume"] == "9"


def test_verify_command(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "basechange", "--seed", "3")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["command"] == "verify:basechange"
    assert doc["violations"] == []


def test_parse_error_exit_code(tmp_path, capsys):
    path = write_tower(tmp_path, "{broken", name="bad.json")
    code, _, err = run_cli(capsys, "build", "--input", path)
    assert code == EXIT_USAGE
    assert "malformed" in err


def test_schema_error_exit_code(tmp_path, capsys):
    path = write_tower(
        tmp_path,
        '{"base_dim": "1", "moves": [{"type": "node", "alpha_exponents": ["1"], "t_exponents": ["1"]}]}',
        name="bad.json",
    )
    code, _, err = run_cli(capsys, "build", "--input", path)
    assert code == EXIT_USAGE
    assert "invalid tower" in err


def test_resource_cap_exit_code(tmp_path, capsys):
    path = write_tower(
        tmp_path,
        '{"base_dim": "3", "moves": [{"type": "node", "alpha_exponents": [], "t_exponents": ["1", "1", "1"]}]}',
    )
    code, _, err = run_cli(capsys, "build", "--input", path, "--max-rays", "2")
    assert code == EXIT_RESOURCE
    assert "cap" in err


def test_reports_are_byte_deterministic(tmp_path, capsys):
    outputs = []
    for name in ("a.json", "b.json"):
        out_path = str(tmp_path / name)
        code = main(["verify", "--suite", "basechange", "--seed", "11", "--output", out_path])
        assert code == EXIT_OK
        outputs.append((tmp_path / name).read_bytes())
    capsys.readouterr()
    assert outputs[0] == outputs[1]


def test_reports_embed_seed(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "volume", "--seed", "123")
    assert code == EXIT_OK
    assert json.loads(out)["seed"] == "123"
