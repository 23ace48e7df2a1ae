import json

import pytest

from vertexscreen.cli import main, make_parser
from vertexscreen.presets import preset_context
from vertexscreen.serialize import field_from_json, field_to_json
from vertexscreen.superdata import build_sl, datum_to_json
from vertexscreen.vertexcalc import derive, normal_order


def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_serialize_round_trip():
    ctx = preset_context("osp1_2-regular")
    sys_ = ctx.system
    J = sys_.gen_field(0)
    P = sys_.gen_field(ctx.fermion_of_root[ctx.base.pi_half[0]])
    fe = normal_order(J, derive(P, ctx.module), ctx.module).scale(
        sys_.field.gen / (sys_.field.gen + 2))
    doc = field_to_json(fe)
    assert field_from_json(sys_, doc) == fe
    # momentum factors survive the trip
    mu = tuple(-sys_.field.one / (sys_.field.gen + 2)
               for _ in ctx.system.currents)
    E = sys_.exp_field(mu)
    assert field_from_json(sys_, field_to_json(E)) == E


def test_info_preset(capsys):
    code, out = run_cli(["info", "--preset", "sl3-subregular",
                         "--max-weight", "6"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["restricted_base"]["classes"] == [["a2", "a1+a2"]]
    assert doc["generator_weights2"] == [2, 2, 4, 4]
    assert doc["expected_character"]["4"] == 7
    code, out = run_cli(["info", "--preset", "sl3-subregular-cartan",
                         "--max-weight", "6"], capsys)
    doc = json.loads(out)
    assert doc["generator_weights2"] == [2, 3, 3, 4]
    code, out = run_cli(["info", "--preset", "osp1_2-regular",
                         "--max-weight", "4"], capsys)
    doc = json.loads(out)
    assert doc["generator_weights2"] == [3, 4]


def test_kernel_command_and_exit_codes(capsys):
    code, out = run_cli(["kernel", "--preset", "sl2-regular",
                         "--max-weight", "8"], capsys)
    assert code == 0
    doc = json.loads(out)
    dims = [r["kernel_dim"] for r in doc["reports"]]
    assert dims == [1, 0, 0, 0, 1, 0, 1, 0, 2]
    assert doc["status"] == "pass"


def test_kernel_specialized_level(capsys):
    code, out = run_cli(["kernel", "--preset", "sl2-regular",
                         "--max-weight", "6", "--level", "7/2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert [r["kernel_dim"] for r in doc["reports"]] == [1, 0, 0, 0, 1, 0, 1]


def test_kernel_critical_level_is_usage_error(capsys):
    code = main(["kernel", "--preset", "sl2-regular", "--level", "-2"])
    assert code == 2


def test_kernel_nongeneric_level_exits_one(capsys):
    """k = 1 is a resonant level for the rank-one regular reduction: the
    weight-5 kernel jumps above the generic dimension, the report flags
    the mismatch and the exit status is 1."""
    code, out = run_cli(["kernel", "--preset", "sl2-regular",
                         "--max-weight", "10", "--level", "1"], capsys)
    assert code == 1
    doc = json.loads(out)
    assert doc["status"] == "fail"
    last = doc["reports"][-1]
    assert last["kernel_dim"] == 3 and last["expected_dim"] == 2


def test_verify_commands(capsys):
    code, out = run_cli(["verify", "wick", "--trials", "2"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "pass"
    assert doc["seed"] == 20240
    code, out = run_cli(["verify", "brst", "--preset", "sl2-regular",
                         "--max-weight", "6"], capsys)
    assert json.loads(out)["status"] == "pass"
    assert code == 0
    code, out = run_cli(["verify", "fs", "--n", "2"], capsys)
    assert json.loads(out)["status"] == "pass"


def test_verify_deterministic_output(capsys):
    code, a = run_cli(["verify", "wick", "--trials", "2", "--seed", "7"],
                      capsys)
    code, b = run_cli(["verify", "wick", "--trials", "2", "--seed", "7"],
                      capsys)
    assert a == b


def test_datum_file_input(tmp_path, capsys):
    doc = datum_to_json(build_sl(2))
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(doc))
    code, out = run_cli([
        "kernel", "--datum", str(path),
        "--labels", '{"s1": 2}', "--f-support", '["s1"]',
        "--max-weight", "6"], capsys)
    assert code == 0
    assert [r["kernel_dim"]
            for r in json.loads(out)["reports"]] == [1, 0, 0, 0, 1, 0, 1]


def test_bad_input_exit_code(tmp_path):
    assert main(["kernel", "--datum", str(tmp_path / "missing.json")]) == 2
    with pytest.raises(SystemExit) as exc:
        make_parser().parse_args(["kernel", "--preset", "no-such"])
    assert exc.value.code == 2


def test_out_file(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, _ = run_cli(["info", "--preset", "sl2-regular", "--max-weight",
                       "4", "--out", str(out_path)], capsys)
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["h_dual"] == "2"


def test_table_format(tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out = run_cli(["info", "--preset", "sl2-regular", "--max-weight",
                         "4", "--out", str(out_path), "--format", "table"],
                        capsys)
    assert code == 0
    assert "h_dual" in out and "{" not in out.splitlines()[0]
