import json
import subprocess
import sys

import pytest

from matchcore.bundled import INSTANCE_NAMES
from matchcore.cli import main
from matchcore.gamefile import render_game
from matchcore.bundled import load_instance


@pytest.fixture
def game_path(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.game"
        path.write_text(render_game(load_instance(name)))
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_worth_command(capsys, game_path):
    code, out, _ = run(capsys, "worth", "--game", game_path("path5"))
    assert code == 0
    assert "grand-coalition = 21/10" in out


def test_concurrency_reports_empty_core(capsys, game_path):
    code, out, _ = run(capsys, "concurrency", "--game", game_path("k3"))
    assert code == 0
    assert "integral-optimum = 1" in out
    assert "fractional-optimum = 3/2" in out
    assert "core = empty" in out


def test_check_accepts_and_rejects(capsys, game_path):
    path = game_path("bpath4-con")
    code, out, _ = run(capsys, "check", "--game", path, "--imputation", "1,0,0,3")
    assert code == 0 and "in-core = yes" in out
    path = game_path("bpath4-uncon")
    code, out, _ = run(capsys, "check", "--game", path, "--imputation", "1,0,0,3")
    assert code == 1
    assert "in-core = no" in out and "witness = {u1,v1}" in out


def test_dual_image_command(capsys, game_path):
    path = game_path("bpath4-uncon")
    code, out, _ = run(capsys, "dual-image", "--game", path, "--imputation", "2,0,0,2")
    assert code == 0 and "in-dual-image = yes" in out
    code, out, _ = run(capsys, "dual-image", "--game", path, "--imputation", "3,0,0,1")
    assert code == 1 and "in-dual-image = no" in out


def test_imputation_vector_length_checked(capsys, game_path):
    code, _, err = run(
        capsys, "check", "--game", game_path("path5"), "--imputation", "1,2"
    )
    assert code == 2
    assert "entries" in err


def test_bad_file_is_input_error(capsys, tmp_path):
    bad = tmp_path / "bad.game"
    bad.write_text("variant: assignment\nleft: u\nright: v\nedge: u v 0\n")
    code, _, err = run(capsys, "worth", "--game", str(bad))
    assert code == 2 and "error:" in err
    code, _, err = run(capsys, "worth", "--game", str(tmp_path / "missing.game"))
    assert code == 2


def test_cap_exceeded_exit_code(capsys, game_path):
    code, _, err = run(
        capsys, "system", "--game", game_path("path5"), "--cap", "2"
    )
    assert code == 3
    assert "cap exceeded" in err


def test_out_writes_json(capsys, game_path, tmp_path):
    out_path = tmp_path / "report.json"
    code, _, _ = run(
        capsys,
        "payments",
        "--game",
        game_path("ring7"),
        "--out",
        str(out_path),
    )
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert doc["header"]["game"] == "ring7"
    assert doc["sections"][0]["title"] == "payments"


def test_examples_gate_passes(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    for name in INSTANCE_NAMES:
        assert f"ok       {name}" in out


def test_examples_runs_are_byte_identical(capsys):
    _, first, _ = run(capsys, "examples")
    _, second, _ = run(capsys, "examples")
    assert first == second


def test_console_entry_point(game_path):
    proc = subprocess.run(
        [sys.executable, "-m", "matchcore.cli", "worth", "--game", game_path("fork3")],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "grand-coalition = 11/10" in proc.stdout


def test_splits_change_constrained_imputation(capsys, game_path):
    path = game_path("bpath4-con")
    outs = {}
    for split in ("left", "right", "half"):
        code, out, _ = run(
            capsys, "imputation", "--game", path, "--split", split
        )
        assert code == 0
        outs[split] = out
    assert len(set(outs.values())) == 3
