import json
import subprocess
import sys
from pathlib import Path

import pytest

from eqoperad.cli import main
from eqoperad.groups import FIXTURE_NAMES

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_groups_list(capsys):
    code, out, _ = run(capsys, "groups", "list")
    assert code == 0
    assert [line.split("\t")[0] for line in out.splitlines()] == list(FIXTURE_NAMES)
    assert len(FIXTURE_NAMES) == 8


def test_indexing_enumerate_json_golden(capsys):
    code, out, _ = run(capsys, "indexing", "enumerate", "--group", "C4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert len(data["systems"]) == 5
    assert out == (GOLDEN / "cli_indexing_C4.json").read_text()


def test_burnside_s3_golden(capsys):
    code, out, _ = run(capsys, "burnside", "--group", "S3")
    assert code == 0
    assert out == (GOLDEN / "cli_burnside_S3.txt").read_text()
    assert "[S3/H2_0] * [S3/H2_0] = [S3/e] + [S3/H2_0]" in out


def test_graphsub_golden(capsys):
    code, out, _ = run(capsys, "graphsub", "--group", "C2", "--max-n", "4", "--format", "json")
    assert code == 0
    assert out == (GOLDEN / "cli_graphsub_C2.json").read_text()
    rows = {(r["n"], r["H"]): r for r in json.loads(out)["rows"]}
    assert rows[2, "C2"]["count"] == rows[2, "C2"]["hset_classes"] == 2


def test_broken_operad_exits_one(capsys):
    code, out, _ = run(capsys, "operad", "check", "broken.json")
    assert code == 1
    assert "segal" in out


def test_broken_operad_json(capsys):
    code, out, _ = run(capsys, "operad", "check", "broken.json", "--format", "json")
    assert code == 1
    assert "segal" in {v["axiom"] if isinstance(v, dict) else v[0] for v in json.loads(out)["violations"]}


@pytest.mark.parametrize("argv", [
    ["indexing", "enumerate", "--bogus"],
    ["gset", "orbits", "/nonexistent/file.json"],
    ["indexing", "enumerate", "--group", "NOPE"],
    ["burnside", "--format", "yaml"],
])
def test_malformed_input_exits_two(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        raise SystemExit(main(argv))
    assert exc.value.code == 2


def test_malformed_json_file(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out, err = run(capsys, "operad", "check", str(p))
    assert code == 2 and out == "" and err


@pytest.mark.parametrize("argv", [
    ["indexing", "enumerate", "--group", "S3", "--format", "dot"],
    ["burnside", "--group", "C4", "--method", "spans", "--format", "json"],
    ["span", "factorize", "--group", "C2", "--max-size", "3"],
    ["colored", "nerve", "--group", "C2", "--instance", "com", "--max-size", "3"],
    ["operad", "triv", "--group", "C2", "--seed", "7"],
])
def test_byte_stable(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0
    assert first == second


def test_colored_mutation_fails(capsys):
    code, out, _ = run(capsys, "colored", "check", "--group", "C2", "--instance", "shift-unit",
                       "--max-size", "3")
    assert code == 1 and "unitality" in out


def test_plots(capsys, tmp_path):
    hasse_png, heat_png = tmp_path / "hasse.png", tmp_path / "heat.png"
    assert run(capsys, "indexing", "enumerate", "--group", "C4", "--plot", str(hasse_png))[0] == 0
    assert run(capsys, "burnside", "--group", "S3", "--plot", str(heat_png))[0] == 0
    for p in (hasse_png, heat_png):
        assert p.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "eqoperad.cli", "groups", "show", "S3"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "S3" in r.stdout
