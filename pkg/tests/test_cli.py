import json
import subprocess
import sys
import time

import pytest

from krystal.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kr_dot_is_a_two_vertex_digraph(capsys):
    code, out, _ = run(["kr", "A1~", "--k", "1", "--dot"], capsys)
    assert code == 0
    assert out.startswith("digraph")
    assert out.count("[label=") == 4  # two vertices, two edges


def test_exports_are_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        assert main(["crystal", "A2~", "--weight", "L0+L1", "--depth", "4", "--out", str(path)]) == 0
    assert a.read_bytes() == b.read_bytes()
    graph = json.loads(a.read_text())
    assert graph["truncation"] == {"bound": 4, "kind": "depth"}
    assert graph["vertices"][0]["path"]["breaks"] == ["0", "1"]


def test_demazure_json(capsys):
    code, out, _ = run(["demazure", "A1~", "--weight", "s0L0", "--json"], capsys)
    assert code == 0
    obj = json.loads(out)
    assert len(obj["members"]) == 2 and obj["word"] == [0]
    code, out, _ = run(["demazure", "A1~", "--weight=-s0L0"], capsys)
    assert code == 0 and json.loads(out)["host"]["dual"] is True


def test_datum(capsys):
    code, out, _ = run(["datum", "F4~"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["marks"] == [1, 2, 3, 4, 2] and obj["comarks"] == [1, 2, 3, 2, 1]


def test_rank_flag_composes_type(capsys):
    code, out, _ = run(["verify", "xi0", "--type", "A~", "--rank", "3"], capsys)
    assert code == 0
    cases = [json.loads(line)["case"] for line in out.splitlines()]
    assert cases == ["A11/A3~/k=1", "A11/A3~/k=2", "A11/A3~/k=3"]


def test_verify_qops_is_fast(capsys):
    t0 = time.perf_counter()
    code, out, err = run(["verify", "qops"], capsys)
    assert code == 0 and time.perf_counter() - t0 < 10
    report = json.loads(out)
    assert report["status"] == "pass" and report["witness"]["identities"] > 0
    assert "pass" in err


def test_verify_tensor_hw_single_case(capsys):
    code, out, _ = run(["verify", "tensor-hw", "--type", "A2~", "--k", "1", "--depth", "6"], capsys)
    assert code == 0
    (line,) = out.splitlines()
    assert json.loads(line)["case"] == "A6/A2~/k=1"


def test_conditional_needs_flag(capsys):
    code, _, _ = run(["verify", "cor-ue", "--type", "A1~"], capsys)
    assert code == 1
    code, out, _ = run(["verify", "cor-ue", "--type", "A1~", "--allow-conditional"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["status"] == "conditional-pass" and report["assumption"]


def test_report_and_figures(tmp_path, capsys):
    out = tmp_path / "report.ndjson"
    code, _, err = run(["verify", "special-vector", "--out", str(out), "--figures"], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 10
    assert (tmp_path / "report.runtimes.png").stat().st_size > 0
    assert (tmp_path / "report.status.png").stat().st_size > 0


def test_reports_are_deterministic_up_to_wall_time(capsys):
    def strip(text):
        rows = [json.loads(line) for line in text.splitlines()]
        for r in rows:
            r.pop("wall_time")
        return rows
    _, a, _ = run(["verify", "fund-demazure", "--type", "A2~"], capsys)
    _, b, _ = run(["verify", "fund-demazure", "--type", "A2~"], capsys)
    assert strip(a) == strip(b)


@pytest.mark.parametrize("argv", [
    ["verify", "bogus"],
    ["kr", "C2~", "--k", "1"],
    ["kr", "A1~"],
    ["demazure", "A1~", "--weight", "w1"],
    ["crystal", "A1~", "--weight", "L0", "--depth", "12", "--budget", "5"],
    ["verify", "xi0", "--type", "Z9~"],
])
def test_usage_and_budget_errors_exit_two(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "krystal", "kr", "A2~", "--k", "1", "--json"],
                          capture_output=True, text=True, check=True)
    graph = json.loads(proc.stdout)
    assert [v["column"] for v in graph["vertices"]] == [[1], [3], [2]]
