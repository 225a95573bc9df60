import json
import re

import pytest

from nilring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe_z12(capsys):
    code, out, _ = run(capsys, "describe", "cyclic:12", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["jacobson_radical"]["generators"] == ["6"]
    assert data["socle"]["generators"] == ["2"]
    assert data["semisimple"] is False


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", "cyclic:6")
    assert code == 0 and "semisimple: true" in out
    code, out, _ = run(capsys, "describe", "cyclic:1")
    assert code == 0 and "zero ring" in out


def test_ideals_ut2(capsys):
    code, out, _ = run(capsys, "ideals", "ut3:2", "--sidedness", "left", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["count"] == 9
    assert sum(r["nil_essential"] for r in data["ideals"]) == 8
    essential = sorted(r["shape"] for r in data["ideals"] if r["essential"])
    assert essential == ["I1", "I5", "I8"]


def test_ideals_small(capsys):
    _, out, _ = run(capsys, "ideals", "cyclic:12", "--format", "json")
    data = json.loads(out)
    assert data["count"] == 6
    assert {tuple(r["generators"]) for r in data["ideals"] if r["nil_essential"]} == {("1",), ("2",)}
    _, out, _ = run(capsys, "ideals", "cyclic:2", "--format", "json")
    assert json.loads(out)["count"] == 2


def _text_rows(out):
    rows = {}
    for line in out.splitlines()[2:]:
        m = re.match(r"\s*(\d+)\s+(?:I\S*\s+)?(\(.*?\))\s+(\d+)\s+(\w+)\s+(\w+)\s+(\w+)\s+(\w+)\s+(\w+)", line)
        rows[int(m.group(1))] = (m.group(2), int(m.group(3)), *[v == "true" for v in m.groups()[3:]])
    return rows


@pytest.mark.parametrize("spec,side", [("cyclic:12", "two-sided"), ("ut3:2", "left"), ("ut3:2", "right")])
def test_text_and_json_agree(capsys, spec, side):
    _, text, _ = run(capsys, "ideals", spec, "--sidedness", side)
    _, js, _ = run(capsys, "ideals", spec, "--sidedness", side, "--format", "json")
    rows = _text_rows(text)
    for r in json.loads(js)["ideals"]:
        gens = "(" + ", ".join(r["generators"]) + ")" if r["generators"] else "(0)"
        flags = (r["nilpotent"], r["essential"], r["nil_essential"], r["minimal"], r["maximal"])
        assert rows[r["index"]] == (gens, r["size"], *flags)


def test_check_exit_codes(capsys):
    code, out, _ = run(capsys, "check", "L212", "cyclic:12")
    assert code == 0 and "verified" in out
    code, out, _ = run(capsys, "check", "X205", "ut3:2", "--format", "json")
    assert code == 0 and json.loads(out)["status"] == "confirmed"


def test_usage_errors(capsys):
    assert run(capsys, "describe", "cyclic:0")[0] == 2
    assert run(capsys, "describe", "bogus:3")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["check", "P999", "cyclic:2"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "ideals", "cyclic:30", "--max-order", "16")
    assert code == 3 and "cap" in err


def test_localize(capsys):
    code, out, _ = run(capsys, "localize", "cyclic:6", "--invert", "3")
    assert code == 0
    assert "localized order: 2" in out and "kernel: {0, 2, 4}" in out
    row = next(line for line in out.splitlines() if line.startswith("(3)"))
    assert row.split()[2:] == ["false", "true"]
    code, out, _ = run(capsys, "localize", "cyclic:12", "--invert", "5", "--format", "json")
    assert json.loads(out)["result_order"] == 12
    code, _, err = run(capsys, "localize", "cyclic:8", "--invert", "2")
    assert code == 2 and "2 -> 4 -> 0" in err


def test_hunt(capsys, tmp_path):
    corpus = tmp_path / "c.json"
    corpus.write_text(json.dumps(["cyclic:4", "cyclic:6"]))
    code, out, _ = run(capsys, "hunt", "X223", "--corpus", str(corpus), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["witness"]["ring"] == "cyclic:6"


def test_suite_small(capsys, tmp_path):
    corpus = tmp_path / "c.json"
    corpus.write_text(json.dumps({"rings": ["cyclic:6", "ut3:2"], "checks": ["X202", "X205", "P201"]}))
    code, out, _ = run(capsys, "suite", "--corpus", str(corpus), "--format", "json")
    data = json.loads(out)
    assert code == 0 and len(data["reports"]) == 6
    assert data["summary"]["confirmed_existence_checks"] == ["X202", "X205"]
    code, out, _ = run(capsys, "suite", "--corpus", str(corpus))
    assert "summary:" in out


def test_suite_bad_corpus(capsys, tmp_path):
    corpus = tmp_path / "c.json"
    corpus.write_text("{}")
    assert run(capsys, "suite", "--corpus", str(corpus))[0] == 2


def test_console_script_help():
    import subprocess
    out = subprocess.run(["nilring", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "cyclic:N" in out.stdout
