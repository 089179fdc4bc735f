"""Command-line driver tests: subcommands, file round-trips, deterministic
output, degenerate query handling, and parse-error reporting."""

import json

import pytest

from decbicon.cli import main

ALLOWED_PREFIXES = ("1", "0", "bicon", "nil", "none", "cut ", "bridge ")


def _lines(capsys):
    return capsys.readouterr().out.strip().splitlines()


def test_selftest_passes(capsys):
    assert main(["selftest", "--seed", "5"]) == 0
    assert _lines(capsys) == ["selftest ok"]


def test_gen_writes_instance_files(tmp_path, capsys):
    prefix = str(tmp_path / "inst")
    assert main(["gen", "--grid", "6x6:3:3", "--seed", "1", "--out", prefix]) == 0
    for ext in (".graph", ".div1", ".div2", ".trace"):
        assert (tmp_path / ("inst" + ext)).exists()


def _gen(tmp_path, grid="6x6:3:3", seed="1"):
    prefix = str(tmp_path / "inst")
    main(["gen", "--grid", grid, "--seed", seed, "--out", prefix])
    return prefix


def test_run_emits_only_query_vocabulary(tmp_path, capsys):
    prefix = _gen(tmp_path)
    capsys.readouterr()
    rc = main(
        [
            "run",
            "--graph",
            prefix + ".graph",
            "--division",
            prefix + ".div1",
            "--division2",
            prefix + ".div2",
            "--trace",
            prefix + ".trace",
            "--levels",
            "3",
        ]
    )
    assert rc == 0
    out = _lines(capsys)
    assert out, "a full trace should have produced query answers"
    for line in out:
        assert line.startswith(ALLOWED_PREFIXES), line


def test_run_is_deterministic(tmp_path, capsys):
    prefix = _gen(tmp_path)
    capsys.readouterr()
    argv = ["run", "--grid", "6x6:3:3", "--seed", "9"]
    main(argv)
    first = _lines(capsys)
    main(argv)
    second = _lines(capsys)
    assert first == second


@pytest.mark.parametrize("levels", ["1", "2", "3"])
def test_verify_agrees_with_oracle(tmp_path, capsys, levels):
    prefix = _gen(tmp_path, grid="4x4:2:2", seed="3")
    capsys.readouterr()
    rc = main(
        [
            "verify",
            "--graph",
            prefix + ".graph",
            "--division",
            prefix + ".div1",
            "--division2",
            prefix + ".div2",
            "--trace",
            prefix + ".trace",
            "--levels",
            levels,
        ]
    )
    assert rc == 0
    out = _lines(capsys)
    assert out[-1].startswith("ok: ")
    assert "queries agree" in out[-1]


def test_run_with_out_file(tmp_path, capsys):
    dest = tmp_path / "answers.txt"
    rc = main(["run", "--grid", "4x4:2:2", "--seed", "2", "--out", str(dest)])
    assert rc == 0
    lines = dest.read_text().strip().splitlines()
    assert lines and all(l.startswith(ALLOWED_PREFIXES) for l in lines)


def test_degenerate_queries(tmp_path, capsys):
    prefix = _gen(tmp_path, grid="4x4:2:2")
    # disconnect vertex 0 (corner: edges to 1 and 4), then probe degenerate
    # and disconnected cases of each query kind
    trace = "\n".join(
        [
            "Q cut 2 2",
            "Q bridge 2 2",
            "D 0 1",
            "D 0 4",
            "Q conn 0 5",
            "Q cut 0 5",
            "Q bridge 0 5",
            "Q 2ec 0 5",
        ]
    )
    tf = tmp_path / "t.trace"
    tf.write_text(trace + "\n")
    capsys.readouterr()
    rc = main(
        [
            "run",
            "--graph",
            prefix + ".graph",
            "--division",
            prefix + ".div1",
            "--division2",
            prefix + ".div2",
            "--trace",
            str(tf),
        ]
    )
    assert rc == 0
    assert _lines(capsys) == ["bicon", "none", "0", "nil", "none", "0"]


def test_single_division_gets_trivial_coarse_wrap(tmp_path, capsys):
    prefix = _gen(tmp_path, grid="4x4:2:2")
    capsys.readouterr()
    rc = main(
        [
            "verify",
            "--graph",
            prefix + ".graph",
            "--division",
            prefix + ".div1",
            "--seed",
            "4",
        ]
    )
    assert rc == 0
    assert _lines(capsys)[-1].startswith("ok: ")


def test_parse_error_reports_line(tmp_path):
    bad = tmp_path / "bad.graph"
    bad.write_text("4 2\n0 1\nnot an edge\n")
    with pytest.raises(SystemExit) as exc:
        main(["run", "--graph", str(bad), "--division", str(bad)])
    assert "line 3" in str(exc.value)


def test_bad_grid_spec_rejected():
    with pytest.raises(SystemExit):
        main(["run", "--grid", "6by6"])


def test_missing_inputs_rejected():
    with pytest.raises(SystemExit):
        main(["run"])


def test_bench_emits_growth_report(tmp_path):
    dest = tmp_path / "bench.json"
    rc = main(["bench", "--steps", "2", "--seed", "0", "--out", str(dest)])
    assert rc == 0
    report = json.loads(dest.read_text())
    assert len(report["records"]) == 2
    assert len(report["growth"]) == 1
    for rec in report["records"]:
        assert rec["counters"]["edge_deletes"] == rec["m"]
